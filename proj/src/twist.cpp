#include "laxlab/twist.hpp"

#include <cmath>

#include "laxlab/errors.hpp"
#include "laxlab/znalgebra.hpp"

namespace laxlab {

namespace {

double arg_shift(int n) { return (n - 1) / 2.0; }

// theta^(i) argument of A^i_j
Complex a_arg(Complex u, const std::vector<double>& q, int j, int n) {
    double s = 0.0;
    for (double qk : q) s += qk;
    return u + static_cast<double>(n) * q[j] - s + arg_shift(n);
}

CMatrix intertwiner_du(Complex u, const std::vector<double>& q, const EllipticParams& par,
                       int order) {
    const int n = par.n;
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = theta_j_deriv(i, a_arg(u, q, j, n), par, order);
    return m;
}

CMatrix intertwiner_dq(Complex u, const std::vector<double>& q, const EllipticParams& par,
                       int m_idx, int du_order) {
    const int n = par.n;
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = theta_j_deriv(i, a_arg(u, q, j, n), par, du_order + 1) *
                      (static_cast<double>(n) * (j == m_idx ? 1.0 : 0.0) - 1.0);
    return m;
}

void check_gamma_link(const AppendixParams& app, const ModelParams& par) {
    const Complex link =
        -app.s * sigma_deriv(0.0, par.tau, 1, par.eps) / static_cast<double>(par.n);
    if (std::abs(Complex(par.gamma) - link * link) > 1e-10 * par.gamma)
        throw ValidityError("appendix: gamma does not match (-s sigma'(0)/n)^2");
}

}  // namespace

CMatrix intertwiner_A(Complex u, const std::vector<double>& q, const EllipticParams& par) {
    par.validate();
    const int n = par.n;
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = theta_j(i, a_arg(u, q, j, n), par);
    return m;
}

Complex vandermonde_ratio(const std::vector<Complex>& u_list, const EllipticParams& par) {
    par.validate();
    const int n = par.n;
    if (static_cast<int>(u_list.size()) != n)
        throw ValidityError("vandermonde_ratio: list length must equal n");
    CMatrix m(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) m(j, k) = theta_j(j, u_list[k], par);
    Complex mean = 0.0;
    for (const Complex& u : u_list) mean += u;
    mean /= static_cast<double>(n);
    const double guard = pole_guard(par.tau, par.eps);
    Complex den = sigma_fn(mean - arg_shift(n), par.tau, par.eps);
    if (std::abs(den) < guard) throw PoleError("vandermonde_ratio: denominator vanishes");
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            const Complex f =
                sigma_fn((u_list[k] - u_list[j]) / static_cast<double>(n), par.tau, par.eps);
            if (std::abs(f) < guard)
                throw PoleError("vandermonde_ratio: coincident arguments");
            den *= f;
        }
    return det(m) / den;
}

double inverse_shift_product_residual(Complex u, Complex w, const std::vector<double>& q,
                                      const EllipticParams& par) {
    par.validate();
    const int n = par.n;
    const CMatrix a = intertwiner_A(u, q, par);
    const CMatrix numeric = mat_inv(a) * intertwiner_A(u + w, q, par);
    const Complex su = sigma_fn(u, par.tau, par.eps);
    if (std::abs(su) < pole_guard(par.tau, par.eps))
        throw PoleError("inverse_shift_product_residual: sigma(u) vanishes");
    CMatrix closed(n, n);
    const Complex wn = w / static_cast<double>(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Complex val = sigma_fn(wn + u + q[j] - q[i], par.tau, par.eps) / su;
            for (int k = 0; k < n; ++k) {
                if (k == i) continue;
                const Complex den = sigma_fn(q[i] - q[k], par.tau, par.eps);
                if (std::abs(den) < pole_guard(par.tau, par.eps))
                    throw PoleError("inverse_shift_product_residual: coincident positions");
                val *= sigma_fn(wn + q[j] - q[k], par.tau, par.eps) / den;
            }
            closed(i, j) = val;
        }
    return max_norm(numeric - closed);
}

TwistFrame twist_g(Complex u, const std::vector<double>& q, const EllipticParams& par) {
    par.validate();
    const int n = par.n;
    TwistFrame f;
    f.u = u;
    f.A = intertwiner_A(u, q, par);

    f.Lambda = CMatrix(n, n);
    for (int i = 0; i < n; ++i) {
        Complex prod = 1.0;
        for (int l = 0; l < n; ++l)
            if (l != i) prod *= sigma_fn(q[i] - q[l], par.tau, par.eps);
        if (std::abs(prod) < std::pow(pole_guard(par.tau, par.eps), n - 1))
            throw PoleError("twist_g: coincident positions");
        f.Lambda(i, i) = 1.0 / prod;
    }
    f.g = f.A * f.Lambda;
    try {
        f.g_inv = mat_inv(f.g);
    } catch (const SingularMatrixError&) {
        throw SingularMatrixError("twist_g: intertwiner singular at this (u, q)");
    }
    for (int m = 0; m < n; ++m) {
        f.dA.push_back(intertwiner_dq(u, q, par, m, 0));
        CMatrix dl(n, n);
        for (int i = 0; i < n; ++i) {
            Complex tot = 0.0;
            for (int l = 0; l < n; ++l) {
                if (l == i) continue;
                const double wgt = (i == m ? 1.0 : 0.0) - (l == m ? 1.0 : 0.0);
                if (wgt != 0.0) tot += xi_fn(q[i] - q[l], par.tau, par.eps) * wgt;
            }
            dl(i, i) = -f.Lambda(i, i) * tot;
        }
        f.dLambda.push_back(dl);
        f.dg.push_back(f.dA[m] * f.Lambda + f.A * dl);
    }
    return f;
}

SmoothMatrixField twisted_L(Complex u, const ModelParams& par) {
    par.validate();
    const int n = par.n;
    const SmoothMatrixField L = krichever_L(u, par);
    const EllipticParams epar = par.elliptic();
    auto jet = [=](const PhasePoint& x) {
        const TwistFrame f = twist_g(u, x.q, epar);
        const FieldJet jl = L.jet(x);
        FieldJet j;
        j.value = f.g * jl.value * f.g_inv;
        for (int k = 0; k < n; ++k) {
            j.dp.push_back(f.g * jl.dp[k] * f.g_inv);
            const CMatrix dginv = -(f.g_inv * f.dg[k] * f.g_inv);
            j.dq.push_back(f.dg[k] * jl.value * f.g_inv + f.g * jl.dq[k] * f.g_inv +
                           f.g * jl.value * dginv);
        }
        return j;
    };
    return SmoothMatrixField("twisted_L", n, jet);
}

double nondynamical_bracket_residual(Complex u, Complex v, const PhasePoint& x,
                                     const ModelParams& par, BracketEngine engine,
                                     double fd_step) {
    par.validate();
    x.validate(par.tau, par.eps);
    const int n = par.n;
    const SmoothMatrixField ltu = twisted_L(u, par);
    const SmoothMatrixField ltv = twisted_L(v, par);
    const FieldJet ju = (engine == BracketEngine::analytic) ? ltu.jet(x) : fd_jet(ltu, x, fd_step);
    const FieldJet jv = (engine == BracketEngine::analytic) ? ltv.jet(x) : fd_jet(ltv, x, fd_step);
    const CMatrix lhs = bracket_from_jets(ju, jv);
    const CMatrix r = classical_r(u - v, par.elliptic()).m;
    const CMatrix id = CMatrix::identity(n);
    const CMatrix sum = kron(ju.value, id) + kron(id, jv.value);
    return max_norm(lhs - commutator(r, sum));
}

namespace {

// rho12(u,v) = G1 G2 r_dyn(u,v) G1i G2i + G2 {g1(u), L2(v)} G1i G2i
CMatrix rho12(Complex u, Complex v, const PhasePoint& x, const ModelParams& par) {
    const int n = par.n;
    const EllipticParams epar = par.elliptic();
    const CMatrix id = CMatrix::identity(n);
    const TwistFrame f1 = twist_g(u, x.q, epar);
    const TwistFrame f2 = twist_g(v, x.q, epar);
    const CMatrix g1 = kron(f1.g, id), g1i = kron(f1.g_inv, id);
    const CMatrix g2 = kron(id, f2.g), g2i = kron(id, f2.g_inv);
    const CMatrix rd = dynamical_r(u, v, x, par, RConvention::consistent);
    CMatrix br(n * n, n * n);
    for (int k = 0; k < n; ++k)
        br -= kron(f1.dg[k], CMatrix::unit(n, k, k));  // {g1, L2} = -sum dg (x) dL/dp
    return g1 * g2 * rd * g1i * g2i + g2 * br * g1i * g2i;
}

}  // namespace

double twist_consistency_residual(Complex u, Complex v, const PhasePoint& x,
                                  const ModelParams& par, double* single_commutator) {
    par.validate();
    x.validate(par.tau, par.eps);
    const int n = par.n;
    const EllipticParams epar = par.elliptic();
    const CMatrix id = CMatrix::identity(n);
    const SmoothMatrixField lt_u = twisted_L(u, par);
    const SmoothMatrixField lt_v = twisted_L(v, par);
    const CMatrix l1 = kron(lt_u.value(x), id);
    const CMatrix l2 = kron(id, lt_v.value(x));
    const CMatrix p = perm_op(n);
    const CMatrix d1 = rho12(u, v, x, par) - classical_r(u - v, epar).m;
    const CMatrix d2 = p * (rho12(v, u, x, par) - classical_r(v - u, epar).m) * p;
    if (single_commutator) *single_commutator = max_norm(commutator(d1, l1 + l2));
    return max_norm(commutator(d1, l1) - commutator(d2, l2));
}

SmoothMatrixField appendix_T(const AppendixParams& app, Complex u, const ModelParams& par) {
    par.validate();
    check_gamma_link(app, par);
    const int n = par.n;
    const EllipticParams epar = par.elliptic();
    const Complex s = app.s;
    auto jet = [=](const PhasePoint& x) {
        const CMatrix a = intertwiner_A(u, x.q, epar);
        const CMatrix ai = mat_inv(a);
        const CMatrix dau = intertwiner_du(u, x.q, epar, 1);
        CMatrix pdiag(n, n);
        for (int i = 0; i < n; ++i) pdiag(i, i) = x.p[i];
        FieldJet j;
        j.value = a * pdiag * ai - s * (dau * ai);
        for (int k = 0; k < n; ++k) {
            j.dp.push_back(a * CMatrix::unit(n, k, k) * ai);
            const CMatrix da = intertwiner_dq(u, x.q, epar, k, 0);
            const CMatrix dai = -(ai * da * ai);
            const CMatrix ddau = intertwiner_dq(u, x.q, epar, k, 1);
            j.dq.push_back(da * pdiag * ai + a * pdiag * dai - s * (ddau * ai + dau * dai));
        }
        return j;
    };
    return SmoothMatrixField("appendix_T", n, jet);
}

FactorizationResult factorization_residual(Complex u, const PhasePoint& x,
                                           const AppendixParams& app, const ModelParams& par) {
    par.validate();
    check_gamma_link(app, par);
    x.validate(par.tau, par.eps);
    const int n = par.n;
    const EllipticParams epar = par.elliptic();
    const CMatrix t = appendix_T(app, u, par).value(x);
    const TwistFrame f = twist_g(u, x.q, epar);
    const Complex sqg = -app.s * sigma_deriv(0.0, par.tau, 1, par.eps) / static_cast<double>(n);
    const Complex c_u = -(app.s / static_cast<double>(n)) *
                        sigma_deriv(u, par.tau, 1, par.eps) / sigma_fn(u, par.tau, par.eps);

    FactorizationResult out;
    out.min_residual = -1.0;
    for (int sign : {+1, -1})
        for (bool scalar : {true, false}) {
            CMatrix tbar(n, n);
            for (int i = 0; i < n; ++i) {
                Complex shift = 0.0;
                for (int l = 0; l < n; ++l)
                    if (l != i) shift += xi_fn(x.qdiff(i, l), par.tau, par.eps);
                shift *= app.s / static_cast<double>(n);
                tbar(i, i) = x.p[i] + static_cast<double>(sign) * shift;
                for (int jj = 0; jj < n; ++jj)
                    if (jj != i) tbar(i, jj) = sqg * e_fn(u, x.qdiff(jj, i), par.tau, par.eps);
            }
            CMatrix inner = tbar;
            if (scalar) inner += c_u * CMatrix::identity(n);
            const double res = max_norm(t - f.g * inner * f.g_inv);
            std::string label = (sign > 0 ? "shift+" : "shift-");
            label += scalar ? "/scalar" : "/noscalar";
            out.grid.emplace_back(label, res);
            if (out.min_residual < 0.0 || res < out.min_residual) {
                out.min_residual = res;
                out.best_sign = sign;
                out.best_scalar = scalar;
            }
        }
    return out;
}

double appendix_bracket_residual(Complex u, Complex v, const PhasePoint& x,
                                 const AppendixParams& app, const ModelParams& par) {
    par.validate();
    x.validate(par.tau, par.eps);
    const int n = par.n;
    const SmoothMatrixField tu = appendix_T(app, u, par);
    const SmoothMatrixField tv = appendix_T(app, v, par);
    const FieldJet ju = tu.jet(x);
    const FieldJet jv = tv.jet(x);
    const CMatrix lhs = bracket_from_jets(ju, jv);
    const CMatrix r = classical_r(u - v, par.elliptic()).m;
    const CMatrix id = CMatrix::identity(n);
    const CMatrix sum = kron(ju.value, id) + kron(id, jv.value);
    return max_norm(lhs - commutator(r, sum));
}

}  // namespace laxlab
