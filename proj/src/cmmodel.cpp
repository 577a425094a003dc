#include "laxlab/cmmodel.hpp"

#include <cmath>
#include <cstdio>

#include "laxlab/errors.hpp"
#include "laxlab/sampling.hpp"

namespace laxlab {

void ModelParams::validate() const {
    elliptic().validate();
    // gamma = 0 is the free model, useful as a degenerate case
    if (gamma < 0.0) throw ValidityError("ModelParams: gamma must be non-negative");
    if (s) {
        const Complex link = -(*s) * sigma_deriv(0.0, tau, 1, eps) / static_cast<double>(n);
        if (std::abs(gamma - link * link) > 1e-10 * gamma)
            throw ValidityError("ModelParams: gamma does not match (-s sigma'(0)/n)^2");
    }
}

double potential(double u, const ModelParams& par) {
    const Complex q = par.gamma * q_fn(u, par.tau, par.eps);
    if (std::abs(q.imag()) > 1e-10 * std::max(1.0, std::abs(q.real())))
        throw RealnessError("potential: value is not real");
    return q.real();
}

double hamiltonian(const PhasePoint& x, const ModelParams& par) {
    par.validate();
    double h = 0.0;
    for (double pi : x.p) h += pi * pi;
    if (par.gamma == 0.0) return h;
    x.validate(par.tau, par.eps);
    for (int i = 0; i < x.n(); ++i)
        for (int j = 0; j < x.n(); ++j)
            if (i != j) h += potential(x.qdiff(i, j), par);
    return h;
}

SmoothMatrixField krichever_L(Complex u, const ModelParams& par) {
    par.validate();
    const int n = par.n;
    const Complex sg = std::sqrt(Complex(par.gamma));
    const Complex tau = par.tau;
    const double eps = par.eps;
    auto jet = [=](const PhasePoint& x) {
        if (sg != Complex{}) x.validate(tau, eps);
        FieldJet j;
        j.value = CMatrix(n, n);
        // cache E and its log-derivative bracket per ordered pair (the free
        // model has no off-diagonal part and so no pole constraints)
        CMatrix ev(n, n), dev(n, n);
        if (sg != Complex{})
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    if (a == b) continue;
                    const Complex qba = x.qdiff(b, a);
                    ev(a, b) = e_fn(u, qba, tau, eps);
                    dev(a, b) = ev(a, b) * (xi_fn(u + qba, tau, eps) - xi_fn(qba, tau, eps));
                }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                j.value(a, b) = (a == b) ? Complex(x.p[a]) : sg * ev(a, b);
        for (int k = 0; k < n; ++k) {
            j.dp.push_back(CMatrix::unit(n, k, k));
            CMatrix dq(n, n);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    if (a == b) continue;
                    const double w = (b == k ? 1.0 : 0.0) - (a == k ? 1.0 : 0.0);
                    if (w != 0.0) dq(a, b) = sg * dev(a, b) * w;
                }
            j.dq.push_back(dq);
        }
        return j;
    };
    return SmoothMatrixField("krichever_L", n, jet);
}

namespace {

// value + q-partials of the dynamical r (p-independent)
struct RJet {
    CMatrix value;
    std::vector<CMatrix> dq;
};

RJet dynamical_r_jet(Complex u, Complex v, const PhasePoint& x, const ModelParams& par,
                     RConvention conv) {
    const int n = par.n;
    const Complex tau = par.tau;
    const double eps = par.eps;
    RJet out;
    out.value = CMatrix(n * n, n * n);
    out.dq.assign(n, CMatrix(n * n, n * n));

    Complex a;
    if (conv == RConvention::printed)
        a = -xi_fn(u - v, tau, eps) - xi_fn(v, tau, eps);
    else
        a = xi_fn(u - v, tau, eps) + xi_fn(v, tau, eps);
    for (int i = 0; i < n; ++i) out.value(i * n + i, i * n + i) = a;

    const Complex coef = (conv == RConvention::printed)
                             ? std::sqrt(Complex(-par.gamma))
                             : sigma_deriv(0.0, tau, 1, eps);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const Complex arg = (conv == RConvention::printed) ? Complex(x.qdiff(i, j))
                                                               : Complex(x.qdiff(j, i));
            const Complex c = coef * e_fn(u - v, arg, tau, eps);
            const Complex d = 0.5 * coef * e_fn(v, arg, tau, eps);
            const Complex dc = coef * e_fn_dx(u - v, arg, tau, eps);
            const Complex dd = 0.5 * coef * e_fn_dx(v, arg, tau, eps);
            // c at E_ij (x) E_ji, d at E_ii (x) E_ij and E_jj (x) E_ij
            const int row_c = i * n + j, col_c = j * n + i;
            const int row_d1 = i * n + i, col_d1 = i * n + j;
            const int row_d2 = j * n + i, col_d2 = j * n + j;
            out.value(row_c, col_c) += c;
            out.value(row_d1, col_d1) += d;
            out.value(row_d2, col_d2) += d;
            for (int m = 0; m < n; ++m) {
                double w;
                if (conv == RConvention::printed)
                    w = (m == i ? 1.0 : 0.0) - (m == j ? 1.0 : 0.0);
                else
                    w = (m == j ? 1.0 : 0.0) - (m == i ? 1.0 : 0.0);
                if (w == 0.0) continue;
                out.dq[m](row_c, col_c) += dc * w;
                out.dq[m](row_d1, col_d1) += dd * w;
                out.dq[m](row_d2, col_d2) += dd * w;
            }
        }
    return out;
}

}  // namespace

CMatrix dynamical_r(Complex u, Complex v, const PhasePoint& x, const ModelParams& par,
                    RConvention conv) {
    par.validate();
    x.validate(par.tau, par.eps);
    return dynamical_r_jet(u, v, x, par, conv).value;
}

namespace {

double bracket_residual_impl(Complex u, Complex v, const PhasePoint& x, const ModelParams& par,
                             RConvention conv, BracketEngine engine, double fd_step,
                             double bracket_sign, double r_sign) {
    const int n = par.n;
    const SmoothMatrixField Lu = krichever_L(u, par);
    const SmoothMatrixField Lv = krichever_L(v, par);
    const FieldJet ju = (engine == BracketEngine::analytic) ? Lu.jet(x) : fd_jet(Lu, x, fd_step);
    const FieldJet jv = (engine == BracketEngine::analytic) ? Lv.jet(x) : fd_jet(Lv, x, fd_step);
    CMatrix lhs = bracket_from_jets(ju, jv);
    lhs *= bracket_sign;
    const CMatrix p = perm_op(n);
    CMatrix r12 = dynamical_r(u, v, x, par, conv);
    CMatrix r21 = p * dynamical_r(v, u, x, par, conv) * p;
    r12 *= r_sign;
    r21 *= r_sign;
    const CMatrix id = CMatrix::identity(n);
    const CMatrix l1 = kron(ju.value, id);
    const CMatrix l2 = kron(id, jv.value);
    return max_norm(lhs - commutator(r12, l1) + commutator(r21, l2));
}

}  // namespace

double dynamical_bracket_residual(Complex u, Complex v, const PhasePoint& x,
                                  const ModelParams& par, RConvention conv,
                                  BracketEngine engine, double fd_step) {
    par.validate();
    x.validate(par.tau, par.eps);
    return bracket_residual_impl(u, v, x, par, conv, engine, fd_step, 1.0, 1.0);
}

std::vector<ConventionProbeEntry> dynamical_convention_probe(Complex u, Complex v,
                                                             const PhasePoint& x,
                                                             const ModelParams& par) {
    std::vector<ConventionProbeEntry> out;
    for (RConvention conv : {RConvention::consistent, RConvention::printed})
        for (double bs : {1.0, -1.0})
            for (double rs : {1.0, -1.0}) {
                std::string label = (conv == RConvention::consistent) ? "consistent" : "printed";
                label += (bs > 0) ? "/bracket+" : "/bracket-";
                label += (rs > 0) ? "/r+" : "/r-";
                out.push_back({label, bracket_residual_impl(u, v, x, par, conv,
                                                            BracketEngine::analytic, 1e-6, bs,
                                                            rs)});
            }
    return out;
}

double dynamical_ybe_residual(Complex u1, Complex u2, Complex u3, const PhasePoint& x,
                              const ModelParams& par, RConvention conv) {
    par.validate();
    x.validate(par.tau, par.eps);
    const int n = par.n;
    const Complex us[3] = {u1, u2, u3};

    const SmoothMatrixField Lf[3] = {krichever_L(u1, par), krichever_L(u2, par),
                                     krichever_L(u3, par)};
    FieldJet jl[3];
    CMatrix l3[3];
    const CMatrix id(CMatrix::identity(n));
    auto lift_one = [&](const CMatrix& m, int leg) {
        return (leg == 0) ? lift_two_leg(kron(m, id), n, 0, 1)
                          : lift_two_leg(kron(m, id), n, leg, (leg + 1) % 3);
    };
    for (int a = 0; a < 3; ++a) {
        jl[a] = Lf[a].jet(x);
        l3[a] = lift_one(jl[a].value, a);
    }

    // lifted value and q-partials of r on legs (a,b), arguments (us[a], us[b])
    auto rlift = [&](int a, int b) {
        RJet j = dynamical_r_jet(us[a], us[b], x, par, conv);
        RJet out;
        out.value = lift_two_leg(j.value, n, a, b);
        for (int m = 0; m < n; ++m) out.dq.push_back(lift_two_leg(j.dq[m], n, a, b));
        return out;
    };
    // {r_ab, L_c} = -sum_m (d_qm r_ab) (E_mm on leg c)   (r has no p-dependence)
    auto ekk3 = [&](int leg, int m) {
        const CMatrix e = CMatrix::unit(n, m, m);
        if (leg == 0) return lift_two_leg(kron(e, id), n, 0, 1);
        if (leg == 1) return lift_two_leg(kron(id, e), n, 0, 1);
        return lift_two_leg(kron(id, e), n, 1, 2);
    };
    auto bracket_r_L = [&](const RJet& r, int leg_c) {
        CMatrix out(n * n * n, n * n * n);
        for (int m = 0; m < n; ++m) out -= r.dq[m] * ekk3(leg_c, m);
        return out;
    };
    auto big_r = [&](int a, int b, int c) {
        const RJet rab = rlift(a, b);
        const RJet rac = rlift(a, c);
        const RJet rbc = rlift(b, c);
        const RJet rcb = rlift(c, b);
        CMatrix r123 = commutator(rab.value, rac.value) + commutator(rab.value, rbc.value) -
                       commutator(rac.value, rcb.value);
        return r123 - bracket_r_L(rac, b) + bracket_r_L(rab, c);
    };

    const CMatrix total = commutator(big_r(0, 1, 2), l3[0]) + commutator(big_r(1, 2, 0), l3[1]) +
                          commutator(big_r(2, 0, 1), l3[2]);
    return max_norm(total);
}

std::vector<Complex> trace_invariants(Complex u, const PhasePoint& x, const ModelParams& par,
                                      int kmax) {
    const CMatrix l = krichever_L(u, par).value(x);
    std::vector<Complex> out;
    CMatrix pw = l;
    for (int k = 1; k <= kmax; ++k) {
        out.push_back(trace(pw));
        if (k < kmax) pw = pw * l;
    }
    return out;
}

double hamiltonian_consistency(Complex u, const ModelParams& par, int sample_count,
                               uint64_t seed) {
    Rng rng(seed);
    std::vector<double> dev;
    for (int t = 0; t < sample_count; ++t) {
        const PhasePoint x = sample_phase_point(rng, par.n);
        const double h = hamiltonian(x, par);
        const Complex tr2 = trace_invariants(u, x, par, 2)[1];
        dev.push_back(h - tr2.real());
    }
    double mean = 0.0;
    for (double d : dev) mean += d;
    mean /= static_cast<double>(dev.size());
    double worst = 0.0;
    for (double d : dev) worst = std::max(worst, std::abs(d - mean));
    return worst;
}

double invariants_commute_residual(Complex u, Complex v, int k, int m, const PhasePoint& x,
                                   const ModelParams& par, double* scale_out) {
    const FieldJet ju = krichever_L(u, par).jet(x);
    const FieldJet jv = krichever_L(v, par).jet(x);
    const int n = par.n;
    auto powm = [&](const CMatrix& a, int e) {
        CMatrix r = CMatrix::identity(a.rows());
        for (int i = 0; i < e; ++i) r = r * a;
        return r;
    };
    const CMatrix lu_km1 = powm(ju.value, k - 1);
    const CMatrix lv_mm1 = powm(jv.value, m - 1);
    // d tr(L^k)/dz = k tr(L^{k-1} dL/dz)
    Complex res = 0.0;
    double scale = 0.0;
    for (int kk = 0; kk < n; ++kk) {
        const Complex fp = static_cast<double>(k) * trace(lu_km1 * ju.dp[kk]);
        const Complex fq = static_cast<double>(k) * trace(lu_km1 * ju.dq[kk]);
        const Complex gp = static_cast<double>(m) * trace(lv_mm1 * jv.dp[kk]);
        const Complex gq = static_cast<double>(m) * trace(lv_mm1 * jv.dq[kk]);
        res += fp * gq - fq * gp;
        scale += std::abs(fp * gq) + std::abs(fq * gp);
    }
    if (scale_out) *scale_out = scale;
    return std::abs(res);
}

namespace {

// distance of x to the nearest integer
double lattice_distance(double x) { return std::abs(x - std::round(x)); }

std::vector<double> forces(const PhasePoint& x, const ModelParams& par) {
    const int n = x.n();
    std::vector<double> f(n, 0.0);
    if (par.gamma == 0.0) return f;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const Complex qp = q_fn_deriv(x.qdiff(i, j), par.tau, par.eps);
            const double fij = -2.0 * par.gamma * qp.real();
            f[i] += fij;   // -dH/dq_i from the (i,j)+(j,i) pair terms
            f[j] -= fij;   // Q' odd
        }
    return f;
}

}  // namespace

IntegrateResult integrate(const PhasePoint& x0, const ModelParams& par,
                          const IntegrateOptions& opts) {
    par.validate();
    if (par.gamma > 0.0) x0.validate(par.tau, par.eps);
    if (std::abs(par.tau.real()) > 1e-14)
        throw ValidityError("integrate: tau must be purely imaginary for real dynamics");
    const int n = x0.n();
    IntegrateResult res;
    PhasePoint x = x0;

    auto record = [&](double t) {
        res.traj.t.push_back(t);
        res.traj.x.push_back(x);
        res.traj.H.push_back(hamiltonian(x, par));
        double pt = 0.0;
        for (double pi : x.p) pt += pi;
        res.traj.p_total.push_back(pt);
        const auto tr = trace_invariants(opts.u_ref, x, par, n);
        std::vector<double> re;
        re.reserve(tr.size());
        for (const Complex& c : tr) re.push_back(c.real());
        res.traj.re_tr.push_back(std::move(re));
    };
    // the free model has no pair poles, so no proximity guard applies there
    const bool guarded = par.gamma > 0.0;
    auto too_close = [&]() {
        if (!guarded) return false;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (lattice_distance(x.qdiff(i, j)) < opts.collision_guard) return true;
        return false;
    };

    record(0.0);
    std::vector<double> f = forces(x, par);
    for (long step = 1; step <= opts.steps; ++step) {
        // velocity Verlet for H = sum p^2 + V(q):  dq/dt = 2p, dp/dt = f
        for (int i = 0; i < n; ++i) x.p[i] += 0.5 * opts.dt * f[i];
        double max_disp = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = opts.dt * 2.0 * x.p[i];
            x.q[i] += d;
            max_disp = std::max(max_disp, std::abs(d));
        }
        // abort while the motion is still resolved: either a separation hit
        // the guard, or a single step moved a particle by more than the guard
        if (too_close() || max_disp > opts.collision_guard) {
            res.aborted = true;
            res.t_abort = step * opts.dt;
            res.step_abort = step;
            res.abort_reason = (max_disp > opts.collision_guard)
                                   ? "step displacement exceeded the collision guard "
                                     "(near-collision or dt too large)"
                                   : "pairwise separation reached the collision guard";
            return res;
        }
        f = forces(x, par);
        for (int i = 0; i < n; ++i) x.p[i] += 0.5 * opts.dt * f[i];
        if (step % opts.sample_every == 0) record(step * opts.dt);
    }
    return res;
}

std::string trajectory_csv(const Trajectory& traj, int n) {
    std::string out = "t";
    char buf[64];
    for (int i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof buf, ",q_%d", i);
        out += buf;
    }
    for (int i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof buf, ",p_%d", i);
        out += buf;
    }
    out += ",H,P_total";
    for (int k = 1; k <= n; ++k) {
        std::snprintf(buf, sizeof buf, ",ReTrL%d", k);
        out += buf;
    }
    out += "\n";
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, ",%.17g", v);
        out += buf;
    };
    for (size_t r = 0; r < traj.t.size(); ++r) {
        std::snprintf(buf, sizeof buf, "%.17g", traj.t[r]);
        out += buf;
        for (int i = 0; i < n; ++i) put(traj.x[r].q[i]);
        for (int i = 0; i < n; ++i) put(traj.x[r].p[i]);
        put(traj.H[r]);
        put(traj.p_total[r]);
        for (int k = 0; k < n; ++k) put(traj.re_tr[r][k]);
        out += "\n";
    }
    return out;
}

}  // namespace laxlab
