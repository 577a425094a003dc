#include "laxlab/phasespace.hpp"

#include <cmath>

#include "laxlab/errors.hpp"

namespace laxlab {

void PhasePoint::validate(Complex tau, double eps) const {
    if (p.size() != q.size()) throw ValidityError("PhasePoint: p and q lengths differ");
    const double guard = pole_guard(tau, eps);
    for (int i = 0; i < n(); ++i)
        for (int j = i + 1; j < n(); ++j)
            if (std::abs(sigma_fn(qdiff(i, j), tau, eps)) <= guard)
                throw ValidityError("PhasePoint: pairwise separation hits the pole guard");
}

CMatrix bracket_from_jets(const FieldJet& jf, const FieldJet& jg) {
    const int nk = static_cast<int>(jf.dp.size());
    CMatrix out(jf.value.rows() * jg.value.rows(), jf.value.cols() * jg.value.cols());
    for (int k = 0; k < nk; ++k) {
        out += kron(jf.dp[k], jg.dq[k]);
        out -= kron(jf.dq[k], jg.dp[k]);
    }
    return out;
}

CMatrix poisson_bracket(const SmoothMatrixField& f, const SmoothMatrixField& g,
                        const PhasePoint& x) {
    return bracket_from_jets(f.jet(x), g.jet(x));
}

FieldJet fd_jet(const SmoothMatrixField& f, const PhasePoint& x, double step) {
    FieldJet j;
    j.value = f.value(x);
    for (int k = 0; k < x.n(); ++k) {
        PhasePoint xp = x, xm = x;
        xp.p[k] += step;
        xm.p[k] -= step;
        CMatrix d = f.value(xp) - f.value(xm);
        d *= 1.0 / (2.0 * step);
        j.dp.push_back(d);
        xp = x;
        xm = x;
        xp.q[k] += step;
        xm.q[k] -= step;
        d = f.value(xp) - f.value(xm);
        d *= 1.0 / (2.0 * step);
        j.dq.push_back(d);
    }
    return j;
}

CMatrix fd_bracket_oracle(const SmoothMatrixField& f, const SmoothMatrixField& g,
                          const PhasePoint& x, double step) {
    return bracket_from_jets(fd_jet(f, x, step), fd_jet(g, x, step));
}

PhasePoint momentum_shift_map(const PhasePoint& x, Complex s, const EllipticParams& par,
                              int sign) {
    par.validate();
    x.validate(par.tau, par.eps);
    PhasePoint y = x;
    const int n = x.n();
    for (int i = 0; i < n; ++i) {
        Complex shift = 0.0;
        for (int l = 0; l < n; ++l)
            if (l != i) shift += xi_fn(x.qdiff(i, l), par.tau, par.eps);
        shift *= s / static_cast<double>(par.n);
        if (std::abs(shift.imag()) > 1e-10)
            throw RealnessError("momentum_shift_map: shift is not real on this slice");
        y.p[i] = x.p[i] - sign * shift.real();
    }
    return y;
}

double symplecticity_residual(const std::function<PhasePoint(const PhasePoint&)>& map,
                              const PhasePoint& x, double step) {
    const int n = x.n();
    const int dim = 2 * n;
    // z = (p_0..p_{n-1}, q_0..q_{n-1})
    auto wiggle = [&](int k, double h) {
        PhasePoint y = x;
        if (k < n)
            y.p[k] += h;
        else
            y.q[k - n] += h;
        return map(y);
    };
    std::vector<std::vector<double>> jac(dim, std::vector<double>(dim));
    for (int k = 0; k < dim; ++k) {
        const PhasePoint yp = wiggle(k, step);
        const PhasePoint ym = wiggle(k, -step);
        for (int r = 0; r < dim; ++r) {
            const double vp = (r < n) ? yp.p[r] : yp.q[r - n];
            const double vm = (r < n) ? ym.p[r] : ym.q[r - n];
            jac[r][k] = (vp - vm) / (2.0 * step);
        }
    }
    // Omega = [[0, I], [-I, 0]] in (p, q) blocks
    auto omega = [&](int r, int c) -> double {
        if (r < n && c == r + n) return 1.0;
        if (r >= n && c == r - n) return -1.0;
        return 0.0;
    };
    double res = 0.0;
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            double v = 0.0;
            for (int a = 0; a < dim; ++a)
                for (int b = 0; b < dim; ++b) v += jac[a][r] * omega(a, b) * jac[b][c];
            res = std::max(res, std::abs(v - omega(r, c)));
        }
    return res;
}

}  // namespace laxlab
