#include "laxlab/znalgebra.hpp"

#include <cmath>

#include "laxlab/errors.hpp"

namespace laxlab {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

int mod(int a, int n) { return ((a % n) + n) % n; }

Complex checked(Complex val, double guard, const char* who) {
    if (std::abs(val) < guard) throw PoleError(std::string(who) + ": denominator at a pole");
    return val;
}
}  // namespace

CMatrix ShiftMatrices::I_alpha(int a1, int a2) const {
    CMatrix m = CMatrix::identity(n);
    for (int i = 0; i < a1; ++i) m = h * m;
    for (int i = 0; i < a2; ++i) m = g * m;
    return m;
}

ShiftMatrices shift_matrices(int n) {
    if (n < 2) throw ValidityError("shift_matrices: n must be >= 2");
    ShiftMatrices s;
    s.n = n;
    s.omega = std::exp(Complex(0.0, 2.0 * kPi / n));
    s.h = CMatrix(n, n);
    for (int i = 0; i < n; ++i) s.h(i, (i + 1) % n) = 1.0;
    s.g = CMatrix(n, n);
    for (int i = 0; i < n; ++i) s.g(i, i) = std::pow(s.omega, i);
    return s;
}

RTensor belavin_r_quantum(Complex v, Complex w, const EllipticParams& par) {
    par.validate();
    const int n = par.n;
    const double guard_s = pole_guard(par.tau, par.eps);
    const double guard_t = 1e-10 * std::abs(theta_j_deriv(0, 0.0, par));

    const Complex pref = theta_j_deriv(0, 0.0, par) * sigma_fn(v, par.tau, par.eps) *
                         sigma_fn(w, par.tau, par.eps) /
                         (sigma_deriv(0.0, par.tau, 1, par.eps) *
                          checked(theta_j(0, v, par), guard_t, "belavin_r_quantum") *
                          checked(sigma_fn(v + w, par.tau, par.eps), guard_s, "belavin_r_quantum"));

    RTensor r;
    r.n = n;
    r.kind = RKind::quantum;
    r.m = CMatrix(n * n, n * n);
    const Complex th0v = theta_j(0, v, par);
    for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    if (mod(i + j, n) != mod(l + k, n)) continue;
                    const Complex num = th0v * theta_j(mod(i - j, n), v + w, par);
                    const Complex den =
                        checked(theta_j(mod(i - l, n), w, par), guard_t, "belavin_r_quantum") *
                        checked(theta_j(mod(l - j, n), v, par), guard_t, "belavin_r_quantum");
                    r.m(i * n + j, l * n + k) = pref * num / den;
                }
    return r;
}

RTensor classical_r(Complex v, const EllipticParams& par) {
    par.validate();
    const int n = par.n;
    const double guard_s = pole_guard(par.tau, par.eps);
    const double guard_t = 1e-10 * std::abs(theta_j_deriv(0, 0.0, par));

    RTensor r;
    r.n = n;
    r.kind = RKind::classical;
    r.m = CMatrix(n * n, n * n);
    const Complex thp0 = theta_j_deriv(0, 0.0, par);
    const Complex xiv = sigma_deriv(v, par.tau, 1, par.eps) /
                        checked(sigma_fn(v, par.tau, par.eps), guard_s, "classical_r");
    for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    if (mod(i + j, n) != mod(l + k, n)) continue;
                    Complex val = 0.0;
                    if (l != i) {
                        val += thp0 * theta_j(mod(i - j, n), v, par) /
                               (checked(theta_j(mod(l - j, n), v, par), guard_t, "classical_r") *
                                theta_j(mod(i - l, n), 0.0, par));
                    } else if (k == j) {
                        const Complex th = checked(theta_j(mod(i - j, n), v, par), guard_t,
                                                   "classical_r");
                        val += theta_j_deriv(mod(i - j, n), v, par) / th - xiv;
                    }
                    r.m(i * n + j, l * n + k) = val;
                }
    return r;
}

double qybe_residual(Complex v1, Complex v2, Complex v3, Complex w, const EllipticParams& par) {
    const int n = par.n;
    const CMatrix r12 = lift_two_leg(belavin_r_quantum(v1 - v2, w, par).m, n, 0, 1);
    const CMatrix r13 = lift_two_leg(belavin_r_quantum(v1 - v3, w, par).m, n, 0, 2);
    const CMatrix r23 = lift_two_leg(belavin_r_quantum(v2 - v3, w, par).m, n, 1, 2);
    return max_norm(r12 * r13 * r23 - r23 * r13 * r12);
}

double cybe_residual(Complex v1, Complex v2, Complex v3, const EllipticParams& par) {
    const int n = par.n;
    const CMatrix r12 = lift_two_leg(classical_r(v1 - v2, par).m, n, 0, 1);
    const CMatrix r13 = lift_two_leg(classical_r(v1 - v3, par).m, n, 0, 2);
    const CMatrix r23 = lift_two_leg(classical_r(v2 - v3, par).m, n, 1, 2);
    return max_norm(commutator(r12, r13) + commutator(r12, r23) + commutator(r13, r23));
}

double antisymmetry_residual(Complex v, const EllipticParams& par) {
    const CMatrix p = perm_op(par.n);
    return max_norm(classical_r(v, par).m + p * classical_r(-v, par).m * p);
}

double zn_symmetry_residual(const RTensor& t, char which) {
    const ShiftMatrices s = shift_matrices(t.n);
    const CMatrix& a = (which == 'g') ? s.g : s.h;
    const CMatrix aa = kron(a, a);
    return max_norm(aa * t.m * mat_inv(aa) - t.m);
}

double classical_limit_residual(Complex v, Complex w, const EllipticParams& par) {
    const CMatrix r = classical_r(v, par).m;
    CMatrix d = belavin_r_quantum(v, w, par).m - CMatrix::identity(par.n * par.n);
    d *= 1.0 / w;
    return max_norm(d - r);
}

namespace {

LimitSlope slope_scan(Complex v, const EllipticParams& par, double w_max, double w_min,
                      bool rescaled) {
    LimitSlope out;
    const CMatrix r = classical_r(v, par).m;
    const CMatrix id = CMatrix::identity(par.n * par.n);
    for (double w = w_max; w >= w_min * 0.999; w *= 0.5) {
        CMatrix rq = belavin_r_quantum(v, w, par).m;
        if (rescaled) {
            // scalar relating this normalization to the other common one
            Complex sc = theta_j_deriv(0, 0.0, par) * sigma_fn(v, par.tau, par.eps) /
                         (sigma_deriv(0.0, par.tau, 1, par.eps) * theta_j(0, v, par));
            for (int m = 1; m < par.n; ++m)
                sc *= theta_j(m, v, par) / theta_j(m, 0.0, par);
            rq *= sc;
        }
        CMatrix d = rq - id;
        d *= 1.0 / w;
        out.w.push_back(w);
        out.residual.push_back(max_norm(d - r));
    }
    // least-squares slope of log(residual) vs log(w)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int m = static_cast<int>(out.w.size());
    for (int i = 0; i < m; ++i) {
        const double x = std::log(out.w[i]);
        const double y = std::log(out.residual[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    out.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return out;
}

}  // namespace

LimitSlope classical_limit_slope(Complex v, const EllipticParams& par, double w_max,
                                 double w_min) {
    return slope_scan(v, par, w_max, w_min, false);
}

LimitSlope classical_limit_slope_rescaled(Complex v, const EllipticParams& par, double w_max,
                                          double w_min) {
    return slope_scan(v, par, w_max, w_min, true);
}

}  // namespace laxlab
