#ifndef LAXLAB_ELLIPTIC_HPP
#define LAXLAB_ELLIPTIC_HPP

#include <complex>

namespace laxlab {

using Complex = std::complex<double>;

/// Evaluation context for the special functions: modular parameter tau
/// (Im tau > 0), rank n >= 2, and the relative tail bound for the series.
struct EllipticParams {
    Complex tau;
    int n = 2;
    double eps = 1e-15;

    void validate() const;
};

/// Theta characteristics (a, b).  Periodic in a with period 1.
struct ThetaChar {
    double a = 0.0;
    double b = 0.0;
};

/// theta[a;b](z, tau) = sum_m exp{i pi [(m+a)^2 tau + 2(m+a)(z+b)]}.
/// The window m in [-M, M] is chosen adaptively so the dropped tail is below
/// eps relative to the largest retained term; M is capped at 10^4.
Complex theta_char(ThetaChar ch, Complex z, Complex tau, double eps = 1e-15);

/// Termwise u-derivative of the series, each term x (2 i pi (m+a))^order.
Complex theta_char_deriv(ThetaChar ch, Complex z, Complex tau, int order = 1, double eps = 1e-15);

/// theta^(j)(u) = theta[1/2 - j/n; 1/2](u, n tau); j is reduced mod n.
Complex theta_j(int j, Complex u, const EllipticParams& par);
Complex theta_j_deriv(int j, Complex u, const EllipticParams& par, int order = 1);

/// sigma(u) = theta[1/2;1/2](u, tau); odd with a simple zero at 0.
Complex sigma_fn(Complex u, Complex tau, double eps = 1e-15);
Complex sigma_deriv(Complex u, Complex tau, int order = 1, double eps = 1e-15);

/// Division guard: 1e-10 x |sigma'(0)|.
double pole_guard(Complex tau, double eps = 1e-15);

/// xi(u) = sigma'(u)/sigma(u); PoleError near lattice points.
Complex xi_fn(Complex u, Complex tau, double eps = 1e-15);
/// xi'(u), termwise.
Complex xi_deriv(Complex u, Complex tau, double eps = 1e-15);
/// xi''(u), termwise (used for forces).
Complex xi_deriv2(Complex u, Complex tau, double eps = 1e-15);

/// E(u,v) = sigma(u+v) / (sigma(u) sigma(v)).
Complex e_fn(Complex u, Complex v, Complex tau, double eps = 1e-15);

/// d/dx E(u, x) = E(u,x) [xi(u+x) - xi(x)].
Complex e_fn_dx(Complex u, Complex x, Complex tau, double eps = 1e-15);

/// Even potential kernel: Q(u) = xi'(u) / sigma'(0)^2, the normalization for
/// which Q(v) - Q(u) = E(u,v) E(u,-v) holds exactly.
Complex q_fn(Complex u, Complex tau, double eps = 1e-15);
Complex q_fn_deriv(Complex u, Complex tau, double eps = 1e-15);

}  // namespace laxlab

#endif
