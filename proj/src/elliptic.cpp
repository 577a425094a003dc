#include "laxlab/elliptic.hpp"

#include <cmath>

#include "laxlab/errors.hpp"

namespace laxlab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr long kWindowCap = 10000;

// Symmetric window half-width from the Gaussian tail bound: terms at distance
// d from the peak have relative magnitude exp(-pi Im(tau) d^2).
long window_half_width(ThetaChar ch, Complex z, Complex tau, double eps, int order) {
    const double t = tau.imag();
    if (t <= 0.0) throw InvalidModulusError("theta_char: Im(tau) must be positive");
    const double c = z.imag();  // b is real, so Im(z+b) = Im z
    const double peak = std::abs(c) / t;
    const double spread = std::sqrt(std::log(1.0 / eps) / (kPi * t));
    const long m = static_cast<long>(std::ceil(peak + spread + std::abs(ch.a))) + 3 + 2 * order;
    if (m > kWindowCap)
        throw ConvergenceError("theta_char: window exceeds hard cap (|Im z| too large)");
    return m;
}

Complex theta_sum(ThetaChar ch, Complex z, Complex tau, double eps, int order) {
    const long M = window_half_width(ch, z, tau, eps, order);
    const Complex ipi(0.0, kPi);
    Complex acc = 0.0;
    for (long m = -M; m <= M; ++m) {
        const double ma = static_cast<double>(m) + ch.a;
        Complex term = std::exp(ipi * (ma * ma * tau + 2.0 * ma * (z + ch.b)));
        if (order > 0) {
            const Complex f = 2.0 * ipi * ma;
            for (int d = 0; d < order; ++d) term *= f;
        }
        acc += term;
    }
    return acc;
}

}  // namespace

void EllipticParams::validate() const {
    if (tau.imag() <= 0.0) throw InvalidModulusError("EllipticParams: Im(tau) must be positive");
    if (n < 2) throw ValidityError("EllipticParams: n must be >= 2");
    if (eps <= 0.0) throw ValidityError("EllipticParams: eps must be positive");
}

Complex theta_char(ThetaChar ch, Complex z, Complex tau, double eps) {
    return theta_sum(ch, z, tau, eps, 0);
}

Complex theta_char_deriv(ThetaChar ch, Complex z, Complex tau, int order, double eps) {
    return theta_sum(ch, z, tau, eps, order);
}

Complex theta_j(int j, Complex u, const EllipticParams& par) {
    par.validate();
    const int jm = ((j % par.n) + par.n) % par.n;
    return theta_char({0.5 - static_cast<double>(jm) / par.n, 0.5}, u,
                      static_cast<double>(par.n) * par.tau, par.eps);
}

Complex theta_j_deriv(int j, Complex u, const EllipticParams& par, int order) {
    par.validate();
    const int jm = ((j % par.n) + par.n) % par.n;
    return theta_char_deriv({0.5 - static_cast<double>(jm) / par.n, 0.5}, u,
                            static_cast<double>(par.n) * par.tau, order, par.eps);
}

Complex sigma_fn(Complex u, Complex tau, double eps) {
    return theta_char({0.5, 0.5}, u, tau, eps);
}

Complex sigma_deriv(Complex u, Complex tau, int order, double eps) {
    return theta_char_deriv({0.5, 0.5}, u, tau, order, eps);
}

double pole_guard(Complex tau, double eps) {
    return 1e-10 * std::abs(sigma_deriv(0.0, tau, 1, eps));
}

namespace {

Complex sigma_checked(Complex u, Complex tau, double eps, const char* who) {
    const Complex s = sigma_fn(u, tau, eps);
    if (std::abs(s) < pole_guard(tau, eps))
        throw PoleError(std::string(who) + ": argument too close to a lattice point");
    return s;
}

}  // namespace

Complex xi_fn(Complex u, Complex tau, double eps) {
    return sigma_deriv(u, tau, 1, eps) / sigma_checked(u, tau, eps, "xi");
}

Complex xi_deriv(Complex u, Complex tau, double eps) {
    const Complex s = sigma_checked(u, tau, eps, "xi_deriv");
    const Complex s1 = sigma_deriv(u, tau, 1, eps);
    const Complex s2 = sigma_deriv(u, tau, 2, eps);
    return s2 / s - (s1 / s) * (s1 / s);
}

Complex xi_deriv2(Complex u, Complex tau, double eps) {
    const Complex s = sigma_checked(u, tau, eps, "xi_deriv2");
    const Complex s1 = sigma_deriv(u, tau, 1, eps);
    const Complex s2 = sigma_deriv(u, tau, 2, eps);
    const Complex s3 = sigma_deriv(u, tau, 3, eps);
    const Complex r1 = s1 / s;
    return s3 / s - 3.0 * s2 * s1 / (s * s) + 2.0 * r1 * r1 * r1;
}

Complex e_fn(Complex u, Complex v, Complex tau, double eps) {
    const Complex su = sigma_checked(u, tau, eps, "e_fn");
    const Complex sv = sigma_checked(v, tau, eps, "e_fn");
    return sigma_fn(u + v, tau, eps) / (su * sv);
}

Complex e_fn_dx(Complex u, Complex x, Complex tau, double eps) {
    return e_fn(u, x, tau, eps) * (xi_fn(u + x, tau, eps) - xi_fn(x, tau, eps));
}

Complex q_fn(Complex u, Complex tau, double eps) {
    const Complex sp0 = sigma_deriv(0.0, tau, 1, eps);
    return xi_deriv(u, tau, eps) / (sp0 * sp0);
}

Complex q_fn_deriv(Complex u, Complex tau, double eps) {
    const Complex sp0 = sigma_deriv(0.0, tau, 1, eps);
    return xi_deriv2(u, tau, eps) / (sp0 * sp0);
}

}  // namespace laxlab
