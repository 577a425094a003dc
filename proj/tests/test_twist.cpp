#include <doctest.h>

#include <cmath>

#include "laxlab/errors.hpp"
#include "laxlab/sampling.hpp"
#include "laxlab/twist.hpp"
#include "laxlab/znalgebra.hpp"

using namespace laxlab;

namespace {

const Complex I{0.0, 1.0};

ModelParams params(int n, double gamma = 1.0) {
    ModelParams par;
    par.n = n;
    par.tau = I;
    par.gamma = gamma;
    return par;
}

Complex link_s(const ModelParams& par) {
    return -std::sqrt(Complex(par.gamma)) * static_cast<double>(par.n) /
           sigma_deriv(0.0, par.tau, 1, par.eps);
}

PhasePoint seeded_point_2() {
    PhasePoint x;
    x.p = {0.37, -0.41};
    x.q = {-0.21, 0.18};
    return x;
}

PhasePoint seeded_point_3() {
    PhasePoint x;
    x.p = {0.3, -0.2, 0.5};
    x.q = {-0.31, 0.02, 0.35};
    return x;
}

}  // namespace

TEST_SUITE("twist") {

TEST_CASE("intertwiner entries match direct theta evaluations") {
    const EllipticParams par{I, 2};
    const std::vector<double> q{-0.21, 0.18};
    const CMatrix a = intertwiner_A(0.41, q, par);
    const double sum = q[0] + q[1];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const Complex want = theta_j(i, 0.41 + 2.0 * q[j] - sum + 0.5, par);
            CHECK(std::abs(a(i, j) - want) < 1e-13);
        }
}

TEST_CASE("swapping two positions permutes the corresponding columns") {
    const EllipticParams par{I, 3};
    const std::vector<double> q{-0.31, 0.02, 0.35};
    std::vector<double> qs{q[1], q[0], q[2]};  // swap 0 and 1
    const CMatrix a = intertwiner_A(0.41, q, par);
    const CMatrix as = intertwiner_A(0.41, qs, par);
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(a(i, 0) - as(i, 1)) < 1e-13);
        CHECK(std::abs(a(i, 1) - as(i, 0)) < 1e-13);
        CHECK(std::abs(a(i, 2) - as(i, 2)) < 1e-13);
    }
}

TEST_CASE("determinant scan: generic points regular, colliding positions degenerate") {
    const EllipticParams par{I, 3};
    const std::vector<double> q{-0.31, 0.02, 0.35};
    CHECK(std::abs(det(intertwiner_A(0.41, q, par))) > 1e-6);
    const std::vector<double> qc{-0.31, -0.31 + 1e-9, 0.35};
    CHECK(std::abs(det(intertwiner_A(0.41, qc, par))) < 1e-6);
}

TEST_CASE("vandermonde ratio is constant in the argument list") {
    const EllipticParams par{I, 3};
    const Complex r1 = vandermonde_ratio({0.31, 0.87, 1.23}, par);
    const Complex r2 = vandermonde_ratio({Complex(0.11, 0.05), Complex(0.52, 0.0),
                                          Complex(0.95, 0.1)},
                                         par);
    CHECK(std::abs(r1 - r2) / std::abs(r1) < 1e-9);
    CHECK_THROWS_AS((void)vandermonde_ratio({0.31, 0.31, 1.23}, par), PoleError);
    const EllipticParams par2{I, 2};
    const Complex r3 = vandermonde_ratio({0.31, 0.87}, par2);
    CHECK(std::abs(r3) > 1e-8);  // finite nonzero
}

TEST_CASE("shifted-argument product matches its closed form") {
    const EllipticParams par2{I, 2};
    const std::vector<double> q2{-0.21, 0.18};
    CHECK(inverse_shift_product_residual(0.3, 0.0, q2, par2) < 1e-10);
    CHECK(inverse_shift_product_residual(0.3, 0.17, q2, par2) < 1e-9);
    const EllipticParams par3{I, 3};
    const std::vector<double> q3{-0.31, 0.02, 0.35};
    CHECK(inverse_shift_product_residual(0.3, 0.17, q3, par3) < 1e-9);
}

TEST_CASE("twist frame: inverse, diagonal factor, FD partials") {
    const EllipticParams par{I, 3};
    const std::vector<double> q{-0.31, 0.02, 0.35};
    const TwistFrame f = twist_g(0.41, q, par);
    CHECK(max_norm(f.g * f.g_inv - CMatrix::identity(3)) < 1e-10);
    for (int i = 0; i < 3; ++i) {
        Complex prod = 1.0;
        for (int l = 0; l < 3; ++l)
            if (l != i) prod *= sigma_fn(q[i] - q[l], I);
        CHECK(std::abs(f.Lambda(i, i) - 1.0 / prod) < 1e-12);
    }
    const double h = 1e-6;
    for (int m = 0; m < 3; ++m) {
        std::vector<double> qp = q, qm = q;
        qp[m] += h;
        qm[m] -= h;
        const TwistFrame fp = twist_g(0.41, qp, par);
        const TwistFrame fm = twist_g(0.41, qm, par);
        CMatrix fd = fp.g - fm.g;
        fd *= 1.0 / (2 * h);
        CHECK(max_norm(fd - f.dg[m]) / std::max(1.0, max_norm(fd)) < 1e-6);
        fd = fp.Lambda - fm.Lambda;
        fd *= 1.0 / (2 * h);
        CHECK(max_norm(fd - f.dLambda[m]) / std::max(1.0, max_norm(fd)) < 1e-6);
    }
}

TEST_CASE("conjugated Lax field: isospectral, non-diagonal at zero coupling, FD partials") {
    const ModelParams par = params(3);
    const PhasePoint x = seeded_point_3();
    const CMatrix l = krichever_L(0.41, par).value(x);
    const CMatrix lt = twisted_L(0.41, par).value(x);
    for (int k = 1; k <= 3; ++k)
        CHECK(std::abs(trace_pow(lt, k) - trace_pow(l, k)) <
              1e-9 * std::max(1.0, std::abs(trace_pow(l, k))));
    const CMatrix lt0 = twisted_L(0.41, params(3, 0.0)).value(x);
    double offdiag = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) offdiag = std::max(offdiag, std::abs(lt0(i, j)));
    CHECK(offdiag > 1e-3);  // conjugation leaves the free model non-diagonal
    const SmoothMatrixField f = twisted_L(0.41, par);
    const FieldJet ja = f.jet(x);
    const FieldJet jf = fd_jet(f, x);
    for (int k = 0; k < 3; ++k) {
        const double scale = std::max(1.0, max_norm(jf.dq[k]));
        CHECK(max_norm(ja.dp[k] - jf.dp[k]) < 1e-6);
        CHECK(max_norm(ja.dq[k] - jf.dq[k]) / scale < 1e-6);
    }
}

TEST_CASE("numeric r-matrix bracket form at seeded points") {
    CHECK(nondynamical_bracket_residual(0.41, 0.87, seeded_point_2(), params(2)) < 1e-7);
    CHECK(nondynamical_bracket_residual(0.41, 0.87, seeded_point_2(), params(2),
                                        BracketEngine::fd) < 1e-4);
    CHECK(nondynamical_bracket_residual(0.41, 0.87, seeded_point_3(), params(3)) < 1e-7);
    PhasePoint x4;
    x4.p = {0.3, -0.2, 0.5, -0.1};
    x4.q = {-0.36, -0.1, 0.14, 0.38};
    CHECK(nondynamical_bracket_residual(0.41, 0.87, x4, params(4)) < 1e-6);
}

TEST_CASE("twist consistency: joint gauge-rule residual vanishes") {
    double single = 0.0;
    CHECK(twist_consistency_residual(0.41, 0.87, seeded_point_2(), params(2), &single) < 1e-7);
    CHECK(single > 1.0);  // the single-commutator reading does not hold
    CHECK(twist_consistency_residual(0.41, 0.87, seeded_point_3(), params(3)) < 1e-7);
    // zero coupling: diagonal Lax, still commutant-consistent
    CHECK(twist_consistency_residual(0.41, 0.87, seeded_point_2(), params(2, 0.0)) < 1e-7);
}

TEST_CASE("T field: zero twist parameter and trace linearity") {
    const ModelParams par0 = params(2, 0.0);
    const AppendixParams app0{0.0, -1, true};
    const PhasePoint x = seeded_point_2();
    const CMatrix t0 = appendix_T(app0, 0.41, par0).value(x);
    CHECK(std::abs(trace(t0) - Complex(x.p[0] + x.p[1])) < 1e-12);

    const ModelParams par = params(2);
    const AppendixParams app{link_s(par), -1, true};
    const CMatrix t = appendix_T(app, 0.41, par).value(x);
    // tr T = sum p - s tr(d_u A A^-1) by cyclicity; compare to the s = 0 trace shift
    const EllipticParams epar = par.elliptic();
    const CMatrix a = intertwiner_A(0.41, x.q, epar);
    CMatrix dau(2, 2);
    const double sum = x.q[0] + x.q[1];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            dau(i, j) = theta_j_deriv(i, 0.41 + 2.0 * x.q[j] - sum + 0.5, epar);
    const Complex want = Complex(x.p[0] + x.p[1]) - app.s * trace(dau * mat_inv(a));
    CHECK(std::abs(trace(t) - want) < 1e-11);
}

TEST_CASE("T field partials agree with the FD jet") {
    const ModelParams par = params(3);
    const AppendixParams app{link_s(par), -1, true};
    const SmoothMatrixField t = appendix_T(app, 0.41, par);
    const PhasePoint x = seeded_point_3();
    const FieldJet ja = t.jet(x);
    const FieldJet jf = fd_jet(t, x);
    for (int k = 0; k < 3; ++k) {
        const double scale = std::max(1.0, max_norm(jf.dq[k]));
        CHECK(max_norm(ja.dp[k] - jf.dp[k]) < 1e-6);
        CHECK(max_norm(ja.dq[k] - jf.dq[k]) / scale < 1e-6);
    }
    // engine agreement on the full bracket tensor
    const CMatrix ban = poisson_bracket(t, t, x);
    const CMatrix bfd = fd_bracket_oracle(t, t, x);
    CHECK(max_norm(ban - bfd) / std::max(1.0, max_norm(ban)) < 1e-5);
}

TEST_CASE("T values match an independent reimplementation at a seeded point") {
    // frozen from a direct numpy evaluation of A diag(p) A^-1 - s dA A^-1
    ModelParams par = params(2);
    const Complex s{0.7, 0.0};
    const Complex link = -s * sigma_deriv(0.0, par.tau) / 2.0;
    par.gamma = (link * link).real();
    const AppendixParams app{s, -1, true};
    const CMatrix t = appendix_T(app, 0.41, par).value(seeded_point_2());
    CHECK(std::abs(t(0, 0) - Complex(-6.1970107720713019e-01, 0.0)) < 1e-11);
    CHECK(std::abs(t(0, 1) - Complex(-4.6635000300845525e-01, 0.0)) < 1e-11);
    CHECK(std::abs(t(1, 0) - Complex(-1.0644266258232835e+00, 0.0)) < 1e-11);
    CHECK(std::abs(t(1, 1) - Complex(-6.7991582523894062e-02, 0.0)) < 1e-11);
}

TEST_CASE("factorization: winning variant is shift-minus with the scalar term") {
    for (int n : {2, 3}) {
        const ModelParams par = params(n);
        const AppendixParams app{link_s(par), -1, true};
        const PhasePoint x = (n == 2) ? seeded_point_2() : seeded_point_3();
        const FactorizationResult res = factorization_residual(0.31, x, app, par);
        CHECK(res.min_residual < 1e-8);
        CHECK(res.best_sign == -1);
        CHECK(res.best_scalar);
        for (const auto& [label, r] : res.grid)
            if (label != "shift-/scalar") CHECK(r > 1e-3);
    }
    // s = 0 degenerates to a plain similarity transform: every variant exact
    const ModelParams par0 = params(2, 0.0);
    const AppendixParams app0{0.0, -1, true};
    const FactorizationResult res0 = factorization_residual(0.31, seeded_point_2(), app0, par0);
    CHECK(res0.min_residual < 1e-11);
}

TEST_CASE("T has the same numeric-r bracket form") {
    for (int n : {2, 3}) {
        const ModelParams par = params(n);
        const AppendixParams app{link_s(par), -1, true};
        const PhasePoint x = (n == 2) ? seeded_point_2() : seeded_point_3();
        CHECK(appendix_bracket_residual(0.41, 0.87, x, app, par) < 1e-7);
    }
}

TEST_CASE("bracket residual of T equals the conjugated-Lax residual after the shift") {
    const ModelParams par = params(3);
    const AppendixParams app{link_s(par), -1, true};
    const PhasePoint x = seeded_point_3();
    const double ra = appendix_bracket_residual(0.41, 0.87, x, app, par);
    const PhasePoint y = momentum_shift_map(x, app.s, par.elliptic(), +1);
    const double rb = nondynamical_bracket_residual(0.41, 0.87, y, par);
    CHECK(std::abs(ra - rb) < 1e-8);
}

}  // TEST_SUITE
