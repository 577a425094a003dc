#include <doctest.h>

#include <cmath>

#include "laxlab/elliptic.hpp"
#include "laxlab/errors.hpp"
#include "laxlab/phasespace.hpp"
#include "laxlab/sampling.hpp"

using namespace laxlab;

namespace {

const Complex I{0.0, 1.0};

// scalar observable with analytic partials, for bracket-axiom tests
SmoothMatrixField scalar_field(std::string label, int n,
                               std::function<double(const PhasePoint&)> f,
                               std::function<double(const PhasePoint&, int)> dp,
                               std::function<double(const PhasePoint&, int)> dq) {
    auto jet = [=](const PhasePoint& x) {
        FieldJet j;
        j.value = CMatrix(1, 1);
        j.value(0, 0) = f(x);
        for (int k = 0; k < n; ++k) {
            CMatrix mp(1, 1), mq(1, 1);
            mp(0, 0) = dp(x, k);
            mq(0, 0) = dq(x, k);
            j.dp.push_back(mp);
            j.dq.push_back(mq);
        }
        return j;
    };
    return SmoothMatrixField(std::move(label), 1, jet);
}

SmoothMatrixField coord_p(int i, int n) {
    return scalar_field("p_i", n, [i](const PhasePoint& x) { return x.p[i]; },
                        [i](const PhasePoint&, int k) { return k == i ? 1.0 : 0.0; },
                        [](const PhasePoint&, int) { return 0.0; });
}

SmoothMatrixField coord_q(int j, int n) {
    return scalar_field("q_j", n, [j](const PhasePoint& x) { return x.q[j]; },
                        [](const PhasePoint&, int) { return 0.0; },
                        [j](const PhasePoint&, int k) { return k == j ? 1.0 : 0.0; });
}

PhasePoint seeded_point_3() {
    PhasePoint x;
    x.p = {0.3, -0.2, 0.5};
    x.q = {-0.31, 0.02, 0.35};
    return x;
}

}  // namespace

TEST_SUITE("phasespace") {

TEST_CASE("canonical pairs give the Kronecker delta") {
    const int n = 3;
    const PhasePoint x = seeded_point_3();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const CMatrix b = poisson_bracket(coord_p(i, n), coord_q(j, n), x);
            CHECK(std::abs(b(0, 0) - (i == j ? 1.0 : 0.0)) < 1e-15);
            const CMatrix bf = fd_bracket_oracle(coord_p(i, n), coord_q(j, n), x);
            CHECK(std::abs(bf(0, 0) - (i == j ? 1.0 : 0.0)) < 1e-10);
        }
}

TEST_CASE("bracket of a field with itself vanishes") {
    const int n = 3;
    // f = p_1 q_1
    auto f = scalar_field("p1q1", n, [](const PhasePoint& x) { return x.p[1] * x.q[1]; },
                          [](const PhasePoint& x, int k) { return k == 1 ? x.q[1] : 0.0; },
                          [](const PhasePoint& x, int k) { return k == 1 ? x.p[1] : 0.0; });
    const CMatrix b = poisson_bracket(f, f, seeded_point_3());
    CHECK(std::abs(b(0, 0)) < 1e-15);
}

TEST_CASE("Leibniz forced by the product rule: {p1 q1, q1} = q1") {
    const int n = 3;
    auto f = scalar_field("p1q1", n, [](const PhasePoint& x) { return x.p[1] * x.q[1]; },
                          [](const PhasePoint& x, int k) { return k == 1 ? x.q[1] : 0.0; },
                          [](const PhasePoint& x, int k) { return k == 1 ? x.p[1] : 0.0; });
    const PhasePoint x = seeded_point_3();
    const CMatrix b = poisson_bracket(f, coord_q(1, n), x);
    CHECK(std::abs(b(0, 0) - x.q[1]) < 1e-15);
}

TEST_CASE("bilinearity and antisymmetry on random polynomial fields") {
    const int n = 3;
    Rng rng(17);
    const PhasePoint x = sample_phase_point(rng, n);
    auto f = scalar_field("f", n,
                          [](const PhasePoint& y) { return y.p[0] * y.p[0] + y.q[2]; },
                          [](const PhasePoint& y, int k) { return k == 0 ? 2 * y.p[0] : 0.0; },
                          [](const PhasePoint&, int k) { return k == 2 ? 1.0 : 0.0; });
    auto g = scalar_field("g", n, [](const PhasePoint& y) { return y.q[0] * y.p[1]; },
                          [](const PhasePoint& y, int k) { return k == 1 ? y.q[0] : 0.0; },
                          [](const PhasePoint& y, int k) { return k == 0 ? y.p[1] : 0.0; });
    const Complex fg = poisson_bracket(f, g, x)(0, 0);
    const Complex gf = poisson_bracket(g, f, x)(0, 0);
    CHECK(std::abs(fg + gf) < 1e-12);
    const Complex direct = 2.0 * x.p[0] * 0.0 + /* dp f * dq g */ 0.0;
    (void)direct;
    // FD oracle agreement
    CHECK(std::abs(fg - fd_bracket_oracle(f, g, x)(0, 0)) < 1e-9);
}

TEST_CASE("FD oracle error shrinks by four under step halving") {
    const int n = 2;
    // cubic field so central differences carry a clean h^2 error term
    auto f = scalar_field("f", n, [](const PhasePoint& y) { return std::pow(y.p[0], 3); },
                          [](const PhasePoint& y, int k) {
                              return k == 0 ? 3 * y.p[0] * y.p[0] : 0.0;
                          },
                          [](const PhasePoint&, int) { return 0.0; });
    PhasePoint x;
    x.p = {0.7, 0.1};
    x.q = {-0.2, 0.2};
    const FieldJet exact = f.jet(x);
    const double e1 = max_norm(fd_jet(f, x, 2e-3).dp[0] - exact.dp[0]);
    const double e2 = max_norm(fd_jet(f, x, 1e-3).dp[0] - exact.dp[0]);
    CHECK(e1 / e2 > 3.5);
    CHECK(e1 / e2 < 4.5);
}

TEST_CASE("momentum shift: identity at s = 0 and two-particle antisymmetry") {
    const EllipticParams par{I, 2};
    PhasePoint x;
    x.p = {0.4, -0.1};
    x.q = {-0.22, 0.19};
    const PhasePoint y0 = momentum_shift_map(x, 0.0, par);
    CHECK(y0.p[0] == x.p[0]);
    CHECK(y0.p[1] == x.p[1]);
    const double s = 0.7;
    const PhasePoint y = momentum_shift_map(x, s, par);
    const double d0 = y.p[0] - x.p[0];
    const double d1 = y.p[1] - x.p[1];
    CHECK(std::abs(d0 + d1) < 1e-14);  // xi odd
    const double expected = -(s / 2.0) * xi_fn(x.q[0] - x.q[1], I).real();
    CHECK(std::abs(d0 - expected) < 1e-14);
}

TEST_CASE("momentum shift matches the FD gradient of log Delta") {
    const int n = 3;
    const EllipticParams par{I, n};
    const PhasePoint x = seeded_point_3();
    const Complex s{0.7, 0.0};
    const PhasePoint y = momentum_shift_map(x, s, par);
    auto log_delta = [&](const std::vector<double>& q) {
        double v = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                v += std::log(std::abs(sigma_fn(q[i] - q[j], I).real()));
        return v;
    };
    const double h = 1e-6;
    for (int i = 0; i < n; ++i) {
        std::vector<double> qp = x.q, qm = x.q;
        qp[i] += h;
        qm[i] -= h;
        const double grad = (log_delta(qp) - log_delta(qm)) / (2 * h);
        CHECK(std::abs((y.p[i] - x.p[i]) + (s.real() / n) * grad) < 1e-8);
    }
}

TEST_CASE("symplecticity: identity, shift map, broken scaling map") {
    const EllipticParams par{I, 3};
    const PhasePoint x = seeded_point_3();
    CHECK(symplecticity_residual([](const PhasePoint& y) { return y; }, x) < 1e-9);
    CHECK(symplecticity_residual(
              [&](const PhasePoint& y) { return momentum_shift_map(y, 0.7, par); }, x) < 1e-6);
    const double broken = symplecticity_residual(
        [](PhasePoint y) {
            for (auto& p : y.p) p *= 2.0;
            return y;
        },
        x);
    CHECK(broken > 0.5);  // clearly nonzero
}

TEST_CASE("momentum shift preserves brackets of composed observables") {
    const int n = 3;
    const EllipticParams par{I, n};
    const PhasePoint x = seeded_point_3();
    const Complex s{0.7, 0.0};
    auto phi = [&](const PhasePoint& y) { return momentum_shift_map(y, s, par); };
    // f, g as value-only fields; compose with the map and bracket through FD
    auto make_field = [&](std::function<double(const PhasePoint&)> fn, bool composed) {
        auto jet = [=](const PhasePoint& y) {
            FieldJet j;
            const PhasePoint z = composed ? phi(y) : y;
            j.value = CMatrix(1, 1);
            j.value(0, 0) = fn(z);
            return j;  // value-only: used through fd_jet
        };
        return SmoothMatrixField("obs", 1, jet);
    };
    auto f = [](const PhasePoint& y) { return y.p[0] * y.q[1]; };
    auto g = [](const PhasePoint& y) { return y.p[1] * y.p[1] + y.q[2]; };
    const Complex lhs =
        fd_bracket_oracle(make_field(f, true), make_field(g, true), x)(0, 0);
    const Complex rhs =
        fd_bracket_oracle(make_field(f, false), make_field(g, false), phi(x))(0, 0);
    CHECK(std::abs(lhs - rhs) < 1e-6);
}

TEST_CASE("validity predicate rejects coincident positions") {
    PhasePoint x;
    x.p = {0.0, 0.0};
    x.q = {0.2, 0.2};
    CHECK_THROWS_AS(x.validate(I), ValidityError);
}

}  // TEST_SUITE
