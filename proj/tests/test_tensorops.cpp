#include <doctest.h>

#include "laxlab/errors.hpp"
#include "laxlab/matrix.hpp"
#include "laxlab/sampling.hpp"

using namespace laxlab;

namespace {

CMatrix random_matrix(Rng& rng, int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
    return m;
}

// direct multiplication oracle
CMatrix mul_oracle(const CMatrix& a, const CMatrix& b) {
    CMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) {
            Complex s = 0.0;
            for (int k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
            c(i, j) = s;
        }
    return c;
}

}  // namespace

TEST_SUITE("tensorops") {

TEST_CASE("kron of identities and diagonals") {
    const CMatrix i2 = CMatrix::identity(2);
    CHECK(max_norm(kron(i2, i2) - CMatrix::identity(4)) == 0.0);
    CMatrix d(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 2.0;
    const CMatrix k = kron(d, i2);
    CHECK(k(0, 0) == Complex(1.0));
    CHECK(k(1, 1) == Complex(1.0));
    CHECK(k(2, 2) == Complex(2.0));
    CHECK(k(3, 3) == Complex(2.0));
}

TEST_CASE("mixed-product property against the multiplication oracle") {
    Rng rng(7);
    const CMatrix a = random_matrix(rng, 3), b = random_matrix(rng, 3);
    const CMatrix c = random_matrix(rng, 3), d = random_matrix(rng, 3);
    CHECK(max_norm(mul_oracle(kron(a, b), kron(c, d)) - kron(mul_oracle(a, c), mul_oracle(b, d))) <
          1e-12);
    CHECK(max_norm(a * b - mul_oracle(a, b)) < 1e-13);
}

TEST_CASE("commutator of a matrix with itself vanishes") {
    Rng rng(11);
    const CMatrix a = random_matrix(rng, 4);
    CHECK(max_norm(commutator(a, a)) < 1e-13);
}

TEST_CASE("permutation operator swaps tensor factors") {
    const CMatrix p = perm_op(2);
    CMatrix x(2, 1), y(2, 1);
    x(0, 0) = 1.0;
    y(1, 0) = 1.0;
    const CMatrix xy = kron(x, y);
    const CMatrix yx = kron(y, x);
    CHECK(max_norm(p * xy - yx) == 0.0);
    CHECK(max_norm(p * p - CMatrix::identity(4)) == 0.0);
    Rng rng(3);
    const CMatrix a = random_matrix(rng, 2), b = random_matrix(rng, 2);
    CHECK(max_norm(p * kron(a, b) * p - kron(b, a)) < 1e-12);
}

TEST_CASE("inverse residual on well-conditioned input") {
    Rng rng(5);
    CMatrix a = random_matrix(rng, 5);
    for (int i = 0; i < 5; ++i) a(i, i) += 3.0;  // keep it away from singularity
    CHECK(max_norm(mat_inv(a) * a - CMatrix::identity(5)) < 1e-11);
    CHECK_THROWS_AS((void)mat_inv(CMatrix(3, 3)), SingularMatrixError);
}

TEST_CASE("trace of powers is similarity invariant") {
    Rng rng(9);
    const CMatrix a = random_matrix(rng, 4);
    CMatrix g = random_matrix(rng, 4);
    for (int i = 0; i < 4; ++i) g(i, i) += 2.5;
    const CMatrix conj = g * a * mat_inv(g);
    for (int k = 1; k <= 4; ++k) {
        const Complex ta = trace_pow(a, k);
        CHECK(std::abs(trace_pow(conj, k) - ta) < 1e-10 * std::max(1.0, std::abs(ta)));
    }
}

TEST_CASE("two-leg lift places factors on the requested legs") {
    Rng rng(13);
    const int n = 2;
    const CMatrix a = random_matrix(rng, n), b = random_matrix(rng, n);
    const CMatrix id = CMatrix::identity(n);
    const CMatrix t = kron(a, b);
    CHECK(max_norm(lift_two_leg(t, n, 0, 1) - kron(kron(a, b), id)) < 1e-13);
    CHECK(max_norm(lift_two_leg(t, n, 1, 2) - kron(id, kron(a, b))) < 1e-13);
    CHECK(max_norm(lift_two_leg(t, n, 0, 2) - kron(kron(a, id), b)) < 1e-13);
    // swapped legs transpose the pair
    CHECK(max_norm(lift_two_leg(t, n, 2, 0) - kron(kron(b, id), a)) < 1e-13);
}

}  // TEST_SUITE
