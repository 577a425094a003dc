#include "laxlab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "laxlab/errors.hpp"

namespace laxlab {

CMatrix CMatrix::identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::unit(int n, int r, int c) {
    CMatrix m(n, n);
    m(r, c) = 1.0;
    return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
    for (auto& v : a_) v *= s;
    return *this;
}

CMatrix CMatrix::operator-() const {
    CMatrix m = *this;
    for (auto& v : m.a_) v = -v;
    return m;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    CMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{}) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return c;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

namespace {

// LU decomposition with partial pivoting, in place; returns permutation sign,
// throws on a pivot below 1e-13 x the largest input entry.
int lu_decompose(CMatrix& m, std::vector<int>& piv) {
    const int n = m.rows();
    piv.resize(n);
    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(m(i, j)));
    if (scale == 0.0) throw SingularMatrixError("zero matrix");
    int sign = 1;
    for (int col = 0; col < n; ++col) {
        int best = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(m(r, col)) > std::abs(m(best, col))) best = r;
        if (best != col) {
            for (int j = 0; j < n; ++j) std::swap(m(best, j), m(col, j));
            sign = -sign;
        }
        piv[col] = best;
        if (std::abs(m(col, col)) < 1e-13 * scale)
            throw SingularMatrixError("pivot below 1e-13 of max entry");
        for (int r = col + 1; r < n; ++r) {
            const Complex f = m(r, col) / m(col, col);
            m(r, col) = f;
            for (int j = col + 1; j < n; ++j) m(r, j) -= f * m(col, j);
        }
    }
    return sign;
}

}  // namespace

CMatrix mat_inv(const CMatrix& a) {
    if (!a.square()) throw SingularMatrixError("inverse of non-square matrix");
    const int n = a.rows();
    CMatrix lu = a;
    std::vector<int> piv;
    lu_decompose(lu, piv);
    CMatrix inv = CMatrix::identity(n);
    // solve LU X = P I column by column
    for (int c = 0; c < n; ++c) {
        // apply row swaps
        for (int i = 0; i < n; ++i)
            if (piv[i] != i) std::swap(inv(i, c), inv(piv[i], c));
        // forward
        for (int i = 1; i < n; ++i) {
            Complex s = inv(i, c);
            for (int j = 0; j < i; ++j) s -= lu(i, j) * inv(j, c);
            inv(i, c) = s;
        }
        // back
        for (int i = n - 1; i >= 0; --i) {
            Complex s = inv(i, c);
            for (int j = i + 1; j < n; ++j) s -= lu(i, j) * inv(j, c);
            inv(i, c) = s / lu(i, i);
        }
    }
    return inv;
}

Complex det(const CMatrix& a) {
    CMatrix lu = a;
    std::vector<int> piv;
    int sign;
    try {
        sign = lu_decompose(lu, piv);
    } catch (const SingularMatrixError&) {
        return 0.0;
    }
    Complex d = static_cast<double>(sign);
    for (int i = 0; i < lu.rows(); ++i) d *= lu(i, i);
    return d;
}

Complex trace(const CMatrix& a) {
    Complex t = 0.0;
    for (int i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

Complex trace_pow(const CMatrix& a, int k) {
    if (k == 1) return trace(a);
    CMatrix p = a;
    for (int i = 1; i < k; ++i) p = p * a;
    return trace(p);
}

double max_norm(const CMatrix& a) {
    double m = 0.0;
    for (const auto& v : a.data()) m = std::max(m, std::abs(v));
    return m;
}

CMatrix perm_op(int n) {
    CMatrix p(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) p(i * n + j, j * n + i) = 1.0;
    return p;
}

CMatrix lift_two_leg(const CMatrix& t, int n, int leg_a, int leg_b) {
    const int other = 3 - leg_a - leg_b;
    CMatrix out(n * n * n, n * n * n);
    const int stride[3] = {n * n, n, 1};
    for (int ra = 0; ra < n; ++ra)
        for (int rb = 0; rb < n; ++rb)
            for (int ca = 0; ca < n; ++ca)
                for (int cb = 0; cb < n; ++cb) {
                    const Complex v = t(ra * n + rb, ca * n + cb);
                    if (v == Complex{}) continue;
                    for (int m = 0; m < n; ++m) {
                        const int row = ra * stride[leg_a] + rb * stride[leg_b] + m * stride[other];
                        const int col = ca * stride[leg_a] + cb * stride[leg_b] + m * stride[other];
                        out(row, col) = v;
                    }
                }
    return out;
}

}  // namespace laxlab
