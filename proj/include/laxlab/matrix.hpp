#ifndef LAXLAB_MATRIX_HPP
#define LAXLAB_MATRIX_HPP

#include <complex>
#include <vector>

namespace laxlab {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major, 0-based.
///
/// Tensor-product legs use the flat-index convention a = i*n + k for the
/// pair (i,k); kron() below is consistent with it.
class CMatrix {
  public:
    CMatrix() = default;
    CMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static CMatrix identity(int n);
    static CMatrix zero(int rows, int cols) { return CMatrix(rows, cols); }
    /// Matrix unit with a single 1 at (r, c).
    static CMatrix unit(int n, int r, int c);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Complex& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Complex& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    CMatrix& operator*=(Complex s);

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
    friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
    CMatrix operator-() const;
    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

    const std::vector<Complex>& data() const { return a_; }
    std::vector<Complex>& data() { return a_; }

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<Complex> a_;
};

/// (A (x) B)_{(i,k),(j,l)} = A_ij * B_kl under the flat-index convention.
CMatrix kron(const CMatrix& a, const CMatrix& b);

CMatrix commutator(const CMatrix& a, const CMatrix& b);

/// Inverse by LU with partial pivoting; SingularMatrixError when a pivot
/// falls below 1e-13 x the largest entry.
CMatrix mat_inv(const CMatrix& a);

Complex det(const CMatrix& a);

Complex trace(const CMatrix& a);
Complex trace_pow(const CMatrix& a, int k);

/// Largest entry magnitude.
double max_norm(const CMatrix& a);

/// Permutation operator on C^n (x) C^n: P (x tensor y) = y tensor x.
CMatrix perm_op(int n);

/// Embed a two-leg tensor t (n^2 x n^2) into legs (leg_a, leg_b) of a
/// three-leg space, identity on the remaining leg.  Legs are 0-based.
CMatrix lift_two_leg(const CMatrix& t, int n, int leg_a, int leg_b);

}  // namespace laxlab

#endif
