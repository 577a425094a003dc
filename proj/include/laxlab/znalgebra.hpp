#ifndef LAXLAB_ZNALGEBRA_HPP
#define LAXLAB_ZNALGEBRA_HPP

#include <string>
#include <vector>

#include "laxlab/elliptic.hpp"
#include "laxlab/matrix.hpp"

namespace laxlab {

/// The Z_n shift pair: h (cyclic shift), g = diag(omega^0..omega^{n-1}),
/// omega = exp(2 pi i / n); h g = omega g h, h^n = g^n = I.
struct ShiftMatrices {
    int n;
    CMatrix h;
    CMatrix g;
    Complex omega;

    /// I_alpha = g^{a2} h^{a1}.
    CMatrix I_alpha(int a1, int a2) const;
};

ShiftMatrices shift_matrices(int n);

enum class RKind { quantum, classical };

/// n^2 x n^2 tensor with entries labelled R^{lk}_{ij} on the support
/// i + j = l + k (mod n).  The matrix realization places the (l,k,i,j)
/// entry at row i*n+j, column l*n+k; every algebraic identity below is
/// evaluated in that realization.
struct RTensor {
    int n = 0;
    RKind kind = RKind::classical;
    CMatrix m;

    Complex entry(int l, int k, int i, int j) const { return m(i * n + j, l * n + k); }
};

/// Elliptic Z_n vertex R-matrix with crossing parameter w, normalized so
/// R(v, 0) = identity.
RTensor belavin_r_quantum(Complex v, Complex w, const EllipticParams& par);

/// Its first-order coefficient in w: the Z_n-symmetric classical r-matrix.
RTensor classical_r(Complex v, const EllipticParams& par);

/// max_norm of R12 R13 R23 - R23 R13 R12 on the triple space,
/// arguments v1-v2, v1-v3, v2-v3.
double qybe_residual(Complex v1, Complex v2, Complex v3, Complex w, const EllipticParams& par);

/// max_norm of [r12,r13] + [r12,r23] + [r13,r23].
double cybe_residual(Complex v1, Complex v2, Complex v3, const EllipticParams& par);

/// max_norm of r(v) + P r(-v) P.
double antisymmetry_residual(Complex v, const EllipticParams& par);

/// max_norm of (a (x) a) t (a (x) a)^-1 - t for a in {g, h}.
double zn_symmetry_residual(const RTensor& t, char which);

/// max_norm of (R(v,w) - I)/w - r(v).
double classical_limit_residual(Complex v, Complex w, const EllipticParams& par);

/// Least-squares log-log slope of classical_limit_residual over a halving
/// w-grid from w_max down to w_min; with the alternate normalization the
/// first-order term is wrong and the slope collapses towards 0.
struct LimitSlope {
    double slope = 0.0;
    std::vector<double> w;
    std::vector<double> residual;
};
LimitSlope classical_limit_slope(Complex v, const EllipticParams& par, double w_max = 1e-2,
                                 double w_min = 1e-5);

/// Same decay scan for R multiplied by the alternate scalar normalization
/// (the factor relating this R to the other common convention).
LimitSlope classical_limit_slope_rescaled(Complex v, const EllipticParams& par,
                                          double w_max = 1e-2, double w_min = 1e-5);

}  // namespace laxlab

#endif
