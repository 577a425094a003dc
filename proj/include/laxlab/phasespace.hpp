#ifndef LAXLAB_PHASESPACE_HPP
#define LAXLAB_PHASESPACE_HPP

#include <functional>
#include <string>
#include <vector>

#include "laxlab/elliptic.hpp"
#include "laxlab/matrix.hpp"

namespace laxlab {

/// Real momenta and positions of n particles.
struct PhasePoint {
    std::vector<double> p;
    std::vector<double> q;

    int n() const { return static_cast<int>(p.size()); }
    double qdiff(int i, int j) const { return q[i] - q[j]; }

    /// Pairwise separations stay off each other's lattice translates:
    /// |sigma(q_i - q_j)| > pole_guard for all i != j.
    void validate(Complex tau, double eps = 1e-15) const;
};

/// Value and analytic first partials of a matrix-valued function of a
/// PhasePoint, evaluated together.
struct FieldJet {
    CMatrix value;
    std::vector<CMatrix> dp;
    std::vector<CMatrix> dq;
};

/// Matrix-valued function of a PhasePoint with analytic partials in every
/// p_k and q_k.
class SmoothMatrixField {
  public:
    using JetFn = std::function<FieldJet(const PhasePoint&)>;

    SmoothMatrixField() = default;
    SmoothMatrixField(std::string label, int dim, JetFn jet)
        : label_(std::move(label)), dim_(dim), jet_(std::move(jet)) {}

    const std::string& label() const { return label_; }
    int dim() const { return dim_; }
    FieldJet jet(const PhasePoint& x) const { return jet_(x); }
    CMatrix value(const PhasePoint& x) const { return jet_(x).value; }

  private:
    std::string label_;
    int dim_ = 0;
    JetFn jet_;
};

/// Canonical bracket tensor of two fields, {F^{ab}(u), G^{cd}(v)} arranged
/// at row (a,c), column (b,d):
///   sum_k dF/dp_k (x) dG/dq_k - dF/dq_k (x) dG/dp_k,
/// the sign convention with {p_i, q_j} = +delta_ij.
CMatrix poisson_bracket(const SmoothMatrixField& f, const SmoothMatrixField& g,
                        const PhasePoint& x);

/// Same contract, all partials replaced by 2-point central differences of the
/// field values with the given step.  The independent oracle for every
/// bracket test.
CMatrix fd_bracket_oracle(const SmoothMatrixField& f, const SmoothMatrixField& g,
                          const PhasePoint& x, double step = 1e-6);

/// Bracket tensor from precomputed jets (shared by the residual evaluators).
CMatrix bracket_from_jets(const FieldJet& jf, const FieldJet& jg);

/// Central-difference jet of a field's values.
FieldJet fd_jet(const SmoothMatrixField& f, const PhasePoint& x, double step = 1e-6);

/// p_i -> p_i - sign (s/n) sum_{l != i} xi(q_il), q unchanged.
/// RealnessError if the shift is not real to 1e-10.
PhasePoint momentum_shift_map(const PhasePoint& x, Complex s, const EllipticParams& par,
                              int sign = +1);

/// max_norm(J^T Omega J - Omega) with J the central-difference Jacobian of
/// the map in coordinates z = (p, q) and Omega the canonical form.
double symplecticity_residual(const std::function<PhasePoint(const PhasePoint&)>& map,
                              const PhasePoint& x, double step = 1e-6);

}  // namespace laxlab

#endif
