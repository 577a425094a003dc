#ifndef LAXLAB_CMMODEL_HPP
#define LAXLAB_CMMODEL_HPP

#include <optional>
#include <string>
#include <vector>

#include "laxlab/elliptic.hpp"
#include "laxlab/matrix.hpp"
#include "laxlab/phasespace.hpp"

namespace laxlab {

/// Elliptic n-particle model parameters.  When the twist parameter s is
/// present it must satisfy gamma = (-s sigma'(0)/n)^2.
struct ModelParams {
    int n = 2;
    Complex tau{0.0, 1.0};
    double gamma = 1.0;
    std::optional<Complex> s;
    double eps = 1e-15;

    EllipticParams elliptic() const { return {tau, n, eps}; }
    void validate() const;
};

/// Pair potential V(u) = gamma Q(u); RealnessError when the result is not
/// real to 1e-10 (use purely imaginary tau on the real slice).
double potential(double u, const ModelParams& par);

/// H = sum_i p_i^2 + sum_{i != j} V(q_ij)  (double-counted pair sum).
double hamiltonian(const PhasePoint& x, const ModelParams& par);

/// Lax matrix field: L^i_j = p_i delta_ij + (1-delta_ij) sqrt(gamma) E(u, q_ji),
/// with analytic partials.
SmoothMatrixField krichever_L(Complex u, const ModelParams& par);

/// Coefficient conventions for the dynamical r-matrix.
///   printed    - a = -xi(u-v)-xi(v), c_ij = sqrt(-gamma) E(u-v, q_ij),
///                d_ij = 1/2 sqrt(-gamma) E(v, q_ij)
///   consistent - a = +xi(u-v)+xi(v), c_ij = sigma'(0) E(u-v, q_ji),
///                d_ij = 1/2 sigma'(0) E(v, q_ji)
/// Same matrix-unit placements either way; only `consistent` closes the
/// bracket identity (the probe below records both).
enum class RConvention { printed, consistent };

/// a sum_i E_ii (x) E_ii + sum_{i!=j} c_ij E_ij (x) E_ji
///   + sum_{i!=j} d_ij (E_ii (x) E_ij + E_jj (x) E_ij).
CMatrix dynamical_r(Complex u, Complex v, const PhasePoint& x, const ModelParams& par,
                    RConvention conv = RConvention::consistent);

enum class BracketEngine { analytic, fd };

/// max_norm of {L1(u), L2(v)} - [r12(u,v), L1] + [r21(v,u), L2],
/// r21(v,u) = P r12(v,u) P.
double dynamical_bracket_residual(Complex u, Complex v, const PhasePoint& x,
                                  const ModelParams& par,
                                  RConvention conv = RConvention::consistent,
                                  BracketEngine engine = BracketEngine::analytic,
                                  double fd_step = 1e-6);

/// Residuals of the bracket identity under every sign/formula variant:
/// {printed, consistent} x {bracket sign} x {r sign}.
struct ConventionProbeEntry {
    std::string label;
    double residual;
};
std::vector<ConventionProbeEntry> dynamical_convention_probe(Complex u, Complex v,
                                                             const PhasePoint& x,
                                                             const ModelParams& par);

/// max_norm of [R^(123), L1] + [R^(231), L2] + [R^(321), L3] with
/// R^(123) = r_(123) - {r13, L2} + {r12, L3},
/// r_(123) = [r12, r13] + [r12, r23] - [r13, r32],
/// the (231)/(321) terms by simultaneous cyclic relabeling of legs and
/// spectral arguments.
double dynamical_ybe_residual(Complex u1, Complex u2, Complex u3, const PhasePoint& x,
                              const ModelParams& par,
                              RConvention conv = RConvention::consistent);

/// [tr L(u)^k for k = 1..kmax].
std::vector<Complex> trace_invariants(Complex u, const PhasePoint& x, const ModelParams& par,
                                      int kmax);

/// Max deviation from the mean of H - Re tr L^2(u) over seeded sample points.
double hamiltonian_consistency(Complex u, const ModelParams& par, int sample_count,
                               uint64_t seed);

/// |{tr L^k(u), tr L^m(v)}| via analytic partials.  When scale_out is given
/// it receives the accumulated term magnitude before cancellation (the
/// natural round-off scale of the sum).
double invariants_commute_residual(Complex u, Complex v, int k, int m, const PhasePoint& x,
                                   const ModelParams& par, double* scale_out = nullptr);

struct Trajectory {
    std::vector<double> t;
    std::vector<PhasePoint> x;
    std::vector<double> H;
    std::vector<double> p_total;
    std::vector<std::vector<double>> re_tr;  // per sample, k = 1..kmax
};

struct IntegrateOptions {
    double dt = 1e-3;
    long steps = 100000;
    long sample_every = 100;
    Complex u_ref{0.37, 0.0};
    double collision_guard = 0.01;  // min distance of any q_ij to the integer lattice
};

struct IntegrateResult {
    Trajectory traj;
    bool aborted = false;
    double t_abort = 0.0;
    long step_abort = 0;
    std::string abort_reason;
};

/// Stormer-Verlet leapfrog for the separable H (q' = 2p, p' = -dV/dq with
/// analytic Q'); aborts (flagged, partial trajectory kept) when any
/// separation reaches the collision guard.
IntegrateResult integrate(const PhasePoint& x0, const ModelParams& par,
                          const IntegrateOptions& opts);

/// Header t,q_0..q_{n-1},p_0..p_{n-1},H,P_total,ReTrL1..ReTrLn, one row per
/// sample, 17 significant digits.
std::string trajectory_csv(const Trajectory& traj, int n);

}  // namespace laxlab

#endif
