#ifndef LAXLAB_ERRORS_HPP
#define LAXLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace laxlab {

/// Modular parameter outside the upper half plane.
struct InvalidModulusError : std::domain_error {
    explicit InvalidModulusError(const std::string& what) : std::domain_error(what) {}
};

/// Series window would exceed the hard cap before reaching the tail bound.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Evaluation too close to a lattice zero of a denominator.
struct PoleError : std::domain_error {
    explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

struct SingularMatrixError : std::runtime_error {
    explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

/// Phase point violates the pairwise-separation predicate (or other domain rule).
struct ValidityError : std::domain_error {
    explicit ValidityError(const std::string& what) : std::domain_error(what) {}
};

/// A quantity that must be real carries a non-negligible imaginary part.
struct RealnessError : std::domain_error {
    explicit RealnessError(const std::string& what) : std::domain_error(what) {}
};

/// Trajectory ran into the collision guard; carries where it stopped.
struct CollisionError : std::runtime_error {
    CollisionError(const std::string& what, double t_, long step_)
        : std::runtime_error(what), t(t_), step(step_) {}
    double t;
    long step;
};

}  // namespace laxlab

#endif
