#ifndef LAXLAB_VERIFY_HPP
#define LAXLAB_VERIFY_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "laxlab/report.hpp"

namespace laxlab {

/// Suite selection and sampling configuration for the verification runs.
struct VerifyConfig {
    std::vector<std::string> suites{"all"};  // elliptic rmatrix dynamical twist appendix all
    std::vector<int> n_list{2, 3};
    Complex tau{0.0, 1.0};
    double gamma = 1.0;
    int trials = 20;
    uint64_t seed = 42;
    std::map<std::string, double> tol_overrides;  // check-id prefix -> tolerance

    void validate() const;
};

/// Runs every selected suite with seeded deterministic sampling; checks are
/// sorted by (check_id, params).
Report run_verify(const VerifyConfig& cfg);

}  // namespace laxlab

#endif
