#ifndef LAXLAB_REPORT_HPP
#define LAXLAB_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "laxlab/matrix.hpp"

namespace laxlab {

using Json = nlohmann::ordered_json;

/// One verification record.  pass is residual < tol, except for probe-style
/// checks whose pass flag is structured success.
struct CheckResult {
    std::string check_id;
    Json params;
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false;
    std::string variant_notes;
};

struct Report {
    Json meta;
    std::vector<CheckResult> checks;

    void sort();
    Json to_json() const;
    int pass_count() const;
    int fail_count() const;
};

Json complex_to_json(Complex z);
std::string complex_to_string(Complex z);

}  // namespace laxlab

#endif
