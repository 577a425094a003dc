#include "laxlab/report.hpp"

#include <algorithm>
#include <cstdio>

namespace laxlab {

void Report::sort() {
    std::stable_sort(checks.begin(), checks.end(), [](const CheckResult& a, const CheckResult& b) {
        if (a.check_id != b.check_id) return a.check_id < b.check_id;
        return a.params.dump() < b.params.dump();
    });
}

Json Report::to_json() const {
    Json j;
    j["meta"] = meta;
    j["checks"] = Json::array();
    for (const auto& c : checks) {
        Json e;
        e["check_id"] = c.check_id;
        e["params"] = c.params;
        e["residual"] = c.residual;
        e["tol"] = c.tol;
        e["pass"] = c.pass;
        if (!c.variant_notes.empty()) e["variant_notes"] = c.variant_notes;
        j["checks"].push_back(e);
    }
    j["summary"] = {{"pass_count", pass_count()}, {"fail_count", fail_count()}};
    return j;
}

int Report::pass_count() const {
    int n = 0;
    for (const auto& c : checks) n += c.pass ? 1 : 0;
    return n;
}

int Report::fail_count() const { return static_cast<int>(checks.size()) - pass_count(); }

Json complex_to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

std::string complex_to_string(Complex z) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
    return buf;
}

}  // namespace laxlab
