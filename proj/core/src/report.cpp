#include <cmath>

#include "pbk/pb_core.hpp"

namespace pbk::pb {

void to_json(nlohmann::json& j, const CheckResult& c) {
    // Non-finite residuals (failed positivity or monotonicity) serialize as null.
    j = nlohmann::json{{"check", c.name},
                       {"max_residual", std::isfinite(c.max_residual) ? nlohmann::json(c.max_residual)
                                                                      : nlohmann::json(nullptr)},
                       {"tolerance", c.tolerance},
                       {"pass", c.pass}};
}

void to_json(nlohmann::json& j, const DiagnosticReport& r) {
    j = nlohmann::json{{"checks", r.checks}, {"params_echo", r.params_echo}, {"notes", r.notes},
                       {"all_pass", r.all_pass()}};
}

}  // namespace pbk::pb
