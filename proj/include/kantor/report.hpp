#pragma once

// JSON and markdown renderings of verification reports. Rationals are
// written as strings ("-3/2"); key order is fixed so that equal reports
// serialize to identical bytes.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kantor/realization.hpp"
#include "kantor/triple_system.hpp"

namespace kantor {

using Json = nlohmann::ordered_json;

[[nodiscard]] Json to_json(const IdentityResult& r);
[[nodiscard]] Json to_json(const AxiomReport& r);
[[nodiscard]] Json to_json(const GradedDims& d);
[[nodiscard]] Json to_json(const EulerReport& r);
[[nodiscard]] Json to_json(const IsomorphismReport& r);
/// timing_ms is included only when with_timing is set.
[[nodiscard]] Json to_json(const GradedAlgebraReport& r, bool with_timing = true);
[[nodiscard]] Json to_json(const std::vector<GradedAlgebraReport>& rs, bool with_timing = true);

[[nodiscard]] std::string to_markdown(const AxiomReport& r);
/// Grade table (grade | dim | verified relations | failures) followed by the
/// relation and identity results.
[[nodiscard]] std::string to_markdown(const GradedAlgebraReport& r);
/// One row per system: system | dims by grade | total | status.
[[nodiscard]] std::string to_markdown(const std::vector<GradedAlgebraReport>& rs);

} // namespace kantor
