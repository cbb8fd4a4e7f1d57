#pragma once

#include <json.hpp>

#include "densitylab/densities.hpp"
#include "densitylab/families.hpp"
#include "densitylab/ideals.hpp"
#include "densitylab/verify.hpp"

namespace densitylab {

// Insertion-ordered JSON keeps CLI output byte-identical across runs.
using Json = nlohmann::ordered_json;

// {"kind": "exact|enclosure|lower_bound|estimate", "lo": "p/q", "hi": "p/q"}
Json to_json(const DensityValue& value);

// {"type": ..., <payload>}
Json to_json(const Certificate& certificate);

// {"decision": ..., "reason": ..., "certificate": ..., "note": ...}
Json to_json(const Verdict& verdict);

Json to_json(const PairCertificate& certificate);
Json to_json(const AllShiftCertificate& certificate);

// {"suite": ..., "passed": n, "failed": n, "undecided": n, "checks": [...]}
// Wall time is omitted unless include_timing is set: identical invocations
// must produce byte-identical reports.
Json to_json(const Report& report, bool include_timing = false);

std::string verdict_text(const Verdict& verdict);
std::string density_value_text(const DensityValue& value, bool approximate = false);

}  // namespace densitylab
