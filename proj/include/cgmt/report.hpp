#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "cgmt/construct.hpp"
#include "cgmt/gadgets.hpp"
#include "cgmt/measure.hpp"

namespace cgmt::report {

using nlohmann::json;

// {"exact": ring literal, "pretty": readable form, "decimal": 30 digits}.
// Readers use "exact"; the other two are annotations.
json weight(const AlgebraicWeight& w);
AlgebraicWeight read_weight(const json& j);

json cover(const CoverSet& c);
json measure_value(const MeasureValue& v);
json code(const Code& z);
// Rebuilds a code written by `code` over the given ambient.
Code read_code(const json& j, const AmbientPtr& amb);

json interpolation(const InterpolationResult& r);
json thin(const ThinResult& r);
json certificate(const RefinementCertificate& c);
RefinementCertificate read_certificate(const json& j);
json gadget(const GadgetReport& r);

// Pretty JSON with sorted keys and a trailing newline.
std::string dump(const json& doc);

// block,exact,decimal,case2; the exact literal is quoted (it may hold commas).
std::string measure_csv(const std::vector<MeasureValue>& seq);

}  // namespace cgmt::report
