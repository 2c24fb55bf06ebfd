#pragma once

#include <string>

#include <json.hpp>

#include "tscale/abscont.hpp"
#include "tscale/calculus.hpp"
#include "tscale/measure.hpp"
#include "tscale/timescale.hpp"

namespace tscale {

using json = nlohmann::json;

// Finite doubles pass through; infinities become "inf" / "-inf" and NaN
// becomes null, since JSON has no literal for them.
json number(double v);

// {"components":[{"interval":[0.0,1.0]},{"point":2.0}]}, any order.
// Interval bounds may be the strings "-inf" / "inf".
TimeScale scale_from_json(const json& j);
json to_json(const TimeScale& ts);
TimeScale load_scale_file(const std::string& path);

// {"pieces":[{"interval":[a,b],"closed":[true,false]},{"point":t}]}.
// "closed" defaults to [true, true].
BorelSet borel_from_json(const json& j);
json to_json(const BorelSet& set);
BorelSet load_borel_file(const std::string& path);

json to_json(const PointClass& pc);
json to_json(const LimitResult& r);
json to_json(const IntervalFamily& family);
json to_json(const ACReport& report);
json to_json(const EquivalenceReport& report);

}  // namespace tscale
