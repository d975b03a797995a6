#pragma once

#include <string>

#include <json.hpp>

#include "sdlab/charfn.hpp"
#include "sdlab/constructions.hpp"
#include "sdlab/finite.hpp"
#include "sdlab/solenoid.hpp"
#include "sdlab/verifier.hpp"

namespace sdlab::jsonio {

using nlohmann::json;

// Rationals travel as "n" / "n/d" strings; integers are also accepted on
// input.  Heights are non-negative integers or "inf".

json rational_to_json(const Rational& r);
Rational rational_from_json(const json& j);

json height_to_json(Height h);
Height height_from_json(const json& j);

json spec_to_json(const SupernaturalSpec& s);
SupernaturalSpec spec_from_json(const json& j);

json value_to_json(const Value& v);
Value value_from_json(const json& j);

json subgroup_to_json(const SubgroupDesc& d);
SubgroupDesc subgroup_from_json(const json& j);

json charfn_to_json(const CharFn& f);
CharFn charfn_from_json(const json& j);

json matrix_to_json(const FormsMatrix& m);
FormsMatrix matrix_from_json(const json& j);

json box_to_json(const TestBox& b);
TestBox box_from_json(const json& j);

json manifest_to_json(const ConstructionManifest& m);
ConstructionManifest manifest_from_json(const json& j);

json classification_to_json(const SupernaturalSpec& s, const SolenoidClass& c);

json verify_report_to_json(const VerifyReport& r);

// "m1,m2,...,mr"
FiniteGroupSpec group_from_string(const std::string& s);

// {"probs": {"(x1,...,xr)": "p/q", ...}}
json dist_to_json(const FiniteGroupSpec& g, const Dist& d);
Dist dist_from_json(const FiniteGroupSpec& g, const json& j);

}  // namespace sdlab::jsonio
