#pragma once

#include <cstdint>

#include <json.hpp>

#include "cartan/decision.hpp"
#include "cartan/identity_suite.hpp"
#include "cartan/operators.hpp"
#include "cartan/orbit_tree.hpp"

namespace cartan {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

/// Complex numbers serialize as [re, im]; the point at infinity as "inf".
Json to_json(Complex c);
Json to_json(const SpherePoint& p);
Json to_json(const Polynomial& p);
Json to_json(const CycleDatum& c);
Json to_json(const MembershipVerdict& m);
Json to_json(const CriticalDatum& c);
Json to_json(const BranchObstruction& b);
Json to_json(const SuiteReport& r);
Json to_json(const OrbitTree& tree);

/// Top level {map, space, verdict, witnesses, diagnostics, version, seed}.
Json report_json(const CartanReport& report, const Budget& budget, std::uint64_t seed);

}  // namespace cartan
