#pragma once

#include "disk_squeeze/control.hpp"
#include "disk_squeeze/fock_oracle.hpp"
#include "disk_squeeze/geometry.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace disk_squeeze {

using Json = nlohmann::json;

// [re, im]; infinity renders as null.
Json to_json(Complex z);
Json to_json(const ExtendedComplex& z);
Json to_json(const GeneralizedCircle& c);
Json to_json(const FixedPoints& f);
Json to_json(const control::ArcEdge& e);
Json to_json(const control::ArcPolygon& p);
Json to_json(const control::ReachableSet& s);
Json to_json(const control::PulseSequence& seq);
Json to_json(const control::ReachabilityBounds& b);
Json to_json(const control::AdiabaticPath& path);
Json to_json(const fock::FockVector& v);

// Compact rendering with object keys sorted and every number printed with
// 17 significant digits. Non-finite numbers become null.
std::string dump_deterministic(const Json& j, int indent = -1);

}  // namespace disk_squeeze
