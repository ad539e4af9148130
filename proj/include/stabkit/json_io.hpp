#pragma once

#include "stabkit/boxcover.hpp"
#include "stabkit/group.hpp"
#include "stabkit/halfgraph.hpp"
#include "stabkit/patterns.hpp"
#include "stabkit/rational.hpp"

#include "json.hpp"

namespace stabkit {

using Json = nlohmann::ordered_json;

// Rationals serialize as {"num": n, "den": d}; components that do not fit in 64 bits become decimal strings.
Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);  // also accepts "p/q" strings and plain numbers

Json to_json(const HalfGraphReport& r);
Json to_json(const ThetaEntry& e);
Json to_json(const PatternCensus& c);
Json to_json(const CoverageReport& c);
Json to_json(const BoxCover& c);
Json to_json(const Subgroup& s);
Json to_json(const ExponentReport& e);
Json to_json(const Bitset& b);  // ascending member list

}  // namespace stabkit
