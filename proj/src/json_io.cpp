#include "stabkit/json_io.hpp"

#include "stabkit/error.hpp"

#include <limits>

namespace stabkit {

namespace {

Json big_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return v.convert_to<std::int64_t>();
  return v.str();
}

BigInt big_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) return BigInt(j.get<std::string>());
  throw Error(ErrorKind::Parse, "expected an integer, got " + j.dump());
}

}  // namespace

Json to_json(const Rational& r) {
  return Json{{"num", big_to_json(boost::multiprecision::numerator(r))},
              {"den", big_to_json(boost::multiprecision::denominator(r))}};
}

Rational rational_from_json(const Json& j) {
  if (j.is_object()) {
    const BigInt den = big_from_json(j.at("den"));
    if (den == 0) throw Error(ErrorKind::Parse, "zero denominator");
    return Rational(big_from_json(j.at("num")), den);
  }
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(BigInt(j.get<std::int64_t>()));
  if (j.is_number_float()) return parse_rational(j.dump());
  throw Error(ErrorKind::Parse, "expected a rational, got " + j.dump());
}

Json to_json(const Bitset& b) { return b.indices(); }

Json to_json(const HalfGraphReport& r) {
  Json j;
  j["k"] = r.k;
  j["exact_count"] = r.exact_count ? Json(*r.exact_count) : Json(nullptr);
  j["estimate"] = r.estimate ? to_json(*r.estimate) : Json(nullptr);
  j["confidence_interval"] =
      r.confidence_interval ? Json::array({to_json(r.confidence_interval->first), to_json(r.confidence_interval->second)})
                            : Json(nullptr);
  j["samples"] = r.samples ? Json(*r.samples) : Json(nullptr);
  j["hits"] = r.hits ? Json(*r.hits) : Json(nullptr);
  j["theta_group"] = to_json(r.theta_group);
  j["theta_carrier"] = to_json(r.theta_carrier);
  return j;
}

Json to_json(const ThetaEntry& e) {
  return Json{{"k", e.k},
              {"theta_group", to_json(e.theta_group)},
              {"theta_carrier", to_json(e.theta_carrier)},
              {"method", e.exact ? "exact" : "sampled"},
              {"report", to_json(e.report)}};
}

Json to_json(const PatternCensus& c) {
  Json w = Json::array();
  for (const auto& x : c.witnesses) w.push_back(Json::array({x.a, x.b, x.g}));
  return Json{{"kind", std::string(to_string(c.kind))},
              {"total_count", c.total_count},
              {"nontrivial_count", c.nontrivial_count},
              {"count_by_sidelength", c.count_by_sidelength},
              {"witnesses", w}};
}

Json to_json(const Subgroup& s) {
  return Json{{"order", s.order()}, {"index", s.index_in_parent}, {"members", to_json(s.members)},
              {"generators", s.generators}};
}

Json to_json(const CoverageReport& c) {
  return Json{{"subgroup", to_json(c.subgroup)},
              {"covered", to_json(c.covered)},
              {"missing_fraction", to_json(c.missing_fraction)}};
}

Json to_json(const BoxCover& c) {
  Json boxes = Json::array();
  for (const auto& b : c.boxes) boxes.push_back(Json{{"rows", to_json(b.rows)}, {"cols", to_json(b.cols)}});
  Json trace = Json::array();
  for (const auto& e : c.error_trace) trace.push_back(to_json(e));
  return Json{{"ell", c.boxes.size()},
              {"boxes", boxes},
              {"symdiff_error", to_json(c.symdiff_error)},
              {"overcount_error", to_json(c.overcount_error)},
              {"error_trace", trace}};
}

Json to_json(const ExponentReport& e) { return Json{{"exponent", e.exponent}, {"orders", e.orders}}; }

}  // namespace stabkit
