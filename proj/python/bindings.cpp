#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stabkit/boxcover.hpp"
#include "stabkit/error.hpp"
#include "stabkit/experiment.hpp"
#include "stabkit/genlab.hpp"
#include "stabkit/halfgraph.hpp"
#include "stabkit/json_io.hpp"
#include "stabkit/patterns.hpp"

namespace py = pybind11;
using namespace stabkit;

// Groups are immutable; Python holds them through a non-const holder and this caster bridges GroupPtr.
namespace pybind11::detail {
template <>
struct type_caster<GroupPtr> {
  PYBIND11_TYPE_CASTER(GroupPtr, const_name("Group"));
  using Inner = make_caster<std::shared_ptr<FiniteGroup>>;

  bool load(handle src, bool convert) {
    Inner inner;
    if (!inner.load(src, convert)) return false;
    value = cast_op<std::shared_ptr<FiniteGroup>>(inner);
    return true;
  }
  static handle cast(const GroupPtr& src, return_value_policy policy, handle parent) {
    return Inner::cast(std::const_pointer_cast<FiniteGroup>(src), policy, parent);
  }
};
}  // namespace pybind11::detail

namespace {

// Exact rationals cross the boundary as fractions.Fraction.
py::object fraction(const Rational& r) {
  py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(py::int_(py::str(numerator(r).str())), py::int_(py::str(denominator(r).str())));
}

Rational from_py(const py::handle& h) { return parse_rational(py::str(h).cast<std::string>()); }

Bitset element_set(const FiniteGroup& g, const std::vector<std::size_t>& members) {
  for (std::size_t m : members)
    if (m >= g.order()) throw Error(ErrorKind::IndexOutOfRange, "element " + std::to_string(m));
  return Bitset::from_indices(g.order(), members);
}

py::object json_to_py(const Json& j) {
  py::object loads = py::module_::import("json").attr("loads");
  return loads(j.dump());
}

py::dict halfgraph_dict(const HalfGraphReport& r) {
  py::dict d;
  d["k"] = r.k;
  d["exact_count"] = r.exact_count ? py::cast(*r.exact_count) : py::none();
  d["estimate"] = r.estimate ? fraction(*r.estimate) : py::none();
  d["confidence_interval"] = r.confidence_interval
                                 ? py::object(py::make_tuple(fraction(r.confidence_interval->first),
                                                             fraction(r.confidence_interval->second)))
                                 : py::none();
  d["samples"] = r.samples ? py::cast(*r.samples) : py::none();
  d["theta_group"] = fraction(r.theta_group);
  d["theta_carrier"] = fraction(r.theta_carrier);
  return d;
}

PatternOptions pattern_options(std::size_t witnesses, std::optional<std::size_t> coordinate, bool diagonal,
                               unsigned threads) {
  PatternOptions o;
  o.witnesses = witnesses;
  o.action.coordinate = coordinate;
  if (diagonal) o.action.mode = SideAction::Mode::Diagonal;
  o.threads = threads;
  return o;
}

}  // namespace

PYBIND11_MODULE(_stabkit, m) {
  m.doc() = "Finite stability toolkit core";
  m.attr("__version__") = kToolkitVersion;

  py::register_exception<Error>(m, "StabkitError", PyExc_ValueError);


  py::class_<FiniteGroup, std::shared_ptr<FiniteGroup>>(m, "Group")
      .def_property_readonly("order", &FiniteGroup::order)
      .def_property_readonly("name", &FiniteGroup::name)
      .def_property_readonly("is_abelian", &FiniteGroup::is_abelian)
      .def_property_readonly("recipe_hash", &FiniteGroup::recipe_hash_hex)
      .def("mul", &FiniteGroup::mul)
      .def("inv", &FiniteGroup::inv)
      .def("pow", &FiniteGroup::pow)
      .def("exponent", [](const FiniteGroup& g) { return exponent_and_orders(g).exponent; })
      .def("element_orders", [](const FiniteGroup& g) { return exponent_and_orders(g).orders; })
      .def("__repr__", [](const FiniteGroup& g) { return "<Group " + g.name() + " of order " + std::to_string(g.order()) + ">"; });

  m.def("parse_group", &parse_group, py::arg("spec"));
  m.def("cyclic", &cyclic);
  m.def("dihedral", &dihedral);
  m.def("heisenberg", &heisenberg);
  m.def("elementary_abelian", &elementary_abelian, py::arg("p"), py::arg("k"));
  m.def("product", &product);
  m.def("cayley_table", &cayley_table, py::arg("order"), py::arg("table"), py::arg("label") = "");

  py::class_<Subgroup>(m, "Subgroup")
      .def_property_readonly("members", [](const Subgroup& s) { return s.members.indices(); })
      .def_readonly("index", &Subgroup::index_in_parent)
      .def_readonly("generators", &Subgroup::generators)
      .def_property_readonly("order", &Subgroup::order)
      .def("__repr__", [](const Subgroup& s) {
        return "<Subgroup of order " + std::to_string(s.order()) + ", index " + std::to_string(s.index_in_parent) + ">";
      });

  m.def("subgroups", [](const GroupPtr& g, std::size_t max_index) { return subgroups_up_to_index(*g, max_index); },
        py::arg("group"), py::arg("max_index"));
  m.def("subgroup_generated_by", [](const GroupPtr& g, const std::vector<std::size_t>& gens) {
    return subgroup_generated_by(*g, gens);
  });
  m.def("left_cosets", [](const GroupPtr& g, const Subgroup& h) {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& c : left_cosets(*g, h)) out.push_back(c.indices());
    return out;
  });

  py::class_<Relation>(m, "Relation")
      .def_property_readonly("group", &Relation::group_ptr)
      .def_property_readonly("shape", [](const Relation& r) { return py::make_tuple(r.rows(), r.cols()); })
      .def("count", &Relation::count)
      .def("pairs", &Relation::pairs)
      .def("test", &Relation::test)
      .def("density", [](const Relation& r, bool carrier) {
        return fraction(density(r, carrier ? Normalization::Carrier : Normalization::GroupPower));
      }, py::arg("carrier") = false)
      .def("__len__", &Relation::count)
      .def("__eq__", [](const Relation& a, const Relation& b) { return a == b; });

  m.def("relation", [](const GroupPtr& g, const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                       std::optional<std::vector<std::size_t>> domain, std::optional<std::vector<std::size_t>> codomain) {
    const CarrierSet x = domain ? carrier_from_indices(g, 1, *domain) : full_carrier(g);
    const CarrierSet y = codomain ? carrier_from_indices(g, 1, *codomain) : full_carrier(g);
    return build_relation(x, y, pairs);
  }, py::arg("group"), py::arg("pairs"), py::arg("domain") = py::none(), py::arg("codomain") = py::none());
  m.def("cayley_graph", [](const GroupPtr& g, const std::vector<std::size_t>& a, const std::string& direction) {
    if (direction != "left" && direction != "right") throw Error(ErrorKind::InvalidArgument, "direction is left or right");
    return cayley_graph(g, element_set(*g, a), direction == "left" ? Direction::Left : Direction::Right);
  }, py::arg("group"), py::arg("set"), py::arg("direction") = "left");
  m.def("symdiff", [](const Relation& a, const Relation& b) { return relation_algebra(SetOp::SymDiff, a, b); });

  m.def("count_halfgraphs", [](const Relation& r, std::size_t k, std::uint64_t budget, unsigned threads) {
    return halfgraph_dict(count_halfgraphs_exact(r, k, {budget, threads}));
  }, py::arg("relation"), py::arg("k"), py::arg("tuple_budget") = 1'000'000'000ULL, py::arg("threads") = 1);
  m.def("enumerate_halfgraphs", [](const Relation& r, std::size_t k, std::size_t limit) {
    std::vector<py::tuple> out;
    for (const auto& w : enumerate_halfgraphs(r, k, limit)) out.push_back(py::make_tuple(w.a, w.b));
    return out;
  });
  m.def("sample_halfgraphs", [](const Relation& r, std::size_t k, std::uint64_t samples, std::uint64_t seed,
                                double confidence, unsigned threads) {
    return halfgraph_dict(sample_halfgraphs(r, k, samples, seed, confidence, threads));
  }, py::arg("relation"), py::arg("k"), py::arg("samples"), py::arg("seed"), py::arg("confidence") = 0.95,
     py::arg("threads") = 1);
  m.def("theta_profile", [](const Relation& r, std::size_t k_max, std::uint64_t samples, std::uint64_t seed) {
    ProfileOptions o;
    o.samples = samples;
    o.seed = seed;
    py::list out;
    for (const auto& e : theta_profile(r, k_max, o)) {
      py::dict d = halfgraph_dict(e.report);
      d["exact"] = e.exact;
      out.append(d);
    }
    return out;
  }, py::arg("relation"), py::arg("k_max"), py::arg("samples") = 100'000, py::arg("seed") = 0);

  m.def("census", [](const Relation& r, const std::string& kind, std::size_t witnesses,
                     std::optional<std::size_t> coordinate, bool diagonal, unsigned threads) {
    return json_to_py(to_json(census(r, parse_pattern_kind(kind), pattern_options(witnesses, coordinate, diagonal, threads))));
  }, py::arg("relation"), py::arg("kind"), py::arg("witnesses") = 0, py::arg("coordinate") = py::none(),
     py::arg("diagonal") = false, py::arg("threads") = 1);
  m.def("ap_census", [](const GroupPtr& g, const std::vector<std::size_t>& a, std::size_t m_len, std::size_t h) {
    return ap_census(*g, element_set(*g, a), m_len, g->element(h)).set.indices();
  }, py::arg("group"), py::arg("set"), py::arg("m"), py::arg("h"));
  m.def("sidelength_coverage", [](const Relation& r, const Subgroup& h) {
    const auto c = sidelength_coverage(r, h);
    return py::make_tuple(c.covered.indices(), fraction(c.missing_fraction));
  });
  m.def("comparability_defect", [](const GroupPtr& g, const std::vector<std::size_t>& a, std::size_t x,
                                   const std::string& side) {
    return fraction(comparability_defect(*g, element_set(*g, a), g->element(x), side == "right" ? Side::Right : Side::Left));
  }, py::arg("group"), py::arg("set"), py::arg("g"), py::arg("side") = "left");

  m.def("greedy_box_cover", [](const Relation& r, const py::object& eps, std::size_t max_boxes, const py::object& purity) {
    const BoxCover c = greedy_box_cover(r, from_py(eps), max_boxes, from_py(purity));
    py::dict d;
    py::list boxes;
    for (const auto& b : c.boxes) boxes.append(py::make_tuple(b.rows.indices(), b.cols.indices()));
    d["boxes"] = boxes;
    d["symdiff_error"] = fraction(c.symdiff_error);
    d["overcount_error"] = fraction(c.overcount_error);
    d["union"] = c.union_relation;
    d["halfgraphs_at_ell_plus_1"] = box_union_stability_check(c).halfgraph_count_at_ell_plus_1;
    return d;
  }, py::arg("relation"), py::arg("epsilon"), py::arg("max_boxes"), py::arg("purity") = "1");

  m.def("coset_box_set", [](const GroupPtr& g, const Subgroup& h, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    return coset_box_set(g, h, pairs);
  });
  m.def("sidon_set", [](const GroupPtr& g, std::size_t budget) { return sidon_set(*g, budget).indices(); },
        py::arg("group"), py::arg("budget") = 0);
  m.def("random_dense", [](const GroupPtr& g, const py::object& delta, std::uint64_t seed) {
    return random_dense(full_carrier(g), full_carrier(g), from_py(delta), seed);
  }, py::arg("group"), py::arg("delta"), py::arg("seed"));
  m.def("perturb", [](const Relation& r, const py::object& eta, std::uint64_t seed) {
    return perturb_relation(r, from_py(eta), seed);
  }, py::arg("relation"), py::arg("eta"), py::arg("seed"));
  m.def("linear_order", &linear_order_relation, py::arg("group"), py::arg("length"));
  m.def("generate", [](const GroupPtr& g, const std::string& spec_json) {
    return generate(generator_from_json(Json::parse(spec_json)), g);
  }, py::arg("group"), py::arg("spec_json"));

  m.def("run_experiment", [](const std::string& config_json, bool timing) {
    return json_to_py(to_json(run_experiment(config_from_json(Json::parse(config_json))), timing));
  }, py::arg("config_json"), py::arg("timing") = false);
  m.def("run_family_trend", [](const std::string& config_json) {
    return json_to_py(to_json(run_family_trend(config_from_json(Json::parse(config_json)))));
  }, py::arg("config_json"));
}
