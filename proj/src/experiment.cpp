#include "stabkit/experiment.hpp"

#include "stabkit/error.hpp"
#include "stabkit/genlab.hpp"
#include "stabkit/parallel.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace stabkit {

namespace {

struct KindName {
  GeneratorSpec::Kind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {GeneratorSpec::Kind::CosetBoxes, "coset_boxes"},   {GeneratorSpec::Kind::CosetCayley, "coset_cayley"},
    {GeneratorSpec::Kind::SidonCayley, "sidon_cayley"}, {GeneratorSpec::Kind::RandomDense, "random_dense"},
    {GeneratorSpec::Kind::Perturbation, "perturbation"}, {GeneratorSpec::Kind::LinearOrder, "linear_order"},
    {GeneratorSpec::Kind::Cayley, "cayley"},
};

const char* kind_name(GeneratorSpec::Kind k) {
  for (const auto& e : kKindNames)
    if (e.kind == k) return e.name;
  return "unknown";
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SubgroupSelector selector_from_json(const Json& j) {
  SubgroupSelector s;
  if (j.contains("generators")) s.generators = j.at("generators").get<std::vector<std::size_t>>();
  if (j.contains("index")) s.index = j.at("index").get<std::size_t>();
  if (j.contains("ordinal")) s.ordinal = j.at("ordinal").get<std::size_t>();
  return s;
}

Json selector_to_json(const SubgroupSelector& s) {
  if (s.generators) return Json{{"generators", *s.generators}};
  return Json{{"index", s.index}, {"ordinal", s.ordinal}};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::uint64_t checked_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i)
    if (__builtin_mul_overflow(r, base, &r)) return UINT64_MAX;
  return r;
}

HalfGraphReport theta_for(const Relation& s, const ExperimentConfig& c, std::size_t row, bool& exact) {
  exact = checked_pow(s.domain().size(), c.k) <= c.tuple_budget;
  if (exact) return count_halfgraphs_exact(s, c.k, {c.tuple_budget, 1});
  return sample_halfgraphs(s, c.k, c.samples, splitmix64(c.seed + row), c.confidence, 1);
}

CensusSummary summarize(const Relation& s, const PatternCensus& census) {
  CensusSummary out;
  out.kind = census.kind;
  out.total = census.total_count;
  out.nontrivial = census.nontrivial_count;
  out.density = Rational(BigInt(census.total_count),
                         BigInt(s.rows()) * BigInt(s.cols()) * BigInt(s.group().order()));
  return out;
}

std::string approx(const Rational& r) {
  std::ostringstream os;
  os << std::setprecision(10) << to_double(r);
  return os.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

Json census_to_json(const CensusSummary& c) {
  return Json{{"kind", std::string(to_string(c.kind))},
              {"total", c.total},
              {"nontrivial", c.nontrivial},
              {"density", to_json(c.density)}};
}

}  // namespace

Subgroup select_subgroup(const FiniteGroup& group, const SubgroupSelector& selector) {
  if (selector.generators) return subgroup_generated_by(group, *selector.generators);
  std::size_t seen = 0;
  for (auto& h : subgroups_up_to_index(group, selector.index))
    if (h.index_in_parent == selector.index && seen++ == selector.ordinal) return h;
  throw Error(ErrorKind::IndexOutOfRange, group.name() + " has no subgroup #" + std::to_string(selector.ordinal) +
                                              " of index " + std::to_string(selector.index));
}

GeneratorSpec generator_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) throw Error(ErrorKind::Parse, "generator spec needs a \"kind\"");
  GeneratorSpec s;
  const std::string kind = j.at("kind").get<std::string>();
  bool known = false;
  for (const auto& e : kKindNames)
    if (kind == e.name) {
      s.kind = e.kind;
      known = true;
    }
  if (!known) throw Error(ErrorKind::Parse, "unknown generator kind '" + kind + "'");
  if (j.contains("subgroup")) s.subgroup = selector_from_json(j.at("subgroup"));
  if (j.contains("pairs")) {
    const auto& p = j.at("pairs");
    if (p.is_string()) {
      if (p.get<std::string>() != "diagonal") throw Error(ErrorKind::Parse, "pairs must be \"diagonal\" or a list");
      s.diagonal = true;
    } else {
      s.diagonal = false;
      s.pairs = p.get<std::vector<std::pair<std::size_t, std::size_t>>>();
    }
  }
  if (j.contains("budget")) s.budget = j.at("budget").get<std::size_t>();
  if (j.contains("delta")) s.delta = rational_from_json(j.at("delta"));
  if (j.contains("eta")) s.eta = rational_from_json(j.at("eta"));
  if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("length")) {
    const auto& l = j.at("length");
    if (l.is_string()) {
      if (l.get<std::string>() != "isqrt") throw Error(ErrorKind::Parse, "length must be an integer or \"isqrt\"");
    } else {
      s.length = l.get<std::size_t>();
    }
  }
  if (j.contains("set")) s.set = j.at("set").get<std::vector<std::size_t>>();
  if (j.contains("base")) s.base = std::make_shared<GeneratorSpec>(generator_from_json(j.at("base")));
  if (s.delta < 0 || s.delta > 1) throw Error(ErrorKind::InvalidArgument, "delta must lie in [0, 1]");
  if (s.eta < 0 || s.eta > 1) throw Error(ErrorKind::InvalidArgument, "eta must lie in [0, 1]");
  if (s.kind == GeneratorSpec::Kind::Perturbation && !s.base)
    throw Error(ErrorKind::Parse, "perturbation generator needs a \"base\"");
  return s;
}

Json to_json(const GeneratorSpec& s) {
  Json j{{"kind", kind_name(s.kind)}};
  switch (s.kind) {
    case GeneratorSpec::Kind::CosetBoxes:
      j["subgroup"] = selector_to_json(s.subgroup);
      if (s.diagonal)
        j["pairs"] = "diagonal";
      else
        j["pairs"] = s.pairs;
      break;
    case GeneratorSpec::Kind::CosetCayley: j["subgroup"] = selector_to_json(s.subgroup); break;
    case GeneratorSpec::Kind::SidonCayley: j["budget"] = s.budget; break;
    case GeneratorSpec::Kind::RandomDense:
      j["delta"] = to_json(s.delta);
      j["seed"] = s.seed;
      break;
    case GeneratorSpec::Kind::Perturbation:
      j["base"] = to_json(*s.base);
      j["eta"] = to_json(s.eta);
      j["seed"] = s.seed;
      break;
    case GeneratorSpec::Kind::LinearOrder:
      if (s.length)
        j["length"] = *s.length;
      else
        j["length"] = "isqrt";
      break;
    case GeneratorSpec::Kind::Cayley: j["set"] = s.set; break;
  }
  return j;
}

Relation generate(const GeneratorSpec& s, const GroupPtr& group) {
  switch (s.kind) {
    case GeneratorSpec::Kind::CosetBoxes: {
      const Subgroup h = select_subgroup(*group, s.subgroup);
      return coset_box_set(group, h, s.diagonal ? diagonal_pairs(*group, h) : s.pairs);
    }
    case GeneratorSpec::Kind::CosetCayley:
      return cayley_graph(group, select_subgroup(*group, s.subgroup).members, Direction::Left);
    case GeneratorSpec::Kind::SidonCayley: return cayley_graph(group, sidon_set(*group, s.budget), Direction::Left);
    case GeneratorSpec::Kind::RandomDense: {
      auto carrier = full_carrier(group, 1);
      return random_dense(carrier, carrier, s.delta, s.seed);
    }
    case GeneratorSpec::Kind::Perturbation: return perturb_relation(generate(*s.base, group), s.eta, s.seed);
    case GeneratorSpec::Kind::LinearOrder: {
      const std::size_t n = s.length.value_or(static_cast<std::size_t>(std::sqrt(static_cast<double>(group->order()))));
      return linear_order_relation(group, n);
    }
    case GeneratorSpec::Kind::Cayley:
      return cayley_graph(group, Bitset::from_indices(group->order(), s.set), Direction::Left);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown generator kind");
}

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorKind::Parse, "config must be a JSON object");
  ExperimentConfig c;
  try {
    c.groups = j.at("groups").get<std::vector<std::string>>();
    c.generator = generator_from_json(j.at("generator"));
    if (j.contains("k")) c.k = j.at("k").get<std::size_t>();
    if (j.contains("epsilon")) c.epsilon = rational_from_json(j.at("epsilon"));
    if (j.contains("max_index")) c.max_index = j.at("max_index").get<std::size_t>();
    if (j.contains("census"))
      for (const auto& k : j.at("census")) c.censuses.push_back(parse_pattern_kind(k.get<std::string>()));
    if (j.contains("samples")) c.samples = j.at("samples").get<std::uint64_t>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("confidence")) c.confidence = j.at("confidence").get<double>();
    if (j.contains("tuple_budget")) c.tuple_budget = j.at("tuple_budget").get<std::uint64_t>();
    if (j.contains("closure_budget")) c.closure_budget = j.at("closure_budget").get<std::uint64_t>();
    if (j.contains("threads")) c.threads = j.at("threads").get<unsigned>();
    if (j.contains("output")) c.output = j.at("output").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("config: ") + e.what());
  }
  if (c.groups.empty()) throw Error(ErrorKind::InvalidArgument, "config lists no groups");
  if (c.k < 1) throw Error(ErrorKind::InvalidArgument, "k must be >= 1");
  if (c.max_index < 1) throw Error(ErrorKind::InvalidArgument, "max_index must be >= 1");
  if (!(c.epsilon > 0 && c.epsilon <= 1)) throw Error(ErrorKind::InvalidArgument, "epsilon must lie in (0, 1]");
  if (c.samples < 1) throw Error(ErrorKind::InvalidArgument, "samples must be >= 1");
  if (!(c.confidence > 0 && c.confidence < 1)) throw Error(ErrorKind::InvalidArgument, "confidence must lie in (0, 1)");
  return c;
}

Json to_json(const ExperimentConfig& c) {
  Json kinds = Json::array();
  for (auto k : c.censuses) kinds.push_back(std::string(to_string(k)));
  return Json{{"groups", c.groups},
              {"generator", to_json(c.generator)},
              {"k", c.k},
              {"epsilon", to_json(c.epsilon)},
              {"max_index", c.max_index},
              {"census", kinds},
              {"samples", c.samples},
              {"seed", c.seed},
              {"confidence", c.confidence},
              {"tuple_budget", c.tuple_budget},
              {"closure_budget", c.closure_budget},
              {"output", c.output}};
}

bool ExperimentReport::has_errors() const {
  for (const auto& r : rows)
    if (r.error) return true;
  return false;
}

bool TrendTable::has_errors() const {
  for (const auto& r : rows)
    if (r.error) return true;
  return false;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  ExperimentReport report;
  report.config = config;
  const std::size_t n = config.groups.size();
  report.rows.resize(n);
  report.timing.resize(n);

  parallel_for(n, config.threads, [&](std::size_t i, unsigned) {
    ExperimentRow& row = report.rows[i];
    StageTiming& t = report.timing[i];
    row.group = t.group = config.groups[i];
    try {
      auto t0 = std::chrono::steady_clock::now();
      const GroupPtr g = parse_group(config.groups[i]);
      row.group = t.group = g->name();
      row.order = g->order();
      row.exponent = exponent_and_orders(*g).exponent;
      const Relation s = generate(config.generator, g);
      row.density = density(s, Normalization::GroupPower);
      t.build_seconds = seconds_since(t0);

      t0 = std::chrono::steady_clock::now();
      row.theta = theta_for(s, config, i, row.theta_exact);
      t.theta_seconds = seconds_since(t0);

      t0 = std::chrono::steady_clock::now();
      std::optional<PatternCensus> squares;
      for (PatternKind kind : config.censuses) {
        PatternCensus c = census(s, kind);
        row.censuses.push_back(summarize(s, c));
        if (kind == PatternKind::Square) squares = std::move(c);
      }
      if (!squares) squares = square_census(s);
      t.census_seconds = seconds_since(t0);

      t0 = std::chrono::steady_clock::now();
      BestSubgroup best;
      for (const Subgroup& h : subgroups_up_to_index(*g, config.max_index, {config.closure_budget})) {
        ++best.examined;
        const CoverageReport cov = sidelength_coverage(s, h, *squares);
        if (cov.missing_fraction < config.epsilon) {
          best.found = true;
          best.index = h.index_in_parent;
          best.missing_fraction = cov.missing_fraction;
          best.subgroup = h;
          break;
        }
      }
      row.best = std::move(best);
      t.subgroup_seconds = seconds_since(t0);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });
  return report;
}

TrendTable run_family_trend(const ExperimentConfig& config) {
  if (config.groups.size() < 2) throw Error(ErrorKind::InvalidArgument, "a trend needs at least two groups");
  TrendTable table;
  table.config = config;
  table.rows.resize(config.groups.size());
  parallel_for(config.groups.size(), config.threads, [&](std::size_t i, unsigned) {
    TrendRow& row = table.rows[i];
    row.group = config.groups[i];
    try {
      const GroupPtr g = parse_group(config.groups[i]);
      row.group = g->name();
      row.order = g->order();
      const Relation s = generate(config.generator, g);
      row.theta = theta_for(s, config, i, row.theta_exact);
      auto kinds = config.censuses;
      if (kinds.empty()) kinds.push_back(PatternKind::Square);
      for (PatternKind kind : kinds) row.censuses.push_back(summarize(s, census(s, kind)));
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });
  return table;
}

Json to_json(const ExperimentReport& r, bool include_timing) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json j{{"group", row.group}};
    if (row.error) {
      j["error"] = *row.error;
      rows.push_back(j);
      continue;
    }
    j["order"] = row.order;
    j["exponent"] = row.exponent;
    j["density"] = to_json(row.density);
    j["theta_k"] = Json{{"k", r.config.k},
                        {"method", row.theta_exact ? "exact" : "sampled"},
                        {"theta_group", to_json(row.theta->theta_group)},
                        {"theta_carrier", to_json(row.theta->theta_carrier)},
                        {"report", to_json(*row.theta)}};
    Json cs = Json::array();
    for (const auto& c : row.censuses) cs.push_back(census_to_json(c));
    j["censuses"] = cs;
    const auto& b = *row.best;
    if (b.found)
      j["best_subgroup"] = Json{{"status", "FOUND"},
                                {"index", b.index},
                                {"missing_fraction", to_json(b.missing_fraction)},
                                {"subgroup", to_json(*b.subgroup)},
                                {"examined", b.examined}};
    else
      j["best_subgroup"] = Json{{"status", "NOT_FOUND"}, {"examined", b.examined}};
    rows.push_back(j);
  }
  Json out{{"toolkit", Json{{"name", "stabkit"}, {"version", kToolkitVersion}}},
           {"config", to_json(r.config)},
           {"rows", rows}};
  if (include_timing) {
    Json t = Json::array();
    for (const auto& s : r.timing)
      t.push_back(Json{{"group", s.group},
                       {"build_seconds", s.build_seconds},
                       {"theta_seconds", s.theta_seconds},
                       {"census_seconds", s.census_seconds},
                       {"subgroup_seconds", s.subgroup_seconds}});
    out["timing"] = t;
  }
  return out;
}

Json to_json(const TrendTable& t) {
  Json rows = Json::array();
  for (const auto& row : t.rows) {
    Json j{{"group", row.group}};
    if (row.error) {
      j["error"] = *row.error;
    } else {
      j["order"] = row.order;
      j["theta_method"] = row.theta_exact ? "exact" : "sampled";
      j["halfgraph_count"] = row.theta->exact_count ? Json(*row.theta->exact_count) : Json(nullptr);
      j["theta_group"] = to_json(row.theta->theta_group);
      j["theta_carrier"] = to_json(row.theta->theta_carrier);
      Json cs = Json::array();
      for (const auto& c : row.censuses) cs.push_back(census_to_json(c));
      j["censuses"] = cs;
    }
    rows.push_back(j);
  }
  return Json{{"toolkit", Json{{"name", "stabkit"}, {"version", kToolkitVersion}}},
              {"config", to_json(t.config)},
              {"k", t.config.k},
              {"rows", rows}};
}

std::string to_csv(const ExperimentReport& r) {
  std::ostringstream os;
  os << "group,order,exponent,density_approx,theta_k_approx,theta_method";
  for (auto k : r.config.censuses) os << ',' << to_string(k) << "_total," << to_string(k) << "_density_approx";
  os << ",best_status,best_index,best_missing_fraction_approx,error\n";
  for (const auto& row : r.rows) {
    os << csv_field(row.group);
    if (row.error) {
      os << ",,,,,";
      for (std::size_t i = 0; i < r.config.censuses.size(); ++i) os << ",,";
      os << ",,,," << csv_field(*row.error) << '\n';
      continue;
    }
    os << ',' << row.order << ',' << row.exponent << ',' << approx(row.density) << ','
       << approx(row.theta->theta_group) << ',' << (row.theta_exact ? "exact" : "sampled");
    for (const auto& c : row.censuses) os << ',' << c.total << ',' << approx(c.density);
    if (row.best->found)
      os << ",FOUND," << row.best->index << ',' << approx(row.best->missing_fraction);
    else
      os << ",NOT_FOUND,,";
    os << ",\n";
  }
  return os.str();
}

std::string to_csv(const TrendTable& t) {
  std::ostringstream os;
  os << "group,order,theta_k_approx,theta_method";
  auto kinds = t.config.censuses;
  if (kinds.empty()) kinds.push_back(PatternKind::Square);
  for (auto k : kinds) os << ',' << to_string(k) << "_density_approx";
  os << ",error\n";
  for (const auto& row : t.rows) {
    os << csv_field(row.group);
    if (row.error) {
      os << ",,,";
      for (std::size_t i = 0; i < kinds.size(); ++i) os << ',';
      os << ',' << csv_field(*row.error) << '\n';
      continue;
    }
    os << ',' << row.order << ',' << approx(row.theta->theta_group) << ',' << (row.theta_exact ? "exact" : "sampled");
    for (const auto& c : row.censuses) os << ',' << approx(c.density);
    os << ",\n";
  }
  return os.str();
}

}  // namespace stabkit
