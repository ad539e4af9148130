// stabkit command-line front end. Exit codes: 0 success, 1 usage or config error, 2 some experiment row failed.

#include "CLI11.hpp"
#include "stabkit/boxcover.hpp"
#include "stabkit/error.hpp"
#include "stabkit/experiment.hpp"
#include "stabkit/genlab.hpp"
#include "stabkit/halfgraph.hpp"
#include "stabkit/json_io.hpp"
#include "stabkit/patterns.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace stabkit;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::optional<std::uint64_t> budget;
  bool csv = false;
};

// --group plus either --relation FILE or --gen JSON (inline, or @path).
struct RelationSource {
  std::string group;
  std::string relation_file;
  std::string gen;
};

void add_source(CLI::App* c, RelationSource& s) {
  c->add_option("--group,-g", s.group, "group spec, e.g. Z9, D4, Z2^4, Z3xZ3, table:path")->required();
  auto* r = c->add_option("--relation,-r", s.relation_file, "relation file written by `gen`");
  auto* g = c->add_option("--gen", s.gen, "generator spec as JSON, or @file");
  r->excludes(g);
}

Json read_json_arg(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw Error(ErrorKind::Parse, "cannot open " + arg.substr(1));
    return Json::parse(in);
  }
  return Json::parse(arg);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
}

Relation load_source(const RelationSource& s) {
  const GroupPtr g = parse_group(s.group);
  if (!s.relation_file.empty()) {
    std::ifstream in(s.relation_file);
    if (!in) throw Error(ErrorKind::Parse, "cannot open " + s.relation_file);
    return load_relation(g, in);
  }
  if (s.gen.empty()) throw Error(ErrorKind::InvalidArgument, "need --relation or --gen");
  return generate(generator_from_json(read_json_arg(s.gen)), g);
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  out << text;
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoul(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite stability toolkit: half-graphs, pattern censuses, box covers and experiment sweeps"};
  app.require_subcommand(1);
  Globals gl;
  app.add_option("--seed", gl.seed, "seed for sampling commands")->capture_default_str();
  app.add_option("--threads", gl.threads, "worker threads")->capture_default_str();
  app.add_option("--budget", gl.budget, "work budget: tuple budget for exact counts, closure budget for subgroups");
  app.add_flag("--csv", gl.csv, "CSV instead of JSON where supported");

  // group info
  auto* group_cmd = app.add_subcommand("group", "group inspection")->require_subcommand(1);
  std::string group_spec;
  auto* group_info = group_cmd->add_subcommand("info", "order, exponent and element orders");
  group_info->add_option("spec", group_spec)->required();

  // halfgraph
  auto* hg = app.add_subcommand("halfgraph", "half-graph census")->require_subcommand(1);
  RelationSource hg_src;
  std::size_t k = 2;
  std::uint64_t samples = 100'000;
  double confidence = 0.95;
  std::size_t limit = 0;
  auto* hg_count = hg->add_subcommand("count", "exact |H_k(S)|");
  auto* hg_est = hg->add_subcommand("estimate", "Monte Carlo estimate with a Hoeffding interval");
  auto* hg_prof = hg->add_subcommand("profile", "theta_1..theta_k");
  for (auto* c : {hg_count, hg_est, hg_prof}) {
    add_source(c, hg_src);
    c->add_option("--k", k, "height (profile: maximum height)")->capture_default_str();
  }
  hg_count->add_option("--witnesses", limit, "also list the first N witnesses");
  for (auto* c : {hg_est, hg_prof}) {
    c->add_option("--samples", samples)->capture_default_str();
    c->add_option("--confidence", confidence)->capture_default_str();
  }

  // patterns census
  auto* pat = app.add_subcommand("patterns", "pattern censuses")->require_subcommand(1);
  auto* pat_census = pat->add_subcommand("census", "count pattern parameter triples");
  RelationSource pat_src;
  std::string kind = "square";
  std::size_t witnesses = 0;
  std::optional<std::size_t> coordinate;
  bool diagonal = false;
  std::string ap_set;
  std::size_t ap_m = 2, ap_h = 1;
  std::optional<std::size_t> cover_index;
  pat_census->add_option("--group,-g", pat_src.group)->required();
  pat_census->add_option("--relation,-r", pat_src.relation_file);
  pat_census->add_option("--gen", pat_src.gen);
  pat_census->add_option("--kind", kind, "square|naive|bmz-left|bmz-right|rect23|lshape|ap")->capture_default_str();
  pat_census->add_option("--witnesses", witnesses, "materialize up to N witnesses");
  pat_census->add_option("--coordinate", coordinate, "coordinate the side length acts on (default: last)");
  pat_census->add_flag("--diagonal", diagonal, "side length acts on every coordinate");
  pat_census->add_option("--set", ap_set, "ap: comma-separated element indices of A");
  pat_census->add_option("--m", ap_m, "ap: progression length")->capture_default_str();
  pat_census->add_option("--step", ap_h, "ap: step element index h")->capture_default_str();
  pat_census->add_option("--coverage-index", cover_index, "square: side-length coverage of subgroups up to this index");

  // subgroups
  auto* sub = app.add_subcommand("subgroups", "subgroups of bounded index");
  std::string sub_group;
  std::size_t max_index = 4;
  bool with_cosets = false;
  sub->add_option("--group,-g", sub_group)->required();
  sub->add_option("--max-index", max_index)->capture_default_str();
  sub->add_flag("--cosets", with_cosets, "include left cosets");

  // boxcover
  auto* box = app.add_subcommand("boxcover", "greedy box cover");
  RelationSource box_src;
  std::string eps_text = "1/100", purity_text = "1";
  std::size_t max_boxes = 8;
  add_source(box, box_src);
  box->add_option("--epsilon", eps_text)->capture_default_str();
  box->add_option("--max-boxes", max_boxes)->capture_default_str();
  box->add_option("--purity", purity_text)->capture_default_str();

  // gen
  auto* gen = app.add_subcommand("gen", "build a relation and write it in the relation file format");
  std::string gen_group, gen_spec, gen_out;
  gen->add_option("--group,-g", gen_group)->required();
  gen->add_option("--spec", gen_spec, "generator JSON, or @file")->required();
  gen->add_option("--out,-o", gen_out, "output path (default stdout)");

  // experiment
  auto* exp = app.add_subcommand("experiment", "config-driven sweeps")->require_subcommand(1);
  std::string config_path;
  bool no_timing = false;
  auto* exp_run = exp->add_subcommand("run", "per-group probe: density, theta_k, censuses, subgroup search");
  auto* exp_trend = exp->add_subcommand("trend", "theta_k and census densities across a family");
  for (auto* c : {exp_run, exp_trend}) c->add_option("config", config_path, "JSON config file")->required();
  exp_run->add_flag("--no-timing", no_timing, "omit wall-clock timings");

  CLI11_PARSE(app, argc, argv);

  try {
    if (group_info->parsed()) {
      const GroupPtr g = parse_group(group_spec);
      const auto e = exponent_and_orders(*g);
      emit(Json{{"name", g->name()},
                {"order", g->order()},
                {"abelian", g->is_abelian()},
                {"recipe_hash", g->recipe_hash_hex()},
                {"exponent", e.exponent},
                {"orders", e.orders}});
      return 0;
    }

    if (hg_count->parsed() || hg_est->parsed() || hg_prof->parsed()) {
      const Relation s = load_source(hg_src);
      HalfGraphOptions ho;
      ho.threads = gl.threads;
      if (gl.budget) ho.tuple_budget = *gl.budget;
      if (hg_count->parsed()) {
        Json j = to_json(count_halfgraphs_exact(s, k, ho));
        if (limit) {
          Json w = Json::array();
          for (const auto& h : enumerate_halfgraphs(s, k, limit)) w.push_back(Json{{"a", h.a}, {"b", h.b}});
          j["witnesses"] = w;
        }
        emit(j);
      } else if (hg_est->parsed()) {
        emit(to_json(sample_halfgraphs(s, k, samples, gl.seed, confidence, gl.threads)));
      } else {
        ProfileOptions po{ho, samples, gl.seed, confidence};
        const auto prof = theta_profile(s, k, po);
        if (gl.csv) {
          std::cout << "k,theta_group_approx,theta_carrier_approx,method\n";
          for (const auto& e : prof)
            std::cout << e.k << ',' << to_double(e.theta_group) << ',' << to_double(e.theta_carrier) << ','
                      << (e.exact ? "exact" : "sampled") << '\n';
        } else {
          Json arr = Json::array();
          for (const auto& e : prof) arr.push_back(to_json(e));
          emit(Json{{"profile", arr}});
        }
      }
      return 0;
    }

    if (pat_census->parsed()) {
      if (kind == "ap") {
        const GroupPtr g = parse_group(pat_src.group);
        const auto members = parse_index_list(ap_set);
        const auto res = ap_census(*g, Bitset::from_indices(g->order(), members), ap_m, g->element(ap_h));
        emit(Json{{"kind", "ap"}, {"m", ap_m}, {"h", ap_h}, {"set", to_json(res.set)}, {"count", res.count}});
        return 0;
      }
      const Relation s = load_source(pat_src);
      PatternOptions po;
      po.witnesses = witnesses;
      po.threads = gl.threads;
      po.action.coordinate = coordinate;
      if (diagonal) po.action.mode = SideAction::Mode::Diagonal;
      const PatternKind pk = parse_pattern_kind(kind);
      const PatternCensus c = census(s, pk, po);
      Json j = to_json(c);
      if (cover_index) {
        if (pk != PatternKind::Square) throw Error(ErrorKind::InvalidArgument, "--coverage-index needs --kind square");
        SubgroupSearchOptions so;
        if (gl.budget) so.closure_budget = *gl.budget;
        Json cov = Json::array();
        for (const auto& h : subgroups_up_to_index(s.group(), *cover_index, so))
          cov.push_back(to_json(sidelength_coverage(s, h, c)));
        j["coverage"] = cov;
      }
      emit(j);
      return 0;
    }

    if (sub->parsed()) {
      const GroupPtr g = parse_group(sub_group);
      SubgroupSearchOptions so;
      if (gl.budget) so.closure_budget = *gl.budget;
      Json arr = Json::array();
      for (const auto& h : subgroups_up_to_index(*g, max_index, so)) {
        Json j = to_json(h);
        if (with_cosets) {
          Json cs = Json::array();
          for (const auto& c : left_cosets(*g, h)) cs.push_back(to_json(c));
          j["cosets"] = cs;
        }
        arr.push_back(j);
      }
      emit(Json{{"group", g->name()}, {"max_index", max_index}, {"subgroups", arr}});
      return 0;
    }

    if (box->parsed()) {
      const Relation s = load_source(box_src);
      const BoxCover cover = greedy_box_cover(s, parse_rational(eps_text), max_boxes, parse_rational(purity_text));
      Json j = to_json(cover);
      HalfGraphOptions ho;
      if (gl.budget) ho.tuple_budget = *gl.budget;
      try {
        const BoxStability st = box_union_stability_check(cover, ho);
        j["stability"] = Json{{"ell", st.ell}, {"halfgraph_count_at_ell_plus_1", st.halfgraph_count_at_ell_plus_1}};
      } catch (const BudgetExceeded& e) {
        j["stability"] = Json{{"ell", cover.boxes.size()}, {"skipped", e.what()}};
      }
      emit(j);
      return 0;
    }

    if (gen->parsed()) {
      const Relation s = generate(generator_from_json(read_json_arg(gen_spec)), parse_group(gen_group));
      std::ostringstream os;
      save_relation(s, os);
      write_output(gen_out, os.str());
      return 0;
    }

    if (exp_run->parsed() || exp_trend->parsed()) {
      ExperimentConfig cfg = config_from_json(read_json_file(config_path));
      if (app.get_option("--threads")->count()) cfg.threads = gl.threads;
      if (app.get_option("--seed")->count()) cfg.seed = gl.seed;
      if (gl.budget) cfg.tuple_budget = *gl.budget;
      if (exp_run->parsed()) {
        const ExperimentReport rep = run_experiment(cfg);
        write_output(cfg.output, gl.csv ? to_csv(rep) : to_json(rep, !no_timing).dump(2) + "\n");
        return rep.has_errors() ? 2 : 0;
      }
      const TrendTable t = run_family_trend(cfg);
      write_output(cfg.output, gl.csv ? to_csv(t) : to_json(t).dump(2) + "\n");
      return t.has_errors() ? 2 : 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
