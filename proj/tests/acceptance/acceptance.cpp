// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "oracle/brute.hpp"
#include "stabkit/boxcover.hpp"
#include "stabkit/experiment.hpp"
#include "stabkit/genlab.hpp"
#include "stabkit/halfgraph.hpp"
#include "stabkit/patterns.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>

using namespace stabkit;

namespace {

// Pinned limits.
constexpr double kCosetSeconds = 30.0;
constexpr double kSidonSeconds = 60.0;
constexpr double kProbeSeconds = 60.0;
constexpr int kOracleSeeds = 50;
constexpr int kPerturbationTrials = 100;
constexpr int kEstimatorRuns = 100;
constexpr double kMinCoverage = 0.90;
constexpr double kConfidence = 0.95;
constexpr std::uint64_t kEstimatorSamples = 4000;
constexpr std::size_t kMaxCoverBoxes = 8;
constexpr int kBoxThreeInstances = 20;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Bitset coset_of(const FiniteGroup& g, const Subgroup& h, std::size_t x, bool left) {
  Bitset out(g.order());
  for (std::size_t m : h.members.indices()) out.set(left ? g.mul(x, m) : g.mul(m, x));
  return out;
}

std::vector<GroupPtr> stability_catalogue() {
  std::vector<GroupPtr> gs;
  for (std::size_t n = 1; n <= 24; ++n) gs.push_back(cyclic(n));
  for (std::size_t k = 2; k <= 4; ++k) gs.push_back(elementary_abelian(2, k));
  gs.push_back(elementary_abelian(3, 2));
  gs.push_back(dihedral(4));
  gs.push_back(dihedral(6));
  return gs;
}

std::vector<GroupPtr> catalogue_up_to_16() {
  std::vector<GroupPtr> gs;
  for (std::size_t n = 1; n <= 16; ++n) gs.push_back(cyclic(n));
  for (std::size_t k = 2; k <= 4; ++k) gs.push_back(elementary_abelian(2, k));
  gs.push_back(elementary_abelian(3, 2));
  for (std::size_t n = 3; n <= 8; ++n) gs.push_back(dihedral(n));
  gs.push_back(product({cyclic(2), cyclic(4)}));
  gs.push_back(product({cyclic(4), cyclic(4)}));
  gs.push_back(product({cyclic(2), cyclic(8)}));
  gs.push_back(product({cyclic(2), dihedral(4)}));
  gs.push_back(heisenberg(2));
  return gs;
}

Outcome coset_stability() {
  const auto t0 = Clock::now();
  std::size_t checked = 0, bad = 0;
  for (const auto& g : stability_catalogue()) {
    for (const auto& h : subgroups_up_to_index(*g, g->order())) {
      std::set<std::vector<std::size_t>> seen;
      for (std::size_t x = 0; x < g->order(); ++x)
        for (bool left : {true, false}) {
          const Bitset a = coset_of(*g, h, x, left);
          if (!seen.insert(a.indices()).second) continue;
          for (auto dir : {Direction::Left, Direction::Right}) {
            ++checked;
            if (*count_halfgraphs_exact(cayley_graph(g, a, dir), 2).exact_count != 0) ++bad;
          }
        }
    }
  }
  const double secs = since(t0);
  std::ostringstream os;
  os << checked << " coset Cayley graphs over " << stability_catalogue().size() << " groups, " << bad
     << " with H_2 > 0, " << secs << " s (limit " << kCosetSeconds << " s)";
  return {bad == 0 && secs < kCosetSeconds, os.str()};
}

Outcome sidon_stability() {
  const auto t0 = Clock::now();
  std::size_t bad = 0, largest = 0;
  for (std::size_t n = 1; n <= 40; ++n) {
    auto g = cyclic(n);
    const Bitset a = sidon_set(*g);
    largest = std::max(largest, a.count());
    if (!is_sidon(*g, a) || *count_halfgraphs_exact(cayley_graph(g, a), 3).exact_count != 0) ++bad;
  }
  const double secs = since(t0);
  std::ostringstream os;
  os << "n = 1..40, " << bad << " with H_3 > 0, largest set " << largest << ", " << secs << " s (limit "
     << kSidonSeconds << " s)";
  return {bad == 0 && secs < kSidonSeconds, os.str()};
}

Outcome oracle_equivalence() {
  const std::vector<GroupPtr> pool = {cyclic(2),   cyclic(5),  cyclic(7),  cyclic(8),
                                      cyclic(12),  dihedral(3), dihedral(4), dihedral(5),
                                      dihedral(6), elementary_abelian(2, 3), product({cyclic(2), cyclic(6)}),
                                      product({cyclic(3), cyclic(3)})};
  constexpr PatternKind kinds[] = {PatternKind::Square,   PatternKind::NaiveCorner, PatternKind::BmzLeft,
                                   PatternKind::BmzRight, PatternKind::Rect23,      PatternKind::LShape};
  std::size_t comparisons = 0, mismatches = 0;
  for (int seed = 0; seed < kOracleSeeds; ++seed) {
    const auto& g = pool[static_cast<std::size_t>(seed) % pool.size()];
    const auto r = oracle::random_relation(g, 0.3 + 0.1 * (seed % 5), 1000 + static_cast<std::uint64_t>(seed));
    for (std::size_t k : {1, 2}) {
      ++comparisons;
      mismatches += *count_halfgraphs_exact(r, k).exact_count != oracle::halfgraphs(r, k);
    }
    for (auto kind : kinds) {
      if (kind == PatternKind::LShape && !g->is_abelian()) continue;
      ++comparisons;
      const auto c = census(r, kind);
      const auto o = oracle::pattern(r, kind);
      mismatches += c.total_count != o.total || c.count_by_sidelength != o.by_g;
    }
  }
  std::ostringstream os;
  os << kOracleSeeds << " relations, " << comparisons << " comparisons, " << mismatches << " mismatches";
  return {mismatches == 0, os.str()};
}

Outcome perturbation_bound() {
  std::vector<GroupPtr> pool;
  for (std::size_t n : {6, 8, 10, 12, 16, 20}) pool.push_back(cyclic(n));
  pool.push_back(dihedral(5));
  pool.push_back(dihedral(8));
  pool.push_back(elementary_abelian(2, 4));
  pool.push_back(product({cyclic(2), cyclic(10)}));
  const Rational etas[] = {Rational(5, 1000), Rational(1, 100), Rational(5, 100)};
  std::mt19937_64 rng(4242);
  int violations = 0;
  Rational worst_slack = 1;
  for (int t = 0; t < kPerturbationTrials; ++t) {
    const auto& g = pool[static_cast<std::size_t>(t) % pool.size()];
    const auto subs = subgroups_up_to_index(*g, g->order());
    const auto& h = subs[rng() % subs.size()];
    const Bitset a = coset_of(*g, h, rng() % g->order(), true);
    const Relation base = cayley_graph(g, a);
    const Rational eta = etas[t % 3];
    const Relation p = perturb_relation(base, eta, rng());
    const std::size_t flipped = relation_algebra(SetOp::SymDiff, p, base).count();
    const Rational eta_actual(flipped, g->order() * g->order());
    const Rational lhs = count_halfgraphs_exact(p, 2).theta_group;
    const Rational rhs = count_halfgraphs_exact(base, 2).theta_group + 4 * eta_actual;
    if (lhs > rhs) ++violations;
    worst_slack = std::min(worst_slack, Rational(rhs - lhs));
  }
  std::ostringstream os;
  os << kPerturbationTrials << " trials, " << violations << " violations, min slack " << to_double(worst_slack);
  return {violations == 0, os.str()};
}

Outcome linear_order_decay() {
  std::vector<Rational> theta;
  std::vector<std::uint64_t> counts;
  bool ok = true;
  for (std::size_t n : {3, 4, 5}) {
    const Relation r = linear_order_relation(cyclic(n * n), n);
    const auto rep = count_halfgraphs_exact(r, 2);
    counts.push_back(*rep.exact_count);
    theta.push_back(rep.theta_group);
    ok = ok && *rep.exact_count > 0;
    if (n == 3) ok = ok && *rep.exact_count == 5 && oracle::halfgraphs(r, 2) == 5;
  }
  ok = ok && theta[0] > theta[1] && theta[1] > theta[2];
  std::ostringstream os;
  os << "H_2 = " << counts[0] << ", " << counts[1] << ", " << counts[2] << "; theta_2 = " << to_string(theta[0]) << ", "
     << to_string(theta[1]) << ", " << to_string(theta[2]);
  return {ok, os.str()};
}

Outcome box_union_stability() {
  auto g = cyclic(6);
  std::size_t unions = 0, bad = 0;
  for (std::size_t nx = 1; nx <= 5; ++nx)
    for (std::size_t ny = 1; ny <= 5; ++ny) {
      std::vector<std::size_t> xs(nx), ys(ny);
      std::iota(xs.begin(), xs.end(), 0);
      std::iota(ys.begin(), ys.end(), 0);
      const auto X = carrier_from_indices(g, 1, xs), Y = carrier_from_indices(g, 1, ys);
      const std::size_t nr = std::size_t{1} << nx, nc = std::size_t{1} << ny;
      // Rectangle (rmask, cmask) as a 25-bit pattern, bit x*5+y.
      auto rect = [&](std::size_t rm, std::size_t cm) {
        std::uint32_t bits = 0;
        for (std::size_t x = 0; x < nx; ++x)
          for (std::size_t y = 0; y < ny; ++y)
            if ((rm >> x & 1) && (cm >> y & 1)) bits |= 1u << (x * 5 + y);
        return bits;
      };
      std::vector<std::uint32_t> rects;
      for (std::size_t rm = 0; rm < nr; ++rm)
        for (std::size_t cm = 0; cm < nc; ++cm) rects.push_back(rect(rm, cm));
      std::unordered_set<std::uint32_t> one, two;
      for (std::size_t i = 0; i < rects.size(); ++i) {
        one.insert(rects[i]);
        for (std::size_t j = i; j < rects.size(); ++j) two.insert(rects[i] | rects[j]);
      }
      auto build = [&](std::uint32_t bits) {
        BitMatrix m(6, 6);
        for (std::size_t x = 0; x < nx; ++x)
          for (std::size_t y = 0; y < ny; ++y)
            if (bits >> (x * 5 + y) & 1) m.set(x, y);
        return Relation(X, Y, std::move(m));
      };
      for (auto bits : one) {
        ++unions;
        bad += *count_halfgraphs_exact(build(bits), 2).exact_count != 0;
      }
      std::size_t i = 0;
      for (auto bits : two) {
        ++unions;
        const Relation u = build(bits);
        bad += *count_halfgraphs_exact(u, 3).exact_count != 0;
        if (i++ % 97 == 0) bad += oracle::halfgraphs(u, 3) != 0;
      }
    }
  std::mt19937_64 rng(777);
  int three_bad = 0;
  for (int t = 0; t < kBoxThreeInstances; ++t) {
    const Relation like = oracle::random_relation(g, 0.5, static_cast<std::uint64_t>(t));
    std::vector<Box> boxes;
    for (int b = 0; b < 3; ++b) {
      Box box{Bitset(6), Bitset(6)};
      for (std::size_t j = 0; j < 6; ++j) {
        box.rows.set(j, rng() % 3 != 0);
        box.cols.set(j, rng() % 3 != 0);
      }
      boxes.push_back(box);
    }
    const BoxCover cover = cover_from_boxes(like, boxes);
    const BoxStability st = box_union_stability_check(cover);
    three_bad += st.ell != 3 || st.halfgraph_count_at_ell_plus_1 != 0 || oracle::halfgraphs(cover.union_relation, 4) != 0;
  }
  std::ostringstream os;
  os << unions << " distinct unions of <= 2 rectangles (|X|,|Y| <= 5), " << bad << " with H_(l+1) > 0; "
     << kBoxThreeInstances << " three-box unions (6x6), " << three_bad << " failures";
  return {bad == 0 && three_bad == 0, os.str()};
}

Outcome cover_recovery() {
  std::mt19937_64 rng(31337);
  std::size_t instances = 0, failures = 0, most_boxes = 0;
  const Rational eps(1, 1'000'000'000);
  for (const auto& g : catalogue_up_to_16()) {
    for (const auto& h : subgroups_up_to_index(*g, g->order())) {
      const std::size_t idx = h.index_in_parent;
      std::vector<std::pair<std::size_t, std::size_t>> all;
      for (std::size_t i = 0; i < idx; ++i)
        for (std::size_t j = 0; j < idx; ++j) all.emplace_back(i, j);
      auto run = [&](const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
        ++instances;
        const Relation s = coset_box_set(g, h, pairs);
        const BoxCover c = greedy_box_cover(s, eps, kMaxCoverBoxes);
        most_boxes = std::max(most_boxes, c.boxes.size());
        if (c.symdiff_error != 0 || c.boxes.size() > kMaxCoverBoxes) ++failures;
      };
      if (all.size() <= 16) {
        // Every subset of at most four pairs.
        const std::size_t n = all.size();
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
          if (__builtin_popcount(mask) > 4) continue;
          std::vector<std::pair<std::size_t, std::size_t>> pairs;
          for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) pairs.push_back(all[i]);
          run(pairs);
        }
      } else {
        for (int t = 0; t < 60; ++t) {
          std::shuffle(all.begin(), all.end(), rng);
          run({all.begin(), all.begin() + static_cast<long>(1 + t % 4)});
        }
      }
    }
  }
  std::ostringstream os;
  os << instances << " coset-box unions (exhaustive for index <= 4, 60 seeded draws above), " << failures
     << " not recovered exactly, at most " << most_boxes << " boxes used (limit " << kMaxCoverBoxes << ")";
  return {failures == 0, os.str()};
}

Outcome theorem_a_probe() {
  const auto t0 = Clock::now();
  std::size_t probes = 0, failures = 0;
  for (const std::string name : {"Z3xZ3", "Z2^4"}) {
    const GroupPtr g = parse_group(name);
    const auto subs = subgroups_up_to_index(*g, 4);
    std::map<std::size_t, std::size_t> ordinal;
    for (const auto& h : subs) {
      const std::size_t o = ordinal[h.index_in_parent]++;
      ExperimentConfig cfg;
      cfg.groups = {name};
      cfg.generator.kind = GeneratorSpec::Kind::CosetBoxes;
      cfg.generator.subgroup.index = h.index_in_parent;
      cfg.generator.subgroup.ordinal = o;
      cfg.k = 2;
      cfg.epsilon = Rational(1, 10);
      cfg.max_index = 4;
      cfg.censuses = {PatternKind::Square};
      const auto rep = run_experiment(cfg);
      const auto& row = rep.rows.at(0);
      ++probes;
      const bool ok = !row.error && row.density >= Rational(1, 16) && row.theta && row.theta->theta_group == 0 &&
                      row.best && row.best->found && row.best->index <= 4 && row.best->missing_fraction == 0;
      failures += !ok;
    }
  }
  const double secs = since(t0);
  std::ostringstream os;
  os << probes << " diagonal coset-box relations over subgroups of index <= 4, " << failures << " failures, " << secs
     << " s (limit " << kProbeSeconds << " s)";
  return {failures == 0 && secs < kProbeSeconds, os.str()};
}

Outcome estimator_calibration() {
  int covered = 0;
  for (int run = 0; run < kEstimatorRuns; ++run) {
    const std::size_t q = 4 + static_cast<std::size_t>(run) % 7;
    const GroupPtr g = run % 3 == 0 && q % 2 == 0 ? dihedral(q / 2) : cyclic(q);
    const Relation r = oracle::random_relation(g, 0.35 + 0.05 * (run % 6), 9000 + static_cast<std::uint64_t>(run));
    const Rational exact = count_halfgraphs_exact(r, 2).theta_group;
    const auto est = sample_halfgraphs(r, 2, kEstimatorSamples, static_cast<std::uint64_t>(run), kConfidence);
    covered += est.confidence_interval->first <= exact && exact <= est.confidence_interval->second;
  }
  const double rate = static_cast<double>(covered) / kEstimatorRuns;
  std::ostringstream os;
  os << covered << "/" << kEstimatorRuns << " intervals contain the exact theta_2 (rate " << rate << ", need >= "
     << kMinCoverage << ")";
  return {rate >= kMinCoverage, os.str()};
}

Outcome ap_census_check() {
  const GroupPtr z10 = cyclic(10);
  const auto base = ap_census(*z10, Bitset::from_indices(10, std::vector<std::size_t>{0, 1, 2, 3}), 3, z10->element(1));
  bool ok = base.set.indices() == std::vector<std::size_t>{0, 1} && base.count == 2;
  std::size_t cases = 0, bad = 0;
  for (const auto& g : catalogue_up_to_16())
    for (const auto& h : subgroups_up_to_index(*g, g->order()))
      for (std::size_t x = 0; x < g->order(); ++x) {
        if (h.contains(x)) continue;
        for (std::size_t m : {2, 3, 5}) {
          ++cases;
          bad += ap_census(*g, h.members, m, g->element(x)).count != 0;
        }
      }
  std::ostringstream os;
  os << "Z_10 example " << (ok ? "matches" : "differs") << "; " << cases << " subgroup cases with h outside H, " << bad
     << " nonempty";
  return {ok && bad == 0, os.str()};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "coset 2-stability", coset_stability},
      {2, "Sidon 3-stability", sidon_stability},
      {3, "oracle equivalence", oracle_equivalence},
      {4, "perturbation bound", perturbation_bound},
      {5, "linear-order decay", linear_order_decay},
      {6, "box-union stability", box_union_stability},
      {7, "box cover recovery", cover_recovery},
      {8, "subgroup probe", theorem_a_probe},
      {9, "estimator calibration", estimator_calibration},
      {10, "AP census", ap_census_check},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s [%2d] %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
