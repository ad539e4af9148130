#pragma once

#include "stabkit/group.hpp"
#include "stabkit/halfgraph.hpp"
#include "stabkit/json_io.hpp"
#include "stabkit/patterns.hpp"
#include "stabkit/rational.hpp"
#include "stabkit/relation.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stabkit {

inline constexpr const char* kToolkitVersion = "0.3.0";

/// Picks a subgroup either by generators or as the `ordinal`-th subgroup of exactly `index`
/// in subgroups_up_to_index order.
struct SubgroupSelector {
  std::optional<std::vector<std::size_t>> generators;
  std::size_t index = 1;
  std::size_t ordinal = 0;
};

Subgroup select_subgroup(const FiniteGroup& group, const SubgroupSelector& selector);

struct GeneratorSpec {
  enum class Kind { CosetBoxes, CosetCayley, SidonCayley, RandomDense, Perturbation, LinearOrder, Cayley };
  Kind kind = Kind::RandomDense;
  SubgroupSelector subgroup;                                 // coset_boxes, coset_cayley
  bool diagonal = true;                                     // coset_boxes: all (i, i) pairs
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // coset_boxes when !diagonal
  std::size_t budget = 0;                                   // sidon_cayley size cap
  Rational delta = 0;                                       // random_dense
  Rational eta = 0;                                         // perturbation
  std::uint64_t seed = 0;                                   // random_dense, perturbation
  std::optional<std::size_t> length;                        // linear_order; nullopt = floor(sqrt |G|)
  std::vector<std::size_t> set;                             // cayley
  std::shared_ptr<GeneratorSpec> base;                      // perturbation
};

GeneratorSpec generator_from_json(const Json& j);
Json to_json(const GeneratorSpec& spec);
Relation generate(const GeneratorSpec& spec, const GroupPtr& group);

struct ExperimentConfig {
  std::vector<std::string> groups;
  GeneratorSpec generator;
  std::size_t k = 2;
  Rational epsilon = Rational(1, 10);
  std::size_t max_index = 4;
  std::vector<PatternKind> censuses;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 0;
  double confidence = 0.95;
  std::uint64_t tuple_budget = 1'000'000'000;
  std::uint64_t closure_budget = 1'000'000;
  unsigned threads = 1;
  std::string output;
};

// Throws Error(InvalidArgument / Parse) on invalid configs.
ExperimentConfig config_from_json(const Json& j);
Json to_json(const ExperimentConfig& c);

struct CensusSummary {
  PatternKind kind = PatternKind::Square;
  std::uint64_t total = 0;
  std::uint64_t nontrivial = 0;
  Rational density;  // total / |G|^(n+m+1)
};

struct BestSubgroup {
  bool found = false;
  std::size_t index = 0;
  Rational missing_fraction;
  std::optional<Subgroup> subgroup;
  std::size_t examined = 0;  // subgroups tested before stopping
};

struct ExperimentRow {
  std::string group;
  std::size_t order = 0;
  std::uint64_t exponent = 0;
  Rational density;
  std::optional<HalfGraphReport> theta;
  bool theta_exact = true;
  std::vector<CensusSummary> censuses;
  std::optional<BestSubgroup> best;
  std::optional<std::string> error;
};

struct StageTiming {
  std::string group;
  double build_seconds = 0, theta_seconds = 0, census_seconds = 0, subgroup_seconds = 0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<ExperimentRow> rows;
  std::vector<StageTiming> timing;
  bool has_errors() const;
};

/// Per group: build S, δ, θ_k, requested censuses, then the first subgroup (ascending index) whose
/// missing side-length fraction is below ε. Row failures are recorded and do not stop the sweep.
ExperimentReport run_experiment(const ExperimentConfig& config);

struct TrendRow {
  std::string group;
  std::size_t order = 0;
  std::optional<HalfGraphReport> theta;
  bool theta_exact = true;
  std::vector<CensusSummary> censuses;
  std::optional<std::string> error;
};

struct TrendTable {
  ExperimentConfig config;
  std::vector<TrendRow> rows;
  bool has_errors() const;
};

/// Rows of (order, θ_k, census densities) for a family; needs at least two groups.
TrendTable run_family_trend(const ExperimentConfig& config);

// Reports keep deterministic content separate from the "timing" member.
Json to_json(const ExperimentReport& r, bool include_timing = true);
Json to_json(const TrendTable& t);
// Decimal approximations; every numeric column except counts is suffixed "_approx".
std::string to_csv(const ExperimentReport& r);
std::string to_csv(const TrendTable& t);

}  // namespace stabkit
