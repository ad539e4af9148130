#pragma once

#include "stabkit/rational.hpp"
#include "stabkit/relation.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace stabkit {

// Half-graphs are ordered sequences (a_1, b_1, ..., a_k, b_k) in X^k × Y^k with (a_i, b_j) ∈ S iff i <= j.
// Counts are over ordered sequences; unordered conventions differ by factorial factors.

struct HalfGraphReport {
  std::size_t k = 1;
  std::optional<std::uint64_t> exact_count;
  std::optional<Rational> estimate;  // group-power normalized
  std::optional<std::pair<Rational, Rational>> confidence_interval;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> hits;
  Rational theta_group;    // count / |G|^(k(n+m))
  Rational theta_carrier;  // count / (|X|^k |Y|^k), 0 when a carrier is empty
};

struct HalfGraphOptions {
  // Cap on |X|^k for exact counting.
  std::uint64_t tuple_budget = 1'000'000'000;
  unsigned threads = 1;
};

struct HalfGraphWitness {
  std::vector<std::size_t> a;
  std::vector<std::size_t> b;
  friend bool operator==(const HalfGraphWitness&, const HalfGraphWitness&) = default;
};

/// Checks the half-graph predicate; a and b must have equal length. Does not require carrier membership
/// beyond what the incidence encodes.
bool is_halfgraph(const Relation& relation, const HalfGraphWitness& w);

/// Exact |H_k(S)|. Throws BudgetExceeded when |X|^k > options.tuple_budget.
HalfGraphReport count_halfgraphs_exact(const Relation& relation, std::size_t k, const HalfGraphOptions& options = {});

/// The first `limit` witnesses in lexicographic order of (a_1..a_k, b_1..b_k).
std::vector<HalfGraphWitness> enumerate_halfgraphs(const Relation& relation, std::size_t k, std::size_t limit);

/// Uniform Monte Carlo estimate with a two-sided Hoeffding interval; deterministic given (seed, threads).
HalfGraphReport sample_halfgraphs(const Relation& relation, std::size_t k, std::uint64_t samples, std::uint64_t seed,
                                  double confidence = 0.95, unsigned threads = 1);

struct ProfileOptions {
  HalfGraphOptions exact;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 0;
  double confidence = 0.95;
};

struct ThetaEntry {
  std::size_t k = 1;
  Rational theta_group;
  Rational theta_carrier;
  bool exact = true;
  HalfGraphReport report;
};

/// θ_k for k = 1..k_max in ascending k; exact where |X|^k fits the budget, sampled otherwise.
std::vector<ThetaEntry> theta_profile(const Relation& relation, std::size_t k_max, const ProfileOptions& options = {});

}  // namespace stabkit
