#pragma once

#include "stabkit/group.hpp"
#include "stabkit/rational.hpp"
#include "stabkit/relation.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stabkit {

enum class PatternKind { Square, NaiveCorner, BmzLeft, BmzRight, Rect23, LShape };

std::string_view to_string(PatternKind kind);
// Accepts the CLI spellings: square, naive, bmz-left, bmz-right, rect23, lshape.
PatternKind parse_pattern_kind(std::string_view name);

/// How a side length g ∈ G acts on a point of G^n: on one coordinate (default: the last) or on all
/// coordinates at once. Irrelevant for n = 1.
struct SideAction {
  enum class Mode { Coordinate, Diagonal };
  Mode mode = Mode::Coordinate;
  std::optional<std::size_t> coordinate;  // nullopt = last
};

// Hard cap on materialized witnesses per census.
inline constexpr std::size_t kMaxWitnesses = 10'000;

struct PatternOptions {
  SideAction action;
  std::size_t witnesses = 0;  // requested witness count, clamped to kMaxWitnesses
  unsigned threads = 1;
};

struct PatternWitness {
  std::size_t a = 0;  // domain point (mixed-radix index)
  std::size_t b = 0;  // codomain point
  std::size_t g = 0;  // side length
  friend bool operator==(const PatternWitness&, const PatternWitness&) = default;
};

/// Ordered parameter triples (a, b, g), including the degenerate g = identity slice.
struct PatternCensus {
  PatternKind kind = PatternKind::Square;
  std::uint64_t total_count = 0;
  std::vector<std::uint64_t> count_by_sidelength;  // indexed by g
  std::uint64_t nontrivial_count = 0;              // total minus the identity slice
  std::vector<PatternWitness> witnesses;           // ascending (g, a, b)
};

/// (a,b), (a·g,b), (a,b·g), (a·g,b·g) ∈ S.
PatternCensus square_census(const Relation& relation, const PatternOptions& options = {});

enum class CornerForm { Naive, BmzLeft, BmzRight };

/// Naive (x,y),(gx,y),(x,gy); BmzLeft (x,y),(gx,y),(gx,gy); BmzRight (x,y),(xg,y),(x,gy). Needs n = m = 1.
PatternCensus corner_census(const Relation& relation, CornerForm form, const PatternOptions& options = {});

/// (a,b),(a·g,b),(a,b·g),(a·g,b·g),(a,g·b·g),(a·g,g·b·g) ∈ S. Needs m = 1.
PatternCensus rect23_census(const Relation& relation, const PatternOptions& options = {});

/// (x,y),(x+d,y),(x,y+d),(x,y+2d) ∈ S. Needs an abelian group and n = m = 1.
PatternCensus lshape_census(const Relation& relation, const PatternOptions& options = {});

/// Dispatches on kind.
PatternCensus census(const Relation& relation, PatternKind kind, const PatternOptions& options = {});

struct ApResult {
  Bitset set;
  std::size_t count = 0;
};

/// {a ∈ A : h^i·a ∈ A for 0 <= i < m}.
ApResult ap_census(const FiniteGroup& group, const Bitset& set, std::size_t m, const GroupElement& h);

struct CoverageReport {
  Subgroup subgroup;
  Bitset covered;  // g ∈ H realized as the side length of some square in S
  Rational missing_fraction;
};

CoverageReport sidelength_coverage(const Relation& relation, const Subgroup& subgroup, const PatternOptions& options = {});
CoverageReport sidelength_coverage(const Relation& relation, const Subgroup& subgroup, const PatternCensus& squares);

/// |A △ g·A| / |G| (Left) or |A △ A·g| / |G| (Right).
Rational comparability_defect(const FiniteGroup& group, const Bitset& set, const GroupElement& g, Side side = Side::Left);

}  // namespace stabkit
