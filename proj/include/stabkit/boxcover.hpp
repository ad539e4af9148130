#pragma once

#include "stabkit/halfgraph.hpp"
#include "stabkit/rational.hpp"
#include "stabkit/relation.hpp"

#include <cstdint>
#include <vector>

namespace stabkit {

struct Box {
  Bitset rows;  // X_i ⊆ X
  Bitset cols;  // Y_i ⊆ Y
};

struct BoxCover {
  std::vector<Box> boxes;
  Relation union_relation;   // OR of the box rectangles
  Rational symdiff_error;    // |S △ U| / |G|^(n+m)
  Rational overcount_error;  // |U ∖ S| / |G|^(n+m)
  std::vector<Rational> error_trace;  // symdiff_error after each added box
};

/// Greedy cover by maximal rectangles grown from the least uncovered edge. A rectangle R×C is
/// admissible when |S ∩ R×C| >= purity·|R|·|C|. Stops once symdiff_error < epsilon, at max_boxes,
/// or when no seed yields a box that lowers |S △ U|.
BoxCover greedy_box_cover(const Relation& relation, const Rational& epsilon, std::size_t max_boxes,
                          const Rational& purity = Rational(1));

/// OR of the rectangles over the relation's carriers.
Relation box_union(const Relation& like, const std::vector<Box>& boxes);

/// Cover made of the given boxes, with errors measured against `relation`.
BoxCover cover_from_boxes(const Relation& relation, std::vector<Box> boxes);

struct CoverErrors {
  Rational symdiff;
  Rational missed;
  Rational overcount;
};

/// |S △ U|, |S ∖ U|, |U ∖ S| over |G|^(n+m). Throws CarrierMismatch.
CoverErrors cover_error(const Relation& relation, const BoxCover& cover);

struct BoxStability {
  std::size_t ell = 0;
  std::uint64_t halfgraph_count_at_ell_plus_1 = 0;
};

/// ℓ boxes and the exact |H_(ℓ+1)(U)|, which is always 0: two diagonal edges (a_i,b_i), (a_j,b_j), i < j,
/// in one box would put (a_j, b_i) in U.
BoxStability box_union_stability_check(const BoxCover& cover, const HalfGraphOptions& options = {});

}  // namespace stabkit
