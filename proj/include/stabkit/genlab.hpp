#pragma once

#include "stabkit/group.hpp"
#include "stabkit/rational.hpp"
#include "stabkit/relation.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace stabkit {

/// Union of coset_i × coset_j over `pairs`, on G×G; cosets numbered as in left_cosets().
Relation coset_box_set(GroupPtr group, const Subgroup& subgroup,
                       const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

/// Pairs (i, i) for every coset of `subgroup`.
std::vector<std::pair<std::size_t, std::size_t>> diagonal_pairs(const FiniteGroup& group, const Subgroup& subgroup);

/// True when all ordered differences a - b (a ≠ b) of members are distinct, i.e. a + b = c + d forces {a,b} = {c,d}.
bool is_sidon(const FiniteGroup& group, const Bitset& set);

/// Greedy Sidon set in a cyclic group: scan 0..n-1 and keep x when the set stays Sidon.
/// `budget` caps the size of the set (0 = no cap).
Bitset sidon_set(const FiniteGroup& group, std::size_t budget = 0);

/// Each carrier pair independently with probability delta (compared as an exact rational against a
/// 53-bit uniform draw), deterministic given seed.
Relation random_dense(const CarrierSet& domain, const CarrierSet& codomain, const Rational& delta, std::uint64_t seed);

/// XOR mask with exactly ceil(eta·|X|·|Y|) carrier pairs, sampled without replacement.
Relation perturbation_mask(const Relation& relation, const Rational& eta, std::uint64_t seed);

/// relation △ perturbation_mask(relation, eta, seed).
Relation perturb_relation(const Relation& relation, const Rational& eta, std::uint64_t seed);

/// {(x, y) : x, y ∈ {0..length-1}, x <= y} inside G×G, with G cyclic so that indices are residues.
Relation linear_order_relation(GroupPtr group, std::size_t length);

}  // namespace stabkit
