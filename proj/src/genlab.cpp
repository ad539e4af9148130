#include "stabkit/genlab.hpp"

#include "stabkit/error.hpp"

#include <random>
#include <stdexcept>
#include <unordered_set>

namespace stabkit {

Relation coset_box_set(GroupPtr group, const Subgroup& subgroup,
                       const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  const auto cosets = left_cosets(*group, subgroup);
  const std::size_t q = group->order();
  BitMatrix m(q, q);
  for (const auto& [i, j] : pairs) {
    if (i >= cosets.size() || j >= cosets.size())
      throw Error(ErrorKind::IndexOutOfRange, "coset pair (" + std::to_string(i) + ", " + std::to_string(j) +
                                                  ") with subgroup index " + std::to_string(cosets.size()));
    bits::for_each_set(cosets[i].words(), [&](std::size_t x) { bits::or_into(m.row(x), cosets[j].words()); });
  }
  auto carrier = full_carrier(group, 1);
  return Relation(carrier, carrier, std::move(m));
}

std::vector<std::pair<std::size_t, std::size_t>> diagonal_pairs(const FiniteGroup& group, const Subgroup& subgroup) {
  (void)group;
  std::vector<std::pair<std::size_t, std::size_t>> p;
  for (std::size_t i = 0; i < subgroup.index_in_parent; ++i) p.emplace_back(i, i);
  return p;
}

bool is_sidon(const FiniteGroup& group, const Bitset& set) {
  const auto elems = set.indices();
  Bitset seen(group.order());
  for (std::size_t a : elems)
    for (std::size_t b : elems) {
      if (a == b) continue;
      const std::size_t d = group.mul(a, group.inv(b));
      if (seen.test(d)) return false;
      seen.set(d);
    }
  return true;
}

Bitset sidon_set(const FiniteGroup& group, std::size_t budget) {
  if (!group.is_cyclic_recipe()) throw Error(ErrorKind::InvalidArgument, "sidon_set needs a cyclic group Z_n");
  const std::size_t n = group.order();
  Bitset chosen(n);
  Bitset diffs(n);  // differences a - b, a ≠ b, among chosen elements
  std::vector<std::size_t> members;
  std::vector<std::size_t> fresh;
  for (std::size_t x = 0; x < n; ++x) {
    if (budget && members.size() >= budget) break;
    // New differences ±(x - a) must avoid existing ones and each other.
    fresh.clear();
    bool ok = true;
    Bitset local = diffs;
    for (std::size_t a : members) {
      for (std::size_t d : {(x + n - a) % n, (a + n - x) % n}) {
        if (local.test(d)) {
          ok = false;
          break;
        }
        local.set(d);
      }
      if (!ok) break;
    }
    if (!ok) continue;
    diffs = std::move(local);
    chosen.set(x);
    members.push_back(x);
  }
  if (!is_sidon(group, chosen)) throw std::logic_error("greedy Sidon construction produced a non-Sidon set");
  return chosen;
}

Relation random_dense(const CarrierSet& domain, const CarrierSet& codomain, const Rational& delta, std::uint64_t seed) {
  if (delta < 0 || delta > 1) throw Error(ErrorKind::InvalidArgument, "delta must lie in [0, 1]");
  const BigInt threshold_big = ceil(delta * Rational(BigInt(1) << 53));
  const auto threshold = threshold_big.convert_to<std::uint64_t>();
  std::mt19937_64 rng(seed);
  Relation empty(domain, codomain);
  BitMatrix m(empty.rows(), empty.cols());
  const auto ys = codomain.members.indices();
  bits::for_each_set(domain.members.words(), [&](std::size_t x) {
    for (std::size_t y : ys)
      if ((rng() >> 11) < threshold) m.set(x, y);
  });
  return Relation(domain, codomain, std::move(m));
}

Relation perturbation_mask(const Relation& relation, const Rational& eta, std::uint64_t seed) {
  if (eta < 0 || eta > 1) throw Error(ErrorKind::InvalidArgument, "eta must lie in [0, 1]");
  const auto xs = relation.domain().members.indices();
  const auto ys = relation.codomain().members.indices();
  const std::uint64_t total = static_cast<std::uint64_t>(xs.size()) * ys.size();
  const auto flips = ceil(eta * Rational(BigInt(total))).convert_to<std::uint64_t>();

  // Floyd's sampling of `pick` distinct pair indices; for dense masks sample the complement.
  const bool invert = flips > total / 2;
  const std::uint64_t pick = invert ? total - flips : flips;
  std::mt19937_64 rng(seed);
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(pick * 2);
  for (std::uint64_t j = total - pick; j < total; ++j) {
    std::uniform_int_distribution<std::uint64_t> dist(0, j);
    const std::uint64_t t = dist(rng);
    if (!chosen.insert(t).second) chosen.insert(j);
  }

  BitMatrix m(relation.rows(), relation.cols());
  auto mark = [&](std::uint64_t p) { m.set(xs[p / ys.size()], ys[p % ys.size()]); };
  if (invert) {
    for (std::uint64_t p = 0; p < total; ++p)
      if (!chosen.contains(p)) mark(p);
  } else {
    for (std::uint64_t p : chosen) mark(p);
  }
  return Relation(relation.domain(), relation.codomain(), std::move(m));
}

Relation perturb_relation(const Relation& relation, const Rational& eta, std::uint64_t seed) {
  return relation_algebra(SetOp::SymDiff, relation, perturbation_mask(relation, eta, seed));
}

Relation linear_order_relation(GroupPtr group, std::size_t length) {
  if (length > group->order()) throw Error(ErrorKind::InvalidArgument, "linear order longer than the group");
  std::vector<std::size_t> reps(length);
  for (std::size_t i = 0; i < length; ++i) reps[i] = i;
  auto carrier = carrier_from_indices(group, 1, reps);
  return build_relation(carrier, carrier, [](std::size_t x, std::size_t y) { return x <= y; });
}

}  // namespace stabkit
