#include "stabkit/error.hpp"
#include "stabkit/group.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace stabkit {

namespace {

struct WordsHash {
  std::size_t operator()(const Bitset& b) const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (Word w : b.words()) h = (h ^ w) * 0x100000001b3ULL + (h >> 29);
    return h;
  }
};

std::size_t smallest_prime_factor(std::size_t n) {
  for (std::size_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return p;
  return n;
}

// Closure of `seed` (already a subgroup, or {identity}) under right multiplication by `gens`.
// Once the closure outgrows the largest proper divisor of |G| it must be G itself.
Bitset close_under(const FiniteGroup& g, const Bitset& seed, const std::vector<std::size_t>& gens) {
  const std::size_t q = g.order();
  const std::size_t largest_proper = q > 1 ? q / smallest_prime_factor(q) : 0;
  Bitset members = seed;
  std::vector<std::size_t> frontier = seed.indices();
  std::size_t size = frontier.size();
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t x : frontier)
      for (std::size_t s : gens) {
        const std::size_t y = g.mul(x, s);
        if (!members.test(y)) {
          members.set(y);
          next.push_back(y);
          if (++size > largest_proper) return Bitset(q, true);
        }
      }
    frontier = std::move(next);
  }
  return members;
}

Subgroup finish(const FiniteGroup& g, Bitset members, std::vector<std::size_t> gens) {
  Subgroup h;
  h.parent_id = g.id();
  const std::size_t n = members.count();
  if (n == 0 || g.order() % n != 0)
    throw Error(ErrorKind::InvalidArgument, "closure of size " + std::to_string(n) + " is not a subgroup order");
  h.index_in_parent = g.order() / n;
  h.members = std::move(members);
  h.generators = std::move(gens);
  return h;
}

}  // namespace

Subgroup subgroup_generated_by(const FiniteGroup& group, const std::vector<std::size_t>& generators) {
  for (std::size_t x : generators) (void)group.element(x);
  Bitset seed(group.order());
  seed.set(0);
  return finish(group, close_under(group, seed, generators), generators);
}

Subgroup whole_group(const FiniteGroup& group) {
  std::vector<std::size_t> gens;
  for (std::size_t i = 1; i < group.order(); ++i) gens.push_back(i);
  return finish(group, Bitset(group.order(), true), std::move(gens));
}

Subgroup subgroup_from_members(const FiniteGroup& group, const Bitset& members) {
  if (members.size() != group.order()) throw Error(ErrorKind::InvalidArgument, "member bitset has wrong length");
  if (!members.test(0)) throw Error(ErrorKind::InvalidArgument, "subgroup must contain the identity");
  const auto elems = members.indices();
  for (std::size_t a : elems) {
    if (!members.test(group.inv(a))) throw Error(ErrorKind::InvalidArgument, "not closed under inverse");
    for (std::size_t b : elems)
      if (!members.test(group.mul(a, b))) throw Error(ErrorKind::InvalidArgument, "not closed under multiplication");
  }
  return finish(group, members, elems);
}

std::vector<Subgroup> subgroups_up_to_index(const FiniteGroup& group, std::size_t max_index,
                                            const SubgroupSearchOptions& options) {
  if (max_index < 1) throw Error(ErrorKind::InvalidArgument, "max_index must be >= 1");
  const std::size_t q = group.order();

  std::vector<Subgroup> all;
  std::unordered_set<Bitset, WordsHash> seen;
  std::deque<std::size_t> queue;

  Bitset trivial(q);
  trivial.set(0);
  all.push_back(finish(group, trivial, {}));
  seen.insert(trivial);
  queue.push_back(0);

  std::uint64_t closures = 0;
  while (!queue.empty()) {
    const std::size_t at = queue.front();
    queue.pop_front();
    if (all[at].index_in_parent == 1) continue;
    const Bitset base = all[at].members;
    const std::vector<std::size_t> base_gens = all[at].generators;
    // <H, x> = <H, x·h> for h in H, so one representative per left coset suffices.
    Bitset handled = base;
    for (std::size_t x = 0; x < q; ++x) {
      if (handled.test(x)) continue;
      for (std::size_t h : base.indices()) handled.set(group.mul(x, h));
      if (++closures > options.closure_budget)
        throw BudgetExceeded("subgroup enumeration", closures, options.closure_budget);
      std::vector<std::size_t> gens = base_gens;
      gens.push_back(x);
      Bitset closed = close_under(group, base, gens);
      if (seen.insert(closed).second) {
        all.push_back(finish(group, std::move(closed), std::move(gens)));
        queue.push_back(all.size() - 1);
      }
    }
  }

  std::vector<Subgroup> out;
  for (auto& h : all)
    if (h.index_in_parent <= max_index) out.push_back(std::move(h));
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.index_in_parent != b.index_in_parent) return a.index_in_parent < b.index_in_parent;
    return member_lex_less(a.members, b.members);
  });
  return out;
}

std::vector<Bitset> left_cosets(const FiniteGroup& group, const Subgroup& subgroup) {
  if (subgroup.parent_id != group.id())
    throw Error(ErrorKind::CrossGroupElement, "subgroup belongs to another group");
  const std::size_t q = group.order();
  const auto members = subgroup.members.indices();
  std::vector<Bitset> cosets;
  Bitset assigned(q);
  for (std::size_t x = 0; x < q; ++x) {
    if (assigned.test(x)) continue;
    Bitset c(q);
    for (std::size_t h : members) c.set(group.mul(x, h));
    assigned |= c;
    cosets.push_back(std::move(c));
  }
  return cosets;
}

}  // namespace stabkit
