#pragma once

#include "stabkit/bitset.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace stabkit {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

struct CyclicRecipe {
  std::size_t n = 1;
};

struct ProductRecipe {
  std::vector<GroupPtr> factors;
};

struct CayleyTableRecipe {
  std::size_t order = 1;
  std::vector<std::size_t> table;  // row-major, table[a * order + b] = a·b
  std::string label;               // optional display name, e.g. "D4"
};

using Recipe = std::variant<CyclicRecipe, ProductRecipe, CayleyTableRecipe>;

/// A group element: an index into its group's universe, tagged with the group's id.
struct GroupElement {
  std::uint64_t group_id = 0;
  std::size_t index = 0;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

struct WordLetter {
  GroupElement element;
  int exponent = 1;  // +1 or -1
};

/// Finite group on the dense universe 0..order-1, identity 0. Immutable after construction.
class FiniteGroup {
 public:
  // Groups larger than this are supported only via CyclicRecipe.
  static constexpr std::size_t kMaxTableOrder = 4096;

  std::uint64_t id() const { return id_; }
  std::size_t order() const { return order_; }
  const std::string& name() const { return name_; }
  // FNV-1a over the canonical recipe; stable across runs.
  std::uint64_t recipe_hash() const { return hash_; }
  std::string recipe_hash_hex() const;
  const Recipe& recipe() const { return recipe_; }

  bool is_cyclic_recipe() const { return std::holds_alternative<CyclicRecipe>(recipe_); }
  bool is_abelian() const { return abelian_; }

  std::size_t mul(std::size_t a, std::size_t b) const {
    return table_.empty() ? (a + b) % order_ : table_[a * order_ + b];
  }
  std::size_t inv(std::size_t a) const { return table_.empty() ? (order_ - a) % order_ : inverse_[a]; }
  std::size_t pow(std::size_t a, long long e) const;

  GroupElement element(std::size_t index) const;
  GroupElement identity() const { return {id_, 0}; }
  // Throws CrossGroupElement / IndexOutOfRange.
  std::size_t index_of(const GroupElement& e) const;

  // Coordinates of a product element, first factor most significant. Empty for non-products.
  std::vector<std::size_t> factor_coordinates(std::size_t index) const;

 private:
  friend GroupPtr make_group(Recipe recipe);
  FiniteGroup() = default;

  std::uint64_t id_ = 0;
  std::size_t order_ = 0;
  std::string name_;
  std::uint64_t hash_ = 0;
  Recipe recipe_;
  bool abelian_ = true;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inverse_;
};

/// Validates and builds a group. Cayley tables are checked exhaustively; failures throw
/// AxiomViolation naming the axiom ("closure", "identity", "inverse", "associativity") and witness.
GroupPtr make_group(Recipe recipe);

GroupPtr cyclic(std::size_t n);
GroupPtr product(std::vector<GroupPtr> factors);
// Z_p^k as a product of k copies of Z_p.
GroupPtr elementary_abelian(std::size_t p, std::size_t k);
// Symmetries of the regular n-gon, order 2n. Rotations r^i are 0..n-1, reflections s·r^i are n..2n-1.
GroupPtr dihedral(std::size_t n);
// Upper unitriangular 3x3 matrices over Z_p, order p^3; (a,b,c) encoded as a*p^2 + b*p + c.
GroupPtr heisenberg(std::size_t p);
GroupPtr cayley_table(std::size_t order, std::vector<std::size_t> table, std::string label = {});

/// Plain text: first line the order q, then q lines of q space-separated indices.
GroupPtr load_cayley_table(std::istream& in);
GroupPtr load_cayley_table_file(const std::string& path);
void save_cayley_table(const FiniteGroup& g, std::ostream& out);

/// Parses "Z5", "D4", "Heis3", "Z2^4", "table:<path>" and 'x'-separated products ("Z2xZ4").
GroupPtr parse_group(const std::string& spec);

/// Left-to-right product of the letters.
GroupElement evaluate(const FiniteGroup& group, const std::vector<WordLetter>& word);

struct ExponentReport {
  std::uint64_t exponent = 1;
  std::vector<std::size_t> orders;  // orders[i] = order of element i
};
ExponentReport exponent_and_orders(const FiniteGroup& group);

struct Subgroup {
  std::uint64_t parent_id = 0;
  Bitset members;
  std::size_t index_in_parent = 1;
  std::vector<std::size_t> generators;

  std::size_t order() const { return members.count(); }
  bool contains(std::size_t g) const { return members.test(g); }
};

Subgroup subgroup_generated_by(const FiniteGroup& group, const std::vector<std::size_t>& generators);
Subgroup whole_group(const FiniteGroup& group);
// Throws InvalidArgument if `members` is not a subgroup.
Subgroup subgroup_from_members(const FiniteGroup& group, const Bitset& members);

struct SubgroupSearchOptions {
  std::uint64_t closure_budget = 1'000'000;
};

/// All subgroups of index <= max_index, ordered by index then by ascending member list.
std::vector<Subgroup> subgroups_up_to_index(const FiniteGroup& group, std::size_t max_index,
                                            const SubgroupSearchOptions& options = {});

/// Left cosets g·H partitioning the universe; the coset of the identity first, the rest by least element.
std::vector<Bitset> left_cosets(const FiniteGroup& group, const Subgroup& subgroup);

}  // namespace stabkit
