#pragma once

#include "stabkit/bitset.hpp"
#include "stabkit/group.hpp"
#include "stabkit/rational.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

namespace stabkit {

// Relations hold at most this many incidence bits (|G|^(n+m)).
inline constexpr std::size_t kMaxRelationBits = std::size_t{1} << 26;

/// |G|^n, throwing BudgetExceeded past `limit`.
std::size_t power_size(std::size_t q, std::size_t n, std::size_t limit = kMaxRelationBits);

// Mixed-radix encoding of G^n: coordinate 0 is the most significant digit.
std::size_t encode_tuple(std::size_t q, std::span<const std::size_t> coords);
std::vector<std::size_t> decode_tuple(std::size_t q, std::size_t n, std::size_t index);

enum class Side { Left, Right };

/// Permutation of G^n sending x to x·g (Right) or g·x (Left) coordinatewise; `elements` has n entries.
std::vector<std::size_t> power_translation(const FiniteGroup& g, std::size_t n, std::span<const std::size_t> elements,
                                           Side side);

/// X ⊆ G^n as a bitset over mixed-radix indices.
struct CarrierSet {
  GroupPtr group;
  std::size_t arity = 1;
  Bitset members;

  std::size_t universe() const { return members.size(); }
  std::size_t size() const { return members.count(); }
  bool is_full() const { return members.count() == members.size(); }
  friend bool operator==(const CarrierSet& a, const CarrierSet& b) {
    return a.group->id() == b.group->id() && a.arity == b.arity && a.members == b.members;
  }
};

CarrierSet full_carrier(GroupPtr group, std::size_t arity = 1);
CarrierSet make_carrier(GroupPtr group, std::size_t arity, Bitset members);
CarrierSet carrier_from_indices(GroupPtr group, std::size_t arity, const std::vector<std::size_t>& members);

/// S ⊆ X×Y as a |G|^n × |G|^m bit matrix, rows indexed by domain points. Cleared outside X×Y.
class Relation {
 public:
  Relation(CarrierSet domain, CarrierSet codomain);
  Relation(CarrierSet domain, CarrierSet codomain, BitMatrix incidence);

  const CarrierSet& domain() const { return domain_; }
  const CarrierSet& codomain() const { return codomain_; }
  const FiniteGroup& group() const { return *domain_.group; }
  const GroupPtr& group_ptr() const { return domain_.group; }
  std::size_t domain_arity() const { return domain_.arity; }
  std::size_t codomain_arity() const { return codomain_.arity; }
  std::size_t rows() const { return incidence_.rows(); }
  std::size_t cols() const { return incidence_.cols(); }

  const BitMatrix& incidence() const { return incidence_; }
  std::span<const Word> row(std::size_t x) const { return incidence_.row(x); }
  bool test(std::size_t x, std::size_t y) const { return incidence_.test(x, y); }
  std::size_t count() const { return incidence_.count(); }
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;

  bool same_carriers(const Relation& o) const { return domain_ == o.domain_ && codomain_ == o.codomain_; }
  friend bool operator==(const Relation& a, const Relation& b) {
    return a.same_carriers(b) && a.incidence_ == b.incidence_;
  }

 private:
  CarrierSet domain_;
  CarrierSet codomain_;
  BitMatrix incidence_;
};

using PairList = std::vector<std::pair<std::size_t, std::size_t>>;
using PairPredicate = std::function<bool(std::size_t, std::size_t)>;

// Throws PairOutsideCarrier on the first pair outside X×Y.
Relation build_relation(const CarrierSet& domain, const CarrierSet& codomain, const PairList& pairs);
// Evaluated on X×Y only.
Relation build_relation(const CarrierSet& domain, const CarrierSet& codomain, const PairPredicate& predicate);

enum class Direction { Left, Right };

/// Left: (g,h) with g^{-1}·h ∈ A.  Right: (g,h) with h^{-1}·g ∈ A.  Carriers are all of G.
Relation cayley_graph(GroupPtr group, const Bitset& set, Direction direction = Direction::Left);

enum class Normalization { GroupPower, Carrier };

/// GroupPower: |S| / |G|^(n+m).  Carrier: |S| / (|X|·|Y|), EmptyCarrier if |X|·|Y| = 0.
Rational density(const Relation& relation, Normalization normalization = Normalization::GroupPower);

/// Per-coordinate shift; empty means identity, otherwise one element per coordinate.
struct CoordinateShift {
  std::vector<GroupElement> elements;
  Side side = Side::Right;
};

struct RelationShift {
  CoordinateShift domain;
  CoordinateShift codomain;
};

/// Output has (x,y) iff (x·g, y·h) is in the input (g·x for Left); carriers move the same way.
/// Throws ArityMismatch when a non-empty shift disagrees with the carrier arity.
Relation translate_relation(const Relation& relation, const RelationShift& shift);

/// Shift that undoes `shift`.
RelationShift inverse_shift(const FiniteGroup& group, const RelationShift& shift);

enum class SetOp { And, Or, Diff, SymDiff, Complement };

/// Bitwise combination within X×Y. Complement ignores `rhs`. Throws CarrierMismatch.
Relation relation_algebra(SetOp op, const Relation& lhs, const std::optional<Relation>& rhs = std::nullopt);

/// Header "n m |G| recipe-hash", then |G|^n rows of lowercase hex (see Bitset::to_hex).
/// Proper carriers are appended as "domain <hex>" / "codomain <hex>" lines.
void save_relation(const Relation& relation, std::ostream& out);
/// `group` must match the header's order and recipe hash.
Relation load_relation(GroupPtr group, std::istream& in);

}  // namespace stabkit
