#include "stabkit/relation.hpp"

#include "stabkit/error.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace stabkit {

std::size_t power_size(std::size_t q, std::size_t n, std::size_t limit) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (q != 0 && r > limit / q) throw BudgetExceeded("power |G|^" + std::to_string(n), UINT64_MAX, limit);
    r *= q;
  }
  if (r > limit) throw BudgetExceeded("power |G|^" + std::to_string(n), r, limit);
  return r;
}

std::size_t encode_tuple(std::size_t q, std::span<const std::size_t> coords) {
  std::size_t x = 0;
  for (std::size_t c : coords) x = x * q + c;
  return x;
}

std::vector<std::size_t> decode_tuple(std::size_t q, std::size_t n, std::size_t index) {
  std::vector<std::size_t> c(n);
  for (std::size_t i = n; i-- > 0;) {
    c[i] = index % q;
    index /= q;
  }
  return c;
}

std::vector<std::size_t> power_translation(const FiniteGroup& g, std::size_t n, std::span<const std::size_t> elements,
                                           Side side) {
  if (elements.size() != n) throw Error(ErrorKind::ArityMismatch, "translation needs one element per coordinate");
  const std::size_t q = g.order();
  const std::size_t size = power_size(q, n);
  std::vector<std::size_t> out(size);
  std::vector<std::size_t> c(n, 0);
  for (std::size_t x = 0; x < size; ++x) {
    std::size_t y = 0;
    for (std::size_t i = 0; i < n; ++i) y = y * q + (side == Side::Right ? g.mul(c[i], elements[i]) : g.mul(elements[i], c[i]));
    out[x] = y;
    for (std::size_t i = n; i-- > 0;) {
      if (++c[i] < q) break;
      c[i] = 0;
    }
  }
  return out;
}

CarrierSet full_carrier(GroupPtr group, std::size_t arity) {
  if (arity < 1) throw Error(ErrorKind::InvalidArgument, "carrier arity must be >= 1");
  const std::size_t size = power_size(group->order(), arity);
  return CarrierSet{std::move(group), arity, Bitset(size, true)};
}

CarrierSet make_carrier(GroupPtr group, std::size_t arity, Bitset members) {
  if (arity < 1) throw Error(ErrorKind::InvalidArgument, "carrier arity must be >= 1");
  if (members.size() != power_size(group->order(), arity))
    throw Error(ErrorKind::InvalidArgument, "carrier bitset length must be |G|^n");
  return CarrierSet{std::move(group), arity, std::move(members)};
}

CarrierSet carrier_from_indices(GroupPtr group, std::size_t arity, const std::vector<std::size_t>& members) {
  const std::size_t size = power_size(group->order(), arity);
  return make_carrier(std::move(group), arity, Bitset::from_indices(size, members));
}

namespace {

void check_sizes(const CarrierSet& d, const CarrierSet& c) {
  if (!d.group || !c.group) throw Error(ErrorKind::InvalidArgument, "carrier without a group");
  if (d.group->id() != c.group->id()) throw Error(ErrorKind::CrossGroupElement, "carriers over different groups");
  power_size(d.group->order(), d.arity + c.arity);
}

void clear_outside(BitMatrix& m, const CarrierSet& d, const CarrierSet& c) {
  for (std::size_t x = 0; x < m.rows(); ++x) {
    auto row = m.row(x);
    if (!d.members.test(x))
      std::fill(row.begin(), row.end(), Word{0});
    else
      bits::and_into(row, c.members.words());
  }
}

}  // namespace

Relation::Relation(CarrierSet domain, CarrierSet codomain) : domain_(std::move(domain)), codomain_(std::move(codomain)) {
  check_sizes(domain_, codomain_);
  incidence_ = BitMatrix(domain_.universe(), codomain_.universe());
}

Relation::Relation(CarrierSet domain, CarrierSet codomain, BitMatrix incidence)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), incidence_(std::move(incidence)) {
  check_sizes(domain_, codomain_);
  if (incidence_.rows() != domain_.universe() || incidence_.cols() != codomain_.universe())
    throw Error(ErrorKind::InvalidArgument, "incidence shape must be |G|^n x |G|^m");
  clear_outside(incidence_, domain_, codomain_);
}

std::vector<std::pair<std::size_t, std::size_t>> Relation::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(count());
  for (std::size_t x = 0; x < rows(); ++x) bits::for_each_set(row(x), [&](std::size_t y) { out.emplace_back(x, y); });
  return out;
}

Relation build_relation(const CarrierSet& domain, const CarrierSet& codomain, const PairList& pairs) {
  check_sizes(domain, codomain);
  BitMatrix m(domain.universe(), codomain.universe());
  for (const auto& [x, y] : pairs) {
    if (x >= domain.universe() || y >= codomain.universe() || !domain.members.test(x) || !codomain.members.test(y))
      throw Error(ErrorKind::PairOutsideCarrier, "pair (" + std::to_string(x) + ", " + std::to_string(y) + ")");
    m.set(x, y);
  }
  return Relation(domain, codomain, std::move(m));
}

Relation build_relation(const CarrierSet& domain, const CarrierSet& codomain, const PairPredicate& predicate) {
  check_sizes(domain, codomain);
  BitMatrix m(domain.universe(), codomain.universe());
  const auto ys = codomain.members.indices();
  bits::for_each_set(domain.members.words(), [&](std::size_t x) {
    for (std::size_t y : ys)
      if (predicate(x, y)) m.set(x, y);
  });
  return Relation(domain, codomain, std::move(m));
}

Relation cayley_graph(GroupPtr group, const Bitset& set, Direction direction) {
  const std::size_t q = group->order();
  if (set.size() != q) throw Error(ErrorKind::InvalidArgument, "element set length must equal |G|");
  const FiniteGroup& g = *group;
  BitMatrix m(q, q);
  const auto elems = set.indices();
  for (std::size_t x = 0; x < q; ++x)
    for (std::size_t a : elems) {
      // Left: h = x·a.  Right: h^{-1}·x = a, so h = x·a^{-1}.
      m.set(x, direction == Direction::Left ? g.mul(x, a) : g.mul(x, g.inv(a)));
    }
  auto carrier = full_carrier(group, 1);
  return Relation(carrier, carrier, std::move(m));
}

Rational density(const Relation& relation, Normalization normalization) {
  const BigInt count = relation.count();
  if (normalization == Normalization::GroupPower)
    return Rational(count, BigInt(relation.rows()) * BigInt(relation.cols()));
  const BigInt denom = BigInt(relation.domain().size()) * BigInt(relation.codomain().size());
  if (denom == 0) throw Error(ErrorKind::EmptyCarrier, "carrier normalization with |X|·|Y| = 0");
  return Rational(count, denom);
}

namespace {

std::vector<std::size_t> shift_indices(const FiniteGroup& g, const CoordinateShift& s, std::size_t arity) {
  std::vector<std::size_t> idx;
  if (s.elements.empty()) return idx;
  if (s.elements.size() != arity)
    throw Error(ErrorKind::ArityMismatch, "shift has " + std::to_string(s.elements.size()) +
                                              " coordinates for a carrier of arity " + std::to_string(arity));
  for (const auto& e : s.elements) idx.push_back(g.index_of(e));
  return idx;
}

// perm[x] = image of x under the shift (identity when the shift is empty).
std::vector<std::size_t> shift_permutation(const FiniteGroup& g, const CoordinateShift& s, std::size_t arity,
                                           std::size_t universe) {
  const auto idx = shift_indices(g, s, arity);
  if (idx.empty()) {
    std::vector<std::size_t> id(universe);
    for (std::size_t i = 0; i < universe; ++i) id[i] = i;
    return id;
  }
  return power_translation(g, arity, idx, s.side);
}

}  // namespace

Relation translate_relation(const Relation& relation, const RelationShift& shift) {
  const FiniteGroup& g = relation.group();
  const auto px = shift_permutation(g, shift.domain, relation.domain_arity(), relation.rows());
  const auto py = shift_permutation(g, shift.codomain, relation.codomain_arity(), relation.cols());

  Bitset dom(relation.rows()), cod(relation.cols());
  for (std::size_t x = 0; x < relation.rows(); ++x)
    if (relation.domain().members.test(px[x])) dom.set(x);
  for (std::size_t y = 0; y < relation.cols(); ++y)
    if (relation.codomain().members.test(py[y])) cod.set(y);

  BitMatrix m(relation.rows(), relation.cols());
  for (std::size_t x = 0; x < relation.rows(); ++x) {
    const auto src = relation.row(px[x]);
    if (!bits::any(src)) continue;
    for (std::size_t y = 0; y < relation.cols(); ++y)
      if (bits::test(src, py[y])) m.set(x, y);
  }
  return Relation(CarrierSet{relation.group_ptr(), relation.domain_arity(), std::move(dom)},
                  CarrierSet{relation.group_ptr(), relation.codomain_arity(), std::move(cod)}, std::move(m));
}

RelationShift inverse_shift(const FiniteGroup& group, const RelationShift& shift) {
  RelationShift r = shift;
  for (auto* s : {&r.domain, &r.codomain})
    for (auto& e : s->elements) e = group.element(group.inv(group.index_of(e)));
  return r;
}

Relation relation_algebra(SetOp op, const Relation& lhs, const std::optional<Relation>& rhs) {
  if (op != SetOp::Complement) {
    if (!rhs) throw Error(ErrorKind::InvalidArgument, "binary relation operation needs two operands");
    if (!lhs.same_carriers(*rhs)) throw Error(ErrorKind::CarrierMismatch, "operands have different carriers");
  }
  BitMatrix m = lhs.incidence();
  auto dst = m.data();
  const auto b = rhs ? rhs->incidence().data() : std::span<const Word>{};
  for (std::size_t i = 0; i < dst.size(); ++i) {
    switch (op) {
      case SetOp::And: dst[i] &= b[i]; break;
      case SetOp::Or: dst[i] |= b[i]; break;
      case SetOp::Diff: dst[i] &= ~b[i]; break;
      case SetOp::SymDiff: dst[i] ^= b[i]; break;
      case SetOp::Complement: dst[i] = ~dst[i]; break;
    }
  }
  // Relation's constructor clears padding and everything outside X×Y.
  return Relation(lhs.domain(), lhs.codomain(), std::move(m));
}

void save_relation(const Relation& relation, std::ostream& out) {
  const FiniteGroup& g = relation.group();
  out << relation.domain_arity() << ' ' << relation.codomain_arity() << ' ' << g.order() << ' ' << g.recipe_hash_hex()
      << '\n';
  for (std::size_t x = 0; x < relation.rows(); ++x) out << relation.incidence().row_bitset(x).to_hex() << '\n';
  if (!relation.domain().is_full()) out << "domain " << relation.domain().members.to_hex() << '\n';
  if (!relation.codomain().is_full()) out << "codomain " << relation.codomain().members.to_hex() << '\n';
}

Relation load_relation(GroupPtr group, std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw Error(ErrorKind::Parse, "relation file: missing header");
  std::istringstream hs(header);
  std::size_t n = 0, m = 0, q = 0;
  std::string hash;
  if (!(hs >> n >> m >> q >> hash) || n < 1 || m < 1) throw Error(ErrorKind::Parse, "relation file: bad header");
  if (q != group->order())
    throw Error(ErrorKind::Parse, "relation file: |G| = " + std::to_string(q) + " but group has order " +
                                      std::to_string(group->order()));
  if (hash != group->recipe_hash_hex())
    throw Error(ErrorKind::Parse, "relation file: recipe hash " + hash + " does not match " + group->recipe_hash_hex());
  const std::size_t rows = power_size(q, n);
  const std::size_t cols = power_size(q, m);
  power_size(q, n + m);
  BitMatrix mat(rows, cols);
  std::string line;
  for (std::size_t x = 0; x < rows; ++x) {
    if (!std::getline(in, line)) throw Error(ErrorKind::Parse, "relation file: missing row " + std::to_string(x));
    const Bitset row = Bitset::from_hex(cols, line);
    std::copy(row.words().begin(), row.words().end(), mat.row(x).begin());
  }
  CarrierSet dom = full_carrier(group, n);
  CarrierSet cod = full_carrier(group, m);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag, hex;
    ls >> tag >> hex;
    if (tag == "domain")
      dom.members = Bitset::from_hex(rows, hex);
    else if (tag == "codomain")
      cod.members = Bitset::from_hex(cols, hex);
    else
      throw Error(ErrorKind::Parse, "relation file: unexpected line '" + line + "'");
  }
  // Reject files whose rows set bits outside the declared carriers.
  for (std::size_t x = 0; x < rows; ++x) {
    const auto r = mat.row(x);
    if (!bits::any(r)) continue;
    if (!dom.members.test(x)) throw Error(ErrorKind::PairOutsideCarrier, "row " + std::to_string(x) + " outside domain");
    for (std::size_t w = 0; w < r.size(); ++w)
      if (r[w] & ~cod.members.words()[w])
        throw Error(ErrorKind::PairOutsideCarrier, "row " + std::to_string(x) + " leaves the codomain");
  }
  return Relation(std::move(dom), std::move(cod), std::move(mat));
}

}  // namespace stabkit
