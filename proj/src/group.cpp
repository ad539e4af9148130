#include "stabkit/group.hpp"

#include "stabkit/error.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace stabkit {

namespace {

std::atomic<std::uint64_t> next_group_id{1};

struct Fnv1a {
  std::uint64_t h = 1469598103934665603ULL;
  void add(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xFFU;
      h *= 1099511628211ULL;
    }
  }
  void add(const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  }
};

void validate_table(std::size_t q, const std::vector<std::size_t>& t) {
  if (q == 0) throw Error(ErrorKind::InvalidArgument, "cayley table order must be >= 1");
  if (t.size() != q * q)
    throw Error(ErrorKind::InvalidArgument,
                "cayley table has " + std::to_string(t.size()) + " entries, expected " + std::to_string(q * q));
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b)
      if (t[a * q + b] >= q) throw AxiomViolation("closure", {a, b});
  for (std::size_t a = 0; a < q; ++a)
    if (t[a] != a || t[a * q] != a) throw AxiomViolation("identity", {a});
  for (std::size_t a = 0; a < q; ++a) {
    bool found = false;
    for (std::size_t b = 0; b < q && !found; ++b) found = t[a * q + b] == 0 && t[b * q + a] == 0;
    if (!found) throw AxiomViolation("inverse", {a});
  }
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b) {
      const std::size_t ab = t[a * q + b];
      for (std::size_t c = 0; c < q; ++c)
        if (t[ab * q + c] != t[a * q + t[b * q + c]]) throw AxiomViolation("associativity", {a, b, c});
    }
}

}  // namespace

std::string FiniteGroup::recipe_hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash_));
  return buf;
}

std::size_t FiniteGroup::pow(std::size_t a, long long e) const {
  std::size_t base = e < 0 ? inv(a) : a;
  unsigned long long n = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1 : static_cast<unsigned long long>(e);
  std::size_t r = 0;
  while (n) {
    if (n & 1U) r = mul(r, base);
    base = mul(base, base);
    n >>= 1U;
  }
  return r;
}

GroupElement FiniteGroup::element(std::size_t index) const {
  if (index >= order_)
    throw Error(ErrorKind::IndexOutOfRange,
                "element " + std::to_string(index) + " not in group of order " + std::to_string(order_));
  return {id_, index};
}

std::size_t FiniteGroup::index_of(const GroupElement& e) const {
  if (e.group_id != id_)
    throw Error(ErrorKind::CrossGroupElement, "element of group #" + std::to_string(e.group_id) +
                                                  " used with group #" + std::to_string(id_) + " (" + name_ + ")");
  if (e.index >= order_) throw Error(ErrorKind::IndexOutOfRange, "element index " + std::to_string(e.index));
  return e.index;
}

std::vector<std::size_t> FiniteGroup::factor_coordinates(std::size_t index) const {
  const auto* p = std::get_if<ProductRecipe>(&recipe_);
  if (!p) return {};
  std::vector<std::size_t> coords(p->factors.size());
  for (std::size_t i = p->factors.size(); i-- > 0;) {
    coords[i] = index % p->factors[i]->order();
    index /= p->factors[i]->order();
  }
  return coords;
}

GroupPtr make_group(Recipe recipe) {
  std::shared_ptr<FiniteGroup> g(new FiniteGroup());
  g->id_ = next_group_id.fetch_add(1);
  Fnv1a hash;

  if (auto* c = std::get_if<CyclicRecipe>(&recipe)) {
    if (c->n == 0) throw Error(ErrorKind::InvalidArgument, "cyclic(n) needs n >= 1");
    g->order_ = c->n;
    g->name_ = "Z" + std::to_string(c->n);
    g->abelian_ = true;
    hash.add("cyclic");
    hash.add(c->n);
  } else if (auto* p = std::get_if<ProductRecipe>(&recipe)) {
    if (p->factors.empty()) throw Error(ErrorKind::InvalidArgument, "product of zero factors");
    std::size_t q = 1;
    for (const auto& f : p->factors) {
      q *= f->order();
      if (q > FiniteGroup::kMaxTableOrder)
        throw Error(ErrorKind::InvalidArgument, "product order exceeds " + std::to_string(FiniteGroup::kMaxTableOrder));
    }
    g->order_ = q;
    hash.add("product");
    for (std::size_t i = 0; i < p->factors.size(); ++i) {
      const auto& f = p->factors[i];
      g->name_ += (i ? "x" : "") + (f->order() > 1 && std::holds_alternative<ProductRecipe>(f->recipe())
                                        ? "(" + f->name() + ")"
                                        : f->name());
      g->abelian_ = g->abelian_ && f->is_abelian();
      hash.add(f->recipe_hash());
    }
    // Mixed radix, first factor most significant.
    g->table_.resize(q * q);
    g->inverse_.resize(q);
    const std::size_t k = p->factors.size();
    std::vector<std::size_t> ca(k), cb(k);
    auto decode = [&](std::size_t x, std::vector<std::size_t>& c) {
      for (std::size_t i = k; i-- > 0;) {
        c[i] = x % p->factors[i]->order();
        x /= p->factors[i]->order();
      }
    };
    for (std::size_t a = 0; a < q; ++a) {
      decode(a, ca);
      std::size_t ia = 0;
      for (std::size_t i = 0; i < k; ++i) ia = ia * p->factors[i]->order() + p->factors[i]->inv(ca[i]);
      g->inverse_[a] = static_cast<std::uint32_t>(ia);
      for (std::size_t b = 0; b < q; ++b) {
        decode(b, cb);
        std::size_t r = 0;
        for (std::size_t i = 0; i < k; ++i) r = r * p->factors[i]->order() + p->factors[i]->mul(ca[i], cb[i]);
        g->table_[a * q + b] = static_cast<std::uint32_t>(r);
      }
    }
  } else {
    auto& t = std::get<CayleyTableRecipe>(recipe);
    if (t.order > FiniteGroup::kMaxTableOrder)
      throw Error(ErrorKind::InvalidArgument, "cayley table order exceeds " + std::to_string(FiniteGroup::kMaxTableOrder));
    validate_table(t.order, t.table);
    const std::size_t q = t.order;
    g->order_ = q;
    g->name_ = t.label.empty() ? "table" + std::to_string(q) : t.label;
    g->table_.assign(t.table.begin(), t.table.end());
    g->inverse_.resize(q);
    for (std::size_t a = 0; a < q; ++a)
      for (std::size_t b = 0; b < q; ++b)
        if (t.table[a * q + b] == 0) {
          g->inverse_[a] = static_cast<std::uint32_t>(b);
          break;
        }
    for (std::size_t a = 0; a < q && g->abelian_; ++a)
      for (std::size_t b = a + 1; b < q; ++b)
        if (t.table[a * q + b] != t.table[b * q + a]) {
          g->abelian_ = false;
          break;
        }
    hash.add("table");
    hash.add(q);
    for (std::size_t v : t.table) hash.add(v);
  }
  g->hash_ = hash.h;
  g->recipe_ = std::move(recipe);
  return g;
}

GroupPtr cyclic(std::size_t n) { return make_group(CyclicRecipe{n}); }

GroupPtr product(std::vector<GroupPtr> factors) { return make_group(ProductRecipe{std::move(factors)}); }

GroupPtr elementary_abelian(std::size_t p, std::size_t k) {
  std::vector<GroupPtr> f(k, cyclic(p));
  return product(std::move(f));
}

GroupPtr cayley_table(std::size_t order, std::vector<std::size_t> table, std::string label) {
  return make_group(CayleyTableRecipe{order, std::move(table), std::move(label)});
}

GroupPtr dihedral(std::size_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "dihedral(n) needs n >= 1");
  const std::size_t q = 2 * n;
  std::vector<std::size_t> t(q * q);
  // r^i s^0 -> i, s r^i -> n + i, with r s = s r^{-1}.
  for (std::size_t x = 0; x < q; ++x)
    for (std::size_t y = 0; y < q; ++y) {
      const bool xs = x >= n, ys = y >= n;
      const std::size_t i = x % n, j = y % n;
      std::size_t r;
      if (!xs && !ys) r = (i + j) % n;            // r^i r^j
      else if (!xs && ys) r = n + (j + n - i) % n;  // r^i s r^j = s r^{j-i}
      else if (xs && !ys) r = n + (i + j) % n;      // s r^i r^j
      else r = (j + n - i) % n;                     // s r^i s r^j = r^{j-i}
      t[x * q + y] = r;
    }
  return cayley_table(q, std::move(t), "D" + std::to_string(n));
}

GroupPtr heisenberg(std::size_t p) {
  if (p < 2) throw Error(ErrorKind::InvalidArgument, "heisenberg(p) needs p >= 2");
  const std::size_t q = p * p * p;
  std::vector<std::size_t> t(q * q);
  // [1 a c; 0 1 b; 0 0 1] * [1 a' c'; 0 1 b'; 0 0 1] = [1 a+a' c+c'+a b'; 0 1 b+b'; 0 0 1]
  for (std::size_t x = 0; x < q; ++x)
    for (std::size_t y = 0; y < q; ++y) {
      const std::size_t a = x / (p * p), b = (x / p) % p, c = x % p;
      const std::size_t a2 = y / (p * p), b2 = (y / p) % p, c2 = y % p;
      t[x * q + y] = ((a + a2) % p) * p * p + ((b + b2) % p) * p + (c + c2 + a * b2) % p;
    }
  return cayley_table(q, std::move(t), "Heis" + std::to_string(p));
}

GroupPtr load_cayley_table(std::istream& in) {
  long long q = 0;
  if (!(in >> q) || q < 1) throw Error(ErrorKind::Parse, "cayley table: missing or invalid order");
  const auto n = static_cast<std::size_t>(q);
  std::vector<std::size_t> t(n * n);
  for (std::size_t i = 0; i < n * n; ++i) {
    long long v;
    if (!(in >> v)) throw Error(ErrorKind::Parse, "cayley table: expected " + std::to_string(n * n) + " entries");
    if (v < 0) throw AxiomViolation("closure", {i / n, i % n});
    t[i] = static_cast<std::size_t>(v);
  }
  return cayley_table(n, std::move(t));
}

GroupPtr load_cayley_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  return load_cayley_table(in);
}

void save_cayley_table(const FiniteGroup& g, std::ostream& out) {
  const std::size_t q = g.order();
  out << q << '\n';
  for (std::size_t a = 0; a < q; ++a) {
    for (std::size_t b = 0; b < q; ++b) out << (b ? " " : "") << g.mul(a, b);
    out << '\n';
  }
}

namespace {

std::size_t parse_size(const std::string& s, const std::string& whole) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw Error(ErrorKind::Parse, "bad group spec '" + whole + "'");
  return static_cast<std::size_t>(std::stoull(s));
}

GroupPtr parse_factor(const std::string& f, const std::string& whole) {
  if (auto caret = f.find('^'); caret != std::string::npos) {
    const std::size_t k = parse_size(f.substr(caret + 1), whole);
    if (k == 0) throw Error(ErrorKind::Parse, "bad group spec '" + whole + "'");
    GroupPtr base = parse_factor(f.substr(0, caret), whole);
    if (k == 1) return base;
    return product(std::vector<GroupPtr>(k, base));
  }
  if (f.rfind("Heis", 0) == 0) return heisenberg(parse_size(f.substr(4), whole));
  if (f.rfind("Z", 0) == 0) return cyclic(parse_size(f.substr(1), whole));
  if (f.rfind("D", 0) == 0) return dihedral(parse_size(f.substr(1), whole));
  throw Error(ErrorKind::Parse, "bad group spec '" + whole + "'");
}

}  // namespace

GroupPtr parse_group(const std::string& spec) {
  if (spec.rfind("table:", 0) == 0) return load_cayley_table_file(spec.substr(6));
  std::vector<GroupPtr> factors;
  std::size_t start = 0;
  while (true) {
    const std::size_t x = spec.find('x', start);
    const std::string part = spec.substr(start, x == std::string::npos ? std::string::npos : x - start);
    GroupPtr f = parse_factor(part, spec);
    // "Z2^3" inside a product contributes its factors individually.
    if (auto* p = std::get_if<ProductRecipe>(&f->recipe()); p && part.find('^') != std::string::npos)
      factors.insert(factors.end(), p->factors.begin(), p->factors.end());
    else
      factors.push_back(std::move(f));
    if (x == std::string::npos) break;
    start = x + 1;
  }
  if (factors.size() == 1) return factors.front();
  return product(std::move(factors));
}

GroupElement evaluate(const FiniteGroup& group, const std::vector<WordLetter>& word) {
  std::size_t acc = 0;
  for (const auto& letter : word) {
    const std::size_t e = group.index_of(letter.element);
    if (letter.exponent != 1 && letter.exponent != -1)
      throw Error(ErrorKind::InvalidArgument, "word exponents must be +1 or -1");
    acc = group.mul(acc, letter.exponent == 1 ? e : group.inv(e));
  }
  return {group.id(), acc};
}

ExponentReport exponent_and_orders(const FiniteGroup& group) {
  ExponentReport r;
  r.orders.resize(group.order());
  for (std::size_t g = 0; g < group.order(); ++g) {
    std::size_t k = 1;
    for (std::size_t x = g; x != 0; x = group.mul(x, g)) ++k;
    r.orders[g] = k;
    r.exponent = std::lcm(r.exponent, static_cast<std::uint64_t>(r.orders[g]));
  }
  return r;
}

}  // namespace stabkit
