#include "stabkit/patterns.hpp"

#include "stabkit/error.hpp"
#include "stabkit/parallel.hpp"

#include <algorithm>
#include <array>

namespace stabkit {

std::string_view to_string(PatternKind kind) {
  switch (kind) {
    case PatternKind::Square: return "square";
    case PatternKind::NaiveCorner: return "naive";
    case PatternKind::BmzLeft: return "bmz-left";
    case PatternKind::BmzRight: return "bmz-right";
    case PatternKind::Rect23: return "rect23";
    case PatternKind::LShape: return "lshape";
  }
  return "unknown";
}

PatternKind parse_pattern_kind(std::string_view name) {
  for (PatternKind k : {PatternKind::Square, PatternKind::NaiveCorner, PatternKind::BmzLeft, PatternKind::BmzRight,
                        PatternKind::Rect23, PatternKind::LShape})
    if (to_string(k) == name) return k;
  throw Error(ErrorKind::Parse, "unknown pattern kind '" + std::string(name) + "'");
}

namespace {

// Maps applied to a pattern point: row (domain) and column (codomain) index transforms for a fixed g.
enum class Map { Id, Right, Left, Twist, Right2 };

struct Point {
  Map row;
  Map col;
};

struct MapTables {
  std::array<std::vector<std::size_t>, 5> row;
  std::array<std::vector<std::size_t>, 5> col;
};

std::vector<std::size_t> side_elements(std::size_t arity, const SideAction& action, std::size_t g) {
  std::vector<std::size_t> e(arity, 0);
  if (action.mode == SideAction::Mode::Diagonal) {
    std::fill(e.begin(), e.end(), g);
    return e;
  }
  const std::size_t c = action.coordinate.value_or(arity - 1);
  if (c >= arity)
    throw Error(ErrorKind::ArityMismatch, "side action coordinate " + std::to_string(c) + " for arity " + std::to_string(arity));
  e[c] = g;
  return e;
}

std::vector<std::size_t> build_map(const FiniteGroup& G, std::size_t arity, const SideAction& action, Map map,
                                   std::size_t g) {
  switch (map) {
    case Map::Id: return {};
    case Map::Right: return power_translation(G, arity, side_elements(arity, action, g), Side::Right);
    case Map::Left: return power_translation(G, arity, side_elements(arity, action, g), Side::Left);
    case Map::Right2: return power_translation(G, arity, side_elements(arity, action, G.mul(g, g)), Side::Right);
    case Map::Twist: {
      // b -> g·b·g; only used with arity 1.
      std::vector<std::size_t> out(G.order());
      for (std::size_t b = 0; b < G.order(); ++b) out[b] = G.mul(G.mul(g, b), g);
      return out;
    }
  }
  return {};
}

struct SliceResult {
  std::uint64_t count = 0;
  std::vector<PatternWitness> witnesses;
};

// Counts (a, b) with S[row_p(a)][col_p(b)] for every point p, for one side length g.
SliceResult count_slice(const Relation& rel, const std::vector<Point>& points, const SideAction& action, std::size_t g,
                        std::size_t witness_cap) {
  const FiniteGroup& G = rel.group();
  const std::size_t rows = rel.rows(), cols = rel.cols(), stride = rel.incidence().stride();

  std::array<std::vector<std::size_t>, 5> row_maps;
  std::array<bool, 5> col_needed{};
  for (const auto& p : points) {
    if (p.row != Map::Id && row_maps[static_cast<int>(p.row)].empty())
      row_maps[static_cast<int>(p.row)] = build_map(G, rel.domain_arity(), action, p.row, g);
    col_needed[static_cast<int>(p.col)] = true;
  }

  // Column-transformed copies: C[x][y] = S[x][col(y)], built by scattering set bits through col^{-1}.
  std::array<BitMatrix, 5> col_mats;
  for (int m = 1; m < 5; ++m) {
    if (!col_needed[m]) continue;
    const auto fwd = build_map(G, rel.codomain_arity(), action, static_cast<Map>(m), g);
    std::vector<std::size_t> inv(cols);
    for (std::size_t y = 0; y < cols; ++y) inv[fwd[y]] = y;
    BitMatrix c(rows, cols);
    for (std::size_t x = 0; x < rows; ++x) bits::for_each_set(rel.row(x), [&](std::size_t y) { c.set(x, inv[y]); });
    col_mats[m] = std::move(c);
  }

  auto source_row = [&](const Point& p, std::size_t a) -> std::span<const Word> {
    const std::size_t x = p.row == Map::Id ? a : row_maps[static_cast<int>(p.row)][a];
    return p.col == Map::Id ? rel.row(x) : col_mats[static_cast<int>(p.col)].row(x);
  };

  SliceResult out;
  std::vector<Word> acc(stride);
  for (std::size_t a = 0; a < rows; ++a) {
    const auto first = source_row(points[0], a);
    if (!bits::any(first)) continue;
    std::copy(first.begin(), first.end(), acc.begin());
    for (std::size_t i = 1; i < points.size(); ++i) bits::and_into(acc, source_row(points[i], a));
    const std::size_t c = bits::popcount(acc);
    out.count += c;
    if (c && out.witnesses.size() < witness_cap)
      bits::for_each_set(std::span<const Word>(acc), [&](std::size_t b) {
        if (out.witnesses.size() < witness_cap) out.witnesses.push_back({a, b, g});
      });
  }
  return out;
}

PatternCensus run_census(const Relation& rel, PatternKind kind, const std::vector<Point>& points,
                         const PatternOptions& options, const Bitset* only = nullptr) {
  const std::size_t q = rel.group().order();
  const std::size_t cap = std::min(options.witnesses, kMaxWitnesses);
  std::vector<SliceResult> slices(q);
  parallel_for(q, options.threads, [&](std::size_t g, unsigned) {
    if (only && !only->test(g)) return;
    slices[g] = count_slice(rel, points, options.action, g, cap);
  });
  PatternCensus c;
  c.kind = kind;
  c.count_by_sidelength.resize(q, 0);
  for (std::size_t g = 0; g < q; ++g) {
    c.count_by_sidelength[g] = slices[g].count;
    c.total_count += slices[g].count;
    for (const auto& w : slices[g].witnesses)
      if (c.witnesses.size() < cap) c.witnesses.push_back(w);
  }
  c.nontrivial_count = c.total_count - c.count_by_sidelength[0];
  return c;
}

void require_unary(const Relation& rel, std::string_view what) {
  if (rel.domain_arity() != 1 || rel.codomain_arity() != 1)
    throw Error(ErrorKind::ArityUnsupported, std::string(what) + " needs n = m = 1");
}

const std::vector<Point> kSquare = {{Map::Id, Map::Id}, {Map::Right, Map::Id}, {Map::Id, Map::Right}, {Map::Right, Map::Right}};

}  // namespace

PatternCensus square_census(const Relation& relation, const PatternOptions& options) {
  return run_census(relation, PatternKind::Square, kSquare, options);
}

PatternCensus corner_census(const Relation& relation, CornerForm form, const PatternOptions& options) {
  require_unary(relation, "corner census");
  switch (form) {
    case CornerForm::Naive:
      return run_census(relation, PatternKind::NaiveCorner, {{Map::Id, Map::Id}, {Map::Left, Map::Id}, {Map::Id, Map::Left}},
                        options);
    case CornerForm::BmzLeft:
      return run_census(relation, PatternKind::BmzLeft, {{Map::Id, Map::Id}, {Map::Left, Map::Id}, {Map::Left, Map::Left}},
                        options);
    case CornerForm::BmzRight:
      return run_census(relation, PatternKind::BmzRight,
                        {{Map::Id, Map::Id}, {Map::Right, Map::Id}, {Map::Id, Map::Left}}, options);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown corner form");
}

PatternCensus rect23_census(const Relation& relation, const PatternOptions& options) {
  if (relation.codomain_arity() != 1) throw Error(ErrorKind::ArityUnsupported, "rect23 census needs m = 1");
  return run_census(relation, PatternKind::Rect23,
                    {{Map::Id, Map::Id},
                     {Map::Right, Map::Id},
                     {Map::Id, Map::Right},
                     {Map::Right, Map::Right},
                     {Map::Id, Map::Twist},
                     {Map::Right, Map::Twist}},
                    options);
}

PatternCensus lshape_census(const Relation& relation, const PatternOptions& options) {
  if (!relation.group().is_abelian()) throw Error(ErrorKind::NonAbelianGroup, "L-shapes need an abelian group");
  require_unary(relation, "L-shape census");
  return run_census(relation, PatternKind::LShape,
                    {{Map::Id, Map::Id}, {Map::Right, Map::Id}, {Map::Id, Map::Right}, {Map::Id, Map::Right2}}, options);
}

PatternCensus census(const Relation& relation, PatternKind kind, const PatternOptions& options) {
  switch (kind) {
    case PatternKind::Square: return square_census(relation, options);
    case PatternKind::NaiveCorner: return corner_census(relation, CornerForm::Naive, options);
    case PatternKind::BmzLeft: return corner_census(relation, CornerForm::BmzLeft, options);
    case PatternKind::BmzRight: return corner_census(relation, CornerForm::BmzRight, options);
    case PatternKind::Rect23: return rect23_census(relation, options);
    case PatternKind::LShape: return lshape_census(relation, options);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown pattern kind");
}

ApResult ap_census(const FiniteGroup& group, const Bitset& set, std::size_t m, const GroupElement& h) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "m must be >= 1");
  if (set.size() != group.order()) throw Error(ErrorKind::InvalidArgument, "element set length must equal |G|");
  const std::size_t step = group.index_of(h);
  ApResult r;
  r.set = Bitset(group.order());
  for (std::size_t a : set.indices()) {
    std::size_t x = a;
    bool ok = true;
    for (std::size_t i = 1; i < m && ok; ++i) {
      x = group.mul(step, x);
      ok = set.test(x);
    }
    if (ok) r.set.set(a);
  }
  r.count = r.set.count();
  return r;
}

CoverageReport sidelength_coverage(const Relation& relation, const Subgroup& subgroup, const PatternCensus& squares) {
  if (subgroup.parent_id != relation.group().id())
    throw Error(ErrorKind::CrossGroupElement, "subgroup belongs to another group");
  if (squares.kind != PatternKind::Square || squares.count_by_sidelength.size() != relation.group().order())
    throw Error(ErrorKind::InvalidArgument, "coverage needs a square census of the same relation");
  CoverageReport r;
  r.subgroup = subgroup;
  r.covered = Bitset(relation.group().order());
  std::size_t missing = 0;
  for (std::size_t g : subgroup.members.indices()) {
    if (squares.count_by_sidelength[g] > 0)
      r.covered.set(g);
    else
      ++missing;
  }
  r.missing_fraction = Rational(BigInt(missing), BigInt(subgroup.order()));
  return r;
}

CoverageReport sidelength_coverage(const Relation& relation, const Subgroup& subgroup, const PatternOptions& options) {
  if (subgroup.parent_id != relation.group().id())
    throw Error(ErrorKind::CrossGroupElement, "subgroup belongs to another group");
  PatternOptions o = options;
  o.witnesses = 0;
  const PatternCensus squares = run_census(relation, PatternKind::Square, kSquare, o, &subgroup.members);
  return sidelength_coverage(relation, subgroup, squares);
}

Rational comparability_defect(const FiniteGroup& group, const Bitset& set, const GroupElement& g, Side side) {
  if (set.size() != group.order()) throw Error(ErrorKind::InvalidArgument, "element set length must equal |G|");
  const std::size_t t = group.index_of(g);
  Bitset moved(group.order());
  for (std::size_t a : set.indices()) moved.set(side == Side::Left ? group.mul(t, a) : group.mul(a, t));
  return Rational(BigInt((moved ^ set).count()), BigInt(group.order()));
}

}  // namespace stabkit
