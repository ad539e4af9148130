#include "stabkit/boxcover.hpp"

#include "stabkit/error.hpp"

namespace stabkit {

namespace {

Rational over_universe(std::size_t count, const Relation& rel) {
  return Rational(BigInt(count), BigInt(rel.rows()) * BigInt(rel.cols()));
}

bool admits(std::uint64_t inside, std::uint64_t area, const Rational& purity) {
  // inside >= purity * area, exactly.
  return Rational(BigInt(inside)) >= purity * Rational(BigInt(area));
}

// Alternately extends along the seed row (new columns) then across rows, ascending index order,
// while the purity bound holds.
Box grow(const Relation& rel, std::size_t seed_row, std::size_t seed_col, const Rational& purity) {
  Box box{Bitset(rel.rows()), Bitset(rel.cols())};
  box.rows.set(seed_row);
  box.cols.set(seed_col);
  std::uint64_t nrows = 1, ncols = 1, inside = 1;
  const auto xs = rel.domain().members.indices();
  const auto ys = rel.codomain().members.indices();

  bool changed = true;
  while (changed) {
    changed = false;
    const auto rows = box.rows.indices();
    for (std::size_t y : ys) {
      if (box.cols.test(y)) continue;
      std::uint64_t gain = 0;
      for (std::size_t x : rows) gain += rel.test(x, y);
      if (admits(inside + gain, nrows * (ncols + 1), purity)) {
        box.cols.set(y);
        ++ncols;
        inside += gain;
        changed = true;
      }
    }
    for (std::size_t x : xs) {
      if (box.rows.test(x)) continue;
      const std::uint64_t gain = bits::and_popcount(rel.row(x), box.cols.words());
      if (admits(inside + gain, (nrows + 1) * ncols, purity)) {
        box.rows.set(x);
        ++nrows;
        inside += gain;
        changed = true;
      }
    }
  }
  return box;
}

void paint(BitMatrix& m, const Box& box) {
  bits::for_each_set(box.rows.words(), [&](std::size_t x) { bits::or_into(m.row(x), box.cols.words()); });
}

std::size_t symdiff_count(const Relation& rel, const BitMatrix& u) {
  std::size_t n = 0;
  const auto a = rel.incidence().data();
  const auto b = u.data();
  for (std::size_t i = 0; i < a.size(); ++i) n += static_cast<std::size_t>(std::popcount(a[i] ^ b[i]));
  return n;
}

}  // namespace

Relation box_union(const Relation& like, const std::vector<Box>& boxes) {
  BitMatrix m(like.rows(), like.cols());
  for (const auto& b : boxes) {
    if (b.rows.size() != like.rows() || b.cols.size() != like.cols())
      throw Error(ErrorKind::CarrierMismatch, "box has the wrong universe size");
    if (!b.rows.is_subset_of(like.domain().members) || !b.cols.is_subset_of(like.codomain().members))
      throw Error(ErrorKind::PairOutsideCarrier, "box leaves the carriers");
    paint(m, b);
  }
  return Relation(like.domain(), like.codomain(), std::move(m));
}

BoxCover greedy_box_cover(const Relation& relation, const Rational& epsilon, std::size_t max_boxes,
                          const Rational& purity) {
  if (!(epsilon > 0 && epsilon <= 1)) throw Error(ErrorKind::InvalidArgument, "epsilon must lie in (0, 1]");
  if (!(purity > 0 && purity <= 1)) throw Error(ErrorKind::InvalidArgument, "purity must lie in (0, 1]");

  std::vector<Box> boxes;
  std::vector<Rational> trace;
  BitMatrix u(relation.rows(), relation.cols());
  std::size_t err = symdiff_count(relation, u);

  while (over_universe(err, relation) >= epsilon && boxes.size() < max_boxes) {
    bool added = false;
    // Seeds: uncovered edges of S in lexicographic order; the first one whose box helps wins.
    for (std::size_t x = 0; x < relation.rows() && !added; ++x) {
      const auto srow = relation.row(x);
      const auto urow = u.row(x);
      for (std::size_t w = 0; w < srow.size() && !added; ++w) {
        Word open = srow[w] & ~urow[w];
        while (open && !added) {
          const std::size_t y = w * kWordBits + static_cast<std::size_t>(std::countr_zero(open));
          open &= open - 1;
          Box box = grow(relation, x, y, purity);
          BitMatrix next = u;
          paint(next, box);
          const std::size_t next_err = symdiff_count(relation, next);
          if (next_err < err) {
            u = std::move(next);
            err = next_err;
            boxes.push_back(std::move(box));
            trace.push_back(over_universe(err, relation));
            added = true;
          }
        }
      }
    }
    if (!added) break;
  }

  Relation un(relation.domain(), relation.codomain(), std::move(u));
  BoxCover cover{std::move(boxes), un, {}, {}, std::move(trace)};
  const CoverErrors e = cover_error(relation, cover);
  cover.symdiff_error = e.symdiff;
  cover.overcount_error = e.overcount;
  return cover;
}

BoxCover cover_from_boxes(const Relation& relation, std::vector<Box> boxes) {
  Relation un = box_union(relation, boxes);
  BoxCover cover{std::move(boxes), std::move(un), {}, {}, {}};
  const CoverErrors e = cover_error(relation, cover);
  cover.symdiff_error = e.symdiff;
  cover.overcount_error = e.overcount;
  return cover;
}

CoverErrors cover_error(const Relation& relation, const BoxCover& cover) {
  const Relation& un = cover.union_relation;
  if (!relation.same_carriers(un)) throw Error(ErrorKind::CarrierMismatch, "cover built over different carriers");
  std::size_t missed = 0, over = 0;
  const auto s = relation.incidence().data();
  const auto u = un.incidence().data();
  for (std::size_t i = 0; i < s.size(); ++i) {
    missed += static_cast<std::size_t>(std::popcount(s[i] & ~u[i]));
    over += static_cast<std::size_t>(std::popcount(u[i] & ~s[i]));
  }
  return {over_universe(missed + over, relation), over_universe(missed, relation), over_universe(over, relation)};
}

BoxStability box_union_stability_check(const BoxCover& cover, const HalfGraphOptions& options) {
  BoxStability r;
  r.ell = cover.boxes.size();
  const Relation un = box_union(cover.union_relation, cover.boxes);
  if (!(un == cover.union_relation)) throw Error(ErrorKind::InvalidArgument, "cover union differs from its boxes");
  r.halfgraph_count_at_ell_plus_1 = *count_halfgraphs_exact(un, r.ell + 1, options).exact_count;
  return r;
}

}  // namespace stabkit
