#include "doctest.h"
#include "oracle/brute.hpp"
#include "stabkit/error.hpp"
#include "stabkit/genlab.hpp"
#include "stabkit/halfgraph.hpp"

#include <cmath>

using namespace stabkit;

TEST_CASE("coset box examples") {
  auto z4 = cyclic(4), z6 = cyclic(6);
  auto g4 = whole_group(*z4);
  CHECK(coset_box_set(z4, g4, {{0, 0}}).count() == 16);
  auto h = subgroup_generated_by(*z4, {2});
  CHECK(coset_box_set(z4, h, {{0, 0}, {1, 1}}) ==
        cayley_graph(z4, Bitset::from_indices(4, std::vector<std::size_t>{0, 2})));
  auto h6 = subgroup_generated_by(*z6, {3});
  auto s = coset_box_set(z6, h6, {{0, 1}});
  CHECK(s.count() == 4);
  CHECK(density(s) == Rational(4, 36));
  auto d = dihedral(3);
  auto rot = subgroup_generated_by(*d, {1});
  auto cs = coset_box_set(d, rot, {{0, 1}, {1, 0}});
  CHECK(density(cs) == Rational(2, 4));
  CHECK_THROWS_AS(coset_box_set(z6, h6, {{0, 3}}), Error);
}

TEST_CASE("coset box density is |pairs| / index^2") {
  auto g = product({cyclic(2), cyclic(2), cyclic(3)});
  for (auto& h : subgroups_up_to_index(*g, 12)) {
    auto pairs = diagonal_pairs(*g, h);
    CHECK(density(coset_box_set(g, h, pairs)) == Rational(pairs.size(), h.index_in_parent * h.index_in_parent));
  }
}

TEST_CASE("sidon sets") {
  auto z7 = cyclic(7);
  CHECK(sidon_set(*z7).indices() == std::vector<std::size_t>{0, 1, 3});
  CHECK(sidon_set(*cyclic(1)).indices() == std::vector<std::size_t>{0});
  // In Z_2 the ordered differences 1-0 and 0-1 coincide.
  CHECK(sidon_set(*cyclic(2)).indices() == std::vector<std::size_t>{0});
  CHECK(sidon_set(*cyclic(40), 3).count() == 3);
  CHECK_THROWS_AS(sidon_set(*dihedral(3)), Error);
  for (std::size_t n = 1; n <= 40; ++n) {
    auto g = cyclic(n);
    auto a = sidon_set(*g);
    std::set<std::size_t> diffs;
    std::size_t pairs = 0;
    for (std::size_t x : a.indices())
      for (std::size_t y : a.indices())
        if (x != y) {
          diffs.insert((x + n - y) % n);
          ++pairs;
        }
    CHECK(diffs.size() == pairs);
    CHECK(is_sidon(*g, a));
  }
  CHECK_FALSE(is_sidon(*cyclic(8), Bitset::from_indices(8, std::vector<std::size_t>{0, 1, 2})));
}

TEST_CASE("random_dense") {
  auto g = cyclic(32);
  auto c = full_carrier(g);
  CHECK(random_dense(c, c, 0, 1).count() == 0);
  CHECK(random_dense(c, c, 1, 1).count() == 1024);
  CHECK(random_dense(c, c, Rational(1, 3), 5) == random_dense(c, c, Rational(1, 3), 5));
  CHECK_FALSE(random_dense(c, c, Rational(1, 3), 5) == random_dense(c, c, Rational(1, 3), 6));
  const double sigma = std::sqrt(1024 * 0.25);
  int inside = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed)
    inside += std::abs(static_cast<double>(random_dense(c, c, Rational(1, 2), seed).count()) - 512.0) <= 3 * sigma;
  CHECK(inside >= 95);
  auto sub = carrier_from_indices(g, 1, {1, 2, 3});
  CHECK(random_dense(sub, c, 1, 0).count() == 96);
  CHECK_THROWS_AS(random_dense(c, c, Rational(3, 2), 0), Error);
}

TEST_CASE("perturbation") {
  auto g = cyclic(12);
  auto base = cayley_graph(g, Bitset::from_indices(12, std::vector<std::size_t>{0, 4, 8}));
  CHECK(perturb_relation(base, 0, 3) == base);
  CHECK(perturb_relation(base, 1, 3) == relation_algebra(SetOp::Complement, base));
  for (const Rational eta : {Rational(1, 200), Rational(1, 100), Rational(1, 20), Rational(1, 3), Rational(9, 10)}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto mask = perturbation_mask(base, eta, seed);
      CHECK(BigInt(mask.count()) == ceil(eta * 144));
      auto p = perturb_relation(base, eta, seed);
      CHECK(relation_algebra(SetOp::SymDiff, p, base) == mask);
      CHECK(relation_algebra(SetOp::SymDiff, p, mask) == base);
      CHECK(perturb_relation(base, eta, seed) == p);
    }
  }
  auto p = perturb_relation(base, Rational(1, 100), 0);
  CHECK(count_halfgraphs_exact(p, 2).theta_group <= Rational(4, 100));
  auto sub = carrier_from_indices(g, 1, {0, 1, 2});
  auto small = build_relation(sub, sub, PairList{});
  CHECK(perturbation_mask(small, Rational(1, 2), 1).count() == 5);
}

TEST_CASE("linear order relation") {
  auto r = linear_order_relation(cyclic(16), 4);
  CHECK(r.count() == 10);
  CHECK(r.domain().size() == 4);
  CHECK_THROWS_AS(linear_order_relation(cyclic(3), 4), Error);
}
