#include "doctest.h"
#include "oracle/brute.hpp"
#include "stabkit/error.hpp"
#include "stabkit/group.hpp"

#include <numeric>
#include <sstream>

using namespace stabkit;

namespace {

std::vector<GroupPtr> small_catalogue() {
  return {cyclic(1),   cyclic(2),   cyclic(5),          cyclic(12),        product({cyclic(2), cyclic(4)}),
          dihedral(3), dihedral(4), elementary_abelian(2, 4), elementary_abelian(3, 2), heisenberg(2),
          product({dihedral(3), cyclic(2)})};
}

std::vector<std::size_t> members_of(const Bitset& b) { return b.indices(); }

}  // namespace

TEST_CASE("cyclic and product orders") {
  auto z5 = cyclic(5);
  CHECK(z5->order() == 5);
  CHECK(z5->identity().index == 0);
  CHECK(z5->mul(3, 4) == 2);
  CHECK(product({cyclic(2), cyclic(4)})->order() == 8);
  CHECK(elementary_abelian(2, 3)->order() == 8);
  CHECK(dihedral(4)->order() == 8);
  CHECK_FALSE(dihedral(4)->is_abelian());
  CHECK(heisenberg(3)->order() == 27);
  CHECK_FALSE(heisenberg(3)->is_abelian());
  CHECK(product({cyclic(3), cyclic(3)})->is_abelian());
}

TEST_CASE("product coordinates: first factor most significant") {
  auto g = product({cyclic(2), cyclic(4)});
  CHECK(g->factor_coordinates(5) == std::vector<std::size_t>{1, 1});
  CHECK(g->mul(5, 3) == 4);  // (1,1)+(0,3) = (1,0)
}

TEST_CASE("non-associative table is rejected with a witness") {
  // Order 3 loop: identity 0, inverses exist, 1*1 = 1 breaks associativity.
  std::vector<std::size_t> t = {0, 1, 2, 1, 1, 0, 2, 0, 1};
  try {
    cayley_table(3, t);
    FAIL("expected AxiomViolation");
  } catch (const AxiomViolation& e) {
    CHECK(e.kind() == ErrorKind::AxiomViolation);
    CHECK((e.axiom() == "associativity" || e.axiom() == "inverse"));
    CHECK_FALSE(e.witness().empty());
  }
}

TEST_CASE("associativity violation is reported as such") {
  // Identity 0, every element self-inverse, table is a Latin square but not a group (order 5).
  std::vector<std::size_t> t = {0, 1, 2, 3, 4,  //
                                1, 0, 3, 4, 2,  //
                                2, 4, 0, 1, 3,  //
                                3, 2, 4, 0, 1,  //
                                4, 3, 1, 2, 0};
  try {
    cayley_table(5, t);
    FAIL("expected AxiomViolation");
  } catch (const AxiomViolation& e) {
    CHECK(e.axiom() == "associativity");
    CHECK(e.witness().size() == 3);
  }
}

TEST_CASE("closure and identity violations") {
  CHECK_THROWS_AS(cayley_table(2, {0, 1, 1, 2}), AxiomViolation);
  CHECK_THROWS_AS(cayley_table(2, {1, 0, 0, 1}), AxiomViolation);
  CHECK_THROWS_AS(cayley_table(2, {0, 1, 1}), Error);
}

TEST_CASE("evaluate words") {
  auto z5 = cyclic(5), z6 = cyclic(6);
  CHECK(evaluate(*z5, {{z5->element(2), 1}, {z5->element(4), 1}}).index == 1);
  CHECK(evaluate(*z6, {{z6->element(4), -1}}).index == 2);
  for (auto& g : small_catalogue()) CHECK(evaluate(*g, {}) == g->identity());
  CHECK_THROWS_AS(evaluate(*z5, {{z6->element(1), 1}}), Error);
  try {
    evaluate(*z5, {{z6->element(1), 1}});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CrossGroupElement);
  }
}

TEST_CASE("exponent and orders") {
  CHECK(exponent_and_orders(*product({cyclic(2), cyclic(4)})).exponent == 4);
  CHECK(exponent_and_orders(*product({cyclic(3), cyclic(3)})).exponent == 3);
  CHECK(exponent_and_orders(*cyclic(6)).orders == std::vector<std::size_t>{1, 6, 3, 2, 3, 6});
  CHECK(exponent_and_orders(*dihedral(4)).exponent == 4);
  CHECK(exponent_and_orders(*heisenberg(3)).exponent == 3);
}

TEST_CASE("associativity through evaluate, exhaustive up to order 16") {
  for (auto& g : small_catalogue()) {
    if (g->order() > 16) continue;
    for (std::size_t a = 0; a < g->order(); ++a)
      for (std::size_t b = 0; b < g->order(); ++b)
        for (std::size_t c = 0; c < g->order(); ++c) {
          auto ab = evaluate(*g, {{g->element(a), 1}, {g->element(b), 1}});
          auto bc = evaluate(*g, {{g->element(b), 1}, {g->element(c), 1}});
          REQUIRE(g->mul(ab.index, c) == g->mul(a, bc.index));
        }
  }
}

TEST_CASE("dihedral relations") {
  auto d = dihedral(5);
  const std::size_t r = 1, s = 5;
  CHECK(d->pow(r, 5) == 0);
  CHECK(d->mul(s, s) == 0);
  CHECK(d->mul(d->mul(s, r), s) == d->inv(r));
}

TEST_CASE("subgroups_up_to_index examples") {
  auto z4 = cyclic(4);
  auto s = subgroups_up_to_index(*z4, 2);
  REQUIRE(s.size() == 2);
  CHECK(s[0].order() == 4);
  CHECK(members_of(s[1].members) == std::vector<std::size_t>{0, 2});
  CHECK(s[1].index_in_parent == 2);

  CHECK(subgroups_up_to_index(*product({cyclic(2), cyclic(2)}), 2).size() == 4);

  auto z33 = subgroups_up_to_index(*product({cyclic(3), cyclic(3)}), 3);
  REQUIRE(z33.size() == 5);
  CHECK(z33[0].index_in_parent == 1);
  for (std::size_t i = 1; i < 5; ++i) CHECK(z33[i].index_in_parent == 3);
}

TEST_CASE("subgroup enumeration is complete against subset brute force") {
  for (auto& g : small_catalogue()) {
    if (g->order() > 16) continue;
    for (std::size_t idx : {1, 2, 3, 4, 8, 16}) {
      std::set<std::vector<std::size_t>> got;
      std::size_t prev_index = 0;
      std::vector<std::size_t> prev;
      for (auto& h : subgroups_up_to_index(*g, idx)) {
        auto m = members_of(h.members);
        CHECK(h.index_in_parent * h.order() == g->order());
        CHECK(h.index_in_parent <= idx);
        if (h.index_in_parent == prev_index) CHECK(prev < m);
        CHECK(h.index_in_parent >= prev_index);
        prev_index = h.index_in_parent;
        prev = m;
        got.insert(m);
        CHECK(members_of(subgroup_generated_by(*g, h.generators).members) == m);
      }
      CHECK(got == oracle::subgroups(*g, idx));
    }
  }
}

TEST_CASE("subgroup closure budget") {
  SubgroupSearchOptions tiny;
  tiny.closure_budget = 1;
  CHECK_THROWS_AS(subgroups_up_to_index(*elementary_abelian(2, 4), 16, tiny), BudgetExceeded);
}

TEST_CASE("left cosets") {
  auto z6 = cyclic(6);
  auto h = subgroup_generated_by(*z6, {3});
  auto cs = left_cosets(*z6, h);
  REQUIRE(cs.size() == 3);
  CHECK(members_of(cs[0]) == std::vector<std::size_t>{0, 3});
  CHECK(members_of(cs[1]) == std::vector<std::size_t>{1, 4});
  CHECK(members_of(cs[2]) == std::vector<std::size_t>{2, 5});
  CHECK(left_cosets(*z6, whole_group(*z6)).size() == 1);
  auto v4 = product({cyclic(2), cyclic(2)});
  CHECK(left_cosets(*v4, subgroup_generated_by(*v4, {2})).size() == 2);

  for (auto& g : small_catalogue()) {
    for (auto& sub : subgroups_up_to_index(*g, g->order())) {
      Bitset all(g->order());
      std::size_t total = 0;
      for (auto& c : left_cosets(*g, sub)) {
        CHECK((Bitset(c) &= all).none());
        all |= c;
        total += c.count();
        CHECK(c.count() == sub.order());
      }
      CHECK(total == g->order());
      CHECK(all.count() == g->order());
    }
  }
}

TEST_CASE("subgroup_from_members validates") {
  auto z6 = cyclic(6);
  CHECK(subgroup_from_members(*z6, Bitset::from_indices(6, std::vector<std::size_t>{0, 2, 4})).index_in_parent == 2);
  CHECK_THROWS_AS(subgroup_from_members(*z6, Bitset::from_indices(6, std::vector<std::size_t>{0, 1})), Error);
}

TEST_CASE("cayley table round trip and parse_group") {
  auto d = dihedral(4);
  std::stringstream ss;
  save_cayley_table(*d, ss);
  auto back = load_cayley_table(ss);
  REQUIRE(back->order() == 8);
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = 0; b < 8; ++b) CHECK(back->mul(a, b) == d->mul(a, b));

  CHECK(parse_group("Z5")->order() == 5);
  CHECK(parse_group("D6")->order() == 12);
  CHECK(parse_group("Heis3")->order() == 27);
  CHECK(parse_group("Z2^4")->order() == 16);
  CHECK(parse_group("Z3xZ3")->order() == 9);
  CHECK(parse_group("Z2xD3")->order() == 12);
  CHECK_THROWS_AS(parse_group("Q8"), Error);
  CHECK(parse_group("Z3xZ3")->recipe_hash() == product({cyclic(3), cyclic(3)})->recipe_hash());
  CHECK(parse_group("Z9")->recipe_hash() != parse_group("Z3xZ3")->recipe_hash());
}
