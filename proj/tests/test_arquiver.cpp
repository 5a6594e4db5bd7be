#include <doctest.h>

#include "algmod/algcheck.hpp"
#include "algmod/arquiver.hpp"
#include "algmod/heller.hpp"
#include "algmod/io.hpp"
#include "helpers.hpp"

using namespace testing;

namespace {

Signature sig(std::string const& s) { return Signature::parse(s); }

std::vector<Signature> seed_list() {
  return {sig("x^0"), sig("x^0 y^0"), sig("x^0 x^0"), sig("x^0 y^1 z^-2"), sig("a^3 a^3 b^0"), sig("x^0 x^1")};
}

}  // namespace

TEST_CASE("signature multiset arithmetic") {
  Signature a = sig("x^1 x^1 y^0");
  CHECK(a.size() == 3);
  CHECK(a.count("x", 1) == 2);
  CHECK((a + sig("y^0")).count("y", 0) == 2);
  auto d = a.minus(sig("x^1"));
  REQUIRE(d);
  CHECK(*d == sig("x^1 y^0"));
  CHECK_FALSE(a.minus(sig("x^2")));
  CHECK(a.shifted(-1) == sig("x^0 x^0 y^-1"));
  CHECK(a.has_distinct_shifts() == false);
  CHECK(sig("x^1 x^2").has_distinct_shifts());
  CHECK(sig("x^4 x^1").normalized({{"x", 3}}) == sig("x^1 x^1"));
  CHECK(Signature::parse(a.str()) == a);
  CHECK(sig("x") == sig("x^0"));
  CHECK_THROWS_AS(sig("x^a"), ParseError);
  CHECK_THROWS_AS(sig("1x^0"), ParseError);
}

TEST_CASE("closed formula examples") {
  Signature x = sig("x^0");
  CHECK(signature_formula(4, 0, x) == sig("x^4"));
  CHECK(signature_formula(0, 1, x) == sig("x^1 x^-1"));
  CHECK(signature_formula(0, 2, x) == sig("x^2 x^0 x^-2"));
  CHECK(signature_formula(1, 3, sig("x^0 y^0")).size() == 8);
  CHECK_THROWS_AS(signature_formula(0, -1, x), Error);
}

TEST_CASE("propagation matches the closed formula") {
  for (auto const& row0 : seed_list()) {
    InterlacedGrid g = propagate(row0, -6, 6, 6);
    for (int j = 0; j <= 6; ++j) {
      for (int i = -6; i <= 6; ++i) {
        CHECK(g.at(i, j) == signature_formula(i, j, row0));
        CHECK(g.at(i, j).size() == std::size_t(j + 1) * row0.size());
      }
    }
    CHECK(diamond_check(g).ok);
    CHECK(diamond_check(formula_grid(row0, -6, 6, 6)).ok);
  }
  CHECK(propagate(sig("x^0"), 0, 0, 2).at(0, 2) == sig("x^2 x^0 x^-2"));
  CHECK_THROWS_AS(propagate(Signature{}, -1, 1, 2), Error);
}

TEST_CASE("propagation is shift equivariant") {
  for (auto const& row0 : seed_list()) {
    for (int s : {-3, 1, 2}) {
      InterlacedGrid a = propagate(row0.shifted(s), -4, 4, 4);
      InterlacedGrid b = propagate(row0, -4 + s, 4 + s, 4);
      for (int j = 0; j <= 4; ++j) {
        for (int i = -4; i <= 4; ++i) {
          CHECK(a.at(i, j) == b.at(i + s, j));
        }
      }
    }
  }
}

TEST_CASE("diamond check finds an injected fault") {
  InterlacedGrid g = propagate(sig("x^0 y^0"), -3, 3, 4);
  g.cells[{0, 2}].add("z", 0);
  auto r = diamond_check(g);
  CHECK_FALSE(r.ok);
  // (0, 2) is the top of the diamond centred at (0, 1); scanning is row by row.
  CHECK(r.where == Coord{0, 1});

  g = propagate(sig("x^0"), -3, 3, 4);
  g.cells[{2, 0}] = sig("x^5");
  r = diamond_check(g);
  CHECK_FALSE(r.ok);
  CHECK(r.where == Coord{2, 0});

  g = propagate(sig("x^0"), -3, 3, 4);
  g.cells.erase({1, 3});
  CHECK_FALSE(diamond_check(g).ok);
}

TEST_CASE("algebraic positions lie in row 0") {
  for (auto const& row0 : seed_list()) {
    InterlacedGrid g = propagate(row0, -5, 5, 5);
    auto pos = algebraic_positions(g);
    for (auto const& [i, j] : pos) {
      CHECK(j == 0);
    }
    if (!row0.has_distinct_shifts()) {
      CHECK(pos.size() == 11);
    }
  }
  InterlacedGrid g = propagate(sig("x^0"), -5, 5, 5);
  CHECK(algebraic_positions(g, 0) == std::set<Coord>{{0, 0}});
  CHECK(algebraic_positions(g, 3) == std::set<Coord>{{3, 0}});
  CHECK(algebraic_positions(g, 9).empty());
}

TEST_CASE("periodic symbol families") {
  InterlacedGrid g = propagate(sig("x^0"), -2, 2, 3, {{"x", 2}});
  CHECK(g.at(0, 1) == sig("x^1 x^1"));
  CHECK(diamond_check(g).ok);
  // With a periodic family, higher rows can be algebraic candidates.
  auto pos = algebraic_positions(g);
  CHECK(pos.count({0, 1}) == 1);
}

TEST_CASE("grid text round trip") {
  InterlacedGrid g = propagate(sig("x^0 y^1"), -2, 2, 3);
  std::string s = write_grid(g);
  InterlacedGrid back = read_grid(s);
  CHECK(back.i_min == -2);
  CHECK(back.j_max == 3);
  CHECK(back.row0 == g.row0);
  CHECK(back.cells == g.cells);
  CHECK(write_grid(back) == s);
  CHECK_THROWS_AS(read_grid("row0 x^0\n"), ParseError);
  CHECK_THROWS_AS(read_grid("range 0 1 1\nrow0 x^0\n5 0 x^5\n"), ParseError);
  CHECK_THROWS_AS(read_grid("range 0 1 1\nrow0 x^0\n0 0 x^q\n"), ParseError);
}

TEST_CASE("row 0 from a restriction") {
  // Omega(k) restricted to the first factor: non-free part gives the seed.
  Module om = omega(trivial3());
  Module res = restrict(om, SubgroupSpec{c3c3(), {{1, 0}}});
  Decomposition d = decompose(res);
  IsoClassRegistry reg("x");
  Signature s = signature_from_decomposition(d, reg);
  CHECK_FALSE(s.empty());
  std::size_t total = 0;
  for (auto const& sum : d.summands) {
    total += sum.free ? 0 : sum.multiplicity;
  }
  CHECK(s.size() == total);
  CHECK(diamond_check(propagate(s, -2, 2, 2)).ok);
}
