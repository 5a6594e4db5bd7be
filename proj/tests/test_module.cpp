#include "doctest.h"
#include "helpers.hpp"

using namespace algmod;
using namespace testing;

TEST_CASE("validate") {
  CHECK(validate(trivial3()).ok);
  auto f = gf(3);
  Matrix e12(f, 3, 3);
  e12(0, 1) = 1;
  auto bad = validate(mod2(3, shift(f, 3), e12));
  CHECK_FALSE(bad.ok);
  CHECK(bad.message.find("commutator nonzero") != std::string::npos);
  auto bad2 = validate(mod2(3, Matrix::identity(f, 3), Matrix(f, 3, 3)));
  CHECK_FALSE(bad2.ok);
  CHECK(bad2.message.find("A^p != 0") != std::string::npos);
  CHECK_THROWS_AS(require_valid(mod2(3, Matrix::identity(f, 3), Matrix(f, 3, 3))), Error);
}

TEST_CASE("shape errors") {
  auto f = gf(3);
  CHECK_THROWS_AS(Module(c3c3(), f, {Matrix(f, 2, 2)}), Error);
  CHECK_THROWS_AS(Module(c3c3(), f, {Matrix(f, 2, 2), Matrix(f, 3, 3)}), Error);
  CHECK_THROWS_AS(Module(c3c3(), gf(5), {Matrix(gf(5), 1, 1), Matrix(gf(5), 1, 1)}), Error);
}

TEST_CASE("trivial and regular modules") {
  CHECK(trivial3().dim() == 1);
  Module r = regular3();
  CHECK(r.dim() == 9);
  CHECK(validate(r).ok);
  Module r2 = regular_module(GroupSpec{2, 2}, gf(2));
  CHECK(r2.dim() == 4);
  for (auto const& a : r2.gens()) {
    // I + A is a fixed-point-free permutation of order 2
    Matrix g = a + Matrix::identity(gf(2), 4);
    CHECK(g * g == Matrix::identity(gf(2), 4));
    for (std::size_t i = 0; i < 4; ++i) {
      std::size_t ones = 0;
      for (std::size_t j = 0; j < 4; ++j) {
        ones += g(i, j);
      }
      CHECK(ones == 1);
      CHECK(g(i, i) == 0);
    }
  }
  CHECK(validate(regular_module(GroupSpec{5, 2}, gf(5))).ok);
  CHECK(validate(regular_module_monomial(GroupSpec{2, 3}, gf(2))).ok);
}

TEST_CASE("direct sums") {
  Module kk = direct_sum(trivial3(), trivial3());
  CHECK(kk.dim() == 2);
  CHECK(kk.gen(0).is_zero());
  CHECK(direct_sum(j0(), regular3()).dim() == 12);
  CHECK_THROWS_AS(direct_sum(trivial3(), trivial_module(GroupSpec{3, 3}, gf(3))), Error);
}

TEST_CASE("tensor products are modules") {
  Rng rng(21);
  for (int t = 0; t < 10; ++t) {
    Module a = random_small_module(rng, 4), b = random_small_module(rng, 4);
    Module ab = tensor(a, b);
    CHECK(ab.dim() == a.dim() * b.dim());
    CHECK(validate(ab).ok);
  }
  CHECK(tensor_power(j0(), 3).dim() == 27);
}

TEST_CASE("dual") {
  Rng rng(22);
  for (int t = 0; t < 10; ++t) {
    Module a = random_small_module(rng, 5);
    Module d = dual(a);
    CHECK(d.dim() == a.dim());
    CHECK(validate(d).ok);
    CHECK(dual(d).gens() == a.gens());
  }
  CHECK(dual(trivial3()).gen(0).is_zero());
}

TEST_CASE("restriction") {
  auto full = SubgroupSpec{c3c3(), {{1, 0}, {0, 1}}};
  Module m = j0();
  CHECK(restrict(m, full).gens() == m.gens());
  Module r = restrict(m, SubgroupSpec{c3c3(), {{0, 1}}});
  CHECK(r.rank() == 1);
  CHECK(r.dim() == 3);
  CHECK(r.gen(0).is_zero());
  Module reg = restrict(regular3(), SubgroupSpec{c3c3(), {{1, 0}}});
  CHECK(rank(reg.gen(0).power(2)) == 3);  // free of rank 3 over C_3
  CHECK_THROWS_AS(restrict(m, SubgroupSpec{c3c3(), {{1, 1}, {2, 2}}}), Error);
  Module diag = restrict(m, SubgroupSpec{c3c3(), {{1, 1}}});
  CHECK(validate(diag).ok);
}

TEST_CASE("monomials and fingerprints") {
  Module m = j0();
  auto g = c3c3();
  CHECK(monomial_count(g) == 9);
  CHECK(monomial_index(g, std::vector<std::uint32_t>{2, 1}) == 7);
  CHECK(monomial_exponents(g, 7) == std::vector<std::uint32_t>{2, 1});
  CHECK(m.monomial(monomial_index(g, std::vector<std::uint32_t>{2, 0})) == shift(gf(3), 3).power(2));
  CHECK(m.fingerprint() != zero_j().fingerprint());
  Rng rng(23);
  Module c = conjugate(m, random_invertible(gf(3), 3, rng));
  CHECK(c.fingerprint() == m.fingerprint());
}

TEST_CASE("submodules and quotients") {
  Module r = regular_module_monomial(c3c3(), gf(3));
  Matrix seed(gf(3), 9, 1);
  seed(1, 0) = 1;  // x_2
  Matrix sub = spin(r, seed);
  CHECK(sub.cols() == 6);
  Module q = quotient(r, sub);
  CHECK(q.dim() == 3);
  CHECK(validate(q).ok);
  CHECK(validate(submodule(r, sub)).ok);
  Matrix e1(gf(3), 9, 1);
  e1(1, 0) = 1;
  CHECK_THROWS_AS(submodule(r, e1), Error);
}
