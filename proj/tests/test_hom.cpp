#include "doctest.h"
#include "helpers.hpp"

#include "algmod/presentation.hpp"

using namespace algmod;
using namespace testing;

TEST_CASE("hom space examples") {
  CHECK(hom_space(trivial3(), trivial3()).dim() == 1);
  Module r = regular3();
  Rng rng(31);
  for (int t = 0; t < 5; ++t) {
    Module m = random_small_module(rng, 5);
    CHECK(hom_space(r, m).dim() == m.dim());
  }
  HomSpace h = hom_space(j0(), zero_j());
  REQUIRE(h.dim() == 1);
  Matrix const& phi = h.basis[0];
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK((phi(i, j) != 0) == (i == 0 && j == 2));
    }
  }
}

TEST_CASE("presentation reconstructs the module") {
  Rng rng(32);
  for (int t = 0; t < 10; ++t) {
    Module m = random_small_module(rng, 6);
    Presentation const& p = presentation(m);
    CHECK(p.spin_basis * p.spin_basis_inverse == Matrix::identity(m.field_ptr(), m.dim()));
    CHECK(p.generator_count == m.dim() - rank(Matrix::hstack(std::span<Matrix const>(m.gens()))));
  }
}

TEST_CASE("presentation hom agrees with the direct solve") {
  Rng rng(33);
  for (int t = 0; t < 25; ++t) {
    Module a = random_small_module(rng, 5), b = random_small_module(rng, 5);
    HomSpace h = hom_space(a, b);
    HomSpace d = hom_space_direct(a, b);
    CHECK(h.dim() == d.dim());
    for (auto const& phi : h.basis) {
      CHECK(is_homomorphism(phi, a, b));
    }
  }
}

TEST_CASE("isomorphism examples") {
  Rng rng(34);
  Module m = j0();
  CHECK(is_isomorphic(m, m));
  Module c = conjugate(m, random_invertible(gf(3), 3, rng));
  auto iso = find_isomorphism(m, c);
  REQUIRE(iso.has_value());
  CHECK(is_homomorphism(*iso, m, c));
  CHECK_FALSE(is_isomorphic(j0(), zero_j()));
  CHECK_FALSE(is_isomorphic(trivial3(), dual(j0())));
}

TEST_CASE("isomorphism fallback is exact") {
  Rng rng(35);
  IsoOptions no_draws{0, 0};
  for (int t = 0; t < 10; ++t) {
    Module a = random_small_module(rng, 5);
    Module c = conjugate(a, random_invertible(gf(3), a.dim(), rng));
    auto iso = find_isomorphism(a, c, no_draws);
    REQUIRE(iso.has_value());
    CHECK(is_homomorphism(*iso, a, c));
    CHECK(is_invertible(*iso));
  }
  Module dec = direct_sum(j0(), direct_sum(trivial3(), trivial3()));
  Module dec2 = direct_sum(trivial3(), direct_sum(j0(), trivial3()));
  CHECK(find_isomorphism(dec, dec2, no_draws).has_value());
  CHECK_FALSE(find_isomorphism(dec, direct_sum(zero_j(), direct_sum(trivial3(), trivial3())), no_draws));
}

TEST_CASE("tensor identities up to isomorphism") {
  Rng rng(36);
  for (int t = 0; t < 8; ++t) {
    Module a = random_small_module(rng, 3), b = random_small_module(rng, 3), c = random_small_module(rng, 2);
    CHECK(is_isomorphic(tensor(a, b), tensor(b, a)));
    CHECK(is_isomorphic(tensor(tensor(a, b), c), tensor(a, tensor(b, c))));
    CHECK(is_isomorphic(dual(tensor(a, b)), tensor(dual(a), dual(b))));
    CHECK(is_isomorphic(tensor(trivial3(), a), a));
    CHECK(is_isomorphic(dual(dual(a)), a));
  }
  CHECK(is_isomorphic(dual(regular3()), regular3()));
}

TEST_CASE("restriction commutes with tensor and dual") {
  Rng rng(37);
  std::vector<SubgroupSpec> subs{{c3c3(), {{1, 0}}}, {c3c3(), {{1, 2}}}, {c3c3(), {{2, 1}, {0, 1}}}};
  for (int t = 0; t < 6; ++t) {
    Module a = random_small_module(rng, 3), b = random_small_module(rng, 3);
    for (auto const& h : subs) {
      CHECK(is_isomorphic(restrict(tensor(a, b), h), tensor(restrict(a, h), restrict(b, h))));
      CHECK(is_isomorphic(restrict(dual(a), h), dual(restrict(a, h))));
    }
  }
}

TEST_CASE("hom dimension is conjugation invariant") {
  Rng rng(38);
  for (int t = 0; t < 8; ++t) {
    Module a = random_small_module(rng, 4), b = random_small_module(rng, 4);
    Module ca = conjugate(a, random_invertible(gf(3), a.dim(), rng));
    CHECK(hom_space(a, b).dim() == hom_space(ca, b).dim());
    CHECK(hom_space(b, a).dim() == hom_space(b, ca).dim());
  }
}
