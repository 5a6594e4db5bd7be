#include <doctest.h>

#include <filesystem>

#include "algmod/algcheck.hpp"
#include "algmod/heller.hpp"
#include "helpers.hpp"

using namespace testing;

namespace {

Module j_j2() {
  auto f = gf(3);
  Matrix j = shift(f, 3);
  return mod2(3, j, j * j);
}

// Uniserial (J, cJ); non-free exactly on the line l1 + c l2 = 0.
Module j_cj(Elem c) {
  auto f = gf(3);
  Matrix j = shift(f, 3);
  return mod2(3, j, j.scaled(c));
}

std::size_t class_count(ClosureResult const& r) { return r.labels.size(); }

}  // namespace

TEST_CASE("shifted unit free test") {
  auto f = gf(3);
  CHECK(shifted_unit_free_test(regular3(), f, 1, 0));
  CHECK(shifted_unit_free_test(regular3(), f, 1, 2));
  CHECK(shifted_unit_free_test(regular3(), f, 0, 1));
  CHECK_FALSE(shifted_unit_free_test(trivial3(), f, 1, 1));
  CHECK(shifted_unit_free_test(j_j2(), f, 1, 0));
  CHECK_FALSE(shifted_unit_free_test(j_j2(), f, 0, 1));
  CHECK_THROWS_AS(shifted_unit_free_test(j0(), f, 0, 0), Error);
  Module rank3 = trivial_module(GroupSpec{3, 3}, f);
  CHECK_THROWS_AS(shifted_unit_free_test(rank3, f, 1, 0), Unsupported);
  // Over GF(9): free along every line for the regular module.
  auto f9 = Field::extension(3, 2);
  for (Elem t = 0; t < 9; ++t) {
    CHECK(shifted_unit_free_test(regular3(), f9, 1, t));
  }
}

TEST_CASE("line sampling uses the smallest admissible extension") {
  std::uint32_t e = 0;
  auto lines = sample_lines(trivial3(), e);
  CHECK(e == 1);
  CHECK(lines.size() == 4);
  lines = sample_lines(j0(), e);
  CHECK(e == 1);
  // (J, 0) is free exactly off the line lambda1 = 0.
  for (auto const& l : lines) {
    CHECK(l.free == (l.lambda1 != 0));
  }
  Module om = omega(trivial3());
  lines = sample_lines(om, e);
  CHECK(e == 2);
  CHECK(lines.size() == 10);
}

TEST_CASE("periodicity examples") {
  auto k = periodicity(trivial3());
  CHECK(k.verdict == PeriodicVerdict::NonPeriodic);
  CHECK(k.complexity == 2);
  CHECK(k.non_free_lines() > 1);
  CHECK_FALSE(k.note.empty());

  auto a = periodicity(j0());
  CHECK(a.verdict == PeriodicVerdict::Periodic);
  CHECK(a.complexity == 1);
  REQUIRE(a.witness);
  CHECK(is_homomorphism(*a.witness, omega_n(j0(), a.period), j0()));
  CHECK(is_invertible(*a.witness));

  auto r = periodicity(regular3());
  CHECK(r.verdict == PeriodicVerdict::Projective);
  CHECK(r.complexity == 0);

  CHECK(periodicity(j_j2()).verdict == PeriodicVerdict::Periodic);
  CHECK(periodicity(omega(trivial3())).verdict == PeriodicVerdict::NonPeriodic);

  CHECK_THROWS_AS(periodicity(direct_sum(j0(), zero_j())), Error);
}

TEST_CASE("periodicity reports re-verify") {
  for (Module const& m : {trivial3(), j0(), j_j2(), regular3()}) {
    auto rep = periodicity(m);
    CHECK(verify(m, rep).ok);
  }
  auto rep = periodicity(j0());
  rep.verdict = PeriodicVerdict::NonPeriodic;
  CHECK_FALSE(verify(j0(), rep).ok);
}

TEST_CASE("registry admits each class once") {
  IsoClassRegistry reg("X");
  Rng rng(5);
  auto [i0, n0] = reg.admit(j0());
  CHECK(n0);
  auto [i1, n1] = reg.admit(conjugate(j0(), random_invertible(gf(3), 3, rng)));
  CHECK_FALSE(n1);
  CHECK(i1 == i0);
  auto [i2, n2] = reg.admit(zero_j());
  CHECK(n2);
  CHECK(i2 == 1);
  CHECK(reg.at(1).label == "X1");
  CHECK(reg.at(0).absolutely_indecomposable);
  reg.set_periodic(0, PeriodicVerdict::Periodic);

  auto dir = (std::filesystem::temp_directory_path() / "algmod_registry_test").string();
  std::filesystem::remove_all(dir);
  reg.save(dir);
  IsoClassRegistry back = IsoClassRegistry::load(dir);
  CHECK(back.size() == 2);
  CHECK(back.at(1).label == "X1");
  REQUIRE(back.at(0).periodic);
  CHECK(*back.at(0).periodic == PeriodicVerdict::Periodic);
  CHECK(back.admit(zero_j()).first == 1);
  CHECK(back.admit(trivial3()).second);
  CHECK(back.at(2).label == "X2");
  std::filesystem::remove_all(dir);
}

TEST_CASE("closure of the trivial module") {
  auto r = tensor_closure(trivial3());
  CHECK(r.verdict == ClosureVerdict::Algebraic);
  REQUIRE(r.algebraic);
  CHECK(r.algebraic->modules.size() == 1);
  REQUIRE(r.algebraic->table.size() == 1);
  auto const& e = r.algebraic->table[0];
  CHECK(e.free_rank == 0);
  CHECK(e.classes == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}});
  CHECK(verify(*r.algebraic).ok);
}

TEST_CASE("closure of (J, 0)") {
  auto r = tensor_closure(j0());
  CHECK(r.verdict == ClosureVerdict::Algebraic);
  REQUIRE(r.algebraic);
  CHECK(class_count(r) == 1);
  REQUIRE(r.algebraic->table.size() == 1);
  auto const& e = r.algebraic->table[0];
  CHECK(e.free_rank == 0);
  CHECK(e.classes == std::vector<std::pair<std::size_t, std::size_t>>{{0, 3}});
  CHECK(verify(*r.algebraic).ok);
}

TEST_CASE("closure of the projective module") {
  auto r = tensor_closure(regular3());
  CHECK(r.verdict == ClosureVerdict::Algebraic);
}

TEST_CASE("closure of the first syzygy of k is not algebraic") {
  Module om = omega(trivial3());
  auto r = tensor_closure(om);
  CHECK(r.verdict == ClosureVerdict::NonAlgebraic);
  REQUIRE(r.nonalgebraic);
  auto const& c = *r.nonalgebraic;
  CHECK(c.n == 2);
  CHECK(c.i == 1);
  CHECK_FALSE(c.dual_direction);
  CHECK(c.summand.dim() == 10);
  CHECK(c.nonperiodicity.verdict == PeriodicVerdict::NonPeriodic);
  CHECK(verify(c).ok);
  CHECK(verify(c, 77).ok);

  NonAlgebraicCertificate bad = c;
  bad.i = 2;
  CHECK_FALSE(verify(bad).ok);
  bad = c;
  bad.projection = bad.projection.scaled(2);
  CHECK_FALSE(verify(bad).ok);
}

TEST_CASE("translate scan examples") {
  Module om = omega(trivial3());
  Module om2 = omega_n(trivial3(), 2);
  auto c = easynonalg_scan(om, om2, 2, 6);
  REQUIRE(c);
  CHECK(c->i == 1);
  CHECK_FALSE(easynonalg_scan(j0(), j0(), 2, 6));
  CHECK_FALSE(easynonalg_scan(trivial3(), trivial3(), 2, 6));
  CHECK_FALSE(easynonalg_scan(om, om2, 1, 6));
}

TEST_CASE("closure certificates are rejected when tampered") {
  auto r = tensor_closure(j0());
  REQUIRE(r.algebraic);
  auto cert = *r.algebraic;
  cert.table[0].classes[0].second = 2;
  CHECK_FALSE(verify(cert).ok);
  cert = *r.algebraic;
  cert.table[0].free_rank = 1;
  CHECK_FALSE(verify(cert).ok);
  cert = *r.algebraic;
  cert.table.clear();
  CHECK_FALSE(verify(cert).ok);
  cert = *r.algebraic;
  cert.modules.push_back(j0());
  cert.labels.push_back("dup");
  CHECK_FALSE(verify(cert).ok);
}

TEST_CASE("closure budgets give inconclusive verdicts") {
  ClosureOptions o;
  o.budget.max_steps = 1;
  Module om = omega(trivial3());
  o.scan = false;
  auto r = tensor_closure(om, o);
  CHECK(r.verdict == ClosureVerdict::Inconclusive);
  CHECK(r.steps == 1);
  CHECK(r.labels.size() >= 2);
  o.budget.max_steps = 512;
  o.budget.max_dim = 20;
  r = tensor_closure(om, o);
  CHECK(r.verdict == ClosureVerdict::Inconclusive);
  CHECK(r.note.find("dimension") != std::string::npos);
}

TEST_CASE("closure is independent of the worker count") {
  ClosureOptions one, many;
  many.workers = 4;
  for (Module const& m : {j_j2(), j_cj(2), omega(trivial3())}) {
    auto a = tensor_closure(m, one);
    auto b = tensor_closure(m, many);
    CHECK(a.verdict == b.verdict);
    CHECK(a.labels == b.labels);
    CHECK(a.levels == b.levels);
    if (a.algebraic && b.algebraic) {
      REQUIRE(a.algebraic->table.size() == b.algebraic->table.size());
      for (std::size_t i = 0; i < a.algebraic->table.size(); ++i) {
        CHECK(a.algebraic->table[i].classes == b.algebraic->table[i].classes);
        CHECK(a.algebraic->table[i].free_rank == b.algebraic->table[i].free_rank);
      }
    }
  }
}

TEST_CASE("closure verdicts under duality, translation and adding projectives") {
  for (Module const& m : {j0(), j_j2(), j_cj(1)}) {
    auto base = tensor_closure(m).verdict;
    CHECK(base == ClosureVerdict::Algebraic);
    CHECK(tensor_closure(dual(m)).verdict == base);
    CHECK(tensor_closure(omega(m)).verdict == base);
    CHECK(tensor_closure(direct_sum(m, regular3())).verdict == base);
  }
  Module om = omega(trivial3());
  CHECK(tensor_closure(dual(om)).verdict == ClosureVerdict::NonAlgebraic);
  CHECK(tensor_closure(direct_sum(om, regular3())).verdict == ClosureVerdict::NonAlgebraic);
}

TEST_CASE("closure of (J, J^2) against tensor powers") {
  auto r = tensor_closure(j_j2());
  REQUIRE(r.verdict == ClosureVerdict::Algebraic);
  REQUIRE(r.algebraic);
  CHECK(verify(*r.algebraic).ok);
  auto const& cls = r.algebraic->modules;
  // Every non-projective summand of small tensor powers lies in the closure.
  for (std::size_t n = 2; n <= 4; ++n) {
    Module t = tensor_power(j_j2(), n);
    StripResult st = strip_projectives(t);
    Decomposition d = decompose(st.core);
    for (auto const& s : d.summands) {
      bool hit = false;
      for (auto const& c : cls) {
        hit = hit || (c.dim() == s.module.dim() && is_isomorphic(c, s.module));
      }
      CHECK(hit);
    }
  }
}

TEST_CASE("decomposable inputs close over every summand") {
  auto r = tensor_closure(direct_sum(j0(), zero_j()));
  CHECK(r.verdict == ClosureVerdict::Algebraic);
  REQUIRE(r.algebraic);
  CHECK(verify(*r.algebraic).ok);
  auto bad = tensor_closure(direct_sum(j0(), omega(trivial3())));
  CHECK(bad.verdict == ClosureVerdict::NonAlgebraic);
}

TEST_CASE("harness on small inputs") {
  auto rep = conjecture_harness({trivial3(), regular3()});
  REQUIRE(rep.rows.size() == 2);
  CHECK_FALSE(rep.rows[0].in_scope);
  CHECK(rep.rows[0].periodicity.verdict == PeriodicVerdict::NonPeriodic);
  CHECK(rep.rows[0].closure.verdict == ClosureVerdict::Algebraic);
  CHECK_FALSE(rep.rows[0].counterexample);
  CHECK(rep.rows[1].periodicity.verdict == PeriodicVerdict::Projective);
  CHECK(rep.rows[1].closure.verdict == ClosureVerdict::Algebraic);
  CHECK(rep.counterexamples == 0);

  rep = conjecture_harness({j0(), j_j2()});
  CHECK(rep.periodic_algebraic == 2);
  CHECK(rep.counterexamples == 0);
  for (auto const& row : rep.rows) {
    CHECK(row.in_scope);
    CHECK(row.absolutely_indecomposable);
  }

  auto f = gf(3);
  Module bad = mod2(3, mat(f, 2, 2, {0, 1, 0, 0}), mat(f, 2, 2, {0, 0, 1, 0}));
  CHECK_THROWS_AS(conjecture_harness({bad}), Error);
}
