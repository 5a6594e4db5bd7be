#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "algmod/decomp.hpp"
#include "algmod/module.hpp"
#include "algmod/rng.hpp"

namespace algmod {

// --- periodicity ----------------------------------------------------------

enum class PeriodicVerdict { Periodic, NonPeriodic, Projective, Unknown };
std::string to_string(PeriodicVerdict v);

struct LineSample {
  Elem lambda1 = 0;
  Elem lambda2 = 0;
  bool free = false;
};

struct PeriodicityReport {
  PeriodicVerdict verdict = PeriodicVerdict::Unknown;
  int period = 0;      ///< 1 or 2 when Periodic
  int complexity = -1;  ///< 0, 1 or 2; -1 when undetermined
  /// Isomorphism Omega^period(m) -> m, when Periodic.
  std::optional<Matrix> witness;
  /// Sampled lines as element codes of GF(p^extension_degree).
  std::uint32_t extension_degree = 1;
  std::vector<LineSample> lines;
  std::string note;

  std::size_t non_free_lines() const noexcept;
};

/// Freeness of m restricted to the shifted cyclic subgroup 1 + l1 A1 + l2 A2,
/// with lambda given over `ext` (same characteristic).  Rank 2 only.
bool shifted_unit_free_test(Module const& m, FieldPtr const& ext, Elem lambda1, Elem lambda2);

/// All lines of P^1(GF(p^e)) for the smallest e with p^e + 1 > dim m.
std::vector<LineSample> sample_lines(Module const& m, std::uint32_t& extension_degree);

PeriodicityReport periodicity(Module const& m, std::uint64_t seed = kDefaultSeed);

// --- registry -------------------------------------------------------------

struct ClassEntry {
  std::string label;
  Module module;
  bool absolutely_indecomposable = false;
  std::optional<PeriodicVerdict> periodic;
};

/// Catalogue of pairwise non-isomorphic indecomposable modules.  Labels are
/// the prefix followed by the discovery index.
class IsoClassRegistry {
 public:
  explicit IsoClassRegistry(std::string prefix = "M", std::uint64_t seed = kDefaultSeed);
  IsoClassRegistry(IsoClassRegistry const& other);
  IsoClassRegistry& operator=(IsoClassRegistry const& other);

  /// Index of the class of m, registering it when new; the flag is true for
  /// a new class.
  std::pair<std::size_t, bool> admit(Module const& m);
  std::optional<std::size_t> find(Module const& m) const;

  std::size_t size() const;
  ClassEntry const& at(std::size_t i) const;
  std::vector<ClassEntry> entries() const;
  void set_periodic(std::size_t i, PeriodicVerdict v);

  /// One module file per class plus index.txt ("label dim abs periodic").
  void save(std::string const& dir) const;
  static IsoClassRegistry load(std::string const& dir, std::uint64_t seed = kDefaultSeed);

 private:
  std::string prefix_;
  std::uint64_t seed_;
  std::vector<ClassEntry> entries_;
  mutable std::mutex mu_;
};

// --- tensor closure -------------------------------------------------------

struct ClosureBudget {
  std::size_t max_classes = 64;
  std::size_t max_dim = 4096;
  std::size_t max_steps = 512;
  int omega_window = 6;
};

struct ClosureOptions {
  ClosureBudget budget;
  std::uint64_t seed = kDefaultSeed;
  std::size_t workers = 1;
  bool scan = true;  ///< run the translate scan on new classes
};

struct TableEntry {
  std::size_t a = 0;
  std::size_t b = 0;
  /// (class index, multiplicity), sorted by class index.
  std::vector<std::pair<std::size_t, std::size_t>> classes;
  std::size_t free_rank = 0;
};

struct ClosureCertificate {
  GroupSpec group;
  std::vector<std::string> labels;
  std::vector<Module> modules;
  std::vector<TableEntry> table;  ///< one entry per unordered pair a <= b
};

struct NonAlgebraicCertificate {
  Module base;
  std::size_t n = 0;
  int i = 0;
  bool dual_direction = false;  ///< translate of dual(base) rather than base
  Module summand;
  /// summand -> base^(x)n and back, with projection * inclusion = I.
  Matrix inclusion;
  Matrix projection;
  PeriodicityReport nonperiodicity;
};

enum class ClosureVerdict { Algebraic, NonAlgebraic, Inconclusive };
std::string to_string(ClosureVerdict v);

struct ClosureResult {
  ClosureVerdict verdict = ClosureVerdict::Inconclusive;
  std::optional<ClosureCertificate> algebraic;
  std::optional<NonAlgebraicCertificate> nonalgebraic;
  std::vector<std::string> labels;  ///< classes discovered, in order
  std::vector<std::size_t> levels;  ///< tensor power in which each class was first seen
  std::size_t steps = 0;
  bool flagged_not_absolutely_indecomposable = false;
  std::string note;
};

ClosureResult tensor_closure(Module const& m, ClosureOptions const& opts = {});

/// Compares an indecomposable non-projective summand of base^(x)n against
/// the translates of base and dual(base) with 0 < |i| <= omega_window.
std::optional<NonAlgebraicCertificate> easynonalg_scan(Module const& base,
                                                       Module const& found,
                                                       std::size_t n,
                                                       int omega_window,
                                                       ClosureOptions const& opts = {});

struct VerifyResult {
  bool ok = true;
  std::string message;
};

VerifyResult verify(ClosureCertificate const& cert, std::uint64_t seed = kDefaultSeed);
VerifyResult verify(NonAlgebraicCertificate const& cert, std::uint64_t seed = kDefaultSeed);
VerifyResult verify(Module const& m, PeriodicityReport const& rep);

// --- conjecture harness ---------------------------------------------------

struct HarnessRow {
  Module module;
  bool absolutely_indecomposable = false;
  bool in_scope = false;  ///< p divides dim
  PeriodicityReport periodicity;
  ClosureResult closure;
  bool counterexample = false;
};

struct HarnessReport {
  std::vector<HarnessRow> rows;
  std::size_t periodic_algebraic = 0;
  std::size_t nonperiodic_nonalgebraic = 0;
  std::size_t counterexamples = 0;
  std::size_t inconclusive = 0;
};

HarnessReport conjecture_harness(std::vector<Module> const& modules, ClosureOptions const& opts = {});

}  // namespace algmod
