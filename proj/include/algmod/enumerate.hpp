#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "algmod/algcheck.hpp"
#include "algmod/module.hpp"
#include "algmod/rng.hpp"

namespace algmod {

/// Partitions of d with parts <= max_part, parts non-increasing, in
/// lexicographically decreasing order.
std::vector<std::vector<std::size_t>> partitions(std::size_t d, std::size_t max_part);

/// Direct sum of shift blocks of the given sizes.
Matrix jordan_nilpotent(FieldPtr const& f, std::vector<std::size_t> const& blocks);

/// Basis (as matrices) of the joint centralizer of `mats` in M_d.
std::vector<Matrix> centralizer_basis(FieldPtr const& f, std::size_t d, std::vector<Matrix> const& mats);

/// Lexicographically least generator tuple (row-major entries, generator 1
/// first) in the simultaneous-conjugation orbit of m.  Prime fields, dim <= 4.
Module canonical_representative(Module const& m);

/// |Aut(m)| by enumerating End(m); nullopt when p^dim End exceeds `limit`.
std::optional<std::uint64_t> automorphism_count(Module const& m, std::uint64_t limit = std::uint64_t(1) << 22);

/// |GL_d(p)|; nullopt on overflow.
std::optional<std::uint64_t> general_linear_order(std::uint32_t p, std::size_t d);

/// Number of commuting pairs of d x d matrices with A^p = B^p = 0, counted
/// directly; nullopt when p^(d*d) exceeds `limit`.
std::optional<std::uint64_t> count_commuting_pairs(std::uint32_t p, std::size_t d, std::uint64_t limit = 1u << 22);

struct CensusOptions {
  std::uint64_t seed = kDefaultSeed;
  std::size_t workers = 1;
  std::size_t max_candidates = 2'000'000;
  bool canonicalize = true;   ///< canonical representatives (dim <= 4)
  bool periodicity = true;    ///< periodicity verdict per indecomposable class
  bool orbit_sizes = true;    ///< |GL| / |Aut| per class when computable
};

struct CensusClass {
  std::string label;
  Module module;
  bool indecomposable = false;
  bool absolutely_indecomposable = false;
  std::optional<std::uint64_t> orbit_size;
  std::optional<PeriodicVerdict> periodic;
  std::optional<ClosureVerdict> algebraic;
};

struct CensusResult {
  std::uint32_t p = 0;
  std::size_t dim = 0;
  bool complete = true;   ///< false when the candidate budget tripped
  std::size_t candidates = 0;
  std::size_t total_classes = 0;           ///< all iso classes, decomposable included
  std::size_t indecomposable_count = 0;
  std::size_t abs_indecomposable_count = 0;
  std::size_t periodic_count = 0;          ///< among indecomposables
  std::size_t swap_classes = 0;            ///< indecomposables up to swapping the generators
  std::size_t automorphism_classes = 0;    ///< indecomposables up to Aut(C_p x C_p)
  /// Sum of orbit sizes over all classes, when every orbit size is known.
  std::optional<std::uint64_t> orbit_pair_total;
  /// Direct count of commuting nilpotent pairs, when cheap.
  std::optional<std::uint64_t> direct_pair_total;
  std::vector<CensusClass> classes;  ///< indecomposables only when so requested
  std::string note;
};

/// Iso classes of K[C_p x C_p]-modules of dimension d over GF(p).
CensusResult enumerate_modules(std::uint32_t p,
                               std::size_t d,
                               bool indecomposable_only,
                               CensusOptions const& opts = {});

/// Module file per class plus index.txt ("label dim indec abs periodic orbit").
void save_census(CensusResult const& c, std::string const& dir);

}  // namespace algmod
