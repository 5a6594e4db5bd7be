#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "algmod/hom.hpp"
#include "algmod/matrix.hpp"
#include "algmod/module.hpp"
#include "algmod/rng.hpp"

namespace algmod {

struct AlgebraRadical {
  std::vector<Matrix> algebra;
  std::vector<Matrix> radical_basis;
  std::size_t semisimple_dim = 0;
};

/// Jacobson radical of the matrix algebra spanned by `basis`.  Throws when
/// the span is not closed under multiplication.
AlgebraRadical algebra_radical(std::vector<Matrix> const& basis);
/// Same, by exhaustive search for {a : ab nilpotent for all b}.  dim <= 6.
AlgebraRadical algebra_radical_bruteforce(std::vector<Matrix> const& basis);

/// Linearly independent subset spanning the same space.
std::vector<Matrix> span_basis(std::vector<Matrix> const& elems);

struct FittingSplit {
  Module kernel;  ///< on ker theta^n
  Module image;   ///< on im theta^n
  Matrix kernel_basis;
  Matrix image_basis;
};

/// Fitting decomposition m = ker theta^n + im theta^n (n = dim m).
FittingSplit fitting_split(Module const& m, Matrix const& theta);

struct DecomposeOptions {
  std::uint64_t seed = kDefaultSeed;
  std::size_t max_attempts = 200;
};

struct Summand {
  Module module;
  std::size_t multiplicity = 1;
  bool free = false;  ///< module is the regular module on the monomial basis
};

/// m = sum of summands; witness^-1 * A_i * witness is block diagonal with
/// blocks equal to the summand generators, summands in order, each repeated
/// by its multiplicity.
struct Decomposition {
  std::vector<Summand> summands;
  Matrix witness;

  std::size_t free_rank() const noexcept;
  std::size_t summand_count() const noexcept;
  /// The summand list with multiplicities expanded.
  std::vector<Module> expanded() const;
};

Decomposition decompose(Module const& m, DecomposeOptions const& opts = {});

bool is_indecomposable(Module const& m);
bool is_absolutely_indecomposable(Module const& m);
/// Locality of the algebra spanned by `basis` (an endomorphism ring).
bool is_local_algebra(std::vector<Matrix> const& basis);

struct StripResult {
  Module core;
  std::size_t free_rank = 0;
  Matrix core_basis;  ///< columns span the core inside m
  Matrix free_basis;  ///< columns A^mu m_j, monomial-major within each copy
};

/// Splits m = F + C with F free and C projective-free.
StripResult strip_projectives(Module const& m);

/// Isomorphism a.module -> b.module assembled block by block, when the two
/// summand multisets agree.
std::optional<Matrix> isomorphism_from_decompositions(Module const& m,
                                                      Decomposition const& a,
                                                      Module const& n,
                                                      Decomposition const& b,
                                                      IsoOptions const& opts = {});

/// Iso-multiset equality of two decompositions.
bool same_summands(Decomposition const& a, Decomposition const& b, IsoOptions const& opts = {});

}  // namespace algmod
