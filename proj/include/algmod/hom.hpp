#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "algmod/matrix.hpp"
#include "algmod/module.hpp"
#include "algmod/rng.hpp"

namespace algmod {

/// Basis of Hom_KG(source, target); each element is target.dim x source.dim.
struct HomSpace {
  Module source;
  Module target;
  std::vector<Matrix> basis;

  std::size_t dim() const noexcept { return basis.size(); }
  /// sum_i coeffs[i] * basis[i]
  Matrix combination(std::vector<Elem> const& coeffs) const;
  Matrix random_element(Rng& rng) const;
};

/// Hom space solved through a presentation of the source (or of the dual of
/// the target, whichever gives the smaller system).
HomSpace hom_space(Module const& m, Module const& n);
/// Hom space solved from the full intertwining system phi A = B phi.
/// Quadratic in dim m * dim n; intended for small modules and as a cross-check.
HomSpace hom_space_direct(Module const& m, Module const& n);

struct IsoOptions {
  std::uint64_t seed = 0;
  std::size_t random_draws = 40;
};

/// An invertible homomorphism m -> n, if one exists.
std::optional<Matrix> find_isomorphism(Module const& m, Module const& n, IsoOptions const& opts = {});
bool is_isomorphic(Module const& m, Module const& n, IsoOptions const& opts = {});

bool is_homomorphism(Matrix const& phi, Module const& m, Module const& n);

}  // namespace algmod
