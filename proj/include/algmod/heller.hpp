#pragma once

#include <cstddef>

#include "algmod/matrix.hpp"
#include "algmod/module.hpp"

namespace algmod {

/// Columns span J(KG) * m = sum of the images of the A_i.
Matrix radical_submodule(Module const& m);

struct CoverData {
  Module module;
  std::size_t cover_rank = 0;
  /// dim m x (cover_rank * p^r); column j * p^r + mu is A^mu applied to the
  /// lift of the j-th top basis vector.
  Matrix cover_map;
  Module kernel;
  /// Columns embed the kernel into the free module of rank cover_rank.
  Matrix inclusion;
};

/// Minimal projective cover; the free module uses the monomial basis.
CoverData projective_cover(Module const& m);

/// Kernel of the projective cover of the projective-free core.
Module omega(Module const& m);
/// dual(omega(dual(m)))
Module omega_inverse(Module const& m);
/// n-fold translate, stripping free summands after every step; n = 0 gives
/// the projective-free core.
Module omega_n(Module const& m, int n);

}  // namespace algmod
