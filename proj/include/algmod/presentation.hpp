#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "algmod/matrix.hpp"

namespace algmod {

class Module;

/// A finite presentation of a module as a quotient of a free module.
///
/// Free generator j maps to gens.column(j), a lift of a basis of M / rad M.
/// A vector of the free module KG^t is indexed by j * p^r + monomial.
struct Presentation {
  std::size_t generator_count = 0;
  Matrix gens;  ///< d x t
  /// (generator, monomial) pairs whose images form a basis of M.
  std::vector<std::pair<std::size_t, std::size_t>> spin;
  Matrix spin_basis;          ///< d x d, columns are the spin images
  Matrix spin_basis_inverse;  ///< d x d
  /// Rows generate the relation module (kernel of the cover) as a KG-module.
  Matrix relations;
};

Presentation compute_presentation(Module const& m);
/// Cached on the module.
Presentation const& presentation(Module const& m);

}  // namespace algmod
