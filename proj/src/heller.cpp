#include "algmod/heller.hpp"

#include "algmod/decomp.hpp"
#include "algmod/presentation.hpp"

namespace algmod {

Matrix radical_submodule(Module const& m) {
  if (m.dim() == 0) {
    return Matrix(m.field_ptr(), 0, 0);
  }
  return column_space(Matrix::hstack(std::span<Matrix const>(m.gens())));
}

CoverData projective_cover(Module const& m) {
  if (m.dim() == 0) {
    throw Error("projective_cover: zero module");
  }
  CoverData out;
  out.module = m;
  Presentation const& pres = presentation(m);
  std::size_t const g = pres.generator_count;
  std::size_t const mono = monomial_count(m.group());
  std::size_t const d = m.dim();
  out.cover_rank = g;
  out.cover_map = Matrix(m.field_ptr(), d, g * mono);
  for (std::size_t j = 0; j < g; ++j) {
    for (std::size_t mu = 0; mu < mono; ++mu) {
      Matrix col = m.monomial(mu) * pres.gens.column(j);
      out.cover_map.set_block(0, j * mono + mu, col);
    }
  }
  out.inclusion = nullspace(out.cover_map);
  // Minimality: the kernel lies in the radical of the free module, i.e. has
  // no component on any free generator x^0.
  for (std::size_t c = 0; c < out.inclusion.cols(); ++c) {
    for (std::size_t j = 0; j < g; ++j) {
      if (out.inclusion(j * mono, c) != 0) {
        throw Error("projective_cover: cover is not minimal");
      }
    }
  }
  Module free = free_module(m.group(), m.field_ptr(), g);
  out.kernel = out.inclusion.cols() ? submodule(free, out.inclusion) : Module::zero(m.group(), m.field_ptr());
  return out;
}

Module omega(Module const& m) {
  Module core = strip_projectives(m).core;
  if (core.dim() == 0) {
    return core;
  }
  return projective_cover(core).kernel;
}

Module omega_inverse(Module const& m) { return dual(omega(dual(m))); }

Module omega_n(Module const& m, int n) {
  Module cur = strip_projectives(m).core;
  for (int i = 0; i < n; ++i) {
    cur = strip_projectives(omega(cur)).core;
  }
  for (int i = 0; i > n; --i) {
    cur = strip_projectives(omega_inverse(cur)).core;
  }
  return cur;
}

}  // namespace algmod
