#pragma once

#include <vector>

#include "algmod/decomp.hpp"
#include "algmod/field.hpp"
#include "algmod/hom.hpp"
#include "algmod/matrix.hpp"
#include "algmod/module.hpp"
#include "algmod/rng.hpp"

namespace testing {

using namespace algmod;

inline FieldPtr gf(std::uint32_t p) { return Field::prime(p); }
inline GroupSpec c3c3() { return GroupSpec{3, 2}; }

/// n x n shift with J e_{i+1} = e_i.
inline Matrix shift(FieldPtr f, std::size_t n) {
  Matrix j(f, n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    j(i, i + 1) = 1;
  }
  return j;
}

inline Matrix mat(FieldPtr f, std::size_t r, std::size_t c, std::vector<std::int64_t> const& e) {
  return Matrix(std::move(f), r, c, e);
}

inline Module mod2(std::uint32_t p, Matrix a, Matrix b) {
  auto f = a.field_ptr();
  return Module(GroupSpec{p, 2}, f, {std::move(a), std::move(b)});
}

/// (J, 0) of dimension 3 over GF(3).
inline Module j0() {
  auto f = gf(3);
  return mod2(3, shift(f, 3), Matrix(f, 3, 3));
}
inline Module zero_j() {
  auto f = gf(3);
  return mod2(3, Matrix(f, 3, 3), shift(f, 3));
}
inline Module trivial3() { return trivial_module(c3c3(), gf(3)); }
inline Module regular3() { return regular_module(c3c3(), gf(3)); }

inline Matrix random_matrix(FieldPtr f, std::size_t r, std::size_t c, Rng& rng) {
  Matrix m(f, r, c);
  for (auto& x : m.data()) {
    x = Elem(rng.below(f->order()));
  }
  return m;
}

inline Matrix random_invertible(FieldPtr f, std::size_t n, Rng& rng) {
  for (;;) {
    Matrix m = random_matrix(f, n, n, rng);
    if (is_invertible(m)) {
      return m;
    }
  }
}

/// Random quotient of a free module of rank `copies` with dimension in
/// [1, max_dim], conjugated by a random base change.
inline Module random_module(GroupSpec g, FieldPtr f, std::size_t max_dim, Rng& rng, std::size_t copies = 1) {
  Module free = free_module(g, f, copies);
  std::size_t const n = free.dim();
  for (;;) {
    std::size_t seeds = 1 + rng.below(3);
    Matrix s = random_matrix(f, n, seeds, rng);
    // Bias towards the radical so quotients are not always tiny.
    for (std::size_t c = 0; c < copies; ++c) {
      for (std::size_t k = 0; k < seeds; ++k) {
        if (rng.below(4) != 0) {
          s(c * monomial_count(g), k) = 0;
        }
      }
    }
    Matrix sub = spin(free, s);
    if (sub.cols() >= n || n - sub.cols() > max_dim) {
      continue;
    }
    Module q = quotient(free, sub);
    return conjugate(q, random_invertible(f, q.dim(), rng));
  }
}

/// Random module of dimension <= max_dim, mixing quotients and direct sums.
inline Module random_small_module(Rng& rng, std::size_t max_dim) {
  auto g = c3c3();
  auto f = gf(3);
  std::size_t const kind = rng.below(3);
  if (kind == 0 && max_dim >= 2) {
    Module a = random_module(g, f, max_dim - 1, rng);
    Module b = random_module(g, f, max_dim - a.dim(), rng);
    Module s = direct_sum(a, b);
    return conjugate(s, random_invertible(f, s.dim(), rng));
  }
  if (kind == 1) {
    return dual(random_module(g, f, max_dim, rng));
  }
  return random_module(g, f, max_dim, rng);
}

}  // namespace testing
