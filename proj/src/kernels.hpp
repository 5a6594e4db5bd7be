#pragma once

// Row-operation and product kernels.  Prime fields with small p get
// compile-time moduli so the inner loops vectorize.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "algmod/field.hpp"

namespace algmod::detail {

  template <std::uint32_t P>
  inline void axpy_fixed(Elem* dst, Elem const* src, Elem c, std::size_t n) {
    std::uint32_t const cc = c;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint32_t t = std::uint32_t(dst[i]) + cc * src[i];
      dst[i] = Elem(t % P);
    }
  }

  template <std::uint32_t P>
  inline void scale_fixed(Elem* v, Elem c, std::size_t n) {
    std::uint32_t const cc = c;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = Elem((cc * v[i]) % P);
    }
  }

  /// dst += c * src
  inline void axpy(Field const& f, Elem* dst, Elem const* src, Elem c, std::size_t n) {
    if (c == 0) {
      return;
    }
    if (f.is_prime_field()) {
      switch (f.p()) {
        case 2:
          for (std::size_t i = 0; i < n; ++i) {
            dst[i] ^= src[i];
          }
          return;
        case 3: axpy_fixed<3>(dst, src, c, n); return;
        case 5: axpy_fixed<5>(dst, src, c, n); return;
        case 7: axpy_fixed<7>(dst, src, c, n); return;
        default: {
          std::uint32_t const p = f.p(), cc = c;
          for (std::size_t i = 0; i < n; ++i) {
            dst[i] = Elem((std::uint32_t(dst[i]) + cc * src[i]) % p);
          }
          return;
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (src[i] != 0) {
        dst[i] = f.add(dst[i], f.mul(c, src[i]));
      }
    }
  }

  inline void scale(Field const& f, Elem* v, Elem c, std::size_t n) {
    if (c == 1) {
      return;
    }
    if (f.is_prime_field()) {
      switch (f.p()) {
        case 2:
          if (c == 0) {
            for (std::size_t i = 0; i < n; ++i) {
              v[i] = 0;
            }
          }
          return;
        case 3: scale_fixed<3>(v, c, n); return;
        case 5: scale_fixed<5>(v, c, n); return;
        case 7: scale_fixed<7>(v, c, n); return;
        default: {
          std::uint32_t const p = f.p(), cc = c;
          for (std::size_t i = 0; i < n; ++i) {
            v[i] = Elem((cc * v[i]) % p);
          }
          return;
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = f.mul(c, v[i]);
    }
  }

  /// C (m x n) = A (m x k) * B (k x n), row-major.
  inline void matmul(Field const& f,
                     Elem const* a,
                     Elem const* b,
                     Elem* c,
                     std::size_t m,
                     std::size_t k,
                     std::size_t n) {
    if (f.is_prime_field()) {
      std::uint32_t const p = f.p();
      std::uint64_t const sq = std::uint64_t(p - 1) * (p - 1);
      std::size_t const batch = sq == 0 ? k : std::size_t(0xFFFFFFFFull / sq);
      std::vector<std::uint32_t> acc(n);
      for (std::size_t i = 0; i < m; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        std::size_t pending = 0;
        for (std::size_t l = 0; l < k; ++l) {
          std::uint32_t const x = a[i * k + l];
          if (x == 0) {
            continue;
          }
          Elem const* brow = b + l * n;
          for (std::size_t j = 0; j < n; ++j) {
            acc[j] += x * brow[j];
          }
          if (++pending == batch) {
            for (std::size_t j = 0; j < n; ++j) {
              acc[j] %= p;
            }
            pending = 0;
          }
        }
        for (std::size_t j = 0; j < n; ++j) {
          c[i * n + j] = Elem(acc[j] % p);
        }
      }
      return;
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        c[i * n + j] = 0;
      }
      for (std::size_t l = 0; l < k; ++l) {
        Elem const x = a[i * k + l];
        if (x == 0) {
          continue;
        }
        axpy(f, c + i * n, b + l * n, x, n);
      }
    }
  }

}  // namespace algmod::detail
