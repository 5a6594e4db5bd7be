#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "algmod/error.hpp"

namespace algmod {

/// Field elements are stored as integers in [0, q).  For GF(p^e) the integer
/// is the base-p encoding of the coefficient list c_0 + c_1 p + ... of the
/// residue polynomial, so prime-field constants embed as themselves.
using Elem = std::uint16_t;

struct FieldSpec {
  std::uint32_t p = 2;
  std::uint32_t e = 1;
  /// Low-to-high coefficients of a monic degree-e polynomial (size e + 1).
  /// Empty for prime fields.
  std::vector<std::uint32_t> modulus;

  bool operator==(FieldSpec const&) const = default;
};

bool is_prime(std::uint64_t n);

// Dense polynomials over GF(p), low-to-high coefficients, no trailing zeros.
namespace poly {
  using Poly = std::vector<std::uint32_t>;

  void trim(Poly& a);
  Poly add(Poly const& a, Poly const& b, std::uint32_t p);
  Poly sub(Poly const& a, Poly const& b, std::uint32_t p);
  Poly mul(Poly const& a, Poly const& b, std::uint32_t p);
  Poly mod(Poly const& a, Poly const& m, std::uint32_t p);
  Poly divide(Poly const& a, Poly const& m, std::uint32_t p);
  Poly gcd(Poly a, Poly b, std::uint32_t p);
  Poly make_monic(Poly a, std::uint32_t p);
  Poly derivative(Poly const& a, std::uint32_t p);
  /// base^exp mod m.
  Poly powmod(Poly const& base, std::uint64_t exp, Poly const& m, std::uint32_t p);
  bool is_irreducible(Poly const& f, std::uint32_t p);
  /// First monic irreducible of degree e, scanning lower coefficients as a
  /// base-p integer with c_0 least significant.
  Poly first_irreducible(std::uint32_t p, std::uint32_t e);
  /// One monic irreducible factor of f (deg f >= 1).  Equal-degree splitting
  /// is randomized from `seed`; the result is always a true factor.
  Poly irreducible_factor(Poly const& f, std::uint32_t p, std::uint64_t seed);
}  // namespace poly

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
 public:
  /// GF(p).  Throws if p is not prime.
  static FieldPtr prime(std::uint32_t p);
  /// GF(p^e) with the lexicographically first irreducible modulus.
  static FieldPtr extension(std::uint32_t p, std::uint32_t e);
  /// Field from an explicit spec; the modulus is checked for irreducibility.
  static FieldPtr make(FieldSpec const& spec);

  FieldSpec const& spec() const noexcept { return spec_; }
  std::uint32_t p() const noexcept { return spec_.p; }
  std::uint32_t e() const noexcept { return spec_.e; }
  std::uint32_t order() const noexcept { return q_; }
  bool is_prime_field() const noexcept { return spec_.e == 1; }

  Elem add(Elem a, Elem b) const noexcept {
    if (spec_.e == 1) {
      std::uint32_t s = std::uint32_t(a) + b;
      return Elem(s >= spec_.p ? s - spec_.p : s);
    }
    return add_ext(a, b);
  }
  Elem neg(Elem a) const noexcept {
    if (spec_.e == 1) {
      return Elem(a == 0 ? 0 : spec_.p - a);
    }
    return neg_ext(a);
  }
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const noexcept {
    if (spec_.e == 1) {
      return Elem((std::uint32_t(a) * b) % spec_.p);
    }
    if (a == 0 || b == 0) {
      return 0;
    }
    std::uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) {
      s -= q_ - 1;
    }
    return exp_[s];
  }
  /// Throws on zero.
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t k) const noexcept;
  Elem from_int(std::int64_t v) const noexcept;
  /// Coefficient list of an element (size e).
  std::vector<std::uint32_t> coefficients(Elem a) const;
  /// A generator of the multiplicative group.
  Elem primitive() const noexcept { return primitive_; }

  bool same_as(Field const& other) const noexcept { return spec_ == other.spec_; }
  std::string name() const;

 private:
  explicit Field(FieldSpec spec);
  Elem add_ext(Elem a, Elem b) const noexcept;
  Elem neg_ext(Elem a) const noexcept;

  FieldSpec spec_;
  std::uint32_t q_;
  Elem primitive_ = 1;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;
  std::vector<Elem> inv_;
};

}  // namespace algmod
