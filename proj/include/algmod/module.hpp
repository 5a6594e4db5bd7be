#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "algmod/field.hpp"
#include "algmod/matrix.hpp"

namespace algmod {

/// Elementary abelian group (C_p)^rank.
struct GroupSpec {
  std::uint32_t p = 2;
  std::uint32_t rank = 1;

  std::size_t order() const noexcept;
  bool operator==(GroupSpec const&) const = default;
};

/// Subgroup spanned by `basis` vectors of GF(p)^rank (exponent vectors).
struct SubgroupSpec {
  GroupSpec group;
  std::vector<std::vector<std::uint32_t>> basis;
};

/// Number of monomials x^a with 0 <= a_i < p, i.e. p^rank.
std::size_t monomial_count(GroupSpec const& g) noexcept;
/// Exponent vector of monomial index; the first coordinate is most significant.
std::vector<std::uint32_t> monomial_exponents(GroupSpec const& g, std::size_t idx);
std::size_t monomial_index(GroupSpec const& g, std::span<std::uint32_t const> exps);

namespace detail {
  struct ModuleCache;
}

/// A K[E]-module in A-form: generator g_i acts as I + gens[i].
class Module {
 public:
  Module();
  /// Shapes are checked; the algebraic invariants are checked by validate().
  Module(GroupSpec group, FieldPtr field, std::vector<Matrix> gens);

  static Module zero(GroupSpec group, FieldPtr field);

  GroupSpec const& group() const noexcept { return group_; }
  Field const& field() const noexcept { return *field_; }
  FieldPtr const& field_ptr() const noexcept { return field_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return gens_.size(); }
  std::vector<Matrix> const& gens() const noexcept { return gens_; }
  Matrix const& gen(std::size_t i) const { return gens_.at(i); }

  /// A_1^a_1 ... A_r^a_r for monomial index idx (cached).
  Matrix const& monomial(std::size_t idx) const;
  /// Ranks of every monomial action; an isomorphism invariant.
  std::vector<std::size_t> const& fingerprint() const;

  detail::ModuleCache& cache() const;

 private:
  GroupSpec group_;
  FieldPtr field_;
  std::size_t dim_ = 0;
  std::vector<Matrix> gens_;
  std::shared_ptr<detail::ModuleCache> cache_;
};

struct ValidationReport {
  bool ok = true;
  std::string message;

  explicit operator bool() const noexcept { return ok; }
};

ValidationReport validate(Module const& m);
/// Throws Error carrying the violation when m is not a valid module.
void require_valid(Module const& m);
void require_compatible(Module const& a, Module const& b);

Module trivial_module(GroupSpec group, FieldPtr field);
/// The group algebra on the basis of group elements g^a (lexicographic a).
Module regular_module(GroupSpec group, FieldPtr field);
/// KG on the monomial basis x^a, x_i = g_i - 1; isomorphic to regular_module.
Module regular_module_monomial(GroupSpec group, FieldPtr field);
/// The free module of rank `copies` on the monomial basis.
Module free_module(GroupSpec group, FieldPtr field, std::size_t copies);

Module direct_sum(Module const& a, Module const& b);
Module direct_sum(std::span<Module const> parts);
Module tensor(Module const& a, Module const& b);
Module tensor_power(Module const& a, std::size_t n);
Module dual(Module const& m);
Module restrict(Module const& m, SubgroupSpec const& h);
/// Module with generators P A_i P^-1.
Module conjugate(Module const& m, Matrix const& p);

/// Left inverse L (k x d) of a full-column-rank d x k matrix V: L V = I.
Matrix left_inverse(Matrix const& v);
/// Action on an invariant subspace spanned by the columns of v.
Module submodule(Module const& m, Matrix const& v);
/// Action on m / span(columns of v); `complement_out` receives the chosen
/// complement basis (columns) when non-null.
Module quotient(Module const& m, Matrix const& v, Matrix* complement_out = nullptr);
/// Basis (columns) of the smallest submodule containing the given columns.
Matrix spin(Module const& m, Matrix const& seeds);

}  // namespace algmod
