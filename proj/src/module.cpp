#include "algmod/module.hpp"

#include <deque>
#include <mutex>

#include "module_cache.hpp"

namespace algmod {

std::size_t GroupSpec::order() const noexcept {
  return monomial_count(*this);
}

std::size_t monomial_count(GroupSpec const& g) noexcept {
  std::size_t n = 1;
  for (std::uint32_t i = 0; i < g.rank; ++i) {
    n *= g.p;
  }
  return n;
}

std::vector<std::uint32_t> monomial_exponents(GroupSpec const& g, std::size_t idx) {
  std::vector<std::uint32_t> e(g.rank, 0);
  for (std::size_t i = g.rank; i-- > 0;) {
    e[i] = std::uint32_t(idx % g.p);
    idx /= g.p;
  }
  return e;
}

std::size_t monomial_index(GroupSpec const& g, std::span<std::uint32_t const> exps) {
  std::size_t idx = 0;
  for (std::uint32_t i = 0; i < g.rank; ++i) {
    idx = idx * g.p + exps[i];
  }
  return idx;
}

Module::Module() : cache_(std::make_shared<detail::ModuleCache>()) {}

Module::Module(GroupSpec group, FieldPtr field, std::vector<Matrix> gens)
    : group_(group),
      field_(std::move(field)),
      gens_(std::move(gens)),
      cache_(std::make_shared<detail::ModuleCache>()) {
  if (!field_) {
    throw Error("module without a field");
  }
  if (gens_.size() != group_.rank) {
    throw Error("module has " + std::to_string(gens_.size()) + " generators but the group has rank "
                + std::to_string(group_.rank));
  }
  if (group_.p != field_->p()) {
    throw Error("group order prime differs from the field characteristic");
  }
  dim_ = gens_.empty() ? 0 : gens_[0].rows();
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].rows() != dim_ || gens_[i].cols() != dim_) {
      throw Error("generator " + std::to_string(i + 1) + " is not " + std::to_string(dim_) + "x"
                  + std::to_string(dim_));
    }
    if (!gens_[i].field().same_as(*field_)) {
      throw Error("generator " + std::to_string(i + 1) + " is over a different field");
    }
  }
}

Module Module::zero(GroupSpec group, FieldPtr field) {
  std::vector<Matrix> gens(group.rank, Matrix(field, 0, 0));
  return Module(group, std::move(field), std::move(gens));
}

detail::ModuleCache& Module::cache() const {
  return *cache_;
}

Matrix const& Module::monomial(std::size_t idx) const {
  auto& c = *cache_;
  std::call_once(c.monomials_once, [&] {
    std::size_t const count = monomial_count(group_);
    c.monomials.resize(count);
    // Powers of each generator, then products.
    std::vector<std::vector<Matrix>> powers(group_.rank);
    for (std::uint32_t i = 0; i < group_.rank; ++i) {
      powers[i].push_back(Matrix::identity(field_, dim_));
      for (std::uint32_t k = 1; k < group_.p; ++k) {
        powers[i].push_back(powers[i].back() * gens_[i]);
      }
    }
    for (std::size_t m = 0; m < count; ++m) {
      auto e = monomial_exponents(group_, m);
      // Build from a neighbour already computed: drop the last nonzero exponent.
      std::size_t last = group_.rank;
      for (std::size_t i = group_.rank; i-- > 0;) {
        if (e[i] != 0) {
          last = i;
          break;
        }
      }
      if (last == group_.rank) {
        c.monomials[m] = Matrix::identity(field_, dim_);
        continue;
      }
      auto e2 = e;
      e2[last] = 0;
      c.monomials[m] = c.monomials[monomial_index(group_, e2)] * powers[last][e[last]];
    }
  });
  return c.monomials.at(idx);
}

std::vector<std::size_t> const& Module::fingerprint() const {
  auto& c = *cache_;
  std::call_once(c.fingerprint_once, [&] {
    std::size_t const count = monomial_count(group_);
    c.fingerprint.push_back(dim_);
    for (std::size_t m = 1; m < count; ++m) {
      c.fingerprint.push_back(algmod::rank(monomial(m)));
    }
    // Ranks of the stacked pairs [A_i | A_j] detect radical-layer structure.
    if (group_.rank >= 1 && dim_ > 0) {
      c.fingerprint.push_back(algmod::rank(Matrix::hstack(std::span<Matrix const>(gens_))));
    }
  });
  return c.fingerprint;
}

ValidationReport validate(Module const& m) {
  if (m.group().p != m.field().p()) {
    return {false, "group prime " + std::to_string(m.group().p) + " differs from field characteristic "
                       + std::to_string(m.field().p())};
  }
  for (std::size_t i = 0; i < m.rank(); ++i) {
    if (!m.gen(i).power(m.group().p).is_zero()) {
      return {false, "generator " + std::to_string(i + 1) + ": A^p != 0"};
    }
  }
  for (std::size_t i = 0; i < m.rank(); ++i) {
    for (std::size_t j = i + 1; j < m.rank(); ++j) {
      if (!(m.gen(i) * m.gen(j) == m.gen(j) * m.gen(i))) {
        return {false, "generators " + std::to_string(i + 1) + "," + std::to_string(j + 1)
                           + ": commutator nonzero"};
      }
    }
  }
  return {true, "ok"};
}

void require_valid(Module const& m) {
  auto r = validate(m);
  if (!r) {
    throw Error("invalid module: " + r.message);
  }
}

void require_compatible(Module const& a, Module const& b) {
  if (!(a.group() == b.group())) {
    throw Error("modules for different groups");
  }
  if (!a.field().same_as(b.field())) {
    throw Error("modules over different fields");
  }
}

Module trivial_module(GroupSpec group, FieldPtr field) {
  std::vector<Matrix> gens(group.rank, Matrix(field, 1, 1));
  return Module(group, std::move(field), std::move(gens));
}

Module regular_module(GroupSpec group, FieldPtr field) {
  std::size_t const n = monomial_count(group);
  std::vector<Matrix> gens;
  for (std::uint32_t i = 0; i < group.rank; ++i) {
    Matrix a(field, n, n);
    for (std::size_t idx = 0; idx < n; ++idx) {
      auto e = monomial_exponents(group, idx);
      e[i] = (e[i] + 1) % group.p;
      std::size_t to = monomial_index(group, e);
      a(to, idx) = field->add(a(to, idx), 1);
      a(idx, idx) = field->sub(a(idx, idx), 1);
    }
    gens.push_back(std::move(a));
  }
  return Module(group, std::move(field), std::move(gens));
}

Module regular_module_monomial(GroupSpec group, FieldPtr field) {
  return free_module(group, std::move(field), 1);
}

Module free_module(GroupSpec group, FieldPtr field, std::size_t copies) {
  std::size_t const n = monomial_count(group);
  std::vector<Matrix> gens;
  for (std::uint32_t i = 0; i < group.rank; ++i) {
    Matrix a(field, n * copies, n * copies);
    for (std::size_t c = 0; c < copies; ++c) {
      for (std::size_t idx = 0; idx < n; ++idx) {
        auto e = monomial_exponents(group, idx);
        if (e[i] + 1 < group.p) {
          e[i] += 1;
          a(c * n + monomial_index(group, e), c * n + idx) = 1;
        }
      }
    }
    gens.push_back(std::move(a));
  }
  return Module(group, std::move(field), std::move(gens));
}

Module direct_sum(Module const& a, Module const& b) {
  require_compatible(a, b);
  std::vector<Matrix> gens;
  for (std::size_t i = 0; i < a.rank(); ++i) {
    gens.push_back(Matrix::diag(a.gen(i), b.gen(i)));
  }
  return Module(a.group(), a.field_ptr(), std::move(gens));
}

Module direct_sum(std::span<Module const> parts) {
  if (parts.empty()) {
    throw Error("direct sum of no modules");
  }
  std::size_t n = 0;
  for (auto const& p : parts) {
    require_compatible(parts[0], p);
    n += p.dim();
  }
  std::vector<Matrix> gens;
  for (std::size_t i = 0; i < parts[0].rank(); ++i) {
    Matrix g(parts[0].field_ptr(), n, n);
    std::size_t off = 0;
    for (auto const& p : parts) {
      g.set_block(off, off, p.gen(i));
      off += p.dim();
    }
    gens.push_back(std::move(g));
  }
  return Module(parts[0].group(), parts[0].field_ptr(), std::move(gens));
}

Module tensor(Module const& a, Module const& b) {
  require_compatible(a, b);
  auto const& f = a.field_ptr();
  Matrix const ia = Matrix::identity(f, a.dim());
  Matrix const ib = Matrix::identity(f, b.dim());
  std::vector<Matrix> gens;
  for (std::size_t i = 0; i < a.rank(); ++i) {
    Matrix g = kron(a.gen(i), ib);
    g += kron(ia, b.gen(i));
    g += kron(a.gen(i), b.gen(i));
    gens.push_back(std::move(g));
  }
  return Module(a.group(), f, std::move(gens));
}

Module tensor_power(Module const& a, std::size_t n) {
  if (n == 0) {
    return trivial_module(a.group(), a.field_ptr());
  }
  Module r = a;
  for (std::size_t k = 1; k < n; ++k) {
    r = tensor(r, a);
  }
  return r;
}

Module dual(Module const& m) {
  auto const& f = m.field_ptr();
  std::vector<Matrix> gens;
  Matrix const id = Matrix::identity(f, m.dim());
  for (std::size_t i = 0; i < m.rank(); ++i) {
    // (I + A)^-1 = sum_{j < p} (-A)^j since A^p = 0.
    Matrix neg_a = m.gen(i).scaled(f->neg(1));
    Matrix term = id;
    Matrix inv = id;
    for (std::uint32_t j = 1; j < m.group().p; ++j) {
      term = term * neg_a;
      inv += term;
    }
    gens.push_back(inv.transpose() - id);
  }
  return Module(m.group(), f, std::move(gens));
}

Module restrict(Module const& m, SubgroupSpec const& h) {
  if (!(h.group == m.group())) {
    throw Error("restrict: subgroup of a different group");
  }
  std::uint32_t const p = m.group().p;
  auto const fp = Field::prime(p);
  Matrix b(fp, h.basis.size(), m.group().rank);
  for (std::size_t k = 0; k < h.basis.size(); ++k) {
    if (h.basis[k].size() != m.group().rank) {
      throw Error("restrict: basis vector of wrong length");
    }
    for (std::size_t i = 0; i < m.group().rank; ++i) {
      b(k, i) = Elem(h.basis[k][i] % p);
    }
  }
  if (algmod::rank(b) != h.basis.size()) {
    throw Error("restrict: subgroup basis vectors are linearly dependent");
  }
  auto const& f = m.field_ptr();
  Matrix const id = Matrix::identity(f, m.dim());
  std::vector<Matrix> gens;
  for (std::size_t k = 0; k < h.basis.size(); ++k) {
    Matrix g = id;
    for (std::size_t i = 0; i < m.group().rank; ++i) {
      if (b(k, i) != 0) {
        g = g * (id + m.gen(i)).power(b(k, i));
      }
    }
    gens.push_back(g - id);
  }
  GroupSpec sub{p, std::uint32_t(h.basis.size())};
  return Module(sub, f, std::move(gens));
}

Module conjugate(Module const& m, Matrix const& p) {
  auto pinv = inverse(p);
  if (!pinv) {
    throw Error("conjugate: matrix is not invertible");
  }
  std::vector<Matrix> gens;
  for (auto const& a : m.gens()) {
    gens.push_back(p * a * *pinv);
  }
  return Module(m.group(), m.field_ptr(), std::move(gens));
}

Matrix left_inverse(Matrix const& v) {
  // Choose k independent rows of v.
  Matrix vt = v.transpose();
  auto rows = rref(vt);
  if (rows.size() != v.cols()) {
    throw Error("left_inverse: columns are dependent");
  }
  Matrix w = Matrix::zero(v.field_ptr(), v.cols(), v.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < v.cols(); ++j) {
      w(i, j) = v(rows[i], j);
    }
  }
  auto winv = inverse(w);
  Matrix l(v.field_ptr(), v.cols(), v.rows());
  for (std::size_t i = 0; i < v.cols(); ++i) {
    for (std::size_t k = 0; k < rows.size(); ++k) {
      l(i, rows[k]) = (*winv)(i, k);
    }
  }
  return l;
}

Module submodule(Module const& m, Matrix const& v) {
  if (v.cols() == 0) {
    return Module::zero(m.group(), m.field_ptr());
  }
  Matrix const l = left_inverse(v);
  std::vector<Matrix> gens;
  for (auto const& a : m.gens()) {
    Matrix av = a * v;
    Matrix x = l * av;
    if (!(v * x == av)) {
      throw Error("submodule: subspace is not invariant");
    }
    gens.push_back(std::move(x));
  }
  return Module(m.group(), m.field_ptr(), std::move(gens));
}

Module quotient(Module const& m, Matrix const& v, Matrix* complement_out) {
  std::size_t const d = m.dim();
  auto const& f = m.field_ptr();
  EchelonBasis eb(f, d);
  for (std::size_t j = 0; j < v.cols(); ++j) {
    std::vector<Elem> col(d);
    for (std::size_t i = 0; i < d; ++i) {
      col[i] = v(i, j);
    }
    eb.insert(col);
  }
  std::size_t const k = eb.size();
  std::vector<std::size_t> comp;
  for (std::size_t i = 0; i < d && eb.size() < d; ++i) {
    std::vector<Elem> e(d, 0);
    e[i] = 1;
    if (eb.insert(e)) {
      comp.push_back(i);
    }
  }
  Matrix c(f, d, comp.size());
  for (std::size_t j = 0; j < comp.size(); ++j) {
    c(comp[j], j) = 1;
  }
  if (complement_out) {
    *complement_out = c;
  }
  if (comp.empty()) {
    return Module::zero(m.group(), f);
  }
  Matrix const sub_basis = eb.as_rows().block(0, 0, k, d).transpose();
  Matrix t = k ? Matrix::hstack(sub_basis, c) : c;
  auto tinv = inverse(t);
  std::vector<Matrix> gens;
  for (auto const& a : m.gens()) {
    Matrix x = *tinv * a * t;
    if (k && !x.block(k, 0, d - k, k).is_zero()) {
      throw Error("quotient: subspace is not invariant");
    }
    gens.push_back(x.block(k, k, d - k, d - k));
  }
  return Module(m.group(), f, std::move(gens));
}

Matrix spin(Module const& m, Matrix const& seeds) {
  std::size_t const d = m.dim();
  auto const& f = m.field_ptr();
  EchelonBasis eb(f, d);
  std::vector<std::vector<Elem>> kept;
  std::deque<std::vector<Elem>> queue;
  for (std::size_t j = 0; j < seeds.cols(); ++j) {
    std::vector<Elem> col(d);
    for (std::size_t i = 0; i < d; ++i) {
      col[i] = seeds(i, j);
    }
    queue.push_back(std::move(col));
  }
  while (!queue.empty()) {
    auto v = std::move(queue.front());
    queue.pop_front();
    if (!eb.insert(v)) {
      continue;
    }
    for (auto const& a : m.gens()) {
      std::vector<Elem> w(d, 0);
      for (std::size_t i = 0; i < d; ++i) {
        std::uint32_t acc = 0;
        for (std::size_t l = 0; l < d; ++l) {
          acc = f->add(Elem(acc), f->mul(a(i, l), v[l]));
        }
        w[i] = Elem(acc);
      }
      queue.push_back(std::move(w));
    }
    kept.push_back(std::move(v));
  }
  Matrix r(f, d, kept.size());
  for (std::size_t j = 0; j < kept.size(); ++j) {
    for (std::size_t i = 0; i < d; ++i) {
      r(i, j) = kept[j][i];
    }
  }
  return r;
}

}  // namespace algmod
