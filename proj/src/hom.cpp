#include "algmod/hom.hpp"

#include <algorithm>
#include <mutex>

#include "algmod/decomp.hpp"
#include "algmod/presentation.hpp"
#include "kernels.hpp"
#include "module_cache.hpp"

namespace algmod {

namespace {

  std::vector<Elem> column_vector(Matrix const& m, std::size_t j) {
    std::vector<Elem> v(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
      v[i] = m(i, j);
    }
    return v;
  }

  // Basis of {x : r x = 0 for every stored row r}, as columns.
  Matrix kernel_of_rows(EchelonBasis const& eb, FieldPtr const& f) {
    std::size_t const n = eb.length();
    std::size_t const r = eb.size();
    std::vector<bool> is_pivot(n, false);
    for (auto c : eb.pivots()) {
      is_pivot[c] = true;
    }
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < n; ++c) {
      if (!is_pivot[c]) {
        free_cols.push_back(c);
      }
    }
    std::size_t const h = free_cols.size();
    // x rows indexed by variable, columns by free variable.
    Matrix x(f, n, h);
    for (std::size_t k = 0; k < h; ++k) {
      x(free_cols[k], k) = 1;
    }
    Field const& fld = *f;
    // Row i: x_{piv_i} = -sum_{c != piv_i} row_i[c] x_c.  Later rows never
    // involve earlier pivots, so solve in reverse insertion order.
    std::vector<Elem> acc(h);
    for (std::size_t i = r; i-- > 0;) {
      Elem const* row = eb.vector(i);
      std::size_t const piv = eb.pivots()[i];
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t c = piv + 1; c < n; ++c) {
        if (row[c] != 0) {
          detail::axpy(fld, acc.data(), x.row(c), row[c], h);
        }
      }
      detail::scale(fld, acc.data(), fld.neg(1), h);
      std::copy(acc.begin(), acc.end(), x.row(piv));
    }
    return x;
  }

  // Hom via a presentation of m.
  std::vector<Matrix> hom_by_presentation(Module const& m, Module const& n) {
    auto const& f = m.field_ptr();
    Field const& fld = *f;
    Presentation const& pres = presentation(m);
    std::size_t const t = pres.generator_count;
    std::size_t const nd = n.dim();
    std::size_t const d = m.dim();
    std::size_t const mono = monomial_count(m.group());
    if (d == 0 || nd == 0) {
      return {};
    }
    std::size_t const vars = t * nd;
    EchelonBasis eb(f, vars);
    std::vector<Elem> row(vars);
    for (std::size_t g = 0; g < pres.relations.rows(); ++g) {
      Elem const* rel = pres.relations.row(g);
      // R_j = sum_mu rel[j, mu] B^mu, laid out as block columns of an nd x vars matrix.
      Matrix block(f, nd, vars);
      bool nonzero = false;
      for (std::size_t j = 0; j < t; ++j) {
        for (std::size_t mu = 0; mu < mono; ++mu) {
          Elem const c = rel[j * mono + mu];
          if (c == 0) {
            continue;
          }
          nonzero = true;
          Matrix const& bm = n.monomial(mu);
          for (std::size_t i = 0; i < nd; ++i) {
            detail::axpy(fld, block.row(i) + j * nd, bm.row(i), c, nd);
          }
        }
      }
      if (!nonzero) {
        continue;
      }
      for (std::size_t i = 0; i < nd; ++i) {
        std::copy_n(block.row(i), vars, row.begin());
        eb.insert(row);
        if (eb.size() == vars) {
          return {};
        }
      }
    }
    Matrix const sol = kernel_of_rows(eb, f);
    std::vector<Matrix> basis;
    basis.reserve(sol.cols());
    for (std::size_t k = 0; k < sol.cols(); ++k) {
      // Images of spin vectors: B^mu v_j.
      Matrix phi_spin(f, nd, d);
      for (std::size_t b = 0; b < d; ++b) {
        auto [j, mu] = pres.spin[b];
        Matrix const& bm = n.monomial(mu);
        for (std::size_t i = 0; i < nd; ++i) {
          Elem acc = 0;
          Elem const* brow = bm.row(i);
          for (std::size_t l = 0; l < nd; ++l) {
            Elem const v = sol(j * nd + l, k);
            if (v != 0 && brow[l] != 0) {
              acc = fld.add(acc, fld.mul(brow[l], v));
            }
          }
          phi_spin(i, b) = acc;
        }
      }
      basis.push_back(phi_spin * pres.spin_basis_inverse);
    }
    return basis;
  }

}  // namespace

Presentation compute_presentation(Module const& m) {
  auto const& f = m.field_ptr();
  std::size_t const d = m.dim();
  std::size_t const mono = monomial_count(m.group());
  Presentation pres;
  if (d == 0) {
    pres.gens = Matrix(f, 0, 0);
    pres.spin_basis = Matrix(f, 0, 0);
    pres.spin_basis_inverse = Matrix(f, 0, 0);
    pres.relations = Matrix(f, 0, 0);
    return pres;
  }
  // Generators: standard basis vectors completing a basis of rad M.
  EchelonBasis rad(f, d);
  for (auto const& a : m.gens()) {
    for (std::size_t j = 0; j < d; ++j) {
      rad.insert(column_vector(a, j));
    }
  }
  std::vector<std::size_t> gen_idx;
  for (std::size_t i = 0; i < d && rad.size() < d; ++i) {
    std::vector<Elem> e(d, 0);
    e[i] = 1;
    if (rad.insert(e)) {
      gen_idx.push_back(i);
    }
  }
  std::size_t const t = gen_idx.size();
  pres.generator_count = t;
  pres.gens = Matrix(f, d, t);
  for (std::size_t j = 0; j < t; ++j) {
    pres.gens(gen_idx[j], j) = 1;
  }
  // Cover map KG^t -> M; spin basis chosen greedily by monomial degree.
  Matrix cover(f, d, t * mono);
  for (std::size_t j = 0; j < t; ++j) {
    for (std::size_t mu = 0; mu < mono; ++mu) {
      Matrix const& am = m.monomial(mu);
      for (std::size_t i = 0; i < d; ++i) {
        cover(i, j * mono + mu) = am(i, gen_idx[j]);
      }
    }
  }
  std::vector<std::size_t> order(mono);
  for (std::size_t mu = 0; mu < mono; ++mu) {
    order[mu] = mu;
  }
  auto degree = [&](std::size_t mu) {
    auto e = monomial_exponents(m.group(), mu);
    std::size_t s = 0;
    for (auto x : e) {
      s += x;
    }
    return s;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return degree(a) < degree(b); });
  EchelonBasis span(f, d);
  for (std::size_t mu : order) {
    for (std::size_t j = 0; j < t && span.size() < d; ++j) {
      if (span.insert(column_vector(cover, j * mono + mu))) {
        pres.spin.emplace_back(j, mu);
      }
    }
  }
  if (pres.spin.size() != d) {
    throw Error("presentation: generators do not span the module");
  }
  pres.spin_basis = Matrix(f, d, d);
  for (std::size_t b = 0; b < d; ++b) {
    auto [j, mu] = pres.spin[b];
    for (std::size_t i = 0; i < d; ++i) {
      pres.spin_basis(i, b) = cover(i, j * mono + mu);
    }
  }
  pres.spin_basis_inverse = *inverse(pres.spin_basis);

  // Relations: kernel of the cover modulo its radical.
  Matrix kernel = nullspace(cover);
  std::size_t const len = t * mono;
  EchelonBasis top(f, len);
  GroupSpec const& g = m.group();
  for (std::size_t k = 0; k < kernel.cols(); ++k) {
    for (std::uint32_t i = 0; i < g.rank; ++i) {
      std::vector<Elem> shifted(len, 0);
      for (std::size_t j = 0; j < t; ++j) {
        for (std::size_t mu = 0; mu < mono; ++mu) {
          Elem const c = kernel(j * mono + mu, k);
          if (c == 0) {
            continue;
          }
          auto e = monomial_exponents(g, mu);
          if (e[i] + 1 < g.p) {
            e[i] += 1;
            shifted[j * mono + monomial_index(g, e)] = c;
          }
        }
      }
      top.insert(shifted);
    }
  }
  std::vector<std::vector<Elem>> rels;
  for (std::size_t k = 0; k < kernel.cols(); ++k) {
    auto v = column_vector(kernel, k);
    if (top.insert(v)) {
      rels.push_back(std::move(v));
    }
  }
  pres.relations = Matrix(f, rels.size(), len);
  for (std::size_t r = 0; r < rels.size(); ++r) {
    std::copy(rels[r].begin(), rels[r].end(), pres.relations.row(r));
  }
  return pres;
}

Presentation const& presentation(Module const& m) {
  auto& c = m.cache();
  std::call_once(c.presentation_once,
                 [&] { c.presentation = std::make_unique<Presentation>(compute_presentation(m)); });
  return *c.presentation;
}

Matrix HomSpace::combination(std::vector<Elem> const& coeffs) const {
  Matrix r(source.field_ptr(), target.dim(), source.dim());
  for (std::size_t i = 0; i < basis.size() && i < coeffs.size(); ++i) {
    r.add_scaled(basis[i], coeffs[i]);
  }
  return r;
}

Matrix HomSpace::random_element(Rng& rng) const {
  std::vector<Elem> c(basis.size());
  for (auto& x : c) {
    x = Elem(rng.below(source.field().order()));
  }
  return combination(c);
}

bool is_homomorphism(Matrix const& phi, Module const& m, Module const& n) {
  if (phi.rows() != n.dim() || phi.cols() != m.dim()) {
    return false;
  }
  for (std::size_t i = 0; i < m.rank(); ++i) {
    if (!(phi * m.gen(i) == n.gen(i) * phi)) {
      return false;
    }
  }
  return true;
}

HomSpace hom_space(Module const& m, Module const& n) {
  require_compatible(m, n);
  HomSpace hs{m, n, {}};
  if (m.dim() == 0 || n.dim() == 0) {
    return hs;
  }
  std::size_t const tm = presentation(m).generator_count;
  // Generators of n^* = dim of the socle of n.
  Module const nd = dual(n);
  std::size_t const tn = presentation(nd).generator_count;
  if (tm * n.dim() <= tn * m.dim()) {
    hs.basis = hom_by_presentation(m, n);
  } else {
    // phi : m -> n  <=>  phi^T : n^* -> m^*
    Module const md = dual(m);
    for (auto& psi : hom_by_presentation(nd, md)) {
      hs.basis.push_back(psi.transpose());
    }
  }
  return hs;
}

HomSpace hom_space_direct(Module const& m, Module const& n) {
  require_compatible(m, n);
  HomSpace hs{m, n, {}};
  std::size_t const a = m.dim(), b = n.dim();
  if (a == 0 || b == 0) {
    return hs;
  }
  auto const& f = m.field_ptr();
  Field const& fld = *f;
  // Unknown phi(i, j) at index i * a + j.  Equation: (phi A - B phi)(i, k) = 0.
  Matrix sys(f, m.rank() * b * a, b * a);
  std::size_t r = 0;
  for (std::size_t g = 0; g < m.rank(); ++g) {
    Matrix const& am = m.gen(g);
    Matrix const& bm = n.gen(g);
    for (std::size_t i = 0; i < b; ++i) {
      for (std::size_t k = 0; k < a; ++k, ++r) {
        for (std::size_t j = 0; j < a; ++j) {
          sys(r, i * a + j) = fld.add(sys(r, i * a + j), am(j, k));
        }
        for (std::size_t l = 0; l < b; ++l) {
          sys(r, l * a + k) = fld.sub(sys(r, l * a + k), bm(i, l));
        }
      }
    }
  }
  Matrix ns = nullspace(sys);
  for (std::size_t k = 0; k < ns.cols(); ++k) {
    Matrix phi(f, b, a);
    for (std::size_t i = 0; i < b; ++i) {
      for (std::size_t j = 0; j < a; ++j) {
        phi(i, j) = ns(i * a + j, k);
      }
    }
    hs.basis.push_back(std::move(phi));
  }
  return hs;
}

std::optional<Matrix> find_isomorphism(Module const& m, Module const& n, IsoOptions const& opts) {
  require_compatible(m, n);
  if (m.dim() != n.dim()) {
    return std::nullopt;
  }
  if (m.dim() == 0) {
    return Matrix(m.field_ptr(), 0, 0);
  }
  if (m.fingerprint() != n.fingerprint()) {
    return std::nullopt;
  }
  HomSpace const fwd = hom_space(m, n);
  if (fwd.dim() == 0) {
    return std::nullopt;
  }
  Rng rng(opts.seed);
  for (std::size_t k = 0; k < opts.random_draws; ++k) {
    Matrix phi = fwd.random_element(rng);
    if (is_invertible(phi)) {
      return phi;
    }
  }
  // Deterministic fallback.
  HomSpace const back = hom_space(n, m);
  if (back.dim() == 0) {
    return std::nullopt;
  }
  if (is_indecomposable(m)) {
    // End(m) is local: some composite of basis maps is a unit iff m = n.
    for (auto const& g : back.basis) {
      for (auto const& fmap : fwd.basis) {
        if (is_invertible(g * fmap)) {
          return fmap;
        }
      }
    }
    return std::nullopt;
  }
  // Decomposable: compare the decompositions and assemble a block isomorphism.
  Decomposition const dm = decompose(m, DecomposeOptions{opts.seed});
  Decomposition const dn = decompose(n, DecomposeOptions{opts.seed ^ 0x5bd1e995ULL});
  return isomorphism_from_decompositions(m, dm, n, dn, opts);
}

bool is_isomorphic(Module const& m, Module const& n, IsoOptions const& opts) {
  return find_isomorphism(m, n, opts).has_value();
}

}  // namespace algmod
