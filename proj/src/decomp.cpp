#include "algmod/decomp.hpp"

#include <algorithm>
#include <cstring>

#include "kernels.hpp"

namespace algmod {

namespace {

  std::span<Elem const> flat(Matrix const& m) { return {m.data().data(), m.data().size()}; }

  Matrix unflatten(FieldPtr const& f, std::size_t rows, std::size_t cols, Elem const* v) {
    Matrix m(f, rows, cols);
    std::copy_n(v, rows * cols, m.data().begin());
    return m;
  }

  Matrix combination(std::vector<Matrix> const& basis, std::vector<Elem> const& c) {
    Matrix r(basis.front().field_ptr(), basis.front().rows(), basis.front().cols());
    for (std::size_t i = 0; i < basis.size(); ++i) {
      r.add_scaled(basis[i], c[i]);
    }
    return r;
  }

  Matrix random_combination(std::vector<Matrix> const& basis, Rng& rng) {
    std::vector<Elem> c(basis.size());
    std::uint32_t const q = basis.front().field().order();
    for (auto& x : c) {
      x = Elem(rng.below(q));
    }
    return combination(basis, c);
  }

  /// t^N for some N >= dim, by repeated squaring.
  Matrix stable_power(Matrix const& t) {
    Matrix r = t;
    for (std::size_t e = 1; e < t.rows(); e *= 2) {
      r = r * r;
    }
    return r;
  }

  bool is_nilpotent(Matrix const& t) { return t.rows() == 0 || stable_power(t).is_zero(); }

  std::optional<Elem> scalar_value(Matrix const& m) {
    Elem const lambda = m.rows() ? m(0, 0) : 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (m(i, j) != (i == j ? lambda : 0)) {
          return std::nullopt;
        }
      }
    }
    return lambda;
  }

  Matrix minus_scalar(Matrix const& m, Elem lambda) {
    Matrix r = m;
    Field const& f = m.field();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      r(i, i) = f.sub(r(i, i), lambda);
    }
    return r;
  }

  struct SplitBases {
    Matrix ker;
    Matrix img;
  };

  /// Fitting bases of t when t is neither invertible nor nilpotent.
  std::optional<SplitBases> fitting_of(Matrix const& t) {
    Matrix const tn = stable_power(t);
    Matrix k = nullspace(tn);
    if (k.cols() == 0 || k.cols() == t.rows()) {
      return std::nullopt;
    }
    return SplitBases{std::move(k), column_space(tn)};
  }

  poly::Poly krylov_minpoly(Matrix const& theta, Rng& rng) {
    std::size_t const k = theta.rows();
    Field const& f = theta.field();
    std::vector<Elem> v(k);
    for (auto& x : v) {
      x = Elem(rng.below(f.p()));
    }
    EchelonBasis eb(theta.field_ptr(), k);
    std::vector<Matrix> cols;
    Matrix cur(theta.field_ptr(), k, 1);
    for (std::size_t i = 0; i < k; ++i) {
      cur(i, 0) = v[i];
    }
    for (;;) {
      if (!eb.insert(flat(cur))) {
        break;
      }
      cols.push_back(cur);
      cur = theta * cur;
    }
    if (cols.empty()) {
      return {0, 1};  // v = 0
    }
    auto c = solve_linear(Matrix::hstack(cols), cur);
    poly::Poly mu(cols.size() + 1, 0);
    for (std::size_t i = 0; i < cols.size(); ++i) {
      mu[i] = f.neg((*c)(i, 0));
    }
    mu.back() = 1;
    return mu;
  }

  Matrix eval_poly(poly::Poly const& g, Matrix const& t) {
    Matrix r(t.field_ptr(), t.rows(), t.cols());
    for (std::size_t i = g.size(); i-- > 0;) {
      r = r * t;
      for (std::size_t d = 0; d < t.rows(); ++d) {
        r(d, d) = t.field().add(r(d, d), Elem(g[i]));
      }
    }
    return r;
  }

  /// f(theta) for an irreducible factor f of a local minimal polynomial; it
  /// is singular, and a Fitting split unless theta is primary.
  Matrix splitting_element(Matrix const& theta, Rng& rng) {
    poly::Poly mu = krylov_minpoly(theta, rng);
    poly::Poly fac = poly::irreducible_factor(mu, theta.field().p(), rng.next());
    return eval_poly(fac, theta);
  }

  // --- quotient by the radical ---------------------------------------------

  struct RadicalQuotient {
    FieldPtr field;
    std::size_t n = 0;
    std::size_t rad_dim = 0;
    std::vector<Matrix> reps;  ///< algebra elements lifting a quotient basis
    EchelonBasis eb;           ///< radical first, then reps

    RadicalQuotient(FieldPtr f, std::size_t dim) : field(f), n(dim), eb(f, dim * dim) {}

    std::vector<Elem> coords(Matrix const& x) const {
      auto c = eb.coordinates(flat(x));
      if (!c) {
        throw Error("element outside the algebra");
      }
      return std::vector<Elem>(c->begin() + std::ptrdiff_t(rad_dim), c->end());
    }
  };

  RadicalQuotient make_quotient(std::vector<Matrix> const& algebra,
                                std::vector<Matrix> const& radical) {
    std::size_t const n = algebra.front().rows();
    RadicalQuotient q(algebra.front().field_ptr(), n);
    for (auto const& r : radical) {
      q.eb.insert(flat(r));
    }
    q.rad_dim = q.eb.size();
    for (auto const& a : algebra) {
      if (q.eb.insert(flat(a))) {
        q.reps.push_back(unflatten(q.field, n, n, q.eb.vector(q.eb.size() - 1)));
      }
    }
    return q;
  }

  Matrix lift(RadicalQuotient const& q, std::vector<Elem> const& c) { return combination(q.reps, c); }

  bool quotient_commutative(RadicalQuotient const& q) {
    for (std::size_t i = 0; i < q.reps.size(); ++i) {
      for (std::size_t j = i + 1; j < q.reps.size(); ++j) {
        Matrix d = q.reps[i] * q.reps[j] - q.reps[j] * q.reps[i];
        for (auto c : q.coords(d)) {
          if (c != 0) {
            return false;
          }
        }
      }
    }
    return true;
  }

  /// Columns are coefficient vectors (on q.reps) spanning the centre.
  Matrix quotient_center(RadicalQuotient const& q) {
    std::size_t const s = q.reps.size();
    Matrix sys(q.field, s * s, s);
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < s; ++j) {
        auto c = q.coords(q.reps[i] * q.reps[j] - q.reps[j] * q.reps[i]);
        for (std::size_t l = 0; l < s; ++l) {
          sys(j * s + l, i) = c[l];
        }
      }
    }
    return nullspace(sys);
  }

  /// Columns: coefficient vectors of {z in span(zbasis) : z^p = z}, for a
  /// commutative subalgebra given by coefficient columns.
  Matrix berlekamp(RadicalQuotient const& q, Matrix const& zbasis) {
    std::size_t const s = q.reps.size();
    std::uint32_t const p = q.field->p();
    Field const& f = *q.field;
    Matrix sys(q.field, s, zbasis.cols());
    for (std::size_t a = 0; a < zbasis.cols(); ++a) {
      std::vector<Elem> c(s);
      for (std::size_t l = 0; l < s; ++l) {
        c[l] = zbasis(l, a);
      }
      Matrix z = lift(q, c);
      auto fz = q.coords(z.power(p));
      for (std::size_t l = 0; l < s; ++l) {
        sys(l, a) = f.sub(fz[l], c[l]);
      }
    }
    Matrix t = nullspace(sys);
    return zbasis * t;
  }

  Matrix identity_coords(RadicalQuotient const& q) {
    auto c = q.coords(Matrix::identity(q.field, q.n));
    Matrix r(q.field, c.size(), 1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      r(i, 0) = c[i];
    }
    return r;
  }

  bool quotient_is_field(RadicalQuotient const& q) {
    if (q.reps.size() <= 1) {
      return q.reps.size() == 1;
    }
    if (!quotient_commutative(q)) {
      return false;
    }
    return berlekamp(q, Matrix::identity(q.field, q.reps.size())).cols() == 1;
  }

  std::optional<SplitBases> split_from_idempotent_candidates(RadicalQuotient const& q,
                                                             Matrix const& cand) {
    Field const& f = *q.field;
    for (std::size_t a = 0; a < cand.cols(); ++a) {
      std::vector<Elem> c(cand.rows());
      for (std::size_t l = 0; l < c.size(); ++l) {
        c[l] = cand(l, a);
      }
      Matrix x = lift(q, c);
      for (std::uint32_t lam = 0; lam < f.order(); ++lam) {
        if (auto s = fitting_of(minus_scalar(x, Elem(lam)))) {
          return s;
        }
      }
    }
    return std::nullopt;
  }

  bool fast_local_applicable(std::vector<Matrix> const& basis, std::vector<Matrix>& nil) {
    std::size_t const k = basis.front().rows();
    std::uint32_t const p = basis.front().field().p();
    for (auto const& b : basis) {
      Matrix q = b;
      for (std::size_t e = 1; e < k; e *= p) {
        q = q.power(p);
      }
      auto lam = scalar_value(q);
      if (!lam) {
        return false;
      }
      Matrix r = minus_scalar(b, *lam);
      if (!r.is_zero()) {
        nil.push_back(std::move(r));
      }
    }
    return true;
  }

  /// Decisive when every basis element is scalar plus nilpotent.
  std::optional<bool> fast_local(std::vector<Matrix> const& basis) {
    std::vector<Matrix> nil;
    if (!fast_local_applicable(basis, nil)) {
      return std::nullopt;
    }
    std::vector<Matrix> r = span_basis(nil);
    if (r.empty()) {
      return true;
    }
    std::size_t const k = basis.front().rows();
    EchelonBasis er(basis.front().field_ptr(), k * k);
    for (auto const& x : r) {
      er.insert(flat(x));
    }
    // R must be an ideal (R * R within R) and nilpotent.
    std::vector<Matrix> level = r;
    for (std::size_t step = 0; step <= k && !level.empty(); ++step) {
      std::vector<Matrix> next;
      for (auto const& a : level) {
        for (auto const& b : r) {
          Matrix prod = a * b;
          if (prod.is_zero()) {
            continue;
          }
          if (step == 0 && er.coordinates(flat(prod)) == std::nullopt) {
            return false;
          }
          next.push_back(std::move(prod));
        }
      }
      level = span_basis(next);
    }
    return level.empty();
  }

  // --- iterated trace form -------------------------------------------------

  using IntMat = std::vector<std::uint64_t>;

  IntMat int_mul(IntMat const& a, IntMat const& b, std::size_t n, std::uint64_t q) {
    IntMat c(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t l = 0; l < n; ++l) {
        std::uint64_t const x = a[i * n + l];
        if (x == 0) {
          continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
          c[i * n + j] = (c[i * n + j] + x * b[l * n + j]) % q;
        }
      }
    }
    return c;
  }

  /// (tr(lift(a)^(p^j)) mod p^(j+1)) / p^j
  Elem trace_form(Matrix const& a, std::uint32_t p, std::size_t j) {
    std::size_t const n = a.rows();
    std::uint64_t pj = 1;
    for (std::size_t i = 0; i < j; ++i) {
      pj *= p;
    }
    std::uint64_t const q = pj * p;
    IntMat x(a.data().begin(), a.data().end());
    for (std::size_t step = 0; step < j; ++step) {
      IntMat base = x, acc;
      bool first = true;
      for (std::uint32_t e = p; e; e >>= 1) {
        if (e & 1) {
          acc = first ? base : int_mul(acc, base, n, q);
          first = false;
        }
        if (e > 1) {
          base = int_mul(base, base, n, q);
        }
      }
      x = std::move(acc);
    }
    std::uint64_t t = 0;
    for (std::size_t i = 0; i < n; ++i) {
      t = (t + x[i * n + i]) % q;
    }
    return Elem(t / pj);
  }

  /// Faithful representation of the algebra of the smaller size.
  std::vector<Matrix> small_representation(std::vector<Matrix> const& basis) {
    std::size_t const h = basis.size();
    std::size_t const k = basis.front().rows();
    if (k <= h) {
      return basis;
    }
    auto const& f = basis.front().field_ptr();
    EchelonBasis eb(f, k * k);
    for (auto const& b : basis) {
      eb.insert(flat(b));
    }
    // Coordinates relative to the stored (reduced) vectors are fine: any
    // basis of the algebra gives an isomorphic regular representation.
    std::vector<Matrix> stored;
    for (std::size_t i = 0; i < eb.size(); ++i) {
      stored.push_back(unflatten(f, k, k, eb.vector(i)));
    }
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < h; ++i) {
      Matrix l(f, h, h);
      for (std::size_t j = 0; j < h; ++j) {
        auto c = eb.coordinates(flat(basis[i] * stored[j]));
        if (!c) {
          throw Error("algebra_radical: basis is not closed under multiplication");
        }
        for (std::size_t r = 0; r < h; ++r) {
          l(r, j) = (*c)[r];
        }
      }
      out.push_back(std::move(l));
    }
    return out;
  }

  std::vector<Matrix> radical_trace(std::vector<Matrix> const& basis_in) {
    std::vector<Matrix> basis = span_basis(basis_in);
    if (basis.empty()) {
      return {};
    }
    std::vector<Matrix> rep = small_representation(basis);
    std::size_t const h = basis.size();
    std::size_t const n = rep.front().rows();
    auto const& f = basis.front().field_ptr();
    std::uint32_t const p = f->p();
    std::size_t ell = 0;
    for (std::size_t q = p; q <= n; q *= p) {
      ++ell;
    }
    // Current ideal as coefficient columns on `basis`.
    Matrix ideal = Matrix::identity(f, h);
    for (std::size_t j = 0; j <= ell && ideal.cols() > 0; ++j) {
      std::vector<Matrix> el;
      for (std::size_t a = 0; a < ideal.cols(); ++a) {
        std::vector<Elem> c(h);
        for (std::size_t l = 0; l < h; ++l) {
          c[l] = ideal(l, a);
        }
        el.push_back(combination(rep, c));
      }
      Matrix g(f, h, ideal.cols());
      for (std::size_t b = 0; b < h; ++b) {
        for (std::size_t a = 0; a < el.size(); ++a) {
          g(b, a) = trace_form(el[a] * rep[b], p, j);
        }
      }
      ideal = ideal * nullspace(g);
    }
    std::vector<Matrix> out;
    for (std::size_t a = 0; a < ideal.cols(); ++a) {
      std::vector<Elem> c(h);
      for (std::size_t l = 0; l < h; ++l) {
        c[l] = ideal(l, a);
      }
      out.push_back(combination(basis, c));
    }
    return out;
  }

  void check_closed(std::vector<Matrix> const& basis) {
    std::size_t const k = basis.front().rows();
    EchelonBasis eb(basis.front().field_ptr(), k * k);
    for (auto const& b : basis) {
      eb.insert(flat(b));
    }
    for (auto const& a : basis) {
      for (auto const& b : basis) {
        if (!eb.coordinates(flat(a * b))) {
          throw Error("algebra_radical: basis is not closed under multiplication");
        }
      }
    }
  }

  bool general_local(std::vector<Matrix> const& basis) {
    auto rad = radical_trace(basis);
    RadicalQuotient q = make_quotient(basis, rad);
    return quotient_is_field(q);
  }

  /// An element that is neither a unit nor nilpotent, from the structure of
  /// End / rad.  Empty when the algebra is local.
  std::optional<SplitBases> split_from_quotient(std::vector<Matrix> const& basis) {
    auto rad = radical_trace(basis);
    RadicalQuotient q = make_quotient(basis, rad);
    std::size_t const s = q.reps.size();
    if (s <= 1) {
      return std::nullopt;
    }
    Matrix center = quotient_commutative(q) ? Matrix::identity(q.field, s) : quotient_center(q);
    Matrix ber = berlekamp(q, center);
    if (ber.cols() > 1) {
      if (auto sp = split_from_idempotent_candidates(q, ber)) {
        return sp;
      }
    }
    if (center.cols() == s && ber.cols() == 1) {
      return std::nullopt;  // End / rad is a field
    }
    // Simple non-commutative quotient: sweep quotient elements in order.
    Field const& f = *q.field;
    std::vector<Elem> c(s, 0);
    for (;;) {
      std::size_t i = 0;
      while (i < s && c[i] + 1u == f.order()) {
        c[i++] = 0;
      }
      if (i == s) {
        break;
      }
      c[i] = Elem(c[i] + 1);
      if (auto sp = fitting_of(lift(q, c))) {
        return sp;
      }
    }
    return std::nullopt;
  }

  // --- decomposition of a projective-free module ---------------------------

  struct Piece {
    Matrix basis;  ///< columns in core coordinates
    Matrix proj;   ///< proj * basis = I
    Module mod;
    std::vector<Matrix> end;
  };

  Piece make_piece(Piece const& parent, Matrix const& sub, Matrix const& sub_proj) {
    Piece out;
    out.basis = parent.basis * sub;
    out.proj = sub_proj * parent.proj;
    std::vector<Matrix> gens;
    for (auto const& a : parent.mod.gens()) {
      gens.push_back(sub_proj * a * sub);
    }
    out.mod = Module(parent.mod.group(), parent.mod.field_ptr(), std::move(gens));
    std::vector<Matrix> end;
    end.reserve(parent.end.size());
    for (auto const& e : parent.end) {
      end.push_back(sub_proj * e * sub);
    }
    out.end = span_basis(end);
    return out;
  }

  std::pair<Piece, Piece> split_piece(Piece const& piece, SplitBases const& sp) {
    Matrix w = Matrix::hstack(sp.ker, sp.img);
    Matrix wi = *inverse(w);
    std::size_t const a = sp.ker.cols();
    Matrix pk = wi.block(0, 0, a, wi.cols());
    Matrix pi = wi.block(a, 0, wi.rows() - a, wi.cols());
    return {make_piece(piece, sp.ker, pk), make_piece(piece, sp.img, pi)};
  }

  std::optional<SplitBases> try_split(Piece const& piece, DecomposeOptions const& opts, Rng& rng) {
    std::size_t const k = piece.mod.dim();
    if (k <= 1 || piece.end.size() <= 1) {
      return std::nullopt;
    }
    bool fast_undecided = false;
    for (std::size_t attempt = 0; attempt < opts.max_attempts; ++attempt) {
      if (attempt == 1) {
        auto fl = fast_local(piece.end);
        if (fl && *fl) {
          return std::nullopt;
        }
        fast_undecided = !fl;
      }
      if (attempt == 8 && fast_undecided && general_local(piece.end)) {
        return std::nullopt;
      }
      Matrix theta = random_combination(piece.end, rng);
      if (auto sp = fitting_of(splitting_element(theta, rng))) {
        return sp;
      }
    }
    return split_from_quotient(piece.end);
  }

  std::vector<Matrix> piece_hom(std::vector<Matrix> const& core_end, Piece const& from, Piece const& to) {
    std::vector<Matrix> raw;
    raw.reserve(core_end.size());
    for (auto const& e : core_end) {
      Matrix h = to.proj * (e * from.basis);
      if (!h.is_zero()) {
        raw.push_back(std::move(h));
      }
    }
    return span_basis(raw);
  }

  /// Invertible f in Hom(a, b), given that a is indecomposable.
  std::optional<Matrix> piece_iso(std::vector<Matrix> const& core_end,
                                  Piece const& a,
                                  Piece const& b,
                                  Rng& rng) {
    if (a.mod.dim() != b.mod.dim() || a.mod.fingerprint() != b.mod.fingerprint()) {
      return std::nullopt;
    }
    auto fwd = piece_hom(core_end, a, b);
    if (fwd.empty()) {
      return std::nullopt;
    }
    for (int k = 0; k < 40; ++k) {
      Matrix x = random_combination(fwd, rng);
      if (is_invertible(x)) {
        return x;
      }
    }
    auto back = piece_hom(core_end, b, a);
    for (auto const& g : back) {
      for (auto const& fm : fwd) {
        if (is_invertible(g * fm)) {
          return fm;
        }
      }
    }
    return std::nullopt;
  }

}  // namespace

std::vector<Matrix> span_basis(std::vector<Matrix> const& elems) {
  std::vector<Matrix> out;
  if (elems.empty()) {
    return out;
  }
  EchelonBasis eb(elems.front().field_ptr(), elems.front().rows() * elems.front().cols());
  for (auto const& e : elems) {
    if (eb.insert(flat(e))) {
      out.push_back(e);
    }
  }
  return out;
}

AlgebraRadical algebra_radical(std::vector<Matrix> const& basis) {
  AlgebraRadical r;
  r.algebra = span_basis(basis);
  if (r.algebra.empty()) {
    return r;
  }
  check_closed(r.algebra);
  r.radical_basis = radical_trace(r.algebra);
  r.semisimple_dim = r.algebra.size() - r.radical_basis.size();
  return r;
}

AlgebraRadical algebra_radical_bruteforce(std::vector<Matrix> const& basis) {
  AlgebraRadical r;
  r.algebra = span_basis(basis);
  std::size_t const h = r.algebra.size();
  if (h == 0) {
    return r;
  }
  if (h > 6) {
    throw Unsupported("brute-force radical limited to algebras of dimension <= 6");
  }
  check_closed(r.algebra);
  Field const& f = r.algebra.front().field();
  std::uint32_t const q = f.order();
  std::size_t total = 1;
  for (std::size_t i = 0; i < h; ++i) {
    total *= q;
  }
  std::vector<Matrix> elems;
  elems.reserve(total);
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<Elem> c(h);
    std::size_t x = code;
    for (auto& ci : c) {
      ci = Elem(x % q);
      x /= q;
    }
    elems.push_back(combination(r.algebra, c));
  }
  std::vector<Matrix> rad;
  for (auto const& a : elems) {
    bool ok = true;
    for (auto const& b : elems) {
      if (!is_nilpotent(a * b)) {
        ok = false;
        break;
      }
    }
    if (ok && !a.is_zero()) {
      rad.push_back(a);
    }
  }
  r.radical_basis = span_basis(rad);
  r.semisimple_dim = h - r.radical_basis.size();
  return r;
}

FittingSplit fitting_split(Module const& m, Matrix const& theta) {
  if (!is_homomorphism(theta, m, m)) {
    throw Error("fitting_split: theta is not an endomorphism");
  }
  FittingSplit out;
  if (m.dim() == 0) {
    out.kernel = m;
    out.image = m;
    out.kernel_basis = Matrix(m.field_ptr(), 0, 0);
    out.image_basis = Matrix(m.field_ptr(), 0, 0);
    return out;
  }
  Matrix const tn = stable_power(theta);
  out.kernel_basis = nullspace(tn);
  out.image_basis = column_space(tn);
  out.kernel = submodule(m, out.kernel_basis);
  out.image = submodule(m, out.image_basis);
  return out;
}

bool is_local_algebra(std::vector<Matrix> const& basis_in) {
  std::vector<Matrix> basis = span_basis(basis_in);
  if (basis.empty()) {
    return false;
  }
  if (basis.size() == 1) {
    return true;
  }
  if (auto fl = fast_local(basis)) {
    return *fl;
  }
  return general_local(basis);
}

StripResult strip_projectives(Module const& m) {
  StripResult out;
  auto const& f = m.field_ptr();
  std::size_t const d = m.dim();
  std::size_t const mono = monomial_count(m.group());
  if (d == 0) {
    out.core = m;
    out.core_basis = Matrix(f, 0, 0);
    out.free_basis = Matrix(f, 0, 0);
    return out;
  }
  Matrix const& norm = m.monomial(mono - 1);
  Matrix red = norm;
  std::vector<std::size_t> piv = rref(red);
  std::size_t const fr = piv.size();
  out.free_rank = fr;
  if (fr == 0) {
    out.core = m;
    out.core_basis = Matrix::identity(f, d);
    out.free_basis = Matrix(f, d, 0);
    return out;
  }
  out.free_basis = Matrix(f, d, fr * mono);
  for (std::size_t j = 0; j < fr; ++j) {
    for (std::size_t mu = 0; mu < mono; ++mu) {
      Matrix const& am = m.monomial(mu);
      for (std::size_t i = 0; i < d; ++i) {
        out.free_basis(i, j * mono + mu) = am(i, piv[j]);
      }
    }
  }
  // Largest submodule inside a complement of N.M; it complements the free part.
  Matrix const socle = norm.columns(piv);
  Matrix const pi = left_inverse(socle);
  Matrix big(f, fr * mono, d);
  for (std::size_t mu = 0; mu < mono; ++mu) {
    big.set_block(mu * fr, 0, pi * m.monomial(mu));
  }
  out.core_basis = nullspace(big);
  if (out.core_basis.cols() + fr * mono != d) {
    throw Error("strip_projectives: complement has the wrong dimension");
  }
  out.core = out.core_basis.cols() ? submodule(m, out.core_basis) : Module::zero(m.group(), f);
  return out;
}

std::size_t Decomposition::free_rank() const noexcept {
  std::size_t r = 0;
  for (auto const& s : summands) {
    if (s.free) {
      r += s.multiplicity;
    }
  }
  return r;
}

std::size_t Decomposition::summand_count() const noexcept {
  std::size_t r = 0;
  for (auto const& s : summands) {
    r += s.multiplicity;
  }
  return r;
}

std::vector<Module> Decomposition::expanded() const {
  std::vector<Module> out;
  for (auto const& s : summands) {
    for (std::size_t i = 0; i < s.multiplicity; ++i) {
      out.push_back(s.module);
    }
  }
  return out;
}

Decomposition decompose(Module const& m, DecomposeOptions const& opts) {
  auto const& f = m.field_ptr();
  if (!f->is_prime_field()) {
    throw Unsupported("decompose: modules must be defined over a prime field");
  }
  Decomposition out;
  std::size_t const d = m.dim();
  if (d == 0) {
    out.witness = Matrix(f, 0, 0);
    return out;
  }
  StripResult st = strip_projectives(m);
  Rng rng(opts.seed);
  std::vector<Matrix> cols;

  Module const& core = st.core;
  if (core.dim() > 0) {
    std::vector<Matrix> core_end = hom_space(core, core).basis;
    std::vector<Piece> stack;
    Piece root;
    root.basis = Matrix::identity(f, core.dim());
    root.proj = root.basis;
    root.mod = core;
    root.end = core_end;
    stack.push_back(std::move(root));
    std::vector<Piece> done;
    std::uint64_t branch = 0;
    while (!stack.empty()) {
      Piece piece = std::move(stack.back());
      stack.pop_back();
      Rng local = rng.split(branch++);
      if (auto sp = try_split(piece, opts, local)) {
        auto [a, b] = split_piece(piece, *sp);
        stack.push_back(std::move(b));
        stack.push_back(std::move(a));
      } else {
        done.push_back(std::move(piece));
      }
    }
    // Group isomorphic pieces; members are re-based onto the representative.
    struct Group {
      std::size_t rep;
      std::vector<Matrix> bases;
    };
    std::vector<Group> groups;
    Rng iso_rng = rng.split(~0ULL);
    for (std::size_t i = 0; i < done.size(); ++i) {
      bool placed = false;
      for (auto& g : groups) {
        if (auto phi = piece_iso(core_end, done[g.rep], done[i], iso_rng)) {
          g.bases.push_back(done[i].basis * *phi);
          placed = true;
          break;
        }
      }
      if (!placed) {
        groups.push_back(Group{i, {done[i].basis}});
      }
    }
    std::stable_sort(groups.begin(), groups.end(), [&](Group const& a, Group const& b) {
      return done[a.rep].mod.dim() < done[b.rep].mod.dim();
    });
    for (auto const& g : groups) {
      out.summands.push_back(Summand{done[g.rep].mod, g.bases.size(), false});
      for (auto const& b : g.bases) {
        cols.push_back(st.core_basis * b);
      }
    }
  }
  if (st.free_rank > 0) {
    out.summands.push_back(Summand{regular_module_monomial(m.group(), f), st.free_rank, true});
    cols.push_back(st.free_basis);
  }
  out.witness = Matrix::hstack(cols);
  return out;
}

bool is_indecomposable(Module const& m) {
  if (m.dim() == 0) {
    return false;
  }
  StripResult st = strip_projectives(m);
  if (st.free_rank > 0) {
    return st.free_rank == 1 && st.core.dim() == 0;
  }
  return is_local_algebra(hom_space(m, m).basis);
}

bool is_absolutely_indecomposable(Module const& m) {
  if (m.dim() == 0) {
    return false;
  }
  StripResult st = strip_projectives(m);
  if (st.free_rank > 0) {
    return st.free_rank == 1 && st.core.dim() == 0;
  }
  std::vector<Matrix> end = span_basis(hom_space(m, m).basis);
  if (end.size() == 1) {
    return true;
  }
  if (auto fl = fast_local(end)) {
    return *fl;
  }
  auto rad = radical_trace(end);
  return end.size() - rad.size() == 1;
}

namespace {

  /// For each summand of a, the index of the isomorphic summand of b and an
  /// isomorphism a.module -> b.module.
  std::optional<std::vector<std::pair<std::size_t, Matrix>>> match_summands(Decomposition const& a,
                                                                            Decomposition const& b,
                                                                            IsoOptions const& opts) {
    if (a.summands.size() != b.summands.size()) {
      return std::nullopt;
    }
    std::vector<bool> used(b.summands.size(), false);
    std::vector<std::pair<std::size_t, Matrix>> match;
    for (auto const& sa : a.summands) {
      bool found = false;
      for (std::size_t j = 0; j < b.summands.size() && !found; ++j) {
        auto const& sb = b.summands[j];
        if (used[j] || sb.multiplicity != sa.multiplicity || sb.free != sa.free) {
          continue;
        }
        if (sa.free) {
          match.emplace_back(j, Matrix::identity(sa.module.field_ptr(), sa.module.dim()));
          used[j] = found = true;
        } else if (auto phi = find_isomorphism(sa.module, sb.module, opts)) {
          match.emplace_back(j, std::move(*phi));
          used[j] = found = true;
        }
      }
      if (!found) {
        return std::nullopt;
      }
    }
    return match;
  }

}  // namespace

bool same_summands(Decomposition const& a, Decomposition const& b, IsoOptions const& opts) {
  return match_summands(a, b, opts).has_value();
}

std::optional<Matrix> isomorphism_from_decompositions(Module const& m,
                                                      Decomposition const& a,
                                                      Module const& n,
                                                      Decomposition const& b,
                                                      IsoOptions const& opts) {
  if (m.dim() != n.dim()) {
    return std::nullopt;
  }
  auto match = match_summands(a, b, opts);
  if (!match) {
    return std::nullopt;
  }
  std::vector<std::size_t> off_b(b.summands.size() + 1, 0);
  for (std::size_t j = 0; j < b.summands.size(); ++j) {
    off_b[j + 1] = off_b[j] + b.summands[j].module.dim() * b.summands[j].multiplicity;
  }
  Matrix psi(m.field_ptr(), n.dim(), m.dim());
  std::size_t off_a = 0;
  for (std::size_t i = 0; i < a.summands.size(); ++i) {
    auto const& [j, phi] = (*match)[i];
    std::size_t const k = a.summands[i].module.dim();
    for (std::size_t c = 0; c < a.summands[i].multiplicity; ++c) {
      psi.set_block(off_b[j] + c * k, off_a + c * k, phi);
    }
    off_a += k * a.summands[i].multiplicity;
  }
  Matrix iso = b.witness * psi * *inverse(a.witness);
  if (!is_homomorphism(iso, m, n)) {
    throw Error("assembled isomorphism failed verification");
  }
  return iso;
}

}  // namespace algmod
