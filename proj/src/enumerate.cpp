#include "algmod/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <thread>

#include "algmod/decomp.hpp"
#include "algmod/hom.hpp"
#include "algmod/io.hpp"

namespace algmod {

std::vector<std::vector<std::size_t>> partitions(std::size_t d, std::size_t max_part) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t left, std::size_t cap) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (std::size_t k = std::min(left, cap); k >= 1; --k) {
      cur.push_back(k);
      self(self, left - k, k);
      cur.pop_back();
    }
  };
  rec(rec, d, max_part);
  return out;
}

Matrix jordan_nilpotent(FieldPtr const& f, std::vector<std::size_t> const& blocks) {
  std::size_t d = std::accumulate(blocks.begin(), blocks.end(), std::size_t(0));
  Matrix a(f, d, d);
  std::size_t off = 0;
  for (std::size_t b : blocks) {
    for (std::size_t i = 0; i + 1 < b; ++i) {
      a(off + i, off + i + 1) = 1;
    }
    off += b;
  }
  return a;
}

namespace {

  Matrix unflatten(FieldPtr const& f, std::size_t d, Elem const* v) {
    Matrix m(f, d, d);
    std::copy(v, v + d * d, m.data().begin());
    return m;
  }

  /// Rows in RREF spanning the joint centralizer, flattened row-major.
  Matrix centralizer_rows(FieldPtr const& f, std::size_t d, std::vector<Matrix> const& mats) {
    std::size_t const n = d * d;
    if (mats.empty()) {
      return Matrix::identity(f, n);
    }
    Matrix id = Matrix::identity(f, d);
    std::vector<Matrix> blocks;
    for (auto const& a : mats) {
      blocks.push_back(kron(a, id) - kron(id, a.transpose()));
    }
    Matrix ns = nullspace(Matrix::vstack(std::span<Matrix const>(blocks)));
    Matrix rows = ns.transpose();
    rref(rows);
    return rows;
  }

  std::vector<std::size_t> power_ranks(Matrix const& a, std::uint32_t p) {
    std::vector<std::size_t> r;
    Matrix x = a;
    for (std::uint32_t j = 1; j <= p; ++j) {
      r.push_back(rank(x));
      x = x * a;
    }
    return r;
  }

  void require_prime_small(Module const& m, char const* what) {
    if (!m.field().is_prime_field()) {
      throw Unsupported(std::string(what) + ": prime fields only");
    }
  }

  /// Odometer over all coefficient tuples of `rows`, in lexicographic order of
  /// the resulting vectors; f returns true to stop.
  template <class F>
  void for_each_in_span(Matrix const& rows, std::uint32_t q, F&& f) {
    std::size_t const k = rows.rows(), n = rows.cols();
    FieldPtr fp = rows.field_ptr();
    Field const& fld = *fp;
    std::vector<Elem> coef(k, 0);
    std::vector<Elem> v(n, 0);
    for (;;) {
      std::fill(v.begin(), v.end(), 0);
      for (std::size_t i = 0; i < k; ++i) {
        if (coef[i] != 0) {
          Elem const* r = rows.row(i);
          for (std::size_t j = 0; j < n; ++j) {
            v[j] = fld.add(v[j], fld.mul(coef[i], r[j]));
          }
        }
      }
      if (f(v)) {
        return;
      }
      std::size_t i = k;
      while (i > 0) {
        --i;
        if (++coef[i] < q) {
          break;
        }
        coef[i] = 0;
        if (i == 0) {
          return;
        }
      }
      if (k == 0) {
        return;
      }
    }
  }

}  // namespace

std::vector<Matrix> centralizer_basis(FieldPtr const& f, std::size_t d, std::vector<Matrix> const& mats) {
  Matrix rows = centralizer_rows(f, d, mats);
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    out.push_back(unflatten(f, d, rows.row(i)));
  }
  return out;
}

Module canonical_representative(Module const& m) {
  require_prime_small(m, "canonical_representative");
  std::size_t const d = m.dim();
  if (d > 4) {
    throw Unsupported("canonical_representative: dim > 4; use registry labels instead");
  }
  if (d == 0) {
    return m;
  }
  FieldPtr f = m.field_ptr();
  std::uint32_t const p = m.group().p;
  std::vector<Matrix> chosen;
  for (std::size_t k = 0; k < m.rank(); ++k) {
    GroupSpec sub{p, std::uint32_t(k + 1)};
    std::vector<Matrix> prefix(m.gens().begin(), m.gens().begin() + std::ptrdiff_t(k + 1));
    Module target(sub, f, prefix);
    auto const want = power_ranks(m.gen(k), p);
    Matrix rows = centralizer_rows(f, d, chosen);
    bool found = false;
    for_each_in_span(rows, f->order(), [&](std::vector<Elem> const& v) {
      Matrix x = unflatten(f, d, v.data());
      if (power_ranks(x, p) != want) {
        return false;
      }
      std::vector<Matrix> gens = chosen;
      gens.push_back(x);
      Module cand(sub, f, gens);
      if (cand.fingerprint() != target.fingerprint() || !is_isomorphic(cand, target)) {
        return false;
      }
      chosen.push_back(std::move(x));
      found = true;
      return true;
    });
    if (!found) {
      throw Error("canonical_representative: orbit search failed (input not a module?)");
    }
  }
  return Module(m.group(), f, chosen);
}

std::optional<std::uint64_t> automorphism_count(Module const& m, std::uint64_t limit) {
  HomSpace e = hom_space(m, m);
  std::uint64_t const q = m.field().order();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < e.dim(); ++i) {
    total *= q;
    if (total > limit) {
      return std::nullopt;
    }
  }
  std::size_t const d = m.dim();
  Matrix rows(m.field_ptr(), e.dim(), d * d);
  for (std::size_t i = 0; i < e.dim(); ++i) {
    std::copy(e.basis[i].data().begin(), e.basis[i].data().end(), rows.row(i));
  }
  std::uint64_t units = 0;
  FieldPtr f = m.field_ptr();
  for_each_in_span(rows, std::uint32_t(q), [&](std::vector<Elem> const& v) {
    units += is_invertible(unflatten(f, d, v.data())) ? 1 : 0;
    return false;
  });
  return units;
}

std::optional<std::uint64_t> general_linear_order(std::uint32_t p, std::size_t d) {
  unsigned __int128 pd = 1;
  for (std::size_t i = 0; i < d; ++i) {
    pd *= p;
  }
  unsigned __int128 out = 1, pi = 1;
  for (std::size_t i = 0; i < d; ++i) {
    out *= (pd - pi);
    pi *= p;
    if (out > std::numeric_limits<std::uint64_t>::max()) {
      return std::nullopt;
    }
  }
  return std::uint64_t(out);
}

std::optional<std::uint64_t> count_commuting_pairs(std::uint32_t p, std::size_t d, std::uint64_t limit) {
  std::size_t const n = d * d;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= p;
    if (total > limit) {
      return std::nullopt;
    }
  }
  using Mat = std::vector<std::uint32_t>;
  auto mul = [&](Mat const& a, Mat const& b) {
    Mat c(n, 0);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t k = 0; k < d; ++k) {
        if (a[i * d + k] == 0) {
          continue;
        }
        for (std::size_t j = 0; j < d; ++j) {
          c[i * d + j] = (c[i * d + j] + a[i * d + k] * b[k * d + j]) % p;
        }
      }
    }
    return c;
  };
  std::vector<Mat> nil;
  Mat a(n, 0);
  for (std::uint64_t t = 0; t < total; ++t) {
    std::uint64_t x = t;
    for (std::size_t i = n; i-- > 0;) {
      a[i] = std::uint32_t(x % p);
      x /= p;
    }
    Mat pw = a;
    for (std::uint32_t j = 1; j < p; ++j) {
      pw = mul(pw, a);
    }
    if (std::all_of(pw.begin(), pw.end(), [](std::uint32_t v) { return v == 0; })) {
      nil.push_back(a);
    }
  }
  std::uint64_t pairs = 0;
  for (auto const& x : nil) {
    for (auto const& y : nil) {
      pairs += mul(x, y) == mul(y, x) ? 1 : 0;
    }
  }
  return pairs;
}

// --- census ---------------------------------------------------------------

namespace {

  using Key = std::vector<std::size_t>;

  Key census_key(Module const& m) {
    Key k = m.fingerprint();
    std::uint32_t const p = m.group().p;
    Field const& f = m.field();
    for (Elem c = 0; c < f.order(); ++c) {
      Matrix u = m.gen(0);
      u.add_scaled(m.gen(1), c);
      auto r = power_ranks(u, p);
      k.insert(k.end(), r.begin(), r.end());
    }
    return k;
  }

  template <class F>
  void parallel_for(std::size_t n, std::size_t workers, F&& f) {
    if (workers <= 1 || n < 2) {
      for (std::size_t i = 0; i < n; ++i) {
        f(i);
      }
      return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(workers);
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = next++; i < n; i = next++) {
            f(i);
          }
        } catch (...) {
          errs[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) {
      th.join();
    }
    for (auto& e : errs) {
      if (e) {
        std::rethrow_exception(e);
      }
    }
  }

  struct Classifier {
    std::map<Key, std::vector<std::size_t>> buckets;
    std::vector<Module> reps;
    std::vector<Key> keys;
    std::uint64_t seed;

    std::optional<std::size_t> locate(Module const& m, Key const& k) const {
      auto it = buckets.find(k);
      if (it == buckets.end()) {
        return std::nullopt;
      }
      for (std::size_t idx : it->second) {
        if (is_isomorphic(m, reps[idx], IsoOptions{seed, 40})) {
          return idx;
        }
      }
      return std::nullopt;
    }

    std::size_t admit(Module const& m, Key const& k) {
      if (auto i = locate(m, k)) {
        return *i;
      }
      std::size_t idx = reps.size();
      reps.push_back(m);
      keys.push_back(k);
      buckets[k].push_back(idx);
      return idx;
    }
  };

  struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
      while (parent[x] != x) {
        x = parent[x] = parent[parent[x]];
      }
      return x;
    }
    void join(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  };

  bool lex_less(Module const& a, Module const& b) {
    for (std::size_t g = 0; g < a.rank(); ++g) {
      auto const& x = a.gen(g).data();
      auto const& y = b.gen(g).data();
      if (x != y) {
        return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
      }
    }
    return false;
  }

}  // namespace

CensusResult enumerate_modules(std::uint32_t p, std::size_t d, bool indecomposable_only, CensusOptions const& opts) {
  if (p != 2 && p != 3 && p != 5) {
    throw Unsupported("enumerate_modules: p must be 2, 3 or 5");
  }
  if (d == 0) {
    throw Error("enumerate_modules: dimension must be positive");
  }
  CensusResult res;
  res.p = p;
  res.dim = d;
  FieldPtr f = Field::prime(p);
  GroupSpec g{p, 2};

  // Candidate stream: A in Jordan form; B over the nilpotent part of C(A),
  // or over Jordan forms when A = 0.
  std::vector<Module> cands;
  auto parts = partitions(d, p);
  for (auto const& lam : parts) {
    if (!res.complete) {
      break;
    }
    Matrix a = jordan_nilpotent(f, lam);
    if (lam.front() == 1) {
      for (auto const& mu : parts) {
        cands.emplace_back(g, f, std::vector<Matrix>{a, jordan_nilpotent(f, mu)});
      }
      continue;
    }
    Matrix rows = centralizer_rows(f, d, {a});
    std::size_t seen = 0;
    for_each_in_span(rows, p, [&](std::vector<Elem> const& v) {
      if (++seen + res.candidates > opts.max_candidates) {
        res.complete = false;
        return true;
      }
      Matrix b = unflatten(f, d, v.data());
      if (b.power(p).is_zero()) {
        cands.emplace_back(g, f, std::vector<Matrix>{a, std::move(b)});
      }
      return false;
    });
    res.candidates += seen;
  }
  if (!res.complete) {
    res.note = "candidate budget of " + std::to_string(opts.max_candidates) + " exceeded; counts are partial";
  }

  std::vector<Key> keys(cands.size());
  parallel_for(cands.size(), opts.workers, [&](std::size_t i) { keys[i] = census_key(cands[i]); });
  Classifier cls{{}, {}, {}, opts.seed};
  for (std::size_t i = 0; i < cands.size(); ++i) {
    cls.admit(cands[i], keys[i]);
  }

  std::size_t const nc = cls.reps.size();
  std::vector<CensusClass> all(nc);
  parallel_for(nc, opts.workers, [&](std::size_t i) {
    CensusClass& c = all[i];
    c.module = cls.reps[i];
    if (opts.canonicalize && d <= 4) {
      c.module = canonical_representative(cls.reps[i]);
    }
    c.indecomposable = is_indecomposable(c.module);
    c.absolutely_indecomposable = c.indecomposable && is_absolutely_indecomposable(c.module);
    if (opts.orbit_sizes) {
      auto gl = general_linear_order(p, d);
      auto aut = automorphism_count(c.module);
      if (gl && aut && *aut > 0) {
        c.orbit_size = *gl / *aut;
      }
    }
    if (opts.periodicity && c.indecomposable) {
      c.periodic = periodicity(c.module, opts.seed).verdict;
    }
  });
  res.total_classes = nc;

  // Orbit totals over every class, decomposable ones included.
  bool all_known = true;
  std::uint64_t sum = 0;
  for (auto const& c : all) {
    all_known = all_known && c.orbit_size.has_value();
    sum += c.orbit_size.value_or(0);
  }
  if (opts.orbit_sizes && all_known && res.complete) {
    res.orbit_pair_total = sum;
  }
  res.direct_pair_total = count_commuting_pairs(p, d);

  // Generator swap and the full automorphism group of C_p x C_p, on
  // indecomposables.
  UnionFind swap_uf(nc), aut_uf(nc);
  std::vector<std::vector<std::vector<std::uint32_t>>> gens_swap = {{{0, 1}, {1, 0}}};
  std::vector<std::vector<std::vector<std::uint32_t>>> gens_aut = {{{0, 1}, {1, 0}}, {{1, 1}, {0, 1}}};
  gens_aut.push_back({{f->primitive(), 0}, {0, 1}});
  auto twist_join = [&](UnionFind& uf, std::vector<std::vector<std::vector<std::uint32_t>>> const& gs) {
    for (std::size_t i = 0; i < nc; ++i) {
      for (auto const& t : gs) {
        Module tw = restrict(cls.reps[i], SubgroupSpec{g, t});
        Module as_g(g, f, tw.gens());
        auto j = cls.locate(as_g, census_key(as_g));
        if (!j) {
          throw Error("enumerate_modules: twisted module missing from the census");
        }
        uf.join(i, *j);
      }
    }
  };
  if (res.complete) {
    twist_join(swap_uf, gens_swap);
    twist_join(aut_uf, gens_aut);
  }
  std::set<std::size_t> swap_roots, aut_roots;
  for (std::size_t i = 0; i < nc; ++i) {
    if (all[i].indecomposable) {
      ++res.indecomposable_count;
      res.abs_indecomposable_count += all[i].absolutely_indecomposable ? 1 : 0;
      res.periodic_count += all[i].periodic == PeriodicVerdict::Periodic ? 1 : 0;
      swap_roots.insert(swap_uf.find(i));
      aut_roots.insert(aut_uf.find(i));
    }
  }
  // Partial censuses are not closed under twisting; leave these at zero.
  res.swap_classes = res.complete ? swap_roots.size() : 0;
  res.automorphism_classes = res.complete ? aut_roots.size() : 0;

  if (opts.canonicalize && d <= 4) {
    std::stable_sort(all.begin(), all.end(),
                     [](CensusClass const& a, CensusClass const& b) { return lex_less(a.module, b.module); });
  }
  std::size_t idx = 0;
  for (auto& c : all) {
    if (indecomposable_only && !c.indecomposable) {
      continue;
    }
    c.label = "D" + std::to_string(d) + "_" + std::to_string(idx++);
    res.classes.push_back(std::move(c));
  }
  return res;
}

void save_census(CensusResult const& c, std::string const& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::ofstream idx(fs::path(dir) / "index.txt");
  if (!idx) {
    throw Error("cannot write census index in " + dir);
  }
  idx << "# p " << c.p << " dim " << c.dim << " complete " << (c.complete ? 1 : 0) << "\n";
  idx << "# label dim indecomposable absolutely_indecomposable periodic orbit_size\n";
  for (auto const& e : c.classes) {
    write_module_file((fs::path(dir) / (e.label + ".mod")).string(), e.module);
    idx << e.label << " " << e.module.dim() << " " << (e.indecomposable ? 1 : 0) << " "
        << (e.absolutely_indecomposable ? 1 : 0) << " " << (e.periodic ? to_string(*e.periodic) : "-") << " "
        << (e.orbit_size ? std::to_string(*e.orbit_size) : "-") << "\n";
  }
}

}  // namespace algmod
