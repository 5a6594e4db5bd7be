#include "algmod/algcheck.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "algmod/heller.hpp"
#include "algmod/io.hpp"

namespace algmod {

std::string to_string(PeriodicVerdict v) {
  switch (v) {
    case PeriodicVerdict::Periodic: return "Periodic";
    case PeriodicVerdict::NonPeriodic: return "NonPeriodic";
    case PeriodicVerdict::Projective: return "Projective";
    case PeriodicVerdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string to_string(ClosureVerdict v) {
  switch (v) {
    case ClosureVerdict::Algebraic: return "Algebraic";
    case ClosureVerdict::NonAlgebraic: return "NonAlgebraic";
    case ClosureVerdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::size_t PeriodicityReport::non_free_lines() const noexcept {
  std::size_t n = 0;
  for (auto const& l : lines) {
    n += l.free ? 0 : 1;
  }
  return n;
}

namespace {

  void require_rank_two(Module const& m, char const* what) {
    if (m.group().rank != 2) {
      throw Unsupported(std::string(what) + ": only groups of rank 2 are supported");
    }
  }

  bool free_along(Matrix const& a1, Matrix const& a2, Elem l1, Elem l2, std::uint32_t p) {
    Matrix u = a1.scaled(l1);
    u.add_scaled(a2, l2);
    return rank(u.power(p - 1)) == a1.rows() / p;
  }

}  // namespace

bool shifted_unit_free_test(Module const& m, FieldPtr const& ext, Elem lambda1, Elem lambda2) {
  require_rank_two(m, "shifted_unit_free_test");
  if (lambda1 == 0 && lambda2 == 0) {
    throw Error("shifted_unit_free_test: lambda must be nonzero");
  }
  if (ext->p() != m.field().p()) {
    throw Error("shifted_unit_free_test: characteristic mismatch");
  }
  std::uint32_t const p = m.group().p;
  if (m.dim() % p != 0) {
    return false;
  }
  if (m.dim() == 0) {
    return true;
  }
  return free_along(extend_scalars(m.gen(0), ext), extend_scalars(m.gen(1), ext), lambda1, lambda2, p);
}

std::vector<LineSample> sample_lines(Module const& m, std::uint32_t& extension_degree) {
  require_rank_two(m, "sample_lines");
  std::uint32_t const p = m.group().p;
  std::uint32_t e = 1;
  std::uint64_t q = p;
  while (q + 1 <= m.dim()) {
    q *= p;
    ++e;
  }
  extension_degree = e;
  FieldPtr ext = Field::extension(p, e);
  std::vector<LineSample> out;
  bool const divisible = m.dim() % p == 0 && m.dim() > 0;
  Matrix a1, a2;
  if (divisible) {
    a1 = extend_scalars(m.gen(0), ext);
    a2 = extend_scalars(m.gen(1), ext);
  }
  auto add = [&](Elem l1, Elem l2) {
    LineSample s{l1, l2, false};
    s.free = divisible && free_along(a1, a2, l1, l2, p);
    out.push_back(s);
  };
  for (std::uint32_t t = 0; t < ext->order(); ++t) {
    add(1, Elem(t));
  }
  add(0, 1);
  return out;
}

PeriodicityReport periodicity(Module const& m, std::uint64_t seed) {
  require_rank_two(m, "periodicity");
  if (!is_indecomposable(m)) {
    throw Error("periodicity: module is decomposable");
  }
  PeriodicityReport rep;
  rep.lines = sample_lines(m, rep.extension_degree);
  std::size_t const non_free = rep.non_free_lines();
  std::size_t const total = rep.lines.size();
  Module const core = strip_projectives(m).core;
  if (core.dim() == 0) {
    if (non_free == 0) {
      rep.verdict = PeriodicVerdict::Projective;
      rep.complexity = 0;
    } else {
      rep.note = "projective module with a non-free line";
    }
    return rep;
  }
  for (int period : {1, 2}) {
    Module om = omega_n(m, period);
    if (om.dim() != core.dim()) {
      continue;
    }
    if (auto iso = find_isomorphism(om, m, IsoOptions{seed, 40})) {
      if (non_free < total) {
        rep.verdict = PeriodicVerdict::Periodic;
        rep.period = period;
        rep.complexity = 1;
        rep.witness = std::move(*iso);
      } else {
        rep.note = "translate isomorphic but every sampled line is non-free";
      }
      return rep;
    }
  }
  if (non_free == total && non_free > m.dim()) {
    rep.verdict = PeriodicVerdict::NonPeriodic;
    rep.complexity = 2;
    rep.note = "assumes the rank variety is cut out in degree at most dim: " + std::to_string(non_free) +
               " non-free lines > dim " + std::to_string(m.dim());
  } else {
    rep.note = "no period-1 or period-2 witness, but some line is free; needs manual review";
  }
  return rep;
}

VerifyResult verify(Module const& m, PeriodicityReport const& rep) {
  PeriodicityReport again = periodicity(m);
  if (again.verdict != rep.verdict) {
    return {false, "periodicity verdict differs: " + to_string(again.verdict) + " vs " + to_string(rep.verdict)};
  }
  if (rep.verdict == PeriodicVerdict::NonPeriodic && rep.non_free_lines() <= m.dim()) {
    return {false, "too few non-free lines for a non-periodic verdict"};
  }
  if (rep.verdict == PeriodicVerdict::Periodic) {
    if (!rep.witness) {
      return {false, "periodic verdict without a witness"};
    }
    Module om = omega_n(m, rep.period);
    if (!is_homomorphism(*rep.witness, om, m) || !is_invertible(*rep.witness)) {
      return {false, "periodicity witness is not an isomorphism"};
    }
  }
  for (std::size_t i = 0; i < rep.lines.size() && i < again.lines.size(); ++i) {
    if (rep.lines[i].free != again.lines[i].free) {
      return {false, "line sample " + std::to_string(i) + " differs"};
    }
  }
  return {true, ""};
}

// --- registry -------------------------------------------------------------

IsoClassRegistry::IsoClassRegistry(std::string prefix, std::uint64_t seed) : prefix_(std::move(prefix)), seed_(seed) {}

IsoClassRegistry::IsoClassRegistry(IsoClassRegistry const& other) {
  std::lock_guard lock(other.mu_);
  prefix_ = other.prefix_;
  seed_ = other.seed_;
  entries_ = other.entries_;
}

IsoClassRegistry& IsoClassRegistry::operator=(IsoClassRegistry const& other) {
  if (this != &other) {
    std::scoped_lock lock(mu_, other.mu_);
    prefix_ = other.prefix_;
    seed_ = other.seed_;
    entries_ = other.entries_;
  }
  return *this;
}

std::optional<std::size_t> IsoClassRegistry::find(Module const& m) const {
  std::lock_guard lock(mu_);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    Module const& e = entries_[i].module;
    if (e.dim() == m.dim() && e.fingerprint() == m.fingerprint() && is_isomorphic(e, m, IsoOptions{seed_, 40})) {
      return i;
    }
  }
  return std::nullopt;
}

std::pair<std::size_t, bool> IsoClassRegistry::admit(Module const& m) {
  if (auto i = find(m)) {
    return {*i, false};
  }
  bool const abs = is_absolutely_indecomposable(m);
  std::lock_guard lock(mu_);
  std::size_t const idx = entries_.size();
  entries_.push_back(ClassEntry{prefix_ + std::to_string(idx), m, abs, std::nullopt});
  return {idx, true};
}

std::size_t IsoClassRegistry::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

ClassEntry const& IsoClassRegistry::at(std::size_t i) const {
  std::lock_guard lock(mu_);
  return entries_.at(i);
}

std::vector<ClassEntry> IsoClassRegistry::entries() const {
  std::lock_guard lock(mu_);
  return entries_;
}

void IsoClassRegistry::set_periodic(std::size_t i, PeriodicVerdict v) {
  std::lock_guard lock(mu_);
  entries_.at(i).periodic = v;
}

void IsoClassRegistry::save(std::string const& dir) const {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::lock_guard lock(mu_);
  std::ofstream idx(fs::path(dir) / "index.txt");
  if (!idx) {
    throw Error("cannot write registry index in " + dir);
  }
  idx << "# label dim absolutely_indecomposable periodic\n";
  for (auto const& e : entries_) {
    write_module_file((fs::path(dir) / (e.label + ".mod")).string(), e.module);
    idx << e.label << " " << e.module.dim() << " " << (e.absolutely_indecomposable ? 1 : 0) << " "
        << (e.periodic ? to_string(*e.periodic) : "-") << "\n";
  }
}

IsoClassRegistry IsoClassRegistry::load(std::string const& dir, std::uint64_t seed) {
  namespace fs = std::filesystem;
  std::ifstream idx(fs::path(dir) / "index.txt");
  if (!idx) {
    throw Error("no registry index in " + dir);
  }
  IsoClassRegistry reg("M", seed);
  std::string line;
  bool prefix_set = false;
  while (std::getline(idx, line)) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    std::istringstream ls(line);
    std::string label, per;
    std::size_t dim = 0;
    int abs = 0;
    if (!(ls >> label >> dim >> abs >> per)) {
      throw Error("malformed registry index line: " + line);
    }
    Module m = read_module_file((fs::path(dir) / (label + ".mod")).string());
    if (m.dim() != dim) {
      throw Error("registry entry " + label + " has the wrong dimension");
    }
    if (!prefix_set) {
      std::size_t k = label.size();
      while (k > 0 && std::isdigit(static_cast<unsigned char>(label[k - 1]))) {
        --k;
      }
      reg.prefix_ = label.substr(0, k);
      prefix_set = true;
    }
    ClassEntry e{label, m, abs != 0, std::nullopt};
    for (auto v : {PeriodicVerdict::Periodic, PeriodicVerdict::NonPeriodic, PeriodicVerdict::Projective,
                   PeriodicVerdict::Unknown}) {
      if (per == to_string(v)) {
        e.periodic = v;
      }
    }
    reg.entries_.push_back(std::move(e));
  }
  return reg;
}

// --- translate scan -------------------------------------------------------

namespace {

  struct ScanContext {
    ScanContext(Module b, int w, ClosureOptions o) : base(std::move(b)), window(w), opts(std::move(o)) {}

    Module base;
    int window;
    ClosureOptions opts;
    bool built = false;
    // (dual_direction, i, module)
    std::vector<std::tuple<bool, int, Module>> translates;
    std::optional<PeriodicityReport> base_periodicity;

    void build() {
      if (built) {
        return;
      }
      built = true;
      Module const d = dual(base);
      for (bool dir : {false, true}) {
        Module const& src = dir ? d : base;
        Module up = strip_projectives(src).core, down = up;
        for (int i = 1; i <= window; ++i) {
          up = strip_projectives(omega(up)).core;
          down = strip_projectives(omega_inverse(down)).core;
          translates.emplace_back(dir, i, up);
          translates.emplace_back(dir, -i, down);
        }
      }
    }

    PeriodicityReport const& nonperiodicity() {
      if (!base_periodicity) {
        base_periodicity = periodicity(base, opts.seed);
      }
      return *base_periodicity;
    }
  };

  std::optional<NonAlgebraicCertificate> scan_with(ScanContext& ctx, Module const& found, std::size_t n) {
    if (n < 2) {
      return std::nullopt;
    }
    ctx.build();
    for (auto const& [dir, i, t] : ctx.translates) {
      if (t.dim() != found.dim() || t.fingerprint() != found.fingerprint()) {
        continue;
      }
      if (!is_isomorphic(found, t, IsoOptions{ctx.opts.seed, 40})) {
        continue;
      }
      PeriodicityReport const& np = ctx.nonperiodicity();
      if (np.verdict != PeriodicVerdict::NonPeriodic) {
        return std::nullopt;
      }
      // Extract the summand from the tensor power itself.
      std::size_t pd = 1;
      for (std::size_t k = 0; k < n; ++k) {
        pd *= ctx.base.dim();
      }
      if (pd > ctx.opts.budget.max_dim) {
        return std::nullopt;
      }
      Module power = tensor_power(ctx.base, n);
      Decomposition dec = decompose(power, DecomposeOptions{ctx.opts.seed});
      Matrix const winv = *inverse(dec.witness);
      std::size_t off = 0;
      for (auto const& s : dec.summands) {
        std::size_t const k = s.module.dim();
        if (!s.free && k == found.dim()) {
          if (auto psi = find_isomorphism(found, s.module, IsoOptions{ctx.opts.seed, 40})) {
            NonAlgebraicCertificate cert;
            cert.base = ctx.base;
            cert.n = n;
            cert.i = i;
            cert.dual_direction = dir;
            cert.summand = found;
            Matrix const psi_inv = *inverse(*psi);
            cert.inclusion = dec.witness.block(0, off, power.dim(), k) * *psi;
            cert.projection = psi_inv * winv.block(off, 0, k, power.dim());
            cert.nonperiodicity = np;
            return cert;
          }
        }
        off += k * s.multiplicity;
      }
      return std::nullopt;
    }
    return std::nullopt;
  }

}  // namespace

std::optional<NonAlgebraicCertificate> easynonalg_scan(Module const& base,
                                                       Module const& found,
                                                       std::size_t n,
                                                       int omega_window,
                                                       ClosureOptions const& opts) {
  ScanContext ctx(base, omega_window, opts);
  auto cert = scan_with(ctx, found, n);
  if (cert && !verify(*cert, opts.seed).ok) {
    return std::nullopt;
  }
  return cert;
}

VerifyResult verify(NonAlgebraicCertificate const& cert, std::uint64_t seed) {
  if (cert.i == 0) {
    return {false, "shift must be nonzero"};
  }
  if (cert.n < 2) {
    return {false, "tensor power must be at least 2"};
  }
  Module power = tensor_power(cert.base, cert.n);
  if (cert.inclusion.rows() != power.dim() || cert.inclusion.cols() != cert.summand.dim() ||
      cert.projection.rows() != cert.summand.dim() || cert.projection.cols() != power.dim()) {
    return {false, "summand witness has the wrong shape"};
  }
  if (!is_homomorphism(cert.inclusion, cert.summand, power)) {
    return {false, "inclusion is not a homomorphism"};
  }
  if (!is_homomorphism(cert.projection, power, cert.summand)) {
    return {false, "projection is not a homomorphism"};
  }
  if (!(cert.projection * cert.inclusion == Matrix::identity(cert.base.field_ptr(), cert.summand.dim()))) {
    return {false, "projection does not split the inclusion"};
  }
  if (strip_projectives(cert.summand).free_rank != 0 || !is_indecomposable(cert.summand)) {
    return {false, "summand is not an indecomposable non-projective module"};
  }
  Module src = cert.dual_direction ? dual(cert.base) : cert.base;
  Module t = omega_n(src, cert.i);
  if (!is_isomorphic(t, cert.summand, IsoOptions{seed, 40})) {
    return {false, "summand is not isomorphic to the claimed translate"};
  }
  PeriodicityReport np = periodicity(cert.base, seed);
  if (np.verdict != PeriodicVerdict::NonPeriodic) {
    return {false, "base is not certified non-periodic"};
  }
  if (np.non_free_lines() <= cert.base.dim()) {
    return {false, "too few non-free lines"};
  }
  if (cert.nonperiodicity.verdict != PeriodicVerdict::NonPeriodic) {
    return {false, "embedded periodicity report is not NonPeriodic"};
  }
  return {true, ""};
}

// --- closure --------------------------------------------------------------

namespace {

  struct PairResult {
    std::size_t free_rank = 0;
    std::vector<std::pair<Module, std::size_t>> summands;
    std::string error;
  };

  PairResult tensor_decompose(Module const& a, Module const& b, std::uint64_t seed) {
    PairResult r;
    Module t = tensor(a, b);
    StripResult st = strip_projectives(t);
    r.free_rank = st.free_rank;
    Decomposition d = decompose(st.core, DecomposeOptions{seed});
    for (auto const& s : d.summands) {
      r.summands.emplace_back(s.module, s.multiplicity);
    }
    return r;
  }

  std::uint64_t pair_seed(std::uint64_t seed, std::size_t a, std::size_t b) {
    return splitmix64(seed ^ splitmix64((std::uint64_t(a) << 32) | std::uint64_t(b)));
  }

  template <class F>
  void run_parallel(std::size_t n, std::size_t workers, F&& f) {
    if (workers <= 1 || n <= 1) {
      for (std::size_t i = 0; i < n; ++i) {
        f(i);
      }
      return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::size_t const w = std::min(workers, n);
    std::vector<std::exception_ptr> errs(w);
    for (std::size_t t = 0; t < w; ++t) {
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

  constexpr std::size_t kChunk = 8;

  ClosureResult run_closure(std::vector<Module> const& start, Module const* scan_base, ClosureOptions const& opts) {
    ClosureResult res;
    IsoClassRegistry reg("M", opts.seed);
    std::vector<std::size_t> level;
    std::set<std::pair<std::size_t, std::size_t>> pending;
    std::map<std::pair<std::size_t, std::size_t>, TableEntry> table;
    std::optional<ScanContext> scan;
    if (scan_base && opts.scan) {
      scan.emplace(*scan_base, opts.budget.omega_window, opts);
    }
    auto add_class = [&](Module const& m, std::size_t lvl) -> std::pair<std::size_t, bool> {
      auto [idx, fresh] = reg.admit(m);
      if (fresh) {
        level.push_back(lvl);
        for (std::size_t i = 0; i <= idx; ++i) {
          pending.emplace(i, idx);
        }
        if (!reg.at(idx).absolutely_indecomposable) {
          res.flagged_not_absolutely_indecomposable = true;
        }
      }
      return {idx, fresh};
    };
    auto finish = [&](ClosureVerdict v, std::string note) {
      res.verdict = v;
      res.note = std::move(note);
      for (std::size_t i = 0; i < reg.size(); ++i) {
        res.labels.push_back(reg.at(i).label);
      }
      res.levels = level;
      return res;
    };
    for (auto const& s : start) {
      add_class(s, 1);
    }
    if (reg.size() > opts.budget.max_classes) {
      return finish(ClosureVerdict::Inconclusive, "class budget exceeded");
    }
    while (!pending.empty()) {
      if (res.steps >= opts.budget.max_steps) {
        return finish(ClosureVerdict::Inconclusive, "step budget exceeded");
      }
      std::vector<std::pair<std::size_t, std::size_t>> chunk;
      for (auto it = pending.begin(); it != pending.end() && chunk.size() < kChunk &&
                                      res.steps + chunk.size() < opts.budget.max_steps;
           ++it) {
        chunk.push_back(*it);
      }
      for (auto const& [a, b] : chunk) {
        if (reg.at(a).module.dim() * reg.at(b).module.dim() > opts.budget.max_dim) {
          return finish(ClosureVerdict::Inconclusive,
                        "dimension budget exceeded at " + reg.at(a).label + "*" + reg.at(b).label);
        }
      }
      std::vector<Module> left, right;
      for (auto const& [a, b] : chunk) {
        left.push_back(reg.at(a).module);
        right.push_back(reg.at(b).module);
      }
      std::vector<PairResult> out(chunk.size());
      run_parallel(chunk.size(), opts.workers, [&](std::size_t k) {
        out[k] = tensor_decompose(left[k], right[k], pair_seed(opts.seed, chunk[k].first, chunk[k].second));
      });
      for (std::size_t k = 0; k < chunk.size(); ++k) {
        auto const [a, b] = chunk[k];
        pending.erase(chunk[k]);
        ++res.steps;
        TableEntry entry;
        entry.a = a;
        entry.b = b;
        entry.free_rank = out[k].free_rank;
        std::map<std::size_t, std::size_t> counts;
        for (auto const& [mod, mult] : out[k].summands) {
          std::size_t const lvl = level[a] + level[b];
          auto [idx, fresh] = add_class(mod, lvl);
          counts[idx] += mult;
          if (fresh && reg.size() > opts.budget.max_classes) {
            return finish(ClosureVerdict::Inconclusive, "class budget exceeded");
          }
          if (fresh && scan) {
            if (auto cert = scan_with(*scan, mod, lvl)) {
              if (verify(*cert, opts.seed).ok) {
                res.nonalgebraic = std::move(cert);
                return finish(ClosureVerdict::NonAlgebraic,
                              "translate found in tensor power " + std::to_string(lvl));
              }
            }
          }
        }
        entry.classes.assign(counts.begin(), counts.end());
        table[{a, b}] = std::move(entry);
      }
    }
    ClosureCertificate cert;
    cert.group = start.front().group();
    for (std::size_t i = 0; i < reg.size(); ++i) {
      cert.labels.push_back(reg.at(i).label);
      cert.modules.push_back(reg.at(i).module);
    }
    for (auto& [key, e] : table) {
      cert.table.push_back(std::move(e));
    }
    res.algebraic = std::move(cert);
    return finish(ClosureVerdict::Algebraic, "closed");
  }

}  // namespace

ClosureResult tensor_closure(Module const& m, ClosureOptions const& opts) {
  Module const core = strip_projectives(m).core;
  if (core.dim() == 0) {
    ClosureResult res;
    res.verdict = ClosureVerdict::Algebraic;
    res.algebraic = ClosureCertificate{m.group(), {}, {}, {}};
    res.note = "projective";
    return res;
  }
  Decomposition d = decompose(core, DecomposeOptions{opts.seed});
  if (d.summands.size() == 1) {
    Module const& x = d.summands[0].module;
    return run_closure({x}, &x, opts);
  }
  // Several summand types: each must be algebraic on its own.
  for (auto const& s : d.summands) {
    ClosureResult r = run_closure({s.module}, &s.module, opts);
    if (r.verdict == ClosureVerdict::NonAlgebraic) {
      r.note += " (summand of the input)";
      return r;
    }
    if (r.verdict == ClosureVerdict::Inconclusive) {
      r.note += " (summand of the input)";
      return r;
    }
  }
  std::vector<Module> parts;
  for (auto const& s : d.summands) {
    parts.push_back(s.module);
  }
  return run_closure(parts, nullptr, opts);
}

VerifyResult verify(ClosureCertificate const& cert, std::uint64_t seed) {
  std::size_t const nc = cert.modules.size();
  if (cert.labels.size() != nc) {
    return {false, "label count differs from module count"};
  }
  std::size_t const order = cert.group.order();
  auto name = [&](std::size_t i) { return i < nc ? cert.labels[i] : "#" + std::to_string(i); };
  for (std::size_t i = 0; i < nc; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (cert.modules[i].dim() == cert.modules[j].dim() &&
          is_isomorphic(cert.modules[i], cert.modules[j], IsoOptions{seed, 40})) {
        return {false, "classes " + name(j) + " and " + name(i) + " are isomorphic"};
      }
    }
  }
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto const& e : cert.table) {
    std::string const tag = "entry " + name(e.a) + "*" + name(e.b);
    if (e.a >= nc || e.b >= nc || e.a > e.b) {
      return {false, tag + ": bad class index"};
    }
    if (!seen.emplace(e.a, e.b).second) {
      return {false, tag + ": duplicated"};
    }
    std::size_t sum = e.free_rank * order;
    for (auto const& [c, mult] : e.classes) {
      if (c >= nc) {
        return {false, tag + ": refers to a class outside the certificate"};
      }
      sum += mult * cert.modules[c].dim();
    }
    if (sum != cert.modules[e.a].dim() * cert.modules[e.b].dim()) {
      return {false, tag + ": dimensions do not balance"};
    }
    PairResult r = tensor_decompose(cert.modules[e.a], cert.modules[e.b], pair_seed(seed, e.a, e.b));
    if (r.free_rank != e.free_rank) {
      return {false, tag + ": free rank differs"};
    }
    std::map<std::size_t, std::size_t> counts;
    for (auto const& [mod, mult] : r.summands) {
      std::optional<std::size_t> hit;
      for (std::size_t c = 0; c < nc && !hit; ++c) {
        if (cert.modules[c].dim() == mod.dim() && is_isomorphic(cert.modules[c], mod, IsoOptions{seed, 40})) {
          hit = c;
        }
      }
      if (!hit) {
        return {false, tag + ": product has a summand outside the certificate"};
      }
      counts[*hit] += mult;
    }
    std::vector<std::pair<std::size_t, std::size_t>> got(counts.begin(), counts.end());
    if (got != e.classes) {
      return {false, tag + ": multiplicities differ"};
    }
  }
  if (seen.size() != nc * (nc + 1) / 2) {
    return {false, "table is missing pairs"};
  }
  return {true, ""};
}

// --- harness --------------------------------------------------------------

HarnessReport conjecture_harness(std::vector<Module> const& modules, ClosureOptions const& opts) {
  HarnessReport rep;
  for (auto const& m : modules) {
    require_valid(m);
    HarnessRow row;
    row.module = m;
    row.absolutely_indecomposable = is_absolutely_indecomposable(m);
    row.in_scope = m.dim() % m.group().p == 0;
    row.periodicity = periodicity(m, opts.seed);
    row.closure = tensor_closure(m, opts);
    auto suspicious = [&](PeriodicVerdict pv, ClosureVerdict cv) {
      return (pv == PeriodicVerdict::Periodic && cv == ClosureVerdict::NonAlgebraic) ||
             (pv == PeriodicVerdict::NonPeriodic && cv == ClosureVerdict::Algebraic);
    };
    if (row.in_scope && suspicious(row.periodicity.verdict, row.closure.verdict)) {
      bool persists = true;
      for (std::uint64_t k = 1; k <= 2 && persists; ++k) {
        ClosureOptions o = opts;
        o.seed = splitmix64(opts.seed + k);
        persists = suspicious(periodicity(m, o.seed).verdict, tensor_closure(m, o).verdict);
      }
      row.counterexample = persists;
    }
    auto const pv = row.periodicity.verdict;
    auto const cv = row.closure.verdict;
    if (pv == PeriodicVerdict::Periodic && cv == ClosureVerdict::Algebraic) {
      ++rep.periodic_algebraic;
    }
    if (pv == PeriodicVerdict::NonPeriodic && cv == ClosureVerdict::NonAlgebraic) {
      ++rep.nonperiodic_nonalgebraic;
    }
    if (cv == ClosureVerdict::Inconclusive || pv == PeriodicVerdict::Unknown) {
      ++rep.inconclusive;
    }
    if (row.counterexample) {
      ++rep.counterexamples;
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace algmod
