// Command-line front end.  Exit codes: 0 verdict reached, 2 inconclusive,
// 1 input or usage error (and failed verification).

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "algmod/algcheck.hpp"
#include "algmod/arquiver.hpp"
#include "algmod/certificate.hpp"
#include "algmod/decomp.hpp"
#include "algmod/enumerate.hpp"
#include "algmod/heller.hpp"
#include "algmod/io.hpp"

namespace fs = std::filesystem;
using namespace algmod;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kInconclusive = 2;

constexpr char const* kCacheEnv = "ALGMOD_CACHE";

void write_text(std::string const& path, std::string const& text) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write " + path);
  }
  out << text;
}

std::string read_text(std::string const& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit_module(Module const& m, std::string const& out) {
  if (out.empty()) {
    std::cout << write_module(m);
  } else {
    write_module_file(out, m);
    std::cout << "wrote " << out << " (dim " << m.dim() << ")\n";
  }
}

std::string term(std::size_t mult, std::string const& label) {
  return mult == 1 ? label : std::to_string(mult) + "·" + label;
}

std::string table_line(ClosureCertificate const& c, TableEntry const& e) {
  std::string rhs;
  for (auto const& [idx, mult] : e.classes) {
    rhs += (rhs.empty() ? "" : " + ") + term(mult, c.labels[idx]);
  }
  if (e.free_rank > 0) {
    rhs += (rhs.empty() ? "" : " + ") + term(e.free_rank, "KG");
  }
  if (rhs.empty()) {
    rhs = "0";
  }
  return c.labels[e.a] + "·" + c.labels[e.b] + " = " + rhs;
}

std::string lines_summary(PeriodicityReport const& r) {
  return std::to_string(r.lines.size()) + " lines over GF(p^" + std::to_string(r.extension_degree) + "), " +
         std::to_string(r.non_free_lines()) + " non-free";
}

void print_periodicity(PeriodicityReport const& r) {
  std::cout << to_string(r.verdict);
  if (r.verdict == PeriodicVerdict::Periodic) {
    std::cout << " (period " << r.period << ")";
  }
  if (r.complexity >= 0) {
    std::cout << "; complexity " << r.complexity;
  }
  std::cout << "; " << lines_summary(r) << "\n";
  if (!r.note.empty()) {
    std::cout << "note: " << r.note << "\n";
  }
}

// The only 1-dimensional module of a p-group in characteristic p is k.
void name_trivial_class(ClosureResult& r) {
  if (!r.algebraic) {
    return;
  }
  for (std::size_t i = 0; i < r.algebraic->modules.size(); ++i) {
    if (r.algebraic->modules[i].dim() == 1) {
      r.algebraic->labels[i] = "k";
      if (i < r.labels.size()) {
        r.labels[i] = "k";
      }
    }
  }
}

int closure_exit(ClosureVerdict v) { return v == ClosureVerdict::Inconclusive ? kInconclusive : kOk; }

void print_closure(ClosureResult const& r) {
  std::cout << to_string(r.verdict) << "; classes: " << r.labels.size();
  if (r.algebraic) {
    std::cout << "; table: ";
    bool first = true;
    for (auto const& e : r.algebraic->table) {
      std::cout << (first ? "" : ", ") << table_line(*r.algebraic, e);
      first = false;
    }
  }
  std::cout << "\n";
  if (r.algebraic) {
    for (std::size_t i = 0; i < r.algebraic->modules.size(); ++i) {
      std::cout << "  " << r.algebraic->labels[i] << " dim " << r.algebraic->modules[i].dim() << " level "
                << (i < r.levels.size() ? r.levels[i] : 0) << "\n";
    }
  }
  if (r.nonalgebraic) {
    auto const& c = *r.nonalgebraic;
    std::cout << "witness: Omega^" << c.i << "(" << (c.dual_direction ? "M*" : "M") << ") (dim " << c.summand.dim()
              << ") is a summand of M^(x)" << c.n << "; base " << to_string(c.nonperiodicity.verdict) << " ("
              << lines_summary(c.nonperiodicity) << ")\n";
  }
  std::cout << "steps: " << r.steps << "; note: " << r.note << "\n";
  if (r.flagged_not_absolutely_indecomposable) {
    std::cout << "warning: some class is not absolutely indecomposable\n";
  }
}

/// "p=3,dim=3" or separate tokens "p=3" "dim=3".
std::pair<std::uint32_t, std::size_t> parse_census_spec(std::vector<std::string> const& toks) {
  std::uint32_t p = 0;
  std::size_t d = 0;
  for (auto const& tok : toks) {
    std::stringstream ss(tok);
    std::string part;
    while (std::getline(ss, part, ',')) {
      auto eq = part.find('=');
      if (eq == std::string::npos) {
        throw Error("census spec: expected key=value, got '" + part + "'");
      }
      std::string key = part.substr(0, eq), val = part.substr(eq + 1);
      unsigned long v = 0;
      try {
        std::size_t used = 0;
        v = std::stoul(val, &used);
        if (used != val.size()) {
          throw std::invalid_argument(val);
        }
      } catch (std::exception const&) {
        throw Error("census spec: bad number '" + val + "'");
      }
      if (key == "p") {
        p = std::uint32_t(v);
      } else if (key == "dim" || key == "d") {
        d = v;
      } else {
        throw Error("census spec: unknown key '" + key + "'");
      }
    }
  }
  if (p == 0 || d == 0) {
    throw Error("census spec needs p=<prime> and dim=<n>");
  }
  return {p, d};
}

std::vector<std::vector<std::uint32_t>> parse_basis(std::string const& text) {
  std::vector<std::vector<std::uint32_t>> out;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) {
    std::istringstream rs(row);
    std::vector<std::uint32_t> v;
    std::int64_t x = 0;
    while (rs >> x) {
      if (x < 0) {
        throw Error("subgroup basis entries must be nonnegative");
      }
      v.push_back(std::uint32_t(x));
    }
    if (!rs.eof()) {
      throw Error("bad subgroup basis row '" + row + "'");
    }
    if (!v.empty()) {
      out.push_back(std::move(v));
    }
  }
  if (out.empty()) {
    throw Error("empty subgroup basis");
  }
  return out;
}

std::string resolve_cache(std::string const& flag) {
  if (char const* env = std::getenv(kCacheEnv); env && *env) {
    return env;
  }
  return flag;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Algebraic modules and the Heller operator for elementary abelian p-groups"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all");

  RunConfig cfg;
  std::string cache_flag;
  app.add_option("--seed", cfg.seed, "Seed for randomized steps")->capture_default_str();
  app.add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--cache", cache_flag, std::string("Cache directory (") + kCacheEnv + " overrides)");
  app.add_option("--max-classes", cfg.budget.max_classes)->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--max-dim", cfg.budget.max_dim)->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--max-steps", cfg.budget.max_steps)->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--omega-window", cfg.budget.omega_window)->check(CLI::PositiveNumber)->capture_default_str();

  std::string file, file2, out, cert_out, basis_text;
  int omega_n_arg = 1;

  auto* validate_cmd = app.add_subcommand("validate", "Check a module file");
  validate_cmd->add_option("module", file)->required();

  auto* decompose_cmd = app.add_subcommand("decompose", "Krull-Schmidt decomposition");
  decompose_cmd->add_option("module", file)->required();
  decompose_cmd->add_option("--out", out, "Directory for summand files");

  auto* tensor_cmd = app.add_subcommand("tensor", "Tensor product of two modules");
  tensor_cmd->add_option("a", file)->required();
  tensor_cmd->add_option("b", file2)->required();
  tensor_cmd->add_option("-o,--output", out);

  auto* dual_cmd = app.add_subcommand("dual", "Contragredient dual");
  dual_cmd->add_option("module", file)->required();
  dual_cmd->add_option("-o,--output", out);

  auto* restrict_cmd = app.add_subcommand("restrict", "Restriction to a subgroup");
  restrict_cmd->add_option("module", file)->required();
  restrict_cmd->add_option("--basis", basis_text, "Exponent vectors, rows separated by ';' (e.g. \"1 0;0 1\")")
      ->required();
  restrict_cmd->add_option("-o,--output", out);

  auto* omega_cmd = app.add_subcommand("omega", "Heller translate");
  omega_cmd->add_option("module", file)->required();
  omega_cmd->add_option("-n", omega_n_arg, "Shift (negative for inverse translates)")->capture_default_str();
  omega_cmd->add_option("-o,--output", out);

  auto* period_cmd = app.add_subcommand("periodicity", "Periodicity and complexity");
  period_cmd->add_option("module", file)->required();
  period_cmd->add_option("--cert", cert_out, "Write a certificate");

  auto* closure_cmd = app.add_subcommand("closure", "Tensor closure algebraicity test");
  closure_cmd->add_option("module", file)->required();
  closure_cmd->add_option("--cert", cert_out, "Write a certificate");

  std::vector<std::string> census_spec;
  bool indecomposable_only = false;
  auto* census_cmd = app.add_subcommand("census", "Iso classes of C_p x C_p modules of a given dimension");
  census_cmd->add_option("spec", census_spec, "p=<prime> dim=<n>")->required();
  census_cmd->add_flag("--indecomposable", indecomposable_only, "Only indecomposable classes");
  census_cmd->add_option("--out", out, "Directory for representatives");

  std::vector<std::string> harness_files;
  std::string harness_census;
  auto* harness_cmd = app.add_subcommand("harness", "Periodicity versus algebraicity table");
  harness_cmd->add_option("modules", harness_files);
  harness_cmd->add_option("--census", harness_census, "Use a census, e.g. p=3,dim=3");
  harness_cmd->add_option("--cert-dir", out, "Write one certificate per row");

  std::string row0_text, grid_file, periods_text;
  int i_min = -6, i_max = 6, j_max = 6;
  std::optional<int> designated;
  auto* quiver_cmd = app.add_subcommand("quiver", "Signature calculus on an interlaced component");
  quiver_cmd->add_option("--row0", row0_text, "Seed signature, e.g. \"x^0 y^0\"");
  quiver_cmd->add_option("--i-min", i_min)->capture_default_str();
  quiver_cmd->add_option("--i-max", i_max)->capture_default_str();
  quiver_cmd->add_option("--j-max", j_max)->capture_default_str();
  quiver_cmd->add_option("--designated", designated, "Shift of the algebraic member of each symbol family");
  quiver_cmd->add_option("--periods", periods_text, "Periodic families, e.g. \"x=2,y=3\"");
  quiver_cmd->add_option("--check", grid_file, "Read a grid file and run the diamond check");
  quiver_cmd->add_option("-o,--output", out, "Write the grid");

  auto* verify_cmd = app.add_subcommand("verify-cert", "Re-verify a certificate from scratch");
  verify_cmd->add_option("certificate", file)->required();

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }

  cfg.cache = resolve_cache(cache_flag);
  ClosureOptions const copts = cfg.closure_options();

  try {
    if (*validate_cmd) {
      Module m = read_module_file(file);
      std::cout << "valid module: p=" << m.group().p << " rank=" << m.group().rank << " field=" << m.field().name()
                << " dim=" << m.dim() << "\n";
      return kOk;
    }
    if (*decompose_cmd) {
      Module m = read_module_file(file);
      Decomposition d = decompose(m, DecomposeOptions{cfg.seed});
      std::cout << "# " << cfg.echo() << "\n";
      std::cout << "dim " << m.dim() << " = ";
      bool first = true;
      for (auto const& s : d.summands) {
        std::cout << (first ? "" : " + ") << s.multiplicity << "x" << s.module.dim() << (s.free ? "(free)" : "");
        first = false;
      }
      std::cout << "\n";
      for (std::size_t i = 0; i < d.summands.size(); ++i) {
        auto const& s = d.summands[i];
        std::cout << "summand " << i << ": dim " << s.module.dim() << " multiplicity " << s.multiplicity
                  << (s.free ? " free" : "")
                  << (s.free || is_absolutely_indecomposable(s.module) ? "" : " not-absolutely-indecomposable")
                  << "\n";
        if (!out.empty()) {
          fs::create_directories(out);
          write_module_file((fs::path(out) / ("summand" + std::to_string(i) + ".mod")).string(), s.module);
        }
      }
      return kOk;
    }
    if (*tensor_cmd) {
      emit_module(tensor(read_module_file(file), read_module_file(file2)), out);
      return kOk;
    }
    if (*dual_cmd) {
      emit_module(dual(read_module_file(file)), out);
      return kOk;
    }
    if (*restrict_cmd) {
      Module m = read_module_file(file);
      emit_module(restrict(m, SubgroupSpec{m.group(), parse_basis(basis_text)}), out);
      return kOk;
    }
    if (*omega_cmd) {
      emit_module(omega_n(read_module_file(file), omega_n_arg), out);
      return kOk;
    }
    if (*period_cmd) {
      Module m = read_module_file(file);
      std::cout << "# " << cfg.echo() << "\n";
      PeriodicityReport r = periodicity(m, cfg.seed);
      print_periodicity(r);
      if (!cert_out.empty()) {
        write_text(cert_out, certificate_json(PeriodicityCertificate{m, r}, cfg));
        std::cout << "certificate: " << cert_out << "\n";
      }
      return r.verdict == PeriodicVerdict::Unknown ? kInconclusive : kOk;
    }
    if (*closure_cmd) {
      Module m = read_module_file(file);
      std::cout << "# " << cfg.echo() << "\n";
      ClosureResult r = tensor_closure(m, copts);
      name_trivial_class(r);
      print_closure(r);
      if (!cert_out.empty()) {
        if (r.algebraic) {
          write_text(cert_out, certificate_json(*r.algebraic, cfg));
        } else if (r.nonalgebraic) {
          write_text(cert_out, certificate_json(*r.nonalgebraic, cfg));
        }
        if (r.algebraic || r.nonalgebraic) {
          std::cout << "certificate: " << cert_out << "\n";
        }
      }
      if (!cfg.cache.empty() && r.algebraic) {
        IsoClassRegistry reg("M", cfg.seed);
        for (auto const& mod : r.algebraic->modules) {
          reg.admit(mod);
        }
        reg.save((fs::path(cfg.cache) / ("closure-" + fs::path(file).stem().string())).string());
      }
      return closure_exit(r.verdict);
    }
    if (*census_cmd) {
      auto [p, d] = parse_census_spec(census_spec);
      CensusOptions o;
      o.seed = cfg.seed;
      o.workers = cfg.workers;
      std::cout << "# " << cfg.echo() << "\n";
      CensusResult c = enumerate_modules(p, d, indecomposable_only, o);
      std::cout << "p=" << p << " dim=" << d << (c.complete ? "" : " (PARTIAL)") << "\n";
      std::cout << "classes: " << (indecomposable_only ? c.indecomposable_count : c.total_classes)
                << (indecomposable_only ? " indecomposable" : " total") << "\n";
      std::cout << "all classes: " << c.total_classes << "; indecomposable: " << c.indecomposable_count
                << "; absolutely indecomposable: " << c.abs_indecomposable_count
                << "; periodic: " << c.periodic_count << "\n";
      std::cout << "indecomposable up to generator swap: " << c.swap_classes
                << "; up to Aut(C_p x C_p): " << c.automorphism_classes << "\n";
      if (c.direct_pair_total || c.orbit_pair_total) {
        std::cout << "commuting pairs: direct "
                  << (c.direct_pair_total ? std::to_string(*c.direct_pair_total) : std::string("-"))
                  << ", orbit sum "
                  << (c.orbit_pair_total ? std::to_string(*c.orbit_pair_total) : std::string("-")) << "\n";
      }
      for (auto const& cl : c.classes) {
        std::cout << "  " << cl.label << " indecomposable=" << cl.indecomposable
                  << " periodic=" << (cl.periodic ? to_string(*cl.periodic) : "-")
                  << " orbit=" << (cl.orbit_size ? std::to_string(*cl.orbit_size) : "-") << "\n";
      }
      std::string dir = !out.empty() ? out
                        : !cfg.cache.empty()
                            ? (fs::path(cfg.cache) / ("census-p" + std::to_string(p) + "-d" + std::to_string(d))).string()
                            : "";
      if (!dir.empty()) {
        save_census(c, dir);
        std::cout << "wrote " << dir << "\n";
      }
      if (!c.note.empty()) {
        std::cout << "note: " << c.note << "\n";
      }
      return c.complete ? kOk : kInconclusive;
    }
    if (*harness_cmd) {
      std::vector<Module> mods;
      std::vector<std::string> names;
      if (!harness_census.empty()) {
        auto [p, d] = parse_census_spec({harness_census});
        CensusOptions o;
        o.seed = cfg.seed;
        o.workers = cfg.workers;
        o.periodicity = false;
        CensusResult c = enumerate_modules(p, d, true, o);
        if (!c.complete) {
          throw Error("census incomplete: " + c.note);
        }
        for (auto& cl : c.classes) {
          mods.push_back(cl.module);
          names.push_back(cl.label);
        }
      }
      for (auto const& f : harness_files) {
        mods.push_back(read_module_file(f));
        names.push_back(fs::path(f).stem().string());
      }
      if (mods.empty()) {
        throw Error("harness: no modules given");
      }
      std::cout << "# " << cfg.echo() << "\n";
      HarnessReport rep = conjecture_harness(mods, copts);
      std::cout << "label dim abs in_scope periodic algebraic counterexample\n";
      for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        auto const& row = rep.rows[i];
        std::cout << names[i] << " " << row.module.dim() << " " << (row.absolutely_indecomposable ? "yes" : "no")
                  << " " << (row.in_scope ? "yes" : "no") << " " << to_string(row.periodicity.verdict) << " "
                  << to_string(row.closure.verdict) << " " << (row.counterexample ? "YES" : "no") << "\n";
        if (!out.empty()) {
          fs::create_directories(out);
          std::string base = (fs::path(out) / names[i]).string();
          if (row.closure.algebraic) {
            write_text(base + ".closure.json", certificate_json(*row.closure.algebraic, cfg));
          }
          if (row.closure.nonalgebraic) {
            write_text(base + ".nonalgebraic.json", certificate_json(*row.closure.nonalgebraic, cfg));
          }
          write_text(base + ".periodicity.json", certificate_json(PeriodicityCertificate{row.module, row.periodicity}, cfg));
        }
      }
      std::cout << "periodic and algebraic: " << rep.periodic_algebraic
                << "; non-periodic and non-algebraic: " << rep.nonperiodic_nonalgebraic
                << "; counterexamples: " << rep.counterexamples << "; inconclusive: " << rep.inconclusive << "\n";
      return rep.inconclusive > 0 ? kInconclusive : kOk;
    }
    if (*quiver_cmd) {
      if (!grid_file.empty()) {
        InterlacedGrid g = read_grid(read_text(grid_file));
        DiamondReport r = diamond_check(g);
        if (!r.ok) {
          std::cout << "diamond check FAILED at (" << r.where.first << ", " << r.where.second << "): " << r.message
                    << "\n";
          return kError;
        }
        std::cout << "diamond check ok (" << g.cells.size() << " cells)\n";
        auto pos = algebraic_positions(g, designated);
        std::cout << "algebraic candidates:";
        for (auto const& [i, j] : pos) {
          std::cout << " (" << i << "," << j << ")";
        }
        std::cout << "\n";
        return kOk;
      }
      if (row0_text.empty()) {
        throw Error("quiver: give --row0 or --check");
      }
      std::map<std::string, int> periods;
      std::stringstream ps(periods_text);
      std::string part;
      while (std::getline(ps, part, ',')) {
        auto eq = part.find('=');
        if (eq == std::string::npos) {
          throw Error("--periods: expected sym=period");
        }
        periods[part.substr(0, eq)] = std::stoi(part.substr(eq + 1));
      }
      InterlacedGrid g = propagate(Signature::parse(row0_text), i_min, i_max, j_max, periods);
      std::size_t agree = 0;
      for (auto const& [c, s] : g.cells) {
        agree += periods.empty() && s == signature_formula(c.first, c.second, g.row0) ? 1 : 0;
      }
      DiamondReport r = diamond_check(g);
      std::cout << "cells: " << g.cells.size() << "; diamond check " << (r.ok ? "ok" : "FAILED");
      if (periods.empty()) {
        std::cout << "; formula agrees on " << agree << "/" << g.cells.size();
      }
      std::cout << "\n";
      auto pos = algebraic_positions(g, designated);
      std::cout << "algebraic candidates:";
      for (auto const& [i, j] : pos) {
        std::cout << " (" << i << "," << j << ")";
      }
      std::cout << "\n";
      if (!out.empty()) {
        write_text(out, write_grid(g));
        std::cout << "wrote " << out << "\n";
      } else {
        std::cout << write_grid(g);
      }
      return r.ok ? kOk : kError;
    }
    if (*verify_cmd) {
      VerifyResult r = verify_certificate(read_text(file), cfg.seed);
      if (r.ok) {
        std::cout << "certificate verified\n";
        return kOk;
      }
      std::cout << "certificate FAILED: " << r.message << "\n";
      return kError;
    }
  } catch (ParseError const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
