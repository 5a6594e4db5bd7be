#include "algmod/certificate.hpp"

#include <cstdio>
#include <map>

#include <json.hpp>

#include "algmod/io.hpp"

namespace algmod {

using nlohmann::json;

ClosureOptions RunConfig::closure_options() const {
  ClosureOptions o;
  o.seed = seed;
  o.workers = workers;
  o.budget = budget;
  return o;
}

std::string RunConfig::echo() const {
  char hex[32];
  std::snprintf(hex, sizeof hex, "0x%llX", static_cast<unsigned long long>(seed));
  return std::string("seed=") + hex + " workers=" + std::to_string(workers) +
         " max_classes=" + std::to_string(budget.max_classes) + " max_dim=" + std::to_string(budget.max_dim) +
         " max_steps=" + std::to_string(budget.max_steps) + " omega_window=" + std::to_string(budget.omega_window);
}

namespace {

  json config_json(RunConfig const& cfg) {
    return {{"seed", cfg.seed},
            {"workers", cfg.workers},
            {"max_classes", cfg.budget.max_classes},
            {"max_dim", cfg.budget.max_dim},
            {"max_steps", cfg.budget.max_steps},
            {"omega_window", cfg.budget.omega_window}};
  }

  json matrix_json(Matrix const& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      rows.push_back(std::vector<Elem>(m.row(i), m.row(i) + m.cols()));
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
  }

  Matrix matrix_from(json const& j, FieldPtr const& f) {
    std::size_t const r = j.at("rows").get<std::size_t>(), c = j.at("cols").get<std::size_t>();
    Matrix m(f, r, c);
    auto const& rows = j.at("entries");
    if (rows.size() != r) {
      throw Error("matrix has the wrong number of rows");
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) {
        throw Error("matrix row has the wrong length");
      }
      for (std::size_t k = 0; k < c; ++k) {
        auto v = rows[i][k].get<std::int64_t>();
        if (v < 0 || std::uint64_t(v) >= f->order()) {
          throw Error("matrix entry out of range");
        }
        m(i, k) = Elem(v);
      }
    }
    return m;
  }

  json report_json(PeriodicityReport const& r) {
    json lines = json::array();
    for (auto const& l : r.lines) {
      lines.push_back({l.lambda1, l.lambda2, l.free});
    }
    json out = {{"verdict", to_string(r.verdict)},
                {"period", r.period},
                {"complexity", r.complexity},
                {"extension_degree", r.extension_degree},
                {"lines", lines},
                {"note", r.note}};
    if (r.witness) {
      out["witness"] = matrix_json(*r.witness);
    }
    return out;
  }

  PeriodicVerdict verdict_from(std::string const& s) {
    for (auto v : {PeriodicVerdict::Periodic, PeriodicVerdict::NonPeriodic, PeriodicVerdict::Projective,
                   PeriodicVerdict::Unknown}) {
      if (to_string(v) == s) {
        return v;
      }
    }
    throw Error("unknown periodicity verdict '" + s + "'");
  }

  PeriodicityReport report_from(json const& j, FieldPtr const& f) {
    PeriodicityReport r;
    r.verdict = verdict_from(j.at("verdict").get<std::string>());
    r.period = j.at("period").get<int>();
    r.complexity = j.at("complexity").get<int>();
    r.extension_degree = j.at("extension_degree").get<std::uint32_t>();
    for (auto const& l : j.at("lines")) {
      r.lines.push_back(LineSample{l.at(0).get<Elem>(), l.at(1).get<Elem>(), l.at(2).get<bool>()});
    }
    r.note = j.value("note", "");
    if (j.contains("witness")) {
      r.witness = matrix_from(j.at("witness"), f);
    }
    return r;
  }

  json header(char const* kind, RunConfig const& cfg) {
    return {{"format", "algmod-certificate"}, {"version", 1}, {"kind", kind}, {"config", config_json(cfg)}};
  }

}  // namespace

std::string certificate_json(ClosureCertificate const& c, RunConfig const& cfg) {
  json j = header("closure", cfg);
  j["group"] = {{"p", c.group.p}, {"rank", c.group.rank}};
  json classes = json::array();
  for (std::size_t i = 0; i < c.modules.size(); ++i) {
    classes.push_back({{"label", c.labels.at(i)}, {"module", write_module(c.modules[i])}});
  }
  j["classes"] = classes;
  json table = json::array();
  for (auto const& e : c.table) {
    json parts = json::array();
    for (auto const& [idx, mult] : e.classes) {
      parts.push_back({c.labels.at(idx), mult});
    }
    table.push_back({{"a", c.labels.at(e.a)}, {"b", c.labels.at(e.b)}, {"summands", parts}, {"free_rank", e.free_rank}});
  }
  j["table"] = table;
  return j.dump(1);
}

std::string certificate_json(NonAlgebraicCertificate const& c, RunConfig const& cfg) {
  json j = header("nonalgebraic", cfg);
  j["base"] = write_module(c.base);
  j["n"] = c.n;
  j["i"] = c.i;
  j["direction"] = c.dual_direction ? "dual" : "base";
  j["summand"] = write_module(c.summand);
  j["inclusion"] = matrix_json(c.inclusion);
  j["projection"] = matrix_json(c.projection);
  j["nonperiodicity"] = report_json(c.nonperiodicity);
  return j.dump(1);
}

std::string certificate_json(PeriodicityCertificate const& c, RunConfig const& cfg) {
  json j = header("periodicity", cfg);
  j["module"] = write_module(c.module);
  j["report"] = report_json(c.report);
  return j.dump(1);
}

Certificate parse_certificate(std::string const& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (json::exception const& e) {
    throw Error(std::string("certificate is not valid JSON: ") + e.what());
  }
  try {
    if (j.value("format", "") != "algmod-certificate") {
      throw Error("not an algmod certificate");
    }
    std::string const kind = j.at("kind").get<std::string>();
    if (kind == "closure") {
      ClosureCertificate c;
      c.group = GroupSpec{j.at("group").at("p").get<std::uint32_t>(), j.at("group").at("rank").get<std::uint32_t>()};
      std::map<std::string, std::size_t> index;
      for (auto const& cl : j.at("classes")) {
        std::string label = cl.at("label").get<std::string>();
        if (!index.emplace(label, c.labels.size()).second) {
          throw Error("duplicate class label " + label);
        }
        c.labels.push_back(label);
        c.modules.push_back(read_module(cl.at("module").get<std::string>()));
        if (!(c.modules.back().group() == c.group)) {
          throw Error("class " + label + " is over a different group");
        }
      }
      auto lookup = [&](std::string const& l) {
        auto it = index.find(l);
        if (it == index.end()) {
          throw Error("table refers to unknown class " + l);
        }
        return it->second;
      };
      for (auto const& e : j.at("table")) {
        TableEntry t;
        t.a = lookup(e.at("a").get<std::string>());
        t.b = lookup(e.at("b").get<std::string>());
        t.free_rank = e.at("free_rank").get<std::size_t>();
        std::map<std::size_t, std::size_t> counts;
        for (auto const& s : e.at("summands")) {
          counts[lookup(s.at(0).get<std::string>())] += s.at(1).get<std::size_t>();
        }
        t.classes.assign(counts.begin(), counts.end());
        c.table.push_back(std::move(t));
      }
      return c;
    }
    if (kind == "nonalgebraic") {
      NonAlgebraicCertificate c;
      c.base = read_module(j.at("base").get<std::string>());
      c.n = j.at("n").get<std::size_t>();
      c.i = j.at("i").get<int>();
      std::string dir = j.at("direction").get<std::string>();
      if (dir != "base" && dir != "dual") {
        throw Error("direction must be 'base' or 'dual'");
      }
      c.dual_direction = dir == "dual";
      c.summand = read_module(j.at("summand").get<std::string>());
      c.inclusion = matrix_from(j.at("inclusion"), c.base.field_ptr());
      c.projection = matrix_from(j.at("projection"), c.base.field_ptr());
      c.nonperiodicity = report_from(j.at("nonperiodicity"), c.base.field_ptr());
      return c;
    }
    if (kind == "periodicity") {
      PeriodicityCertificate c;
      c.module = read_module(j.at("module").get<std::string>());
      c.report = report_from(j.at("report"), c.module.field_ptr());
      return c;
    }
    throw Error("unknown certificate kind '" + kind + "'");
  } catch (json::exception const& e) {
    throw Error(std::string("malformed certificate: ") + e.what());
  }
}

VerifyResult verify_certificate(std::string const& text, std::uint64_t seed) {
  Certificate c;
  try {
    c = parse_certificate(text);
  } catch (Error const& e) {
    return {false, e.what()};
  }
  try {
    if (auto const* a = std::get_if<ClosureCertificate>(&c)) {
      return verify(*a, seed);
    }
    if (auto const* n = std::get_if<NonAlgebraicCertificate>(&c)) {
      return verify(*n, seed);
    }
    auto const& pc = std::get<PeriodicityCertificate>(c);
    return verify(pc.module, pc.report);
  } catch (Error const& e) {
    return {false, e.what()};
  }
}

}  // namespace algmod
