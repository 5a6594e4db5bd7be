#include "algmod/io.hpp"

#include <fstream>
#include <sstream>

namespace algmod {

ParseError::ParseError(std::string const& detail, std::size_t line, std::size_t column, std::string const& source)
    : Error((source.empty() ? "" : source + ":") + std::to_string(line) + ":" + std::to_string(column) + ": " +
            detail),
      detail_(detail),
      line_(line),
      column_(column) {}

std::string write_module(Module const& m) {
  std::ostringstream out;
  out << "p " << m.group().p << "\n";
  out << "rank " << m.group().rank << "\n";
  out << "ext " << m.field().e() << "\n";
  out << "dim " << m.dim() << "\n";
  for (std::size_t g = 0; g < m.rank(); ++g) {
    out << "gen " << g + 1 << "\n";
    Matrix const& a = m.gen(g);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) {
        out << (j ? " " : "") << a(i, j);
      }
      out << "\n";
    }
  }
  return out.str();
}

namespace {

  struct Token {
    std::string text;
    std::size_t line;
    std::size_t column;
  };

  /// Tokens of each non-blank, non-comment line.
  std::vector<std::vector<Token>> tokenize(std::string const& text) {
    std::vector<std::vector<Token>> lines;
    std::size_t line = 1;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string::npos) {
        end = text.size();
      }
      std::string_view row(text.data() + pos, end - pos);
      std::vector<Token> toks;
      std::size_t i = 0;
      while (i < row.size()) {
        if (row[i] == '#') {
          break;
        }
        if (row[i] == ' ' || row[i] == '\t' || row[i] == '\r') {
          ++i;
          continue;
        }
        std::size_t j = i;
        while (j < row.size() && row[j] != ' ' && row[j] != '\t' && row[j] != '\r' && row[j] != '#') {
          ++j;
        }
        toks.push_back(Token{std::string(row.substr(i, j - i)), line, i + 1});
        i = j;
      }
      if (!toks.empty()) {
        lines.push_back(std::move(toks));
      }
      pos = end + 1;
      ++line;
    }
    return lines;
  }

  std::int64_t parse_int(Token const& t) {
    std::int64_t v = 0;
    if (t.text.empty()) {
      throw ParseError("expected an integer", t.line, t.column);
    }
    std::size_t i = 0;
    bool neg = false;
    if (t.text[0] == '-') {
      neg = true;
      i = 1;
    }
    if (i == t.text.size()) {
      throw ParseError("expected an integer, found '" + t.text + "'", t.line, t.column);
    }
    for (; i < t.text.size(); ++i) {
      char c = t.text[i];
      if (c < '0' || c > '9') {
        throw ParseError("expected an integer, found '" + t.text + "'", t.line, t.column);
      }
      v = v * 10 + (c - '0');
      if (v > (std::int64_t(1) << 40)) {
        throw ParseError("integer out of range", t.line, t.column);
      }
    }
    return neg ? -v : v;
  }

}  // namespace

Module read_module(std::string const& text) {
  auto lines = tokenize(text);
  std::size_t li = 0;
  std::size_t last_line = 1;
  auto expect_key = [&](std::string const& key, bool optional) -> std::optional<std::int64_t> {
    if (li >= lines.size()) {
      if (optional) {
        return std::nullopt;
      }
      throw ParseError("missing '" + key + "'", last_line + 1, 1);
    }
    auto const& toks = lines[li];
    if (toks[0].text != key) {
      if (optional) {
        return std::nullopt;
      }
      throw ParseError("expected '" + key + "', found '" + toks[0].text + "'", toks[0].line, toks[0].column);
    }
    if (toks.size() != 2) {
      auto const& t = toks.size() > 2 ? toks[2] : toks[0];
      throw ParseError("'" + key + "' takes exactly one integer", t.line, t.column);
    }
    last_line = toks[0].line;
    ++li;
    return parse_int(toks[1]);
  };
  auto header = [&](std::string const& key) {
    auto const& tok = lines[li < lines.size() ? li : lines.size() - 1];
    std::int64_t v = *expect_key(key, false);
    if (v < 0) {
      throw ParseError("'" + key + "' must be nonnegative", tok[1].line, tok[1].column);
    }
    return v;
  };
  if (lines.empty()) {
    throw ParseError("empty module file", 1, 1);
  }
  std::size_t const p_line = lines[0][0].line;
  std::int64_t const p = header("p");
  if (p < 2 || !is_prime(std::uint64_t(p))) {
    throw ParseError("p must be a prime", p_line, 3);
  }
  std::size_t const r_line = li < lines.size() ? lines[li][0].line : last_line + 1;
  std::int64_t const r = header("rank");
  if (r < 1) {
    throw ParseError("rank must be at least 1", r_line, 1);
  }
  std::int64_t e = 1;
  if (li < lines.size() && lines[li][0].text == "ext") {
    std::size_t const e_line = lines[li][0].line;
    e = *expect_key("ext", false);
    if (e < 1) {
      throw ParseError("ext must be at least 1", e_line, 1);
    }
  }
  std::int64_t const d = header("dim");
  FieldPtr field;
  try {
    field = Field::extension(std::uint32_t(p), std::uint32_t(e));
  } catch (Error const& err) {
    throw ParseError(err.what(), p_line, 1);
  }
  std::uint64_t const q = field->order();
  std::vector<Matrix> gens;
  for (std::int64_t g = 1; g <= r; ++g) {
    if (li >= lines.size()) {
      throw ParseError("missing 'gen " + std::to_string(g) + "'", last_line + 1, 1);
    }
    auto const& toks = lines[li];
    if (toks[0].text != "gen" || toks.size() != 2 || parse_int(toks[1]) != g) {
      throw ParseError("expected 'gen " + std::to_string(g) + "'", toks[0].line, toks[0].column);
    }
    last_line = toks[0].line;
    ++li;
    Matrix a(field, std::size_t(d), std::size_t(d));
    for (std::int64_t i = 0; i < d; ++i) {
      if (li >= lines.size()) {
        throw ParseError("generator " + std::to_string(g) + " has " + std::to_string(i) + " rows, expected " +
                             std::to_string(d),
                         last_line + 1,
                         1);
      }
      auto const& row = lines[li];
      if (row[0].text == "gen") {
        throw ParseError("generator " + std::to_string(g) + " has " + std::to_string(i) + " rows, expected " +
                             std::to_string(d),
                         row[0].line,
                         row[0].column);
      }
      if (std::int64_t(row.size()) != d) {
        auto const& t = std::int64_t(row.size()) > d ? row[std::size_t(d)] : row.back();
        throw ParseError("row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(d),
                         t.line,
                         t.column);
      }
      for (std::int64_t j = 0; j < d; ++j) {
        std::int64_t v = parse_int(row[std::size_t(j)]);
        if (v < 0 || std::uint64_t(v) >= q) {
          throw ParseError("entry " + row[std::size_t(j)].text + " is not a field element code below " +
                               std::to_string(q),
                           row[std::size_t(j)].line,
                           row[std::size_t(j)].column);
        }
        a(std::size_t(i), std::size_t(j)) = Elem(v);
      }
      last_line = row[0].line;
      ++li;
    }
    gens.push_back(std::move(a));
  }
  if (li < lines.size()) {
    throw ParseError("unexpected trailing content '" + lines[li][0].text + "'", lines[li][0].line,
                     lines[li][0].column);
  }
  Module m(GroupSpec{std::uint32_t(p), std::uint32_t(r)}, field, std::move(gens));
  auto rep = validate(m);
  if (!rep.ok) {
    throw ParseError("not a module: " + rep.message, p_line, 1);
  }
  return m;
}

Module read_module_file(std::string const& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open " + path);
  }
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return read_module(ss.str());
  } catch (ParseError const& e) {
    throw ParseError(e.detail(), e.line(), e.column(), path);
  }
}

void write_module_file(std::string const& path, Module const& m) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write " + path);
  }
  out << write_module(m);
}

}  // namespace algmod
