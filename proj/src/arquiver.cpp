#include "algmod/arquiver.hpp"

#include <cctype>
#include <sstream>

#include "algmod/algcheck.hpp"
#include "algmod/decomp.hpp"
#include "algmod/io.hpp"

namespace algmod {

void Signature::add(std::string const& symbol, int shift, std::size_t mult) {
  if (symbol.empty()) {
    throw Error("signature symbol must be nonempty");
  }
  if (mult > 0) {
    counts_[{symbol, shift}] += mult;
  }
}

std::optional<Signature> Signature::minus(Signature const& other) const {
  Signature out = *this;
  for (auto const& [k, c] : other.counts_) {
    auto it = out.counts_.find(k);
    if (it == out.counts_.end() || it->second < c) {
      return std::nullopt;
    }
    it->second -= c;
    if (it->second == 0) {
      out.counts_.erase(it);
    }
  }
  return out;
}

Signature Signature::operator+(Signature const& other) const {
  Signature out = *this;
  for (auto const& [k, c] : other.counts_) {
    out.counts_[k] += c;
  }
  return out;
}

Signature Signature::shifted(int by) const {
  Signature out;
  for (auto const& [k, c] : counts_) {
    out.counts_[{k.first, k.second + by}] += c;
  }
  return out;
}

Signature Signature::normalized(std::map<std::string, int> const& periods) const {
  if (periods.empty()) {
    return *this;
  }
  Signature out;
  for (auto const& [k, c] : counts_) {
    int s = k.second;
    if (auto it = periods.find(k.first); it != periods.end() && it->second > 0) {
      s = ((s % it->second) + it->second) % it->second;
    }
    out.counts_[{k.first, s}] += c;
  }
  return out;
}

std::size_t Signature::size() const noexcept {
  std::size_t n = 0;
  for (auto const& [k, c] : counts_) {
    n += c;
  }
  return n;
}

std::size_t Signature::count(std::string const& symbol, int shift) const {
  auto it = counts_.find({symbol, shift});
  return it == counts_.end() ? 0 : it->second;
}

bool Signature::has_distinct_shifts() const {
  std::string const* prev = nullptr;
  for (auto const& [k, c] : counts_) {
    if (prev && *prev == k.first) {
      return true;
    }
    prev = &k.first;
  }
  return false;
}

std::string Signature::str() const {
  std::ostringstream os;
  bool first = true;
  for (auto const& [k, c] : counts_) {
    for (std::size_t r = 0; r < c; ++r) {
      os << (first ? "" : " ") << k.first << "^" << k.second;
      first = false;
    }
  }
  return os.str();
}

namespace {

  Signature parse_terms(std::istringstream& in, std::size_t line, std::size_t& column, std::string const& src) {
    Signature sig;
    std::string tok;
    while (in >> tok) {
      auto caret = tok.find('^');
      std::string sym = tok.substr(0, caret);
      bool ok = !sym.empty() && (std::isalpha(static_cast<unsigned char>(sym[0])) || sym[0] == '_');
      for (char ch : sym) {
        ok = ok && (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_');
      }
      if (!ok) {
        throw ParseError("bad symbol in '" + tok + "'", line, column, src);
      }
      int shift = 0;
      if (caret != std::string::npos) {
        std::string num = tok.substr(caret + 1);
        std::size_t used = 0;
        try {
          shift = std::stoi(num, &used);
        } catch (std::exception const&) {
          used = 0;
        }
        if (num.empty() || used != num.size()) {
          throw ParseError("bad shift in '" + tok + "'", line, column, src);
        }
      }
      sig.add(sym, shift);
      column += tok.size() + 1;
    }
    return sig;
  }

}  // namespace

Signature Signature::parse(std::string const& text) {
  std::istringstream in(text);
  std::size_t col = 1;
  return parse_terms(in, 1, col, "");
}

Signature const& InterlacedGrid::at(int i, int j) const {
  auto it = cells.find({i, j});
  if (it == cells.end()) {
    throw Error("grid has no cell (" + std::to_string(i) + ", " + std::to_string(j) + ")");
  }
  return it->second;
}

Signature signature_formula(int i, int j, Signature const& row0) {
  if (j < 0) {
    throw Error("signature_formula: j must be nonnegative");
  }
  Signature out;
  for (int k = 0; k <= j; ++k) {
    out = out + row0.shifted(i + j - 2 * k);
  }
  return out;
}

namespace {

  void check_range(int i_min, int i_max, int j_max) {
    if (i_min > i_max || j_max < 0) {
      throw Error("grid range is empty");
    }
  }

}  // namespace

InterlacedGrid propagate(Signature const& row0,
                         int i_min,
                         int i_max,
                         int j_max,
                         std::map<std::string, int> const& periods) {
  if (row0.empty()) {
    throw Error("propagate: row 0 signature must be non-empty");
  }
  check_range(i_min, i_max, j_max);
  // Row j at i needs rows below on [i - (j_max - j), i + (j_max - j)].
  int const lo = i_min - j_max, hi = i_max + j_max;
  std::map<Coord, Signature> work;
  for (int i = lo; i <= hi; ++i) {
    work[{i, 0}] = row0.shifted(i).normalized(periods);
  }
  if (j_max >= 1) {
    for (int i = lo + 1; i <= hi - 1; ++i) {
      work[{i, 1}] = (row0.shifted(i - 1) + row0.shifted(i + 1)).normalized(periods);
    }
  }
  for (int j = 2; j <= j_max; ++j) {
    for (int i = lo + j; i <= hi - j; ++i) {
      Signature sides = work.at({i - 1, j - 1}) + work.at({i + 1, j - 1});
      auto top = sides.minus(work.at({i, j - 2}));
      if (!top) {
        throw Error("propagate: inconsistent diamond below (" + std::to_string(i) + ", " + std::to_string(j) +
                    ")");
      }
      work[{i, j}] = top->normalized(periods);
    }
  }
  InterlacedGrid g;
  g.i_min = i_min;
  g.i_max = i_max;
  g.j_max = j_max;
  g.row0 = row0;
  g.periods = periods;
  for (int j = 0; j <= j_max; ++j) {
    for (int i = i_min; i <= i_max; ++i) {
      g.cells[{i, j}] = work.at({i, j});
    }
  }
  return g;
}

InterlacedGrid formula_grid(Signature const& row0, int i_min, int i_max, int j_max) {
  check_range(i_min, i_max, j_max);
  InterlacedGrid g;
  g.i_min = i_min;
  g.i_max = i_max;
  g.j_max = j_max;
  g.row0 = row0;
  for (int j = 0; j <= j_max; ++j) {
    for (int i = i_min; i <= i_max; ++i) {
      g.cells[{i, j}] = signature_formula(i, j, row0);
    }
  }
  return g;
}

DiamondReport diamond_check(InterlacedGrid const& grid) {
  auto cell = [&](int i, int j) -> Signature const* {
    auto it = grid.cells.find({i, j});
    return it == grid.cells.end() ? nullptr : &it->second;
  };
  for (int i = grid.i_min; i <= grid.i_max; ++i) {
    Signature const* c = cell(i, 0);
    if (!c || *c != grid.row0.shifted(i).normalized(grid.periods)) {
      return {false, {i, 0}, "row 0 cell is not the shifted seed"};
    }
  }
  for (int j = 1; j < grid.j_max; ++j) {
    for (int i = grid.i_min + 1; i < grid.i_max; ++i) {
      auto top = cell(i, j + 1), bottom = cell(i, j - 1), left = cell(i - 1, j), right = cell(i + 1, j);
      if (!top || !bottom || !left || !right) {
        return {false, {i, j}, "grid is not fully populated"};
      }
      if ((*top + *bottom).normalized(grid.periods) != (*left + *right).normalized(grid.periods)) {
        return {false, {i, j}, "top + bottom differs from left + right"};
      }
    }
  }
  return {true, {0, 0}, ""};
}

std::set<Coord> algebraic_positions(InterlacedGrid const& grid, std::optional<int> designated_shift) {
  std::set<Coord> out;
  for (auto const& [c, sig] : grid.cells) {
    if (sig.empty() || sig.has_distinct_shifts()) {
      continue;
    }
    if (designated_shift) {
      bool all = true;
      for (auto const& [k, n] : sig.counts()) {
        all = all && k.second == *designated_shift;
      }
      if (!all) {
        continue;
      }
    }
    out.insert(c);
  }
  return out;
}

Signature signature_from_decomposition(Decomposition const& d, IsoClassRegistry& registry) {
  Signature sig;
  for (auto const& s : d.summands) {
    if (s.free) {
      continue;
    }
    auto [idx, fresh] = registry.admit(s.module);
    (void)fresh;
    sig.add(registry.at(idx).label, 0, s.multiplicity);
  }
  return sig;
}

std::string write_grid(InterlacedGrid const& grid) {
  std::ostringstream os;
  os << "range " << grid.i_min << " " << grid.i_max << " " << grid.j_max << "\n";
  os << "row0 " << grid.row0.str() << "\n";
  for (auto const& [sym, per] : grid.periods) {
    os << "period " << sym << " " << per << "\n";
  }
  for (int j = 0; j <= grid.j_max; ++j) {
    for (int i = grid.i_min; i <= grid.i_max; ++i) {
      auto it = grid.cells.find({i, j});
      if (it != grid.cells.end()) {
        os << i << " " << j << (it->second.empty() ? "" : " ") << it->second.str() << "\n";
      }
    }
  }
  return os.str();
}

InterlacedGrid read_grid(std::string const& text) {
  InterlacedGrid g;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  bool have_range = false, have_row0 = false;
  while (std::getline(in, raw)) {
    ++line;
    if (auto h = raw.find('#'); h != std::string::npos) {
      raw.erase(h);
    }
    std::istringstream ls(raw);
    std::string head;
    if (!(ls >> head)) {
      continue;
    }
    std::size_t col = raw.find(head) + head.size() + 2;
    if (head == "range") {
      if (!(ls >> g.i_min >> g.i_max >> g.j_max) || g.i_min > g.i_max || g.j_max < 0) {
        throw ParseError("'range' needs i_min <= i_max and j_max >= 0", line, 1);
      }
      have_range = true;
    } else if (head == "row0") {
      if (!have_range) {
        throw ParseError("'range' must come first", line, 1);
      }
      g.row0 = parse_terms(ls, line, col, "");
      have_row0 = true;
    } else if (head == "period") {
      std::string sym;
      int per = 0;
      if (!(ls >> sym >> per) || per <= 0) {
        throw ParseError("'period' needs a symbol and a positive integer", line, 1);
      }
      g.periods[sym] = per;
    } else {
      if (!have_range || !have_row0) {
        throw ParseError("cells must follow 'range' and 'row0'", line, 1);
      }
      int i = 0, j = 0;
      try {
        std::size_t used = 0;
        i = std::stoi(head, &used);
        if (used != head.size()) {
          throw std::invalid_argument(head);
        }
      } catch (std::exception const&) {
        throw ParseError("expected a cell index, found '" + head + "'", line, 1);
      }
      if (!(ls >> j)) {
        throw ParseError("cell line needs i and j", line, col);
      }
      if (!g.contains(i, j)) {
        throw ParseError("cell outside the declared range", line, 1);
      }
      col = 1;
      Signature sig = parse_terms(ls, line, col, "");
      if (!g.cells.emplace(Coord{i, j}, std::move(sig)).second) {
        throw ParseError("duplicate cell", line, 1);
      }
    }
  }
  if (!have_range || !have_row0) {
    throw ParseError("missing 'range' or 'row0'", line + 1, 1);
  }
  return g;
}

}  // namespace algmod
