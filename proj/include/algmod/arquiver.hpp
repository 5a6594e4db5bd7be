#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "algmod/error.hpp"

namespace algmod {

class IsoClassRegistry;
struct Decomposition;

/// Formal multiset of symbols with Heller shifts, written x^i.
class Signature {
 public:
  using Key = std::pair<std::string, int>;  // (symbol, shift)

  Signature() = default;

  void add(std::string const& symbol, int shift, std::size_t mult = 1);
  /// Multiset difference; nullopt when some multiplicity would go negative.
  std::optional<Signature> minus(Signature const& other) const;
  Signature operator+(Signature const& other) const;
  Signature shifted(int by) const;
  /// Shifts of periodic symbols reduced into [0, period).
  Signature normalized(std::map<std::string, int> const& periods) const;

  std::size_t size() const noexcept;  ///< with multiplicity
  bool empty() const noexcept { return counts_.empty(); }
  std::size_t count(std::string const& symbol, int shift) const;
  std::map<Key, std::size_t> const& counts() const noexcept { return counts_; }
  /// Some symbol occurs with two different shifts.
  bool has_distinct_shifts() const;

  bool operator==(Signature const& o) const { return counts_ == o.counts_; }
  bool operator!=(Signature const& o) const { return !(*this == o); }

  /// Space-separated "sym^shift" tokens, repeated by multiplicity.
  std::string str() const;
  static Signature parse(std::string const& text);

 private:
  std::map<Key, std::size_t> counts_;
};

using Coord = std::pair<int, int>;  // (i, j)

struct InterlacedGrid {
  int i_min = 0;
  int i_max = 0;
  int j_max = 0;
  Signature row0;                      ///< signature at (0, 0)
  std::map<std::string, int> periods;  ///< periodic symbol families; empty by default
  std::map<Coord, Signature> cells;

  Signature const& at(int i, int j) const;
  bool contains(int i, int j) const noexcept { return i >= i_min && i <= i_max && j >= 0 && j <= j_max; }
};

/// Union of row0 shifted by i+j, i+j-2, ..., i-j.
Signature signature_formula(int i, int j, Signature const& row0);

/// Row 0 by shifting, row 1 as shift(i-1) + shift(i+1), higher rows by
/// solving each diamond.  Throws on an empty row0 or an inconsistent diamond.
InterlacedGrid propagate(Signature const& row0,
                         int i_min,
                         int i_max,
                         int j_max,
                         std::map<std::string, int> const& periods = {});

/// Grid filled straight from the closed formula.
InterlacedGrid formula_grid(Signature const& row0, int i_min, int i_max, int j_max);

struct DiamondReport {
  bool ok = true;
  Coord where{0, 0};  ///< centre (i, j) of the first failing diamond, or the bad row-0 cell
  std::string message;
};

/// Checks row 0 against shifts of row0 and, for each interior (i, j) with
/// j >= 1, that (i, j+1) + (i, j-1) = (i-1, j) + (i+1, j).
DiamondReport diamond_check(InterlacedGrid const& grid);

/// Cells whose signature has no symbol with two distinct shifts.  With a
/// designated shift s, additionally every term must carry shift s.
std::set<Coord> algebraic_positions(InterlacedGrid const& grid, std::optional<int> designated_shift = std::nullopt);

/// Row 0 seed from the non-free summands of a decomposition, one symbol per
/// registry class (shift 0).
Signature signature_from_decomposition(Decomposition const& d, IsoClassRegistry& registry);

/// One cell per line: "i j sym^shift ...".  Header lines "range i_min i_max j_max"
/// and "row0 ..." come first; "#" starts a comment.
std::string write_grid(InterlacedGrid const& grid);
InterlacedGrid read_grid(std::string const& text);

}  // namespace algmod
