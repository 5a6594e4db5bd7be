#pragma once

#include <iosfwd>
#include <string>

#include "algmod/error.hpp"
#include "algmod/module.hpp"

namespace algmod {

/// Malformed module text; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::string const& detail, std::size_t line, std::size_t column, std::string const& source = "");
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  std::string const& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::size_t line_;
  std::size_t column_;
};

// Module text format:
//
//   # comment lines and blank lines are ignored
//   p 3
//   rank 2
//   ext 1          (optional, default 1)
//   dim 3
//   gen 1
//   0 1 0
//   0 0 1
//   0 0 0
//   gen 2
//   ...
//
// Each generator block holds dim rows of dim integers, the A-form matrix
// (the group generator acts as I + A).  Entries are residues mod p, or
// element codes below p^ext for extension fields.  The header keys appear in
// the order shown.  The parsed module must pass validate().
std::string write_module(Module const& m);
Module read_module(std::string const& text);
Module read_module_file(std::string const& path);
void write_module_file(std::string const& path, Module const& m);

}  // namespace algmod
