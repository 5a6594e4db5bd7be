#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "algmod/field.hpp"

namespace algmod {

/// Dense row-major matrix over a finite field.  Entries are always reduced.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);
  /// Entries given as integers, reduced mod p (prime fields) or taken as
  /// element codes (extension fields).
  Matrix(FieldPtr field,
         std::size_t rows,
         std::size_t cols,
         std::vector<std::int64_t> const& entries);

  static Matrix identity(FieldPtr field, std::size_t n);
  static Matrix zero(FieldPtr field, std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }
  Field const& field() const noexcept { return *field_; }
  FieldPtr const& field_ptr() const noexcept { return field_; }

  Elem operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
  Elem& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  Elem* row(std::size_t i) noexcept { return data_.data() + i * cols_; }
  Elem const* row(std::size_t i) const noexcept { return data_.data() + i * cols_; }
  std::vector<Elem> const& data() const noexcept { return data_; }
  std::vector<Elem>& data() noexcept { return data_; }

  bool is_zero() const noexcept;
  bool is_square() const noexcept { return rows_ == cols_; }
  bool operator==(Matrix const& other) const noexcept;

  Matrix operator+(Matrix const& other) const;
  Matrix operator-(Matrix const& other) const;
  Matrix operator*(Matrix const& other) const;
  Matrix& operator+=(Matrix const& other);
  Matrix& operator-=(Matrix const& other);
  Matrix scaled(Elem c) const;
  /// this += c * other
  void add_scaled(Matrix const& other, Elem c);

  Matrix transpose() const;
  Matrix power(std::uint64_t k) const;
  /// Rows [r0, r0 + nr), columns [c0, c0 + nc).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, Matrix const& b);
  Matrix columns(std::span<std::size_t const> idx) const;
  Matrix column(std::size_t j) const;
  Elem trace() const;

  static Matrix hstack(std::span<Matrix const> parts);
  static Matrix vstack(std::span<Matrix const> parts);
  static Matrix hstack(Matrix const& a, Matrix const& b);
  static Matrix vstack(Matrix const& a, Matrix const& b);
  static Matrix diag(Matrix const& a, Matrix const& b);

 private:
  FieldPtr field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

void require_same_field(Matrix const& a, Matrix const& b);

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m);

std::size_t rank(Matrix const& m);
/// Columns form a basis of {x : m x = 0}.
Matrix nullspace(Matrix const& m);
/// Columns form a basis of {y : y^T m = 0}.
Matrix left_nullspace(Matrix const& m);
/// Basis (as columns) of the column space, taken from m's own columns.
Matrix column_space(Matrix const& m);
/// One solution X of system * X = rhs, or nullopt when inconsistent.
std::optional<Matrix> solve_linear(Matrix const& system, Matrix const& rhs);
std::optional<Matrix> inverse(Matrix const& m);
bool is_invertible(Matrix const& m);

Matrix kron(Matrix const& a, Matrix const& b);
/// Embed a matrix over GF(p) into GF(p^e) (constants map to themselves).
Matrix extend_scalars(Matrix const& m, FieldPtr target);

/// Incremental semi-echelon basis for a space of row vectors.  Every stored
/// vector has its pivot entry equal to one and zeros at the pivots of all
/// vectors stored before it.
class EchelonBasis {
 public:
  EchelonBasis(FieldPtr field, std::size_t length);

  std::size_t length() const noexcept { return length_; }
  std::size_t size() const noexcept { return pivots_.size(); }
  std::vector<std::size_t> const& pivots() const noexcept { return pivots_; }
  Elem const* vector(std::size_t i) const noexcept { return rows_.data() + i * length_; }

  /// Reduces v in place against the basis; returns true when v became zero.
  bool reduce(std::span<Elem> v) const;
  /// Reduces and records the multipliers used, so v_original = v_reduced +
  /// sum_i coeffs[i] * vector(i).
  bool reduce(std::span<Elem> v, std::vector<Elem>& coeffs) const;
  /// Reduces v and stores it when independent; returns true when added.
  bool insert(std::span<Elem const> v);
  /// Coordinates of v in the stored basis, or nullopt if not in the span.
  std::optional<std::vector<Elem>> coordinates(std::span<Elem const> v) const;
  /// Stored vectors as the rows of a matrix.
  Matrix as_rows() const;

 private:
  FieldPtr field_;
  std::size_t length_;
  std::vector<Elem> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<std::ptrdiff_t> pivot_owner_;
};

}  // namespace algmod
