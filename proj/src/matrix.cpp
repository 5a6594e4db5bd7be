#include "algmod/matrix.hpp"

#include <algorithm>

#include "kernels.hpp"

namespace algmod {

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix::Matrix(FieldPtr field,
               std::size_t rows,
               std::size_t cols,
               std::vector<std::int64_t> const& entries)
    : Matrix(std::move(field), rows, cols) {
  if (entries.size() != rows * cols) {
    throw Error("matrix entry count " + std::to_string(entries.size()) + " != "
                + std::to_string(rows) + "x" + std::to_string(cols));
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (field_->is_prime_field()) {
      data_[i] = field_->from_int(entries[i]);
    } else {
      if (entries[i] < 0 || entries[i] >= std::int64_t(field_->order())) {
        throw Error("element code out of range for " + field_->name());
      }
      data_[i] = Elem(entries[i]);
    }
  }
}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 1;
  }
  return m;
}

Matrix Matrix::zero(FieldPtr field, std::size_t rows, std::size_t cols) {
  return Matrix(std::move(field), rows, cols);
}

bool Matrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](Elem x) { return x == 0; });
}

bool Matrix::operator==(Matrix const& other) const noexcept {
  return rows_ == other.rows_ && cols_ == other.cols_
         && (field_ == other.field_ || (field_ && other.field_ && field_->same_as(*other.field_)))
         && data_ == other.data_;
}

void require_same_field(Matrix const& a, Matrix const& b) {
  if (!a.field_ptr() || !b.field_ptr() || !a.field().same_as(b.field())) {
    throw Error("matrices over different fields");
  }
}

Matrix& Matrix::operator+=(Matrix const& other) {
  require_same_field(*this, other);
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw Error("matrix sum dimension mismatch");
  }
  detail::axpy(*field_, data_.data(), other.data_.data(), 1, data_.size());
  return *this;
}

Matrix& Matrix::operator-=(Matrix const& other) {
  add_scaled(other, field_->neg(1));
  return *this;
}

void Matrix::add_scaled(Matrix const& other, Elem c) {
  require_same_field(*this, other);
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw Error("matrix sum dimension mismatch");
  }
  detail::axpy(*field_, data_.data(), other.data_.data(), c, data_.size());
}

Matrix Matrix::operator+(Matrix const& other) const {
  Matrix r = *this;
  r += other;
  return r;
}

Matrix Matrix::operator-(Matrix const& other) const {
  Matrix r = *this;
  r -= other;
  return r;
}

Matrix Matrix::operator*(Matrix const& other) const {
  require_same_field(*this, other);
  if (cols_ != other.rows_) {
    throw Error("matrix product dimension mismatch: " + std::to_string(rows_) + "x"
                + std::to_string(cols_) + " * " + std::to_string(other.rows_) + "x"
                + std::to_string(other.cols_));
  }
  Matrix r(field_, rows_, other.cols_);
  if (rows_ && other.cols_ && cols_) {
    detail::matmul(*field_, data_.data(), other.data_.data(), r.data_.data(), rows_, cols_,
                   other.cols_);
  }
  return r;
}

Matrix Matrix::scaled(Elem c) const {
  Matrix r = *this;
  detail::scale(*field_, r.data_.data(), c, r.data_.size());
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      r(j, i) = (*this)(i, j);
    }
  }
  return r;
}

Matrix Matrix::power(std::uint64_t k) const {
  if (!is_square()) {
    throw Error("power of a non-square matrix");
  }
  Matrix result = identity(field_, rows_);
  Matrix base = *this;
  while (k) {
    if (k & 1) {
      result = result * base;
    }
    k >>= 1;
    if (k) {
      base = base * base;
    }
  }
  return result;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) {
    throw Error("block out of range");
  }
  Matrix r(field_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    std::copy_n(row(r0 + i) + c0, nc, r.row(i));
  }
  return r;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, Matrix const& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) {
    throw Error("set_block out of range");
  }
  for (std::size_t i = 0; i < b.rows_; ++i) {
    std::copy_n(b.row(i), b.cols_, row(r0 + i) + c0);
  }
}

Matrix Matrix::columns(std::span<std::size_t const> idx) const {
  Matrix r(field_, rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < idx.size(); ++j) {
      r(i, j) = (*this)(i, idx[j]);
    }
  }
  return r;
}

Matrix Matrix::column(std::size_t j) const {
  std::size_t idx[] = {j};
  return columns(idx);
}

Elem Matrix::trace() const {
  Elem t = 0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) {
    t = field_->add(t, (*this)(i, i));
  }
  return t;
}

Matrix Matrix::hstack(std::span<Matrix const> parts) {
  if (parts.empty()) {
    throw Error("hstack of nothing");
  }
  std::size_t cols = 0;
  for (auto const& p : parts) {
    if (p.rows_ != parts[0].rows_) {
      throw Error("hstack row mismatch");
    }
    cols += p.cols_;
  }
  Matrix r(parts[0].field_, parts[0].rows_, cols);
  std::size_t c = 0;
  for (auto const& p : parts) {
    r.set_block(0, c, p);
    c += p.cols_;
  }
  return r;
}

Matrix Matrix::vstack(std::span<Matrix const> parts) {
  if (parts.empty()) {
    throw Error("vstack of nothing");
  }
  std::size_t rows = 0;
  for (auto const& p : parts) {
    if (p.cols_ != parts[0].cols_) {
      throw Error("vstack column mismatch");
    }
    rows += p.rows_;
  }
  Matrix r(parts[0].field_, rows, parts[0].cols_);
  std::size_t off = 0;
  for (auto const& p : parts) {
    r.set_block(off, 0, p);
    off += p.rows_;
  }
  return r;
}

Matrix Matrix::hstack(Matrix const& a, Matrix const& b) {
  Matrix parts[] = {a, b};
  return hstack(parts);
}

Matrix Matrix::vstack(Matrix const& a, Matrix const& b) {
  Matrix parts[] = {a, b};
  return vstack(parts);
}

Matrix Matrix::diag(Matrix const& a, Matrix const& b) {
  require_same_field(a, b);
  Matrix r(a.field_, a.rows_ + b.rows_, a.cols_ + b.cols_);
  r.set_block(0, 0, a);
  r.set_block(a.rows_, a.cols_, b);
  return r;
}

std::vector<std::size_t> rref(Matrix& m) {
  Field const& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t const rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (m(i, c) != 0) {
        sel = i;
        break;
      }
    }
    if (sel == rows) {
      continue;
    }
    if (sel != r) {
      std::swap_ranges(m.row(sel) + c, m.row(sel) + cols, m.row(r) + c);
    }
    detail::scale(f, m.row(r) + c, f.inv(m(r, c)), cols - c);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i != r && m(i, c) != 0) {
        detail::axpy(f, m.row(i) + c, m.row(r) + c, f.neg(m(i, c)), cols - c);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(Matrix const& m_in) {
  if (m_in.empty()) {
    return 0;
  }
  // Forward elimination only; work on whichever orientation is shorter.
  Matrix m = m_in.rows() > m_in.cols() ? m_in.transpose() : m_in;
  Field const& f = m.field();
  std::size_t const rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (m(i, c) != 0) {
        sel = i;
        break;
      }
    }
    if (sel == rows) {
      continue;
    }
    if (sel != r) {
      std::swap_ranges(m.row(sel) + c, m.row(sel) + cols, m.row(r) + c);
    }
    Elem const inv = f.inv(m(r, c));
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m(i, c) != 0) {
        detail::axpy(f, m.row(i) + c, m.row(r) + c, f.neg(f.mul(m(i, c), inv)), cols - c);
      }
    }
    ++r;
  }
  return r;
}

Matrix nullspace(Matrix const& m_in) {
  Matrix m = m_in;
  auto pivots = rref(m);
  std::size_t const n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) {
    is_pivot[c] = true;
  }
  Field const& f = m.field();
  Matrix basis(m.field_ptr(), n, n - pivots.size());
  std::size_t k = 0;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) {
      continue;
    }
    basis(free, k) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      basis(pivots[r], k) = f.neg(m(r, free));
    }
    ++k;
  }
  return basis;
}

Matrix left_nullspace(Matrix const& m) {
  return nullspace(m.transpose());
}

Matrix column_space(Matrix const& m_in) {
  Matrix m = m_in;
  auto pivots = rref(m);
  return m_in.columns(pivots);
}

std::optional<Matrix> solve_linear(Matrix const& system, Matrix const& rhs) {
  require_same_field(system, rhs);
  if (system.rows() != rhs.rows()) {
    throw Error("solve_linear: row counts differ (" + std::to_string(system.rows()) + " vs "
                + std::to_string(rhs.rows()) + ")");
  }
  std::size_t const n = system.cols();
  Matrix aug = Matrix::hstack(system, rhs);
  auto pivots = rref(aug);
  Matrix x(system.field_ptr(), n, rhs.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] >= n) {
      return std::nullopt;
    }
    for (std::size_t j = 0; j < rhs.cols(); ++j) {
      x(pivots[r], j) = aug(r, n + j);
    }
  }
  return x;
}

std::optional<Matrix> inverse(Matrix const& m) {
  if (!m.is_square()) {
    return std::nullopt;
  }
  std::size_t const n = m.rows();
  Matrix aug = Matrix::hstack(m, Matrix::identity(m.field_ptr(), n));
  auto pivots = rref(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) {
    return std::nullopt;
  }
  return aug.block(0, n, n, n);
}

bool is_invertible(Matrix const& m) {
  return m.is_square() && rank(m) == m.rows();
}

Matrix kron(Matrix const& a, Matrix const& b) {
  require_same_field(a, b);
  Field const& f = a.field();
  Matrix r(a.field_ptr(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Elem const x = a(i, j);
      if (x == 0) {
        continue;
      }
      for (std::size_t k = 0; k < b.rows(); ++k) {
        Elem* dst = r.row(i * b.rows() + k) + j * b.cols();
        Elem const* src = b.row(k);
        for (std::size_t l = 0; l < b.cols(); ++l) {
          dst[l] = f.mul(x, src[l]);
        }
      }
    }
  }
  return r;
}

Matrix extend_scalars(Matrix const& m, FieldPtr target) {
  if (!target || target->p() != m.field().p()) {
    throw Error("extend_scalars: characteristic mismatch");
  }
  if (!m.field().is_prime_field()) {
    if (m.field().same_as(*target)) {
      return m;
    }
    throw Error("extend_scalars: source must be a prime field");
  }
  Matrix r(target, m.rows(), m.cols());
  r.data() = m.data();
  return r;
}

EchelonBasis::EchelonBasis(FieldPtr field, std::size_t length)
    : field_(std::move(field)), length_(length), pivot_owner_(length, -1) {}

bool EchelonBasis::reduce(std::span<Elem> v) const {
  Field const& f = *field_;
  bool zero = true;
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    std::size_t const c = pivots_[i];
    Elem const x = v[c];
    if (x != 0) {
      detail::axpy(f, v.data() + c, rows_.data() + i * length_ + c, f.neg(x), length_ - c);
    }
  }
  for (auto x : v) {
    if (x != 0) {
      zero = false;
      break;
    }
  }
  return zero;
}

bool EchelonBasis::reduce(std::span<Elem> v, std::vector<Elem>& coeffs) const {
  Field const& f = *field_;
  coeffs.assign(pivots_.size(), 0);
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    std::size_t const c = pivots_[i];
    Elem const x = v[c];
    if (x != 0) {
      coeffs[i] = x;
      detail::axpy(f, v.data() + c, rows_.data() + i * length_ + c, f.neg(x), length_ - c);
    }
  }
  return std::all_of(v.begin(), v.end(), [](Elem x) { return x == 0; });
}

bool EchelonBasis::insert(std::span<Elem const> v_in) {
  std::vector<Elem> v(v_in.begin(), v_in.end());
  if (reduce(v)) {
    return false;
  }
  std::size_t c = 0;
  while (v[c] == 0) {
    ++c;
  }
  detail::scale(*field_, v.data() + c, field_->inv(v[c]), length_ - c);
  rows_.insert(rows_.end(), v.begin(), v.end());
  pivot_owner_[c] = std::ptrdiff_t(pivots_.size());
  pivots_.push_back(c);
  return true;
}

std::optional<std::vector<Elem>> EchelonBasis::coordinates(std::span<Elem const> v_in) const {
  std::vector<Elem> v(v_in.begin(), v_in.end());
  std::vector<Elem> coeffs;
  if (!reduce(v, coeffs)) {
    return std::nullopt;
  }
  return coeffs;
}

Matrix EchelonBasis::as_rows() const {
  Matrix m(field_, pivots_.size(), length_);
  std::copy(rows_.begin(), rows_.end(), m.data().begin());
  return m;
}

}  // namespace algmod
