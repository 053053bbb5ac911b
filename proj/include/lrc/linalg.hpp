#pragma once

// Dense matrices over a Field. Indices in this header are 0-based; the code
// layer above converts to the 1-based symbol numbering used in files.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lrc/error.hpp"
#include "lrc/gf.hpp"

namespace lrc {

class Matrix {
 public:
  Matrix(Field field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<Value> data)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) fail(ErrorCode::kDimensionMismatch, "matrix data has wrong length");
    for (Value v : data_)
      if (!field_.contains(v)) fail(ErrorCode::kBadParams, "matrix entry " + std::to_string(v) + " outside the field");
  }

  static Matrix from_rows(Field field, const std::vector<std::vector<Value>>& rows) {
    const std::size_t k = rows.size();
    const std::size_t n = k ? rows.front().size() : 0;
    std::vector<Value> data;
    data.reserve(k * n);
    for (const auto& row : rows) {
      if (row.size() != n) fail(ErrorCode::kDimensionMismatch, "ragged rows");
      data.insert(data.end(), row.begin(), row.end());
    }
    return Matrix(std::move(field), k, n, std::move(data));
  }

  static Matrix identity(Field field, std::size_t n) {
    Matrix out(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i) out.at(i, i) = 1;
    return out;
  }

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Value& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Value at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Value> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::vector<Value> column(std::size_t c) const {
    std::vector<Value> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
    return out;
  }

  Matrix transpose() const {
    Matrix out(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
    return out;
  }

  Matrix select_columns(std::span<const std::size_t> cols) const {
    Matrix out(field_, rows_, cols.size());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t j = 0; j < cols.size(); ++j) out.at(r, j) = at(r, cols[j]);
    return out;
  }

  Matrix select_rows(std::span<const std::size_t> rows) const {
    Matrix out(field_, rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t c = 0; c < cols_; ++c) out.at(i, c) = at(rows[i], c);
    return out;
  }

  /// Row vector times matrix.
  std::vector<Value> left_multiply(std::span<const Value> msg) const {
    if (msg.size() != rows_) fail(ErrorCode::kDimensionMismatch, "message length != rows");
    std::vector<Value> out(cols_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (msg[r] == 0) continue;
      for (std::size_t c = 0; c < cols_; ++c) out[c] = field_.add(out[c], field_.mul(msg[r], at(r, c)));
    }
    return out;
  }

  Matrix operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) fail(ErrorCode::kDimensionMismatch, "inner dimensions differ");
    if (!(field_ == rhs.field_)) fail(ErrorCode::kFieldMismatch, "matrix product across fields");
    Matrix out(field_, rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t t = 0; t < cols_; ++t) {
        const Value a = at(r, t);
        if (a == 0) continue;
        for (std::size_t c = 0; c < rhs.cols_; ++c) out.at(r, c) = field_.add(out.at(r, c), field_.mul(a, rhs.at(t, c)));
      }
    return out;
  }

  const std::vector<Value>& data() const { return data_; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Value> data_;
};

struct EchelonForm {
  Matrix reduced;
  std::vector<std::size_t> pivot_cols;
};

/// Reduced row echelon form. Pivots are the first nonzero entry scanning
/// columns left to right and rows top to bottom.
inline EchelonForm rref(Matrix m) {
  const Field& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
    std::size_t r = lead;
    while (r < m.rows() && m.at(r, c) == 0) ++r;
    if (r == m.rows()) continue;
    if (r != lead)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(r, j), m.at(lead, j));
    const Value s = f.inv(m.at(lead, c));
    for (std::size_t j = c; j < m.cols(); ++j) m.at(lead, j) = f.mul(s, m.at(lead, j));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == lead || m.at(i, c) == 0) continue;
      const Value factor = m.at(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(lead, j)));
    }
    pivots.push_back(c);
    ++lead;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivot_cols.size(); }

inline std::size_t column_rank(const Matrix& m, std::span<const std::size_t> cols) { return rank(m.select_columns(cols)); }

/// Determinant of a square matrix.
inline Value determinant(Matrix m) {
  if (m.rows() != m.cols()) fail(ErrorCode::kDimensionMismatch, "determinant of a non-square matrix");
  const Field& f = m.field();
  const std::size_t n = m.rows();
  Value det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = c;
    while (r < n && m.at(r, c) == 0) ++r;
    if (r == n) return 0;
    if (r != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(r, j), m.at(c, j));
      det = f.neg(det);
    }
    det = f.mul(det, m.at(c, c));
    const Value s = f.inv(m.at(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m.at(i, c) == 0) continue;
      const Value factor = f.mul(m.at(i, c), s);
      for (std::size_t j = c; j < n; ++j) m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(c, j)));
    }
  }
  return det;
}

/// Coefficients expressing v as a combination of the selected columns of m,
/// or nullopt when v is outside their span. Free variables are set to 0.
inline std::optional<std::vector<Value>> in_span(const Matrix& m, std::span<const std::size_t> cols, std::span<const Value> v) {
  if (v.size() != m.rows()) fail(ErrorCode::kDimensionMismatch, "vector length != matrix rows");
  for (std::size_t c : cols)
    if (c >= m.cols()) fail(ErrorCode::kDimensionMismatch, "column index out of range");
  const Field& f = m.field();
  Matrix aug(f, m.rows(), cols.size() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t j = 0; j < cols.size(); ++j) aug.at(r, j) = m.at(r, cols[j]);
    aug.at(r, cols.size()) = v[r];
  }
  auto [red, pivots] = rref(std::move(aug));
  if (!pivots.empty() && pivots.back() == cols.size()) return std::nullopt;
  std::vector<Value> coeffs(cols.size(), 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) coeffs[pivots[i]] = red.at(i, cols.size());
  return coeffs;
}

/// Incrementally built basis of a column space, kept in echelon form so
/// membership tests cost one reduction pass.
class SpanBuilder {
 public:
  explicit SpanBuilder(Field field, std::size_t dim) : field_(std::move(field)), dim_(dim) {}

  /// Reduces v against the basis; returns the residual.
  std::vector<Value> reduce(std::vector<Value> v) const {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Value c = v[pivots_[i]];
      if (c == 0) continue;
      for (std::size_t t = 0; t < dim_; ++t) v[t] = field_.sub(v[t], field_.mul(c, basis_[i][t]));
    }
    return v;
  }

  bool contains(const std::vector<Value>& v) const {
    auto res = reduce(v);
    return std::all_of(res.begin(), res.end(), [](Value x) { return x == 0; });
  }

  /// Adds v; returns false when v was already in the span.
  bool add(std::vector<Value> v) {
    v = reduce(std::move(v));
    std::size_t p = 0;
    while (p < dim_ && v[p] == 0) ++p;
    if (p == dim_) return false;
    const Value s = field_.inv(v[p]);
    for (auto& x : v) x = field_.mul(s, x);
    basis_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

  std::size_t size() const { return basis_.size(); }

 private:
  Field field_;
  std::size_t dim_;
  std::vector<std::vector<Value>> basis_;
  std::vector<std::size_t> pivots_;
};

/// A minimally dependent set of columns with its (unique up to scaling)
/// linear relation. Coefficients follow `columns` order and are normalized
/// so the first one is 1.
struct Circuit {
  std::vector<std::size_t> columns;
  std::vector<Value> coeffs;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

namespace detail {

inline void circuit_search(const Matrix& m, std::size_t target, const std::vector<Value>& target_col, std::size_t max_size,
                           std::size_t next, std::vector<std::size_t>& chosen, std::vector<Circuit>& out) {
  if (!chosen.empty()) {
    if (column_rank(m, chosen) < chosen.size()) return;  // dependent: no superset is a circuit
    if (auto coeffs = in_span(m, chosen, target_col)) {
      // Independent chosen set spans the target: the representation is
      // unique, so {chosen, target} is a circuit iff no coefficient is zero.
      // Supersets give the same relation padded with zeros, hence stop.
      if (std::none_of(coeffs->begin(), coeffs->end(), [](Value x) { return x == 0; })) {
        const Field& f = m.field();
        std::vector<std::pair<std::size_t, Value>> rel;
        for (std::size_t i = 0; i < chosen.size(); ++i) rel.emplace_back(chosen[i], (*coeffs)[i]);
        rel.emplace_back(target, f.neg(1));
        std::sort(rel.begin(), rel.end());
        const Value s = f.inv(rel.front().second);
        Circuit c;
        for (auto& [col, b] : rel) {
          c.columns.push_back(col);
          c.coeffs.push_back(f.mul(s, b));
        }
        out.push_back(std::move(c));
      }
      return;
    }
  }
  if (chosen.size() + 1 >= max_size) return;
  for (std::size_t c = next; c < m.cols(); ++c) {
    if (c == target) continue;
    chosen.push_back(c);
    circuit_search(m, target, target_col, max_size, c + 1, chosen, out);
    chosen.pop_back();
  }
}

}  // namespace detail

/// Every circuit of size <= max_size that contains column j, each once.
inline std::vector<Circuit> circuits_through(const Matrix& m, std::size_t j, std::size_t max_size) {
  if (j >= m.cols()) fail(ErrorCode::kDimensionMismatch, "column index out of range");
  if (max_size > m.cols()) fail(ErrorCode::kBadParams, "max_size exceeds the number of columns");
  std::vector<Circuit> out;
  const auto col = m.column(j);
  if (std::all_of(col.begin(), col.end(), [](Value x) { return x == 0; })) {
    if (max_size >= 1) out.push_back({{j}, {1}});  // a zero column is a circuit by itself
    return out;
  }
  std::vector<std::size_t> chosen;
  detail::circuit_search(m, j, col, max_size, 0, chosen, out);
  std::sort(out.begin(), out.end(), [](const Circuit& a, const Circuit& b) { return a.columns < b.columns; });
  return out;
}

/// Cauchy matrix B[i][j] = 1 / (x_i + y_j). Requires x distinct, y distinct
/// and x_i + y_j != 0 for every pair.
inline Matrix cauchy_block(const Field& f, std::span<const Value> xs, std::span<const Value> ys) {
  Matrix out(f, xs.size(), ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < ys.size(); ++j) {
      const Value s = f.add(xs[i], ys[j]);
      if (s == 0) fail(ErrorCode::kBadParams, "Cauchy points collide (x_i + y_j = 0)");
      out.at(i, j) = f.inv(s);
    }
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (xs[i] == xs[j]) fail(ErrorCode::kBadParams, "Cauchy x points repeat");
  for (std::size_t i = 0; i < ys.size(); ++i)
    for (std::size_t j = i + 1; j < ys.size(); ++j)
      if (ys[i] == ys[j]) fail(ErrorCode::kBadParams, "Cauchy y points repeat");
  return out;
}

/// Deterministic t x w Cauchy block: x_i is the i-th element and y_j the
/// negative of element t + j, so {x} and {-y} are disjoint.
inline Matrix cauchy_block(const Field& f, std::size_t t, std::size_t w) {
  if (t + w > f.order()) fail(ErrorCode::kFieldTooSmall, "Cauchy block needs q >= t + w");
  std::vector<Value> xs(t), ys(w);
  for (std::size_t i = 0; i < t; ++i) xs[i] = static_cast<Value>(i);
  for (std::size_t j = 0; j < w; ++j) ys[j] = f.neg(static_cast<Value>(t + j));
  return cauchy_block(f, xs, ys);
}

namespace detail {

template <typename Fn>
bool for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return true;
  while (true) {
    if (!fn(std::span<const std::size_t>(idx))) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// True iff every square submatrix of b is nonsingular.
inline bool all_submatrices_invertible(const Matrix& b) {
  const std::size_t small = std::min(b.rows(), b.cols());
  if (small > 6) fail(ErrorCode::kTooLargeToCheck, "minor enumeration limited to min(rows, cols) <= 6");
  for (std::size_t s = 1; s <= small; ++s) {
    bool ok = detail::for_each_combination(b.rows(), s, [&](std::span<const std::size_t> rows) {
      Matrix sub = b.select_rows(rows);
      return detail::for_each_combination(b.cols(), s, [&](std::span<const std::size_t> cols) {
        return determinant(sub.select_columns(cols)) != 0;
      });
    });
    if (!ok) return false;
  }
  return true;
}

}  // namespace lrc
