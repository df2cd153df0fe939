#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "twistkit/scalar.hpp"

namespace twistkit {

using Vector = std::vector<Scalar>;

Vector zero_vector(const FieldPtr& f, std::size_t n);
Vector basis_vector(const FieldPtr& f, std::size_t n, std::size_t i);
Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scale(const Scalar& s, const Vector& v);
bool is_zero(const Vector& v);
std::string to_string(const Vector& v);

/// Dense exact matrix. Columns are the images of basis vectors when the matrix
/// represents a linear map, so `m * x` applies the map to `x`.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr f, std::size_t rows, std::size_t cols);

  static Matrix identity(const FieldPtr& f, std::size_t n);
  static Matrix from_columns(const FieldPtr& f, std::size_t rows, const std::vector<Vector>& cols);
  static Matrix from_rows(const FieldPtr& f, std::size_t cols, const std::vector<Vector>& rows);

  const FieldPtr& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector column(std::size_t c) const;
  Vector row(std::size_t r) const;

  Matrix operator*(const Matrix& o) const;
  Vector operator*(const Vector& v) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Scalar& s) const;
  Matrix transpose() const;
  Matrix power(unsigned k) const;
  bool operator==(const Matrix& o) const;
  bool is_zero() const;

 private:
  FieldPtr field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

using LinearMap = Matrix;

/// Reduced row echelon form with the pivot column of each nonzero row.
struct RowEchelon {
  Matrix rref;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

/// Over Q the matrix is cleared of denominators and brought to echelon form by
/// fraction-free (Bareiss) elimination before back-substitution; over finite
/// fields plain elimination is used. Pivot: first nonzero entry in the column.
RowEchelon row_reduce(const Matrix& m);
std::size_t rank(const Matrix& m);
/// Basis of {x : m x = 0}, one vector per free column with a 1 in that column.
std::vector<Vector> nullspace(const Matrix& m);
Scalar determinant(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);
/// Throws MathError("singular ...") with `what` in the message.
Matrix inverse_or_throw(const Matrix& m, const std::string& what);
std::optional<Vector> solve(const Matrix& a, const Vector& b);

/// Coordinates of `v` in the basis of a subspace, or nullopt if `v` is outside.
std::optional<Vector> span_coordinates(const FieldPtr& f, std::span<const Vector> basis, const Vector& v);

}  // namespace twistkit
