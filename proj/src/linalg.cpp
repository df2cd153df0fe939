#include "twistkit/linalg.hpp"

#include <utility>

namespace twistkit {

Vector zero_vector(const FieldPtr& f, std::size_t n) { return Vector(n, f->zero()); }

Vector basis_vector(const FieldPtr& f, std::size_t n, std::size_t i) {
  Vector v = zero_vector(f, n);
  v.at(i) = f->one();
  return v;
}

Vector add(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw MathError("vector length mismatch");
  Vector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vector sub(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw MathError("vector length mismatch");
  Vector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vector scale(const Scalar& s, const Vector& v) {
  Vector r = v;
  for (auto& x : r) x = s * x;
  return r;
}

bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

std::string to_string(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].to_string();
  }
  return s + ")";
}

Matrix::Matrix(FieldPtr f, std::size_t rows, std::size_t cols)
    : field_(std::move(f)), rows_(rows), cols_(cols), data_(rows * cols, field_->zero()) {}

Matrix Matrix::identity(const FieldPtr& f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = f->one();
  return m;
}

Matrix Matrix::from_columns(const FieldPtr& f, std::size_t rows, const std::vector<Vector>& cols) {
  Matrix m(f, rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw MathError("column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

Matrix Matrix::from_rows(const FieldPtr& f, std::size_t cols, const std::vector<Vector>& rows) {
  Matrix m(f, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw MathError("row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Vector Matrix::column(std::size_t c) const {
  Vector v;
  v.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
  return v;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw MathError("matrix shape mismatch");
  Matrix m(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        if (!o(k, j).is_zero()) m(i, j) += a * o(k, j);
    }
  return m;
}

Vector Matrix::operator*(const Vector& v) const {
  if (cols_ != v.size()) throw MathError("matrix/vector shape mismatch");
  Vector r = zero_vector(field_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k)
      if (!v[k].is_zero() && !(*this)(i, k).is_zero()) r[i] += (*this)(i, k) * v[k];
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw MathError("matrix shape mismatch");
  Matrix m = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] += o.data_[i];
  return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw MathError("matrix shape mismatch");
  Matrix m = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] -= o.data_[i];
  return m;
}

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix m = *this;
  for (auto& x : m.data_) x = s * x;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

Matrix Matrix::power(unsigned k) const {
  Matrix r = identity(field_, rows_);
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

namespace {

// Fraction-free echelon form over Z followed by reduction to RREF over Q.
RowEchelon row_reduce_rational(const Matrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<mpz_class>> a;
  a.reserve(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    mpz_class lcm = 1;
    bool nonzero = false;
    for (std::size_t c = 0; c < cols; ++c) {
      const auto& q = m(r, c).rational();
      if (sgn(q) != 0) nonzero = true;
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
    }
    if (!nonzero) continue;
    std::vector<mpz_class> row(cols);
    for (std::size_t c = 0; c < cols; ++c) {
      const auto& q = m(r, c).rational();
      row[c] = q.get_num() * (lcm / q.get_den());
    }
    a.push_back(std::move(row));
  }

  std::vector<std::size_t> pivots;
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    pivots.push_back(c);
    ++r;
  }

  const auto& q = m.field();
  Matrix out(q, rows, cols);
  std::vector<std::vector<mpq_class>> e(pivots.size(), std::vector<mpq_class>(cols));
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    const mpz_class& lead = a[i][pivots[i]];
    for (std::size_t j = pivots[i]; j < cols; ++j) {
      e[i][j] = mpq_class(a[i][j], lead);
      e[i][j].canonicalize();
    }
  }
  for (std::size_t i = pivots.size(); i-- > 0;) {
    for (std::size_t k = 0; k < i; ++k) {
      const mpq_class f = e[k][pivots[i]];
      if (sgn(f) == 0) continue;
      for (std::size_t j = pivots[i]; j < cols; ++j)
        if (sgn(e[i][j]) != 0) e[k][j] -= f * e[i][j];
    }
  }
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (sgn(e[i][j]) != 0) out(i, j) = q->from_rational(e[i][j]);
  return {std::move(out), std::move(pivots)};
}

RowEchelon row_reduce_finite(const Matrix& m) {
  Matrix a = m;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
    const Scalar inv = a(r, c).inverse();
    for (std::size_t j = c; j < cols; ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      const Scalar f = a(i, c);
      for (std::size_t j = c; j < cols; ++j)
        if (!a(r, j).is_zero()) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(pivots)};
}

}  // namespace

RowEchelon row_reduce(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return {m, {}};
  if (m.field()->kind() == FieldKind::rational) return row_reduce_rational(m);
  return row_reduce_finite(m);
}

std::size_t rank(const Matrix& m) { return row_reduce(m).rank(); }

std::vector<Vector> nullspace(const Matrix& m) {
  const auto red = row_reduce(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto p : red.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector v = zero_vector(m.field(), cols);
    v[free] = m.field()->one();
    for (std::size_t i = 0; i < red.pivots.size(); ++i) v[red.pivots[i]] = -red.rref(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

Scalar determinant(const Matrix& m) {
  if (!m.square()) throw MathError("determinant of a non-square matrix");
  const auto& f = m.field();
  const std::size_t n = m.rows();
  if (n == 0) return f->one();
  if (f->kind() == FieldKind::rational) {
    // Bareiss on the denominator-cleared integer matrix.
    std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
    mpq_class scale = 1;
    for (std::size_t r = 0; r < n; ++r) {
      mpz_class lcm = 1;
      for (std::size_t c = 0; c < n; ++c)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(r, c).rational().get_den_mpz_t());
      for (std::size_t c = 0; c < n; ++c) {
        const auto& q = m(r, c).rational();
        a[r][c] = q.get_num() * (lcm / q.get_den());
      }
      scale *= mpq_class(lcm);
    }
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t p = k;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return f->zero();
      if (p != k) {
        std::swap(a[p], a[k]);
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        for (std::size_t j = k + 1; j < n; ++j) {
          a[i][j] = a[k][k] * a[i][j] - a[i][k] * a[k][j];
          mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
        }
        a[i][k] = 0;
      }
      prev = a[k][k];
    }
    mpq_class det(a[n - 1][n - 1] * sign);
    det /= scale;
    return f->from_rational(det);
  }
  Matrix a = m;
  Scalar det = f->one();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k).is_zero()) ++p;
    if (p == n) return f->zero();
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
      det = -det;
    }
    det *= a(k, k);
    const Scalar inv = a(k, k).inverse();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      const Scalar fct = a(i, k) * inv;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= fct * a(k, j);
    }
  }
  return det;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (!m.square()) throw MathError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = m.field()->one();
  }
  const auto red = row_reduce(aug);
  if (red.rank() < n || red.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = red.rref(i, n + j);
  return inv;
}

Matrix inverse_or_throw(const Matrix& m, const std::string& what) {
  auto inv = inverse(m);
  if (!inv) throw MathError("singular " + what);
  return *std::move(inv);
}

std::optional<Vector> solve(const Matrix& a, const Vector& b) {
  if (a.rows() != b.size()) throw MathError("solve: shape mismatch");
  Matrix aug(a.field(), a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const auto red = row_reduce(aug);
  if (!red.pivots.empty() && red.pivots.back() == a.cols()) return std::nullopt;
  Vector x = zero_vector(a.field(), a.cols());
  for (std::size_t i = 0; i < red.pivots.size(); ++i) x[red.pivots[i]] = red.rref(i, a.cols());
  return x;
}

std::optional<Vector> span_coordinates(const FieldPtr& f, std::span<const Vector> basis, const Vector& v) {
  if (basis.empty()) {
    if (is_zero(v)) return Vector{};
    return std::nullopt;
  }
  Matrix a = Matrix::from_columns(f, v.size(), std::vector<Vector>(basis.begin(), basis.end()));
  auto x = solve(a, v);
  if (!x) return std::nullopt;
  if (!(a * *x == v)) return std::nullopt;
  return x;
}

}  // namespace twistkit
