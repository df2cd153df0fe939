#include "twistkit/analyzer.hpp"

#include <array>

namespace twistkit {

namespace {

Vector flatten(const Matrix& m) {
  Vector v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) v.push_back(m(r, c));
  return v;
}

Matrix unflatten(const FieldPtr& f, std::size_t n, const Vector& v) {
  Matrix m(f, n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = v[r * n + c];
  return m;
}

void check_cap(const Algebra& a) {
  const std::size_t cap = a.field()->is_finite() ? 16 : 9;
  if (a.dim() > cap) throw MathError("derivations: dimension cap " + std::to_string(cap) + " exceeded");
}

// Unknown D(r, c) sits in column r * n + c.
std::vector<Vector> leibniz_rows(const Algebra& a) {
  const std::size_t n = a.dim();
  const auto& f = a.field();
  std::vector<Vector> rows;
  rows.reserve(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vector row = zero_vector(f, n * n);
        for (std::size_t m = 0; m < n; ++m) {
          row[k * n + m] += a.structure(i, j, m);  // D(e_i e_j)_k
          row[m * n + i] -= a.structure(m, j, k);  // (D(e_i) e_j)_k
          row[m * n + j] -= a.structure(i, m, k);  // (e_i D(e_j))_k
        }
        if (!is_zero(row)) rows.push_back(std::move(row));
      }
  return rows;
}

DerivationSpace solve_space(const Algebra& a, std::vector<Vector> rows) {
  const std::size_t n = a.dim();
  const auto& f = a.field();
  DerivationSpace s;
  std::vector<Vector> null;
  if (rows.empty()) {
    for (std::size_t i = 0; i < n * n; ++i) null.push_back(basis_vector(f, n * n, i));
  } else {
    null = nullspace(Matrix::from_rows(f, n * n, rows));
  }
  for (const auto& v : null) s.basis.push_back(unflatten(f, n, v));
  const std::size_t d = s.dim();
  s.closed = true;
  s.bracket.assign(d * d * d, f->zero());
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y) {
      const Matrix br = s.basis[x] * s.basis[y] - s.basis[y] * s.basis[x];
      const auto coords = span_coordinates(f, null, flatten(br));
      if (!coords) {
        s.closed = false;
        continue;
      }
      for (std::size_t k = 0; k < d; ++k) s.bracket[(x * d + y) * d + k] = (*coords)[k];
    }
  return s;
}

}  // namespace

DerivationSpace derivations(const Algebra& a) { return derivations_constrained(a, std::nullopt, {}); }

DerivationSpace derivations_fixing(const Algebra& a, const Vector& c) {
  return derivations_constrained(a, c, {});
}

DerivationSpace derivations_constrained(const Algebra& a, const std::optional<Vector>& c,
                                        std::span<const Matrix> commuting) {
  check_cap(a);
  const std::size_t n = a.dim();
  const auto& f = a.field();
  auto rows = leibniz_rows(a);
  if (c) {
    if (c->size() != n) throw MathError("derivations_fixing: c has the wrong length");
    for (std::size_t r = 0; r < n; ++r) {
      Vector row = zero_vector(f, n * n);
      for (std::size_t m = 0; m < n; ++m) row[r * n + m] = (*c)[m];
      if (!is_zero(row)) rows.push_back(std::move(row));
    }
  }
  for (const auto& m : commuting) {
    if (!m.square() || m.rows() != n) throw MathError("derivations: commuting map has the wrong size");
    // (D M - M D)(r, s) = sum_t D(r, t) M(t, s) - M(r, t) D(t, s)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s) {
        Vector row = zero_vector(f, n * n);
        for (std::size_t t = 0; t < n; ++t) {
          row[r * n + t] += m(t, s);
          row[t * n + s] -= m(r, t);
        }
        if (!is_zero(row)) rows.push_back(std::move(row));
      }
  }
  return solve_space(a, std::move(rows));
}

std::optional<BasisPair> automorphism_violation(const Algebra& a, const Matrix& f) {
  if (!f.square() || f.rows() != a.dim()) throw MathError("automorphism check: wrong size");
  if (determinant(f).is_zero()) return BasisPair{a.dim(), a.dim()};
  return homomorphism_violation(a, f);
}

std::optional<BasisPair> derivation_violation(const Algebra& a, const Matrix& d) {
  if (!d.square() || d.rows() != a.dim()) throw MathError("derivation check: wrong size");
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vector ei = basis_vector(a.field(), n, i), ej = basis_vector(a.field(), n, j);
      const Vector lhs = d * a.basis_product(i, j);
      const Vector rhs = add(a.product(d * ei, ej), a.product(ei, d * ej));
      if (!(lhs == rhs)) return BasisPair{i, j};
    }
  return std::nullopt;
}

bool is_automorphism(const Algebra& a, const Matrix& f) { return !automorphism_violation(a, f); }
bool is_derivation(const Algebra& a, const Matrix& d) { return !derivation_violation(a, d); }

Matrix inner_derivation(const Algebra& a, const Vector& x) {
  return left_mul_matrix(a, x) - right_mul_matrix(a, x);
}

Matrix inner_map(const Algebra& a, const Vector& q) {
  const auto qi = element_inverse(a, q);
  if (!qi) throw MathError("inner map: q is not invertible");
  return left_mul_matrix(a, q) * right_mul_matrix(a, *qi);
}

std::vector<Vector> quaternion_sample(const Algebra& a) {
  if (a.dim() < 4) throw MathError("quaternion sample needs dimension >= 4");
  static const std::array<std::array<int, 4>, 20> qs{{{1, 1, 0, 0},  {2, 0, 1, 0},  {1, 1, 1, 1},  {0, 1, 0, 0},
                                                       {0, 0, 1, 0},  {0, 0, 0, 1},  {1, 0, 0, 1},  {3, 1, 2, 0},
                                                       {1, -1, 0, 2}, {2, 1, -1, 1}, {0, 1, 1, 0},  {1, 2, 3, 4},
                                                       {-1, 1, 1, 1}, {5, 0, 0, 1},  {1, -2, 1, 0}, {0, 3, -1, 2},
                                                       {2, 2, 1, -1}, {4, -1, 2, 3}, {1, 0, -3, 1}, {7, 1, 1, 1}}};
  std::vector<Vector> out;
  for (const auto& q : qs) {
    Vector v = zero_vector(a.field(), a.dim());
    for (std::size_t i = 0; i < 4; ++i) v[i] = a.field()->from_int(q[i]);
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

std::string pair_string(const std::optional<BasisPair>& p) {
  if (!p) return "";
  return "(" + std::to_string(p->first) + "," + std::to_string(p->second) + ")";
}

}  // namespace

std::vector<Check> check_automorphisms(const Algebra& target, std::span<const Matrix> family, const std::string& prefix) {
  std::vector<Check> out;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto v = automorphism_violation(target, family[i]);
    out.push_back({prefix + "[" + std::to_string(i) + "]", !v, pair_string(v)});
  }
  return out;
}

std::vector<Check> check_derivations(const Algebra& target, std::span<const Matrix> family, const std::string& prefix) {
  std::vector<Check> out;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto v = derivation_violation(target, family[i]);
    out.push_back({prefix + "[" + std::to_string(i) + "]", !v, pair_string(v)});
  }
  return out;
}

Check check_der_dim_at_least(const Algebra& target, std::size_t bound, const std::string& name) {
  const std::size_t d = derivations(target).dim();
  return {name, d >= bound, "der_dim=" + std::to_string(d)};
}

}  // namespace twistkit
