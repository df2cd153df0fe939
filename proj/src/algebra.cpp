#include "twistkit/algebra.hpp"

namespace twistkit {

Algebra::Algebra(FieldPtr field, std::size_t dim, std::vector<Scalar> table, std::string label)
    : field_(std::move(field)), dim_(dim), table_(std::move(table)), label_(std::move(label)) {
  if (dim_ == 0) throw MathError("algebra dimension must be at least 1");
  if (table_.size() != dim_ * dim_ * dim_) throw MathError("structure tensor has the wrong size");
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k) {
        const Scalar& c = structure(i, j, k);
        if (!c.field() || !(*c.field() == *field_)) throw MathError("structure constant outside the field");
        if (!c.is_zero()) nonzero_.push_back({i, j, k, c});
      }
}

Vector Algebra::product(const Vector& x, const Vector& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw MathError("multiply: dimension mismatch");
  Vector r = zero_vector(field_, dim_);
  for (const auto& t : nonzero_) {
    if (x[t.i].is_zero() || y[t.j].is_zero()) continue;
    r[t.k] += x[t.i] * y[t.j] * t.c;
  }
  return r;
}

Vector Algebra::basis_product(std::size_t i, std::size_t j) const {
  return Vector(table_.begin() + static_cast<std::ptrdiff_t>((i * dim_ + j) * dim_),
                table_.begin() + static_cast<std::ptrdiff_t>((i * dim_ + j + 1) * dim_));
}

void Algebra::set_unit(Vector e) {
  if (e.size() != dim_) throw MathError("unit has the wrong length");
  for (std::size_t j = 0; j < dim_; ++j) {
    const Vector ej = basis_vector(field_, dim_, j);
    if (!(product(e, ej) == ej) || !(product(ej, e) == ej)) throw MathError("claimed unit is not a two-sided identity");
  }
  unit_ = std::move(e);
}

void Algebra::set_norm(NormForm n) {
  if (n.dim() != dim_ || !(*n.field() == *field_)) throw MathError("norm does not match the algebra");
  norm_ = std::make_shared<const NormForm>(std::move(n));
}

Vector multiply(const Algebra& a, const Vector& x, const Vector& y) { return a.product(x, y); }

Matrix left_mul_matrix(const Algebra& a, const Vector& x) {
  const std::size_t n = a.dim();
  Matrix m(a.field(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x.at(i).is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!a.structure(i, j, k).is_zero()) m(k, j) += x[i] * a.structure(i, j, k);
  }
  return m;
}

Matrix right_mul_matrix(const Algebra& a, const Vector& x) {
  const std::size_t n = a.dim();
  Matrix m(a.field(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x.at(i).is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!a.structure(j, i, k).is_zero()) m(k, j) += x[i] * a.structure(j, i, k);
  }
  return m;
}

std::optional<Vector> find_unit(const Algebra& a) {
  const std::size_t n = a.dim();
  const auto& f = a.field();
  // Unknown e: sum_i e_i T(i,j,k) = delta_jk and sum_i e_i T(j,i,k) = delta_jk.
  Matrix m(f, 2 * n * n, n);
  Vector rhs = zero_vector(f, 2 * n * n);
  std::size_t row = 0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k, ++row) {
      for (std::size_t i = 0; i < n; ++i) {
        m(row, i) = a.structure(i, j, k);
        m(row + n * n, i) = a.structure(j, i, k);
      }
      if (j == k) {
        rhs[row] = f->one();
        rhs[row + n * n] = f->one();
      }
    }
  auto e = solve(m, rhs);
  if (!e || !(m * *e == rhs)) return std::nullopt;
  return e;
}

Vector commutator(const Algebra& a, const Vector& x, const Vector& y) {
  return sub(a.product(x, y), a.product(y, x));
}

Vector associator(const Algebra& a, const Vector& x, const Vector& y, const Vector& z) {
  return sub(a.product(a.product(x, y), z), a.product(x, a.product(y, z)));
}

namespace {

// assoc[(i*n + j)*n + k] = [e_i, e_j, e_k]
std::vector<Vector> basis_associators(const Algebra& a) {
  const std::size_t n = a.dim();
  std::vector<Vector> prods(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) prods[i * n + j] = a.basis_product(i, j);
  std::vector<Vector> out(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        out[(i * n + j) * n + k] = sub(a.product(prods[i * n + j], basis_vector(a.field(), n, k)),
                                       a.product(basis_vector(a.field(), n, i), prods[j * n + k]));
  return out;
}

void append_nucleus_rows(const Algebra& a, const std::vector<Vector>& assoc, NucleusSide side,
                         std::vector<Vector>& rows) {
  const std::size_t n = a.dim();
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t k = 0; k < n; ++k) {
        Vector row = zero_vector(a.field(), n);
        for (std::size_t x = 0; x < n; ++x) {
          std::size_t idx = 0;
          switch (side) {
            case NucleusSide::left: idx = (x * n + s) * n + t; break;
            case NucleusSide::middle: idx = (s * n + x) * n + t; break;
            case NucleusSide::right: idx = (s * n + t) * n + x; break;
            case NucleusSide::all: break;
          }
          row[x] = assoc[idx][k];
        }
        if (!is_zero(row)) rows.push_back(std::move(row));
      }
}

Subspace solve_rows(const Algebra& a, const std::vector<Vector>& rows) {
  if (rows.empty()) {
    Subspace s;
    for (std::size_t i = 0; i < a.dim(); ++i) s.basis.push_back(basis_vector(a.field(), a.dim(), i));
    return s;
  }
  return {nullspace(Matrix::from_rows(a.field(), a.dim(), rows))};
}

}  // namespace

Subspace nucleus(const Algebra& a, NucleusSide side) {
  const auto assoc = basis_associators(a);
  std::vector<Vector> rows;
  if (side == NucleusSide::all) {
    for (auto s : {NucleusSide::left, NucleusSide::middle, NucleusSide::right})
      append_nucleus_rows(a, assoc, s, rows);
  } else {
    append_nucleus_rows(a, assoc, side, rows);
  }
  return solve_rows(a, rows);
}

Subspace center(const Algebra& a) {
  const std::size_t n = a.dim();
  const auto assoc = basis_associators(a);
  std::vector<Vector> rows;
  for (auto s : {NucleusSide::left, NucleusSide::middle, NucleusSide::right}) append_nucleus_rows(a, assoc, s, rows);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t k = 0; k < n; ++k) {
      Vector row = zero_vector(a.field(), n);
      for (std::size_t x = 0; x < n; ++x) row[x] = a.structure(x, s, k) - a.structure(s, x, k);
      if (!is_zero(row)) rows.push_back(std::move(row));
    }
  return solve_rows(a, rows);
}

Algebra isotope(const Algebra& a, const Matrix& f, const Matrix& g, const Matrix& h) {
  for (const Matrix* m : {&f, &g, &h}) {
    if (!m->square() || m->rows() != a.dim()) throw MathError("isotope: map has the wrong size");
    if (determinant(*m).is_zero()) throw MathError("isotope: singular map");
  }
  Algebra out = algebra_from_product(a.field(), a.dim(), a.label() + "^(f,g,h)",
                                     [&](const Vector& x, const Vector& y) { return h * a.product(f * x, g * y); });
  if (a.division_certificate()) out.set_division_certificate("isotope of a division algebra");
  return out;
}

Algebra opposite(const Algebra& a) {
  Algebra out = algebra_from_product(a.field(), a.dim(), a.label() + "^op",
                                     [&](const Vector& x, const Vector& y) { return a.product(y, x); });
  if (a.unit()) out.set_unit(*a.unit());
  if (a.norm()) out.set_norm(*a.norm());
  out.set_division_certificate(a.division_certificate());
  return out;
}

bool is_commutative(const Algebra& a) {
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j)
      if (!(a.basis_product(i, j) == a.basis_product(j, i))) return false;
  return true;
}

bool is_associative(const Algebra& a) {
  for (const auto& v : basis_associators(a))
    if (!is_zero(v)) return false;
  return true;
}

std::optional<Vector> element_inverse(const Algebra& a, const Vector& x) {
  if (!a.unit()) throw MathError("element_inverse needs a unital algebra");
  auto y = solve(left_mul_matrix(a, x), *a.unit());
  if (!y) return std::nullopt;
  if (!(a.product(x, *y) == *a.unit()) || !(a.product(*y, x) == *a.unit())) return std::nullopt;
  return y;
}

std::optional<std::pair<std::size_t, std::size_t>> homomorphism_violation(const Algebra& a, const Matrix& f,
                                                                          bool anti) {
  const std::size_t n = a.dim();
  if (!f.square() || f.rows() != n) throw MathError("map has the wrong size");
  std::vector<Vector> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = f.column(i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vector lhs = f * a.basis_product(i, j);
      const Vector rhs = anti ? a.product(img[j], img[i]) : a.product(img[i], img[j]);
      if (!(lhs == rhs)) return std::make_pair(i, j);
    }
  return std::nullopt;
}

bool verify_multiplicative(const Algebra& a, const NormForm& n, std::uint64_t seed) {
  if (n.dim() != a.dim() || !(*n.field() == *a.field())) throw MathError("norm does not match the algebra");
  auto check = [&](const Vector& x, const Vector& y) { return n(a.product(x, y)) == n(x) * n(y); };
  if (a.field()->is_finite()) {
    const auto all = all_vectors(a.field(), a.dim());
    std::vector<Scalar> norms;
    norms.reserve(all.size());
    for (const auto& v : all) norms.push_back(n(v));
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = 0; j < all.size(); ++j)
        if (!(n(a.product(all[i], all[j])) == norms[i] * norms[j])) return false;
    return true;
  }
  const auto grid = evaluation_grid(a.field(), a.dim(), n.degree(), n.degree());
  std::vector<Scalar> norms;
  norms.reserve(grid.size());
  for (const auto& v : grid) norms.push_back(n(v));
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = 0; j < grid.size(); ++j)
      if (!(n(a.product(grid[i], grid[j])) == norms[i] * norms[j])) return false;
  const auto xs = random_points(a.field(), a.dim(), 100, seed);
  const auto ys = random_points(a.field(), a.dim(), 100, seed + 1);
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (!check(xs[i], ys[i])) return false;
  return true;
}

}  // namespace twistkit
