#include "twistkit/builders.hpp"

#include <numeric>

namespace twistkit {

Algebra scalar_algebra(const FieldPtr& f) {
  Algebra a(f, 1, {f->one()}, f->describe());
  a.set_unit({f->one()});
  Matrix g = Matrix::identity(f, 1);
  const auto cert = f->kind() == FieldKind::rational ? AnisotropyCert::positive_definite : AnisotropyCert::field_norm;
  a.set_norm(NormForm::from_gram(std::move(g), cert));
  return a;
}

Scalar trace(const Algebra& a, const Vector& x) {
  if (!a.unit() || !a.norm()) throw MathError("trace needs a unit and a norm");
  const NormForm& n = *a.norm();
  return n(add(*a.unit(), x)) - n(*a.unit()) - n(x);
}

Matrix conjugation_matrix(const Algebra& a) {
  if (!a.unit() || !a.norm() || a.norm()->degree() != 2)
    throw MathError("conjugation needs a unital algebra with a quadratic norm");
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < a.dim(); ++j) {
    const Vector ej = basis_vector(a.field(), a.dim(), j);
    cols.push_back(sub(scale(trace(a, ej), *a.unit()), ej));
  }
  return Matrix::from_columns(a.field(), a.dim(), cols);
}

bool has_standard_involution(const Algebra& a) {
  if (!a.unit() || !a.norm() || a.norm()->degree() != 2) return false;
  const Matrix conj = conjugation_matrix(a);
  const Vector& e = *a.unit();
  for (std::size_t j = 0; j < a.dim(); ++j) {
    const Vector x = basis_vector(a.field(), a.dim(), j);
    const Vector xbar = conj * x;
    const Vector s = add(x, xbar);
    if (!(s == scale(trace(a, x), e))) return false;
    const Scalar nx = (*a.norm())(x);
    if (!(a.product(x, xbar) == scale(nx, e)) || !(a.product(xbar, x) == scale(nx, e))) return false;
  }
  return true;
}

namespace {

bool anisotropic_exhaustive(const NormForm& n) {
  const auto vs = all_vectors(n.field(), n.dim());
  for (std::size_t i = 1; i < vs.size(); ++i)
    if (n(vs[i]).is_zero()) return false;
  return true;
}

std::uint64_t space_size(const FieldPtr& f, std::size_t n) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= *f->order();
    if (total > (std::uint64_t{1} << 20)) return total;
  }
  return total;
}

}  // namespace

Algebra cayley_dickson(const Algebra& d, const Scalar& c) {
  const auto& f = d.field();
  if (!(*c.field() == *f)) throw MathError("doubling scalar outside the field");
  if (c.is_zero()) throw MathError("doubling scalar must be nonzero");
  if (f->characteristic() == 2) throw MathError("doubling needs characteristic != 2");
  if (!has_standard_involution(d)) throw MathError("base algebra lacks a standard involution");
  const std::size_t m = d.dim();
  const Matrix conj = conjugation_matrix(d);
  auto split = [m](const Vector& x) {
    return std::make_pair(Vector(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(m)),
                          Vector(x.begin() + static_cast<std::ptrdiff_t>(m), x.end()));
  };
  Algebra out = algebra_from_product(f, 2 * m, "CD(" + d.label() + "," + c.to_string() + ")",
                                     [&](const Vector& x, const Vector& y) {
                                       auto [u, v] = split(x);
                                       auto [u2, v2] = split(y);
                                       Vector first = add(d.product(u, u2), scale(c, d.product(conj * v2, v)));
                                       Vector second = add(d.product(v2, u), d.product(v, conj * u2));
                                       first.insert(first.end(), second.begin(), second.end());
                                       return first;
                                     });
  Vector e = *d.unit();
  e.resize(2 * m, f->zero());
  out.set_unit(std::move(e));

  const Matrix g = *d.norm()->gram();
  Matrix g2(f, 2 * m, 2 * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      g2(i, j) = g(i, j);
      g2(m + i, m + j) = -c * g(i, j);
    }
  auto cert = AnisotropyCert::unknown;
  if (f->kind() == FieldKind::rational) {
    if (is_positive_definite(g2)) cert = AnisotropyCert::positive_definite;
  } else if (space_size(f, 2 * m) <= (std::uint64_t{1} << 20)) {
    NormForm probe = NormForm::from_gram(g2);
    if (anisotropic_exhaustive(probe)) cert = AnisotropyCert::exhaustive;
  }
  out.set_norm(NormForm::from_gram(g2, cert));
  if (cert != AnisotropyCert::unknown)
    out.set_division_certificate("anisotropic multiplicative norm (" + to_string(cert) + ")");
  return out;
}

Algebra quaternions() {
  const auto q = Field::rationals();
  Algebra h = cayley_dickson(cayley_dickson(scalar_algebra(q), q->from_int(-1)), q->from_int(-1));
  h.set_label("H");
  return h;
}

Algebra octonions() {
  const auto q = Field::rationals();
  Algebra o = cayley_dickson(quaternions(), q->from_int(-1));
  o.set_label("O");
  return o;
}

Algebra power_basis_algebra(const FieldPtr& f, const std::vector<Scalar>& modulus, std::string label) {
  if (modulus.size() < 2 || !modulus.back().is_one()) throw MathError("modulus must be monic of degree >= 1");
  const std::size_t n = modulus.size() - 1;
  // reduce[k] = coordinates of t^k for k < 2n - 1
  std::vector<Vector> powers;
  Vector cur = basis_vector(f, n, 0);
  for (std::size_t k = 0; k + 1 < 2 * n; ++k) {
    powers.push_back(cur);
    Vector next = zero_vector(f, n);
    for (std::size_t i = 0; i + 1 < n; ++i) next[i + 1] = cur[i];
    for (std::size_t i = 0; i < n; ++i) next[i] -= cur[n - 1] * modulus[i];
    cur = std::move(next);
  }
  std::vector<Scalar> table;
  table.reserve(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table.insert(table.end(), powers[i + j].begin(), powers[i + j].end());
  Algebra a(f, n, std::move(table), std::move(label));
  a.set_unit(basis_vector(f, n, 0));
  return a;
}

namespace {

Scalar to_element(const FieldPtr& k, const Vector& x) {
  std::uint64_t idx = 0;
  for (std::size_t i = x.size(); i-- > 0;) idx = idx * k->characteristic() + x[i].residues().c[0];
  return k->element(idx);
}

Vector to_coords(const FieldPtr& fp, const Scalar& x, unsigned n) {
  Vector v;
  for (unsigned i = 0; i < n; ++i) v.push_back(fp->from_int(x.residues().c[i]));
  return v;
}

}  // namespace

Algebra extension_as_algebra(const FieldPtr& k) {
  if (k->kind() != FieldKind::extension) throw MathError("extension_as_algebra needs an extension field");
  const FieldPtr fp = k->prime_subfield();
  std::vector<Scalar> mod;
  for (auto c : k->modulus()) mod.push_back(fp->from_int(c));
  Algebra a = power_basis_algebra(fp, mod, k->describe());
  const unsigned n = k->degree();
  a.set_norm(NormForm::from_evaluator(
      fp, n, n, NormForm::Kind::explicit_polynomial,
      [k](const Vector& x) { return field_norm(to_element(k, x)); }, AnisotropyCert::field_norm));
  a.set_division_certificate("finite field");
  return a;
}

Matrix frobenius_matrix(const FieldPtr& k, long long power) {
  if (k->kind() != FieldKind::extension) throw MathError("frobenius needs an extension field");
  const FieldPtr fp = k->prime_subfield();
  const unsigned n = k->degree();
  std::vector<Vector> cols;
  std::uint64_t pi = 1;
  for (unsigned j = 0; j < n; ++j, pi *= k->characteristic())
    cols.push_back(to_coords(fp, frobenius(k->element(pi), power), n));
  return Matrix::from_columns(fp, n, cols);
}

CyclicExtension finite_cyclic_extension(const FieldPtr& k) {
  return {extension_as_algebra(k), frobenius_matrix(k, 1)};
}

namespace {

std::vector<mpz_class> divisors(mpz_class v) {
  if (v < 0) v = -v;
  if (v > mpz_class("1000000000000")) throw MathError("coefficients too large for the rational root test");
  std::vector<mpz_class> out;
  for (mpz_class d = 1; d * d <= v; ++d)
    if (v % d == 0) {
      out.push_back(d);
      if (d * d != v) out.push_back(v / d);
    }
  return out;
}

bool has_rational_root(const std::vector<mpq_class>& poly) {
  mpz_class l = 1;
  for (const auto& c : poly) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> a;
  for (const auto& c : poly) a.push_back(c.get_num() * (l / c.get_den()));
  if (a.front() == 0) return true;
  auto eval = [&](const mpq_class& r) {
    mpq_class s = 0;
    for (std::size_t i = a.size(); i-- > 0;) s = s * r + mpq_class(a[i]);
    return s;
  };
  for (const auto& p : divisors(a.front()))
    for (const auto& q : divisors(a.back()))
      for (int sgn : {1, -1}) {
        mpq_class r(sgn * p, q);
        r.canonicalize();
        if (eval(r) == 0) return true;
      }
  return false;
}

}  // namespace

CyclicExtension rational_cyclic_extension(const std::vector<mpq_class>& modulus, const Matrix& sigma) {
  const auto q = Field::rationals();
  const std::size_t n = modulus.size() - 1;
  if (n != 2 && n != 3) throw MathError("rational extensions are limited to degree 2 or 3");
  if (has_rational_root(modulus)) throw MathError("modulus is reducible over Q");
  std::vector<Scalar> mod;
  std::string label = "Q[t]/(";
  for (std::size_t i = 0; i < modulus.size(); ++i) {
    mod.push_back(q->from_rational(modulus[i]));
    label += (i ? "," : "") + modulus[i].get_str();
  }
  Algebra k = power_basis_algebra(q, mod, label + ")");
  if (!sigma.square() || sigma.rows() != n) throw MathError("sigma has the wrong size");
  if (homomorphism_violation(k, sigma)) throw MathError("sigma is not a field automorphism");
  Matrix p = Matrix::identity(q, n);
  for (std::size_t r = 1; r <= n; ++r) {
    p = p * sigma;
    if ((r < n) == (p == Matrix::identity(q, n))) throw MathError("sigma does not have order " + std::to_string(n));
  }
  // Both quadratic and cubic norms are anisotropic for a field: N(x) = 0 only at 0.
  k.set_division_certificate("field");
  return {std::move(k), sigma};
}

Vector apply_sigma(const CyclicExtension& e, const Vector& x, long long k) {
  const long long n = static_cast<long long>(e.degree());
  k %= n;
  if (k < 0) k += n;
  Vector r = x;
  for (long long i = 0; i < k; ++i) r = e.sigma * r;
  return r;
}

namespace {

/// Determinant over K of an n x n matrix of K elements (each a coordinate vector).
Vector k_determinant(const Algebra& k, std::vector<std::vector<Vector>> m) {
  const std::size_t n = m.size();
  const auto& f = k.field();
  Vector det = *k.unit();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && is_zero(m[piv][col])) ++piv;
    if (piv == n) return zero_vector(f, k.dim());
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = scale(f->from_int(-1), det);
    }
    det = k.product(det, m[col][col]);
    const Vector inv = *element_inverse(k, m[col][col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (is_zero(m[r][col])) continue;
      const Vector factor = k.product(m[r][col], inv);
      for (std::size_t c = col; c < n; ++c) m[r][c] = sub(m[r][c], k.product(factor, m[col][c]));
    }
  }
  return det;
}

}  // namespace

Scalar reduced_norm(const CyclicExtension& e, const Scalar& d, const Vector& x) {
  const std::size_t n = e.degree();
  const auto& f = e.k.field();
  if (x.size() != n * n) throw MathError("reduced_norm: dimension mismatch");
  std::vector<Vector> coeff(n);
  for (std::size_t j = 0; j < n; ++j)
    coeff[j] = Vector(x.begin() + static_cast<std::ptrdiff_t>(n * j), x.begin() + static_cast<std::ptrdiff_t>(n * (j + 1)));
  std::vector<std::vector<Vector>> m(n, std::vector<Vector>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Vector a = coeff[(r + n - c) % n];
      if (r < c) a = scale(d, a);
      m[r][c] = apply_sigma(e, a, -static_cast<long long>(r));
    }
  const Vector det = k_determinant(e.k, m);
  for (std::size_t i = 1; i < det.size(); ++i)
    if (!det[i].is_zero()) throw MathError("reduced norm left the base field");
  (void)f;
  return det[0];
}

Algebra cyclic_algebra(const CyclicExtension& e, const Scalar& d) {
  const std::size_t n = e.degree();
  const auto& f = e.k.field();
  if (!(*d.field() == *f)) throw MathError("d outside the base field");
  if (d.is_zero()) throw MathError("d must be nonzero");
  const std::size_t dim = n * n;
  std::vector<Scalar> table(dim * dim * dim, f->zero());
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t k = 0; k < n; ++k) {
          // (x_i u^j)(x_k u^l) = x_i sigma^j(x_k) u^(j+l)
          Vector coeff = e.k.product(basis_vector(f, n, i), apply_sigma(e, basis_vector(f, n, k), static_cast<long long>(j)));
          std::size_t power = j + l;
          if (power >= n) {
            power -= n;
            coeff = scale(d, coeff);
          }
          const std::size_t left = i + n * j, right = k + n * l;
          for (std::size_t m = 0; m < n; ++m) table[(left * dim + right) * dim + m + n * power] = coeff[m];
        }
  std::string label = "(" + e.k.label() + ",sigma," + d.to_string() + ")";
  Algebra a(f, dim, std::move(table), label);
  a.set_unit(basis_vector(f, dim, 0));

  // u^n = d and u x = sigma(x) u
  Vector u = basis_vector(f, dim, n);
  Vector un = u;
  for (std::size_t k = 1; k < n; ++k) un = a.product(un, u);
  if (!(un == scale(d, *a.unit()))) throw MathError("cyclic relation u^n = d failed");
  for (std::size_t i = 0; i < n; ++i) {
    Vector x = basis_vector(f, dim, i);
    Vector sx = apply_sigma(e, basis_vector(f, n, i), 1);
    sx.resize(dim, f->zero());
    if (!(a.product(u, x) == a.product(sx, u))) throw MathError("cyclic relation u x = sigma(x) u failed");
  }

  const CyclicExtension ext = e;
  NormForm nrd = NormForm::from_evaluator(f, dim, static_cast<unsigned>(n), NormForm::Kind::determinant,
                                          [ext, d](const Vector& x) { return reduced_norm(ext, d, x); });
  if (f->kind() == FieldKind::rational && n == 2) {
    const Matrix g = *nrd.gram();
    for (std::uint32_t p = 3; p <= 31; p += 2)
      if (is_prime(p) && certify_descent(g, p)) {
        nrd = nrd.with_certificate(AnisotropyCert::descent);
        a.set_division_certificate("reduced norm anisotropic by descent at p=" + std::to_string(p));
        break;
      }
  }
  a.set_norm(std::move(nrd));
  return a;
}

CyclicSubfield whole_field(const CyclicExtension& e) {
  CyclicSubfield s;
  for (std::size_t i = 0; i < e.degree(); ++i) s.basis.push_back(basis_vector(e.k.field(), e.degree(), i));
  s.sigma = e.sigma;
  return s;
}

CyclicSubfield cyclic_algebra_subfield(const CyclicExtension& e) {
  const std::size_t n = e.degree();
  CyclicSubfield s;
  for (std::size_t i = 0; i < n; ++i) s.basis.push_back(basis_vector(e.k.field(), n * n, i));
  s.sigma = e.sigma;
  return s;
}

std::string MapSpec::describe() const {
  switch (kind) {
    case Kind::identity: return "id";
    case Kind::conjugation: return "conj";
    case Kind::frobenius: return "frob:" + std::to_string(power);
    case Kind::inner: return "inner:" + to_string(q);
    case Kind::reflection: return "reflection:" + to_string(q);
    case Kind::explicit_matrix: return "explicit";
  }
  return "?";
}

namespace {

Matrix inner_matrix(const Algebra& a, const Vector& q) {
  if (q.size() != a.dim()) throw MathError("inner: q has the wrong length");
  const auto qinv = element_inverse(a, q);
  if (!qinv) throw MathError("inner: q is not invertible");
  return left_mul_matrix(a, q) * right_mul_matrix(a, *qinv);
}

void require_automorphism(const Algebra& a, const Matrix& m, const std::string& what) {
  if (auto bad = homomorphism_violation(a, m))
    throw MathError(what + " is not an automorphism: fails on (e" + std::to_string(bad->first) + ",e" +
                    std::to_string(bad->second) + ")");
}

}  // namespace

Matrix make_map(const Algebra& a, const MapSpec& spec) {
  const auto& f = a.field();
  const std::size_t n = a.dim();
  Matrix m;
  switch (spec.kind) {
    case MapSpec::Kind::identity:
      return Matrix::identity(f, n);
    case MapSpec::Kind::conjugation: {
      if (!has_standard_involution(a)) throw MathError("conjugation: algebra has no standard involution");
      m = conjugation_matrix(a);
      if (homomorphism_violation(a, m, true)) throw MathError("conjugation is not an anti-automorphism");
      if (!(m * m == Matrix::identity(f, n))) throw MathError("conjugation does not have period 2");
      return m;
    }
    case MapSpec::Kind::frobenius: {
      if (f->kind() != FieldKind::prime) throw MathError("frobenius: algebra must be over a prime field");
      if (!a.unit()) throw MathError("frobenius: algebra must be unital");
      const std::uint32_t p = f->characteristic();
      // x -> x^p computed by repeated left multiplication on each basis vector.
      std::vector<Vector> cols;
      for (std::size_t j = 0; j < n; ++j) {
        const Vector x = basis_vector(f, n, j);
        Vector r = *a.unit();
        for (std::uint32_t k = 0; k < p; ++k) r = a.product(r, x);
        cols.push_back(std::move(r));
      }
      const Matrix step = Matrix::from_columns(f, n, cols);
      long long k = spec.power;
      if (k < 0) throw MathError("frobenius: power must be nonnegative");
      m = Matrix::identity(f, n);
      for (long long i = 0; i < k; ++i) m = step * m;
      if (!inverse(m)) throw MathError("frobenius: map is singular");
      require_automorphism(a, m, "frobenius");
      return m;
    }
    case MapSpec::Kind::inner:
    case MapSpec::Kind::reflection: {
      if (!a.unit()) throw MathError("inner: algebra must be unital");
      m = inner_matrix(a, spec.q);
      require_automorphism(a, m, spec.kind == MapSpec::Kind::inner ? "inner map" : "reflection");
      if (spec.kind == MapSpec::Kind::reflection && !(m * m == Matrix::identity(f, n)))
        throw MathError("reflection does not square to the identity");
      return m;
    }
    case MapSpec::Kind::explicit_matrix:
      if (!spec.matrix.square() || spec.matrix.rows() != n || !(*spec.matrix.field() == *f))
        throw MathError("explicit map has the wrong size or field");
      if (!inverse(spec.matrix)) throw MathError("explicit map is singular");
      return spec.matrix;
  }
  throw MathError("unknown map kind");
}

}  // namespace twistkit
