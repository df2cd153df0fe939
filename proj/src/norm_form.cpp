#include "twistkit/norm_form.hpp"

#include <random>

namespace twistkit {

std::string to_string(AnisotropyCert c) {
  switch (c) {
    case AnisotropyCert::unknown: return "unknown";
    case AnisotropyCert::positive_definite: return "positive-definite";
    case AnisotropyCert::field_norm: return "field-norm";
    case AnisotropyCert::division_certified: return "division-certified";
    case AnisotropyCert::descent: return "descent";
    case AnisotropyCert::exhaustive: return "exhaustive";
  }
  return "unknown";
}

std::optional<AnisotropyCert> anisotropy_cert_from_string(const std::string& s) {
  for (auto c : {AnisotropyCert::unknown, AnisotropyCert::positive_definite, AnisotropyCert::field_norm,
                 AnisotropyCert::division_certified, AnisotropyCert::descent, AnisotropyCert::exhaustive})
    if (to_string(c) == s) return c;
  return std::nullopt;
}

NormForm NormForm::from_gram(Matrix gram, AnisotropyCert cert) {
  if (!gram.square()) throw MathError("Gram matrix must be square");
  if (!(gram == gram.transpose())) throw MathError("Gram matrix must be symmetric");
  NormForm n;
  n.field_ = gram.field();
  n.dim_ = gram.rows();
  n.degree_ = 2;
  n.kind_ = Kind::gram;
  n.gram_ = std::move(gram);
  n.cert_ = cert;
  return n;
}

NormForm NormForm::from_evaluator(FieldPtr f, std::size_t dim, unsigned degree, Kind kind, Evaluator eval,
                                  AnisotropyCert cert) {
  if (degree == 0) throw MathError("form degree must be positive");
  NormForm n;
  n.field_ = std::move(f);
  n.dim_ = dim;
  n.degree_ = degree;
  n.kind_ = kind;
  n.eval_ = std::move(eval);
  n.cert_ = cert;
  return n;
}

Scalar NormForm::operator()(const Vector& x) const {
  if (x.size() != dim_) throw MathError("norm_eval: dimension mismatch");
  if (gram_ && kind_ == Kind::gram) {
    Scalar s = field_->zero();
    const Vector gx = *gram_ * x;
    for (std::size_t i = 0; i < dim_; ++i) s += x[i] * gx[i];
    return s;
  }
  return eval_(x);
}

std::optional<Matrix> NormForm::gram() const {
  if (gram_) return gram_;
  if (degree_ != 2 || field_->characteristic() == 2) return std::nullopt;
  Matrix g(field_, dim_, dim_);
  const Scalar half = field_->from_int(2).inverse();
  for (std::size_t i = 0; i < dim_; ++i) {
    const Vector ei = basis_vector(field_, dim_, i);
    g(i, i) = (*this)(ei);
    for (std::size_t j = i + 1; j < dim_; ++j) {
      const Vector ej = basis_vector(field_, dim_, j);
      const Scalar b = ((*this)(add(ei, ej)) - g(i, i) - (*this)(ej)) * half;
      g(i, j) = b;
      g(j, i) = b;
    }
  }
  return g;
}

NormForm NormForm::with_certificate(AnisotropyCert c) const {
  NormForm n = *this;
  n.cert_ = c;
  return n;
}

std::string NormForm::describe() const {
  std::string k = kind_ == Kind::gram ? "gram" : kind_ == Kind::determinant ? "determinant" : "explicit";
  return k + " form of degree " + std::to_string(degree_) + " on " + field_->describe() + "^" +
         std::to_string(dim_) + " (" + to_string(cert_) + ")";
}

Scalar polarize(const NormForm& n, std::span<const Vector> args) {
  const std::size_t d = args.size();
  if (d != n.degree()) throw MathError("polarize: expected " + std::to_string(n.degree()) + " arguments");
  const auto& f = n.field();
  Scalar total = f->zero();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << d); ++mask) {
    Vector s = zero_vector(f, n.dim());
    std::size_t l = 0;
    for (std::size_t i = 0; i < d; ++i)
      if (mask >> i & 1) {
        s = add(s, args[i]);
        ++l;
      }
    const Scalar v = n(s);
    if ((d - l) % 2) total -= v;
    else total += v;
  }
  return total;
}

bool is_positive_definite(const Matrix& gram) {
  if (gram.field()->kind() != FieldKind::rational || !gram.square()) return false;
  const std::size_t n = gram.rows();
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = gram(i, j).rational();
  for (std::size_t k = 0; k < n; ++k) {
    if (sgn(a[k][k]) <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      const mpq_class l = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= l * a[k][j];
    }
  }
  return true;
}

namespace {

bool anisotropic_mod_p(const std::vector<std::uint32_t>& coeffs, std::uint32_t p) {
  if (coeffs.empty()) return true;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    total *= p;
    if (total > (1u << 22)) throw MathError("descent check too large");
  }
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    std::uint64_t v = idx, s = 0;
    for (auto c : coeffs) {
      const std::uint64_t x = v % p;
      v /= p;
      s = (s + c * x % p * x) % p;
    }
    if (s == 0) return false;
  }
  return true;
}

}  // namespace

bool certify_descent(const Matrix& gram, std::uint32_t p) {
  if (gram.field()->kind() != FieldKind::rational || !gram.square() || !is_prime(p)) return false;
  const std::size_t n = gram.rows();
  mpz_class lcm = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && !gram(i, j).is_zero()) return false;
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), gram(i, j).rational().get_den_mpz_t());
    }
  std::vector<std::uint32_t> units, p_part;
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class a = gram(i, i).rational().get_num() * (lcm / gram(i, i).rational().get_den());
    if (a == 0) return false;
    auto residue = [p](const mpz_class& z) {
      mpz_class r = z % p;
      if (r < 0) r += p;
      return static_cast<std::uint32_t>(r.get_ui());
    };
    if (a % p != 0) {
      units.push_back(residue(a));
    } else {
      const mpz_class b = a / p;
      if (b % p == 0) return false;
      p_part.push_back(residue(b));
    }
  }
  return anisotropic_mod_p(units, p) && anisotropic_mod_p(p_part, p);
}

std::vector<Vector> evaluation_grid(const FieldPtr& f, std::size_t n, unsigned d, unsigned support) {
  std::vector<Vector> out;
  Vector cur = zero_vector(f, n);
  // Depth-first over coordinates; `used` counts nonzero entries so far.
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned used) {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    rec(i + 1, used);
    if (used == support) return;
    for (unsigned v = 1; v <= d; ++v) {
      cur[i] = f->from_int(v);
      rec(i + 1, used + 1);
    }
    cur[i] = f->zero();
  };
  rec(0, 0);
  return out;
}

std::vector<Vector> random_points(const FieldPtr& f, std::size_t n, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vector> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Vector v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.push_back(f->from_int(static_cast<long long>(rng() % 19) - 9));
    out.push_back(std::move(v));
  }
  return out;
}

Vector vector_at(const FieldPtr& f, std::size_t n, std::uint64_t index) {
  const std::uint64_t q = *f->order();
  Vector v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    v.push_back(f->element(index % q));
    index /= q;
  }
  return v;
}

std::uint64_t vector_index(const Vector& v) {
  if (v.empty()) return 0;
  const std::uint64_t q = *v[0].field()->order();
  std::uint64_t idx = 0;
  for (std::size_t i = v.size(); i-- > 0;) idx = idx * q + v[i].index();
  return idx;
}

std::vector<Vector> all_vectors(const FieldPtr& f, std::size_t n) {
  if (!f->is_finite()) throw MathError("cannot enumerate a vector space over Q");
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= *f->order();
    if (total > (std::uint64_t{1} << 20)) throw MathError("exhaustion cap 2^20 exceeded");
  }
  std::vector<Vector> out;
  out.reserve(total);
  for (std::uint64_t idx = 0; idx < total; ++idx) out.push_back(vector_at(f, n, idx));
  return out;
}

std::optional<Scalar> verify_similarity(const NormForm& n, const Matrix& f, std::uint64_t seed) {
  if (!f.square() || f.rows() != n.dim()) throw MathError("verify_similarity: dimension mismatch");
  if (determinant(f).is_zero()) throw MathError("verify_similarity: singular map");
  if (auto g = n.gram()) {
    const Matrix lhs = f.transpose() * *g * f;
    for (std::size_t i = 0; i < g->rows(); ++i)
      for (std::size_t j = 0; j < g->cols(); ++j)
        if (!(*g)(i, j).is_zero()) {
          const Scalar alpha = lhs(i, j) / (*g)(i, j);
          if (lhs == g->scaled(alpha)) return alpha;
          return std::nullopt;
        }
    return std::nullopt;
  }
  std::vector<Vector> samples;
  if (n.field()->is_finite()) {
    samples = all_vectors(n.field(), n.dim());
  } else {
    samples = evaluation_grid(n.field(), n.dim(), n.degree(), n.degree() + 1);
    auto extra = random_points(n.field(), n.dim(), 100, seed);
    samples.insert(samples.end(), extra.begin(), extra.end());
  }
  std::optional<Scalar> alpha;
  for (const auto& x : samples) {
    const Scalar nx = n(x);
    const Scalar nfx = n(f * x);
    if (!alpha) {
      if (nx.is_zero()) {
        if (!nfx.is_zero()) return std::nullopt;
        continue;
      }
      alpha = nfx / nx;
      continue;
    }
    if (!(nfx == *alpha * nx)) return std::nullopt;
  }
  return alpha;
}

}  // namespace twistkit
