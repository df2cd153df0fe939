#include "twistkit/scalar.hpp"

#include <sstream>

namespace twistkit {

namespace {

using Poly = std::vector<std::uint32_t>;

std::uint32_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>((a * b) % p);
}

std::uint32_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = (r * a) % p;
    a = (a * a) % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t mod_inv(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw MathError("division by zero");
  return mod_pow(a, p - 2, p);
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_sub(const Poly& a, const Poly& b, std::uint32_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint64_t x = i < a.size() ? a[i] : 0;
    std::uint64_t y = i < b.size() ? b[i] : 0;
    r[i] = static_cast<std::uint32_t>((x + p - y) % p);
  }
  trim(r);
  return r;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t(a[i]) * b[j]) % p);
  }
  trim(r);
  return r;
}

// Quotient and remainder; divisor must be nonzero.
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  Poly q;
  if (a.size() < b.size()) return {q, a};
  q.assign(a.size() - b.size() + 1, 0);
  const std::uint32_t lead_inv = mod_inv(b.back(), p);
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const std::uint32_t f = mod_mul(a.back(), lead_inv, p);
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i)
      a[i + shift] = static_cast<std::uint32_t>((a[i + shift] + p - mod_mul(f, b[i], p)) % p);
    trim(a);
  }
  trim(q);
  return {q, a};
}

bool has_monic_factor(const Poly& poly, unsigned deg, std::uint32_t p) {
  // Enumerate all monic polynomials of degree `deg`.
  std::uint64_t count = 1;
  for (unsigned i = 0; i < deg; ++i) count *= p;
  Poly cand(deg + 1, 0);
  cand[deg] = 1;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t v = idx;
    for (unsigned i = 0; i < deg; ++i) {
      cand[i] = static_cast<std::uint32_t>(v % p);
      v /= p;
    }
    if (poly_divmod(poly, cand, p).second.empty()) return true;
  }
  return false;
}

Scalar::Residues to_residues(const Poly& a) {
  Scalar::Residues r{};
  for (std::size_t i = 0; i < a.size(); ++i) r.c[i] = a[i];
  return r;
}

Poly to_poly(const Scalar::Residues& r, unsigned n) {
  Poly a(r.c.begin(), r.c.begin() + n);
  trim(a);
  return a;
}

}  // namespace

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

bool is_irreducible_mod_p(const std::vector<std::uint32_t>& poly, std::uint32_t p) {
  const unsigned n = static_cast<unsigned>(poly.size()) - 1;
  for (unsigned d = 1; d <= n / 2; ++d)
    if (has_monic_factor(poly, d, p)) return false;
  return true;
}

std::vector<std::uint32_t> default_modulus(std::uint32_t p, unsigned n) {
  // Lexicographic over (c_0, c_1, ..., c_{n-1}) with c_0 most significant.
  std::uint64_t count = 1;
  for (unsigned i = 0; i < n; ++i) count *= p;
  Poly cand(n + 1, 0);
  cand[n] = 1;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t v = idx;
    for (unsigned i = n; i-- > 0;) {
      cand[i] = static_cast<std::uint32_t>(v % p);
      v /= p;
    }
    if (is_irreducible_mod_p(cand, p)) return cand;
  }
  throw MathError("no irreducible polynomial found");
}

FieldPtr Field::rationals() {
  static const FieldPtr q(new Field(FieldKind::rational, 0, 1, {}));
  return q;
}

FieldPtr Field::prime(std::uint32_t p) {
  if (p > kMaxPrime || !is_prime(p)) throw MathError("not a prime below 2^31: " + std::to_string(p));
  return FieldPtr(new Field(FieldKind::prime, p, 1, {}));
}

FieldPtr Field::extension(std::uint32_t p, unsigned n,
                          std::optional<std::vector<std::uint32_t>> modulus) {
  if (!is_prime(p)) throw MathError("not a prime: " + std::to_string(p));
  if (n < 2) throw MathError("extension degree must be at least 2");
  if (n > kMaxExtensionDegree || p > kMaxExtensionPrime)
    throw MathError("extension fields are limited to degree <= 8 over p <= 13");
  Poly m;
  if (modulus) {
    m = *modulus;
    if (m.size() != n + 1 || m.back() != 1) throw MathError("modulus must be monic of degree n");
    for (auto c : m)
      if (c >= p) throw MathError("modulus coefficient out of range");
    if (!is_irreducible_mod_p(m, p)) throw MathError("modulus is reducible");
  } else {
    m = default_modulus(p, n);
  }
  return FieldPtr(new Field(FieldKind::extension, p, n, std::move(m)));
}

std::optional<std::uint64_t> Field::order() const {
  if (kind_ == FieldKind::rational) return std::nullopt;
  std::uint64_t q = 1;
  for (unsigned i = 0; i < n_; ++i) q *= p_;
  return q;
}

FieldPtr Field::prime_subfield() const {
  if (kind_ != FieldKind::extension) return shared_from_this();
  if (!prime_sub_) prime_sub_ = Field::prime(p_);
  return prime_sub_;
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(long long v) const {
  if (kind_ == FieldKind::rational) return Scalar(shared_from_this(), mpq_class(static_cast<long>(v)));
  Scalar::Residues r{};
  long long m = v % static_cast<long long>(p_);
  if (m < 0) m += p_;
  r.c[0] = static_cast<std::uint32_t>(m);
  return Scalar(shared_from_this(), r);
}

Scalar Field::from_rational(const mpq_class& q) const {
  if (kind_ == FieldKind::rational) {
    mpq_class c = q;
    c.canonicalize();
    if (c.get_den() == 0) throw MathError("zero denominator");
    return Scalar(shared_from_this(), std::move(c));
  }
  mpz_class num = q.get_num() % p_, den = q.get_den() % p_;
  if (num < 0) num += p_;
  if (den == 0) throw MathError("denominator vanishes mod p");
  Scalar n = from_int(num.get_si()), d = from_int(den.get_si());
  return n / d;
}

Scalar Field::from_coeffs(const std::vector<long long>& coeffs) const {
  if (kind_ == FieldKind::rational) {
    if (coeffs.size() != 1) throw MathError("rational scalar takes one coefficient");
    return from_int(coeffs[0]);
  }
  if (coeffs.size() > n_) throw MathError("too many coefficients for " + describe());
  Scalar::Residues r{};
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    long long m = coeffs[i] % static_cast<long long>(p_);
    if (m < 0) m += p_;
    r.c[i] = static_cast<std::uint32_t>(m);
  }
  return Scalar(shared_from_this(), r);
}

Scalar Field::element(std::uint64_t index) const {
  if (kind_ == FieldKind::rational) throw MathError("Q cannot be enumerated");
  if (index >= *order()) throw MathError("element index out of range");
  Scalar::Residues r{};
  for (unsigned i = 0; i < n_; ++i) {
    r.c[i] = static_cast<std::uint32_t>(index % p_);
    index /= p_;
  }
  return Scalar(shared_from_this(), r);
}

std::string Field::describe() const {
  switch (kind_) {
    case FieldKind::rational:
      return "Q";
    case FieldKind::prime:
      return "F_" + std::to_string(p_);
    case FieldKind::extension: {
      std::ostringstream os;
      os << "F_" << *order() << "[";
      bool first = true;
      for (unsigned i = n_ + 1; i-- > 0;) {
        if (!modulus_[i]) continue;
        if (!first) os << "+";
        first = false;
        if (modulus_[i] != 1 || i == 0) os << modulus_[i];
        if (i >= 1) os << "t";
        if (i >= 2) os << "^" << i;
      }
      os << "]";
      return os.str();
    }
  }
  return "?";
}

void Scalar::check_same(const Scalar& o) const {
  if (!field_ || !o.field_) throw MathError("uninitialised scalar");
  if (field_ != o.field_ && !(*field_ == *o.field_)) throw MathError("mixed fields");
}

bool Scalar::is_zero() const {
  if (std::holds_alternative<mpq_class>(value_)) return sgn(std::get<mpq_class>(value_)) == 0;
  for (auto c : std::get<Residues>(value_).c)
    if (c) return false;
  return true;
}

bool Scalar::is_one() const { return field_ && *this == field_->one(); }

Scalar Scalar::operator-() const {
  if (std::holds_alternative<mpq_class>(value_)) return Scalar(field_, mpq_class(-std::get<mpq_class>(value_)));
  Residues r = std::get<Residues>(value_);
  const auto p = field_->characteristic();
  for (auto& c : r.c) c = c ? p - c : 0;
  return Scalar(field_, r);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(o);
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    *q += std::get<mpq_class>(o.value_);
    return *this;
  }
  auto& r = std::get<Residues>(value_);
  const auto& s = std::get<Residues>(o.value_);
  const std::uint64_t p = field_->characteristic();
  for (unsigned i = 0; i < field_->degree(); ++i) r.c[i] = static_cast<std::uint32_t>((r.c[i] + std::uint64_t(s.c[i])) % p);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same(o);
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    *q *= std::get<mpq_class>(o.value_);
    return *this;
  }
  auto& r = std::get<Residues>(value_);
  const auto& s = std::get<Residues>(o.value_);
  const auto p = field_->characteristic();
  if (field_->kind() == FieldKind::prime) {
    r.c[0] = mod_mul(r.c[0], s.c[0], p);
    return *this;
  }
  const unsigned n = field_->degree();
  Poly prod = poly_mul(to_poly(r, n), to_poly(s, n), p);
  r = to_residues(poly_divmod(prod, field_->modulus(), p).second);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

bool Scalar::operator==(const Scalar& o) const {
  if (!field_ || !o.field_) return !field_ && !o.field_;
  if (field_ != o.field_ && !(*field_ == *o.field_)) return false;
  return value_ == o.value_;
}

Scalar Scalar::inverse() const {
  if (!field_) throw MathError("uninitialised scalar");
  if (is_zero()) throw MathError("division by zero");
  if (auto* q = std::get_if<mpq_class>(&value_)) return Scalar(field_, mpq_class(1 / *q));
  const auto& r = std::get<Residues>(value_);
  const auto p = field_->characteristic();
  if (field_->kind() == FieldKind::prime) {
    Residues out{};
    out.c[0] = mod_inv(r.c[0], p);
    return Scalar(field_, out);
  }
  // Extended Euclid: find s with s*a = 1 mod m.
  Poly a = field_->modulus(), b = to_poly(r, field_->degree());
  Poly s0, s1{1};
  while (!b.empty()) {
    auto [q, rem] = poly_divmod(a, b, p);
    Poly s2 = poly_sub(s0, poly_mul(q, s1, p), p);
    a = std::move(b);
    b = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // a is a nonzero constant (gcd); scale s0 by its inverse.
  const std::uint32_t k = mod_inv(a[0], p);
  for (auto& c : s0) c = mod_mul(c, k, p);
  s0 = poly_divmod(s0, field_->modulus(), p).second;
  return Scalar(field_, to_residues(s0));
}

Scalar Scalar::pow(long long e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar result = field_->one(), base = *this;
  while (e) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

const mpq_class& Scalar::rational() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) return *q;
  throw MathError("not a rational scalar");
}

const Scalar::Residues& Scalar::residues() const {
  if (auto* r = std::get_if<Residues>(&value_)) return *r;
  throw MathError("not a finite-field scalar");
}

std::uint64_t Scalar::index() const {
  const auto& r = residues();
  std::uint64_t idx = 0;
  for (unsigned i = field_->degree(); i-- > 0;) idx = idx * field_->characteristic() + r.c[i];
  return idx;
}

int Scalar::sign() const { return sgn(rational()); }

std::string Scalar::to_string() const {
  if (!field_) return "<null>";
  if (auto* q = std::get_if<mpq_class>(&value_)) return q->get_str();
  const auto& r = std::get<Residues>(value_);
  if (field_->kind() == FieldKind::prime) return std::to_string(r.c[0]);
  std::string s = "[";
  for (unsigned i = 0; i < field_->degree(); ++i) {
    if (i) s += ",";
    s += std::to_string(r.c[i]);
  }
  return s + "]";
}

Scalar frobenius(const Scalar& x, long long k) {
  const auto& f = x.field();
  if (!f || f->kind() != FieldKind::extension) throw MathError("frobenius needs an extension field");
  const long long n = f->degree();
  k = ((k % n) + n) % n;
  Scalar y = x;
  for (long long i = 0; i < k; ++i) y = y.pow(f->characteristic());
  return y;
}

Scalar field_norm(const Scalar& x) {
  const auto& f = x.field();
  if (!f || f->kind() != FieldKind::extension) throw MathError("field_norm needs an extension field");
  Scalar prod = f->one(), conj = x;
  for (unsigned k = 0; k < f->degree(); ++k) {
    prod *= conj;
    conj = conj.pow(f->characteristic());
  }
  const auto& r = prod.residues();
  for (unsigned i = 1; i < f->degree(); ++i)
    if (r.c[i]) throw MathError("norm left the prime subfield");
  return f->prime_subfield()->from_int(r.c[0]);
}

}  // namespace twistkit
