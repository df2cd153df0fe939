#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace twistkit {

/// Raised when a mathematical precondition fails: singular map, division by
/// zero, reducible modulus, mismatched fields and so on.
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FieldKind { rational, prime, extension };

inline constexpr unsigned kMaxExtensionDegree = 8;
inline constexpr std::uint32_t kMaxExtensionPrime = 13;
inline constexpr std::uint32_t kMaxPrime = 0x7fffffffu;

class Field;
class Scalar;
using FieldPtr = std::shared_ptr<const Field>;

/// An exact scalar field: Q, F_p, or F_p[t]/(m(t)) for a monic irreducible m.
///
/// Fields are immutable and shared. Two fields compare equal when they have the
/// same kind, characteristic and modulus, so elements of structurally equal
/// fields may be mixed freely.
class Field : public std::enable_shared_from_this<Field> {
 public:
  static FieldPtr rationals();
  static FieldPtr prime(std::uint32_t p);
  /// `modulus` lists coefficients from the constant term upward, including the
  /// leading 1. Without a modulus the lexicographically smallest monic
  /// irreducible (constant term compared first) is chosen.
  static FieldPtr extension(std::uint32_t p, unsigned n,
                            std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

  FieldKind kind() const { return kind_; }
  std::uint32_t characteristic() const { return p_; }
  /// Degree over the prime field (1 for Q and F_p).
  unsigned degree() const { return n_; }
  bool is_finite() const { return kind_ != FieldKind::rational; }
  /// Number of elements, or nullopt for Q.
  std::optional<std::uint64_t> order() const;
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  FieldPtr prime_subfield() const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long v) const;
  Scalar from_rational(const mpq_class& q) const;
  /// Polynomial coefficients (constant first) reduced mod p; only for finite fields.
  Scalar from_coeffs(const std::vector<long long>& coeffs) const;

  /// Enumeration of a finite field: index = sum coeff_i * p^i.
  Scalar element(std::uint64_t index) const;

  std::string describe() const;

  bool operator==(const Field& o) const {
    return kind_ == o.kind_ && p_ == o.p_ && n_ == o.n_ && modulus_ == o.modulus_;
  }

 private:
  Field(FieldKind kind, std::uint32_t p, unsigned n, std::vector<std::uint32_t> modulus)
      : kind_(kind), p_(p), n_(n), modulus_(std::move(modulus)) {}

  FieldKind kind_;
  std::uint32_t p_;
  unsigned n_;
  std::vector<std::uint32_t> modulus_;
  mutable FieldPtr prime_sub_;
};

bool is_prime(std::uint64_t p);
/// True if the monic polynomial (constant first) over F_p has no monic factor
/// of degree 1..deg/2. Exhaustive; intended for the small degrees in scope.
bool is_irreducible_mod_p(const std::vector<std::uint32_t>& poly, std::uint32_t p);
std::vector<std::uint32_t> default_modulus(std::uint32_t p, unsigned n);

/// An element of a Field. Default-constructed scalars have no field and may only
/// be assigned to.
class Scalar {
 public:
  struct Residues {
    std::array<std::uint32_t, kMaxExtensionDegree> c;
    bool operator==(const Residues&) const = default;
  };

  Scalar() = default;

  const FieldPtr& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  bool operator==(const Scalar& o) const;

  Scalar inverse() const;
  Scalar pow(long long e) const;

  /// Rational payload; throws for finite fields.
  const mpq_class& rational() const;
  /// Residue payload (prime fields use c[0]); throws for Q.
  const Residues& residues() const;
  /// Position in Field::element order; finite fields only.
  std::uint64_t index() const;
  /// -1, 0, 1 for rationals.
  int sign() const;

  /// "-13/9", "2", or "[1,1]" for extension elements.
  std::string to_string() const;

 private:
  friend class Field;
  Scalar(FieldPtr f, mpq_class q) : field_(std::move(f)), value_(std::move(q)) {}
  Scalar(FieldPtr f, Residues r) : field_(std::move(f)), value_(r) {}
  void check_same(const Scalar& o) const;

  FieldPtr field_;
  std::variant<Residues, mpq_class> value_;
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

/// x^(p^k) with k taken mod n; an automorphism of F_{p^n} fixing F_p.
Scalar frobenius(const Scalar& x, long long k);
/// N_{K/F_p}(x) = prod_k frobenius(x, k), returned in the prime subfield.
Scalar field_norm(const Scalar& x);

}  // namespace twistkit
