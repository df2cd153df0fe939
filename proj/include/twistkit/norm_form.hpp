#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "twistkit/linalg.hpp"

namespace twistkit {

/// Why a form is known to be anisotropic (N(x) = 0 only for x = 0).
enum class AnisotropyCert {
  unknown,
  positive_definite,   // Gram over Q with all LDL pivots > 0
  field_norm,          // norm of a finite field extension
  division_certified,  // algebra already certified division
  descent,             // diagonal integral form, p-adic descent argument
  exhaustive,          // finite field: every nonzero vector checked
};

std::string to_string(AnisotropyCert c);
std::optional<AnisotropyCert> anisotropy_cert_from_string(const std::string& s);

/// A homogeneous form of degree d on F^n. Quadratic forms carry a Gram matrix
/// (N(x) = x^T G x); higher degree forms carry an evaluator.
class NormForm {
 public:
  enum class Kind { gram, determinant, explicit_polynomial };
  using Evaluator = std::function<Scalar(const Vector&)>;

  static NormForm from_gram(Matrix gram, AnisotropyCert cert = AnisotropyCert::unknown);
  static NormForm from_evaluator(FieldPtr f, std::size_t dim, unsigned degree, Kind kind, Evaluator eval,
                                 AnisotropyCert cert = AnisotropyCert::unknown);

  Scalar operator()(const Vector& x) const;

  const FieldPtr& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  unsigned degree() const { return degree_; }
  Kind kind() const { return kind_; }
  AnisotropyCert certificate() const { return cert_; }
  bool anisotropic() const { return cert_ != AnisotropyCert::unknown; }
  /// Gram matrix: stored for gram kind, derived by polarization for other
  /// degree-2 forms (characteristic != 2).
  std::optional<Matrix> gram() const;

  NormForm with_certificate(AnisotropyCert c) const;
  std::string describe() const;

 private:
  FieldPtr field_;
  std::size_t dim_ = 0;
  unsigned degree_ = 0;
  Kind kind_ = Kind::gram;
  std::optional<Matrix> gram_;
  Evaluator eval_;
  AnisotropyCert cert_ = AnisotropyCert::unknown;
};

/// theta(v_1..v_d) = sum over nonempty index sets S of (-1)^(d-|S|) N(sum_{i in S} v_i).
Scalar polarize(const NormForm& n, std::span<const Vector> args);

/// Exact LDL^T over Q; true iff every pivot is positive.
bool is_positive_definite(const Matrix& gram);
/// Descent certificate for a diagonal Gram over Q: after clearing denominators,
/// every coefficient has p-adic valuation 0 or 1, and both the unit part and the
/// p-part are anisotropic mod p (checked exhaustively). Odd p only.
bool certify_descent(const Matrix& gram, std::uint32_t p);

/// Points of {0..d}^n with at most `support` nonzero coordinates; a degree-d
/// polynomial vanishing on all of them (support >= d) is identically zero.
std::vector<Vector> evaluation_grid(const FieldPtr& f, std::size_t n, unsigned d, unsigned support);
/// Integer points with coordinates in [-9, 9] from a fixed-seed generator.
std::vector<Vector> random_points(const FieldPtr& f, std::size_t n, std::size_t count, std::uint64_t seed);
/// All elements of F^n for a finite field, in index order (coordinate 0 least significant).
std::vector<Vector> all_vectors(const FieldPtr& f, std::size_t n);
Vector vector_at(const FieldPtr& f, std::size_t n, std::uint64_t index);
std::uint64_t vector_index(const Vector& v);

/// Similarity factor alpha with N(f(x)) = alpha N(x), or nullopt. For quadratic
/// forms this checks F^T G F = alpha G; otherwise every vector of a finite
/// space, or a grid plus 100 seeded random points over Q.
std::optional<Scalar> verify_similarity(const NormForm& n, const Matrix& f, std::uint64_t seed = 0);

}  // namespace twistkit
