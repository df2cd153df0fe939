#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twistkit/linalg.hpp"
#include "twistkit/norm_form.hpp"

namespace twistkit {

/// Finite-dimensional, possibly nonassociative algebra given by structure
/// constants: e_i e_j = sum_k table(i, j, k) e_k.
class Algebra {
 public:
  Algebra() = default;
  /// `table` is laid out as table[(i * dim + j) * dim + k].
  Algebra(FieldPtr field, std::size_t dim, std::vector<Scalar> table, std::string label);

  const FieldPtr& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const std::string& label() const { return label_; }
  void set_label(std::string l) { label_ = std::move(l); }

  const Scalar& structure(std::size_t i, std::size_t j, std::size_t k) const {
    return table_[(i * dim_ + j) * dim_ + k];
  }
  const std::vector<Scalar>& table() const { return table_; }

  Vector product(const Vector& x, const Vector& y) const;
  /// e_i e_j as a coordinate vector.
  Vector basis_product(std::size_t i, std::size_t j) const;

  const std::optional<Vector>& unit() const { return unit_; }
  /// Verifies that `e` is a two-sided identity on every basis element.
  void set_unit(Vector e);

  const std::shared_ptr<const NormForm>& norm() const { return norm_; }
  void set_norm(NormForm n);
  void clear_norm() { norm_.reset(); }

  /// Human-readable argument for why the algebra has no zero divisors, if any.
  const std::optional<std::string>& division_certificate() const { return division_cert_; }
  void set_division_certificate(std::optional<std::string> c) { division_cert_ = std::move(c); }

  bool same_table(const Algebra& o) const { return dim_ == o.dim_ && table_ == o.table_; }

 private:
  struct Term {
    std::size_t i, j, k;
    Scalar c;
  };

  FieldPtr field_;
  std::size_t dim_ = 0;
  std::vector<Scalar> table_;
  std::vector<Term> nonzero_;
  std::string label_;
  std::optional<Vector> unit_;
  std::shared_ptr<const NormForm> norm_;
  std::optional<std::string> division_cert_;
};

/// Builds an algebra from a bilinear product evaluated on basis pairs.
template <typename Product>
Algebra algebra_from_product(const FieldPtr& f, std::size_t n, std::string label, Product&& prod) {
  std::vector<Scalar> table;
  table.reserve(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vector v = prod(basis_vector(f, n, i), basis_vector(f, n, j));
      if (v.size() != n) throw MathError("product returned a vector of the wrong length");
      table.insert(table.end(), v.begin(), v.end());
    }
  return Algebra(f, n, std::move(table), std::move(label));
}

Vector multiply(const Algebra& a, const Vector& x, const Vector& y);
Matrix left_mul_matrix(const Algebra& a, const Vector& x);
Matrix right_mul_matrix(const Algebra& a, const Vector& x);
/// The unique two-sided unit, if one exists.
std::optional<Vector> find_unit(const Algebra& a);

Vector commutator(const Algebra& a, const Vector& x, const Vector& y);
Vector associator(const Algebra& a, const Vector& x, const Vector& y, const Vector& z);

enum class NucleusSide { left, middle, right, all };

struct Subspace {
  std::vector<Vector> basis;
  std::size_t dim() const { return basis.size(); }
};

Subspace nucleus(const Algebra& a, NucleusSide side);
/// Nucleus elements that also commute with everything.
Subspace center(const Algebra& a);

/// Product h(f(x) g(y)). Division certificates carry over.
Algebra isotope(const Algebra& a, const Matrix& f, const Matrix& g, const Matrix& h);
Algebra opposite(const Algebra& a);

bool is_commutative(const Algebra& a);
bool is_associative(const Algebra& a);
/// Inverse of a unital algebra element, two-sided, solved linearly.
std::optional<Vector> element_inverse(const Algebra& a, const Vector& x);

/// First basis pair (i, j) with F(e_i e_j) != F(e_i) F(e_j); with `anti` set,
/// the right-hand side is F(e_j) F(e_i) instead.
std::optional<std::pair<std::size_t, std::size_t>> homomorphism_violation(const Algebra& a, const Matrix& f,
                                                                          bool anti = false);

/// N(xy) = N(x) N(y): exhaustive over finite fields; over Q on the product of
/// two degree-d evaluation grids plus 100 seeded random pairs.
bool verify_multiplicative(const Algebra& a, const NormForm& n, std::uint64_t seed = 0);

}  // namespace twistkit
