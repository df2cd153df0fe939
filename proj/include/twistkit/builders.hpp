#pragma once

#include <string>
#include <variant>

#include "twistkit/algebra.hpp"

namespace twistkit {

/// F as a one-dimensional algebra with N(x) = x^2.
Algebra scalar_algebra(const FieldPtr& f);

/// Trace form T(x) = N(1 + x) - N(1) - N(x) of a unital algebra with a norm.
Scalar trace(const Algebra& a, const Vector& x);
/// x -> T(x) 1 - x.
Matrix conjugation_matrix(const Algebra& a);
/// x + xbar in F 1 and x xbar = N(x) 1 on every basis element.
bool has_standard_involution(const Algebra& a);

/// (u,v)(u',v') = (uu' + c v'bar v, v'u + v ubar'), unit (1,0), N = N(u) - c N(v).
Algebra cayley_dickson(const Algebra& d, const Scalar& c);
/// Doubling Q twice (resp. three times) with c = -1: basis 1,i,j,k[,l,il,jl,kl].
Algebra quaternions();
Algebra octonions();

/// Power basis algebra F[t]/(m) for a monic modulus given constant term first.
Algebra power_basis_algebra(const FieldPtr& f, const std::vector<Scalar>& modulus, std::string label);
/// F_{p^n} over F_p with basis 1, t, ..., t^(n-1) and its field norm attached.
Algebra extension_as_algebra(const FieldPtr& k);
/// Matrix of x -> x^(p^k) in the power basis.
Matrix frobenius_matrix(const FieldPtr& k, long long power);

/// A cyclic extension K/F as a commutative F-algebra with a generator of its
/// Galois group acting on K's coordinates.
struct CyclicExtension {
  Algebra k;
  Matrix sigma;
  std::size_t degree() const { return k.dim(); }
};

CyclicExtension finite_cyclic_extension(const FieldPtr& k);
/// K = Q[t]/(m) with m of degree 2 or 3 and sigma given on the power basis.
/// Checks irreducibility (no rational root), that sigma is an automorphism,
/// and that sigma has order exactly deg m.
CyclicExtension rational_cyclic_extension(const std::vector<mpq_class>& modulus, const Matrix& sigma);

/// sigma^k applied to K coordinates, k taken mod n.
Vector apply_sigma(const CyclicExtension& e, const Vector& x, long long k);

/// (K/F, sigma, d) on the basis x_i u^j (index i + n j), reduced norm attached.
/// Over Q a descent certificate is attached when one of the odd primes up to
/// 31 certifies the (diagonal) reduced norm.
Algebra cyclic_algebra(const CyclicExtension& e, const Scalar& d);
/// Reduced norm of `x` in the cyclic algebra built from `e` and `d`.
Scalar reduced_norm(const CyclicExtension& e, const Scalar& d, const Vector& x);

/// A cyclic subfield inside an algebra: `basis` spans K in A's coordinates and
/// `sigma` generates Gal(K/F) on K's coordinates in that basis.
struct CyclicSubfield {
  std::vector<Vector> basis;
  Matrix sigma;
  std::size_t degree() const { return basis.size(); }
};

CyclicSubfield whole_field(const CyclicExtension& e);
/// K sitting in the cyclic algebra as the span of x_i u^0.
CyclicSubfield cyclic_algebra_subfield(const CyclicExtension& e);

struct MapSpec {
  enum class Kind { identity, conjugation, frobenius, inner, reflection, explicit_matrix };
  Kind kind = Kind::identity;
  long long power = 1;   // frobenius
  Vector q;              // inner, reflection
  Matrix matrix;         // explicit
  std::string describe() const;
};

/// The requested map, verified: invertible always; automorphism for frobenius,
/// inner and reflection; reflection also squares to the identity; conjugation is
/// an anti-automorphism of period 2.
Matrix make_map(const Algebra& a, const MapSpec& spec);

}  // namespace twistkit
