#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "twistkit/algebra.hpp"

namespace twistkit {

struct DerivationSpace {
  std::vector<Matrix> basis;
  /// [D_a, D_b] = sum_k bracket[(a * dim + b) * dim + k] D_k
  std::vector<Scalar> bracket;
  bool closed = false;
  std::size_t dim() const { return basis.size(); }
};

/// Nullspace of the Leibniz system D(e_i e_j) = D(e_i) e_j + e_i D(e_j) in the
/// n^2 matrix entries. Caps: n <= 9 over Q, n <= 16 over finite fields.
DerivationSpace derivations(const Algebra& a);
/// Adds D(c) = 0.
DerivationSpace derivations_fixing(const Algebra& a, const Vector& c);
/// Adds D(c) = 0 (when given) and D m = m D for every m in `commuting`.
DerivationSpace derivations_constrained(const Algebra& a, const std::optional<Vector>& c,
                                        std::span<const Matrix> commuting);

using BasisPair = std::pair<std::size_t, std::size_t>;

/// First basis pair violating the automorphism property; (n, n) if the map is singular.
std::optional<BasisPair> automorphism_violation(const Algebra& a, const Matrix& f);
std::optional<BasisPair> derivation_violation(const Algebra& a, const Matrix& d);
bool is_automorphism(const Algebra& a, const Matrix& f);
bool is_derivation(const Algebra& a, const Matrix& d);

/// x -> ax - xa
Matrix inner_derivation(const Algebra& a, const Vector& x);
/// x -> q x q^-1 (computed as L_q R_{q^-1})
Matrix inner_map(const Algebra& a, const Vector& q);

struct Check {
  std::string name;
  bool pass = false;
  std::string witness;
};

/// Twenty fixed integer quaternions q0 + q1 e1 + q2 e2 + q3 e3 in the first
/// four coordinates of a Cayley-Dickson algebra of dimension >= 4.
std::vector<Vector> quaternion_sample(const Algebra& a);

std::vector<Check> check_automorphisms(const Algebra& target, std::span<const Matrix> family, const std::string& prefix);
std::vector<Check> check_derivations(const Algebra& target, std::span<const Matrix> family, const std::string& prefix);
/// dim Der(target) >= bound, with the computed dimension as witness.
Check check_der_dim_at_least(const Algebra& target, std::size_t bound, const std::string& name);

}  // namespace twistkit
