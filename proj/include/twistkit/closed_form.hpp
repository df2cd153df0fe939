#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twistkit/twist.hpp"

namespace twistkit {

// Hand-derived inverses and products, kept apart from the generic pipeline so
// the two can be compared.

enum class InverseForm {
  series_left,   // F(x) = x - c f(x), f^n = id
  series_right,  // G(x) = x - f(x) c, f^n = id
  involution,    // F(x) = x - c tau(x), tau an involution, c scalar
  reflection,    // F(x) = x - c h(x), h an automorphism with h^2 = id, c scalar
};

InverseForm inverse_form_from_string(const std::string& s);
std::string to_string(InverseForm k);

/// Matrix of F (or G for series_right).
Matrix twist_operator(const Algebra& a, InverseForm kind, const Vector& c, const Matrix& f);

/// The claimed inverse of twist_operator, after checking the hypotheses:
///   series_left:  (1 - c f(c) ... f^{n-1}(c))^-1 (x + c f(x) + c f(c) f^2(x) + ...)
///   series_right: (x + f(x) c + f^2(x) f(c) c + ...) (1 - f^{n-1}(c) ... f(c) c)^-1
///   involution:   (1 - c tau(c))^-1 (x + c tau(x))
///   reflection:   (1 - c^2)^-1 (x + c h(x))
/// Products are taken left to right. `n` is only used by the series forms.
Matrix closed_form_inverse(const Algebra& a, InverseForm kind, const Vector& c, const Matrix& f, unsigned n = 2);

/// Closed-form cases for (A, *). f and g are the twisting maps; for the
/// involution cases f is tau and g is ignored.
///   refl-scalar           reflections f, g, scalar c: the displayed formula
///                         (1-c^2)^-2 (1-c^3) xy + (1+c)^-2 c (1-c)^-1 (x g(y) + f(x) y + f(x) g(y))
///   refl-scalar-expanded  the same case re-expanded from R_e^-1 and L_e^-1:
///                         (1-c^2)^-2 [(1-c^3) xy + (c-c^2)(x g(y) + f(x) y) - (c-c^2) f(x) g(y)]
///   invol-1               xy - c tau(x) tau(y)
///   invol-7-f             xy - c tau(y) x
///   invol-7-g             xy - c y tau(x)
///   invol-7-fg            the displayed third involution form, compared with
///                         xy - c tau(y) tau(x)
///   refl-quat-{1,3,5,7,9,11}[-subst]
///                         quaternion A, c invertible; the displayed right-hand
///                         sides, and with -subst the x -> y substitution in
///                         every g-factor
///   refl-quat-id          f = id, reflection g, quaternion c
std::vector<std::string> star_cases();

Algebra closed_form_star(const std::string& id, const Algebra& a, const Vector& c, const Matrix& f, const Matrix& g);
/// twist followed by unitalize at the unit, with the case's variant and maps.
Algebra generic_star(const std::string& id, const Algebra& a, const Vector& c, const Matrix& f, const Matrix& g);

struct StarComparison {
  std::string id;
  Algebra closed, generic;
  std::optional<std::pair<std::size_t, std::size_t>> mismatch;
  bool matches() const { return !mismatch; }
};

StarComparison compare_star(const std::string& id, const Algebra& a, const Vector& c, const Matrix& f,
                            const Matrix& g);

/// c = lambda 1 for a unital algebra; nullopt otherwise.
std::optional<Scalar> as_scalar(const Algebra& a, const Vector& c);

}  // namespace twistkit
