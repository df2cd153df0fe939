#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "twistkit/builders.hpp"

namespace twistkit {

/// One of the twelve twisted products, optionally built on an isotope
/// (A, .) = A^(h1,h2,h3) and with an outer map h. With X = f(x), Y = g(y) for
/// variants 1-6 and X = f(y), Y = g(x) for 7-12, x o y = x.y minus
///   1: c.h(X.Y)   2: h((c.X).Y)   3: h(X.c).Y
///   4: h(X.(c.Y)) 5: h((X.Y).c)   6: h(X.(Y.c))
struct TwistSpec {
  int variant = 1;
  Vector c;
  Matrix f, g;
  std::optional<Matrix> h;
  std::optional<std::array<Matrix, 3>> pre_isotope;
  /// Kaplanski elements; both default to the unit of A.
  std::optional<Vector> a, b;

  /// Identity maps, no h or pre-isotope.
  static TwistSpec basic(const Algebra& alg, int variant, Vector c);
};

/// The product o as a structure tensor.
Algebra twist(const Algebra& a, const TwistSpec& spec);

enum class Criterion { guaranteed, not_guaranteed, inapplicable };
std::string to_string(Criterion c);

struct CriterionReport {
  Criterion verdict = Criterion::inapplicable;
  std::optional<Scalar> norm_c;
  /// 1 / (alpha beta d d1 d2 d3)
  std::optional<Scalar> threshold;
  std::string reason;
};

/// Guaranteed iff A's norm carries an anisotropy certificate, every map is a
/// verified similarity, and N(c) differs from the threshold.
CriterionReport norm_criterion(const Algebra& a, const TwistSpec& spec, std::uint64_t seed = 0);

enum class IffVerdict { division, not_division, inapplicable };
std::string to_string(IffVerdict v);

struct IffReport {
  IffVerdict verdict = IffVerdict::inapplicable;
  std::optional<long long> s, t;
  std::optional<Vector> a_coeff, b_coeff;  // in K coordinates
  std::optional<Scalar> norm_c, threshold;
  std::string reason;
};

/// Biconditional verdict when c lies in a cyclic subfield K with f|K = a sigma^s,
/// g|K = b sigma^t and s or t prime to [K:F]. Only variant 1 without h or
/// pre-isotope is covered.
IffReport iff_criterion(const Algebra& a, const TwistSpec& spec, const CyclicSubfield& k, std::uint64_t seed = 0);

/// x * y = R_a^-1(x) o L_b^-1(y). The unit is b o a (equal to a o b when a = b).
/// Throws MathError when R_a or L_b is singular.
Algebra unitalize(const Algebra& circ, const Vector& a, const Vector& b);
/// The unit that unitalize records: b o a.
Vector kaplanski_unit(const Algebra& circ, const Vector& a, const Vector& b);
/// Maps a zero divisor pair of circ to one of the unitalized algebra:
/// (x, y) -> (R_a x, L_b y).
std::pair<Vector, Vector> transport_zero_divisor(const Algebra& circ, const Vector& a, const Vector& b,
                                                 const std::pair<Vector, Vector>& xy);

struct CommutativeTwistReport {
  Algebra circ;
  Algebra diamond;
  bool commutative = false;
  std::optional<std::pair<std::size_t, std::size_t>> noncommuting_pair;
  bool closed_form_matches = false;
  std::optional<std::pair<std::size_t, std::size_t>> closed_form_mismatch;
};

/// f = a sigma^s, g = b sigma^t on K, x o y = xy - c f(x) g(y) and
/// x <> y = x o f(y); compares <> against xy + f(x) f^-1(y).
/// Requires n odd, s + t = n, s, t != 0, abc = -1 and odd characteristic.
CommutativeTwistReport commutative_twist(const CyclicExtension& k, long long s, long long t, const Vector& a,
                                         const Vector& b, const Vector& c);

}  // namespace twistkit
