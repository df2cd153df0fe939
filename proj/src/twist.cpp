#include "twistkit/twist.hpp"

#include <numeric>

namespace twistkit {

TwistSpec TwistSpec::basic(const Algebra& alg, int variant, Vector c) {
  TwistSpec s;
  s.variant = variant;
  s.c = std::move(c);
  s.f = Matrix::identity(alg.field(), alg.dim());
  s.g = s.f;
  return s;
}

namespace {

void check_map(const Algebra& a, const Matrix& m, const char* name) {
  if (!m.square() || m.rows() != a.dim() || !(*m.field() == *a.field()))
    throw MathError(std::string("twist: map ") + name + " has the wrong size or field");
  if (determinant(m).is_zero()) throw MathError(std::string("twist: singular map ") + name);
}

}  // namespace

Algebra twist(const Algebra& a, const TwistSpec& spec) {
  if (spec.variant < 1 || spec.variant > 12) throw MathError("twist: variant must be 1..12");
  if (spec.c.size() != a.dim()) throw MathError("twist: c has the wrong length");
  for (const auto& x : spec.c)
    if (!(*x.field() == *a.field())) throw MathError("twist: c lies outside the field");
  check_map(a, spec.f, "f");
  check_map(a, spec.g, "g");
  if (spec.h) check_map(a, *spec.h, "h");
  if (spec.pre_isotope)
    for (const auto& m : *spec.pre_isotope) check_map(a, m, "h_i");

  auto dot = [&](const Vector& x, const Vector& y) {
    if (!spec.pre_isotope) return a.product(x, y);
    const auto& [h1, h2, h3] = *spec.pre_isotope;
    return h3 * a.product(h1 * x, h2 * y);
  };
  auto H = [&](const Vector& v) { return spec.h ? *spec.h * v : v; };
  const Vector& c = spec.c;
  const int kind = (spec.variant - 1) % 6 + 1;
  const bool swapped = spec.variant > 6;

  std::string label = a.label() + " o" + std::to_string(spec.variant);
  return algebra_from_product(a.field(), a.dim(), label, [&](const Vector& x, const Vector& y) {
    const Vector X = swapped ? spec.f * y : spec.f * x;
    const Vector Y = swapped ? spec.g * x : spec.g * y;
    Vector term;
    switch (kind) {
      case 1: term = dot(c, H(dot(X, Y))); break;
      case 2: term = H(dot(dot(c, X), Y)); break;
      case 3: term = dot(H(dot(X, c)), Y); break;
      case 4: term = H(dot(X, dot(c, Y))); break;
      case 5: term = H(dot(dot(X, Y), c)); break;
      default: term = H(dot(X, dot(Y, c))); break;
    }
    return sub(dot(x, y), term);
  });
}

std::string to_string(Criterion c) {
  switch (c) {
    case Criterion::guaranteed: return "guaranteed";
    case Criterion::not_guaranteed: return "not-guaranteed";
    case Criterion::inapplicable: return "inapplicable";
  }
  return "inapplicable";
}

CriterionReport norm_criterion(const Algebra& a, const TwistSpec& spec, std::uint64_t seed) {
  CriterionReport r;
  if (!a.norm()) {
    r.reason = "algebra has no norm";
    return r;
  }
  const NormForm& n = *a.norm();
  r.norm_c = n(spec.c);
  std::vector<std::pair<std::string, const Matrix*>> maps{{"f", &spec.f}, {"g", &spec.g}};
  if (spec.h) maps.emplace_back("h", &*spec.h);
  if (spec.pre_isotope)
    for (std::size_t i = 0; i < 3; ++i) maps.emplace_back("h" + std::to_string(i + 1), &(*spec.pre_isotope)[i]);
  Scalar product = a.field()->one();
  for (const auto& [name, m] : maps) {
    const auto factor = verify_similarity(n, *m, seed);
    if (!factor || factor->is_zero()) {
      r.reason = name + " is not a verified similarity of the norm";
      return r;
    }
    product *= *factor;
  }
  r.threshold = product.inverse();
  if (!n.anisotropic()) {
    r.reason = "norm has no anisotropy certificate";
    return r;
  }
  r.verdict = *r.norm_c == *r.threshold ? Criterion::not_guaranteed : Criterion::guaranteed;
  r.reason = "N(c) = " + r.norm_c->to_string() + (r.verdict == Criterion::guaranteed ? " != " : " = ") +
             r.threshold->to_string();
  return r;
}

std::string to_string(IffVerdict v) {
  switch (v) {
    case IffVerdict::division: return "division";
    case IffVerdict::not_division: return "not-division";
    case IffVerdict::inapplicable: return "inapplicable";
  }
  return "inapplicable";
}

namespace {

struct SubfieldView {
  const Algebra& a;
  const CyclicSubfield& k;

  Vector embed(const Vector& kc) const {
    Vector v = zero_vector(a.field(), a.dim());
    for (std::size_t i = 0; i < kc.size(); ++i) v = add(v, scale(kc[i], k.basis[i]));
    return v;
  }
  std::optional<Vector> coords(const Vector& v) const { return span_coordinates(a.field(), k.basis, v); }
  Vector sigma_pow(const Vector& kc, long long s) const {
    Vector r = kc;
    for (long long i = 0; i < s; ++i) r = k.sigma * r;
    return r;
  }
};

/// Smallest s with m|K = a sigma^s; returns (s, a in K coordinates).
std::optional<std::pair<long long, Vector>> restriction(const SubfieldView& v, const Matrix& m) {
  if (!v.a.unit()) return std::nullopt;
  const auto a_coords = v.coords(m * *v.a.unit());
  if (!a_coords) return std::nullopt;
  const Vector a_vec = v.embed(*a_coords);
  const std::size_t n = v.k.degree();
  for (long long s = 0; s < static_cast<long long>(n); ++s) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      const Vector ei = basis_vector(v.a.field(), n, i);
      ok = m * v.k.basis[i] == v.a.product(a_vec, v.embed(v.sigma_pow(ei, s)));
    }
    if (ok) return std::make_pair(s, *a_coords);
  }
  return std::nullopt;
}

}  // namespace

IffReport iff_criterion(const Algebra& a, const TwistSpec& spec, const CyclicSubfield& k, std::uint64_t seed) {
  IffReport r;
  if (spec.variant != 1 || spec.h || spec.pre_isotope) {
    r.reason = "only variant 1 without h or pre-isotope is covered";
    return r;
  }
  if (!a.norm() || !a.norm()->anisotropic()) {
    r.reason = "norm missing or without anisotropy certificate";
    return r;
  }
  if (k.degree() == 0 || !k.sigma.square() || k.sigma.rows() != k.degree()) {
    r.reason = "malformed subfield";
    return r;
  }
  const SubfieldView view{a, k};
  if (!view.coords(spec.c)) {
    r.reason = "c does not lie in K";
    return r;
  }
  const auto fr = restriction(view, spec.f);
  const auto gr = restriction(view, spec.g);
  if (!fr || !gr) {
    r.reason = std::string(!fr ? "f" : "g") + " does not restrict to a multiple of a power of sigma on K";
    return r;
  }
  r.s = fr->first;
  r.t = gr->first;
  r.a_coeff = fr->second;
  r.b_coeff = gr->second;
  const long long n = static_cast<long long>(k.degree());
  if (std::gcd(*r.s, n) != 1 && std::gcd(*r.t, n) != 1) {
    r.reason = "neither s nor t is prime to n";
    return r;
  }
  const auto alpha = verify_similarity(*a.norm(), spec.f, seed);
  const auto beta = verify_similarity(*a.norm(), spec.g, seed);
  if (!alpha || !beta || alpha->is_zero() || beta->is_zero()) {
    r.reason = "f or g is not a verified similarity";
    return r;
  }
  r.norm_c = (*a.norm())(spec.c);
  r.threshold = (*alpha * *beta).inverse();
  r.verdict = *r.norm_c == *r.threshold ? IffVerdict::not_division : IffVerdict::division;
  r.reason = "N(c) = " + r.norm_c->to_string() + (r.verdict == IffVerdict::division ? " != " : " = ") +
             r.threshold->to_string();
  return r;
}

Vector kaplanski_unit(const Algebra& circ, const Vector& a, const Vector& b) { return circ.product(b, a); }

Algebra unitalize(const Algebra& circ, const Vector& a, const Vector& b) {
  const auto ra = inverse(right_mul_matrix(circ, a));
  const auto lb = inverse(left_mul_matrix(circ, b));
  if (!ra || !lb)
    throw MathError(std::string("Kaplanski element is a zero-divisor side in (A,o): ") +
                    (!ra ? "R_a" : "L_b") + " is singular");
  Algebra star = algebra_from_product(circ.field(), circ.dim(), circ.label() + " *",
                                      [&](const Vector& x, const Vector& y) { return circ.product(*ra * x, *lb * y); });
  star.set_unit(kaplanski_unit(circ, a, b));
  if (circ.division_certificate()) star.set_division_certificate("isotope of " + *circ.division_certificate());
  return star;
}

std::pair<Vector, Vector> transport_zero_divisor(const Algebra& circ, const Vector& a, const Vector& b,
                                                 const std::pair<Vector, Vector>& xy) {
  return {right_mul_matrix(circ, a) * xy.first, left_mul_matrix(circ, b) * xy.second};
}

namespace {

std::optional<std::pair<std::size_t, std::size_t>> first_difference(const Algebra& x, const Algebra& y) {
  for (std::size_t i = 0; i < x.dim(); ++i)
    for (std::size_t j = 0; j < x.dim(); ++j)
      if (!(x.basis_product(i, j) == y.basis_product(i, j))) return std::make_pair(i, j);
  return std::nullopt;
}

}  // namespace

CommutativeTwistReport commutative_twist(const CyclicExtension& k, long long s, long long t, const Vector& a,
                                         const Vector& b, const Vector& c) {
  const long long n = static_cast<long long>(k.degree());
  const auto& f = k.k.field();
  if (n % 2 == 0) throw MathError("commutative twist needs odd degree");
  if (f->characteristic() == 2) throw MathError("commutative twist needs odd characteristic");
  if (s <= 0 || t <= 0 || s + t != n) throw MathError("commutative twist needs s, t != 0 and s + t = n");
  if (!(k.k.product(k.k.product(a, b), c) == scale(f->from_int(-1), *k.k.unit())))
    throw MathError("commutative twist needs abc = -1");

  const Matrix fm = left_mul_matrix(k.k, a) * k.sigma.power(static_cast<unsigned>(s));
  const Matrix gm = left_mul_matrix(k.k, b) * k.sigma.power(static_cast<unsigned>(t));
  TwistSpec spec = TwistSpec::basic(k.k, 1, c);
  spec.f = fm;
  spec.g = gm;
  CommutativeTwistReport r{twist(k.k, spec), Algebra(), false, std::nullopt, false, std::nullopt};
  r.diamond = isotope(r.circ, Matrix::identity(f, k.degree()), fm, Matrix::identity(f, k.degree()));
  r.diamond.set_label(k.k.label() + " <>");
  r.noncommuting_pair = first_difference(r.diamond, opposite(r.diamond));
  r.commutative = !r.noncommuting_pair;
  const Matrix finv = inverse_or_throw(fm, "f");
  const Algebra closed = algebra_from_product(f, k.degree(), "closed form", [&](const Vector& x, const Vector& y) {
    return add(k.k.product(x, y), k.k.product(fm * x, finv * y));
  });
  r.closed_form_mismatch = first_difference(r.diamond, closed);
  r.closed_form_matches = !r.closed_form_mismatch;
  return r;
}

}  // namespace twistkit
