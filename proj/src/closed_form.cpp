#include "twistkit/closed_form.hpp"

#include <functional>
#include <initializer_list>
#include <map>

namespace twistkit {

InverseForm inverse_form_from_string(const std::string& s) {
  if (s == "series-left") return InverseForm::series_left;
  if (s == "series-right") return InverseForm::series_right;
  if (s == "involution") return InverseForm::involution;
  if (s == "reflection") return InverseForm::reflection;
  throw MathError("unknown inverse form: " + s);
}

std::string to_string(InverseForm k) {
  switch (k) {
    case InverseForm::series_left: return "series-left";
    case InverseForm::series_right: return "series-right";
    case InverseForm::involution: return "involution";
    case InverseForm::reflection: return "reflection";
  }
  return "?";
}

std::optional<Scalar> as_scalar(const Algebra& a, const Vector& c) {
  if (!a.unit()) return std::nullopt;
  const Vector& e = *a.unit();
  for (std::size_t i = 0; i < e.size(); ++i)
    if (!e[i].is_zero()) {
      const Scalar lambda = c[i] / e[i];
      if (scale(lambda, e) == c) return lambda;
      return std::nullopt;
    }
  return std::nullopt;
}

namespace {

struct Ops {
  const Algebra& a;
  Vector one;

  explicit Ops(const Algebra& alg) : a(alg) {
    if (!alg.unit()) throw MathError("closed forms need a unital algebra");
    one = *alg.unit();
  }
  Vector mul(const Vector& x, const Vector& y) const { return a.product(x, y); }
  Vector chain(std::initializer_list<Vector> vs) const {
    auto it = vs.begin();
    Vector r = *it++;
    for (; it != vs.end(); ++it) r = mul(r, *it);
    return r;
  }
  Vector inv(const Vector& x, const std::string& what) const {
    auto r = element_inverse(a, x);
    if (!r) throw MathError("closed form: " + what + " is not invertible");
    return *r;
  }
  Vector one_minus(const Vector& x) const { return sub(one, x); }
};

Matrix apply_columns(const Algebra& a, const std::function<Vector(const Vector&)>& fn) {
  std::vector<Vector> cols;
  for (std::size_t i = 0; i < a.dim(); ++i) cols.push_back(fn(basis_vector(a.field(), a.dim(), i)));
  return Matrix::from_columns(a.field(), a.dim(), cols);
}

bool is_identity(const Matrix& m) { return m == Matrix::identity(m.field(), m.rows()); }

void require_period(const Matrix& f, unsigned n, const char* name) {
  if (n < 2) throw MathError("closed form: period must be at least 2");
  if (!is_identity(f.power(n)))
    throw MathError(std::string("closed form: ") + name + "^" + std::to_string(n) + " is not the identity");
}

void require_reflection(const Algebra& a, const Matrix& h, const char* name) {
  if (homomorphism_violation(a, h)) throw MathError(std::string("closed form: ") + name + " is not an automorphism");
  if (!is_identity(h * h)) throw MathError(std::string("closed form: ") + name + " does not square to the identity");
}

void require_involution(const Algebra& a, const Matrix& t) {
  if (!is_identity(t * t)) throw MathError("closed form: tau does not square to the identity");
  if (homomorphism_violation(a, t, true) && homomorphism_violation(a, t))
    throw MathError("closed form: tau is neither an automorphism nor an anti-automorphism");
}

Scalar require_scalar(const Algebra& a, const Vector& c) {
  auto s = as_scalar(a, c);
  if (!s) throw MathError("closed form: c must be a scalar multiple of 1");
  return *s;
}

}  // namespace

Matrix twist_operator(const Algebra& a, InverseForm kind, const Vector& c, const Matrix& f) {
  if (kind == InverseForm::series_right)
    return apply_columns(a, [&](const Vector& x) { return sub(x, a.product(f * x, c)); });
  return apply_columns(a, [&](const Vector& x) { return sub(x, a.product(c, f * x)); });
}

Matrix closed_form_inverse(const Algebra& a, InverseForm kind, const Vector& c, const Matrix& f, unsigned n) {
  const Ops o(a);
  switch (kind) {
    case InverseForm::series_left: {
      require_period(f, n, "f");
      // prefix[k] = c f(c) ... f^{k-1}(c)
      std::vector<Vector> prefix{o.one};
      std::vector<Matrix> fk{Matrix::identity(a.field(), a.dim())};
      for (unsigned k = 1; k <= n; ++k) {
        prefix.push_back(o.mul(prefix.back(), fk.back() * c));
        fk.push_back(fk.back() * f);
      }
      if (prefix[n] == o.one) throw MathError("closed form: c f(c) ... f^{n-1}(c) = 1");
      const Vector lead = o.inv(o.one_minus(prefix[n]), "1 - c f(c) ... f^{n-1}(c)");
      return apply_columns(a, [&](const Vector& x) {
        Vector s = x;
        for (unsigned k = 1; k < n; ++k) s = add(s, o.mul(prefix[k], fk[k] * x));
        return o.mul(lead, s);
      });
    }
    case InverseForm::series_right: {
      require_period(f, n, "f");
      // suffix[k] = f^{k-1}(c) ... f(c) c
      std::vector<Vector> suffix{o.one};
      std::vector<Matrix> fk{Matrix::identity(a.field(), a.dim())};
      for (unsigned k = 1; k <= n; ++k) {
        suffix.push_back(o.mul(fk.back() * c, suffix.back()));
        fk.push_back(fk.back() * f);
      }
      if (suffix[n] == o.one) throw MathError("closed form: f^{n-1}(c) ... f(c) c = 1");
      const Vector trail = o.inv(o.one_minus(suffix[n]), "1 - f^{n-1}(c) ... f(c) c");
      return apply_columns(a, [&](const Vector& x) {
        Vector s = x;
        for (unsigned k = 1; k < n; ++k) s = add(s, o.mul(fk[k] * x, suffix[k]));
        return o.mul(s, trail);
      });
    }
    case InverseForm::involution: {
      require_involution(a, f);
      require_scalar(a, c);
      const Vector ctc = o.mul(c, f * c);
      if (ctc == o.one) throw MathError("closed form: c tau(c) = 1");
      const Vector lead = o.inv(o.one_minus(ctc), "1 - c tau(c)");
      return apply_columns(a, [&](const Vector& x) { return o.mul(lead, add(x, o.mul(c, f * x))); });
    }
    case InverseForm::reflection: {
      require_reflection(a, f, "h");
      const Scalar lambda = require_scalar(a, c);
      const Scalar d = a.field()->one() - lambda * lambda;
      if (d.is_zero()) throw MathError("closed form: c^2 = 1");
      const Scalar inv = d.inverse();
      return apply_columns(a, [&](const Vector& x) { return scale(inv, add(x, scale(lambda, f * x))); });
    }
  }
  throw MathError("closed form: unknown inverse form");
}

namespace {

using Product = std::function<Vector(const Vector&, const Vector&)>;

struct CaseInfo {
  int variant;
  bool swap_maps;  // generic pipeline uses (g, f)
  enum class Maps { fg, tau_tau, tau_id, id_tau, id_g } maps;
};

const std::map<std::string, CaseInfo>& case_table() {
  using M = CaseInfo::Maps;
  static const std::map<std::string, CaseInfo> t{
      {"refl-scalar", {1, false, M::fg}},
      {"refl-scalar-expanded", {1, false, M::fg}},
      {"invol-1", {1, false, M::tau_tau}},
      {"invol-7-f", {7, false, M::tau_id}},
      {"invol-7-g", {7, false, M::id_tau}},
      {"invol-7-fg", {7, false, M::tau_tau}},
      {"refl-quat-1", {1, false, M::fg}},
      {"refl-quat-3", {3, false, M::fg}},
      {"refl-quat-5", {5, false, M::fg}},
      {"refl-quat-5-subst", {5, false, M::fg}},
      {"refl-quat-7", {7, true, M::fg}},
      {"refl-quat-7-subst", {7, true, M::fg}},
      {"refl-quat-9", {9, true, M::fg}},
      {"refl-quat-9-subst", {9, true, M::fg}},
      {"refl-quat-11", {11, true, M::fg}},
      {"refl-quat-11-subst", {11, true, M::fg}},
      {"refl-quat-id", {1, false, M::id_g}},
  };
  return t;
}

const CaseInfo& info(const std::string& id) {
  auto it = case_table().find(id);
  if (it == case_table().end()) throw MathError("unknown closed-form case: " + id);
  return it->second;
}

Product scalar_reflection_product(const Ops& o, const Algebra& a, const Vector& c, const Matrix& f,
                                  const Matrix& g, bool expanded) {
  for (auto [m, name] : {std::pair{&f, "f"}, std::pair{&g, "g"}}) {
    require_reflection(a, *m, name);
    if (is_identity(*m)) throw MathError(std::string("closed form: ") + name + " must not be the identity");
  }
  const Scalar lam = require_scalar(a, c);
  const auto& F = a.field();
  const Scalar one = F->one();
  if ((one - lam * lam).is_zero()) throw MathError("closed form: c^2 = 1");
  const Scalar pre = ((one - lam * lam) * (one - lam * lam)).inverse();
  return [=, &o, &f, &g](const Vector& x, const Vector& y) {
    const Vector xy = o.mul(x, y), xgy = o.mul(x, g * y), fxy = o.mul(f * x, y), fxgy = o.mul(f * x, g * y);
    if (expanded) {
      const Scalar mid = lam - lam * lam;
      Vector s = scale(one - lam * lam * lam, xy);
      s = add(s, scale(mid, add(xgy, fxy)));
      s = sub(s, scale(mid, fxgy));
      return scale(pre, s);
    }
    const Scalar k = ((one + lam) * (one + lam)).inverse() * lam * (one - lam).inverse();
    return add(scale(pre * (one - lam * lam * lam), xy), scale(k, add(add(xgy, fxy), fxgy)));
  };
}

Product involution_product(const Ops& o, const Algebra& a, const std::string& id, const Vector& c, const Matrix& t) {
  require_involution(a, t);
  const Scalar lam = require_scalar(a, c);
  const auto tc = as_scalar(a, t * c);
  if (!tc) throw MathError("closed form: tau(c) is not a scalar");
  const auto& F = a.field();
  const Scalar one = F->one();
  if (lam == one || lam == -one) throw MathError("closed form: c = 1 or c = -1");
  if (lam * *tc == one) throw MathError("closed form: c tau(c) = 1");
  const Scalar tau_c = *tc;
  if (id == "invol-1" || id == "invol-7-fg") {
    const Scalar pre = ((one - lam * tau_c) * (one - lam * tau_c)).inverse();
    return [=, &o, &t](const Vector& x, const Vector& y) {
      Vector s = scale(one - lam * tau_c * tau_c, o.mul(x, y));
      s = sub(s, scale(lam * (one - lam), o.mul(t * x, t * y)));
      s = add(s, scale(lam * (one - tau_c), add(o.mul(x, t * y), o.mul(t * x, y))));
      return scale(pre, s);
    };
  }
  const Scalar pre = ((one - lam) * (one - lam * tau_c)).inverse();
  const bool left = id == "invol-7-f";
  return [=, &o, &t](const Vector& x, const Vector& y) {
    Vector s = o.mul(x, y);
    if (left) {
      s = sub(s, scale(lam, o.mul(t * y, x)));
      s = add(s, scale(lam, o.mul(x, t * y)));
    } else {
      s = sub(s, scale(lam, o.mul(y, t * x)));
      s = add(s, scale(lam, o.mul(t * x, y)));
    }
    s = sub(s, scale(lam * lam, o.mul(y, x)));
    return scale(pre, s);
  };
}

Product quaternion_product(const Ops& o, const Algebra& a, const std::string& id, const Vector& c, const Matrix& f,
                           const Matrix& g) {
  if (a.dim() != 4 || !is_associative(a)) throw MathError("closed form: A must be a quaternion algebra");
  const bool f_is_id = id == "refl-quat-id";
  if (!f_is_id) {
    require_reflection(a, f, "f");
    if (is_identity(f)) throw MathError("closed form: f must not be the identity");
  }
  require_reflection(a, g, "g");
  if (is_identity(g)) throw MathError("closed form: g must not be the identity");
  o.inv(c, "c");
  const Vector fc = f * c, gc = g * c;
  if (o.mul(c, gc) == o.one) throw MathError("closed form: c g(c) = 1");
  if (!f_is_id && o.mul(c, fc) == o.one) throw MathError("closed form: c f(c) = 1");
  const Vector Ag = o.inv(o.one_minus(o.mul(c, gc)), "1 - c g(c)");
  const Vector Bg = o.inv(o.one_minus(o.mul(gc, c)), "1 - g(c) c");
  if (f_is_id) {
    const Vector Ic = o.inv(o.one_minus(c), "1 - c");
    return [=, &o, &g](const Vector& x, const Vector& y) {
      return sub(o.chain({Ic, x, Ag, add(y, o.mul(c, g * y))}),
                 o.chain({c, Ic, x, Bg, add(g * y, o.mul(gc, y))}));
    };
  }
  const Vector Af = o.inv(o.one_minus(o.mul(c, fc)), "1 - c f(c)");
  const Vector Bf = o.inv(o.one_minus(o.mul(fc, c)), "1 - f(c) c");
  const bool subst = id.ends_with("-subst");
  const std::string base = subst ? id.substr(0, id.size() - 6) : id;
  return [=, &o, &f, &g](const Vector& x, const Vector& y) {
    const Vector& X = subst ? y : x;  // argument of the g-factors in cases 5-11
    if (base == "refl-quat-1")
      return sub(o.chain({Af, add(x, o.mul(c, f * x)), Ag, add(y, o.mul(c, g * y))}),
                 o.chain({c, Bf, add(f * x, o.mul(fc, x)), Bg, add(g * y, o.mul(gc, y))}));
    if (base == "refl-quat-3")
      return sub(o.chain({Bf, add(x, o.mul(f * x, c)), Ag, add(y, o.mul(c, g * y))}),
                 o.chain({Af, add(f * x, o.mul(x, fc)), c, Bg, add(g * y, o.mul(gc, y))}));
    if (base == "refl-quat-5")
      return sub(o.chain({Bf, add(x, o.mul(f * x, c)), Bg, add(X, o.mul(g * X, c))}),
                 o.chain({Af, add(f * x, o.mul(x, fc)), Ag, add(g * X, o.mul(X, gc)), c}));
    if (base == "refl-quat-7")
      return sub(o.chain({Af, add(x, o.mul(c, f * x)), Ag, add(X, o.mul(c, g * X))}),
                 o.chain({c, Bg, add(g * X, o.mul(gc, X)), Bf, add(f * x, o.mul(fc, x))}));
    if (base == "refl-quat-9")
      return sub(o.chain({Af, add(x, o.mul(c, f * x)), Bg, add(X, o.mul(g * X, c))}),
                 o.chain({Ag, add(g * X, o.mul(X, gc)), c, Bf, add(f * x, o.mul(fc, x))}));
    // refl-quat-11, including the x f(c) term of the displayed g-factor
    return sub(o.chain({Af, add(x, o.mul(c, f * x)), Bg, add(X, o.mul(g * X, c))}),
               o.chain({Ag, add(g * X, o.mul(X, fc)), Bf, add(f * x, o.mul(fc, x)), c}));
  };
}

}  // namespace

std::vector<std::string> star_cases() {
  std::vector<std::string> out;
  for (const auto& [k, v] : case_table()) out.push_back(k);
  return out;
}

Algebra closed_form_star(const std::string& id, const Algebra& a, const Vector& c, const Matrix& f, const Matrix& g) {
  info(id);
  const Ops o(a);
  Product prod;
  if (id.starts_with("refl-scalar"))
    prod = scalar_reflection_product(o, a, c, f, g, id == "refl-scalar-expanded");
  else if (id.starts_with("invol-"))
    prod = involution_product(o, a, id, c, f);
  else
    prod = quaternion_product(o, a, id, c, f, g);
  return algebra_from_product(a.field(), a.dim(), a.label() + " closed " + id, prod);
}

Algebra generic_star(const std::string& id, const Algebra& a, const Vector& c, const Matrix& f, const Matrix& g) {
  const CaseInfo& ci = info(id);
  const Matrix id_map = Matrix::identity(a.field(), a.dim());
  TwistSpec spec = TwistSpec::basic(a, ci.variant, c);
  switch (ci.maps) {
    case CaseInfo::Maps::fg: spec.f = ci.swap_maps ? g : f; spec.g = ci.swap_maps ? f : g; break;
    case CaseInfo::Maps::tau_tau: spec.f = f; spec.g = f; break;
    case CaseInfo::Maps::tau_id: spec.f = f; spec.g = id_map; break;
    case CaseInfo::Maps::id_tau: spec.f = id_map; spec.g = f; break;
    case CaseInfo::Maps::id_g: spec.f = id_map; spec.g = g; break;
  }
  if (!a.unit()) throw MathError("generic star needs a unital algebra");
  return unitalize(twist(a, spec), *a.unit(), *a.unit());
}

StarComparison compare_star(const std::string& id, const Algebra& a, const Vector& c, const Matrix& f,
                            const Matrix& g) {
  StarComparison r{id, closed_form_star(id, a, c, f, g), generic_star(id, a, c, f, g), std::nullopt};
  for (std::size_t i = 0; i < a.dim() && !r.mismatch; ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (!(r.closed.basis_product(i, j) == r.generic.basis_product(i, j))) {
        r.mismatch = std::make_pair(i, j);
        break;
      }
  return r;
}

}  // namespace twistkit
