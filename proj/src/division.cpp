#include "twistkit/division.hpp"

#include <atomic>
#include <limits>
#include <random>

namespace twistkit {

std::uint64_t space_size(const Algebra& a, std::uint64_t cap) {
  if (!a.field()->is_finite()) throw MathError("exhaustive search needs a finite field");
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    total *= *a.field()->order();
    if (total > cap) throw MathError("exhaustion cap exceeded: |F|^dim > " + std::to_string(cap));
  }
  return total;
}

std::optional<ZeroDivisor> zero_divisor_reference(const Algebra& a) {
  const std::uint64_t total = space_size(a);
  const auto& f = a.field();
  const std::size_t n = a.dim();
  for (std::uint64_t i = 1; i < total; ++i) {
    const Vector x = vector_at(f, n, i);
    for (std::uint64_t j = 1; j < total; ++j) {
      Vector y = vector_at(f, n, j);
      if (is_zero(a.product(x, y))) return ZeroDivisor{x, std::move(y)};
    }
  }
  return std::nullopt;
}

namespace {

/// Smallest nonzero element (by index) of the span of `basis`.
Vector smallest_nonzero(const FieldPtr& f, std::size_t n, const std::vector<Vector>& basis) {
  const std::uint64_t q = *f->order();
  std::uint64_t combos = 1;
  for (std::size_t i = 0; i < basis.size(); ++i) combos *= q;
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  Vector best_v;
  for (std::uint64_t m = 1; m < combos; ++m) {
    Vector v = zero_vector(f, n);
    std::uint64_t r = m;
    for (const auto& b : basis) {
      const Scalar coeff = f->element(r % q);
      r /= q;
      if (!coeff.is_zero()) v = add(v, scale(coeff, b));
    }
    const std::uint64_t idx = vector_index(v);
    if (idx != 0 && idx < best) {
      best = idx;
      best_v = std::move(v);
    }
  }
  return best_v;
}

}  // namespace

std::optional<ZeroDivisor> zero_divisor_search(const Algebra& a) {
  const std::uint64_t total = space_size(a);
  const auto& f = a.field();
  const std::size_t n = a.dim();
  std::vector<Matrix> basis_left;
  for (std::size_t i = 0; i < n; ++i) basis_left.push_back(left_mul_matrix(a, basis_vector(f, n, i)));

  std::atomic<std::uint64_t> best{total};
  const auto last = static_cast<long long>(total);
#pragma omp parallel for schedule(dynamic, 64)
  for (long long i = 1; i < last; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    if (idx >= best.load(std::memory_order_relaxed)) continue;
    const Vector x = vector_at(f, n, idx);
    Matrix lx(f, n, n);
    for (std::size_t k = 0; k < n; ++k)
      if (!x[k].is_zero()) lx = lx + basis_left[k].scaled(x[k]);
    if (rank(lx) < n) {
      std::uint64_t cur = best.load();
      while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
      }
    }
  }
  if (best.load() == total) return std::nullopt;
  Vector x = vector_at(f, n, best.load());
  Vector y = smallest_nonzero(f, n, nullspace(left_mul_matrix(a, x)));
  return ZeroDivisor{std::move(x), std::move(y)};
}

namespace {

std::optional<ZeroDivisor> singular_side(const Algebra& a, const Vector& v) {
  if (auto ker = nullspace(left_mul_matrix(a, v)); !ker.empty()) return ZeroDivisor{v, ker.front()};
  if (auto ker = nullspace(right_mul_matrix(a, v)); !ker.empty()) return ZeroDivisor{ker.front(), v};
  return std::nullopt;
}

}  // namespace

ProbeResult division_probe_char0(const Algebra& a, std::size_t trials, std::uint64_t seed) {
  if (a.field()->kind() != FieldKind::rational) throw MathError("division_probe_char0 needs Q");
  ProbeResult r;
  r.seed = seed;
  const auto& f = a.field();
  const std::size_t n = a.dim();
  if (trials == 0) return r;
  for (std::size_t i = 0; i < n; ++i)
    if ((r.witness = singular_side(a, basis_vector(f, n, i)))) return r;
  std::mt19937_64 rng(seed);
  auto draw = [&] {
    Vector v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(f->from_int(static_cast<long long>(rng() % 19) - 9));
    return v;
  };
  for (r.trials = 0; r.trials < trials;) {
    const Vector x = draw();
    const Vector y = draw();
    ++r.trials;
    if (is_zero(x)) continue;
    if ((r.witness = singular_side(a, x))) return r;
    if (!is_zero(y) && is_zero(a.product(x, y))) {
      r.witness = ZeroDivisor{x, y};
      return r;
    }
  }
  return r;
}

std::string to_string(DivisionStatus s) {
  switch (s) {
    case DivisionStatus::guaranteed_by_norm: return "guaranteed-by-norm";
    case DivisionStatus::certified_exhaustive: return "certified-exhaustive";
    case DivisionStatus::zero_divisor: return "zero-divisor";
    case DivisionStatus::unknown: return "unknown";
  }
  return "unknown";
}

TwistResult run_twist(const Algebra& a, const TwistSpec& spec, std::uint64_t seed, std::size_t trials) {
  TwistResult r;
  r.circ = twist(a, spec);
  r.criterion = norm_criterion(a, spec, seed);
  bool exhausted = false;
  if (a.field()->is_finite()) {
    space_size(a);
    r.witness = zero_divisor_search(r.circ);
    exhausted = true;
  } else {
    const auto probe = division_probe_char0(r.circ, trials, seed);
    r.witness = probe.witness;
    r.probe_trials = probe.trials;
  }
  if (r.witness) {
    if (is_zero(r.witness->x) || is_zero(r.witness->y) || !is_zero(r.circ.product(r.witness->x, r.witness->y)))
      throw MathError("internal: zero-divisor witness failed re-verification");
    r.status = DivisionStatus::zero_divisor;
  } else if (exhausted) {
    r.status = DivisionStatus::certified_exhaustive;
    r.circ.set_division_certificate("exhaustive search");
  } else if (r.criterion.verdict == Criterion::guaranteed) {
    r.status = DivisionStatus::guaranteed_by_norm;
    r.circ.set_division_certificate("norm criterion: " + r.criterion.reason);
  }

  const std::optional<Vector> ka = spec.a ? spec.a : a.unit();
  const std::optional<Vector> kb = spec.b ? spec.b : a.unit();
  if (!ka || !kb) {
    r.star_error = "no Kaplanski elements: A has no unit and none were given";
    return r;
  }
  try {
    r.star = unitalize(r.circ, *ka, *kb);
  } catch (const MathError& e) {
    r.star_error = e.what();
    return r;
  }
  if (r.witness) {
    auto [x, y] = transport_zero_divisor(r.circ, *ka, *kb, {r.witness->x, r.witness->y});
    if (!is_zero(r.star->product(x, y))) throw MathError("internal: transported witness is not a zero divisor");
    r.star_witness = ZeroDivisor{std::move(x), std::move(y)};
  }
  return r;
}

std::string ScanRecord::line() const {
  std::string s = "c=" + to_string(c) + " N(c)=" + norm_c.to_string() + " status=";
  s += witness ? "zero-divisor(" + to_string(witness->x) + ";" + to_string(witness->y) + ")" : "division";
  s += " criterion=" + to_string(criterion.verdict);
  if (iff) {
    s += " iff=" + to_string(iff->verdict);
    if (iff->verdict != IffVerdict::inapplicable)
      s += (iff->verdict == IffVerdict::division) == !witness ? " agree=yes" : " agree=no";
  }
  return s;
}

namespace {

template <typename Search>
std::vector<ScanRecord> scan_impl(const Algebra& a, int variant, const Matrix& f, const Matrix& g,
                                  const std::optional<CyclicSubfield>& k, std::uint64_t seed, bool parallel,
                                  Search search) {
  if (!a.norm()) throw MathError("scan_c needs an algebra with a norm");
  const std::uint64_t total = space_size(a, kScanCap);
  space_size(a);
  std::vector<ScanRecord> out(total);
  std::vector<std::string> errors(total);
  auto one = [&](std::uint64_t idx) {
    try {
      TwistSpec spec = TwistSpec::basic(a, variant, vector_at(a.field(), a.dim(), idx));
      spec.f = f;
      spec.g = g;
      ScanRecord& rec = out[idx];
      rec.c = spec.c;
      rec.norm_c = (*a.norm())(spec.c);
      rec.witness = search(twist(a, spec));
      rec.criterion = norm_criterion(a, spec, seed);
      if (k) rec.iff = iff_criterion(a, spec, *k, seed);
    } catch (const std::exception& e) {
      errors[idx] = e.what();
    }
  };
  const auto last = static_cast<long long>(total);
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < last; ++i) one(static_cast<std::uint64_t>(i));
  } else {
    for (long long i = 0; i < last; ++i) one(static_cast<std::uint64_t>(i));
  }
  for (const auto& e : errors)
    if (!e.empty()) throw MathError(e);
  return out;
}

}  // namespace

std::vector<ScanRecord> scan_c(const Algebra& a, int variant, const Matrix& f, const Matrix& g,
                               const std::optional<CyclicSubfield>& k, std::uint64_t seed) {
  return scan_impl(a, variant, f, g, k, seed, true, [](const Algebra& c) { return zero_divisor_search(c); });
}

std::vector<ScanRecord> scan_c_reference(const Algebra& a, int variant, const Matrix& f, const Matrix& g,
                                         const std::optional<CyclicSubfield>& k, std::uint64_t seed) {
  return scan_impl(a, variant, f, g, k, seed, false, [](const Algebra& c) { return zero_divisor_reference(c); });
}

}  // namespace twistkit
