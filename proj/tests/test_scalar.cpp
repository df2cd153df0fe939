#include <gtest/gtest.h>

#include <random>
#include <set>

#include "twistkit/scalar.hpp"

using namespace twistkit;

namespace {

// Oracle: brute-force root test for monic quadratics/cubics over F_p.
bool has_root(const std::vector<std::uint32_t>& poly, std::uint32_t p) {
  for (std::uint32_t x = 0; x < p; ++x) {
    std::uint64_t s = 0;
    for (std::size_t i = poly.size(); i-- > 0;) s = (s * x + poly[i]) % p;
    if (s == 0) return true;
  }
  return false;
}

std::vector<Scalar> elements(const FieldPtr& f) {
  std::vector<Scalar> out;
  for (std::uint64_t i = 0; i < *f->order(); ++i) out.push_back(f->element(i));
  return out;
}

}  // namespace

TEST(Field, PrimeConstruction) {
  auto f3 = Field::prime(3);
  EXPECT_EQ(f3->order(), 3u);
  EXPECT_EQ(f3->characteristic(), 3u);
  EXPECT_THROW(Field::prime(9), MathError);
  EXPECT_THROW(Field::prime(1), MathError);
}

TEST(Field, DefaultModulusIsSmallestIrreducible) {
  // Enumerate monic degree-n polynomials in lexicographic order with the
  // constant term as the leading key; first rootless one wins.
  for (auto [p, n] : {std::pair{3u, 2u}, {3u, 3u}, {2u, 2u}, {5u, 3u}, {2u, 3u}}) {
    std::vector<std::uint32_t> expected;
    std::uint64_t total = 1;
    for (unsigned i = 0; i < n; ++i) total *= p;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::vector<std::uint32_t> poly(n + 1, 1);
      std::uint64_t v = idx;
      for (unsigned i = n; i-- > 0;) {
        poly[i] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
      if (!has_root(poly, p)) {
        expected = poly;
        break;
      }
    }
    EXPECT_EQ(default_modulus(p, n), expected) << p << "^" << n;
  }
  EXPECT_EQ(Field::extension(3, 2)->modulus(), (std::vector<std::uint32_t>{1, 0, 1}));
  EXPECT_EQ(Field::extension(3, 3)->modulus(), (std::vector<std::uint32_t>{1, 0, 2, 1}));
}

TEST(Field, ReducibleModulusRejected) {
  EXPECT_THROW(Field::extension(2, 2, std::vector<std::uint32_t>{0, 0, 1}), MathError);
  EXPECT_THROW(Field::extension(3, 1), MathError);
  EXPECT_THROW(Field::extension(4, 2), MathError);
}

TEST(Scalar, F9Arithmetic) {
  auto f9 = Field::extension(3, 2);
  const Scalar t = f9->element(3);
  EXPECT_EQ(t * t, f9->from_int(2));
  const Scalar t1 = f9->element(4);  // t + 1
  // (t+1)(a+bt) = 1 solved by hand: a = 2, b = 1.
  EXPECT_EQ(t1.inverse(), f9->element(2 + 3));
  EXPECT_EQ(t1 * t1.inverse(), f9->one());
  EXPECT_EQ(t1.to_string(), "[1,1]");
  EXPECT_THROW(f9->zero().inverse(), MathError);
}

TEST(Scalar, RationalArithmetic) {
  auto q = Field::rationals();
  EXPECT_EQ(q->from_rational(mpq_class(2, 3)) + q->from_rational(mpq_class(1, 6)), q->from_rational(mpq_class(5, 6)));
  EXPECT_EQ(q->from_rational(mpq_class(-13, 9)).to_string(), "-13/9");
  EXPECT_THROW(q->one() / q->zero(), MathError);
}

TEST(Scalar, MixedFieldsRejected) {
  EXPECT_THROW(Field::prime(3)->one() + Field::prime(5)->one(), MathError);
  EXPECT_THROW(Field::prime(3)->one() * Field::rationals()->one(), MathError);
}

TEST(Scalar, RationalRingAxiomsOnRandomTriples) {
  auto q = Field::rationals();
  std::mt19937_64 rng(7);
  auto draw = [&] {
    long num = static_cast<long>(rng() % 201) - 100;
    long den = static_cast<long>(rng() % 50) + 1;
    return q->from_rational(mpq_class(num, den));
  };
  for (int k = 0; k < 1000; ++k) {
    Scalar a = draw(), b = draw(), c = draw();
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
  }
}

TEST(Scalar, InversesExhaustive) {
  for (auto f : {Field::extension(3, 2), Field::extension(3, 3)})
    for (const auto& x : elements(f))
      if (!x.is_zero()) EXPECT_EQ(x * x.inverse(), f->one());
}

TEST(Frobenius, Values) {
  auto f9 = Field::extension(3, 2);
  const Scalar t = f9->element(3);
  EXPECT_EQ(frobenius(t, 1), f9->from_int(2) * t);
  for (const auto& x : elements(f9)) EXPECT_EQ(frobenius(x, 2), x);
  auto f27 = Field::extension(3, 3);
  EXPECT_EQ(frobenius(f27->one(), 1), f27->one());
  EXPECT_THROW(frobenius(Field::prime(3)->one(), 1), MathError);
}

TEST(Frobenius, PeriodEqualsDegree) {
  for (auto f : {Field::extension(3, 2), Field::extension(3, 3), Field::extension(2, 2), Field::extension(5, 3)})
    for (const auto& x : elements(f)) {
      Scalar y = x;
      for (unsigned k = 0; k < f->degree(); ++k) y = frobenius(y, 1);
      EXPECT_EQ(y, x);
      EXPECT_EQ(frobenius(x, 1), x.pow(f->characteristic()));
    }
}

TEST(FieldNorm, Values) {
  auto f9 = Field::extension(3, 2);
  EXPECT_EQ(field_norm(f9->element(4)), Field::prime(3)->from_int(2));
  EXPECT_EQ(field_norm(f9->element(3)), Field::prime(3)->one());
  EXPECT_EQ(field_norm(f9->one()), Field::prime(3)->one());
}

TEST(FieldNorm, MultiplicativeAndOntoPrimeField) {
  for (auto f : {Field::extension(3, 2), Field::extension(3, 3)}) {
    const auto els = elements(f);
    std::set<std::uint64_t> image;
    for (const auto& x : els) {
      image.insert(field_norm(x).index());
      for (const auto& y : els) EXPECT_EQ(field_norm(x * y), field_norm(x) * field_norm(y));
    }
    EXPECT_EQ(image.size(), f->characteristic());
  }
}
