#include <gtest/gtest.h>

#include "twistkit/builders.hpp"

using namespace twistkit;

namespace {

const FieldPtr Q = Field::rationals();

Vector qv(std::initializer_list<long long> xs) {
  Vector v;
  for (auto x : xs) v.push_back(Q->from_int(x));
  return v;
}

Matrix diag(const FieldPtr& f, std::initializer_list<long long> xs) {
  Matrix m(f, xs.size(), xs.size());
  std::size_t i = 0;
  for (auto x : xs) {
    m(i, i) = f->from_int(x);
    ++i;
  }
  return m;
}

CyclicExtension sqrt2() {
  return rational_cyclic_extension({mpq_class(-2), mpq_class(0), mpq_class(1)}, diag(Q, {1, -1}));
}

}  // namespace

TEST(CayleyDickson, FirstDoubling) {
  const Algebra c = cayley_dickson(scalar_algebra(Q), Q->from_int(-1));
  EXPECT_EQ(c.dim(), 2u);
  EXPECT_EQ(*c.norm()->gram(), diag(Q, {1, 1}));
  EXPECT_EQ(c.product(qv({0, 1}), qv({0, 1})), qv({-1, 0}));
  EXPECT_EQ(c.norm()->certificate(), AnisotropyCert::positive_definite);
}

TEST(CayleyDickson, OctonionsAndUnit) {
  const Algebra o = octonions();
  EXPECT_EQ(o.dim(), 8u);
  EXPECT_EQ(*o.unit(), qv({1, 0, 0, 0, 0, 0, 0, 0}));
  EXPECT_EQ(o.norm()->certificate(), AnisotropyCert::positive_definite);
  EXPECT_EQ(*o.norm()->gram(), Matrix::identity(Q, 8));
  EXPECT_TRUE(has_standard_involution(o));
  EXPECT_TRUE(o.division_certificate());
  EXPECT_THROW(cayley_dickson(o, Q->zero()), MathError);
}

TEST(CayleyDickson, ScalarInvolutionOnBasis) {
  for (const Algebra& a : {quaternions(), octonions()}) {
    const Matrix conj = conjugation_matrix(a);
    for (std::size_t j = 0; j < a.dim(); ++j) {
      const Vector x = basis_vector(Q, a.dim(), j);
      EXPECT_EQ(add(x, conj * x), scale(trace(a, x), *a.unit()));
      EXPECT_EQ(a.product(x, conj * x), scale((*a.norm())(x), *a.unit()));
    }
  }
}

TEST(CayleyDickson, MultiplicativeNorms) {
  const Algebra h = quaternions();
  EXPECT_TRUE(verify_multiplicative(h, *h.norm()));
  const Algebra o = octonions();
  EXPECT_TRUE(verify_multiplicative(o, *o.norm()));
  const FieldPtr f5 = Field::prime(5);
  const Algebra d = cayley_dickson(scalar_algebra(f5), f5->from_int(2));
  EXPECT_TRUE(verify_multiplicative(d, *d.norm()));
  EXPECT_EQ(d.norm()->certificate(), AnisotropyCert::exhaustive);  // 2 is a nonsquare mod 5
  const Algebra split = cayley_dickson(scalar_algebra(f5), f5->from_int(-1));
  EXPECT_EQ(split.norm()->certificate(), AnisotropyCert::unknown);  // -1 = 2^2 mod 5
  const Algebra h5 = cayley_dickson(d, f5->from_int(2));
  EXPECT_TRUE(verify_multiplicative(h5, *h5.norm()));
}

TEST(Extension, F9AndF27) {
  const FieldPtr f9 = Field::extension(3, 2);
  const Algebra k = extension_as_algebra(f9);
  EXPECT_EQ(k.dim(), 2u);
  EXPECT_EQ(frobenius_matrix(f9, 1), diag(k.field(), {1, 2}));
  const FieldPtr f27 = Field::extension(3, 3);
  const Matrix s = frobenius_matrix(f27, 1);
  EXPECT_EQ(s.power(3), Matrix::identity(s.field(), 3));
  EXPECT_FALSE(s == Matrix::identity(s.field(), 3));
  EXPECT_EQ(k.norm()->certificate(), AnisotropyCert::field_norm);
}

TEST(Extension, FrobeniusMapSpecMatchesFieldFrobenius) {
  for (auto f : {Field::extension(3, 2), Field::extension(3, 3), Field::extension(5, 3), Field::extension(2, 2)}) {
    const Algebra k = extension_as_algebra(f);
    MapSpec s{MapSpec::Kind::frobenius, 1, {}, {}};
    EXPECT_EQ(make_map(k, s), frobenius_matrix(f, 1));
    s.power = 2;
    EXPECT_EQ(make_map(k, s), frobenius_matrix(f, 2));
  }
}

TEST(Cyclic, RationalFixtureNorm) {
  const Algebra a = cyclic_algebra(sqrt2(), Q->from_int(3));
  EXPECT_EQ(a.dim(), 4u);
  const auto pts = random_points(Q, 4, 50, 5);
  for (const auto& x : pts) {
    const Scalar expected = x[0] * x[0] - Q->from_int(2) * x[1] * x[1] - Q->from_int(3) * x[2] * x[2] +
                            Q->from_int(6) * x[3] * x[3];
    EXPECT_EQ((*a.norm())(x), expected);
  }
  EXPECT_EQ((*a.norm())(qv({0, 0, 1, 0})), Q->from_int(-3));
  EXPECT_EQ(a.norm()->certificate(), AnisotropyCert::descent);
  EXPECT_TRUE(a.division_certificate());
  EXPECT_TRUE(verify_multiplicative(a, *a.norm()));
}

TEST(Cyclic, ContainsK) {
  const CyclicExtension e = sqrt2();
  const Algebra a = cyclic_algebra(e, Q->from_int(3));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      Vector expect = e.k.basis_product(i, j);
      expect.resize(4, Q->zero());
      EXPECT_EQ(a.basis_product(i, j), expect);
    }
  EXPECT_THROW(cyclic_algebra(e, Q->zero()), MathError);
}

TEST(Cyclic, FiniteHasZeroDivisors) {
  const Algebra a = cyclic_algebra(finite_cyclic_extension(Field::extension(3, 2)), Field::prime(3)->from_int(2));
  EXPECT_EQ(a.dim(), 4u);
  const auto vs = all_vectors(a.field(), 4);
  bool found = false;
  for (std::size_t i = 1; i < vs.size() && !found; ++i)
    for (std::size_t j = 1; j < vs.size() && !found; ++j) found = is_zero(a.product(vs[i], vs[j]));
  EXPECT_TRUE(found);
  EXPECT_EQ(a.norm()->certificate(), AnisotropyCert::unknown);
  EXPECT_TRUE(verify_multiplicative(a, *a.norm()));
}

TEST(Cyclic, RejectsBadExtensions) {
  EXPECT_THROW(rational_cyclic_extension({mpq_class(-4), mpq_class(0), mpq_class(1)}, diag(Q, {1, -1})), MathError);
  EXPECT_THROW(rational_cyclic_extension({mpq_class(-2), mpq_class(0), mpq_class(1)}, diag(Q, {1, 1})), MathError);
}

TEST(Maps, QuaternionExamples) {
  const Algebra h = quaternions();
  const Matrix inner_i = make_map(h, {MapSpec::Kind::inner, 1, qv({0, 1, 0, 0}), {}});
  EXPECT_EQ(inner_i, diag(Q, {1, 1, -1, -1}));
  EXPECT_EQ(make_map(h, {MapSpec::Kind::reflection, 1, qv({0, 1, 0, 0}), {}}), inner_i);
  EXPECT_EQ(make_map(h, {MapSpec::Kind::conjugation, 1, {}, {}}), diag(Q, {1, -1, -1, -1}));
  const Vector q = qv({1, 2, -1, 3});
  const Vector qinv = *element_inverse(h, q);
  EXPECT_EQ(make_map(h, {MapSpec::Kind::inner, 1, q, {}}) * make_map(h, {MapSpec::Kind::inner, 1, qinv, {}}),
            Matrix::identity(Q, 4));
  EXPECT_THROW(make_map(h, {MapSpec::Kind::inner, 1, qv({0, 0, 0, 0}), {}}), MathError);
  EXPECT_THROW(make_map(h, {MapSpec::Kind::reflection, 1, qv({1, 1, 0, 0}), {}}), MathError);
  // A quadratic field's conjugation is its Frobenius; a cubic field has no quadratic norm.
  const FieldPtr f9 = Field::extension(3, 2);
  EXPECT_EQ(make_map(extension_as_algebra(f9), {MapSpec::Kind::conjugation, 1, {}, {}}), frobenius_matrix(f9, 1));
  EXPECT_THROW(make_map(extension_as_algebra(Field::extension(3, 3)), {MapSpec::Kind::conjugation, 1, {}, {}}),
               MathError);
}
