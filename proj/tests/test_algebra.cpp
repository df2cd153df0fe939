#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "twistkit/builders.hpp"

using namespace twistkit;

namespace {

const FieldPtr Q = Field::rationals();

Vector qv(std::initializer_list<long long> xs) {
  Vector v;
  for (auto x : xs) v.push_back(Q->from_int(x));
  return v;
}

Vector e(const Algebra& a, std::size_t i) { return basis_vector(a.field(), a.dim(), i); }

std::size_t zero_divisor_pairs(const Algebra& a) {
  const auto vs = all_vectors(a.field(), a.dim());
  std::size_t count = 0;
  for (std::size_t i = 1; i < vs.size(); ++i)
    for (std::size_t j = 1; j < vs.size(); ++j)
      if (is_zero(a.product(vs[i], vs[j]))) ++count;
  return count;
}

}  // namespace

TEST(Multiply, QuaternionTable) {
  const Algebra h = quaternions();
  EXPECT_EQ(h.product(e(h, 1), e(h, 2)), e(h, 3));
  EXPECT_EQ(h.product(e(h, 2), e(h, 1)), scale(Q->from_int(-1), e(h, 3)));
  EXPECT_EQ(h.product(e(h, 1), e(h, 1)), scale(Q->from_int(-1), e(h, 0)));
  const Vector x = qv({1, 2, -3, 4});
  EXPECT_EQ(h.product(*h.unit(), x), x);
  EXPECT_THROW(h.product(qv({1}), x), MathError);
}

TEST(Multiply, F9Table) {
  const Algebra f9 = extension_as_algebra(Field::extension(3, 2));
  const auto f3 = f9.field();
  EXPECT_EQ(f9.product(e(f9, 1), e(f9, 1)), scale(f3->from_int(2), e(f9, 0)));
}

TEST(Multiply, Bilinear) {
  const Algebra o = octonions();
  const auto pts = random_points(Q, 8, 60, 11);
  for (std::size_t k = 0; k + 2 < pts.size(); k += 3) {
    const Scalar a = Q->from_rational(mpq_class(static_cast<long>(k) - 7, 3)), b = Q->from_int(5);
    const Vector& x = pts[k];
    const Vector& x2 = pts[k + 1];
    const Vector& y = pts[k + 2];
    EXPECT_EQ(o.product(add(scale(a, x), scale(b, x2)), y),
              add(scale(a, o.product(x, y)), scale(b, o.product(x2, y))));
    EXPECT_EQ(o.product(y, add(scale(a, x), scale(b, x2))),
              add(scale(a, o.product(y, x)), scale(b, o.product(y, x2))));
  }
}

TEST(MulMatrices, Examples) {
  const Algebra h = quaternions();
  EXPECT_EQ(left_mul_matrix(h, *h.unit()), Matrix::identity(Q, 4));
  EXPECT_TRUE(left_mul_matrix(h, zero_vector(Q, 4)).is_zero());
  const Matrix li = left_mul_matrix(h, e(h, 1));
  EXPECT_EQ(li.column(0), e(h, 1));
  EXPECT_EQ(li.column(1), scale(Q->from_int(-1), e(h, 0)));
  EXPECT_EQ(li.column(2), e(h, 3));
  EXPECT_EQ(li.column(3), scale(Q->from_int(-1), e(h, 2)));
  const Vector x = qv({2, -1, 0, 3}), y = qv({1, 1, 5, -2});
  EXPECT_EQ(left_mul_matrix(h, x) * y, h.product(x, y));
  EXPECT_EQ(right_mul_matrix(h, y) * x, h.product(x, y));
}

TEST(FindUnit, Examples) {
  const Algebra h = quaternions();
  EXPECT_EQ(find_unit(h), qv({1, 0, 0, 0}));
  const Algebra zero(Q, 1, {Q->zero()}, "zero");
  EXPECT_FALSE(find_unit(zero));
  const Algebra o = octonions();
  const auto u = find_unit(o);
  ASSERT_TRUE(u);
  EXPECT_EQ(left_mul_matrix(o, *u), Matrix::identity(Q, 8));
  EXPECT_EQ(right_mul_matrix(o, *u), Matrix::identity(Q, 8));
}

TEST(Brackets, Examples) {
  const Algebra h = quaternions();
  EXPECT_EQ(commutator(h, e(h, 1), e(h, 2)), scale(Q->from_int(2), e(h, 3)));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 4; ++k) EXPECT_TRUE(is_zero(associator(h, e(h, i), e(h, j), e(h, k))));
  const Algebra o = octonions();
  EXPECT_FALSE(is_zero(associator(o, e(o, 1), e(o, 2), e(o, 4))));
  EXPECT_FALSE(is_associative(o));
  EXPECT_TRUE(is_associative(h));
}

TEST(Nucleus, Dimensions) {
  const Algebra h = quaternions();
  for (auto side : {NucleusSide::left, NucleusSide::middle, NucleusSide::right, NucleusSide::all})
    EXPECT_EQ(nucleus(h, side).dim(), 4u);
  const Algebra o = octonions();
  const Subspace n = nucleus(o, NucleusSide::all);
  ASSERT_EQ(n.dim(), 1u);
  EXPECT_TRUE(span_coordinates(Q, n.basis, *o.unit()));
  EXPECT_EQ(nucleus(extension_as_algebra(Field::extension(3, 2)), NucleusSide::all).dim(), 2u);
  EXPECT_EQ(center(h).dim(), 1u);
}

TEST(Nucleus, ClosedUnderProduct) {
  const Algebra c = cyclic_algebra(finite_cyclic_extension(Field::extension(3, 2)), Field::prime(3)->from_int(2));
  const FieldPtr f = c.field();
  for (auto side : {NucleusSide::left, NucleusSide::middle, NucleusSide::right}) {
    const Subspace n = nucleus(c, side);
    for (const auto& u : n.basis)
      for (const auto& v : n.basis) EXPECT_TRUE(span_coordinates(f, n.basis, c.product(u, v)));
  }
}

TEST(Isotope, Examples) {
  const Algebra h = quaternions();
  const Matrix id = Matrix::identity(Q, 4);
  EXPECT_TRUE(isotope(h, id, id, id).same_table(h));
  const Matrix conj = conjugation_matrix(h);
  // xbar ybar = conj(yx): the (conj, conj, id) isotope is the opposite algebra
  // followed by conjugation, and applying conj once more gives the opposite.
  EXPECT_TRUE(isotope(h, conj, conj, id).same_table(isotope(opposite(h), id, id, conj)));
  EXPECT_TRUE(isotope(h, conj, conj, conj).same_table(opposite(h)));
  EXPECT_FALSE(isotope(h, conj, conj, id).same_table(opposite(h)));
  const Matrix f = left_mul_matrix(h, qv({1, 1, 0, 0}));
  const Matrix g = right_mul_matrix(h, qv({2, 0, 1, 0}));
  EXPECT_TRUE(opposite(isotope(h, f, g, id)).same_table(isotope(opposite(h), f, g, id)) ||
              opposite(isotope(h, f, g, id)).same_table(isotope(opposite(h), g, f, id)));
  EXPECT_THROW(isotope(h, Matrix(Q, 4, 4), id, id), MathError);
}

TEST(Opposite, Examples) {
  const Algebra h = quaternions();
  EXPECT_EQ(opposite(h).product(e(h, 1), e(h, 2)), scale(Q->from_int(-1), e(h, 3)));
  EXPECT_TRUE(opposite(opposite(h)).same_table(h));
  const Algebra f9 = extension_as_algebra(Field::extension(3, 2));
  EXPECT_TRUE(opposite(f9).same_table(f9));
}

TEST(Isotope, PreservesZeroDivisorCount) {
  const FieldPtr f3 = Field::prime(3);
  // Split algebra F_3 x F_3 and the field F_9.
  Algebra split(f3, 2, {f3->one(), f3->zero(), f3->zero(), f3->zero(), f3->zero(), f3->zero(), f3->zero(), f3->one()},
                "F3xF3");
  const Matrix f = Matrix::from_rows(f3, 2, {{f3->one(), f3->one()}, {f3->zero(), f3->one()}});
  const Matrix g = Matrix::from_rows(f3, 2, {{f3->from_int(2), f3->zero()}, {f3->one(), f3->one()}});
  const Matrix h = Matrix::from_rows(f3, 2, {{f3->zero(), f3->one()}, {f3->one(), f3->zero()}});
  for (const Algebra& a : {split, extension_as_algebra(Field::extension(3, 2))})
    EXPECT_EQ(zero_divisor_pairs(isotope(a, f, g, h)), zero_divisor_pairs(a));
  EXPECT_EQ(zero_divisor_pairs(split), 4u * 1 + 0u + 4u);  // (a,0)(0,b) both orders, a,b in {1,2}
}

TEST(Norm, EvalAndPolarize) {
  const Algebra h = quaternions();
  const NormForm& n = *h.norm();
  EXPECT_EQ(n(qv({2, 0, 0, 0})), Q->from_int(4));
  std::vector<Vector> args{e(h, 0), e(h, 1)};
  EXPECT_EQ(polarize(n, args), Q->zero());
  args = {qv({1, 2, 0, 0}), qv({3, 1, 0, 1})};
  EXPECT_EQ(polarize(n, args), Q->from_int(2 * (3 + 2)));
  const Algebra f9 = extension_as_algebra(Field::extension(3, 2));
  EXPECT_EQ((*f9.norm())({f9.field()->one(), f9.field()->one()}), f9.field()->from_int(2));
  EXPECT_THROW(polarize(n, std::vector<Vector>{e(h, 0)}), MathError);
}

TEST(Norm, PolarizationSymmetricAndAdditive) {
  const Algebra o = octonions();
  const auto pts = random_points(Q, 8, 6, 3);
  std::vector<Vector> two{pts[0], pts[1]};
  std::vector<Vector> swapped{pts[1], pts[0]};
  EXPECT_EQ(polarize(*o.norm(), two), polarize(*o.norm(), swapped));
  std::vector<Vector> sum{add(pts[0], pts[2]), pts[1]};
  std::vector<Vector> third{pts[2], pts[1]};
  EXPECT_EQ(polarize(*o.norm(), sum), polarize(*o.norm(), two) + polarize(*o.norm(), third));

  // Degree 3: reduced norm of a cubic extension over F_5, all 6 orders.
  const Algebra f125 = extension_as_algebra(Field::extension(5, 3));
  const auto vs = all_vectors(f125.field(), 3);
  for (std::size_t a : {7u, 31u, 100u})
    for (std::size_t b : {2u, 55u}) {
      std::vector<Vector> args{vs[a], vs[b], vs[(a + b) % vs.size()]};
      std::vector<std::size_t> perm{0, 1, 2};
      const Scalar ref = polarize(*f125.norm(), args);
      do {
        std::vector<Vector> p{args[perm[0]], args[perm[1]], args[perm[2]]};
        EXPECT_EQ(polarize(*f125.norm(), p), ref);
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

TEST(Similarity, Examples) {
  const Algebra h = quaternions();
  EXPECT_EQ(verify_similarity(*h.norm(), conjugation_matrix(h)), Q->one());
  EXPECT_EQ(verify_similarity(*h.norm(), Matrix::identity(Q, 4).scaled(Q->from_int(2))), Q->from_int(4));
  const FieldPtr f9 = Field::extension(3, 2);
  const Algebra k = extension_as_algebra(f9);
  EXPECT_EQ(verify_similarity(*k.norm(), frobenius_matrix(f9, 1)), k.field()->one());
  EXPECT_THROW(verify_similarity(*h.norm(), Matrix(Q, 4, 4)), MathError);
  Matrix skew = Matrix::identity(Q, 4);
  skew(0, 1) = Q->one();
  EXPECT_FALSE(verify_similarity(*h.norm(), skew));
}

TEST(Multiplicative, Examples) {
  const Algebra h = quaternions();
  EXPECT_TRUE(verify_multiplicative(h, *h.norm()));
  NormForm trace_sq = NormForm::from_evaluator(Q, 4, 2, NormForm::Kind::explicit_polynomial, [&](const Vector& x) {
    const Scalar t = trace(h, x);
    return t * t;
  });
  EXPECT_FALSE(verify_multiplicative(h, trace_sq));
  const Algebra k = extension_as_algebra(Field::extension(3, 2));
  EXPECT_TRUE(verify_multiplicative(k, *k.norm()));
}
