#include "qtangent/exact_fields.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qtangent;

namespace {

Rational rnd_rational(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
  return {num(rng), den(rng)};
}

Matrix<Rational> rnd_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int zero_bias) {
  Matrix<Rational> m(r, c);
  std::uniform_int_distribution<int> coin(0, 9);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (coin(rng) >= zero_bias) m(i, j) = rnd_rational(rng);
  return m;
}

RatFuncS rnd_ratfunc(std::mt19937& rng) {
  std::uniform_int_distribution<long> c(-3, 3);
  Polynomial n({Rational(c(rng)), Rational(c(rng)), Rational(c(rng))});
  Polynomial d({Rational(c(rng)), Rational(c(rng)), Rational(1)});
  if (d.is_zero()) d = Polynomial(1);
  return {n, d};
}

} // namespace

TEST(Rational, CanonicalForm) {
  Rational r(6, -4);
  EXPECT_EQ(r.str(), "-3/2");
  EXPECT_EQ(r.denominator(), 2);
  EXPECT_EQ(Rational::parse("10/4"), Rational(5, 2));
  EXPECT_THROW(Rational(1, 0), DivisionByZero);
  EXPECT_THROW(Rational(1) / Rational(0), DivisionByZero);
  EXPECT_THROW(Rational::parse("x"), InputError);
}

TEST(Polynomial, GcdAndDivision) {
  Polynomial x = Polynomial::x();
  Polynomial a = (x - Polynomial(1)) * (x + Polynomial(2));
  Polynomial b = (x - Polynomial(1)) * (x - Polynomial(3));
  EXPECT_EQ(gcd(a, b), x - Polynomial(1));
  auto [g, u, v] = extended_gcd(a, b);
  EXPECT_EQ(u * a + v * b, g);
  EXPECT_EQ(cyclotomic_polynomial(6).str(), "x^2-x+1");
  EXPECT_EQ(cyclotomic_polynomial(12).str(), "x^4-x^2+1");
}

TEST(Cyclotomic, RootOfUnityIdentities) {
  for (unsigned n : {2U, 3U, 5U, 7U}) {
    auto f = make_cyclotomic_field(n);
    Cyclotomic z = Cyclotomic::zeta(f, 1);
    Cyclotomic p(1), sum;
    for (unsigned i = 0; i < n; ++i) {
      sum += p;
      p *= z;
    }
    EXPECT_EQ(p, Cyclotomic(1)) << n;
    EXPECT_TRUE(sum.is_zero()) << n;
  }
}

TEST(Cyclotomic, InverseConjugateAndParse) {
  auto f = make_cyclotomic_field(12);
  Cyclotomic a = Cyclotomic::zeta(f, 1) + Cyclotomic(Rational(2, 3)) * Cyclotomic::zeta(f, 5);
  EXPECT_EQ(a * a.inverse(), Cyclotomic(1));
  EXPECT_EQ(a.conj().conj(), a);
  EXPECT_EQ(Cyclotomic::parse(a.str(), f), a);
  EXPECT_EQ(Cyclotomic::parse("-1/2", nullptr), Cyclotomic(Rational(-1, 2)));
}

TEST(Cyclotomic, MixedTowersRejected) {
  auto f4 = make_cyclotomic_field(4);
  auto f3 = make_cyclotomic_field(3);
  Cyclotomic i = Cyclotomic::zeta(f4, 1), w = Cyclotomic::zeta(f3, 1);
  EXPECT_THROW(i + w, MixedTowerError);
  Matrix<Cyclotomic> m{{i, Cyclotomic(1)}, {w, Cyclotomic(0)}};
  EXPECT_THROW(rref(m), MixedTowerError);
  EXPECT_NO_THROW(i + Cyclotomic(3));
}

TEST(RatFuncS, SpecializeAndDerivative) {
  RatFuncS q = RatFuncS::q();
  RatFuncS f = (q * q - RatFuncS(1)) / (q - RatFuncS(1));
  EXPECT_EQ(f.specialize_s1(), Rational(2));
  EXPECT_THROW((RatFuncS(1) / (q - RatFuncS(1))).specialize_s1(), PoleError);
  EXPECT_THROW((RatFuncS(1) / (q - RatFuncS(1))).derivative_at_s1(), PoleError);
  EXPECT_EQ(q.derivative_at_s1(), Rational(2));
  EXPECT_TRUE(f.denominator().is_monic());
  EXPECT_EQ(f, q + RatFuncS(1));
}

TEST(RatFuncS, FieldAxiomsRandomized) {
  std::mt19937 rng(7);
  for (int t = 0; t < 40; ++t) {
    RatFuncS a = rnd_ratfunc(rng), b = rnd_ratfunc(rng), c = rnd_ratfunc(rng);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    if (!a.is_zero()) {
      EXPECT_EQ(a * a.inverse(), RatFuncS(1));
    }
    EXPECT_TRUE(gcd(a.numerator(), a.denominator()).is_constant() || a.is_zero());
  }
}

TEST(Rref, Examples) {
  Matrix<Rational> m{{1, 1}, {1, 1}};
  auto r = rref(m);
  EXPECT_EQ(r.rank, 1U);
  EXPECT_EQ(r.pivots, std::vector<std::size_t>{0});
  EXPECT_EQ(rank(Matrix<Rational>::identity(3)), 3U);
  EXPECT_EQ(rank(Matrix<Rational>{{0, 0}}), 0U);
}

TEST(Rref, Idempotent) {
  std::mt19937 rng(11);
  for (int t = 0; t < 30; ++t) {
    auto m = rnd_matrix(rng, 4 + t % 3, 5, 4);
    auto once = rref(m).reduced;
    EXPECT_EQ(rref(once).reduced, once);
  }
}

TEST(Kernel, Examples) {
  auto k = kernel(Matrix<Rational>{{1, 1}, {1, 1}});
  EXPECT_EQ(k, Subspace<Rational>(2, {{1, -1}}));
  EXPECT_EQ(kernel(Matrix<Rational>{{2, 1}, {1, 1}}).dim(), 0U);
  EXPECT_EQ(kernel(Matrix<Rational>(2, 3)), Subspace<Rational>::full(3));
}

TEST(Kernel, RandomVectorsAreAnnihilated) {
  std::mt19937 rng(3);
  for (int t = 0; t < 20; ++t) {
    auto m = rnd_matrix(rng, 3, 6, 3);
    auto k = kernel(m);
    EXPECT_EQ(k.dim() + rank(m), 6U);
    EXPECT_TRUE((m * k.basis().transpose()).is_zero());
  }
}

TEST(Subspace, MeetJoin) {
  Subspace<Rational> e1(2, {{1, 0}}), e2(2, {{0, 1}});
  EXPECT_EQ(subspace_meet(e1, e2).dim(), 0U);
  EXPECT_EQ(subspace_join(e1, e2), Subspace<Rational>::full(2));
  EXPECT_EQ(subspace_meet(e1, e1), e1);
  EXPECT_THROW(subspace_meet(e1, Subspace<Rational>::full(3)), SideMismatch);

  std::mt19937 rng(5);
  for (int t = 0; t < 30; ++t) {
    Subspace<Rational> u(rnd_matrix(rng, 1 + t % 4, 6, 5)), v(rnd_matrix(rng, 1 + (t / 4) % 4, 6, 5));
    auto meet = subspace_meet(u, v), join = subspace_join(u, v);
    EXPECT_EQ(meet.dim() + join.dim(), u.dim() + v.dim());
    EXPECT_TRUE(u.contains(meet));
    EXPECT_TRUE(v.contains(meet));
    EXPECT_TRUE(join.contains(u));
  }
}

TEST(Annihilator, DimensionsAndInvolution) {
  auto p = Matrix<Rational>::identity(5);
  EXPECT_EQ(annihilator(Subspace<Rational>::full(5), p).dim(), 0U);
  EXPECT_EQ(annihilator(Subspace<Rational>::zero(5), p), Subspace<Rational>::full(5));
  EXPECT_THROW(annihilator(Subspace<Rational>::zero(2), Matrix<Rational>{{1, 1}, {1, 1}}), DegeneratePairing);

  std::mt19937 rng(9);
  for (int t = 0; t < 20; ++t) {
    Matrix<Rational> pr = rnd_matrix(rng, 5, 5, 0);
    if (rank(pr) < 5) continue;
    Subspace<Rational> u(rnd_matrix(rng, 1 + t % 4, 5, 3));
    auto ann = annihilator(u, pr);
    EXPECT_EQ(ann.dim() + u.dim(), 5U);
    EXPECT_EQ(annihilator(ann, pr.transpose()), u);
  }
}

TEST(EchelonBuilder, MatchesDenseRank) {
  std::mt19937 rng(13);
  for (int t = 0; t < 20; ++t) {
    auto m = rnd_matrix(rng, 7, 5, 6);
    EchelonBuilder<Rational> eb(5);
    for (std::size_t i = 0; i < m.rows(); ++i) eb.add(m.row(i));
    EXPECT_EQ(eb.rank(), rank(m));
  }
}
