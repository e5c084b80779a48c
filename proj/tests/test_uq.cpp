#include "qtangent/uq_sl2.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qtangent;
using namespace qtangent::uq;

namespace {

RatFuncS q() { return RatFuncS::q(); }
RatFuncS qp(long k) { return RatFuncS::q_pow(k); }

PBWElement random_element(std::mt19937& rng, unsigned terms = 3) {
  std::uniform_int_distribution<int> exp(0, 2), kexp(-2, 2), coef(-3, 3);
  PBWElement x;
  for (unsigned t = 0; t < terms; ++t)
    x.add({static_cast<unsigned>(exp(rng)), 2 * kexp(rng), static_cast<unsigned>(exp(rng))},
          RatFuncS(coef(rng)) * qp(kexp(rng)));
  return x;
}

/// Pairs a tensor against rho^i_j (x) rho^k_l through the spin-1/2 representation on each leg.
RatFuncS pair_tensor(const PBWTensor& t, Letter u, Letter v) {
  RatFuncS r;
  const Rep rho = spin_half();
  for (const auto& [k, c] : t.terms())
    r += c * represent(rho, PBWElement::mono(k.first))(u.i, u.j) *
         represent(rho, PBWElement::mono(k.second))(v.i, v.j);
  return r;
}

} // namespace

TEST(Pbw, DefiningRelations) {
  const auto e = PBWElement::E(), f = PBWElement::F(), k = PBWElement::K();
  const auto cartan = (q() - qp(-1)).inverse() * (PBWElement::K(2) - PBWElement::K(-2));
  EXPECT_EQ(e * f, f * e + cartan);
  EXPECT_EQ(k * e, q() * (e * k));
  EXPECT_EQ(k * f, qp(-1) * (f * k));
  EXPECT_EQ(k * PBWElement::K(-1), PBWElement(1));
  EXPECT_TRUE((e * f).counit().is_zero());
  EXPECT_EQ(PBWElement::K_half(1) * PBWElement::K_half(1), k);
}

TEST(Pbw, WordParsing) {
  EXPECT_EQ(PBWElement::from_word("E F"), PBWElement::E() * PBWElement::F());
  EXPECT_EQ(PBWElement::from_word("K^1/2 K^1/2 E^2"), PBWElement::K() * PBWElement::E() * PBWElement::E());
  EXPECT_EQ(PBWElement::from_word("K^-1 K"), PBWElement(1));
  EXPECT_EQ(PBWElement::from_word("K^1/2").terms().begin()->first.k2, 1);
  EXPECT_THROW(PBWElement::from_word("X"), InputError);
  EXPECT_THROW(PBWElement::from_word("E^-1"), InputError);
  EXPECT_THROW(PBWElement::from_word("K^1/3"), InputError);
}

TEST(Pbw, AssociativeAndFaithfulOnSamples) {
  std::mt19937 rng(7);
  const Rep big = tensor(tensor(spin_half(), spin_half()), spin_half());
  for (int trial = 0; trial < 10; ++trial) {
    auto a = random_element(rng), b = random_element(rng), c = random_element(rng);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(represent(big, a * b), represent(big, a) * represent(big, b));
  }
}

TEST(Pbw, CoproductIsMultiplicativeAndAntipodeIsInverse) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 6; ++trial) {
    auto a = random_element(rng, 2), b = random_element(rng, 2);
    EXPECT_EQ(coproduct(a * b), coproduct(a) * coproduct(b));
    EXPECT_EQ(antipode(a * b), antipode(b) * antipode(a));
  }
  for (unsigned f = 0; f < 3; ++f)
    for (int k2 = -4; k2 <= 4; k2 += 2)
      for (unsigned e = 0; e < 3; ++e) {
        const auto x = PBWElement::mono({f, k2, e});
        const auto dx = coproduct(x);
        PBWElement left, right;
        for (const auto& [k, c] : dx.terms()) {
          left += c * (antipode(PBWElement::mono(k.first)) * PBWElement::mono(k.second));
          right += c * (PBWElement::mono(k.first) * antipode(PBWElement::mono(k.second)));
        }
        EXPECT_EQ(left, PBWElement(x.counit()));
        EXPECT_EQ(right, PBWElement(x.counit()));
      }
}

TEST(Pbw, HalfIntegerKHasNoSpinHalfValue) {
  EXPECT_THROW(represent(spin_half(), PBWElement::K_half(1)), InputError);
  EXPECT_THROW(pair_word(PBWElement::K_half(3), AWord::parse("a")), InputError);
}

TEST(Pairing, LettersAndWords) {
  EXPECT_EQ(pair_word(PBWElement::K(2), AWord::parse("a")), q());
  EXPECT_EQ(pair_word(PBWElement::E(), AWord::parse("b")), RatFuncS(1));
  EXPECT_TRUE(pair_word(PBWElement::E(), AWord::parse("a")).is_zero());
  EXPECT_TRUE(pair_word(PBWElement::E(), AWord::parse("c")).is_zero());
  EXPECT_EQ(pair_word(PBWElement::F(), AWord::parse("c")), RatFuncS(1));
  EXPECT_EQ(pair_word(PBWElement::E() * PBWElement::F(), AWord(RatFuncS(1))), RatFuncS(0));
  EXPECT_EQ(pair_word(PBWElement::K(3), AWord(RatFuncS(1))), RatFuncS(1));

  std::mt19937 rng(3);
  const char names[] = "abcd";
  for (int trial = 0; trial < 5; ++trial) {
    auto x = random_element(rng);
    const auto dx = coproduct(x);
    for (char u : std::string(names))
      for (char v : std::string(names))
        EXPECT_EQ(pair_word(x, AWord::parse(std::string{u, v})), pair_tensor(dx, letter(u), letter(v)));
  }
}

TEST(Pairing, AntipodeLetters) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    auto x = random_element(rng);
    for (unsigned i = 0; i < 2; ++i)
      for (unsigned j = 0; j < 2; ++j)
        EXPECT_EQ(pair_word(x, AWord::antipode_coord(i, j)), pair_word(antipode(x), AWord::coord(i, j)));
  }
}

TEST(Casimir, CentralWithScalarSpinHalfValue) {
  const auto c = q_casimir();
  for (const auto& g : {PBWElement::E(), PBWElement::F(), PBWElement::K(), PBWElement::K_half(1)})
    EXPECT_TRUE(commutator(c, g).is_zero());
  EXPECT_EQ(represent(spin_half(), c), (qp(2) + qp(-2)) * Matrix<RatFuncS>::identity(2));
  EXPECT_EQ(c.counit(), q() + qp(-1));
  EXPECT_TRUE(casimir_check().passed);
}

TEST(Consistency, SixteenEntriesAndNegativeControl) {
  auto ok = verify_su2_consistency();
  EXPECT_TRUE(ok.passed);
  EXPECT_EQ(ok.detail, "16/16 entries");
  EXPECT_FALSE(ok.witness);

  auto bad = verify_su2_consistency(RatFuncS(1));
  EXPECT_FALSE(bad.passed);
  ASSERT_TRUE(bad.witness);
  EXPECT_EQ(bad.witness->indices.size(), 4u);

  // Hand-computed entry: (R21 R)_{(11),(11)} = q.
  const auto r = r_matrix();
  EXPECT_EQ((flip_legs(r) * r)(0, 0), q());
}

TEST(Generators, CounitsSpanAndFirstEntry) {
  const auto t = su2_q_generators();
  EXPECT_EQ(t.x[xi(0, 0)], PBWElement::K(2) - PBWElement(1));
  for (const auto& x : t.x) EXPECT_TRUE(x.counit().is_zero());
  EXPECT_EQ(t.basis().dim(), 4u);
}

TEST(Structure, DualRouteBracketAgrees) {
  const auto t = su2_q_generators();
  const auto adj = bracket_via_adjoint(t.basis());
  const auto rm = bracket_via_r_matrix(t.r);
  auto cmp = compare_brackets(adj, rm);
  EXPECT_TRUE(cmp.passed);
  EXPECT_EQ(cmp.detail, "64/64 structure constants");
  for (std::size_t p = 0; p < 4; ++p)
    for (std::size_t m = 0; m < 4; ++m) EXPECT_EQ(adj(m, 5 * p), rm(m, 5 * p));
  EXPECT_FALSE(adj.is_zero());
}

TEST(Structure, BraidingMatchesAdjointFormula) {
  const auto t = su2_q_generators();
  EXPECT_EQ(braiding_via_adjoint(t.basis()), t.braiding);
}

TEST(Structure, QLieRAndBraidRelation) {
  const auto t = su2_q_generators();
  EXPECT_TRUE(verify_qlier(t).passed);
  EXPECT_TRUE(verify_braid_relation(t.braiding).passed);

  auto broken = t;
  broken.braiding(0, 5) += RatFuncS(1);
  auto r = verify_qlier(broken);
  EXPECT_FALSE(r.passed);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->indices[0], 2u);
  EXPECT_FALSE(verify_braid_relation(broken.braiding).passed);

  auto wrong_bracket = t;
  wrong_bracket.bracket(0, 1) += RatFuncS(1);
  auto r1 = verify_qlier(wrong_bracket);
  EXPECT_FALSE(r1.passed);
  EXPECT_EQ(r1.witness->indices[0], 1u);
}

TEST(Structure, BracketEqualsProductMinusBraidedProduct) {
  const auto t = su2_q_generators();
  for (std::size_t p = 0; p < 4; ++p)
    for (std::size_t r = 0; r < 4; ++r) {
      PBWElement braided;
      for (std::size_t m = 0; m < 16; ++m) braided += t.braiding(m, 4 * p + r) * (t.x[m / 4] * t.x[m % 4]);
      PBWElement bracket;
      for (std::size_t m = 0; m < 4; ++m) bracket += t.bracket(m, 4 * p + r) * t.x[m];
      EXPECT_EQ(t.x[p] * t.x[r] - braided, bracket);
    }
}

TEST(CasimirTangent, SpanEqualsGenerators) {
  const auto t = su2_q_generators();
  auto r = verify_lc_tangent(t);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.detail, "dim L_C = 4");
  for (const auto& x : lc_tangent_sl2()) EXPECT_TRUE(x.counit().is_zero());
}

TEST(QTrace, BoundedDegreeAndNegativeControl) {
  const auto t = su2_q_generators();
  const RatFuncS n = qp(2) / ((qp(3) - RatFuncS(1)) * (q() - RatFuncS(1)));
  EXPECT_EQ(qtrace().counit(), (q() + qp(-1)) * n);

  auto d3 = qtrace_inner_check(t, 3);
  EXPECT_TRUE(d3.passed);
  EXPECT_EQ(d3.detail, "partial (degree <= 3): 336/336 pairings");
  auto d2 = qtrace_inner_check(t, 2);
  EXPECT_TRUE(d2.passed);
  EXPECT_EQ(d2.detail, "partial (degree <= 2): 80/80 pairings");

  auto bad = qtrace_inner_check(t, 3, RatFuncS(1));
  EXPECT_FALSE(bad.passed);
  EXPECT_TRUE(bad.witness);
  EXPECT_THROW(qtrace_inner_check(t, 0), InputError);
}

TEST(ClassicalLimit, FirstOrderSl2AndNonFlipBraiding) {
  const auto t = su2_q_generators();
  const auto cl = classical_limit(t);
  EXPECT_TRUE(cl.zeroth_order_vanishes);
  ASSERT_TRUE(cl.kappa);
  EXPECT_FALSE(cl.kappa->is_zero());
  EXPECT_TRUE(cl.kappa_uniform);
  EXPECT_TRUE(cl.trace_central);
  EXPECT_TRUE(cl.lie_bracket);
  EXPECT_TRUE(cl.raw_braiding_is_flip);
  EXPECT_TRUE(cl.braiding_not_flip);
  ASSERT_TRUE(cl.non_flip_column);
  EXPECT_EQ(*cl.non_flip_column / 4, 3u);
  EXPECT_TRUE(cl.correction_antisymmetric);
  EXPECT_TRUE(cl.passed());

  // Traceless block of the rescaled braiding is the flip.
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t r = 0; r < 16; ++r)
        EXPECT_EQ(cl.rescaled_braiding(r, 4 * a + b), r == 4 * b + a ? Rational(1) : Rational(0));
}

TEST(ClassicalLimit, DetectsNonUniformScalar) {
  auto t = su2_q_generators();
  // [x12, x21] gets an extra first-order x12 component: breaks the sl2 pattern.
  t.bracket(xi(0, 1), 4 * xi(0, 1) + xi(1, 0)) += RatFuncS::s() - RatFuncS(1);
  t.bracket(xi(0, 1), 4 * xi(1, 0) + xi(0, 1)) -= RatFuncS::s() - RatFuncS(1);
  const auto cl = classical_limit(t);
  EXPECT_FALSE(cl.kappa_uniform);
  EXPECT_FALSE(cl.passed());
}

TEST(ClassicalLimit, PoleIsHardError) {
  auto t = su2_q_generators();
  t.bracket(0, 0) = (RatFuncS::s() - RatFuncS(1)).inverse();
  EXPECT_THROW(classical_limit(t), PoleError);
  EXPECT_FALSE(classical_limit_check(t).passed);
}

TEST(QSuite, AllPassAndSelection) {
  auto all = run_qsuite();
  ASSERT_EQ(all.size(), qsuite_checks().size());
  for (const auto& c : all) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  auto one = run_qsuite({"qlier"});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].name, "qlier");
  auto d2 = run_qsuite({"qtrace"}, 2);
  ASSERT_EQ(d2.size(), 1u);
  EXPECT_TRUE(d2[0].passed);
  EXPECT_THROW(run_qsuite({"nope"}), InputError);
}
