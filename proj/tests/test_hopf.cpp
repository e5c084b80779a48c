#include "qtangent/hopf.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qtangent;
using Q = Rational;
using E = HopfElement<Q>;

namespace {

std::shared_ptr<const FiniteGroup> grp(const std::string& name) {
  return std::make_shared<const FiniteGroup>(named_group(name));
}

E random_elem(std::mt19937& rng, Basis b, std::size_t n) {
  std::uniform_int_distribution<long> c(-3, 3);
  E x(b);
  for (std::size_t i = 0; i < n; ++i) x.add(i, Q(c(rng)));
  return x;
}

std::size_t idx(const FiniteGroup& g, std::vector<std::vector<long>> cycles) {
  return g.index_of(Perm::from_cycles(g.degree(), cycles));
}

// (id (x) f) applied leg-wise to a tensor, for f = counit.
E counit_left(const HopfPair<Q>& p, const TensorElement<Q>& t) {
  E r(t.right());
  for (const auto& [k, c] : t.terms()) r.add(k.second, c * p.counit(E(t.left(), k.first)));
  return r;
}

} // namespace

TEST(Hopf, CoproductExamples) {
  HopfPair<Q> p(grp("S3"));
  auto dg = p.coproduct(E(Basis::Group, 3));
  ASSERT_EQ(dg.terms().size(), 1U);
  EXPECT_EQ(dg.terms().begin()->first, std::make_pair(std::size_t{3}, std::size_t{3}));

  HopfPair<Q> z2(grp("Z2"));
  auto d = z2.coproduct(E(Basis::Function, 0));
  TensorElement<Q> expect(Basis::Function, Basis::Function);
  expect.add(0, 0, Q(1));
  expect.add(1, 1, Q(1));
  EXPECT_EQ(d, expect);
}

TEST(Hopf, AxiomsOnRandomElements) {
  std::mt19937 rng(1);
  for (const auto& name : {"S3", "Q8", "Z4"}) {
    HopfPair<Q> p(grp(name));
    const std::size_t n = p.dim();
    for (Basis b : {Basis::Group, Basis::Function}) {
      for (int t = 0; t < 20; ++t) {
        E x = random_elem(rng, b, n);
        auto dx = p.coproduct(x);
        EXPECT_EQ(counit_left(p, dx), x);
        // antipode law m(S (x) id) Delta = eta eps
        E m(b);
        for (const auto& [k, c] : dx.terms()) m += c * p.product(p.antipode(E(b, k.first)), E(b, k.second));
        EXPECT_EQ(m, p.counit(x) * p.one(b));
        EXPECT_EQ(p.antipode(p.antipode(x)), x);
        // coassociativity via the second iterated coproduct on basis legs
        for (const auto& [i, c] : x.terms()) {
          std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Q> lhs, rhs, it2;
          p.for_each_coproduct(b, i, [&](std::size_t u, std::size_t v) {
            p.for_each_coproduct(b, u, [&](std::size_t u1, std::size_t u2) { lhs[{u1, u2, v}] += Q(1); });
            p.for_each_coproduct(b, v, [&](std::size_t v1, std::size_t v2) { rhs[{u, v1, v2}] += Q(1); });
          });
          p.for_each_coproduct2(b, i, [&](std::size_t a, std::size_t bb, std::size_t cc) { it2[{a, bb, cc}] += Q(1); });
          EXPECT_EQ(lhs, rhs);
          EXPECT_EQ(lhs, it2);
        }
      }
    }
  }
}

TEST(Hopf, ProductsAndPairingDuality) {
  auto g = grp("S3");
  HopfPair<Q> p(g);
  std::size_t t12 = idx(*g, {{1, 2}}), c123 = idx(*g, {{1, 2, 3}});
  EXPECT_EQ(p.product(E(Basis::Group, t12), E(Basis::Group, c123)),
            E(Basis::Group, g->index_of(g->element(t12) * g->element(c123))));
  EXPECT_TRUE(p.product(E(Basis::Function, 1), E(Basis::Function, 2)).is_zero());
  EXPECT_EQ(p.pairing(E(Basis::Group, 4), E(Basis::Function, 4)), Q(1));
  EXPECT_THROW(p.pairing(E(Basis::Group, 1), E(Basis::Group, 1)), SideMismatch);
  EXPECT_THROW(p.product(E(Basis::Group, 1), E(Basis::Function, 1)), SideMismatch);

  std::mt19937 rng(2);
  for (int t = 0; t < 30; ++t) {
    E x = random_elem(rng, Basis::Group, 6), y = random_elem(rng, Basis::Group, 6);
    E a = random_elem(rng, Basis::Function, 6);
    TensorElement<Q> xy(Basis::Group, Basis::Group);
    xy.add(x, y);
    EXPECT_EQ(p.pairing(p.product(x, y), a), p.pairing(xy, p.coproduct(a)));
    EXPECT_EQ(p.pairing(p.antipode(x), a), p.pairing(x, p.antipode(a)));
    E b = random_elem(rng, Basis::Function, 6);
    TensorElement<Q> ab(Basis::Function, Basis::Function);
    ab.add(a, b);
    EXPECT_EQ(p.pairing(x, p.product(a, b)), p.pairing(p.coproduct(x), ab));
  }
}

TEST(QuantumDouble, ActionExamples) {
  auto g = grp("S3");
  QuantumDouble<Q> qd(HopfPair<Q>(g), Side::Functions);
  std::size_t t12 = idx(*g, {{1, 2}}), t13 = idx(*g, {{1, 3}}), c123 = idx(*g, {{1, 2, 3}});
  auto x = [&](std::size_t k) { return E(Basis::Group, k) - E(Basis::Group, 0); };
  EXPECT_EQ(qd.act_h(E(Basis::Group, c123), x(t12)), x(t13));
  EXPECT_EQ(qd.act_a(E(Basis::Function, t12), x(t12)), x(t12));
  EXPECT_TRUE(qd.act_a(E(Basis::Function, t13), x(t12)).is_zero());
  EXPECT_THROW(qd.act_h(E(Basis::Group, c123), E(Basis::Group, t12)), InputError);
  EXPECT_EQ(qd.keps_basis().size(), 5U);
  for (const auto& v : qd.keps_basis()) EXPECT_TRUE(is_zero(qd.hopf().counit(v)));

  std::mt19937 rng(4);
  for (Side side : {Side::Functions, Side::GroupAlgebra}) {
    QuantumDouble<Q> d(HopfPair<Q>(g), side);
    for (int t = 0; t < 20; ++t) {
      E h = random_elem(rng, d.hb(), 6), a = random_elem(rng, d.ab(), 6);
      E y = d.keps_basis()[static_cast<std::size_t>(t) % 5] + Q(2) * d.keps_basis()[(static_cast<std::size_t>(t) + 2) % 5];
      EXPECT_TRUE(is_zero(d.hopf().counit(d.act_h(h, y))));
      EXPECT_TRUE(is_zero(d.hopf().counit(d.act_a(a, y))));
    }
  }
}

TEST(QuantumDouble, GroupAlgebraSideActions) {
  auto g = grp("S3");
  QuantumDouble<Q> qd(HopfPair<Q>(g), Side::GroupAlgebra);
  // H = C(G): u |> x = x(u .) - x(u) 1 for x a function; adjoint action of H is trivial on ker(eps) elements of a class-invariant form
  for (std::size_t u = 0; u < 6; ++u)
    for (const auto& x : qd.keps_basis()) {
      E expect(Basis::Function);
      for (std::size_t w = 0; w < 6; ++w) expect.add(w, x.coeff(g->mul(u, w)));
      expect -= x.coeff(u) * qd.hopf().one(Basis::Function);
      EXPECT_EQ(qd.act_a(E(Basis::Group, u), x), expect);
    }
}

TEST(QuantumDouble, UnitAndAssociativity) {
  auto g = grp("S3");
  std::mt19937 rng(8);
  for (Side side : {Side::Functions, Side::GroupAlgebra}) {
    QuantumDouble<Q> qd(HopfPair<Q>(g), side);
    std::uniform_int_distribution<std::size_t> pick(0, 5);
    for (std::size_t h = 0; h < 6; ++h) {
      DoubleElement<Q> hp(qd.hb(), qd.ab());
      hp.add(E(qd.hb(), h), qd.hopf().one(qd.ab()));
      EXPECT_EQ(qd.product(qd.unit(), hp), hp);
      EXPECT_EQ(qd.product(hp, qd.unit()), hp);
    }
    for (int t = 0; t < 10; ++t) {
      auto a = qd.pure(pick(rng), pick(rng)), b = qd.pure(pick(rng), pick(rng)), c = qd.pure(pick(rng), pick(rng));
      EXPECT_EQ(qd.product(qd.product(a, b), c), qd.product(a, qd.product(b, c)));
    }
  }
}

TEST(QuantumDouble, ModuleLawFullBases) {
  for (const auto& name : {"Z2", "S3", "Q8"})
    for (Side side : {Side::Functions, Side::GroupAlgebra}) {
      QuantumDouble<Q> qd(HopfPair<Q>(grp(name)), side);
      EXPECT_FALSE(double_module_law(qd).has_value()) << name;
    }
}

TEST(Schroedinger, ExamplesAndModuleLaw) {
  auto g = grp("S3");
  QuantumDouble<Q> qd(HopfPair<Q>(g), Side::Functions);
  // g |> delta_k = <g^{-1}, delta_u> delta_v over uv = k, i.e. delta_{g k}
  for (std::size_t x = 0; x < 6; ++x)
    for (std::size_t k = 0; k < 6; ++k)
      EXPECT_EQ(qd.schroedinger_h(E(Basis::Group, x), E(Basis::Function, k)), E(Basis::Function, g->mul(x, k)));
  EXPECT_EQ(qd.schroedinger(qd.unit(), E(Basis::Function, 3)), E(Basis::Function, 3));
  for (Side side : {Side::Functions, Side::GroupAlgebra}) {
    QuantumDouble<Q> d(HopfPair<Q>(g), side);
    for (std::size_t h1 = 0; h1 < 6; ++h1)
      for (std::size_t a1 = 0; a1 < 6; ++a1)
        for (std::size_t h2 = 0; h2 < 6; h2 += 2)
          for (std::size_t a2 = 0; a2 < 6; a2 += 3)
            for (std::size_t t = 0; t < 6; ++t) {
              E a(d.ab(), t);
              auto lhs = d.schroedinger(d.product(d.pure(h1, a1), d.pure(h2, a2)), a);
              auto rhs = d.schroedinger(d.pure(h1, a1), d.schroedinger(d.pure(h2, a2), a));
              ASSERT_EQ(lhs, rhs) << to_string(side);
            }
  }
}
