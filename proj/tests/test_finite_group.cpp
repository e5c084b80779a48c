#include "qtangent/character_table.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace qtangent;

namespace {

const std::vector<std::string> kCorpus{"Z2", "Z4", "Z6", "S3", "S4", "A4", "D4", "D5", "Q8", "klein-4"};

// Closure by repeated products of all known elements, independent of the BFS order.
std::size_t brute_closure(const std::vector<Perm>& gens, std::size_t deg) {
  std::set<Perm> s{Perm::identity(deg)};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Perm> cur(s.begin(), s.end());
    for (const auto& a : cur)
      for (const auto& b : gens)
        if (s.insert(a * b).second) grew = true;
  }
  return s.size();
}

} // namespace

TEST(Perm, CompositionIsLeftToRight) {
  Perm a = Perm::from_cycles(3, {{1, 2}}), b = Perm::from_cycles(3, {{1, 2, 3}});
  // 1 -a-> 2 -b-> 3
  EXPECT_EQ((a * b)(0), 2U);
  EXPECT_EQ(Perm::from_cycles(3, {{1, 2, 3}}).str(), "(1,2,3)");
  EXPECT_EQ(Perm::identity(4).str(), "()");
  EXPECT_THROW(Perm({0, 0, 1}), InputError);
  EXPECT_THROW(Perm::from_cycles(3, {{1, 4}}), InputError);
}

TEST(FiniteGroup, OrdersMatchBruteClosure) {
  FiniteGroup s3(3, {Perm::from_cycles(3, {{1, 2}}), Perm::from_cycles(3, {{1, 2, 3}})});
  EXPECT_EQ(s3.order(), 6U);
  EXPECT_EQ(preset_group("cyclic", 4).order(), 4U);
  auto q8 = named_group("Q8");
  EXPECT_EQ(q8.order(), 8U);
  EXPECT_EQ(brute_closure(q8.generators(), 8), 8U);
  EXPECT_FALSE(q8.is_abelian());
  for (const auto& name : kCorpus) {
    auto g = named_group(name);
    EXPECT_EQ(g.order(), brute_closure(g.generators(), g.degree())) << name;
  }
  EXPECT_EQ(named_group("D4").order(), 8U);
  EXPECT_EQ(named_group("D5").order(), 10U);
  EXPECT_EQ(named_group("A4").order(), 12U);
}

TEST(FiniteGroup, CapAndSpecErrors) {
  EXPECT_THROW(preset_group("symmetric", 7, 1000), SizeError);
  EXPECT_THROW(group_from_json(nlohmann::json::parse(R"({"degree":3,"generators":[[1,1,2]]})")), InputError);
  EXPECT_THROW(group_from_json(nlohmann::json::parse(R"({"nonsense":1})")), InputError);
  auto g = group_from_json(nlohmann::json::parse(R"({"degree":3,"generators":[[[1,2]],[[1,2,3]]]})"));
  EXPECT_EQ(g.order(), 6U);
  auto h = group_from_json(nlohmann::json::parse(R"({"preset":{"family":"symmetric","n":3}})"));
  EXPECT_EQ(h.elements(), named_group("S3").elements());
}

TEST(FiniteGroup, ConjugacyClassesAgainstBruteForce) {
  for (const auto& name : kCorpus) {
    auto g = named_group(name);
    std::size_t total = 0;
    ASSERT_EQ(g.classes()[0], std::vector<std::size_t>{0});
    for (const auto& c : g.classes()) {
      total += c.size();
      std::set<std::size_t> orbit;
      for (std::size_t x = 0; x < g.order(); ++x) orbit.insert(g.conj(x, c[0]));
      EXPECT_EQ(std::vector<std::size_t>(orbit.begin(), orbit.end()), c) << name;
    }
    EXPECT_EQ(total, g.order());
  }
  std::vector<std::size_t> sizes;
  auto s3 = named_group("S3");
  for (const auto& c : s3.classes()) sizes.push_back(c.size());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 3, 2}));
  EXPECT_EQ(named_group("S4").class_count(), 5U);
  EXPECT_EQ(named_group("Z5").class_count(), 5U);
}

TEST(FiniteGroup, Exponent) {
  EXPECT_EQ(named_group("S3").exponent(), 6U);
  EXPECT_EQ(named_group("Z7").exponent(), 7U);
  EXPECT_EQ(named_group("klein-4").exponent(), 2U);
}

TEST(CharacterTable, Z2AndS3) {
  auto z2 = character_table(named_group("Z2"));
  ASSERT_EQ(z2.size(), 2U);
  EXPECT_EQ(z2.rows[1][1], Cyclotomic(-1));
  auto g = named_group("S3");
  auto t = character_table(g);
  EXPECT_EQ(t.degrees, (std::vector<long>{1, 1, 2}));
  // classes: e, transpositions, 3-cycles
  EXPECT_EQ(g.element(g.classes()[1][0]).cycles()[0].size(), 2U);
  EXPECT_EQ(t.rows[2], (std::vector<Cyclotomic>{2, 0, -1}));
  EXPECT_EQ(t.rows[1], (std::vector<Cyclotomic>{1, -1, 1}));
}

// Central characters satisfy w_i w_j = sum_l c_ijl w_l with w_i = |C_i| chi(g_i) / chi(e).
TEST(CharacterTable, ClassSumEigenvectorOracle) {
  for (const auto& name : kCorpus) {
    auto g = named_group(name);
    auto t = character_table(g);
    const std::size_t k = g.class_count();
    for (std::size_t r = 0; r < t.size(); ++r) {
      std::vector<Cyclotomic> w(k);
      for (std::size_t i = 0; i < k; ++i)
        w[i] = Cyclotomic(Rational(static_cast<long>(t.class_sizes[i]), t.degrees[r])) * t.rows[r][i];
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
          Cyclotomic rhs;
          for (std::size_t l = 0; l < k; ++l) {
            long c = 0;
            for (auto x : g.classes()[i])
              for (auto y : g.classes()[j])
                if (g.mul(x, y) == g.classes()[l][0]) ++c;
            rhs += Cyclotomic(Rational(c)) * w[l];
          }
          EXPECT_EQ(w[i] * w[j], rhs) << name;
        }
    }
  }
}

TEST(CharacterTable, OrthogonalityAndDegrees) {
  for (const auto& name : kCorpus) {
    auto g = named_group(name);
    auto t = character_table(g);
    ASSERT_EQ(t.size(), g.class_count()) << name;
    long sq = 0;
    for (auto d : t.degrees) sq += d * d;
    EXPECT_EQ(sq, static_cast<long>(g.order())) << name;
    for (auto& v : t.rows[0]) EXPECT_EQ(v, Cyclotomic(1));
    for (std::size_t a = 0; a < t.size(); ++a)
      for (std::size_t b = 0; b < t.size(); ++b) {
        Cyclotomic s;
        for (std::size_t x = 0; x < g.order(); ++x) s += t.value(g, a, x) * t.value(g, b, g.inv(x));
        EXPECT_EQ(s, Cyclotomic(a == b ? static_cast<int>(g.order()) : 0)) << name;
      }
  }
}

TEST(CharacterTable, Deterministic) {
  auto a = character_table(named_group("S4"));
  auto b = character_table(named_group("S4"));
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t i = 0; i < a.rows[r].size(); ++i) EXPECT_EQ(a.rows[r][i].str(), b.rows[r][i].str());
}
