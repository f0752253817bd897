#include <gtest/gtest.h>

#include <random>
#include <set>

#include "radsob/errors.hpp"
#include "radsob/index_poly.hpp"
#include "support/oracles.hpp"

using namespace radsob;

namespace {

MultiIndex mi(std::vector<int> v) { return MultiIndex(std::move(v)); }

MonomialPoly random_poly(std::mt19937_64& rng, int d, int max_deg, int terms) {
  std::uniform_int_distribution<int> deg(0, max_deg), coef(-9, 9), den(1, 5);
  MonomialPoly p(d);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> e(static_cast<std::size_t>(d));
    for (auto& x : e) x = deg(rng);
    p += MonomialPoly::monomial(mi(e), Rational(coef(rng), den(rng)));
  }
  return p;
}

long long binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(MultiIndex, RejectsNegativeAndEmpty) {
  EXPECT_THROW(mi({1, -1}), ConfigError);
  EXPECT_THROW(mi({}), ConfigError);
}

TEST(MultiIndex, OrderFactorialUnit) {
  const auto a = mi({2, 0, 3});
  EXPECT_EQ(a.order(), 5);
  EXPECT_EQ(a.factorial(), 12);
  EXPECT_EQ(MultiIndex::unit(3, 1), mi({0, 1, 0}));
  EXPECT_EQ(a.minus_unit(0).value(), mi({1, 0, 3}));
  EXPECT_FALSE(a.minus_unit(1).has_value());
  EXPECT_EQ(a.str(), "(2,0,3)");
}

TEST(EnumerateMulti, Examples) {
  EXPECT_EQ(enumerate_multi(2, 0), std::vector<MultiIndex>{mi({0, 0})});
  EXPECT_EQ(enumerate_multi(2, 2), (std::vector<MultiIndex>{mi({0, 2}), mi({1, 1}), mi({2, 0})}));
  EXPECT_EQ(enumerate_multi(3, 4).size(), 15u);
}

TEST(EnumerateMulti, CompleteDuplicateFreeSorted) {
  for (int d = 1; d <= 5; ++d) {
    for (int n = 0; n <= 6; ++n) {
      const auto all = enumerate_multi(d, n);
      EXPECT_EQ(static_cast<long long>(all.size()), binomial(n + d - 1, d - 1)) << d << "," << n;
      std::set<MultiIndex> uniq(all.begin(), all.end());
      EXPECT_EQ(uniq.size(), all.size());
      EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
      for (const auto& a : all) EXPECT_EQ(a.order(), n);
    }
  }
}

TEST(EnumerateDIndex, CountAndCollapse) {
  for (int d = 1; d <= 4; ++d) {
    for (int n = 0; n <= 4; ++n) {
      std::size_t count = 0;
      for_each_dindex(d, n, [&](const DIndex& I) {
        ++count;
        EXPECT_EQ(I.collapse().order(), n);
        for (int v : I.entries()) {
          EXPECT_GE(v, 1);
          EXPECT_LE(v, d);
        }
      });
      std::size_t expect = 1;
      for (int i = 0; i < n; ++i) expect *= static_cast<std::size_t>(d);
      EXPECT_EQ(count, expect);
    }
  }
  EXPECT_THROW(DIndex(2, {0, 1}), ConfigError);
  EXPECT_THROW(DIndex(2, {3}), ConfigError);
}

TEST(Laplacian, Examples) {
  const auto x1sq = MonomialPoly::monomial(mi({2, 0}));
  EXPECT_EQ(laplacian(x1sq), MonomialPoly::constant(2, 2));
  EXPECT_TRUE(laplacian(MonomialPoly::monomial(mi({1, 1}))).is_zero());
  const auto lap = laplacian(MonomialPoly::monomial(mi({2, 2})));
  EXPECT_EQ(lap, MonomialPoly::monomial(mi({0, 2}), 2) + MonomialPoly::monomial(mi({2, 0}), 2));
}

TEST(Laplacian, PowerMatchesRepeated) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + trial % 3;
    const auto p = random_poly(rng, d, 6, 5);
    MonomialPoly rep = p;
    for (int j = 0; j <= 4; ++j) {
      EXPECT_EQ(laplacian_power(p, j), rep);
      rep = laplacian(rep);
    }
  }
}

TEST(PPoly, Examples) {
  EXPECT_EQ(p_poly(DIndex(2, {1}), 0), MonomialPoly::monomial(mi({1, 0})));
  EXPECT_EQ(p_poly(DIndex(2, {1, 1}), 1), MonomialPoly::constant(2, 1));
  EXPECT_TRUE(p_poly(DIndex(2, {1, 2}), 1).is_zero());
}

TEST(PPoly, RejectsOrderOutOfRange) {
  EXPECT_THROW(p_poly(DIndex(2, {1, 1}), 2), ConfigError);
  EXPECT_THROW(p_poly(DIndex(2, {1, 1}), -1), ConfigError);
  EXPECT_THROW(p_poly(mi({1, 0}), 1), ConfigError);
}

TEST(PPoly, HomogeneousOfDegreeNMinus2j) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> lam(0.3, 2.5);
  for (int d = 2; d <= 3; ++d) {
    for (int n = 0; n <= 5; ++n) {
      for_each_dindex(d, n, [&](const DIndex& I) {
        for (int j = 0; j <= n / 2; ++j) {
          const auto p = p_poly(I, j);
          if (p.is_zero()) continue;
          EXPECT_EQ(p.homogeneous_degree(), n - 2 * j);
          const auto x = oracle::random_point(rng, d, 0.5, 1.5);
          const double l = lam(rng);
          std::vector<double> lx = x;
          for (auto& v : lx) v *= l;
          EXPECT_NEAR(p.eval(lx), std::pow(l, n - 2 * j) * p.eval(x), 1e-11 * (1 + std::abs(p.eval(lx))));
        }
      });
    }
  }
}

TEST(PPoly, RotationCovarianceOrderOne) {
  std::mt19937_64 rng(5);
  for (int d = 2; d <= 3; ++d) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto R = oracle::random_rotation(rng, d);
      const auto x = oracle::random_point(rng, d, 0.2, 2.0);
      const auto rx = oracle::apply(R, x);
      for (int i = 0; i < d; ++i) {
        double rhs = 0;
        for (int j = 0; j < d; ++j) {
          rhs += R[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * p_poly(DIndex(d, {j + 1}), 0).eval(x);
        }
        EXPECT_NEAR(p_poly(DIndex(d, {i + 1}), 0).eval(rx), rhs, 1e-13);
      }
    }
  }
}

TEST(MonomialPoly, EvalExamples) {
  const std::vector<double> a{3, 0};
  EXPECT_DOUBLE_EQ(MonomialPoly::monomial(mi({2, 0})).eval(a), 9.0);
  const std::vector<double> b{1, 1};
  EXPECT_DOUBLE_EQ(p_poly(DIndex(2, {1, 2}), 0).eval(b), 1.0);
  const std::vector<double> c{1, 2};
  EXPECT_DOUBLE_EQ(laplacian(MonomialPoly::monomial(mi({2, 2}))).eval(c), 10.0);
  EXPECT_THROW(MonomialPoly::monomial(mi({2, 0})).eval(std::vector<double>{1, 2, 3}), ConfigError);
}

TEST(MonomialPoly, NoZeroCoefficientsStored) {
  auto p = MonomialPoly::monomial(mi({1, 2}), Rational(3, 2));
  p -= MonomialPoly::monomial(mi({1, 2}), Rational(3, 2));
  EXPECT_TRUE(p.is_zero());
  EXPECT_TRUE(p.terms().empty());
  auto q = MonomialPoly::monomial(mi({1, 0})) * Rational(0);
  EXPECT_TRUE(q.is_zero());
}

TEST(MonomialPoly, RingAxiomsOnRandomTriples) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    const int d = 1 + trial % 4;
    const auto a = random_poly(rng, d, 3, 4);
    const auto b = random_poly(rng, d, 3, 4);
    const auto c = random_poly(rng, d, 3, 4);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
  }
}

TEST(MonomialPoly, EvalIsLinear) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    const int d = 2 + trial % 3;
    const auto p = random_poly(rng, d, 4, 5);
    const auto q = random_poly(rng, d, 4, 5);
    const Rational a(3, 7), b(-5, 2);
    const auto x = oracle::random_point(rng, d, 0.1, 2.0);
    const double lhs = (a * p + b * q).eval(x);
    const double rhs = a.get_d() * p.eval(x) + b.get_d() * q.eval(x);
    EXPECT_NEAR(lhs, rhs, 1e-12 * (1 + std::abs(rhs)));
  }
}

TEST(MonomialPoly, HomogenizeAndPow) {
  const auto r2 = MonomialPoly::squared_norm(2);
  EXPECT_EQ(pow(r2, 2), r2 * r2);
  const auto x1 = MonomialPoly::monomial(mi({1, 0}));
  EXPECT_EQ(homogenize(x1, 3), x1 * r2);
  EXPECT_THROW(homogenize(x1, 2), ConfigError);
  EXPECT_THROW(homogenize(x1 * r2, 1), ConfigError);
}

TEST(RationalFormat, IntegersAndFractions) {
  EXPECT_EQ(to_string(Rational(6, 3)), "2");
  EXPECT_EQ(to_string(Rational(-3, 6)), "-1/2");
}

TEST(NumericPoly, MatchesExactEval) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + trial % 3;
    const auto p = random_poly(rng, d, 5, 6);
    const NumericPoly np(p);
    const auto x = oracle::random_point(rng, d, 0.1, 1.5);
    EXPECT_NEAR(np.eval(x), p.eval(x), 1e-12 * (1 + std::abs(p.eval(x))));
  }
}
