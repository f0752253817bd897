#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "radsob/errors.hpp"
#include "radsob/quad.hpp"

using namespace radsob;
using std::numbers::pi;

TEST(Integrate1d, Examples) {
  const auto a = integrate_1d([](double x) { return x * x; }, 0, 1, 1e-12);
  EXPECT_TRUE(a.converged);
  EXPECT_NEAR(a.value, 1.0 / 3, 1e-12);
  for (double r : {0.5, 1.0, 2.0}) {
    EXPECT_NEAR(integrate_1d([](double x) { return x * x; }, 0, r, 1e-12).value, r * r * r / 3, 1e-12 * r * r * r);
  }
  const auto c = integrate_1d([](double x) { return x * std::exp(-x * x); }, 0, 40, 1e-12);
  EXPECT_NEAR(c.value, 0.5, 1e-12);
  EXPECT_GE(c.error_estimate, 0);
}

TEST(Integrate1d, ExactOnPolynomialsPerPanel) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int deg = 0; deg <= 25; ++deg) {
    std::vector<double> c(static_cast<std::size_t>(deg + 1));
    for (auto& v : c) v = u(rng);
    auto p = [&](double x) {
      double s = 0;
      for (std::size_t i = c.size(); i-- > 0;) s = s * x + c[i];
      return s;
    };
    double exact = 0;
    for (std::size_t i = 0; i < c.size(); ++i) exact += c[i] / static_cast<double>(i + 1);
    QuadOptions opt;
    opt.rel_tol = 1e-15;
    opt.max_depth = 0;
    const auto r = integrate_1d(p, 0, 1, opt);
    EXPECT_LE(std::abs(r.value - exact), 1e-13 * std::max(1.0, std::abs(exact))) << "deg " << deg;
  }
}

TEST(Integrate1d, RejectsBadInterval) {
  EXPECT_THROW(integrate_1d([](double) { return 1.0; }, 1, 0, 1e-10), ConfigError);
  EXPECT_THROW(integrate_1d([](double) { return 1.0; }, 0, INFINITY, 1e-10), ConfigError);
}

TEST(Integrate1d, FlagsNonConvergence) {
  QuadOptions opt;
  opt.rel_tol = 1e-14;
  opt.max_depth = 2;
  const auto r = integrate_1d([](double x) { return std::sqrt(x); }, 0, 1, opt);
  EXPECT_FALSE(r.converged);
  EXPECT_NEAR(r.value, 2.0 / 3, 1e-3);
}

TEST(Integrate1d, ReturnsSortedPartition) {
  std::vector<Panel> parts;
  QuadOptions opt;
  integrate_1d([](double x) { return std::abs(x - 0.3); }, 0, 1, opt, &parts);
  ASSERT_FALSE(parts.empty());
  EXPECT_DOUBLE_EQ(parts.front().a, 0.0);
  EXPECT_DOUBLE_EQ(parts.back().b, 1.0);
  for (std::size_t i = 1; i < parts.size(); ++i) EXPECT_DOUBLE_EQ(parts[i - 1].b, parts[i].a);
}

TEST(IntegrateHalfline, Examples) {
  const auto a = integrate_halfline([](double x) { return std::exp(-x * x); }, 1e-12, 1.0);
  EXPECT_NEAR(a.value, std::sqrt(pi) / 2, 1e-12);
  const auto b = integrate_halfline([](double x) { return x * x * std::exp(-x * x); }, 1e-12, 1.0, 1.0, 2.0);
  EXPECT_NEAR(b.value, std::sqrt(pi) / 4, 1e-12);
  const auto c = integrate_halfline([](double) { return 0.0; }, 1e-12, 1.0);
  EXPECT_EQ(c.value, 0.0);
  EXPECT_THROW(integrate_halfline([](double) { return 0.0; }, 1e-12, 0.0), ConfigError);
}

TEST(IntegratePowerWeighted, SingularAndHalfIntegerWeights) {
  // int_0^1 x^{-1/2} dx = 2, int_0^4 x^{1/2} dx = 16/3, int_0^1 x^{-1/4} = 4/3.
  EXPECT_NEAR(integrate_power_weighted([](double) { return 1.0; }, -0.5, 1.0, 1e-13).value, 2.0, 1e-12);
  EXPECT_NEAR(integrate_power_weighted([](double) { return 1.0; }, 0.5, 4.0, 1e-13).value, 16.0 / 3, 1e-12);
  EXPECT_NEAR(integrate_power_weighted([](double) { return 1.0; }, -0.25, 1.0, 1e-13).value, 4.0 / 3, 1e-12);
  // int_0^inf x^{1/2} e^{-x} = Gamma(3/2).
  const Envelope env({{1.0, 0.5, 1.0, false}});
  const auto r = integrate_power_weighted([](double x) { return std::exp(-x); }, 0.5, INFINITY, 1e-12, &env);
  EXPECT_NEAR(r.value, std::tgamma(1.5), 1e-11);
  EXPECT_THROW(integrate_power_weighted([](double) { return 1.0; }, -1.0, 1.0, 1e-10), ConfigError);
}

TEST(Envelope, TailsAreUpperBounds) {
  const auto g = Envelope::gaussian(2.0, 3.0, 0.7);
  const Envelope e({{1.5, 2.0, 0.5, false}});
  for (double t : {0.0, 0.5, 2.0, 5.0}) {
    const auto ig = integrate_1d([&](double x) { return g(x); }, t, t + 60, 1e-12).value;
    EXPECT_NEAR(g.tail(t), ig, 1e-9 * (1 + ig));
    const auto ie = integrate_1d([&](double x) { return e(x); }, t, t + 200, 1e-12).value;
    EXPECT_NEAR(e.tail(t), ie, 1e-9 * (1 + ie));
  }
}

TEST(Sphere, Areas) {
  EXPECT_NEAR(sphere_area(1), 2.0, 1e-15);
  EXPECT_NEAR(sphere_area(2), 2 * pi, 1e-14);
  EXPECT_NEAR(sphere_area(3), 4 * pi, 1e-14);
  EXPECT_NEAR(sphere_area(4), 2 * pi * pi, 1e-13);
  EXPECT_THROW(sphere_area(0), ConfigError);
}

TEST(Sphere, MonomialMoments) {
  EXPECT_NEAR(sphere_monomial_moment(MultiIndex({0, 0, 0})), sphere_area(3), 1e-14);
  EXPECT_NEAR(sphere_monomial_moment(MultiIndex({2, 0, 0})), 4 * pi / 3, 1e-14);
  EXPECT_EQ(sphere_monomial_moment(MultiIndex({1, 1})), 0.0);
  // Sum_i w_i^2 = 1 on the sphere.
  for (int d = 2; d <= 6; ++d) {
    double s = 0;
    for (int i = 0; i < d; ++i) s += sphere_monomial_moment(MultiIndex::unit(d, i) + MultiIndex::unit(d, i));
    EXPECT_NEAR(s, sphere_area(d), 1e-13);
  }
}

TEST(Sphere, PolynomialIntegral) {
  const auto r2 = MonomialPoly::squared_norm(3);
  EXPECT_NEAR(sphere_integral(r2 * r2), 4 * pi, 1e-13);
}

TEST(SphereSampler, UnitNormAndDeterministic) {
  const SphereSampler s(4, 123, 1000);
  const auto a = s.samples();
  const auto b = SphereSampler(4, 123, 1000).samples();
  EXPECT_EQ(a, b);
  for (const auto& w : a) {
    double n = 0;
    for (double v : w) n += v * v;
    EXPECT_NEAR(std::sqrt(n), 1.0, 1e-14);
  }
  EXPECT_NE(s.substream(1, 10).samples(), s.substream(2, 10).samples());
  EXPECT_NE(SphereSampler(4, 124, 10).samples(), SphereSampler(4, 123, 10).samples());
}

TEST(McSphere, Examples) {
  for (int d = 2; d <= 5; ++d) {
    const auto one = mc_sphere_integral([](std::span<const double>) { return 1.0; }, SphereSampler(d, 1, 100));
    EXPECT_DOUBLE_EQ(one.value, sphere_area(d));
    EXPECT_EQ(one.error_estimate, 0.0);
    const auto odd = mc_sphere_integral([](std::span<const double> w) { return w[0]; }, SphereSampler(d, 2, 20000));
    EXPECT_LE(std::abs(odd.value), 3 * odd.error_estimate);
  }
  const auto sq = mc_sphere_integral([](std::span<const double> w) { return w[0] * w[0]; }, SphereSampler(3, 5, 100000));
  EXPECT_LE(std::abs(sq.value - 4 * pi / 3), 3 * sq.error_estimate);
  EXPECT_THROW(mc_sphere_integral([](std::span<const double>) { return 1.0; }, SphereSampler(3, 1, 0)), ConfigError);
}

TEST(McSphere, AgreesWithMomentsOnRandomEvenBeta) {
  std::mt19937_64 rng(31);
  int done = 0;
  while (done < 30) {
    const int d = 2 + done % 3;
    std::vector<int> beta(static_cast<std::size_t>(d));
    int total = 0;
    for (auto& b : beta) {
      b = 2 * static_cast<int>(rng() % 3);
      total += b;
    }
    if (total > 8) continue;
    const MultiIndex mb(beta);
    const auto mc = mc_sphere_integral(
        [&](std::span<const double> w) {
          double v = 1;
          for (int i = 0; i < d; ++i) v *= std::pow(w[static_cast<std::size_t>(i)], beta[static_cast<std::size_t>(i)]);
          return v;
        },
        SphereSampler(d, 1000 + static_cast<std::uint64_t>(done), 20000));
    const double exact = sphere_monomial_moment(mb);
    EXPECT_LE(std::abs(mc.value - exact), 4 * mc.error_estimate + 1e-14) << mb.str();
    ++done;
  }
}

TEST(McSphere, BitIdenticalRepeats) {
  auto g = [](std::span<const double> w) { return std::exp(w[0]) * w[1] * w[1]; };
  const auto a = mc_sphere_integral(g, SphereSampler(3, 77, 5000, 4));
  const auto b = mc_sphere_integral(g, SphereSampler(3, 77, 5000, 4));
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.error_estimate, b.error_estimate);
}

TEST(SignChanges, LocatesSimpleRootsOnly) {
  const auto a = sign_changes([](double x) { return x - 0.3; }, 0, 1);
  ASSERT_EQ(a.size(), 1u);
  EXPECT_NEAR(a[0], 0.3, 1e-15);
  const auto b = sign_changes([](double x) { return std::cos(3 * x); }, 0, 3);
  ASSERT_EQ(b.size(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(b[static_cast<std::size_t>(i)], pi / 6 + i * pi / 3, 1e-15);
  EXPECT_TRUE(sign_changes([](double x) { return (x - 0.55) * (x - 0.55); }, 0, 1).empty());
  EXPECT_THROW(sign_changes([](double x) { return x; }, 1, 0), ConfigError);
}

TEST(Integrate1d, BreakpointsResolveKinks) {
  // int_0^1 |x - 1/3| = 1/18 + 4/18.
  QuadOptions opt;
  opt.rel_tol = 1e-14;
  opt.breakpoints = {1.0 / 3, -4.0, 7.0};
  std::vector<Panel> parts;
  const auto r = integrate_1d([](double x) { return std::abs(x - 1.0 / 3); }, 0, 1, opt, &parts);
  EXPECT_NEAR(r.value, 5.0 / 18, 2e-16);
  EXPECT_EQ(parts.size(), 2u);
  // Mapped through the x = b u^q substitution: int_0^1 x^{1/2} |x - 1/4| dx.
  // Closed form 2/5 - 2a/3 + (8/15) a^{5/2} with a = 1/4.
  const double want = 2.0 / 5 - 2 * 0.25 / 3 + 8.0 / 15 * std::pow(0.25, 2.5);
  const auto w = integrate_power_weighted([](double x) { return std::abs(x - 0.25); }, 0.5, 1.0, 1e-14, nullptr, {0.25});
  EXPECT_NEAR(w.value, want, 1e-15);
}
