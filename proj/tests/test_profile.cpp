#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "radsob/corpus.hpp"
#include "radsob/errors.hpp"
#include "radsob/profile.hpp"
#include "support/oracles.hpp"

using namespace radsob;

TEST(Profile, CanonicalForm) {
  const Profile f({{1.0, 2, 0.0}, {2.0, 2, 0.0}, {0.0, 4, 1.0}, {-1.0, 0, 1.0}, {1.0, 0, 1.0}});
  ASSERT_EQ(f.terms().size(), 1u);
  EXPECT_EQ(f.terms()[0], (Term{3.0, 2, 0.0}));
  EXPECT_TRUE(Profile({{1.0, 0, 1.0}, {-1.0, 0, 1.0}}).is_zero());
  EXPECT_THROW(Profile({{1.0, -1, 0.0}}), ConfigError);
  EXPECT_THROW(Profile({{1.0, 0, -1.0}}), ConfigError);
}

TEST(Profile, ToSquaredExamples) {
  EXPECT_EQ(to_squared(Profile({{1.0, 2, 0.0}})), SquaredProfile({{1.0, 1, 0.0}}));
  EXPECT_EQ(to_squared(Profile({{1.0, 0, 1.0}})), SquaredProfile({{1.0, 0, 1.0}}));
  EXPECT_EQ(to_squared(Profile({{3.0, 4, 2.0}})), SquaredProfile({{3.0, 2, 2.0}}));
  EXPECT_THROW(to_squared(Profile({{1.0, 1, 0.0}})), ConfigError);
}

TEST(Profile, DerivativeExamples) {
  EXPECT_EQ(Profile({{1.0, 2, 0.0}}).derivative(1), Profile({{2.0, 1, 0.0}}));
  EXPECT_EQ(SquaredProfile({{1.0, 0, 1.0}}).derivative(3), SquaredProfile({{-1.0, 0, 1.0}}));
  EXPECT_EQ(Profile({{1.0, 0, 1.0}}).derivative(2), Profile({{-2.0, 0, 1.0}, {4.0, 2, 1.0}}));
  EXPECT_EQ(Profile({{1.0, 2, 0.0}}).derivative(0), Profile({{1.0, 2, 0.0}}));
}

TEST(Profile, DOpExamples) {
  EXPECT_EQ(d_op(Profile({{1.0, 2, 0.0}}), 1), Profile::constant(2.0));
  EXPECT_EQ(d_op(Profile({{1.0, 4, 0.0}}), 2), Profile::constant(8.0));
  EXPECT_EQ(d_op(Profile({{1.0, 0, 1.0}}), 1), Profile({{-2.0, 0, 1.0}}));
}

TEST(Profile, CompositionWithSquare) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (const auto& [label, f] : builtin_corpus()) {
    const auto g = to_squared(f);
    EXPECT_EQ(from_squared(g), f) << label;
    for (int i = 0; i < 20; ++i) {
      const double rho = u(rng);
      EXPECT_NEAR(g(rho * rho), f(rho), 1e-14 * (1 + std::abs(f(rho)))) << label;
    }
  }
}

TEST(Profile, ParityAlternatesUnderDerivative) {
  for (const auto& [label, f] : builtin_corpus()) {
    for (int j = 0; j <= 6; ++j) {
      const auto dj = f.derivative(j);
      for (const auto& t : dj.terms()) EXPECT_EQ(t.power % 2, j % 2) << label << " j=" << j;
      if (j % 2 == 1) EXPECT_EQ(dj(0.0), 0.0) << label;
    }
  }
}

TEST(Profile, DOpMatchesIteratedOracle) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (const auto& [label, f] : builtin_corpus()) {
    for (int j = 0; j <= 6; ++j) {
      const auto dj = d_op(f, j);
      EXPECT_TRUE(dj.is_even());
      for (int i = 0; i < 50; ++i) {
        const double rho = u(rng);
        const double want = static_cast<double>(oracle::d_op_oracle(f, j, rho));
        const double got = dj(rho);
        // Cancellation between terms: compare against the magnitude of the pieces.
        double scale = 0;
        for (const auto& t : dj.terms()) scale += std::abs(t.coeff * std::pow(rho, t.power) * std::exp(-t.decay * rho * rho));
        EXPECT_LE(std::abs(got - want), 1e-12 * std::max(scale, std::abs(want))) << label << " j=" << j << " rho=" << rho;
      }
    }
  }
}

TEST(Whitney, Examples) {
  for (double rho : {0.3, 1.0, 2.0}) {
    EXPECT_NEAR(whitney_derivative(Profile({{1.0, 2, 0.0}}), 1, rho, 1e-12).value, 1.0, 1e-12);
    EXPECT_NEAR(whitney_derivative(Profile({{1.0, 4, 0.0}}), 2, rho, 1e-12).value, 2.0, 1e-12);
  }
  const auto r = whitney_derivative(Profile({{1.0, 0, 1.0}}), 1, 1.0, 1e-12);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, -std::exp(-1.0), 1e-12);
}

TEST(Whitney, MatchesSymbolicAcrossCorpus) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (const auto& [label, f] : builtin_corpus()) {
    const auto g = to_squared(f);
    for (int n = 1; n <= 4; ++n) {
      const double rho = u(rng);
      const double want = g.derivative(n)(rho * rho);
      const auto got = whitney_derivative(f, n, rho, 1e-12);
      EXPECT_NEAR(got.value, want, 1e-8) << label << " n=" << n;
    }
  }
}

TEST(Whitney, Preconditions) {
  EXPECT_THROW(whitney_derivative(Profile({{1.0, 2, 0.0}}), 0, 1.0, 1e-10), ConfigError);
  EXPECT_THROW(whitney_derivative(Profile({{1.0, 2, 0.0}}), 1, 0.0, 1e-10), ConfigError);
  EXPECT_THROW(whitney_derivative(Profile({{1.0, 1, 0.0}}), 1, 1.0, 1e-10), ConfigError);
}

TEST(RadialField, RotationInvariant) {
  std::mt19937_64 rng(8);
  for (const auto& [label, f] : builtin_corpus()) {
    for (int d = 2; d <= 4; ++d) {
      const RadialField phi(d, f);
      const auto R = oracle::random_rotation(rng, d);
      const auto x = oracle::random_point(rng, d, 0.0, 2.0);
      EXPECT_NEAR(phi(oracle::apply(R, x)), phi(x), 1e-12 * (1 + std::abs(phi(x)))) << label;
    }
  }
  EXPECT_THROW(RadialField(1, Profile::constant(1.0)), ConfigError);
  EXPECT_THROW(RadialField(2, Profile({{1.0, 1, 0.0}})), ConfigError);
}

TEST(Envelope, BoundsProfileAndDerivatives) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 6.0);
  for (const auto& [label, f] : decaying_subset(builtin_corpus())) {
    for (int j = 0; j <= 3; ++j) {
      const auto dj = d_op(f, j);
      const auto env = dj.envelope();
      for (int i = 0; i < 100; ++i) {
        const double x = u(rng);
        EXPECT_LE(std::abs(dj(x)), env(x) * (1 + 1e-12) + 1e-300) << label;
      }
    }
  }
}
