#include <gtest/gtest.h>

#include <cmath>

#include "radsob/corpus.hpp"
#include "radsob/errors.hpp"
#include "radsob/opspace.hpp"

using namespace radsob;

TEST(Trace, Examples) {
  EXPECT_EQ(trace(RadialField(3, Profile({{1.0, 2, 0.0}}))), SquaredProfile({{1.0, 1, 0.0}}));
  EXPECT_EQ(trace(RadialField(2, Profile({{1.0, 0, 1.0}}))), SquaredProfile({{1.0, 0, 1.0}}));
  EXPECT_EQ(trace(RadialField(4, Profile({{3.0, 4, 2.0}}))), SquaredProfile({{3.0, 2, 2.0}}));
}

TEST(Extend, Examples) {
  const auto one = extend(SquaredProfile::constant(1.0), 3);
  EXPECT_EQ(one.dim(), 3);
  EXPECT_EQ(one.profile(), Profile::constant(1.0));
  EXPECT_EQ(extend(SquaredProfile({{1.0, 1, 0.0}}), 2).profile(), Profile({{1.0, 2, 0.0}}));
  EXPECT_THROW(extend(SquaredProfile::constant(1.0), 1), ConfigError);
}

TEST(TraceExtend, RoundTripsExactOnCorpus) {
  for (const auto& [label, f] : builtin_corpus()) {
    for (int d = 2; d <= 5; ++d) {
      const RadialField phi(d, f);
      EXPECT_EQ(extend(trace(phi), d).profile(), f) << label;
      const auto g = to_squared(f);
      EXPECT_EQ(trace(extend(g, d)), g) << label;
    }
  }
}

TEST(Trace, LinearOnTermLists) {
  const auto corpus = builtin_corpus();
  for (std::size_t i = 0; i + 1 < corpus.size(); ++i) {
    const auto& f = corpus[i].profile;
    const auto& h = corpus[i + 1].profile;
    const double a = 0.75, b = -2.5;
    const auto lhs = trace(RadialField(3, a * f + b * h));
    const auto rhs = a * trace(RadialField(3, f)) + b * trace(RadialField(3, h));
    EXPECT_EQ(lhs, rhs) << corpus[i].label;
  }
}

TEST(BoundednessReport, ZeroOrderRatioIsExactConstant) {
  for (int d = 2; d <= 4; ++d) {
    for (double p : {1.0, 2.0, 3.0}) {
      BoundednessParams params;
      params.dim = d;
      params.k = 0;
      params.p = p;
      params.method = p == 2 ? AngularMethod::ExactAngular : AngularMethod::MonteCarlo;
      const auto rep = boundedness_report(builtin_corpus(), params);
      const double want = std::pow(2 / sphere_area(d), 1 / p);
      const auto& r = rep.ratio("trace/field");
      ASSERT_EQ(r.values.size(), builtin_corpus().size());
      for (const auto& v : r.values) EXPECT_NEAR(v.ratio, want, 1e-10 * want) << v.label;
      EXPECT_NEAR(rep.ratio("field/trace").max, 1 / want, 1e-10 / want);
    }
  }
}

TEST(BoundednessReport, ZeroProfileExcluded) {
  Corpus c{{"zero", Profile()}, {"gauss", Profile({{1.0, 0, 1.0}})}};
  const auto rep = boundedness_report(c, BoundednessParams{});
  EXPECT_EQ(rep.degenerate, std::vector<std::string>{"zero"});
  EXPECT_EQ(rep.ratio("trace/field").values.size(), 1u);
  ASSERT_FALSE(rep.notes.empty());
}

TEST(BoundednessReport, FiniteAndStableUnderRefinement) {
  BoundednessParams coarse;
  coarse.dim = 3;
  coarse.k = 2;
  coarse.p = 2;
  BoundednessParams fine = coarse;
  fine.tol = coarse.tol / 10;
  const auto a = boundedness_report(builtin_corpus(), coarse);
  const auto b = boundedness_report(builtin_corpus(), fine);
  const auto& ra = a.ratio("trace/field");
  const auto& rb = b.ratio("trace/field");
  EXPECT_GT(ra.min, 0);
  EXPECT_TRUE(std::isfinite(ra.max));
  EXPECT_LE(std::abs(ra.min - rb.min), 1e-6 * rb.min);
  EXPECT_LE(std::abs(ra.max - rb.max), 1e-6 * rb.max);
}

TEST(BoundednessReport, Preconditions) {
  BoundednessParams params;
  params.p = 3;
  EXPECT_THROW(boundedness_report(builtin_corpus(), params), ConfigError);
  params.p = 2;
  params.r = kInfinity;
  EXPECT_THROW(boundedness_report(builtin_corpus(), params), ConfigError);
}
