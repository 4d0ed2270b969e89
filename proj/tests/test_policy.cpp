#include "hdro/policy.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "hdro/error.hpp"

namespace hdro {
namespace {

FiniteMeasure RandomEmpirical(std::mt19937_64& rng, double upper, std::vector<double>* draws) {
  std::uniform_int_distribution<int> count(1, 12);
  std::uniform_int_distribution<int> lattice(0, 8);
  int n = count(rng);
  draws->clear();
  for (int i = 0; i < n; ++i) draws->push_back(upper * lattice(rng) / 8.0);
  return EmpiricalFrom(*draws, upper);
}

TEST(ApplyPolicy, Examples) {
  ProblemSpec pr = ProblemSpec::Pricing(1);
  EXPECT_EQ(ApplyPolicy(PolicySpec::Saa(), pr, FiniteMeasure::PointMass(0.3, 1)), 0.3);
  EXPECT_DOUBLE_EQ(ApplyPolicy(PolicySpec::DeltaSaa(-0.2), pr, FiniteMeasure::PointMass(1, 1)), 0.8);
  EXPECT_EQ(ApplyPolicy(PolicySpec::DeltaSaa(-0.2), pr, FiniteMeasure::PointMass(0.1, 1)), 0.0);
  EXPECT_EQ(ApplyPolicy(PolicySpec::DeltaSaa(0.5), pr, FiniteMeasure::PointMass(0.9, 1)), 1.0);
  ProblemSpec ski = ProblemSpec::SkiRental(1, 10);
  // SAA never buys on delta_0.5; the cap makes it buy on day 2.
  EXPECT_EQ(ApplyPolicy(PolicySpec::Capped(2), ski, FiniteMeasure::PointMass(0.5, 10)), 2.0);
  EXPECT_EQ(ApplyPolicy(PolicySpec::Capped(2), ski, FiniteMeasure::PointMass(5, 10)), 0.0);
}

TEST(ApplyPolicy, CappedOnlyForSki) {
  try {
    ApplyPolicy(PolicySpec::Capped(1), ProblemSpec::Pricing(1), FiniteMeasure::PointMass(1, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCappedOnNonSki);
  }
}

TEST(RecommendedPolicy, Examples) {
  PolicySpec a = RecommendedPolicy(ProblemSpec::Pricing(1), DistanceKind::kWasserstein, 0.04);
  EXPECT_EQ(a.kind, PolicyKind::kDeltaSaa);
  EXPECT_NEAR(a.delta, -0.2, 1e-15);
  PolicySpec b = RecommendedPolicy(ProblemSpec::SkiRental(4, 10), DistanceKind::kWasserstein, 0.04);
  EXPECT_EQ(b.kind, PolicyKind::kDeltaSaa);
  EXPECT_NEAR(b.delta, 0.4, 1e-15);
  PolicySpec c = RecommendedPolicy(ProblemSpec::SkiRental(2, 10), DistanceKind::kTotalVariation, 0.01);
  EXPECT_EQ(c.kind, PolicyKind::kCapped);
  EXPECT_NEAR(c.cap, 2 * std::log(100.0), 1e-12);
  EXPECT_EQ(RecommendedPolicy(ProblemSpec::Newsvendor(1, 1, 1), DistanceKind::kKolmogorov, 0.3).kind,
            PolicyKind::kSaa);
  EXPECT_EQ(RecommendedPolicy(ProblemSpec::Pricing(1), DistanceKind::kKolmogorov, 0.3).kind,
            PolicyKind::kSaa);
  try {
    RecommendedPolicy(ProblemSpec::Pricing(1), DistanceKind::kWasserstein, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEpsNonPositive);
  }
}

TEST(Policies, SampleSizeAgnosticAndInRange) {
  std::mt19937_64 rng(13);
  std::vector<double> draws;
  const double M = 4;
  std::vector<ProblemSpec> ps = {ProblemSpec::Newsvendor(1, 2, M), ProblemSpec::Pricing(M),
                                 ProblemSpec::SkiRental(1.5, M)};
  std::vector<PolicySpec> pols = {PolicySpec::Saa(), PolicySpec::DeltaSaa(-0.7),
                                  PolicySpec::DeltaSaa(0.9), PolicySpec::DeltaSaa(0)};
  for (int t = 0; t < 300; ++t) {
    FiniteMeasure m = RandomEmpirical(rng, M, &draws);
    // Duplicating every draw and shuffling keeps the empirical measure.
    std::vector<double> doubled = draws;
    doubled.insert(doubled.end(), draws.begin(), draws.end());
    std::shuffle(doubled.begin(), doubled.end(), rng);
    FiniteMeasure m2 = EmpiricalFrom(doubled, M);
    for (const auto& p : ps) {
      for (const auto& pol : pols) {
        double x = ApplyPolicy(pol, p, m);
        EXPECT_EQ(x, ApplyPolicy(pol, p, m2));
        EXPECT_GE(x, 0.0);
        EXPECT_LE(x, M);
      }
      EXPECT_EQ(ApplyPolicy(PolicySpec::DeltaSaa(0), p, m), ApplyPolicy(PolicySpec::Saa(), p, m));
    }
    double c = ApplyPolicy(PolicySpec::Capped(1.2), ps[2], m);
    EXPECT_EQ(c, ApplyPolicy(PolicySpec::Capped(1.2), ps[2], m2));
    EXPECT_LE(c, 1.2);
  }
}

TEST(PolicySpec, TextRoundTrip) {
  for (const char* t : {"saa", "dsaa:-0.2", "cap:4.60517018599"}) {
    EXPECT_EQ(PolicySpec::Parse(t).ToString(), t);
  }
  EXPECT_THROW(PolicySpec::Parse("greedy"), Error);
  EXPECT_THROW(PolicySpec::Parse("dsaa:abc"), Error);
}

}  // namespace
}  // namespace hdro
