#include <gtest/gtest.h>

#include "e2elat/externals.hpp"

using namespace e2elat;

namespace {

// Anchors must come back to three decimals of a millisecond.
constexpr double ms3 = 0.5e-6;

}  // namespace

TEST(Internet, RoundTripAnchors) {
  const LatencyDistribution d = internet_latency(InternetMode::round_trip);
  EXPECT_NEAR(d.percentile(0.90), 21e-3, ms3);
  EXPECT_NEAR(d.percentile(0.9999), 43e-3, ms3);
  EXPECT_NEAR(d.mean(), 10.3e-3, 1e-9);
}

TEST(Internet, OneWayHalvesTimes) {
  const LatencyDistribution d = internet_latency(InternetMode::one_way);
  EXPECT_NEAR(d.percentile(0.90), 10.5e-3, ms3);
  EXPECT_NEAR(d.percentile(0.9999), 21.5e-3, ms3);
  EXPECT_NEAR(d.mean(), 5.15e-3, 1e-9);
}

TEST(Peering, LocalAnchors) {
  const LatencyDistribution d = peering_latency(PeeringKind::local);
  EXPECT_NEAR(d.percentile(0.90), 0.431e-3, ms3);
  EXPECT_NEAR(d.percentile(0.9999), 1.493e-3, ms3);
  EXPECT_NEAR(d.mean(), 0.306e-3, 1e-9);
  EXPECT_GE(d.support_min(), 0.0);
  EXPECT_GE(d.percentile(1e-9), 0.0);
}

TEST(Peering, RemoteAnchors) {
  const LatencyDistribution d = peering_latency(PeeringKind::remote);
  EXPECT_NEAR(d.percentile(0.90), 29.867e-3, ms3);
  EXPECT_NEAR(d.percentile(0.9999), 99.212e-3, ms3);
  EXPECT_NEAR(d.mean(), 13.001e-3, 1e-9);
}

TEST(AnchoredCdf, ReachesTargetMean) {
  for (const AnchoredCdf& a : {internet_anchors(), peering_anchors(PeeringKind::local, 0.05),
                               peering_anchors(PeeringKind::remote, 1.0)}) {
    EXPECT_TRUE(a.mean_matched());
    EXPECT_NEAR(a.mean(), *a.target_mean(), 1e-15);
    // The sampled grid integrates to the same mean.
    const Empirical e = a.sample();
    EXPECT_NEAR(LatencyDistribution::grid_mean(e) / a.mean(), 1.0, 1e-4);
  }
}

TEST(AnchoredCdf, QuantileInvertsCdf) {
  const AnchoredCdf a = internet_anchors();
  for (double p : {0.01, 0.2, 0.5, 0.89, 0.9, 0.95, 0.9999, 0.999999}) {
    EXPECT_NEAR(a.cdf(a.quantile(p)), p, 1e-12) << p;
  }
  double last = 0.0;
  for (double t = 0.0; t < 0.1; t += 1e-4) {
    const double f = a.cdf(t);
    ASSERT_GE(f, last);
    last = f;
  }
}

TEST(AnchoredCdf, UnreachableMeanClampsKnot) {
  // A target far below what the anchors allow cannot be met.
  const AnchoredCdf a({{0.9, 21e-3}, {0.9999, 43e-3}}, 1e-3, 1e-3);
  EXPECT_FALSE(a.mean_matched());
  EXPECT_GT(a.mean(), 1e-3);
  EXPECT_NEAR(a.quantile(0.9), 21e-3, 1e-15);
}

TEST(AnchoredCdf, Validation) {
  EXPECT_THROW(AnchoredCdf({{0.9, 1.0}}, 0.0), validation_error);
  EXPECT_THROW(AnchoredCdf({{0.9, 2.0}, {0.8, 3.0}}, 0.0), validation_error);
  EXPECT_THROW(AnchoredCdf({{0.9, 2.0}, {0.99, 1.0}}, 0.0), validation_error);
  EXPECT_THROW(AnchoredCdf({{0.9, 2.0}, {0.99, 3.0}}, 2.5), validation_error);
  EXPECT_THROW(AnchoredCdf({{0.0, 2.0}, {0.99, 3.0}}, 0.0), validation_error);
}

TEST(Externals, SuppliedCdfOverridesAnchors) {
  ExternalsConfig cfg;
  cfg.internet_cdf = Empirical{{2e-3, 4e-3, 6e-3}, {0.0, 0.5, 1.0}, {}};
  cfg.peering_local_cdf = Empirical{{1e-3, 2e-3}, {0.0, 1.0}, {}};
  EXPECT_NEAR(internet_latency(InternetMode::round_trip, cfg).percentile(0.5), 4e-3, 1e-15);
  EXPECT_NEAR(internet_latency(InternetMode::one_way, cfg).percentile(0.5), 2e-3, 1e-15);
  EXPECT_NEAR(peering_latency(PeeringKind::local, cfg).mean(), 1.5e-3, 1e-15);
  EXPECT_NEAR(peering_latency(PeeringKind::remote, cfg).percentile(0.9), 29.867e-3, ms3);
}
