#include <gtest/gtest.h>

#include <random>

#include "e2elat/queueing.hpp"

using namespace e2elat;

TEST(Mm1, SojournMeanAtGnbLink) {
  const double mu = 0.01 * 10e9 / 2400.0;
  EXPECT_NEAR(mm1_sojourn_mean(2080.0, mu), 2.526e-5, 0.001e-5);
}

TEST(Mm1, EmptyQueueIsPureService) { EXPECT_DOUBLE_EQ(mm1_sojourn_mean(0.0, 1000.0), 1e-3); }

TEST(Mm1, UnstableAtRhoOne) {
  EXPECT_THROW(mm1_sojourn_mean(1000.0, 1000.0), instability_error);
  EXPECT_THROW(mm1_sojourn_mean(1200.0, 1000.0), instability_error);
}

TEST(Mm1, RejectsNonsenseRates) {
  EXPECT_THROW(mm1_sojourn_mean(-1.0, 1000.0), validation_error);
  EXPECT_THROW(mm1_sojourn_mean(1.0, 0.0), validation_error);
}

TEST(Md1, TransitMean) {
  EXPECT_DOUBLE_EQ(md1_transit_mean(0.0, 2.5e7), 8e-8);
  EXPECT_NEAR(md1_transit_mean(1.25e7, 2.5e7), 1e-7, 1e-20);
  EXPECT_THROW(md1_transit_mean(2.5e7, 2.5e7), instability_error);
}

TEST(Md1, InstabilityCarriesRho) {
  try {
    md1_transit_mean(3e7, 2.5e7);
    FAIL();
  } catch (const instability_error& e) {
    ASSERT_EQ(e.nodes().size(), 1u);
    EXPECT_NEAR(e.nodes()[0].rho, 1.2, 1e-12);
  }
}

TEST(Md1, WaitCdfAtZeroIsOneMinusRho) {
  for (double rho : {0.01, 0.3, 0.5, 0.8, 0.95, 0.999})
    EXPECT_NEAR(md1_wait_cdf(rho * 1e4, 1e4, 0.0), 1.0 - rho, 1e-12) << rho;
}

TEST(Md1, WaitCdfWithoutArrivalsIsOne) {
  for (double t : {0.0, 1e-9, 1.0}) EXPECT_EQ(md1_wait_cdf(0.0, 5.0, t), 1.0);
}

TEST(Md1, WaitCdfNegativeTime) { EXPECT_EQ(md1_wait_cdf(0.5, 1.0, -1.0), 0.0); }

// Frozen from tests/oracles/md1_oracle.py (mpmath, exact finite sum).
struct Md1Ref {
  double lambda, mu, t, F;
};
constexpr Md1Ref md1_reference[] = {
    {0.5, 1.0, 0.0, 0.5},
    {0.5, 1.0, 0.5, 0.64201270834387074},
    {0.5, 1.0, 2.5, 0.97135936963691365},
    {0.8, 1.0, 1.0, 0.44510818569849344},
    {0.8, 1.0, 3.7, 0.82405459235064875},
    {0.8, 1.0, 12.0, 0.99507545578325998},
    {0.9, 1.0, 30.0, 0.99813299920147019},
    {0.95, 1.0, 60.0, 0.99783939303221642},
    {0.95, 1.0, 150.0, 0.9999997716889674},
    {0.99, 1.0, 400.0, 0.99967560049988759},
    {800.0, 1000.0, 0.02, 0.99984315636929863},
    {800.0, 1000.0, 0.05, 0.99999999961797212},
    {4000000.0, 5000000.0, 1.2e-05, 0.99999999999485991},
};

TEST(Md1, WaitCdfMatchesHighPrecisionOracle) {
  for (const Md1Ref& r : md1_reference) {
    const double F = md1_wait_cdf(r.lambda, r.mu, r.t);
    EXPECT_NEAR(F, r.F, 1e-9) << r.lambda << ' ' << r.mu << ' ' << r.t;
    // Relative accuracy of the tail mass, which is what the percentiles use.
    if (1.0 - r.F > 1e-12) { EXPECT_NEAR((1.0 - F) / (1.0 - r.F), 1.0, 1e-5) << r.t; }
  }
}

TEST(Md1, AsymptoteDecayRateSolvesRootEquation) {
  for (double rho : {0.1, 0.5, 0.8, 0.99}) {
    const md1_tail a = md1_tail_asymptote(rho, 1.0);
    EXPECT_NEAR(rho * std::expm1(a.gamma), a.gamma, 1e-12);
    EXPECT_GT(a.c, 0.0);
    EXPECT_LT(a.c, 1.0);
  }
}

TEST(Md1, WaitCdfMonotoneOnRandomTriples) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> rho_d(0.01, 0.99);
  std::uniform_real_distribution<double> logmu_d(0.0, 8.0);
  std::uniform_real_distribution<double> scale_d(0.0, 60.0);
  for (int i = 0; i < 1000; ++i) {
    const double mu = std::pow(10.0, logmu_d(rng));
    const double lambda = rho_d(rng) * mu;
    const double t = scale_d(rng) / mu;
    const double dt = (1.0 + scale_d(rng)) / mu * 0.05;
    const double a = md1_wait_cdf(lambda, mu, t);
    const double b = md1_wait_cdf(lambda, mu, t + dt);
    ASSERT_GE(a, 1.0 - lambda / mu - 1e-15);
    ASSERT_LE(b, 1.0);
    ASSERT_LE(a, b + 1e-12) << "lambda=" << lambda << " mu=" << mu << " t=" << t;
  }
}

TEST(Md1, WaitCdfContinuousAcrossBranchSwitch) {
  // t = 12 D is the switch point.
  for (double rho : {0.1, 0.3, 0.5, 0.8, 0.95, 0.99}) {
    const double below = md1_wait_cdf(rho, 1.0, std::nextafter(12.0, 0.0));
    const double above = md1_wait_cdf(rho, 1.0, 12.0);
    EXPECT_NEAR(below, above, 1e-12) << rho;
  }
}
