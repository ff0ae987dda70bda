#include <gtest/gtest.h>

#include "e2elat/core.hpp"
#include "e2elat/transport.hpp"

using namespace e2elat;

namespace {

Scenario make(Deployment d, double lambda, double alpha, double bits = 2464.0) {
  Scenario s = default_scenario(d, lloa(), lambda, alpha);
  s.traffic.packet_bits = bits;
  return s;
}

const NodeRates& find(const std::vector<NodeRates>& v, NodeId n, Direction d) {
  for (const NodeRates& r : v)
    if (r.node == n && r.direction == d) return r;
  throw std::runtime_error("node missing");
}

}  // namespace

TEST(TnRates, MecM1Arithmetic) {
  const auto r = tn_rates(make(Deployment::mec_m1, 2080, 0.01, 2400.0));
  ASSERT_EQ(r.size(), 3u);
  EXPECT_DOUBLE_EQ(find(r, NodeId::m1, Direction::ul).lambda, 12480.0);
  EXPECT_DOUBLE_EQ(find(r, NodeId::m1, Direction::ul).mu, 1.25e6);
  EXPECT_NEAR(find(r, NodeId::gnb, Direction::ul).mu, 41666.7, 0.1);
  // DL: 12480 packets/s leave M1, one sixth of them towards the tagged gNB.
  EXPECT_NEAR(find(r, NodeId::m1, Direction::dl).lambda, 2080.0, 1e-9);
}

TEST(TnRates, NodeSetsPerDeployment) {
  EXPECT_EQ(tn_rates(make(Deployment::mec_gnb, 2080, 0.01)).size(), 1u);
  EXPECT_EQ(tn_rates(make(Deployment::mec_m1, 2080, 0.01)).size(), 3u);
  EXPECT_EQ(tn_rates(make(Deployment::mec_cn, 2080, 0.01)).size(), 7u);
  EXPECT_EQ(tn_rates(make(Deployment::centralized, 2080, 0.01)).size(), 7u);
}

TEST(TnRates, ZeroLoad) {
  Scenario s = make(Deployment::mec_cn, 2080, 0.01);
  s.traffic.lambda_gnb_ul = 0.0;
  for (const NodeRates& n : tn_rates(s)) {
    EXPECT_EQ(n.lambda, 0.0);
    EXPECT_EQ(n.rho(), 0.0);
  }
}

TEST(TnRates, FlowConservationUnderSplits) {
  // The DL tree redistributes what the root sends: the shares at every level
  // sum to one, so the per-child rates sum back to the parent rate.
  Scenario s = make(Deployment::mec_cn, 2080, 0.01);
  s.traffic.split.m1_to_gnb = {0.3, 0.2, 0.2, 0.1, 0.1, 0.1};
  const double root = upf_ul_lambda(s);
  const auto r = tn_rates(s);
  const double m3 = find(r, NodeId::m3, Direction::dl).lambda;
  const double m2 = find(r, NodeId::m2, Direction::dl).lambda;
  const double m1 = find(r, NodeId::m1, Direction::dl).lambda;
  EXPECT_NEAR(m3 * s.topology.m2, root, 1e-6 * root);
  EXPECT_NEAR(m2 * s.topology.m1, m3, 1e-9 * m3);
  EXPECT_NEAR(m1, 0.3 * m2, 1e-9 * m2);
  double total = 0.0;
  for (double p : s.traffic.split.m1_to_gnb) total += p * m2;
  EXPECT_NEAR(total, m2, 1e-9 * m2);
}

TEST(TnShift, PerDeployment) {
  const double prop[4] = {0.0, 0.03e-3, 0.75e-3, 0.75e-3};
  const double proc[4] = {0.4e-3, 0.8e-3, 1.6e-3, 1.6e-3};
  for (int i = 0; i < 4; ++i) {
    const TnShift sh = tn_shift(make(all_deployments[i], 2080, 0.01));
    EXPECT_NEAR(sh.propagation, prop[i], 1e-15);
    EXPECT_NEAR(sh.processing, proc[i], 1e-15);
  }
}

TEST(TnLatency, MecM1Anchors) {
  const PercentileTriple t = tn_latency(make(Deployment::mec_m1, 2080, 0.01)).triple();
  EXPECT_NEAR(t.mean / 0.881e-3, 1.0, 0.01);
  EXPECT_NEAR(t.p90 / 0.949e-3, 1.0, 0.01);
  EXPECT_NEAR(t.p9999 / 1.304e-3, 1.0, 0.02);
}

TEST(TnLatency, MecGnbAnchors) {
  const PercentileTriple t = tn_latency(make(Deployment::mec_gnb, 2080, 0.01)).triple();
  EXPECT_NEAR(t.mean / 0.425e-3, 1.0, 0.01);
  EXPECT_NEAR(t.p9999 / 0.633e-3, 1.0, 0.02);
}

TEST(TnLatency, MecCnUnstableAtSmallAlpha) {
  try {
    tn_latency(make(Deployment::mec_cn, 2080, 0.001));
    FAIL() << "expected instability";
  } catch (const instability_error& e) {
    ASSERT_FALSE(e.nodes().empty());
    EXPECT_EQ(e.nodes()[0].name, "M3/UL");
    EXPECT_GT(e.nodes()[0].rho, 1.0);
  }
}

TEST(TnLatency, MeanMonotone) {
  for (Deployment d : all_deployments) {
    double last = 0.0;
    for (double a = 0.01; a < 0.49; a += 0.02) {
      const double m = tn_latency(make(d, 2080, a)).mean();
      if (last > 0.0) { EXPECT_LT(m, last); }
      last = m;
    }
    last = 0.0;
    for (double lam = 1000; lam <= 30000; lam += 1000) {
      const double m = tn_latency(make(d, lam, 0.05)).mean();
      EXPECT_GT(m, last);
      last = m;
    }
  }
}

TEST(TnLatency, HypoexponentialKeepsMean) {
  Scenario s = make(Deployment::mec_cn, 2080, 0.01);
  const LatencyDistribution one = tn_latency(s);
  s.tn_model = TnModel::hypoexponential;
  const LatencyDistribution hypo = tn_latency(s);
  EXPECT_NEAR(hypo.mean(), one.mean(), 1e-15);
  EXPECT_NEAR(hypo.mean(), tn_shift(s).total() + tn_mean_excess(s), 1e-15);
  EXPECT_LE(hypo.percentile(0.9999), one.percentile(0.9999));
}

TEST(CnRates, UpfLoad) {
  EXPECT_DOUBLE_EQ(cn_rates(make(Deployment::mec_cn, 2080, 0.01)).lambda_ul, 3594240.0);
  const CnPath g = cn_rates(make(Deployment::mec_gnb, 2080, 0.01));
  EXPECT_DOUBLE_EQ(g.lambda_ul, 2080.0);
  EXPECT_EQ(g.d_cn_km, 0.0);
  EXPECT_EQ(g.propagation(2e5), 0.0);
  EXPECT_EQ(cn_rates(make(Deployment::centralized, 2080, 0.01)).s, 1);
}

TEST(CnLatency, CentralizedMean) {
  const Scenario s = make(Deployment::centralized, 2080, 0.01);
  const LatencyDistribution d = cn_latency(s);
  EXPECT_NEAR(d.mean() / 2.0006e-3, 1.0, 0.02);
  EXPECT_NEAR(d.mean(), cn_mean(s), 1e-15);
  EXPECT_GE(d.mean(), 2.0 * s.topology.d_cn_km / s.topology.v_km_s);
  EXPECT_GE(d.percentile(0.9), 2.0 * s.topology.d_cn_km / s.topology.v_km_s);
}

TEST(CnLatency, MecMeans) {
  EXPECT_NEAR(cn_latency(make(Deployment::mec_m1, 2080, 0.1)).mean() / 0.00001e-3, 1.0, 0.25);
  EXPECT_NEAR(cn_latency(make(Deployment::mec_m1, 2080, 0.01)).mean() / 0.0001e-3, 1.0, 0.25);
}

TEST(CnLatency, LightLoadFloor) {
  for (Deployment d : all_deployments) {
    Scenario s = make(d, 1e-6, 0.01);
    const CnPath p = cn_rates(s);
    const double prop = p.propagation(s.topology.v_km_s);
    const double floor = d == Deployment::centralized
                             ? 2 * (4.0 / p.mu_ul + 2.0 * p.s / p.mu_ul + prop)
                             : 2.0 / p.mu_ul + 2.0 / p.mu_dl;
    EXPECT_NEAR(cn_mean(s) / floor, 1.0, 1e-9) << to_string(d);
  }
}

TEST(CnLatency, UnstableUpf) {
  EXPECT_THROW(cn_latency(make(Deployment::mec_cn, 2080, 0.0001)), instability_error);
}
