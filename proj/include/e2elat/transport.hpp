#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "e2elat/convolution.hpp"
#include "e2elat/distribution.hpp"
#include "e2elat/errors.hpp"
#include "e2elat/scenario.hpp"

namespace e2elat {

enum class NodeId { gnb, m1, m2, m3 };
enum class Direction { ul, dl };

inline std::string_view to_string(NodeId n) {
  switch (n) {
    case NodeId::gnb: return "gNB";
    case NodeId::m1: return "M1";
    case NodeId::m2: return "M2";
    case NodeId::m3: return "M3";
  }
  return "?";
}
inline std::string_view to_string(Direction d) { return d == Direction::ul ? "UL" : "DL"; }

struct NodeRates {
  NodeId node;
  Direction direction;
  double lambda;
  double mu;
  double capacity;  ///< link capacity behind mu, bits/s

  double rho() const { return lambda / mu; }
  bool unstable() const { return lambda >= mu; }
  std::string name() const {
    return std::string(to_string(node)) + "/" + std::string(to_string(direction));
  }
};

/// Aggregate UL rate seen by the UPF, and so by the AS, for a deployment.
inline double upf_ul_lambda(const Scenario& s) {
  const double lam = s.lambda();
  const Topology& t = s.topology;
  switch (s.deployment) {
    case Deployment::mec_gnb: return lam;
    case Deployment::mec_m1: return t.g * lam;
    case Deployment::mec_cn:
    case Deployment::centralized: return static_cast<double>(t.gnbs_per_m3()) * lam;
  }
  return lam;
}

/// Fraction routed to the tagged child: the largest split entry, or 1/fanout.
inline double split_fraction(const std::vector<double>& p, int fanout) {
  if (p.empty()) return 1.0 / fanout;
  return *std::max_element(p.begin(), p.end());
}

/// UL then DL queueing nodes on the deployment's TN path.
inline std::vector<NodeRates> tn_rates(const Scenario& s) {
  const Topology& t = s.topology;
  const double b = s.traffic.packet_bits;
  const double au = s.alpha.ul;
  const double ad = s.alpha.dl;
  const double l_gnb = s.lambda();
  const double l_m1 = t.g * l_gnb;
  const double l_m2 = t.m1 * l_m1;
  const double l_m3 = t.m2 * l_m2;
  const double dl_root = s.traffic.dl_copies * upf_ul_lambda(s);
  const double p_m3 = split_fraction(s.traffic.split.m3_to_m2, t.m2);
  const double p_m2 = split_fraction(s.traffic.split.m2_to_m1, t.m1);
  const double p_m1 = split_fraction(s.traffic.split.m1_to_gnb, t.g);

  auto ul = [&](NodeId n, double lam, double c) {
    return NodeRates{n, Direction::ul, lam, au * c / b, c};
  };
  auto dl = [&](NodeId n, double lam, double c) {
    return NodeRates{n, Direction::dl, lam, ad * c / b, c};
  };

  std::vector<NodeRates> out;
  switch (s.deployment) {
    case Deployment::mec_gnb:
      out.push_back(ul(NodeId::gnb, l_gnb, t.c_gnb_m1));
      break;
    case Deployment::mec_m1:
      out.push_back(ul(NodeId::gnb, l_gnb, t.c_gnb_m1));
      out.push_back(ul(NodeId::m1, l_m1, t.c_m1_m2));
      out.push_back(dl(NodeId::m1, p_m1 * dl_root, t.c_gnb_m1));
      break;
    case Deployment::mec_cn:
    case Deployment::centralized: {
      out.push_back(ul(NodeId::gnb, l_gnb, t.c_gnb_m1));
      out.push_back(ul(NodeId::m1, l_m1, t.c_m1_m2));
      out.push_back(ul(NodeId::m2, l_m2, t.c_m2_m3));
      out.push_back(ul(NodeId::m3, l_m3, t.c_cn));
      // Each DL queue feeds one child link and sees that link's share.
      const double to_m2 = p_m3 * dl_root;
      const double to_m1 = p_m2 * to_m2;
      out.push_back(dl(NodeId::m3, to_m2, t.c_m2_m3));
      out.push_back(dl(NodeId::m2, to_m1, t.c_m1_m2));
      out.push_back(dl(NodeId::m1, p_m1 * to_m1, t.c_gnb_m1));
      break;
    }
  }
  return out;
}

/// Deterministic part of the TN round trip.
struct TnShift {
  double propagation = 0.0;  ///< UL + DL, seconds
  double processing = 0.0;   ///< n_UL + n_DL node processing, seconds

  double total() const { return propagation + processing; }
};

inline TnShift tn_shift(const Scenario& s) {
  const Topology& t = s.topology;
  double one_way_km = 0.0;
  int nodes = 1;
  switch (s.deployment) {
    case Deployment::mec_gnb: break;
    case Deployment::mec_m1:
      one_way_km = t.d_gnb_m1_km;
      nodes = 2;
      break;
    case Deployment::mec_cn:
    case Deployment::centralized:
      one_way_km = t.d_gnb_m1_km + t.d_m1_m2_km + t.d_m2_m3_km;
      nodes = 4;
      break;
  }
  return {2.0 * one_way_km / t.v_km_s, 2.0 * nodes * t.t_p};
}

inline void throw_if_unstable(const std::vector<NodeRates>& nodes, const char* segment) {
  std::vector<instability_error::node> bad;
  std::string list;
  for (const NodeRates& n : nodes) {
    if (!n.unstable()) continue;
    bad.push_back({n.name(), n.rho()});
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%s rho=%.4g", list.empty() ? "" : ", ", n.name().c_str(),
                  n.rho());
    list += buf;
  }
  if (!bad.empty()) {
    throw instability_error(std::string(segment) + ": alpha too small for the offered load (" +
                                list + ")",
                            std::move(bad));
  }
}

/// Sum of 1/(mu - lambda) over the TN path.
inline double tn_mean_excess(const Scenario& s) {
  const auto nodes = tn_rates(s);
  throw_if_unstable(nodes, "TN");
  double ex = 0.0;
  for (const NodeRates& n : nodes) ex += 1.0 / (n.mu - n.lambda);
  return ex;
}

/// Round-trip TN latency. The default folds the per-node exponential
/// sojourns into one exponential with the summed mean; the hypoexponential
/// model convolves them exactly.
inline LatencyDistribution tn_latency(const Scenario& s) {
  const auto nodes = tn_rates(s);
  throw_if_unstable(nodes, "TN");
  const double shift = tn_shift(s).total();
  if (s.tn_model == TnModel::single_exponential) {
    double ex = 0.0;
    for (const NodeRates& n : nodes) ex += 1.0 / (n.mu - n.lambda);
    return ShiftedExponential{shift, ex};
  }
  std::vector<LatencyDistribution> parts{Deterministic{shift}};
  for (const NodeRates& n : nodes) parts.emplace_back(ShiftedExponential{0.0, 1.0 / (n.mu - n.lambda)});
  return convolve_all(parts, s.convolution);
}

}  // namespace e2elat
