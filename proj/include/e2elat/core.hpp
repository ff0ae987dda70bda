#pragma once

#include <string>
#include <vector>

#include "e2elat/convolution.hpp"
#include "e2elat/distribution.hpp"
#include "e2elat/scenario.hpp"
#include "e2elat/transport.hpp"

namespace e2elat {

struct CnPath {
  Deployment deployment;
  double lambda_ul;
  double lambda_dl;
  double mu_ul;
  double mu_dl;
  int s;  ///< intermediate UPFs between the gateways
  double d_cn_km;
  double capacity;

  double propagation(double v_km_s) const { return d_cn_km / v_km_s; }

  /// The UPF queues as NodeRates, UL then DL.
  std::vector<NodeRates> nodes() const {
    return {{NodeId::m3, Direction::ul, lambda_ul, mu_ul, capacity},
            {NodeId::m3, Direction::dl, lambda_dl, mu_dl, capacity}};
  }
};

inline CnPath cn_rates(const Scenario& s) {
  const Topology& t = s.topology;
  const bool central = s.deployment == Deployment::centralized;
  const double c = central ? t.c_cn : t.c_upf_as;
  const double b = s.traffic.packet_bits;
  const double up = upf_ul_lambda(s);
  return {s.deployment,
          up,
          s.traffic.dl_copies * up,
          s.alpha.ul * c / b,
          s.alpha.dl * c / b,
          central ? t.intermediate_nodes() : 0,
          central ? t.d_cn_km : 0.0,
          c};
}

namespace detail {

inline void throw_if_cn_unstable(const CnPath& p) {
  std::vector<NodeRates> nodes = p.nodes();
  std::vector<instability_error::node> bad;
  std::string list;
  for (const NodeRates& n : nodes) {
    if (!n.unstable()) continue;
    const std::string name = std::string("UPF/") + std::string(to_string(n.direction));
    bad.push_back({name, n.rho()});
    list += (list.empty() ? "" : ", ") + name + " rho=" + std::to_string(n.rho());
  }
  if (!bad.empty())
    throw instability_error("CN: alpha too small for the offered load (" + list + ")", std::move(bad));
}

}  // namespace detail

/// One CN direction: the gateway UPF pair, the S intermediate UPFs
/// (service only) and the CN propagation.
inline LatencyDistribution cn_direction(double lambda, double mu, int s, double propagation,
                                        bool centralized, const ConvolutionOptions& opt) {
  if (!centralized) return MD1Transit{lambda, mu, 0.0};
  const double extra = propagation + s * 2.0 / mu;
  return convolve(MD1Transit{lambda, mu, extra}, MD1Transit{lambda, mu, 0.0}, opt);
}

/// Closed-form round-trip CN mean.
inline double cn_mean(const Scenario& s) {
  const CnPath p = cn_rates(s);
  detail::throw_if_cn_unstable(p);
  if (s.deployment != Deployment::centralized)
    return md1_transit_mean(p.lambda_ul, p.mu_ul) + md1_transit_mean(p.lambda_dl, p.mu_dl);
  const double prop = p.propagation(s.topology.v_km_s);
  auto one = [&](double lam, double mu) {
    return 2.0 * md1_transit_mean(lam, mu) + 2.0 * p.s / mu + prop;
  };
  return one(p.lambda_ul, p.mu_ul) + one(p.lambda_dl, p.mu_dl);
}

/// Round-trip CN latency.
inline LatencyDistribution cn_latency(const Scenario& s) {
  const CnPath p = cn_rates(s);
  detail::throw_if_cn_unstable(p);
  const bool central = s.deployment == Deployment::centralized;
  const double prop = p.propagation(s.topology.v_km_s);
  const LatencyDistribution ul = cn_direction(p.lambda_ul, p.mu_ul, p.s, prop, central, s.convolution);
  const LatencyDistribution dl = cn_direction(p.lambda_dl, p.mu_dl, p.s, prop, central, s.convolution);
  return convolve(ul, dl, s.convolution);
}

}  // namespace e2elat
