#pragma once

#include <algorithm>
#include <cmath>

#include "e2elat/distribution.hpp"
#include "e2elat/scenario.hpp"
#include "e2elat/transport.hpp"

namespace e2elat {

struct AsLoad {
  double lambda_ul;  ///< packets/s reaching the AS
  double eta_tt;     ///< packets per radio slot
  double capacity;   ///< aggregate cycles/s
  int aggregated_gnbs;
};

inline int default_aggregated_gnbs(const Scenario& s) {
  switch (s.deployment) {
    case Deployment::mec_gnb: return 1;
    case Deployment::mec_m1: return s.topology.g;
    case Deployment::mec_cn:
    case Deployment::centralized: return s.topology.gnbs_per_m3();
  }
  return 1;
}

inline AsLoad as_load(const Scenario& s) {
  const AsHardwareProfile& p = s.as_profile;
  const int n = p.aggregated_gnbs.value_or(default_aggregated_gnbs(s));
  const double lam = n * s.lambda();
  return {lam, lam * p.t_tt, p.capacity(), n};
}

/// Mean forwarding latency of the configured hardware, eta * B * theta_mean / F.
inline double as_hardware_mean(const Scenario& s) {
  const AsLoad l = as_load(s);
  return l.eta_tt * s.traffic.packet_bits * s.as_profile.theta_mean() / l.capacity;
}

inline LatencyDistribution as_latency(const Scenario& s) {
  const AsHardwareProfile& p = s.as_profile;
  // Latency per cycle-per-bit of theta; the distribution is scale * theta.
  double scale = 0.0;
  if (p.mode == AsLatencyMode::slot_bound) {
    scale = p.t_tt / p.theta_mean();
  } else {
    const AsLoad l = as_load(s);
    if (l.eta_tt == 0.0) return Deterministic{0.0};
    scale = l.eta_tt * s.traffic.packet_bits / l.capacity;
  }
  if (p.theta_model == ThetaModel::uniform) return Uniform{scale * p.theta_lo, scale * p.theta_hi};
  return ShiftedExponential{0.0, scale * p.theta_exp_mean};
}

/// Processors needed to finish a slot's packets within the slot.
inline int min_processors(const Scenario& s) {
  const AsHardwareProfile& p = s.as_profile;
  const AsLoad l = as_load(s);
  const double x = l.eta_tt * s.traffic.packet_bits * p.theta_mean() /
                   (p.t_tt * p.parallel_units * p.frequency);
  const double r = std::round(x);
  const double n = std::fabs(x - r) <= 1e-9 * std::max(1.0, x) ? r : std::ceil(x);
  return std::max(1, static_cast<int>(n));
}

struct BacklogStatus {
  bool backlogged;
  double mean;  ///< hardware mean latency, seconds
};

/// Backlogged when the configured hardware needs longer than one slot on average.
inline BacklogStatus backlog_check(const Scenario& s) {
  return {min_processors(s) > s.as_profile.processors, as_hardware_mean(s)};
}

}  // namespace e2elat
