#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "e2elat/convolution.hpp"
#include "e2elat/core.hpp"
#include "e2elat/distribution.hpp"
#include "e2elat/scenario.hpp"
#include "e2elat/transport.hpp"

namespace e2elat {

enum class Discipline { exponential, deterministic };

struct SimNode {
  std::string name;
  double lambda = 0.0;
  double mu = 1.0;
  Discipline discipline = Discipline::exponential;
  double extra = 0.0;           ///< deterministic delay added to every packet
  bool include_service = true;  ///< false records the waiting time only
};

struct SimConfig {
  std::uint64_t seed = 1;
  std::size_t n_packets = 1'000'000;
  std::size_t warmup = 100'000;
  std::vector<SimNode> chain;
  double extra = 0.0;  ///< path-level deterministic delay
};

struct NodeTrend {
  std::string name;
  double q2 = 0.0;  ///< mean over the second quarter of recorded packets
  double q3 = 0.0;
  double q4 = 0.0;
  bool growing = false;
};

struct SimResult {
  std::vector<double> samples;  ///< recorded path latencies, sorted ascending
  PercentileTriple stats;
  bool converged = true;
  std::vector<NodeTrend> trends;

  std::size_t count() const { return samples.size(); }

  /// Smallest sample x with empirical F(x) >= p.
  double quantile(double p) const {
    if (samples.empty()) return std::numeric_limits<double>::quiet_NaN();
    const double k = std::ceil(p * static_cast<double>(samples.size()));
    const auto i = static_cast<std::size_t>(std::max(1.0, k)) - 1;
    return samples[std::min(i, samples.size() - 1)];
  }

  /// Empirical CDF through (x_i, rank/n) at the distinct sample values.
  Empirical ecdf() const {
    Empirical e;
    const double n = static_cast<double>(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (i + 1 < samples.size() && samples[i + 1] == samples[i]) continue;
      e.t.push_back(samples[i]);
      e.F.push_back(static_cast<double>(i + 1) / n);
    }
    if (!e.F.empty()) e.F.back() = 1.0;
    return e;
  }
};

/// Queue growth over the recorded run: each of the last two quarters
/// averages more than 10% above the previous one.
inline NodeTrend trend_of(const std::string& name, const std::vector<double>& v) {
  NodeTrend t;
  t.name = name;
  const std::size_t q = v.size() / 4;
  if (q == 0) return t;
  auto avg = [&](std::size_t from) {
    double s = 0.0;
    for (std::size_t i = from; i < from + q; ++i) s += v[i];
    return s / static_cast<double>(q);
  };
  t.q2 = avg(q);
  t.q3 = avg(2 * q);
  t.q4 = avg(3 * q);
  t.growing = t.q3 > 1.1 * t.q2 && t.q4 > 1.1 * t.q3;
  return t;
}

/// Runs every node of the chain as an independent FIFO queue fed by its
/// own Poisson stream, as in a product-form network, and sums one packet's
/// sojourn per node into a path sample. Deterministic for a given seed.
inline SimResult simulate(const SimConfig& cfg) {
  if (cfg.warmup >= cfg.n_packets) throw validation_error("simulate: need n_packets > warmup");
  SimResult out;
  const std::size_t rec = cfg.n_packets - cfg.warmup;
  for (const SimNode& n : cfg.chain) {
    if (!(n.mu > 0.0) || !(n.lambda >= 0.0)) throw validation_error("simulate: invalid node rates");
    if (n.lambda == 0.0) {
      out.converged = true;
      out.stats = PercentileTriple{};
      return out;
    }
  }
  std::vector<double> path(rec, cfg.extra);
  std::vector<double> node(rec);
  for (std::size_t k = 0; k < cfg.chain.size(); ++k) {
    const SimNode& n = cfg.chain[k];
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(k)};
    std::mt19937_64 rng(seq);
    std::exponential_distribution<double> inter(n.lambda);
    std::exponential_distribution<double> service_exp(n.mu);
    const double d = 1.0 / n.mu;
    // Lindley recursion: W' = max(0, W + S - A).
    double w = 0.0;
    double s = n.discipline == Discipline::exponential ? service_exp(rng) : d;
    for (std::size_t i = 0; i < cfg.n_packets; ++i) {
      if (i >= cfg.warmup) node[i - cfg.warmup] = w + (n.include_service ? s : 0.0) + n.extra;
      const double a = inter(rng);
      w = std::max(0.0, w + s - a);
      s = n.discipline == Discipline::exponential ? service_exp(rng) : d;
    }
    NodeTrend tr = trend_of(n.name, node);
    if (tr.growing || n.lambda >= n.mu) out.converged = false;
    out.trends.push_back(std::move(tr));
    for (std::size_t i = 0; i < rec; ++i) path[i] += node[i];
  }
  double sum = 0.0;
  for (double x : path) sum += x;
  std::sort(path.begin(), path.end());
  out.samples = std::move(path);
  out.stats.mean = sum / static_cast<double>(rec);
  out.stats.p90 = out.quantile(0.90);
  out.stats.p9999 = out.quantile(0.9999);
  return out;
}

/// Kolmogorov-Smirnov distance between sorted samples and a CDF.
inline double ks_distance(const std::vector<double>& sorted, const std::function<double(double)>& F) {
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    const double x = sorted[i];
    std::size_t first = i;
    while (first > 0 && sorted[first - 1] == x) --first;
    const double below = static_cast<double>(first) / n;
    const double at = static_cast<double>(i + 1) / n;
    d = std::max(d, std::fabs(at - F(x)));
    d = std::max(d, std::fabs(below - F(std::nextafter(x, -std::numeric_limits<double>::infinity()))));
  }
  return d;
}

/// TN and CN queues of a scenario as a simulation chain, UL then DL.
inline SimConfig deployment_chain(const Scenario& s, std::size_t n_packets, std::uint64_t seed) {
  SimConfig cfg;
  cfg.seed = seed;
  cfg.n_packets = n_packets;
  cfg.warmup = n_packets / 10;
  cfg.extra = tn_shift(s).total();
  const auto tn = tn_rates(s);
  throw_if_unstable(tn, "TN");
  for (const NodeRates& n : tn)
    cfg.chain.push_back({"TN " + n.name(), n.lambda, n.mu, Discipline::exponential, 0.0, true});
  const CnPath cn = cn_rates(s);
  const bool central = s.deployment == Deployment::centralized;
  const double prop = cn.propagation(s.topology.v_km_s);
  auto upf = [&](const std::string& name, double lam, double mu) {
    // Service D = 1/mu is the queue's own; the second 1/mu is processing.
    cfg.chain.push_back({name, lam, mu, Discipline::deterministic, 1.0 / mu, true});
  };
  if (!central) {
    upf("UPF/UL", cn.lambda_ul, cn.mu_ul);
    upf("UPF/DL", cn.lambda_dl, cn.mu_dl);
  } else {
    upf("UPF/UL gw1", cn.lambda_ul, cn.mu_ul);
    upf("UPF/UL gw2", cn.lambda_ul, cn.mu_ul);
    upf("UPF/DL gw1", cn.lambda_dl, cn.mu_dl);
    upf("UPF/DL gw2", cn.lambda_dl, cn.mu_dl);
    cfg.extra += 2.0 * prop + cn.s * 2.0 / cn.mu_ul + cn.s * 2.0 / cn.mu_dl;
  }
  return cfg;
}

struct DeploymentSimReport {
  SimResult sim;
  PercentileTriple analytical;  ///< TN convolved with CN
  PercentileTriple deviation;   ///< analytical / empirical - 1
};

inline DeploymentSimReport simulate_deployment(const Scenario& s, std::size_t n_packets,
                                               std::uint64_t seed) {
  require_valid(s);
  DeploymentSimReport rep;
  rep.sim = simulate(deployment_chain(s, n_packets, seed));
  const LatencyDistribution both = convolve(tn_latency(s), cn_latency(s), s.convolution);
  rep.analytical = {both.mean(), both.percentile(0.90), both.percentile(0.9999)};
  rep.deviation = {rep.analytical.mean / rep.sim.stats.mean - 1.0,
                   rep.analytical.p90 / rep.sim.stats.p90 - 1.0,
                   rep.analytical.p9999 / rep.sim.stats.p9999 - 1.0};
  return rep;
}

/// One sample per line under a t_seconds header.
inline void write_samples_csv(const std::string& path, const std::vector<double>& samples) {
  std::ofstream f(path);
  if (!f) throw validation_error("cannot write " + path);
  f << "t_seconds\n";
  f.precision(17);
  for (double x : samples) f << x << '\n';
}

}  // namespace e2elat
