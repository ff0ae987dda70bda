#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "e2elat/app_server.hpp"
#include "e2elat/compose.hpp"
#include "e2elat/core.hpp"
#include "e2elat/scenario.hpp"
#include "e2elat/transport.hpp"

namespace e2elat {

enum class Binding { stability, latency, infeasible };

inline std::string_view to_string(Binding b) {
  switch (b) {
    case Binding::stability: return "stability";
    case Binding::latency: return "latency";
    case Binding::infeasible: return "infeasible";
  }
  return "?";
}

struct NodeUtilization {
  std::string name;
  double lambda;
  double mu;
  double rho;
};

struct DimensioningResult {
  Deployment deployment = Deployment::mec_gnb;
  std::string service;
  double lambda = 0.0;
  MnoMode mno_mode = MnoMode::single;
  bool feasible = false;
  double alpha_min = std::numeric_limits<double>::quiet_NaN();
  double stability_bound = std::numeric_limits<double>::quiet_NaN();
  Binding binding = Binding::infeasible;
  std::string binding_detail;  ///< node for stability, cause when infeasible
  PercentileTriple achieved;   ///< E2E totals at alpha_min
  double achieved_at_requirement = std::numeric_limits<double>::quiet_NaN();
  std::vector<NodeUtilization> utilizations;
  int min_processors = 0;
  std::string error;
};

struct DimensioningOptions {
  double rel_tol = 1e-6;
  /// alpha_min within this fraction above the stability bound counts as
  /// stability-bound: latency is then limited by queue blow-up, not by the
  /// fixed components.
  double stability_margin = 0.15;
  int monotonicity_samples = 12;
  double alpha_max = 0.5;
};

struct StabilityBound {
  double alpha;
  std::string node;
};

/// Smallest alpha keeping every TN and CN queue stable: max lambda_i B / C_i.
inline StabilityBound alpha_stability_bound(const Scenario& s) {
  Scenario probe = s;
  probe.alpha = {0.25, 0.25};
  const double b = s.traffic.packet_bits;
  StabilityBound best{0.0, ""};
  for (const NodeRates& n : tn_rates(probe)) {
    const double a = n.lambda * b / n.capacity;
    if (a > best.alpha) best = {a, "TN " + n.name()};
  }
  const CnPath cn = cn_rates(probe);
  const double a_ul = cn.lambda_ul * b / cn.capacity;
  const double a_dl = cn.lambda_dl * b / cn.capacity;
  if (a_ul > best.alpha) best = {a_ul, "UPF/UL"};
  if (a_dl > best.alpha) best = {a_dl, "UPF/DL"};
  return best;
}

namespace detail {

inline Scenario with_alpha(Scenario s, double a) {
  s.alpha = {a, a};
  return s;
}

/// Deterministic part of TN + CN: every packet pays at least this.
inline double tn_cn_floor(const Scenario& s) {
  const CnPath p = cn_rates(s);
  const bool central = s.deployment == Deployment::centralized;
  const double prop = p.propagation(s.topology.v_km_s);
  auto dir = [&](double mu) { return central ? 2.0 / mu + 2.0 * p.s / mu + prop : 1.0 / mu; };
  return tn_shift(s).total() + dir(p.mu_ul) + dir(p.mu_dl);
}

/// Service-percentile E2E latency at alpha; +inf when not computable.
inline double e2e_at(const Scenario& base, double a, ComponentBreakdown* keep = nullptr) {
  // Near the stability bound the queues are slow enough that the floor
  // alone misses the target; skip the expensive composition.
  if (keep == nullptr && tn_cn_floor(with_alpha(base, a)) > base.service.latency_requirement)
    return std::numeric_limits<double>::infinity();
  const ComponentBreakdown b = compose(with_alpha(base, a));
  const Totals& t = b.selected();
  if (keep != nullptr) *keep = b;
  if (t.verdict == Verdict::unsupported) return std::numeric_limits<double>::infinity();
  return t.at_requirement;
}

inline std::vector<NodeUtilization> utilizations(const Scenario& s) {
  std::vector<NodeUtilization> out;
  for (const NodeRates& n : tn_rates(s)) out.push_back({"TN " + n.name(), n.lambda, n.mu, n.rho()});
  const CnPath cn = cn_rates(s);
  out.push_back({"UPF/UL", cn.lambda_ul, cn.mu_ul, cn.lambda_ul / cn.mu_ul});
  out.push_back({"UPF/DL", cn.lambda_dl, cn.mu_dl, cn.lambda_dl / cn.mu_dl});
  return out;
}

}  // namespace detail

/// Smallest alpha = alpha_UL = alpha_DL meeting stability and the service
/// requirement, by bisection between the stability bound and alpha_max.
/// The alpha carried by the scenario is ignored.
inline DimensioningResult alpha_min(const Scenario& scenario, const ServiceProfile& service,
                                    MnoMode mno, const DimensioningOptions& opt = {}) {
  Scenario s = scenario;
  s.service = service;
  s.mno_mode = mno;
  s.alpha = {0.25, 0.25};
  require_valid(s);

  DimensioningResult r;
  r.deployment = s.deployment;
  r.service = service.name;
  r.lambda = s.lambda();
  r.mno_mode = mno;
  r.min_processors = min_processors(s);

  const auto row = s.radio.lookup(service.name, r.lambda);
  if (!row || !row->supported) {
    r.binding_detail = "radio";
    return r;
  }

  const StabilityBound sb = alpha_stability_bound(s);
  r.stability_bound = sb.alpha;
  const double top = opt.alpha_max * (1.0 - 1e-9);
  if (sb.alpha >= top) {
    r.binding_detail = "stability (" + sb.node + ")";
    return r;
  }

  const double limit = service.latency_requirement;
  ComponentBreakdown at_top;
  const double best = detail::e2e_at(s, top, &at_top);
  if (!(best <= limit)) {
    char buf[200];
    if (std::isinf(best)) {
      std::snprintf(buf, sizeof buf, "latency (not computable at alpha=%.3g: %s)", top,
                    at_top.error.c_str());
    } else {
      std::snprintf(buf, sizeof buf, "latency (%.4f ms > %.4g ms even at alpha=%.3g)", best * 1e3,
                    limit * 1e3, top);
    }
    r.binding_detail = buf;
    r.achieved = at_top.selected().stats;
    r.achieved_at_requirement = best;
    return r;
  }

  // Bisection needs a decreasing latency curve; check a geometric sample.
  {
    const int k = std::max(3, opt.monotonicity_samples);
    const double a0 = sb.alpha > 0.0 ? sb.alpha * (1.0 + 1e-3) : top * 1e-6;
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k; ++i) {
      const double a = a0 * std::pow(top / a0, static_cast<double>(i) / (k - 1));
      const double v = detail::e2e_at(s, a);
      if (v > prev * (1.0 + 1e-12)) {
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "E2E latency not decreasing in alpha (%.6g ms at alpha=%.6g after %.6g ms)",
                      v * 1e3, a, prev * 1e3);
        r.error = buf;
        r.binding_detail = "monotonicity precondition failed";
        return r;
      }
      prev = v;
    }
  }

  double lo = sb.alpha;
  double hi = top;
  while (hi - lo > opt.rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    (detail::e2e_at(s, mid) <= limit ? hi : lo) = mid;
  }

  ComponentBreakdown fin;
  r.achieved_at_requirement = detail::e2e_at(s, hi, &fin);
  r.achieved = fin.selected().stats;
  r.feasible = true;
  r.alpha_min = hi;
  r.utilizations = detail::utilizations(detail::with_alpha(s, hi));
  if (hi <= sb.alpha * (1.0 + opt.stability_margin)) {
    r.binding = Binding::stability;
    r.binding_detail = sb.node;
  } else {
    r.binding = Binding::latency;
    r.binding_detail = "L_REQ";
  }
  return r;
}

struct DimensioningAxes {
  std::vector<double> lambdas;
  std::vector<Deployment> deployments;
  std::vector<ServiceProfile> services;
  std::vector<MnoMode> mno_modes;
  bool per_deployment_hardware = true;
};

struct MonotonicityReport {
  bool ok = true;
  std::vector<std::string> violations;
};

struct DimensioningSweep {
  std::vector<DimensioningResult> rows;
  MonotonicityReport monotonicity;
};

/// Checks alpha_min is nondecreasing in lambda within each
/// (deployment, service, MNO mode) series.
inline MonotonicityReport check_monotonicity(const std::vector<DimensioningResult>& rows) {
  MonotonicityReport rep;
  std::map<std::tuple<int, std::string, int>, std::vector<const DimensioningResult*>> series;
  for (const DimensioningResult& r : rows)
    series[{static_cast<int>(r.deployment), r.service, static_cast<int>(r.mno_mode)}].push_back(&r);
  for (auto& [key, v] : series) {
    std::sort(v.begin(), v.end(), [](auto* a, auto* b) { return a->lambda < b->lambda; });
    const DimensioningResult* last = nullptr;
    for (const DimensioningResult* r : v) {
      if (!r->feasible) continue;
      if (last != nullptr && r->alpha_min < last->alpha_min) {
        char buf[240];
        std::snprintf(buf, sizeof buf, "%s %s %s: alpha_min %.6g at lambda=%g below %.6g at lambda=%g",
                      std::string(display_name(r->deployment)).c_str(), r->service.c_str(),
                      std::string(to_string(r->mno_mode)).c_str(), r->alpha_min, r->lambda,
                      last->alpha_min, last->lambda);
        rep.violations.emplace_back(buf);
        rep.ok = false;
      }
      last = r;
    }
  }
  return rep;
}

/// One result per (deployment, service, MNO mode, lambda), in that nesting.
inline DimensioningSweep alpha_min_sweep(const Scenario& base, const DimensioningAxes& axes,
                                         unsigned jobs = 0, const DimensioningOptions& opt = {}) {
  if (axes.lambdas.empty() || axes.deployments.empty() || axes.services.empty() ||
      axes.mno_modes.empty())
    throw validation_error("dimensioning axes must be nonempty");
  const std::size_t nl = axes.lambdas.size();
  const std::size_t nm = axes.mno_modes.size();
  const std::size_t ns = axes.services.size();
  const std::size_t n = nl * nm * ns * axes.deployments.size();
  DimensioningSweep out;
  out.rows.resize(n);
  auto run = [&](std::size_t i) {
    Scenario s = base;
    s.traffic.lambda_gnb_ul = axes.lambdas[i % nl];
    const MnoMode mno = axes.mno_modes[(i / nl) % nm];
    const ServiceProfile& svc = axes.services[(i / (nl * nm)) % ns];
    s.deployment = axes.deployments[i / (nl * nm * ns)];
    if (axes.per_deployment_hardware) {
      const AsHardwareProfile hw = default_as_profile(s.deployment);
      s.as_profile.processors = hw.processors;
      s.as_profile.parallel_units = hw.parallel_units;
      s.as_profile.frequency = hw.frequency;
    }
    try {
      out.rows[i] = alpha_min(s, svc, mno, opt);
    } catch (const std::exception& e) {
      DimensioningResult& r = out.rows[i];
      r.deployment = s.deployment;
      r.service = svc.name;
      r.lambda = s.lambda();
      r.mno_mode = mno;
      r.error = e.what();
      r.binding_detail = "error";
    }
  };
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) run(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) run(i);
      });
    for (std::thread& t : pool) t.join();
  }
  out.monotonicity = check_monotonicity(out.rows);
  return out;
}

}  // namespace e2elat
