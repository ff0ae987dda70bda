#pragma once

#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "e2elat/app_server.hpp"
#include "e2elat/convolution.hpp"
#include "e2elat/core.hpp"
#include "e2elat/distribution.hpp"
#include "e2elat/externals.hpp"
#include "e2elat/scenario.hpp"
#include "e2elat/transport.hpp"

namespace e2elat {

enum class Component { radio, tn, cn, upf_as, as, peering };
inline constexpr Component all_components[] = {Component::radio,  Component::tn, Component::cn,
                                               Component::upf_as, Component::as, Component::peering};
inline constexpr std::size_t component_count = 6;

inline std::string_view to_string(Component c) {
  switch (c) {
    case Component::radio: return "radio";
    case Component::tn: return "tn";
    case Component::cn: return "cn";
    case Component::upf_as: return "upf_as";
    case Component::as: return "as";
    case Component::peering: return "peering";
  }
  return "?";
}

enum class Verdict { meets, violates, unsupported };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::meets: return "meets";
    case Verdict::violates: return "violates";
    case Verdict::unsupported: return "unsupported";
  }
  return "?";
}

template <>
inline Verdict parse_enum<Verdict>(std::string_view s) {
  if (s == "meets") return Verdict::meets;
  if (s == "violates") return Verdict::violates;
  if (s == "unsupported") return Verdict::unsupported;
  throw validation_error("unknown verdict '" + std::string(s) + "'");
}

enum class ComponentStatus { ok, absent, unsupported };

inline std::string_view to_string(ComponentStatus s) {
  switch (s) {
    case ComponentStatus::ok: return "ok";
    case ComponentStatus::absent: return "absent";
    case ComponentStatus::unsupported: return "unsupported";
  }
  return "?";
}

template <>
inline ComponentStatus parse_enum<ComponentStatus>(std::string_view s) {
  if (s == "ok") return ComponentStatus::ok;
  if (s == "absent") return ComponentStatus::absent;
  if (s == "unsupported") return ComponentStatus::unsupported;
  throw validation_error("unknown component status '" + std::string(s) + "'");
}

struct ComponentResult {
  PercentileTriple stats;  ///< seconds
  double at_requirement = std::numeric_limits<double>::quiet_NaN();
  ComponentStatus status = ComponentStatus::absent;
};

struct Totals {
  PercentileTriple stats;
  double at_requirement = std::numeric_limits<double>::quiet_NaN();
  Verdict verdict = Verdict::unsupported;
  Verdict mean_verdict = Verdict::unsupported;
};

struct ComponentBreakdown {
  Deployment deployment = Deployment::mec_gnb;
  std::string service;
  double lambda = 0.0;
  double alpha_ul = 0.0;
  double alpha_dl = 0.0;
  MnoMode mno_mode = MnoMode::single;
  CompositionMode mode = CompositionMode::percentile_sum;
  PeeringKind peering = PeeringKind::local;
  double requirement = 0.0;  ///< seconds
  double reliability = 0.0;
  std::array<ComponentResult, component_count> components{};
  Totals single;
  Totals multi;
  std::string error;

  const ComponentResult& operator[](Component c) const {
    return components[static_cast<std::size_t>(c)];
  }
  ComponentResult& operator[](Component c) { return components[static_cast<std::size_t>(c)]; }

  const Totals& selected() const { return mno_mode == MnoMode::single ? single : multi; }
  Verdict verdict() const { return selected().verdict; }

  /// Mean-based and percentile-based verdicts differ.
  bool disagreement() const {
    const Totals& t = selected();
    return t.verdict != Verdict::unsupported && t.mean_verdict != Verdict::unsupported &&
           t.verdict != t.mean_verdict;
  }
};

namespace detail {

inline double stat_at(const PercentileTriple& t, const LatencyDistribution* d, double p) {
  if (p == 0.90) return t.p90;
  if (p == 0.9999) return t.p9999;
  return d != nullptr ? d->percentile(p) : std::numeric_limits<double>::quiet_NaN();
}

inline Verdict judge(double value, double limit) {
  if (std::isnan(value)) return Verdict::unsupported;
  return value <= limit ? Verdict::meets : Verdict::violates;
}

inline void append_error(std::string& e, const std::string& what) {
  if (!e.empty()) e += "; ";
  e += what;
}

inline PercentileTriple safe_triple(const LatencyDistribution& d) {
  PercentileTriple t;
  t.mean = d.mean();
  t.p90 = d.percentile(0.90);
  t.p9999 = d.percentile(0.9999);
  return t;
}

}  // namespace detail

/// End-to-end latency of one scenario, component by component.
///
/// The single-MNO total covers radio, TN, CN, UPF-AS (Centralized only) and
/// AS; the multi-MNO total adds the peering point. In percentile-sum mode
/// each statistic of a total is the sum of the component statistics; in
/// convolution mode the component distributions are convolved, with
/// tabulated radio latency replaced by a fitted shifted exponential.
inline ComponentBreakdown compose(const Scenario& s) {
  require_valid(s);
  ComponentBreakdown out;
  out.deployment = s.deployment;
  out.service = s.service.name;
  out.lambda = s.lambda();
  out.alpha_ul = s.alpha.ul;
  out.alpha_dl = s.alpha.dl;
  out.mno_mode = s.mno_mode;
  out.mode = s.composition_mode;
  out.peering = peering_for(s);
  out.requirement = s.service.latency_requirement;
  out.reliability = s.service.reliability;
  const double p = s.service.reliability;

  std::array<std::optional<LatencyDistribution>, component_count> dist;

  auto fill = [&](Component c, auto&& make) {
    ComponentResult& r = out[c];
    try {
      LatencyDistribution d = make();
      r.stats = detail::safe_triple(d);
      r.at_requirement = detail::stat_at(r.stats, &d, p);
      r.status = ComponentStatus::ok;
      dist[static_cast<std::size_t>(c)] = std::move(d);
    } catch (const std::exception& e) {
      r.status = ComponentStatus::unsupported;
      detail::append_error(out.error, std::string(to_string(c)) + ": " + e.what());
    }
  };

  // Radio is tabulated and may lack a percentile, so it is filled by hand.
  {
    ComponentResult& r = out[Component::radio];
    const auto row = s.radio.lookup(s.service.name, out.lambda);
    if (!row || !row->supported) {
      r.status = ComponentStatus::unsupported;
      detail::append_error(out.error, "radio: no supported radio latency for " + s.service.name +
                                          " at this load");
    } else {
      const Tabulated tab{row->mean_ms * 1e-3, row->p90_ms * 1e-3, row->p9999_ms * 1e-3};
      r.stats = {tab.mean, tab.p90, tab.p9999};
      r.status = ComponentStatus::ok;
      try {
        r.at_requirement = detail::stat_at(r.stats, nullptr, p);
      } catch (const std::exception&) {
      }
      if (std::isnan(r.at_requirement)) {
        r.status = ComponentStatus::unsupported;
        detail::append_error(out.error, "radio: service percentile not tabulated");
      }
      if (s.composition_mode == CompositionMode::convolution) {
        if (auto fit = shifted_exponential_fit(tab)) dist[0] = LatencyDistribution(*fit);
      }
    }
  }
  fill(Component::tn, [&] { return tn_latency(s); });
  fill(Component::cn, [&] { return cn_latency(s); });
  if (s.deployment == Deployment::centralized)
    fill(Component::upf_as, [&] { return internet_latency(InternetMode::round_trip, s.externals); });
  fill(Component::as, [&] { return as_latency(s); });
  fill(Component::peering, [&] { return peering_latency(out.peering, s.externals); });

  bool all_ok = true;
  for (Component c : all_components) {
    if (out[c].status == ComponentStatus::unsupported) all_ok = false;
  }

  const double limit = s.service.latency_requirement;
  auto finish = [&](Totals& t) {
    t.verdict = all_ok ? detail::judge(t.at_requirement, limit) : Verdict::unsupported;
    t.mean_verdict = all_ok ? detail::judge(t.stats.mean, limit) : Verdict::unsupported;
    if (!all_ok) {
      t.stats = PercentileTriple{};
      t.at_requirement = std::numeric_limits<double>::quiet_NaN();
    }
  };

  if (!all_ok) {
    finish(out.single);
    finish(out.multi);
    return out;
  }

  if (s.composition_mode == CompositionMode::percentile_sum) {
    PercentileTriple sum{0.0, 0.0, 0.0};
    double req = 0.0;
    for (Component c : all_components) {
      const ComponentResult& r = out[c];
      if (c == Component::peering || r.status != ComponentStatus::ok) continue;
      sum = sum + r.stats;
      req += r.at_requirement;
    }
    out.single.stats = sum;
    out.single.at_requirement = req;
    out.multi.stats = sum + out[Component::peering].stats;
    out.multi.at_requirement = req + out[Component::peering].at_requirement;
  } else {
    try {
      std::vector<LatencyDistribution> parts;
      for (Component c : all_components) {
        const auto& d = dist[static_cast<std::size_t>(c)];
        if (c == Component::peering || !d) continue;
        parts.push_back(*d);
      }
      if (!dist[0]) throw unsupported_percentile("radio latency needs two statistics to fit");
      const LatencyDistribution single = convolve_all(parts, s.convolution);
      const LatencyDistribution multi =
          convolve(single, *dist[static_cast<std::size_t>(Component::peering)], s.convolution);
      out.single.stats = detail::safe_triple(single);
      out.single.at_requirement = detail::stat_at(out.single.stats, &single, p);
      out.multi.stats = detail::safe_triple(multi);
      out.multi.at_requirement = detail::stat_at(out.multi.stats, &multi, p);
    } catch (const std::exception& e) {
      all_ok = false;
      detail::append_error(out.error, std::string("convolution: ") + e.what());
    }
  }
  finish(out.single);
  finish(out.multi);
  return out;
}

struct SweepAxes {
  std::vector<double> lambdas;
  std::vector<double> alphas;
  std::vector<Deployment> deployments;
  std::vector<ServiceProfile> services;
  /// Swap in each deployment's default server hardware (mode and theta
  /// settings of the base are kept).
  bool per_deployment_hardware = true;
};

inline std::size_t sweep_size(const SweepAxes& a) {
  return a.lambdas.size() * a.alphas.size() * a.deployments.size() * a.services.size();
}

/// Scenario for one sweep cell; cells are ordered deployment, service,
/// alpha, lambda (outermost first).
inline Scenario sweep_cell(const Scenario& base, const SweepAxes& a, std::size_t index) {
  const std::size_t nl = a.lambdas.size();
  const std::size_t na = a.alphas.size();
  const std::size_t ns = a.services.size();
  const double lam = a.lambdas[index % nl];
  const double alpha = a.alphas[(index / nl) % na];
  const ServiceProfile& svc = a.services[(index / (nl * na)) % ns];
  const Deployment dep = a.deployments[index / (nl * na * ns)];
  Scenario s = base;
  s.deployment = dep;
  s.service = svc;
  s.traffic.lambda_gnb_ul = lam;
  s.alpha = {alpha, alpha};
  if (a.per_deployment_hardware) {
    const AsHardwareProfile hw = default_as_profile(dep);
    s.as_profile.processors = hw.processors;
    s.as_profile.parallel_units = hw.parallel_units;
    s.as_profile.frequency = hw.frequency;
  }
  return s;
}

/// Evaluates every cell; per-cell failures are recorded in the row. Rows
/// are identical for any job count.
inline std::vector<ComponentBreakdown> sweep(const Scenario& base, const SweepAxes& axes,
                                             unsigned jobs = 0) {
  if (axes.lambdas.empty() || axes.alphas.empty() || axes.deployments.empty() ||
      axes.services.empty())
    throw validation_error("sweep axes must be nonempty");
  const std::size_t n = sweep_size(axes);
  std::vector<ComponentBreakdown> rows(n);
  auto run = [&](std::size_t i) {
    const Scenario s = sweep_cell(base, axes, i);
    try {
      rows[i] = compose(s);
    } catch (const std::exception& e) {
      ComponentBreakdown& r = rows[i];
      r.deployment = s.deployment;
      r.service = s.service.name;
      r.lambda = s.lambda();
      r.alpha_ul = s.alpha.ul;
      r.alpha_dl = s.alpha.dl;
      r.mno_mode = s.mno_mode;
      r.mode = s.composition_mode;
      r.peering = peering_for(s);
      r.requirement = s.service.latency_requirement;
      r.reliability = s.service.reliability;
      r.error = e.what();
    }
  };
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) run(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (unsigned j = 0; j < jobs; ++j) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) run(i);
    });
  }
  for (std::thread& t : pool) t.join();
  return rows;
}

}  // namespace e2elat
