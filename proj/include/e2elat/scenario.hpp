#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "e2elat/convolution.hpp"
#include "e2elat/errors.hpp"

namespace e2elat {

enum class Deployment { mec_gnb, mec_m1, mec_cn, centralized };
enum class MnoMode { single, multi_local, multi_remote };
enum class CompositionMode { percentile_sum, convolution };
enum class ThetaModel { uniform, exponential };
enum class PeeringKind { local, remote };

/// How the AS forwarding latency is sized.
/// hardware: eta * B * theta / F from the processor profile.
/// slot_bound: the mean is pinned to the radio slot t_tt, the operating
/// point of a just-dimensioned server.
enum class AsLatencyMode { hardware, slot_bound };

/// TN excess: one exponential with the summed mean, or the exact tandem.
enum class TnModel { single_exponential, hypoexponential };

inline constexpr Deployment all_deployments[] = {Deployment::mec_gnb, Deployment::mec_m1,
                                                 Deployment::mec_cn, Deployment::centralized};

inline std::string_view to_string(Deployment d) {
  switch (d) {
    case Deployment::mec_gnb: return "mec-gnb";
    case Deployment::mec_m1: return "mec-m1";
    case Deployment::mec_cn: return "mec-cn";
    case Deployment::centralized: return "centralized";
  }
  return "?";
}

inline std::string_view display_name(Deployment d) {
  switch (d) {
    case Deployment::mec_gnb: return "MEC@gNB";
    case Deployment::mec_m1: return "MEC@M1";
    case Deployment::mec_cn: return "MEC@CN";
    case Deployment::centralized: return "Centralized";
  }
  return "?";
}

inline std::string_view to_string(MnoMode m) {
  switch (m) {
    case MnoMode::single: return "single";
    case MnoMode::multi_local: return "multi-local";
    case MnoMode::multi_remote: return "multi-remote";
  }
  return "?";
}

inline std::string_view to_string(CompositionMode m) {
  return m == CompositionMode::percentile_sum ? "percentile-sum" : "convolution";
}
inline std::string_view to_string(ThetaModel m) {
  return m == ThetaModel::uniform ? "uniform" : "exponential";
}
inline std::string_view to_string(AsLatencyMode m) {
  return m == AsLatencyMode::hardware ? "hardware" : "slot-bound";
}
inline std::string_view to_string(TnModel m) {
  return m == TnModel::single_exponential ? "single-exponential" : "hypoexponential";
}
inline std::string_view to_string(PeeringKind k) { return k == PeeringKind::local ? "local" : "remote"; }

template <class E>
E parse_enum(std::string_view s);

template <>
inline Deployment parse_enum<Deployment>(std::string_view s) {
  if (s == "mec-gnb" || s == "MEC@gNB") return Deployment::mec_gnb;
  if (s == "mec-m1" || s == "MEC@M1") return Deployment::mec_m1;
  if (s == "mec-cn" || s == "MEC@CN") return Deployment::mec_cn;
  if (s == "centralized" || s == "Centralized") return Deployment::centralized;
  throw validation_error("unknown deployment '" + std::string(s) +
                         "' (expected mec-gnb, mec-m1, mec-cn, centralized)");
}

template <>
inline MnoMode parse_enum<MnoMode>(std::string_view s) {
  if (s == "single") return MnoMode::single;
  if (s == "multi" || s == "multi-local") return MnoMode::multi_local;
  if (s == "multi-remote") return MnoMode::multi_remote;
  throw validation_error("unknown MNO mode '" + std::string(s) +
                         "' (expected single, multi, multi-local, multi-remote)");
}

template <>
inline CompositionMode parse_enum<CompositionMode>(std::string_view s) {
  if (s == "percentile-sum") return CompositionMode::percentile_sum;
  if (s == "convolution") return CompositionMode::convolution;
  throw validation_error("unknown composition mode '" + std::string(s) + "'");
}

template <>
inline ThetaModel parse_enum<ThetaModel>(std::string_view s) {
  if (s == "uniform") return ThetaModel::uniform;
  if (s == "exponential") return ThetaModel::exponential;
  throw validation_error("unknown theta model '" + std::string(s) + "'");
}

template <>
inline AsLatencyMode parse_enum<AsLatencyMode>(std::string_view s) {
  if (s == "hardware") return AsLatencyMode::hardware;
  if (s == "slot-bound") return AsLatencyMode::slot_bound;
  throw validation_error("unknown AS latency mode '" + std::string(s) + "'");
}

template <>
inline TnModel parse_enum<TnModel>(std::string_view s) {
  if (s == "single-exponential") return TnModel::single_exponential;
  if (s == "hypoexponential") return TnModel::hypoexponential;
  throw validation_error("unknown TN model '" + std::string(s) + "'");
}

template <>
inline PeeringKind parse_enum<PeeringKind>(std::string_view s) {
  if (s == "local") return PeeringKind::local;
  if (s == "remote") return PeeringKind::remote;
  throw validation_error("unknown peering kind '" + std::string(s) + "'");
}

struct ServiceProfile {
  std::string name;
  double latency_requirement = 0.0;  ///< seconds
  double reliability = 0.0;          ///< percentile the requirement applies to
};

inline ServiceProfile lloa() { return {"LLoA", 25e-3, 0.90}; }
inline ServiceProfile hloa() { return {"HLoA", 10e-3, 0.9999}; }

inline ServiceProfile service_by_name(std::string_view s) {
  if (s == "lloa" || s == "LLoA") return lloa();
  if (s == "hloa" || s == "HLoA") return hloa();
  throw validation_error("unknown service '" + std::string(s) + "' (expected lloa, hloa)");
}

struct Topology {
  int g = 6;    ///< gNBs per M1
  int m1 = 24;  ///< M1 nodes per M2
  int m2 = 12;  ///< M2 nodes per M3
  double d_gnb_m1_km = 3.0;
  double d_m1_m2_km = 12.0;
  double d_m2_m3_km = 60.0;
  double d_cn_km = 200.0;
  double d_cn_max_km = 100.0;
  double c_gnb_m1 = 10e9;    ///< bits/s
  double c_m1_m2 = 300e9;
  double c_m2_m3 = 6e12;
  double c_cn = 6e12;
  double c_upf_as = 10e12;
  double v_km_s = 2e5;
  double t_p = 0.2e-3;  ///< per-node processing, seconds

  int gnbs_per_m2() const { return g * m1; }
  int gnbs_per_m3() const { return g * m1 * m2; }

  /// Intermediate CN nodes between the gateway UPFs.
  int intermediate_nodes() const {
    if (!(d_cn_max_km > 0.0)) return 0;
    return std::max(0, static_cast<int>(std::floor(d_cn_km / d_cn_max_km)) - 1);
  }
};

/// DL split fractions at each splitting level. Empty means uniform.
struct DlSplit {
  std::vector<double> m3_to_m2;  ///< size m2
  std::vector<double> m2_to_m1;  ///< size m1
  std::vector<double> m1_to_gnb;  ///< size g
};

struct TrafficSpec {
  std::optional<double> lambda_gnb_ul;  ///< packets/s per gNB; overrides the derivation
  double packet_bits = 2464.0;
  std::optional<double> packet_rate_per_vehicle;  ///< T_p
  std::optional<double> vehicles_per_cell;        ///< N_UE
  double p_loss = 0.0;                            ///< residual UL radio loss
  int dl_copies = 1;                              ///< M
  DlSplit split;

  /// lambda_gNB^UL, either given or N_UE * T_p * (1 - P_loss).
  double lambda() const {
    if (lambda_gnb_ul) return *lambda_gnb_ul;
    if (packet_rate_per_vehicle && vehicles_per_cell)
      return *vehicles_per_cell * *packet_rate_per_vehicle * (1.0 - p_loss);
    return std::numeric_limits<double>::quiet_NaN();
  }
};

struct AlphaAllocation {
  double ul = 0.01;
  double dl = 0.01;
};

struct RadioRow {
  std::string service;
  double lambda = 0.0;
  double mean_ms = std::numeric_limits<double>::quiet_NaN();
  double p90_ms = std::numeric_limits<double>::quiet_NaN();
  double p9999_ms = std::numeric_limits<double>::quiet_NaN();
  bool supported = false;
};

struct RadioLatencyTable {
  std::vector<RadioRow> rows;

  /// Row for (service, lambda): an exact lambda match, otherwise the next
  /// larger tabulated lambda. nullopt beyond the largest row.
  std::optional<RadioRow> lookup(std::string_view service, double lambda) const {
    const RadioRow* best = nullptr;
    for (const RadioRow& r : rows) {
      if (r.service != service || r.lambda < lambda) continue;
      if (best == nullptr || r.lambda < best->lambda) best = &r;
    }
    if (best == nullptr) return std::nullopt;
    return *best;
  }
};

inline RadioLatencyTable default_radio_table() {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  constexpr double lambdas[10] = {1040, 2080, 4160, 5200, 6240, 8320, 10400, 20800, 31200, 41600};
  constexpr double lloa_p90[10] = {2.00, 2.00, 2.00, 2.00, 2.00, 2.00, 2.00, 2.32, 6.07, nan};
  constexpr double lloa_mean[10] = {1.50, 1.50, 1.50, 1.50, 1.50, 1.50, 1.50, 1.50, 1.56, 3.09};
  constexpr double hloa_p9999[10] = {2.60, 2.77, 3.08, 3.58, 3.58, 4.55, nan, nan, nan, nan};
  constexpr double hloa_mean[10] = {1.50, 1.50, 1.51, 1.52, 1.53, 1.58, nan, nan, nan, nan};
  RadioLatencyTable t;
  for (int i = 0; i < 10; ++i) {
    const bool ls = !std::isnan(lloa_p90[i]);
    t.rows.push_back({"LLoA", lambdas[i], ls ? lloa_mean[i] : nan, lloa_p90[i], nan, ls});
  }
  for (int i = 0; i < 10; ++i) {
    const bool hs = !std::isnan(hloa_p9999[i]);
    t.rows.push_back({"HLoA", lambdas[i], hs ? hloa_mean[i] : nan, nan, hloa_p9999[i], hs});
  }
  return t;
}

inline constexpr double standard_lambdas[10] = {1040, 2080,  4160,  5200,  6240,
                                             8320, 10400, 20800, 31200, 41600};

struct AsHardwareProfile {
  int processors = 2;
  int parallel_units = 48;   ///< cores or hardware threads per processor
  double frequency = 3.6e9;  ///< cycles/s per unit
  ThetaModel theta_model = ThetaModel::uniform;
  double theta_lo = 100.0;  ///< cycles/bit
  double theta_hi = 300.0;
  double theta_exp_mean = 200.0;
  double t_tt = 0.5e-3;  ///< radio slot, seconds
  AsLatencyMode mode = AsLatencyMode::slot_bound;
  std::optional<int> aggregated_gnbs;  ///< defaults to the deployment fan-in

  double theta_mean() const {
    return theta_model == ThetaModel::uniform ? 0.5 * (theta_lo + theta_hi) : theta_exp_mean;
  }
  double capacity() const {
    return static_cast<double>(processors) * parallel_units * frequency;
  }
};

/// Server profile per deployment: MEC hosts 24-core/48-thread 3.6 GHz parts,
/// the cloud 28-core/56-thread 4.3 GHz parts.
inline AsHardwareProfile default_as_profile(Deployment d) {
  AsHardwareProfile p;
  switch (d) {
    case Deployment::mec_gnb: p.processors = 2; break;
    case Deployment::mec_m1: p.processors = 4; break;
    case Deployment::mec_cn: p.processors = 4; break;
    case Deployment::centralized:
      p.processors = 110;
      p.parallel_units = 56;
      p.frequency = 4.3e9;
      break;
  }
  return p;
}

/// Optional externally supplied CDFs, (t seconds, F) points.
struct ExternalsConfig {
  double internet_min_ms = 1.0;
  double peering_local_min_ms = 0.05;
  double peering_remote_min_ms = 1.0;
  std::optional<Empirical> internet_cdf;  ///< round trip
  std::optional<Empirical> peering_local_cdf;
  std::optional<Empirical> peering_remote_cdf;
};

struct Scenario {
  Deployment deployment = Deployment::mec_gnb;
  Topology topology;
  TrafficSpec traffic;
  AlphaAllocation alpha;
  RadioLatencyTable radio;
  AsHardwareProfile as_profile;
  ServiceProfile service = lloa();
  MnoMode mno_mode = MnoMode::single;
  CompositionMode composition_mode = CompositionMode::percentile_sum;
  TnModel tn_model = TnModel::single_exponential;
  ExternalsConfig externals;
  ConvolutionOptions convolution;

  double lambda() const { return traffic.lambda(); }
};

/// Peering kind applied to multi-MNO totals.
inline PeeringKind peering_for(const Scenario& s) {
  switch (s.mno_mode) {
    case MnoMode::multi_local: return PeeringKind::local;
    case MnoMode::multi_remote: return PeeringKind::remote;
    case MnoMode::single: break;
  }
  return s.deployment == Deployment::centralized ? PeeringKind::remote : PeeringKind::local;
}

struct Violation {
  std::string field;
  std::string bound;
};

namespace detail {

inline void check_split(std::vector<Violation>& out, const std::vector<double>& p, int fanout,
                        const char* field) {
  if (p.empty()) return;
  if (static_cast<int>(p.size()) != fanout) {
    out.push_back({field, "one fraction per child link (" + std::to_string(fanout) + ")"});
    return;
  }
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) out.push_back({field, "fractions must be >= 0"});
    sum += x;
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "fractions must sum to 1 (sum = %.9g)", sum);
    out.push_back({field, buf});
  }
}

}  // namespace detail

inline std::vector<Violation> validate(const Scenario& s) {
  std::vector<Violation> v;
  const Topology& t = s.topology;
  if (t.g < 1) v.push_back({"topology.g", ">= 1"});
  if (t.m1 < 1) v.push_back({"topology.m1", ">= 1"});
  if (t.m2 < 1) v.push_back({"topology.m2", ">= 1"});
  const std::pair<const char*, double> dists[] = {{"topology.d_gnb_m1_km", t.d_gnb_m1_km},
                                                  {"topology.d_m1_m2_km", t.d_m1_m2_km},
                                                  {"topology.d_m2_m3_km", t.d_m2_m3_km},
                                                  {"topology.d_cn_km", t.d_cn_km},
                                                  {"topology.d_cn_max_km", t.d_cn_max_km}};
  for (const auto& [name, d] : dists) {
    if (!(d >= 0.0) || !std::isfinite(d)) v.push_back({name, ">= 0"});
  }
  const std::pair<const char*, double> caps[] = {{"topology.c_gnb_m1", t.c_gnb_m1},
                                                 {"topology.c_m1_m2", t.c_m1_m2},
                                                 {"topology.c_m2_m3", t.c_m2_m3},
                                                 {"topology.c_cn", t.c_cn},
                                                 {"topology.c_upf_as", t.c_upf_as}};
  for (const auto& [name, c] : caps) {
    if (!(c > 0.0) || !std::isfinite(c)) v.push_back({name, "> 0"});
  }
  if (!(t.v_km_s > 0.0)) v.push_back({"topology.v_km_s", "> 0"});
  if (!(t.t_p >= 0.0)) v.push_back({"topology.t_p", ">= 0"});

  const TrafficSpec& tr = s.traffic;
  const double lam = tr.lambda();
  if (!(lam > 0.0) || !std::isfinite(lam))
    v.push_back({"traffic.lambda_gnb_ul", "> 0 (give it directly or via N_UE and T_p)"});
  if (!(tr.packet_bits > 0.0)) v.push_back({"traffic.packet_bits", "> 0"});
  if (!(tr.p_loss >= 0.0 && tr.p_loss < 1.0)) v.push_back({"traffic.p_loss", "in [0, 1)"});
  if (tr.dl_copies < 1) v.push_back({"traffic.dl_copies", ">= 1"});
  detail::check_split(v, tr.split.m3_to_m2, t.m2, "traffic.split.m3_to_m2");
  detail::check_split(v, tr.split.m2_to_m1, t.m1, "traffic.split.m2_to_m1");
  detail::check_split(v, tr.split.m1_to_gnb, t.g, "traffic.split.m1_to_gnb");

  const AlphaAllocation& a = s.alpha;
  if (!(a.ul > 0.0 && a.ul < 0.5)) v.push_back({"alpha.ul", "0 < alpha_UL < 0.5"});
  if (!(a.dl > 0.0 && a.dl < 0.5)) v.push_back({"alpha.dl", "0 < alpha_DL < 0.5"});
  if (!(a.ul + a.dl < 1.0)) v.push_back({"alpha", "alpha_UL + alpha_DL < 1"});

  const AsHardwareProfile& as = s.as_profile;
  if (as.processors < 1) v.push_back({"as_profile.processors", ">= 1"});
  if (as.parallel_units < 1) v.push_back({"as_profile.parallel_units", ">= 1"});
  if (!(as.frequency > 0.0)) v.push_back({"as_profile.frequency", "> 0"});
  if (!(as.t_tt > 0.0)) v.push_back({"as_profile.t_tt", "> 0"});
  if (!(as.theta_lo > 0.0 && as.theta_lo <= as.theta_hi))
    v.push_back({"as_profile.theta", "0 < theta_lo <= theta_hi"});
  if (!(as.theta_exp_mean > 0.0)) v.push_back({"as_profile.theta_exp_mean", "> 0"});
  if (as.aggregated_gnbs && *as.aggregated_gnbs < 1)
    v.push_back({"as_profile.aggregated_gnbs", ">= 1"});

  const ServiceProfile& sp = s.service;
  if (!(sp.latency_requirement > 0.0)) v.push_back({"service.latency_requirement", "> 0"});
  if (!(sp.reliability > 0.0 && sp.reliability < 1.0))
    v.push_back({"service.reliability", "in (0, 1)"});

  for (const RadioRow& r : s.radio.rows) {
    const std::string f = "radio[" + r.service + "," + std::to_string(static_cast<long>(r.lambda)) + "]";
    if (!r.supported) {
      if (!std::isnan(r.mean_ms) || !std::isnan(r.p90_ms) || !std::isnan(r.p9999_ms))
        v.push_back({f, "unsupported rows carry no latency values"});
      continue;
    }
    const double m = r.mean_ms, p1 = r.p90_ms, p2 = r.p9999_ms;
    if ((!std::isnan(m) && !std::isnan(p1) && m > p1) ||
        (!std::isnan(p1) && !std::isnan(p2) && p1 > p2) ||
        (!std::isnan(m) && !std::isnan(p2) && m > p2))
      v.push_back({f, "mean <= p90 <= p99.99"});
  }

  const ConvolutionOptions& c = s.convolution;
  if (!(c.step > 0.0)) v.push_back({"convolution.step", "> 0"});
  if (!(c.tail > 0.0 && c.tail < 1e-2)) v.push_back({"convolution.tail", "in (0, 0.01)"});
  return v;
}

inline std::string describe(const std::vector<Violation>& v) {
  std::string out;
  for (const Violation& x : v) {
    if (!out.empty()) out += "; ";
    out += x.field + ": " + x.bound;
  }
  return out;
}

inline void require_valid(const Scenario& s) {
  const auto v = validate(s);
  if (!v.empty()) throw validation_error("invalid scenario: " + describe(v));
}

inline Scenario default_scenario(Deployment d, const ServiceProfile& service, double lambda,
                                       double alpha) {
  Scenario s;
  s.deployment = d;
  s.traffic.lambda_gnb_ul = lambda;
  s.alpha = {alpha, alpha};
  s.radio = default_radio_table();
  s.as_profile = default_as_profile(d);
  s.service = service;
  require_valid(s);
  return s;
}

}  // namespace e2elat
