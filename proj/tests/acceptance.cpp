// Acceptance run: one PASS/FAIL line per criterion, details for failures.
// Exits nonzero when any of criteria 1-10 fails; the qualitative checks
// are reported but do not set the exit status.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "e2elat/e2elat.hpp"

using namespace e2elat;

namespace {

bool verbose = false;

class Criterion {
 public:
  Criterion(std::string id, std::string title)
      : id_(std::move(id)), title_(std::move(title)), start_(std::chrono::steady_clock::now()) {}

  void check(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) failures_.push_back(what);
    else if (verbose) passes_.push_back(what);
  }

  /// |computed / expected - 1| <= tol.
  void near_rel(double computed, double expected, double tol, const std::string& what) {
    const double dev = computed / expected - 1.0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: %.6g vs %.6g (%+.2f%%, tol %.0f%%)", what.c_str(), computed,
                  expected, dev * 100.0, tol * 100.0);
    check(std::isfinite(dev) && std::fabs(dev) <= tol, buf);
  }

  void near_abs(double computed, double expected, double tol, const std::string& what) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: %.6g vs %.6g (tol %g)", what.c_str(), computed, expected, tol);
    check(std::isfinite(computed) && std::fabs(computed - expected) <= tol, buf);
  }

  void fail_on(const std::exception& e, const std::string& what) { check(false, what + ": " + e.what()); }

  bool finish() const {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    const bool ok = failures_.empty() && checks_ > 0;
    std::printf("%s %-4s %s (%d checks, %zu failed, %.1f s)\n", ok ? "PASS" : "FAIL", id_.c_str(),
                title_.c_str(), checks_, failures_.size(), secs);
    for (const std::string& f : failures_) std::printf("       x %s\n", f.c_str());
    for (const std::string& p : passes_) std::printf("       . %s\n", p.c_str());
    std::fflush(stdout);
    return ok;
  }

 private:
  std::string id_;
  std::string title_;
  int checks_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> passes_;
  std::chrono::steady_clock::time_point start_;
};

std::string name(Deployment d) { return std::string(display_name(d)); }

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// 1
bool shifts() {
  Criterion c("1", "TN propagation and processing shifts");
  for (int d = 0; d < 4; ++d) {
    const TnShift sh = tn_shift(default_scenario(all_deployments[d], lloa(), 2080, 0.01));
    // Exact up to the last bit of the ms conversion.
    c.near_abs(sh.propagation * 1e3, reference::tn_propagation_ms[d], 1e-12,
               name(all_deployments[d]) + " propagation");
    c.near_abs(sh.processing * 1e3, reference::tn_processing_ms[d], 1e-12,
               name(all_deployments[d]) + " processing");
  }
  return c.finish();
}

// 2
bool tn_table() {
  Criterion c("2", "TN latency at lambda=2080");
  const char* stat[3] = {"mean", "p90", "p99.99"};
  for (int d = 0; d < 4; ++d) {
    for (int a = 0; a < 3; ++a) {
      const double alpha = reference::table6_alphas[a];
      const std::string cell = name(all_deployments[d]) + fmt(" alpha=%g", alpha);
      const Scenario s = default_scenario(all_deployments[d], lloa(), 2080, alpha);
      if (reference::table6_unstable[d][a]) {
        try {
          tn_latency(s);
          c.check(false, cell + ": expected instability");
        } catch (const instability_error&) {
          c.check(true, cell + ": unstable");
        }
        continue;
      }
      try {
        const PercentileTriple t = tn_latency(s).triple();
        const double v[3] = {t.mean, t.p90, t.p9999};
        for (int k = 0; k < 3; ++k)
          c.near_rel(v[k] * 1e3, reference::table6[d][a][k], 0.05, cell + " " + stat[k]);
      } catch (const std::exception& e) {
        c.fail_on(e, cell);
      }
    }
  }
  return c.finish();
}

// 3
bool cn_table() {
  Criterion c("3", "CN latency means");
  c.near_rel(cn_latency(default_scenario(Deployment::centralized, lloa(), 2080, 0.01)).mean() * 1e3,
             2.0006, 0.02, "Centralized alpha=0.01 mean");
  for (Deployment d : {Deployment::mec_gnb, Deployment::mec_m1, Deployment::mec_cn}) {
    c.near_rel(cn_latency(default_scenario(d, lloa(), 2080, 0.01)).mean() * 1e3, 0.0001, 0.25,
               name(d) + " alpha=0.01 mean");
    c.near_rel(cn_latency(default_scenario(d, lloa(), 2080, 0.1)).mean() * 1e3, 0.00001, 0.25,
               name(d) + " alpha=0.1 mean");
  }
  return c.finish();
}

// 4
bool externals() {
  Criterion c("4", "peering and Internet anchors");
  const char* stat[3] = {"mean", "p90", "p99.99"};
  const PeeringKind kinds[2] = {PeeringKind::remote, PeeringKind::local};
  const char* names[2] = {"remote", "local"};
  for (int i = 0; i < 2; ++i) {
    const PercentileTriple t = peering_latency(kinds[i]).triple();
    const double v[3] = {t.mean, t.p90, t.p9999};
    for (int k = 0; k < 3; ++k)
      c.near_abs(v[k] * 1e3, reference::table8[i][k], 5e-4, std::string(names[i]) + " " + stat[k]);
  }
  const LatencyDistribution net = internet_latency(InternetMode::round_trip);
  c.near_abs(net.percentile(0.90) * 1e3, reference::internet_p90, 5e-4, "Internet p90");
  c.near_abs(net.percentile(0.9999) * 1e3, reference::internet_p9999, 5e-4, "Internet p99.99");
  return c.finish();
}

void e2e_table(Criterion& c, const std::string& id) {
  for (const ReproCell& cell : reproduce_table(id).cells) {
    const std::string what = id + " " + cell.row + " " + cell.column;
    if (std::isnan(cell.reference_value)) {
      c.check(cell.computed_note == "unsupported", what + ": expected unsupported, got " + cell.computed_note);
      continue;
    }
    c.near_rel(cell.computed, cell.reference_value, 0.05, what);
    c.check(cell.computed_note == cell.reference_note,
            what + ": verdict " + cell.computed_note + ", expected " + cell.reference_note);
  }
}

// 5
bool e2e_mec_edge() {
  Criterion c("5", "E2E MEC@gNB and MEC@M1 cells and verdicts");
  e2e_table(c, "XI");
  e2e_table(c, "XII");
  return c.finish();
}

// 6
bool e2e_core() {
  Criterion c("6", "E2E MEC@CN and Centralized cells and verdicts");
  e2e_table(c, "XIII");
  e2e_table(c, "XIV");
  for (const ServiceProfile& svc : {lloa(), hloa()}) {
    for (double lam : standard_lambdas) {
      for (double a : {0.001, 0.01, 0.1}) {
        Scenario s = default_scenario(Deployment::centralized, svc, lam, a);
        for (MnoMode m : {MnoMode::single, MnoMode::multi_local, MnoMode::multi_remote}) {
          s.mno_mode = m;
          const Verdict v = compose(s).verdict();
          c.check(v != Verdict::meets, "Centralized " + svc.name + fmt(" lambda=%g", lam) +
                                           fmt(" alpha=%g ", a) + std::string(to_string(m)) +
                                           " meets the requirement");
        }
      }
    }
  }
  return c.finish();
}

// 7
bool alpha_min_anchors() {
  Criterion c("7", "alpha_min anchors and radio infeasibility");
  for (const reference::AlphaMinAnchor& a : reference::alpha_min_anchors) {
    const ServiceProfile svc = a.hloa ? hloa() : lloa();
    const std::string what = name(a.deployment) + " " + svc.name + fmt(" lambda=%g ", a.lambda) +
                             std::string(to_string(a.mno));
    const DimensioningResult r =
        alpha_min(default_scenario(a.deployment, svc, a.lambda, 0.01), svc, a.mno);
    if (!r.feasible) {
      c.check(false, what + ": infeasible (" + r.binding_detail + ")");
      continue;
    }
    c.near_rel(r.alpha_min, a.alpha_min, 0.15, what);
  }
  for (Deployment d : {Deployment::mec_gnb, Deployment::mec_m1, Deployment::mec_cn}) {
    for (double lam : standard_lambdas) {
      for (const ServiceProfile& svc : {lloa(), hloa()}) {
        const bool over = svc.name == "HLoA" ? lam > 8320 : lam > 31200;
        if (!over) continue;
        for (MnoMode m : {MnoMode::single, MnoMode::multi_local}) {
          const DimensioningResult r = alpha_min(default_scenario(d, svc, lam, 0.01), svc, m);
          c.check(!r.feasible && r.binding_detail == "radio",
                  name(d) + " " + svc.name + fmt(" lambda=%g", lam) + ": expected infeasible(radio), got " +
                      (r.feasible ? "feasible" : r.binding_detail));
        }
      }
    }
  }
  return c.finish();
}

SimConfig one_node(double lambda, double mu, Discipline d, std::uint64_t seed, bool service) {
  SimConfig cfg;
  cfg.seed = seed;
  cfg.n_packets = 1'000'000;
  cfg.warmup = 100'000;
  SimNode n;
  n.name = "q";
  n.lambda = lambda;
  n.mu = mu;
  n.discipline = d;
  n.include_service = service;
  cfg.chain.push_back(n);
  return cfg;
}

// 8
bool oracles() {
  Criterion c("8", "analytical models against simulation");
  for (double rho : {0.05, 0.5, 0.8}) {
    const double mu = 41667.0;
    const SimResult r = simulate(one_node(rho * mu, mu, Discipline::exponential, 101, true));
    c.near_rel(r.stats.mean, mm1_sojourn_mean(rho * mu, mu), 0.02, fmt("M/M/1 mean rho=%g", rho));
  }
  for (double rho : {0.3, 0.8}) {
    const SimResult r = simulate(one_node(rho, 1.0, Discipline::deterministic, 202, false));
    const double ks = ks_distance(r.samples, [rho](double t) { return md1_wait_cdf(rho, 1.0, t); });
    c.check(ks <= 0.01, fmt("M/D/1 wait KS rho=%g: ", rho) + fmt("%.4f (tol 0.01)", ks));
  }
  {
    const Scenario s = default_scenario(Deployment::mec_m1, lloa(), 2080, 0.01);
    const DeploymentSimReport rep = simulate_deployment(s, 1'000'000, 303);
    c.near_rel(rep.analytical.mean, rep.sim.stats.mean, 0.03, "MEC@M1 chain mean");
    c.near_rel(rep.sim.stats.mean * 1e3, 0.881, 0.03, "MEC@M1 simulated mean vs 0.881 ms");
    c.near_rel(rep.analytical.p90, rep.sim.stats.p90, 0.05, "MEC@M1 p90 approximation");
  }
  for (double a : {0.01, 0.1}) {
    const Scenario s = default_scenario(Deployment::mec_gnb, lloa(), 2080, a);
    double rho_max = 0.0;
    for (const NodeRates& n : tn_rates(s)) rho_max = std::max(rho_max, n.rho());
    const DeploymentSimReport rep = simulate_deployment(s, 1'000'000, 404);
    c.check(rho_max <= 0.5, fmt("MEC@gNB alpha=%g rho <= 0.5", a));
    c.near_rel(rep.analytical.p90, rep.sim.stats.p90, 0.05, fmt("MEC@gNB alpha=%g p90 approximation", a));
  }
  return c.finish();
}

// 9
bool properties() {
  Criterion c("9", "property suites");
  const int n = 20;
  for (Deployment d : all_deployments) {
    int bad = 0;
    std::string first;
    std::vector<std::vector<ComponentBreakdown>> grid(n);
    for (int i = 0; i < n; ++i) {
      const double lam = 1040.0 + i * (31200.0 - 1040.0) / (n - 1);
      for (int j = 0; j < n; ++j) {
        const double a = 0.05 + j * (0.45 - 0.05) / (n - 1);
        grid[i].push_back(compose(default_scenario(d, lloa(), lam, a)));
      }
    }
    auto mean_of = [](const ComponentBreakdown& b, int k) {
      switch (k) {
        case 0: return b[Component::tn].stats.mean;
        case 1: return b[Component::cn].stats.mean;
        case 2: return b.single.stats.mean;
        default: return b.multi.stats.mean;
      }
    };
    const char* what[4] = {"TN", "CN", "E2E single", "E2E multi"};
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const ComponentBreakdown& b = grid[i][j];
        if (!b.error.empty()) {
          ++bad;
          if (first.empty()) first = b.error;
          continue;
        }
        for (int k = 0; k < 4; ++k) {
          const double m = mean_of(b, k);
          if (j > 0 && !(m <= mean_of(grid[i][j - 1], k) * (1 + 1e-12))) {
            ++bad;
            if (first.empty()) first = std::string(what[k]) + fmt(" rises with alpha at lambda=%g", b.lambda);
          }
          if (i > 0 && !(m >= mean_of(grid[i - 1][j], k) * (1 - 1e-12))) {
            ++bad;
            if (first.empty()) first = std::string(what[k]) + fmt(" falls with lambda at alpha=%g", b.alpha_ul);
          }
        }
      }
    }
    c.check(bad == 0, name(d) + " 20x20 mean monotonicity: " + std::to_string(bad) + " violations " + first);
  }

  {
    const Scenario s = default_scenario(Deployment::mec_cn, hloa(), 8320, 0.01);
    const std::vector<std::pair<std::string, LatencyDistribution>> dists = {
        {"TN", tn_latency(s)},
        {"CN", cn_latency(s)},
        {"AS", as_latency(s)},
        {"Internet", internet_latency(InternetMode::round_trip)},
        {"remote peering", peering_latency(PeeringKind::remote)},
        {"TN*CN", convolve(tn_latency(s), cn_latency(s), s.convolution)},
    };
    for (const auto& [label, dist] : dists) {
      int bad = 0;
      double last = -1.0;
      for (int k = 1; k < 2000; ++k) {
        const double p = k / 2000.0;
        const double q = dist.percentile(p);
        if (q < last) ++bad;
        last = q;
      }
      for (double p : {0.9999, 0.99999, 0.999999}) {
        const double q = dist.percentile(p);
        if (q < last) ++bad;
        last = q;
      }
      c.check(bad == 0, label + " percentile monotone in p: " + std::to_string(bad) + " violations");
    }
  }

  {
    const Scenario s = default_scenario(Deployment::mec_m1, lloa(), 2080, 0.01);
    const LatencyDistribution x = tn_latency(s);
    const LatencyDistribution y = peering_latency(PeeringKind::local);
    const LatencyDistribution id = convolve(x, LatencyDistribution(Deterministic{0.0}), s.convolution);
    const LatencyDistribution xy = convolve(x, y, s.convolution);
    const LatencyDistribution yx = convolve(y, x, s.convolution);
    double worst_id = 0.0, worst_comm = 0.0;
    for (int k = 0; k <= 400; ++k) {
      const double t = x.percentile(0.001) + k * 1e-5;
      worst_id = std::max(worst_id, std::fabs(id.cdf(t) - x.cdf(t)));
      const double u = xy.percentile(0.001) + k * 2e-5;
      worst_comm = std::max(worst_comm, std::fabs(xy.cdf(u) - yx.cdf(u)));
    }
    c.check(worst_id <= 1e-3, fmt("convolution identity: max |dF| %.2e", worst_id));
    c.check(worst_comm <= 1e-6, fmt("convolution commutative: max |dF| %.2e", worst_comm));
    c.check(std::fabs(xy.mean() - x.mean() - y.mean()) <= 1e-12, "convolution mean additive");
  }

  for (const reference::AlphaMinAnchor& a : reference::alpha_min_anchors) {
    const ServiceProfile svc = a.hloa ? hloa() : lloa();
    const DimensioningResult r = alpha_min(default_scenario(a.deployment, svc, a.lambda, 0.01), svc, a.mno);
    const std::string what = name(a.deployment) + " " + svc.name + fmt(" lambda=%g ", a.lambda) +
                             std::string(to_string(a.mno));
    if (!r.feasible) {
      c.check(false, what + ": infeasible, boundary not testable");
      continue;
    }
    Scenario s = default_scenario(a.deployment, svc, a.lambda, r.alpha_min);
    s.mno_mode = a.mno;
    c.check(compose(s).verdict() == Verdict::meets, what + ": alpha_min does not meet");
    s.alpha = {r.alpha_min * 0.999, r.alpha_min * 0.999};
    c.check(compose(s).verdict() != Verdict::meets, what + ": 0.999 alpha_min still meets");
  }

  {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    int bad = 0;
    for (int trial = 0; trial < 200; ++trial) {
      Scenario s = default_scenario(Deployment::mec_cn, lloa(), 2080, 0.05);
      std::vector<double> p(s.topology.g);
      double sum = 0.0;
      for (double& x : p) sum += (x = u(rng));
      for (double& x : p) x /= sum;
      s.traffic.split.m1_to_gnb = p;
      if (!validate(s).empty()) {
        ++bad;
        continue;
      }
      const auto r = tn_rates(s);
      double m2 = 0.0, m1 = 0.0;
      for (const NodeRates& nr : r) {
        if (nr.direction != Direction::dl) continue;
        if (nr.node == NodeId::m2) m2 = nr.lambda;
        if (nr.node == NodeId::m1) m1 = nr.lambda;
      }
      double total = 0.0;
      for (double x : p) total += x * m2;
      if (std::fabs(total - m2) > 1e-9 * m2) ++bad;
      if (std::fabs(m1 - *std::max_element(p.begin(), p.end()) * m2) > 1e-9 * m2) ++bad;
      s.traffic.split.m1_to_gnb[0] += 0.01;
      if (validate(s).empty()) ++bad;
    }
    c.check(bad == 0, "split flow conservation: " + std::to_string(bad) + " violations in 200 trials");
  }
  return c.finish();
}

// 10
bool app_server() {
  Criterion c("10", "AS percentiles and processor dimensioning");
  const LatencyDistribution as = as_latency(default_scenario(Deployment::mec_gnb, lloa(), 2080, 0.01));
  c.near_rel(as.percentile(0.90) * 1e3, reference::as_p90, 0.01, "AS p90");
  c.near_rel(as.percentile(0.9999) * 1e3, reference::as_p9999, 0.01, "AS p99.99");
  for (int l = 0; l < 2; ++l) {
    const double lam = reference::table9_lambdas[l];
    for (int d = 0; d < 4; ++d) {
      const Deployment dep = all_deployments[d];
      const int got = min_processors(default_scenario(dep, lloa(), lam, 0.01));
      const int want = reference::table10[l][d];
      const std::string what =
          name(dep) + fmt(" lambda=%g", lam) + ": " + std::to_string(got) + " vs " + std::to_string(want);
      if (d < 2) c.check(got == want, what + " (exact)");
      else c.check(got <= 2 * want && 2 * got >= want, what + " (factor 2)");
    }
  }
  return c.finish();
}

bool backlog_onset() {
  Criterion c("Q1", "AS backlog onset above lambda=2080 for MEC@CN and Centralized");
  for (Deployment d : {Deployment::mec_cn, Deployment::centralized}) {
    for (double lam : standard_lambdas) {
      Scenario s = default_scenario(d, lloa(), lam, 0.01);
      s.as_profile.mode = AsLatencyMode::hardware;
      const BacklogStatus b = backlog_check(s);
      const bool want = lam > 2080;
      c.check(b.backlogged == want, name(d) + fmt(" lambda=%g", lam) + " with " +
                                        std::to_string(s.as_profile.processors) + " processors: " +
                                        (b.backlogged ? "backlogged" : "stable") + ", needs " +
                                        std::to_string(min_processors(s)));
    }
  }
  for (Deployment d : {Deployment::mec_gnb, Deployment::mec_m1}) {
    Scenario s = default_scenario(d, lloa(), 41600, 0.01);
    s.as_profile.mode = AsLatencyMode::hardware;
    c.check(!backlog_check(s).backlogged, name(d) + " lambda=41600 backlogged");
  }
  return c.finish();
}

bool mean_disagreement() {
  Criterion c("Q2", "mean and percentile verdicts disagree for MEC@M1 HLoA lambda=2080 alpha=0.001");
  for (MnoMode m : {MnoMode::single, MnoMode::multi_local}) {
    Scenario s = default_scenario(Deployment::mec_m1, hloa(), 2080, 0.001);
    s.mno_mode = m;
    const ComponentBreakdown b = compose(s);
    const Totals& t = b.selected();
    c.check(t.mean_verdict == Verdict::meets && t.verdict == Verdict::violates && b.disagreement(),
            std::string(to_string(m)) + ": mean " + format_ms(t.stats.mean) + " ms " +
                std::string(to_string(t.mean_verdict)) + ", p99.99 " + format_ms(t.at_requirement) +
                " ms " + std::string(to_string(t.verdict)));
  }
  return c.finish();
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "-v") == 0) verbose = true;
  int failed = 0, qual_failed = 0;
  auto run = [](bool (*f)()) {
    try {
      return f();
    } catch (const std::exception& e) {
      std::printf("FAIL (uncaught: %s)\n", e.what());
      return false;
    }
  };
  for (bool (*f)() : {shifts, tn_table, cn_table, externals, e2e_mec_edge, e2e_core, alpha_min_anchors,
                      oracles, properties, app_server})
    if (!run(f)) ++failed;
  for (bool (*f)() : {backlog_onset, mean_disagreement})
    if (!run(f)) ++qual_failed;
  std::printf("criteria: %d of 10 failed; qualitative: %d of 2 failed\n", failed, qual_failed);
  return failed == 0 ? 0 : 1;
}
