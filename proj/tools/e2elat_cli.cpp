// e2elat: end-to-end latency calculator for V2N/V2N2V traffic over 5G.
//
//   e2elat compose --deployment mec-gnb --service lloa --lambda 2080 --alpha 0.001
//   e2elat sweep --lambdas 2080,8320 --alphas 0.001,0.01 --format csv -o sweep.csv
//   e2elat dimension --deployment mec-m1 --service hloa --lambda 2080 --mno multi
//   e2elat simulate --deployment mec-m1 --alpha 0.01 --seed 7
//   e2elat reproduce-table VI
//   e2elat render sweep.csv
//
// Exit status: 0 ok (a violated requirement is still a result), 2 bad
// input, 3 computation infeasible.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "e2elat/e2elat.hpp"

using namespace e2elat;
using nlohmann::json;

namespace {

constexpr int exit_bad_input = 2;
constexpr int exit_infeasible = 3;

struct CliError {
  int code;
  std::string kind;
  std::string message;
};

[[noreturn]] void fail(int code, std::string kind, std::string message) {
  throw CliError{code, std::move(kind), std::move(message)};
}

struct ScenarioFlags {
  std::string file;
  std::string deployment;
  std::string service;
  std::optional<double> lambda;
  std::optional<double> alpha;
  std::optional<double> alpha_ul;
  std::optional<double> alpha_dl;
  std::string mno;
  std::string composition;
  std::string tn_model;
  std::string as_mode;
  std::optional<double> packet_bits;
  std::optional<int> processors;
  std::optional<int> aggregated_gnbs;
  std::optional<double> c_upf_as;
  std::optional<double> c_cn;
  std::optional<double> d_cn_km;
  std::string radio_csv;
  std::string internet_cdf;
  std::string peering_local_cdf;
  std::string peering_remote_cdf;
};

void add_scenario_flags(CLI::App* app, ScenarioFlags& f, bool axes) {
  app->add_option("--scenario", f.file, "scenario JSON file (overrides apply on top)")
      ->check(CLI::ExistingFile);
  if (!axes) {
    app->add_option("--deployment", f.deployment, "mec-gnb | mec-m1 | mec-cn | centralized");
    app->add_option("--service", f.service, "lloa | hloa");
    app->add_option("--lambda", f.lambda, "gNB uplink packet rate [packets/s]");
    app->add_option("--mno", f.mno, "single | multi | multi-local | multi-remote");
  }
  app->add_option("--alpha", f.alpha, "capacity share for both directions");
  app->add_option("--alpha-ul", f.alpha_ul, "uplink capacity share");
  app->add_option("--alpha-dl", f.alpha_dl, "downlink capacity share");
  app->add_option("--composition", f.composition, "percentile-sum | convolution");
  app->add_option("--tn-model", f.tn_model, "single-exponential | hypoexponential");
  app->add_option("--as-mode", f.as_mode, "slot-bound | hardware");
  app->add_option("--packet-bits", f.packet_bits, "packet size B [bits]");
  app->add_option("--processors", f.processors, "AS processor count");
  app->add_option("--aggregated-gnbs", f.aggregated_gnbs, "gNBs feeding one AS");
  app->add_option("--c-upf-as", f.c_upf_as, "UPF to AS link capacity [bit/s]");
  app->add_option("--c-cn", f.c_cn, "core network link capacity [bit/s]");
  app->add_option("--d-cn-km", f.d_cn_km, "core network distance [km]");
  app->add_option("--radio-csv", f.radio_csv, "radio latency table CSV")->check(CLI::ExistingFile);
  app->add_option("--internet-cdf", f.internet_cdf, "Internet round-trip CDF CSV")
      ->check(CLI::ExistingFile);
  app->add_option("--peering-local-cdf", f.peering_local_cdf, "local peering CDF CSV")
      ->check(CLI::ExistingFile);
  app->add_option("--peering-remote-cdf", f.peering_remote_cdf, "remote peering CDF CSV")
      ->check(CLI::ExistingFile);
}

Scenario build_scenario(const ScenarioFlags& f) {
  Scenario s = f.file.empty() ? base_scenario() : load_scenario_file(f.file);
  if (!f.deployment.empty()) {
    s.deployment = parse_enum<Deployment>(f.deployment);
    const AsHardwareProfile hw = default_as_profile(s.deployment);
    s.as_profile.processors = hw.processors;
    s.as_profile.parallel_units = hw.parallel_units;
    s.as_profile.frequency = hw.frequency;
  }
  if (!f.service.empty()) s.service = service_by_name(f.service);
  if (f.lambda) s.traffic.lambda_gnb_ul = *f.lambda;
  if (f.alpha) s.alpha = {*f.alpha, *f.alpha};
  if (f.alpha_ul) s.alpha.ul = *f.alpha_ul;
  if (f.alpha_dl) s.alpha.dl = *f.alpha_dl;
  if (!f.mno.empty()) s.mno_mode = parse_enum<MnoMode>(f.mno);
  if (!f.composition.empty()) s.composition_mode = parse_enum<CompositionMode>(f.composition);
  if (!f.tn_model.empty()) s.tn_model = parse_enum<TnModel>(f.tn_model);
  if (!f.as_mode.empty()) s.as_profile.mode = parse_enum<AsLatencyMode>(f.as_mode);
  if (f.packet_bits) s.traffic.packet_bits = *f.packet_bits;
  if (f.processors) s.as_profile.processors = *f.processors;
  if (f.aggregated_gnbs) s.as_profile.aggregated_gnbs = *f.aggregated_gnbs;
  if (f.c_upf_as) s.topology.c_upf_as = *f.c_upf_as;
  if (f.c_cn) s.topology.c_cn = *f.c_cn;
  if (f.d_cn_km) s.topology.d_cn_km = *f.d_cn_km;
  if (!f.radio_csv.empty()) s.radio = load_radio_csv_file(f.radio_csv);
  if (!f.internet_cdf.empty()) s.externals.internet_cdf = load_cdf_csv_file(f.internet_cdf);
  if (!f.peering_local_cdf.empty())
    s.externals.peering_local_cdf = load_cdf_csv_file(f.peering_local_cdf);
  if (!f.peering_remote_cdf.empty())
    s.externals.peering_remote_cdf = load_cdf_csv_file(f.peering_remote_cdf);
  require_valid(s);
  return s;
}

template <class E>
std::vector<E> parse_list(const std::vector<std::string>& v) {
  std::vector<E> out;
  for (const std::string& x : v) out.push_back(parse_enum<E>(x));
  return out;
}

std::vector<ServiceProfile> parse_services(const std::vector<std::string>& v) {
  std::vector<ServiceProfile> out;
  for (const std::string& x : v) out.push_back(service_by_name(x));
  return out;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path);
    if (!file_) fail(exit_bad_input, "io", "cannot write " + path);
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void check_format(const std::string& fmt) {
  if (fmt != "text" && fmt != "csv" && fmt != "json")
    fail(exit_bad_input, "usage", "unknown format '" + fmt + "' (text, csv or json)");
}

json breakdown_json(const ComponentBreakdown& b) {
  auto triple = [](const PercentileTriple& t) {
    return json{{"mean_s", detail::num(t.mean)}, {"p90_s", detail::num(t.p90)},
                {"p9999_s", detail::num(t.p9999)}};
  };
  json comps = json::object();
  for (Component c : all_components) {
    const ComponentResult& r = b[c];
    json x = triple(r.stats);
    x["at_requirement_s"] = detail::num(r.at_requirement);
    x["status"] = std::string(to_string(r.status));
    comps[std::string(to_string(c))] = x;
  }
  auto totals = [&](const Totals& t) {
    json x = triple(t.stats);
    x["at_requirement_s"] = detail::num(t.at_requirement);
    x["verdict"] = std::string(to_string(t.verdict));
    x["mean_verdict"] = std::string(to_string(t.mean_verdict));
    return x;
  };
  json j{{"deployment", std::string(to_string(b.deployment))},
         {"service", b.service},
         {"lambda", b.lambda},
         {"alpha_ul", b.alpha_ul},
         {"alpha_dl", b.alpha_dl},
         {"mno", std::string(to_string(b.mno_mode))},
         {"composition", std::string(to_string(b.mode))},
         {"peering", std::string(to_string(b.peering))},
         {"components", comps},
         {"single", totals(b.single)},
         {"multi", totals(b.multi)},
         {"verdict", std::string(to_string(b.verdict()))},
         {"mean_verdict_disagrees", b.disagreement()}};
  if (!b.error.empty()) j["error"] = b.error;
  return j;
}

int run_compose(const ScenarioFlags& f, const std::string& fmt, const std::string& out_path) {
  check_format(fmt);
  const Scenario s = build_scenario(f);
  const ComponentBreakdown b = compose(s);
  Output out(out_path);
  if (fmt == "csv") write_breakdown_csv(out.stream(), {b});
  else if (fmt == "json") out.stream() << breakdown_json(b).dump(2) << '\n';
  else out.stream() << render_breakdown(b);
  if (b.verdict() == Verdict::unsupported)
    fail(exit_infeasible, "unsupported", b.error.empty() ? "requirement cannot be evaluated" : b.error);
  return 0;
}

struct SweepFlags {
  std::vector<double> lambdas;
  std::vector<double> alphas;
  std::vector<std::string> deployments;
  std::vector<std::string> services;
  std::vector<std::string> mnos;
  bool keep_hardware = false;
  unsigned jobs = 0;
};

int run_sweep(const ScenarioFlags& f, const SweepFlags& sf, const std::string& fmt,
              const std::string& out_path) {
  check_format(fmt);
  Scenario base = build_scenario(f);
  SweepAxes axes;
  axes.lambdas = sf.lambdas.empty() ? std::vector<double>(std::begin(standard_lambdas), std::end(standard_lambdas))
                                    : sf.lambdas;
  axes.alphas = sf.alphas.empty() ? std::vector<double>{0.001, 0.01, 0.1} : sf.alphas;
  axes.deployments = sf.deployments.empty()
                         ? std::vector<Deployment>(std::begin(all_deployments), std::end(all_deployments))
                         : parse_list<Deployment>(sf.deployments);
  axes.services = sf.services.empty() ? std::vector<ServiceProfile>{lloa(), hloa()}
                                      : parse_services(sf.services);
  axes.per_deployment_hardware = !sf.keep_hardware;
  const std::vector<MnoMode> mnos =
      sf.mnos.empty() ? std::vector<MnoMode>{base.mno_mode} : parse_list<MnoMode>(sf.mnos);
  std::vector<ComponentBreakdown> rows;
  for (MnoMode m : mnos) {
    base.mno_mode = m;
    auto part = sweep(base, axes, sf.jobs);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  Output out(out_path);
  if (fmt == "csv") {
    write_breakdown_csv(out.stream(), rows);
  } else if (fmt == "json") {
    json a = json::array();
    for (const auto& r : rows) a.push_back(breakdown_json(r));
    out.stream() << a.dump(2) << '\n';
  } else {
    out.stream() << render_breakdowns(rows);
  }
  return 0;
}

struct DimensionFlags {
  std::vector<double> lambdas;
  std::vector<std::string> deployments;
  std::vector<std::string> services;
  std::vector<std::string> mnos;
  unsigned jobs = 0;
  double rel_tol = 1e-6;
};

int run_dimension(const ScenarioFlags& f, const DimensionFlags& df, const std::string& fmt,
                  const std::string& out_path) {
  check_format(fmt);
  const Scenario base = build_scenario(f);
  DimensioningAxes axes;
  axes.lambdas = df.lambdas.empty() ? std::vector<double>{base.lambda()} : df.lambdas;
  axes.deployments = df.deployments.empty() ? std::vector<Deployment>{base.deployment}
                                            : parse_list<Deployment>(df.deployments);
  axes.services = df.services.empty() ? std::vector<ServiceProfile>{base.service}
                                      : parse_services(df.services);
  axes.mno_modes = df.mnos.empty() ? std::vector<MnoMode>{base.mno_mode} : parse_list<MnoMode>(df.mnos);
  axes.per_deployment_hardware = !df.deployments.empty();
  DimensioningOptions opt;
  opt.rel_tol = df.rel_tol;
  const DimensioningSweep res = alpha_min_sweep(base, axes, df.jobs, opt);
  Output out(out_path);
  if (fmt == "csv") {
    write_dimensioning_csv(out.stream(), res.rows);
  } else if (fmt == "json") {
    json a = json::array();
    for (const DimensioningResult& r : res.rows) {
      json x{{"deployment", std::string(to_string(r.deployment))},
             {"service", r.service},
             {"lambda", r.lambda},
             {"mno", std::string(to_string(r.mno_mode))},
             {"feasible", r.feasible},
             {"alpha_min", detail::num(r.alpha_min)},
             {"stability_bound", detail::num(r.stability_bound)},
             {"binding", std::string(to_string(r.binding))},
             {"binding_detail", r.binding_detail},
             {"e2e_at_requirement_s", detail::num(r.achieved_at_requirement)},
             {"min_processors", r.min_processors}};
      if (!r.error.empty()) x["error"] = r.error;
      a.push_back(x);
    }
    out.stream() << a.dump(2) << '\n';
  } else {
    out.stream() << render_dimensioning(res.rows);
    if (!res.monotonicity.ok)
      for (const std::string& v : res.monotonicity.violations) out.stream() << "non-monotone: " << v << '\n';
  }
  if (res.rows.size() == 1 && !res.rows[0].feasible) {
    const DimensioningResult& r = res.rows[0];
    fail(exit_infeasible, "infeasible", r.error.empty() ? r.binding_detail : r.error);
  }
  return 0;
}

int run_simulate(const ScenarioFlags& f, std::uint64_t seed, std::size_t packets,
                 const std::string& samples_out, const std::string& fmt, const std::string& out_path) {
  check_format(fmt);
  const Scenario s = build_scenario(f);
  const DeploymentSimReport rep = simulate_deployment(s, packets, seed);
  if (!samples_out.empty()) write_samples_csv(samples_out, rep.sim.samples);
  Output out(out_path);
  std::ostream& o = out.stream();
  if (fmt == "json") {
    json trends = json::array();
    for (const NodeTrend& t : rep.sim.trends)
      trends.push_back({{"node", t.name}, {"growing", t.growing}});
    o << json{{"seed", seed},
              {"packets", packets},
              {"recorded", rep.sim.count()},
              {"converged", rep.sim.converged},
              {"simulated_s", {rep.sim.stats.mean, rep.sim.stats.p90, rep.sim.stats.p9999}},
              {"analytical_s", {rep.analytical.mean, rep.analytical.p90, rep.analytical.p9999}},
              {"trends", trends}}
             .dump(2)
      << '\n';
    return 0;
  }
  if (fmt == "csv") {
    o << "stat,simulated_s,analytical_s,deviation\n";
    const char* names[3] = {"mean", "p90", "p9999"};
    const PercentileTriple* t[3] = {&rep.sim.stats, &rep.analytical, &rep.deviation};
    for (int i = 0; i < 3; ++i) {
      auto pick = [i](const PercentileTriple& p) { return i == 0 ? p.mean : i == 1 ? p.p90 : p.p9999; };
      o << names[i] << ',' << format_exact(pick(*t[0])) << ',' << format_exact(pick(*t[1])) << ','
        << format_exact(pick(*t[2])) << '\n';
    }
    return 0;
  }
  o << display_name(s.deployment) << "  lambda=" << format_count(s.lambda())
    << "  alpha=" << format_alpha(s.alpha.ul, s.alpha.dl) << "  seed=" << seed << "  packets=" << packets
    << " (" << rep.sim.count() << " recorded)\n\n";
  TextTable t({"TN+CN [ms]", "simulated", "analytical", "deviation"});
  auto pct = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%+.2f%%", x * 100.0);
    return std::string(buf);
  };
  t.add({"mean", format_ms(rep.sim.stats.mean), format_ms(rep.analytical.mean), pct(rep.deviation.mean)});
  t.add({"p90", format_ms(rep.sim.stats.p90), format_ms(rep.analytical.p90), pct(rep.deviation.p90)});
  t.add({"p99.99", format_ms(rep.sim.stats.p9999), format_ms(rep.analytical.p9999),
         pct(rep.deviation.p9999)});
  o << t.str();
  if (!rep.sim.converged) {
    o << "warning: queue growth detected at";
    for (const NodeTrend& n : rep.sim.trends)
      if (n.growing) o << ' ' << n.name;
    o << '\n';
  }
  return 0;
}

int run_reproduce(const std::string& id, const std::string& fmt, const std::string& out_path) {
  if (fmt != "text" && fmt != "csv") fail(exit_bad_input, "usage", "reproduce-table supports text or csv");
  std::vector<std::string> ids;
  if (id == "all") ids = table_ids();
  else ids = {id};
  Output out(out_path);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const ReproTable t = reproduce_table(ids[i]);
    if (fmt == "csv") {
      write_repro_csv(out.stream(), t);
    } else {
      if (i) out.stream() << '\n';
      out.stream() << render_repro(t);
    }
  }
  return 0;
}

int run_render(const std::string& path, const std::string& out_path) {
  std::ifstream f(path);
  if (!f) fail(exit_bad_input, "io", "cannot open " + path);
  const auto rows = read_breakdown_csv(f);
  Output out(out_path);
  out.stream() << render_breakdowns(rows);
  return 0;
}

int run_show(const ScenarioFlags& f, const std::string& out_path) {
  Output out(out_path);
  out.stream() << to_json(build_scenario(f)).dump(2) << '\n';
  return 0;
}

void report(const CliError& e) {
  std::cerr << json{{"error", e.kind}, {"message", e.message}, {"exit", e.code}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"End-to-end latency model for V2N/V2N2V services over 5G networks"};
  app.require_subcommand(1);

  std::string fmt = "text";
  std::string out_path;
  auto common = [&](CLI::App* sc) {
    sc->add_option("--format", fmt, "text | csv | json")->capture_default_str();
    sc->add_option("-o,--output", out_path, "output file (default stdout)");
  };

  ScenarioFlags flags;
  std::function<int()> action;

  auto* c_compose = app.add_subcommand("compose", "latency breakdown for one scenario");
  add_scenario_flags(c_compose, flags, false);
  common(c_compose);
  c_compose->callback([&] { action = [&] { return run_compose(flags, fmt, out_path); }; });

  SweepFlags sweep_flags;
  auto* c_sweep = app.add_subcommand("sweep", "breakdowns over deployment x service x alpha x lambda");
  add_scenario_flags(c_sweep, flags, true);
  c_sweep->add_option("--lambdas", sweep_flags.lambdas, "packet rates")->delimiter(',');
  c_sweep->add_option("--alphas", sweep_flags.alphas, "capacity shares")->delimiter(',');
  c_sweep->add_option("--deployments", sweep_flags.deployments, "deployments")->delimiter(',');
  c_sweep->add_option("--services", sweep_flags.services, "services")->delimiter(',');
  c_sweep->add_option("--mno", sweep_flags.mnos, "MNO modes")->delimiter(',');
  c_sweep->add_flag("--keep-hardware", sweep_flags.keep_hardware,
                    "use the scenario's AS hardware for every deployment");
  c_sweep->add_option("-j,--jobs", sweep_flags.jobs, "worker threads (0 = all cores)");
  common(c_sweep);
  c_sweep->callback([&] { action = [&] { return run_sweep(flags, sweep_flags, fmt, out_path); }; });

  DimensionFlags dim;
  auto* c_dim = app.add_subcommand("dimension", "minimum capacity share alpha_min");
  add_scenario_flags(c_dim, flags, false);
  c_dim->add_option("--lambdas", dim.lambdas, "packet rates (instead of --lambda)")->delimiter(',');
  c_dim->add_option("--deployments", dim.deployments, "deployments")->delimiter(',');
  c_dim->add_option("--services", dim.services, "services")->delimiter(',');
  c_dim->add_option("--mnos", dim.mnos, "MNO modes")->delimiter(',');
  c_dim->add_option("--rel-tol", dim.rel_tol, "bisection tolerance")->capture_default_str();
  c_dim->add_option("-j,--jobs", dim.jobs, "worker threads (0 = all cores)");
  common(c_dim);
  c_dim->callback([&] { action = [&] { return run_dimension(flags, dim, fmt, out_path); }; });

  std::uint64_t seed = 0;
  std::size_t packets = 1'000'000;
  std::string samples_out;
  auto* c_sim = app.add_subcommand("simulate", "discrete-event check of the TN+CN queues");
  add_scenario_flags(c_sim, flags, false);
  c_sim->add_option("--seed", seed, "RNG seed")->required();
  c_sim->add_option("--packets", packets, "packets per node, warmup included")->capture_default_str();
  c_sim->add_option("--samples", samples_out, "write path samples to this CSV");
  common(c_sim);
  c_sim->callback([&] {
    action = [&] { return run_simulate(flags, seed, packets, samples_out, fmt, out_path); };
  });

  std::string table_id;
  auto* c_rep = app.add_subcommand("reproduce-table", "recompute a reference table and show deviations");
  c_rep->add_option("id", table_id, "V..XV or all")->required();
  common(c_rep);
  c_rep->callback([&] { action = [&] { return run_reproduce(table_id, fmt, out_path); }; });

  std::string csv_in;
  auto* c_render = app.add_subcommand("render", "text table from a sweep CSV");
  c_render->add_option("csv", csv_in, "sweep CSV")->required();
  c_render->add_option("-o,--output", out_path, "output file (default stdout)");
  c_render->callback([&] { action = [&] { return run_render(csv_in, out_path); }; });

  auto* c_show = app.add_subcommand("show-scenario", "print the resolved scenario as JSON");
  add_scenario_flags(c_show, flags, false);
  c_show->add_option("-o,--output", out_path, "output file (default stdout)");
  c_show->callback([&] { action = [&] { return run_show(flags, out_path); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report({exit_bad_input, "usage", e.what()});
    return exit_bad_input;
  }

  try {
    return action();
  } catch (const CliError& e) {
    report(e);
    return e.code;
  } catch (const validation_error& e) {
    report({exit_bad_input, "invalid-input", e.what()});
    return exit_bad_input;
  } catch (const instability_error& e) {
    report({exit_infeasible, "unstable", e.what()});
    return exit_infeasible;
  } catch (const unsupported_percentile& e) {
    report({exit_infeasible, "unsupported", e.what()});
    return exit_infeasible;
  } catch (const horizon_error& e) {
    report({exit_infeasible, "horizon", e.what()});
    return exit_infeasible;
  } catch (const std::exception& e) {
    report({exit_infeasible, "error", e.what()});
    return exit_infeasible;
  }
}
