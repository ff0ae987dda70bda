#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "e2elat/app_server.hpp"
#include "e2elat/compose.hpp"
#include "e2elat/core.hpp"
#include "e2elat/externals.hpp"
#include "e2elat/reference_values.hpp"
#include "e2elat/render.hpp"
#include "e2elat/scenario.hpp"
#include "e2elat/transport.hpp"

namespace e2elat {

struct ReproCell {
  std::string row;
  std::string column;
  double computed = std::numeric_limits<double>::quiet_NaN();
  double reference_value = std::numeric_limits<double>::quiet_NaN();
  std::string computed_note;
  std::string reference_note;

  double deviation() const {
    if (std::isnan(computed) || std::isnan(reference_value) || reference_value == 0.0)
      return std::numeric_limits<double>::quiet_NaN();
    return computed / reference_value - 1.0;
  }
};

struct ReproTable {
  std::string id;
  std::string title;
  std::vector<ReproCell> cells;
  std::vector<std::string> notes;
};

inline const std::vector<std::string>& table_ids() {
  static const std::vector<std::string> ids = {"V",  "VI", "VII",  "VIII", "IX", "X",
                                               "XI", "XII", "XIII", "XIV",  "XV"};
  return ids;
}

namespace detail {

inline std::string fmt_g(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

inline const char* stat_name(int i) {
  static const char* names[3] = {"mean", "p90", "p99.99"};
  return names[i];
}

inline double stat_of(const PercentileTriple& t, int i) {
  return i == 0 ? t.mean : i == 1 ? t.p90 : t.p9999;
}

inline ReproTable table_v() {
  ReproTable t{"V", "UL+DL propagation and processing delays [ms]", {}, {}};
  for (int d = 0; d < 4; ++d) {
    const Deployment dep = all_deployments[d];
    const Scenario s = default_scenario(dep, lloa(), 2080, 0.01);
    const TnShift sh = tn_shift(s);
    t.cells.push_back({std::string(display_name(dep)), "t_TN,prop", sh.propagation * 1e3,
                       reference::tn_propagation_ms[d], "", ""});
    t.cells.push_back({std::string(display_name(dep)), "t_p", sh.processing * 1e3,
                       reference::tn_processing_ms[d], "", ""});
  }
  return t;
}

inline ReproTable table_vi() {
  ReproTable t{"VI", "Transport network latency at lambda=2080 [ms]", {}, {}};
  for (int d = 0; d < 4; ++d) {
    const Deployment dep = all_deployments[d];
    for (int a = 0; a < 3; ++a) {
      const double alpha = reference::table6_alphas[a];
      const Scenario s = default_scenario(dep, lloa(), 2080, alpha);
      PercentileTriple v;
      std::string note;
      try {
        v = tn_latency(s).triple();
      } catch (const instability_error&) {
        note = "unstable";
      }
      for (int k = 0; k < 3; ++k) {
        ReproCell c{std::string(display_name(dep)) + " " + stat_name(k), fmt_g("alpha=%g", alpha),
                    note.empty() ? stat_of(v, k) * 1e3 : std::numeric_limits<double>::quiet_NaN(),
                    reference::table6[d][a][k], note,
                    reference::table6_unstable[d][a] ? "unstable" : ""};
        t.cells.push_back(c);
      }
    }
  }
  return t;
}

inline ReproTable table_vii() {
  ReproTable t{"VII", "Core network latency at lambda=2080 [ms]", {}, {}};
  t.notes.push_back("the reference MEC row is shared by the three MEC deployments");
  for (int d = 0; d < 4; ++d) {
    const Deployment dep = all_deployments[d];
    const int ref = dep == Deployment::centralized ? 1 : 0;
    for (int a = 0; a < 3; ++a) {
      const double alpha = reference::table6_alphas[a];
      const Scenario s = default_scenario(dep, lloa(), 2080, alpha);
      PercentileTriple v;
      std::string note;
      try {
        tn_latency(s);
        v = cn_latency(s).triple();
      } catch (const instability_error&) {
        note = "unstable";
      }
      const bool pub_unstable = std::isnan(reference::table7[ref][a][0]);
      for (int k = 0; k < 3; ++k) {
        t.cells.push_back({std::string(display_name(dep)) + " " + stat_name(k),
                           fmt_g("alpha=%g", alpha),
                           note.empty() ? stat_of(v, k) * 1e3 : std::numeric_limits<double>::quiet_NaN(),
                           reference::table7[ref][a][k], note, pub_unstable ? "unstable" : ""});
      }
    }
  }
  return t;
}

inline ReproTable table_viii() {
  ReproTable t{"VIII", "Peering point and Internet latency [ms]", {}, {}};
  const char* names[2] = {"remote peering", "local peering"};
  const PeeringKind kinds[2] = {PeeringKind::remote, PeeringKind::local};
  for (int i = 0; i < 2; ++i) {
    const PercentileTriple v = peering_latency(kinds[i]).triple();
    for (int k = 0; k < 3; ++k)
      t.cells.push_back({names[i], stat_name(k), stat_of(v, k) * 1e3, reference::table8[i][k], "", ""});
  }
  const PercentileTriple net = internet_latency(InternetMode::round_trip).triple();
  const double pub[3] = {reference::internet_mean, reference::internet_p90, reference::internet_p9999};
  for (int k = 0; k < 3; ++k)
    t.cells.push_back({"internet round trip", stat_name(k), stat_of(net, k) * 1e3, pub[k], "", ""});
  return t;
}

inline Scenario hardware_as_scenario(Deployment dep, double lambda, int processors) {
  Scenario s = default_scenario(dep, lloa(), lambda, 0.01);
  s.as_profile.mode = AsLatencyMode::hardware;
  if (processors > 0) s.as_profile.processors = processors;
  return s;
}

inline ReproTable table_ix() {
  ReproTable t{"IX", "AS forwarding latency with configured hardware [ms]", {}, {}};
  t.notes.push_back("hardware model; aggregation {1, 6, 1728, 1728} gNBs, MEC 48 threads x 3.6 GHz, "
                    "cloud 56 threads x 4.3 GHz");
  t.notes.push_back("qualitative check only: the reference CN and Centralized entries are not "
                    "reproducible with one consistent aggregation choice");
  for (int d = 0; d < 4; ++d) {
    const Deployment dep = all_deployments[d];
    for (int l = 0; l < 2; ++l) {
      const double lam = reference::table9_lambdas[l];
      if (dep != Deployment::centralized) {
        const Scenario s = hardware_as_scenario(dep, lam, reference::table9_processors[d]);
        const PercentileTriple v = as_latency(s).triple();
        const bool back = backlog_check(s).backlogged;
        for (int k = 0; k < 3; ++k)
          t.cells.push_back({std::string(display_name(dep)) + " " + stat_name(k),
                             fmt_g("lambda=%g", lam), stat_of(v, k) * 1e3, reference::table9[d][l][k],
                             back ? "backlogged" : "", ""});
      } else {
        const int procs[2] = {reference::table9_processors[3],
                              reference::table9_processors_centralized_low};
        for (int e = 0; e < 2; ++e) {
          const Scenario s = hardware_as_scenario(dep, lam, procs[e]);
          const PercentileTriple v = as_latency(s).triple();
          const bool back = backlog_check(s).backlogged;
          for (int k = 0; k < 3; ++k)
            t.cells.push_back({std::string(display_name(dep)) + " " + stat_name(k),
                               fmt_g("lambda=%g", lam) + " n=" + std::to_string(procs[e]),
                               stat_of(v, k) * 1e3, reference::table9_centralized[l][k][e],
                               back ? "backlogged" : "", ""});
        }
      }
    }
  }
  return t;
}

inline ReproTable table_x() {
  ReproTable t{"X", "Minimum AS processors to avoid backlog", {}, {}};
  t.notes.push_back("MEC@gNB and MEC@M1 must match exactly; MEC@CN and Centralized within a factor of 2");
  for (int l = 0; l < 2; ++l) {
    const double lam = reference::table9_lambdas[l];
    for (int d = 0; d < 4; ++d) {
      const Deployment dep = all_deployments[d];
      const Scenario s = default_scenario(dep, lloa(), lam, 0.01);
      t.cells.push_back({std::string(display_name(dep)), fmt_g("lambda=%g", lam),
                         static_cast<double>(min_processors(s)),
                         static_cast<double>(reference::table10[l][d]), "", ""});
    }
  }
  return t;
}

inline std::string reference_verdict(double v, bool hloa) {
  if (std::isnan(v)) return "unsupported";
  return v <= (hloa ? 10.0 : 25.0) ? "meets" : "violates";
}

inline ReproTable table_e2e(Deployment dep, const char* id) {
  ReproTable t{id, std::string("E2E latency at the service percentile, ") +
                       std::string(display_name(dep)) + " [ms]",
               {}, {}};
  t.notes.push_back("notes give the computed and the reference verdict (green = meets, red = violates)");
  const int d = static_cast<int>(dep);
  for (int c = 0; c < 9; ++c) {
    const reference::E2eColumn col = reference::e2e_columns[c];
    const ServiceProfile svc = col.hloa ? hloa() : lloa();
    const Scenario s = default_scenario(dep, svc, col.lambda, col.alpha);
    const ComponentBreakdown b = compose(s);
    const std::string column = fmt_g("alpha=%g ", col.alpha) + svc.name + fmt_g(" lambda=%g", col.lambda);
    const Totals* tot[2] = {&b.single, &b.multi};
    const char* rows[2] = {"single-MNO", "multi-MNO"};
    for (int m = 0; m < 2; ++m) {
      const double pub = reference::e2e[d][c][m];
      t.cells.push_back({rows[m], column, tot[m]->at_requirement * 1e3, pub,
                         std::string(to_string(tot[m]->verdict)), reference_verdict(pub, col.hloa)});
    }
  }
  return t;
}

inline ReproTable table_xv() {
  ReproTable t{"XV", "Mean radio latency and mean-based E2E figures [ms]", {}, {}};
  t.notes.push_back("radio rows that are unsupported at the service percentile carry no mean");
  const RadioLatencyTable radio = default_radio_table();
  constexpr double lloa_pub[10] = {1.50, 1.50, 1.50, 1.50, 1.50, 1.50, 1.50, 1.50, 1.56, 3.09};
  constexpr double hloa_pub[10] = {1.50, 1.50, 1.51, 1.52, 1.53, 1.58, 1.67, 7.31, 11.81, 14.23};
  for (int i = 0; i < 10; ++i) {
    const double lam = standard_lambdas[i];
    const auto l = radio.lookup("LLoA", lam);
    const auto h = radio.lookup("HLoA", lam);
    t.cells.push_back({"radio mean LLoA", fmt_g("lambda=%g", lam), l ? l->mean_ms : NAN, lloa_pub[i],
                       l && l->supported ? "" : "unsupported", ""});
    t.cells.push_back({"radio mean HLoA", fmt_g("lambda=%g", lam), h ? h->mean_ms : NAN, hloa_pub[i],
                       h && h->supported ? "" : "unsupported", ""});
  }
  for (const reference::MeanE2e& m : reference::mean_e2e) {
    Scenario s = default_scenario(m.deployment, m.hloa ? hloa() : lloa(), m.lambda, m.alpha);
    s.mno_mode = m.mno;
    const ComponentBreakdown b = compose(s);
    const Totals& tot = b.selected();
    const std::string row = std::string(display_name(m.deployment)) + " " + (m.hloa ? "HLoA" : "LLoA") +
                            " " + std::string(to_string(m.mno));
    const std::string col = fmt_g("lambda=%g", m.lambda) + fmt_g(" alpha=%g", m.alpha);
    t.cells.push_back({row + " mean", col, tot.stats.mean * 1e3, m.mean,
                       "mean-based " + std::string(to_string(tot.mean_verdict)), ""});
    t.cells.push_back({row + " " + percentile_label(s.service.reliability), col,
                       tot.at_requirement * 1e3, m.percentile,
                       std::string(to_string(tot.verdict)) + (b.disagreement() ? " (disagrees)" : ""),
                       ""});
  }
  return t;
}

}  // namespace detail

inline ReproTable reproduce_table(const std::string& id) {
  if (id == "V") return detail::table_v();
  if (id == "VI") return detail::table_vi();
  if (id == "VII") return detail::table_vii();
  if (id == "VIII") return detail::table_viii();
  if (id == "IX") return detail::table_ix();
  if (id == "X") return detail::table_x();
  if (id == "XI") return detail::table_e2e(Deployment::mec_gnb, "XI");
  if (id == "XII") return detail::table_e2e(Deployment::mec_m1, "XII");
  if (id == "XIII") return detail::table_e2e(Deployment::mec_cn, "XIII");
  if (id == "XIV") return detail::table_e2e(Deployment::centralized, "XIV");
  if (id == "XV") return detail::table_xv();
  throw validation_error("unknown table id '" + id + "' (expected V..XV)");
}

inline std::string render_repro(const ReproTable& t) {
  std::ostringstream o;
  o << "Table " << t.id << ": " << t.title << "\n";
  for (const std::string& n : t.notes) o << "  note: " << n << "\n";
  o << '\n';
  TextTable tt({"row", "column", "computed", "reference", "deviation", "computed_note",
                "reference_note"});
  auto num = [](double x) {
    if (std::isnan(x)) return std::string("-");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return std::string(buf);
  };
  for (const ReproCell& c : t.cells) {
    const double dev = c.deviation();
    tt.add({c.row, c.column, num(c.computed), num(c.reference_value),
            std::isnan(dev) ? "-" : detail::fmt_g("%+.2f%%", dev * 100.0), c.computed_note,
            c.reference_note});
  }
  o << tt.str();
  return o.str();
}

inline void write_repro_csv(std::ostream& o, const ReproTable& t) {
  o << "table,row,column,computed_ms,reference_ms,deviation,computed_note,reference_note\n";
  for (const ReproCell& c : t.cells) {
    o << t.id << ',' << csv_escape(c.row) << ',' << csv_escape(c.column) << ','
      << format_exact(c.computed) << ',' << format_exact(c.reference_value) << ','
      << format_exact(c.deviation()) << ',' << csv_escape(c.computed_note) << ','
      << csv_escape(c.reference_note) << '\n';
  }
}

}  // namespace e2elat
