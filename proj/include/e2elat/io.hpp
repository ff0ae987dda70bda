#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "e2elat/compose.hpp"
#include "e2elat/dimensioning.hpp"
#include "e2elat/distribution.hpp"
#include "e2elat/errors.hpp"
#include "e2elat/scenario.hpp"

namespace e2elat {

// ---------------------------------------------------------------------------
// Number formatting

/// Shortest text that parses back to the same double; NaN is empty.
inline std::string format_exact(double x) {
  if (std::isnan(x)) return "";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

inline double parse_double(std::string_view s, const char* what = "number") {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.empty() || s == "-" || s == "nan" || s == "NaN") return std::numeric_limits<double>::quiet_NaN();
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size())
    throw validation_error(std::string("malformed ") + what + " '" + std::string(s) + "'");
  return v;
}

/// Milliseconds for display: three decimals, or three significant digits
/// below 0.01 ms.
inline std::string format_ms(double seconds) {
  if (std::isnan(seconds)) return "-";
  const double ms = seconds * 1e3;
  char buf[32];
  if (std::fabs(ms) >= 0.01 || ms == 0.0) std::snprintf(buf, sizeof buf, "%.3f", ms);
  else std::snprintf(buf, sizeof buf, "%.3g", ms);
  return buf;
}

// ---------------------------------------------------------------------------
// CSV

/// Splits one record; fields may be double-quoted with "" as an escaped quote.
inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false, was_quoted = false;
  auto flush = [&] {
    if (!was_quoted) {
      while (!cur.empty() && cur.front() == ' ') cur.erase(cur.begin());
      while (!cur.empty() && cur.back() == ' ') cur.pop_back();
    }
    out.push_back(std::move(cur));
    cur.clear();
    was_quoted = false;
  };
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c != '"') cur += c;
      else if (i + 1 < line.size() && line[i + 1] == '"') cur += line[++i];
      else quoted = false;
    } else if (c == '"') {
      quoted = was_quoted = true;
    } else if (c == ',') {
      flush();
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (quoted) throw validation_error("CSV field has an unterminated quote");
  flush();
  return out;
}

/// Quotes a field when it holds a comma or a quote; newlines become spaces.
inline std::string csv_escape(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw validation_error("CSV is missing column '" + std::string(name) + "'");
  }
};

inline CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r" || line[0] == '#') continue;
    auto cells = split_csv_line(line);
    if (first) {
      t.header = std::move(cells);
      first = false;
      continue;
    }
    if (cells.size() != t.header.size())
      throw validation_error("CSV row has " + std::to_string(cells.size()) + " fields, header has " +
                             std::to_string(t.header.size()));
    t.rows.push_back(std::move(cells));
  }
  if (first) throw validation_error("CSV is empty");
  return t;
}

inline CsvTable read_csv_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw validation_error("cannot open " + path);
  return read_csv(f);
}

/// Two-column CDF; the time column is t_seconds or t_ms.
inline Empirical load_cdf_csv(std::istream& in) {
  const CsvTable t = read_csv(in);
  if (t.header.size() != 2) throw validation_error("CDF CSV needs exactly two columns");
  double scale = 1.0;
  if (t.header[0] == "t_ms") scale = 1e-3;
  else if (t.header[0] != "t_seconds")
    throw validation_error("CDF CSV time column must be t_seconds or t_ms");
  Empirical e;
  for (const auto& r : t.rows) {
    e.t.push_back(parse_double(r[0], "time") * scale);
    e.F.push_back(parse_double(r[1], "probability"));
  }
  LatencyDistribution check(e);  // validates monotonicity and range
  return e;
}

inline Empirical load_cdf_csv_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw validation_error("cannot open " + path);
  return load_cdf_csv(f);
}

inline RadioLatencyTable load_radio_csv(std::istream& in) {
  const CsvTable t = read_csv(in);
  const std::size_t cs = t.column("service"), cl = t.column("lambda"), cm = t.column("mean_ms"),
                    c90 = t.column("p90_ms"), c99 = t.column("p9999_ms"), cu = t.column("supported");
  RadioLatencyTable out;
  for (const auto& r : t.rows) {
    RadioRow row;
    row.service = r[cs];
    if (row.service == "lloa") row.service = "LLoA";
    if (row.service == "hloa") row.service = "HLoA";
    row.lambda = parse_double(r[cl], "lambda");
    row.mean_ms = parse_double(r[cm], "mean_ms");
    row.p90_ms = parse_double(r[c90], "p90_ms");
    row.p9999_ms = parse_double(r[c99], "p9999_ms");
    const std::string& s = r[cu];
    if (s == "true" || s == "1" || s == "yes") row.supported = true;
    else if (s == "false" || s == "0" || s == "no") row.supported = false;
    else throw validation_error("supported must be true or false, got '" + s + "'");
    out.rows.push_back(row);
  }
  return out;
}

inline RadioLatencyTable load_radio_csv_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw validation_error("cannot open " + path);
  return load_radio_csv(f);
}

inline void write_radio_csv(std::ostream& out, const RadioLatencyTable& t) {
  out << "service,lambda,mean_ms,p90_ms,p9999_ms,supported\n";
  for (const RadioRow& r : t.rows) {
    out << r.service << ',' << format_exact(r.lambda) << ',' << format_exact(r.mean_ms) << ','
        << format_exact(r.p90_ms) << ',' << format_exact(r.p9999_ms) << ','
        << (r.supported ? "true" : "false") << '\n';
  }
}

// ---------------------------------------------------------------------------
// Scenario JSON

using json = nlohmann::json;

namespace detail {

inline json num(double x) { return std::isnan(x) ? json(nullptr) : json(x); }

inline double get_num(const json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!j.is_number()) throw validation_error("expected a number, got " + j.dump());
  return j.get<double>();
}

template <class T>
void read_if(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if constexpr (std::is_same_v<T, double>) {
    out = get_num(v);
  } else if constexpr (std::is_same_v<T, int>) {
    if (!v.is_number_integer()) throw validation_error(std::string(key) + " must be an integer");
    out = v.get<int>();
  } else if constexpr (std::is_same_v<T, std::string>) {
    out = v.get<std::string>();
  } else {
    out = parse_enum<T>(v.get<std::string>());
  }
}

inline json cdf_json(const std::optional<Empirical>& e) {
  if (!e) return nullptr;
  json a = json::array();
  for (std::size_t i = 0; i < e->t.size(); ++i) a.push_back({e->t[i], e->F[i]});
  return a;
}

inline std::optional<Empirical> cdf_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  Empirical e;
  for (const json& p : j) {
    if (!p.is_array() || p.size() != 2) throw validation_error("CDF points must be [t_seconds, F] pairs");
    e.t.push_back(get_num(p[0]));
    e.F.push_back(get_num(p[1]));
  }
  LatencyDistribution check(e);
  return e;
}

}  // namespace detail

inline json to_json(const Scenario& s) {
  const Topology& t = s.topology;
  const TrafficSpec& tr = s.traffic;
  const AsHardwareProfile& as = s.as_profile;
  json radio = json::array();
  for (const RadioRow& r : s.radio.rows) {
    radio.push_back({{"service", r.service},
                     {"lambda", r.lambda},
                     {"mean_ms", detail::num(r.mean_ms)},
                     {"p90_ms", detail::num(r.p90_ms)},
                     {"p9999_ms", detail::num(r.p9999_ms)},
                     {"supported", r.supported}});
  }
  return {
      {"deployment", to_string(s.deployment)},
      {"topology",
       {{"g", t.g},
        {"m1", t.m1},
        {"m2", t.m2},
        {"d_gnb_m1_km", t.d_gnb_m1_km},
        {"d_m1_m2_km", t.d_m1_m2_km},
        {"d_m2_m3_km", t.d_m2_m3_km},
        {"d_cn_km", t.d_cn_km},
        {"d_cn_max_km", t.d_cn_max_km},
        {"c_gnb_m1_bps", t.c_gnb_m1},
        {"c_m1_m2_bps", t.c_m1_m2},
        {"c_m2_m3_bps", t.c_m2_m3},
        {"c_cn_bps", t.c_cn},
        {"c_upf_as_bps", t.c_upf_as},
        {"v_km_s", t.v_km_s},
        {"t_p_s", t.t_p}}},
      {"traffic",
       {{"lambda_gnb_ul", tr.lambda_gnb_ul ? json(*tr.lambda_gnb_ul) : json(nullptr)},
        {"packet_bits", tr.packet_bits},
        {"packet_rate_per_vehicle",
         tr.packet_rate_per_vehicle ? json(*tr.packet_rate_per_vehicle) : json(nullptr)},
        {"vehicles_per_cell", tr.vehicles_per_cell ? json(*tr.vehicles_per_cell) : json(nullptr)},
        {"p_loss", tr.p_loss},
        {"dl_copies", tr.dl_copies},
        {"split",
         {{"m3_to_m2", tr.split.m3_to_m2},
          {"m2_to_m1", tr.split.m2_to_m1},
          {"m1_to_gnb", tr.split.m1_to_gnb}}}}},
      {"alpha", {{"ul", s.alpha.ul}, {"dl", s.alpha.dl}}},
      {"radio", radio},
      {"as_profile",
       {{"processors", as.processors},
        {"parallel_units", as.parallel_units},
        {"frequency_hz", as.frequency},
        {"theta_model", to_string(as.theta_model)},
        {"theta_lo", as.theta_lo},
        {"theta_hi", as.theta_hi},
        {"theta_exp_mean", as.theta_exp_mean},
        {"t_tt_s", as.t_tt},
        {"mode", to_string(as.mode)},
        {"aggregated_gnbs", as.aggregated_gnbs ? json(*as.aggregated_gnbs) : json(nullptr)}}},
      {"service",
       {{"name", s.service.name},
        {"latency_requirement_s", s.service.latency_requirement},
        {"reliability", s.service.reliability}}},
      {"mno_mode", to_string(s.mno_mode)},
      {"composition_mode", to_string(s.composition_mode)},
      {"tn_model", to_string(s.tn_model)},
      {"externals",
       {{"internet_min_ms", s.externals.internet_min_ms},
        {"peering_local_min_ms", s.externals.peering_local_min_ms},
        {"peering_remote_min_ms", s.externals.peering_remote_min_ms},
        {"internet_cdf", detail::cdf_json(s.externals.internet_cdf)},
        {"peering_local_cdf", detail::cdf_json(s.externals.peering_local_cdf)},
        {"peering_remote_cdf", detail::cdf_json(s.externals.peering_remote_cdf)}}},
      {"convolution",
       {{"step_s", s.convolution.step},
        {"min_points", s.convolution.min_points},
        {"tail", s.convolution.tail},
        {"max_horizon_s", s.convolution.max_horizon}}},
  };
}

/// Overlays the keys present in j onto base. Missing keys keep base values.
inline Scenario scenario_from_json(const json& j, Scenario base = {}) {
  using detail::read_if;
  if (!j.is_object()) throw validation_error("scenario document must be a JSON object");
  Scenario s = std::move(base);
  try {
    read_if(j, "deployment", s.deployment);
    if (j.contains("topology")) {
      const json& t = j.at("topology");
      Topology& o = s.topology;
      read_if(t, "g", o.g);
      read_if(t, "m1", o.m1);
      read_if(t, "m2", o.m2);
      read_if(t, "d_gnb_m1_km", o.d_gnb_m1_km);
      read_if(t, "d_m1_m2_km", o.d_m1_m2_km);
      read_if(t, "d_m2_m3_km", o.d_m2_m3_km);
      read_if(t, "d_cn_km", o.d_cn_km);
      read_if(t, "d_cn_max_km", o.d_cn_max_km);
      read_if(t, "c_gnb_m1_bps", o.c_gnb_m1);
      read_if(t, "c_m1_m2_bps", o.c_m1_m2);
      read_if(t, "c_m2_m3_bps", o.c_m2_m3);
      read_if(t, "c_cn_bps", o.c_cn);
      read_if(t, "c_upf_as_bps", o.c_upf_as);
      read_if(t, "v_km_s", o.v_km_s);
      read_if(t, "t_p_s", o.t_p);
    }
    if (j.contains("traffic")) {
      const json& t = j.at("traffic");
      TrafficSpec& o = s.traffic;
      auto opt = [&t](const char* key, std::optional<double>& out) {
        if (!t.contains(key)) return;
        const double v = detail::get_num(t.at(key));
        out = std::isnan(v) ? std::nullopt : std::optional<double>(v);
      };
      // A document that derives lambda from vehicles drops an inherited rate.
      if (!t.contains("lambda_gnb_ul") &&
          (t.contains("packet_rate_per_vehicle") || t.contains("vehicles_per_cell")))
        o.lambda_gnb_ul.reset();
      opt("lambda_gnb_ul", o.lambda_gnb_ul);
      read_if(t, "packet_bits", o.packet_bits);
      opt("packet_rate_per_vehicle", o.packet_rate_per_vehicle);
      opt("vehicles_per_cell", o.vehicles_per_cell);
      read_if(t, "p_loss", o.p_loss);
      read_if(t, "dl_copies", o.dl_copies);
      if (t.contains("split")) {
        const json& sp = t.at("split");
        if (sp.contains("m3_to_m2")) o.split.m3_to_m2 = sp.at("m3_to_m2").get<std::vector<double>>();
        if (sp.contains("m2_to_m1")) o.split.m2_to_m1 = sp.at("m2_to_m1").get<std::vector<double>>();
        if (sp.contains("m1_to_gnb")) o.split.m1_to_gnb = sp.at("m1_to_gnb").get<std::vector<double>>();
      }
    }
    if (j.contains("alpha")) {
      read_if(j.at("alpha"), "ul", s.alpha.ul);
      read_if(j.at("alpha"), "dl", s.alpha.dl);
    }
    if (j.contains("radio")) {
      s.radio.rows.clear();
      for (const json& r : j.at("radio")) {
        RadioRow row;
        row.service = r.at("service").get<std::string>();
        row.lambda = detail::get_num(r.at("lambda"));
        row.mean_ms = r.contains("mean_ms") ? detail::get_num(r.at("mean_ms")) : row.mean_ms;
        row.p90_ms = r.contains("p90_ms") ? detail::get_num(r.at("p90_ms")) : row.p90_ms;
        row.p9999_ms = r.contains("p9999_ms") ? detail::get_num(r.at("p9999_ms")) : row.p9999_ms;
        row.supported = r.at("supported").get<bool>();
        s.radio.rows.push_back(row);
      }
    }
    if (j.contains("as_profile")) {
      const json& a = j.at("as_profile");
      AsHardwareProfile& o = s.as_profile;
      read_if(a, "processors", o.processors);
      read_if(a, "parallel_units", o.parallel_units);
      read_if(a, "frequency_hz", o.frequency);
      read_if(a, "theta_model", o.theta_model);
      read_if(a, "theta_lo", o.theta_lo);
      read_if(a, "theta_hi", o.theta_hi);
      read_if(a, "theta_exp_mean", o.theta_exp_mean);
      read_if(a, "t_tt_s", o.t_tt);
      read_if(a, "mode", o.mode);
      if (a.contains("aggregated_gnbs")) {
        const json& v = a.at("aggregated_gnbs");
        o.aggregated_gnbs = v.is_null() ? std::nullopt : std::optional<int>(v.get<int>());
      }
    }
    if (j.contains("service")) {
      const json& v = j.at("service");
      if (v.is_string()) {
        s.service = service_by_name(v.get<std::string>());
      } else {
        read_if(v, "name", s.service.name);
        read_if(v, "latency_requirement_s", s.service.latency_requirement);
        read_if(v, "reliability", s.service.reliability);
      }
    }
    read_if(j, "mno_mode", s.mno_mode);
    read_if(j, "composition_mode", s.composition_mode);
    read_if(j, "tn_model", s.tn_model);
    if (j.contains("externals")) {
      const json& e = j.at("externals");
      read_if(e, "internet_min_ms", s.externals.internet_min_ms);
      read_if(e, "peering_local_min_ms", s.externals.peering_local_min_ms);
      read_if(e, "peering_remote_min_ms", s.externals.peering_remote_min_ms);
      if (e.contains("internet_cdf")) s.externals.internet_cdf = detail::cdf_from_json(e.at("internet_cdf"));
      if (e.contains("peering_local_cdf"))
        s.externals.peering_local_cdf = detail::cdf_from_json(e.at("peering_local_cdf"));
      if (e.contains("peering_remote_cdf"))
        s.externals.peering_remote_cdf = detail::cdf_from_json(e.at("peering_remote_cdf"));
    }
    if (j.contains("convolution")) {
      const json& c = j.at("convolution");
      read_if(c, "step_s", s.convolution.step);
      if (c.contains("min_points")) s.convolution.min_points = c.at("min_points").get<std::size_t>();
      read_if(c, "tail", s.convolution.tail);
      read_if(c, "max_horizon_s", s.convolution.max_horizon);
    }
  } catch (const json::exception& e) {
    throw validation_error(std::string("malformed scenario: ") + e.what());
  }
  return s;
}

/// Default scenario with the calibrated topology, radio table and the
/// deployment's server hardware, before any overrides.
inline Scenario base_scenario() {
  Scenario s;
  s.radio = default_radio_table();
  s.traffic.lambda_gnb_ul = 2080.0;
  s.as_profile = default_as_profile(s.deployment);
  return s;
}

inline Scenario load_scenario_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw validation_error("cannot open " + path);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::exception& e) {
    throw validation_error(path + ": " + e.what());
  }
  Scenario base = base_scenario();
  if (j.contains("deployment")) {
    base.deployment = parse_enum<Deployment>(j.at("deployment").get<std::string>());
    base.as_profile = default_as_profile(base.deployment);
  }
  return scenario_from_json(j, base);
}

// ---------------------------------------------------------------------------
// Sweep CSV

inline std::vector<std::string> breakdown_csv_header() {
  std::vector<std::string> h = {"deployment", "service",     "lambda",   "alpha_ul",      "alpha_dl",
                                "mno",        "composition", "peering",  "requirement_s", "reliability"};
  for (Component c : all_components) {
    const std::string n(to_string(c));
    for (const char* suf : {"_mean_s", "_p90_s", "_p9999_s", "_req_s", "_status"}) h.push_back(n + suf);
  }
  for (const char* t : {"single", "multi"}) {
    const std::string n(t);
    for (const char* suf : {"_mean_s", "_p90_s", "_p9999_s", "_req_s", "_verdict", "_mean_verdict"})
      h.push_back(n + suf);
  }
  h.push_back("error");
  return h;
}

inline void write_breakdown_csv(std::ostream& out, const std::vector<ComponentBreakdown>& rows) {
  const auto h = breakdown_csv_header();
  for (std::size_t i = 0; i < h.size(); ++i) out << (i ? "," : "") << h[i];
  out << '\n';
  for (const ComponentBreakdown& r : rows) {
    std::vector<std::string> f = {std::string(to_string(r.deployment)),
                                  r.service,
                                  format_exact(r.lambda),
                                  format_exact(r.alpha_ul),
                                  format_exact(r.alpha_dl),
                                  std::string(to_string(r.mno_mode)),
                                  std::string(to_string(r.mode)),
                                  std::string(to_string(r.peering)),
                                  format_exact(r.requirement),
                                  format_exact(r.reliability)};
    for (const ComponentResult& c : r.components) {
      f.push_back(format_exact(c.stats.mean));
      f.push_back(format_exact(c.stats.p90));
      f.push_back(format_exact(c.stats.p9999));
      f.push_back(format_exact(c.at_requirement));
      f.emplace_back(to_string(c.status));
    }
    for (const Totals* t : {&r.single, &r.multi}) {
      f.push_back(format_exact(t->stats.mean));
      f.push_back(format_exact(t->stats.p90));
      f.push_back(format_exact(t->stats.p9999));
      f.push_back(format_exact(t->at_requirement));
      f.emplace_back(to_string(t->verdict));
      f.emplace_back(to_string(t->mean_verdict));
    }
    f.push_back(csv_escape(r.error));
    for (std::size_t i = 0; i < f.size(); ++i) out << (i ? "," : "") << f[i];
    out << '\n';
  }
}

inline std::vector<ComponentBreakdown> read_breakdown_csv(std::istream& in) {
  const CsvTable t = read_csv(in);
  if (t.header != breakdown_csv_header()) throw validation_error("not a sweep CSV (header mismatch)");
  std::vector<ComponentBreakdown> out;
  for (const auto& f : t.rows) {
    ComponentBreakdown r;
    std::size_t i = 0;
    r.deployment = parse_enum<Deployment>(f[i++]);
    r.service = f[i++];
    r.lambda = parse_double(f[i++]);
    r.alpha_ul = parse_double(f[i++]);
    r.alpha_dl = parse_double(f[i++]);
    r.mno_mode = parse_enum<MnoMode>(f[i++]);
    r.mode = parse_enum<CompositionMode>(f[i++]);
    r.peering = parse_enum<PeeringKind>(f[i++]);
    r.requirement = parse_double(f[i++]);
    r.reliability = parse_double(f[i++]);
    for (ComponentResult& c : r.components) {
      c.stats.mean = parse_double(f[i++]);
      c.stats.p90 = parse_double(f[i++]);
      c.stats.p9999 = parse_double(f[i++]);
      c.at_requirement = parse_double(f[i++]);
      c.status = parse_enum<ComponentStatus>(f[i++]);
    }
    for (Totals* tt : {&r.single, &r.multi}) {
      tt->stats.mean = parse_double(f[i++]);
      tt->stats.p90 = parse_double(f[i++]);
      tt->stats.p9999 = parse_double(f[i++]);
      tt->at_requirement = parse_double(f[i++]);
      tt->verdict = parse_enum<Verdict>(f[i++]);
      tt->mean_verdict = parse_enum<Verdict>(f[i++]);
    }
    r.error = f[i++];
    out.push_back(std::move(r));
  }
  return out;
}

inline void write_dimensioning_csv(std::ostream& out, const std::vector<DimensioningResult>& rows) {
  out << "deployment,service,lambda,mno,feasible,alpha_min,stability_bound,binding,binding_detail,"
         "achieved_mean_s,achieved_p90_s,achieved_p9999_s,achieved_req_s,min_processors,error\n";
  for (const DimensioningResult& r : rows) {
    out << to_string(r.deployment) << ',' << r.service << ',' << format_exact(r.lambda) << ','
        << to_string(r.mno_mode) << ',' << (r.feasible ? "true" : "false") << ','
        << format_exact(r.alpha_min) << ',' << format_exact(r.stability_bound) << ','
        << to_string(r.binding) << ',' << csv_escape(r.binding_detail) << ','
        << format_exact(r.achieved.mean) << ',' << format_exact(r.achieved.p90) << ','
        << format_exact(r.achieved.p9999) << ',' << format_exact(r.achieved_at_requirement) << ','
        << r.min_processors << ',' << csv_escape(r.error) << '\n';
  }
}

}  // namespace e2elat
