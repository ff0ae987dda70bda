#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "e2elat/compose.hpp"
#include "e2elat/dimensioning.hpp"
#include "e2elat/io.hpp"

namespace e2elat {

/// Column-aligned plain text table. The first column is left aligned,
/// the rest right aligned.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string str() const {
    std::vector<std::size_t> w(header_.size(), 0);
    auto widen = [&w](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
    };
    widen(header_);
    for (const auto& r : rows_) widen(r);
    std::ostringstream o;
    auto line = [&](const std::vector<std::string>& r) {
      std::string s;
      for (std::size_t i = 0; i < w.size(); ++i) {
        const std::string& c = i < r.size() ? r[i] : std::string();
        const std::string pad(w[i] - c.size(), ' ');
        if (i) s += "  ";
        s += i == 0 ? c + pad : pad + c;
      }
      while (!s.empty() && s.back() == ' ') s.pop_back();
      o << s << '\n';
    };
    line(header_);
    std::size_t total = 0;
    for (std::size_t x : w) total += x;
    o << std::string(total + 2 * (w.size() - 1), '-') << '\n';
    for (const auto& r : rows_) line(r);
    return o.str();
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

inline std::string percentile_label(double p) {
  if (p == 0.90) return "p90";
  if (p == 0.9999) return "p99.99";
  char buf[32];
  std::snprintf(buf, sizeof buf, "p%g", p * 100.0);
  return buf;
}

inline std::string format_alpha(double ul, double dl) {
  char buf[64];
  if (ul == dl) std::snprintf(buf, sizeof buf, "%g", ul);
  else std::snprintf(buf, sizeof buf, "%g/%g", ul, dl);
  return buf;
}

inline std::string format_count(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

/// Detailed view of one scenario: every component at mean, p90 and p99.99.
inline std::string render_breakdown(const ComponentBreakdown& b) {
  std::ostringstream o;
  o << display_name(b.deployment) << "  " << b.service << "  lambda=" << format_count(b.lambda)
    << "  alpha=" << format_alpha(b.alpha_ul, b.alpha_dl) << "  composition=" << to_string(b.mode)
    << "  peering=" << to_string(b.peering) << "\n\n";
  TextTable t({"component [ms]", "mean", "p90", "p99.99", "status"});
  for (Component c : all_components) {
    const ComponentResult& r = b[c];
    t.add({std::string(to_string(c)), format_ms(r.stats.mean), format_ms(r.stats.p90),
           format_ms(r.stats.p9999), std::string(to_string(r.status))});
  }
  t.add({"total single-MNO", format_ms(b.single.stats.mean), format_ms(b.single.stats.p90),
         format_ms(b.single.stats.p9999), ""});
  t.add({"total multi-MNO", format_ms(b.multi.stats.mean), format_ms(b.multi.stats.p90),
         format_ms(b.multi.stats.p9999), ""});
  o << t.str() << '\n';
  o << "requirement: " << percentile_label(b.reliability) << " <= " << format_ms(b.requirement)
    << " ms\n";
  o << "single-MNO: " << to_string(b.single.verdict) << " (" << format_ms(b.single.at_requirement)
    << " ms; mean-based: " << to_string(b.single.mean_verdict) << ")\n";
  o << "multi-MNO:  " << to_string(b.multi.verdict) << " (" << format_ms(b.multi.at_requirement)
    << " ms; mean-based: " << to_string(b.multi.mean_verdict) << ")\n";
  o << "selected (" << to_string(b.mno_mode) << "): " << to_string(b.verdict());
  if (b.disagreement()) o << "  [mean-based verdict disagrees]";
  o << '\n';
  if (!b.error.empty()) o << "note: " << b.error << '\n';
  return o.str();
}

/// One line per cell at the service percentile, with mean totals beside.
inline std::string render_breakdowns(const std::vector<ComponentBreakdown>& rows) {
  TextTable t({"deployment", "service", "lambda", "alpha", "mno", "stat", "radio", "tn", "cn",
               "upf_as", "as", "peering", "single", "multi", "single_mean", "multi_mean",
               "verdict_single", "verdict_multi", "flag"});
  for (const ComponentBreakdown& r : rows) {
    std::vector<std::string> c = {std::string(display_name(r.deployment)),
                                  r.service,
                                  format_count(r.lambda),
                                  format_alpha(r.alpha_ul, r.alpha_dl),
                                  std::string(to_string(r.mno_mode)),
                                  percentile_label(r.reliability)};
    for (Component k : all_components) c.push_back(format_ms(r[k].at_requirement));
    c.push_back(format_ms(r.single.at_requirement));
    c.push_back(format_ms(r.multi.at_requirement));
    c.push_back(format_ms(r.single.stats.mean));
    c.push_back(format_ms(r.multi.stats.mean));
    c.emplace_back(to_string(r.single.verdict));
    c.emplace_back(to_string(r.multi.verdict));
    c.push_back(r.disagreement() ? "mean-disagrees" : "");
    t.add(std::move(c));
  }
  return t.str();
}

inline std::string render_dimensioning(const std::vector<DimensioningResult>& rows) {
  TextTable t({"deployment", "service", "lambda", "mno", "alpha_min", "stability_bound", "binding",
               "detail", "e2e_at_req_ms", "min_processors"});
  for (const DimensioningResult& r : rows) {
    char a[32], sb[32];
    std::snprintf(a, sizeof a, "%.5g", r.alpha_min);
    std::snprintf(sb, sizeof sb, "%.5g", r.stability_bound);
    t.add({std::string(display_name(r.deployment)), r.service, format_count(r.lambda),
           std::string(to_string(r.mno_mode)), r.feasible ? a : "-",
           std::isnan(r.stability_bound) ? "-" : sb, std::string(to_string(r.binding)),
           r.error.empty() ? r.binding_detail : r.binding_detail + ": " + r.error,
           format_ms(r.achieved_at_requirement), std::to_string(r.min_processors)});
  }
  return t.str();
}

}  // namespace e2elat
