#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "e2elat/errors.hpp"
#include "e2elat/queueing.hpp"

namespace e2elat {

struct Deterministic {
  double value = 0.0;
};

/// shift + Exp(mean_excess).
struct ShiftedExponential {
  double shift = 0.0;
  double mean_excess = 0.0;
};

struct Uniform {
  double lo = 0.0;
  double hi = 0.0;
};

/// extra + 2/mu + W, W the M/D/1 waiting time.
struct MD1Transit {
  double lambda = 0.0;
  double mu = 1.0;
  double extra = 0.0;
};

/// Piecewise-linear CDF through (t[i], F[i]); F[0] > 0 is an atom at t[0].
/// exact_mean, when set, overrides grid integration.
struct Empirical {
  std::vector<double> t;
  std::vector<double> F;
  std::optional<double> exact_mean;
};

/// Only three statistics are known; NaN marks a missing one.
struct Tabulated {
  double mean = std::numeric_limits<double>::quiet_NaN();
  double p90 = std::numeric_limits<double>::quiet_NaN();
  double p9999 = std::numeric_limits<double>::quiet_NaN();
};

struct PercentileTriple {
  double mean = std::numeric_limits<double>::quiet_NaN();
  double p90 = std::numeric_limits<double>::quiet_NaN();
  double p9999 = std::numeric_limits<double>::quiet_NaN();
};

inline PercentileTriple operator+(const PercentileTriple& a, const PercentileTriple& b) {
  return {a.mean + b.mean, a.p90 + b.p90, a.p9999 + b.p9999};
}

/// A probability mass sitting at a single latency value.
struct Atom {
  double at;
  double weight;
};

class LatencyDistribution {
 public:
  using variant_type =
      std::variant<Deterministic, ShiftedExponential, Uniform, MD1Transit, Empirical, Tabulated>;

  LatencyDistribution() : v_(Deterministic{0.0}) {}
  LatencyDistribution(Deterministic d) : v_(d) { check(); }
  LatencyDistribution(ShiftedExponential d) : v_(d) { check(); }
  LatencyDistribution(Uniform d) : v_(d) { check(); }
  LatencyDistribution(MD1Transit d) : v_(d) { check(); }
  LatencyDistribution(Empirical d) : v_(std::move(d)) { check(); }
  LatencyDistribution(Tabulated d) : v_(d) { check(); }

  const variant_type& variant() const noexcept { return v_; }

  template <class T>
  bool is() const noexcept {
    return std::holds_alternative<T>(v_);
  }
  template <class T>
  const T& as() const {
    return std::get<T>(v_);
  }

  bool has_cdf() const noexcept { return !is<Tabulated>(); }

  double cdf(double t) const {
    return std::visit([t](const auto& d) { return cdf_of(d, t); }, v_);
  }

  double mean() const {
    return std::visit([](const auto& d) { return mean_of(d); }, v_);
  }

  double percentile(double p) const {
    if (!(p > 0.0 && p < 1.0)) throw validation_error("percentile: p must lie in (0, 1)");
    return std::visit([p](const auto& d) { return percentile_of(d, p); }, v_);
  }

  PercentileTriple triple() const { return {mean(), percentile(0.90), percentile(0.9999)}; }

  /// Smallest value in the support.
  double support_min() const {
    return std::visit([](const auto& d) { return support_min_of(d); }, v_);
  }

  std::vector<Atom> atoms() const {
    return std::visit([](const auto& d) { return atoms_of(d); }, v_);
  }

  /// CDF with the atoms removed.
  double continuous_cdf(double t) const {
    double f = cdf(t);
    for (const Atom& a : atoms()) {
      if (a.at <= t) f -= a.weight;
    }
    return std::max(0.0, f);
  }

  /// Mean from the piecewise-linear grid alone (ignores exact_mean).
  static double grid_mean(const Empirical& e) {
    double m = e.t.front();
    for (std::size_t i = 1; i < e.t.size(); ++i) {
      const double s0 = 1.0 - e.F[i - 1];
      const double s1 = 1.0 - e.F[i];
      m += 0.5 * (s0 + s1) * (e.t[i] - e.t[i - 1]);
    }
    return m;
  }

 private:
  variant_type v_;

  void check() const {
    std::visit([](const auto& d) { validate_of(d); }, v_);
  }

  // --- validation -------------------------------------------------------

  static void validate_of(const Deterministic& d) {
    if (!std::isfinite(d.value) || d.value < 0.0)
      throw validation_error("deterministic latency must be finite and >= 0");
  }
  static void validate_of(const ShiftedExponential& d) {
    if (!(d.shift >= 0.0) || !(d.mean_excess >= 0.0) || !std::isfinite(d.shift) ||
        !std::isfinite(d.mean_excess))
      throw validation_error("shifted exponential needs shift >= 0 and mean_excess >= 0");
  }
  static void validate_of(const Uniform& d) {
    if (!(d.lo >= 0.0) || !(d.lo <= d.hi) || !std::isfinite(d.hi))
      throw validation_error("uniform latency needs 0 <= lo <= hi");
  }
  static void validate_of(const MD1Transit& d) {
    detail::require_stable(d.lambda, d.mu, "md1");
    if (!(d.extra >= 0.0)) throw validation_error("md1 transit extra delay must be >= 0");
  }
  static void validate_of(const Empirical& d) {
    if (d.t.empty() || d.t.size() != d.F.size())
      throw validation_error("empirical CDF needs matching, nonempty t and F columns");
    for (std::size_t i = 0; i < d.t.size(); ++i) {
      if (!std::isfinite(d.t[i]) || !(d.F[i] >= 0.0 && d.F[i] <= 1.0))
        throw validation_error("empirical CDF values must be finite with F in [0, 1]");
      if (i > 0 && (d.t[i] <= d.t[i - 1] || d.F[i] < d.F[i - 1]))
        throw validation_error("empirical CDF must be strictly increasing in t and nondecreasing in F");
    }
    if (d.t.front() < 0.0) throw validation_error("empirical CDF support must be nonnegative");
  }
  static void validate_of(const Tabulated& d) {
    const double v[3] = {d.mean, d.p90, d.p9999};
    for (double x : v) {
      if (!std::isnan(x) && !(x >= 0.0 && std::isfinite(x)))
        throw validation_error("tabulated latency values must be finite and >= 0");
    }
    if (!std::isnan(d.mean) && !std::isnan(d.p90) && d.mean > d.p90)
      throw validation_error("tabulated latency needs mean <= p90");
    if (!std::isnan(d.p90) && !std::isnan(d.p9999) && d.p90 > d.p9999)
      throw validation_error("tabulated latency needs p90 <= p99.99");
  }

  // --- cdf --------------------------------------------------------------

  static double cdf_of(const Deterministic& d, double t) { return t >= d.value ? 1.0 : 0.0; }
  static double cdf_of(const ShiftedExponential& d, double t) {
    if (t < d.shift) return 0.0;
    if (d.mean_excess == 0.0) return 1.0;
    return -std::expm1(-(t - d.shift) / d.mean_excess);
  }
  static double cdf_of(const Uniform& d, double t) {
    if (t < d.lo) return 0.0;
    if (t >= d.hi) return 1.0;
    return (t - d.lo) / (d.hi - d.lo);
  }
  static double cdf_of(const MD1Transit& d, double t) {
    return md1_wait_cdf(d.lambda, d.mu, t - d.extra - 2.0 / d.mu);
  }
  static double cdf_of(const Empirical& d, double t) {
    if (t < d.t.front()) return 0.0;
    if (t >= d.t.back()) return d.F.back();
    const auto it = std::upper_bound(d.t.begin(), d.t.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - d.t.begin());
    const double w = (t - d.t[i - 1]) / (d.t[i] - d.t[i - 1]);
    return d.F[i - 1] + w * (d.F[i] - d.F[i - 1]);
  }
  static double cdf_of(const Tabulated&, double) {
    throw unsupported_percentile("tabulated latency has no CDF");
  }

  // --- mean -------------------------------------------------------------

  static double mean_of(const Deterministic& d) { return d.value; }
  static double mean_of(const ShiftedExponential& d) { return d.shift + d.mean_excess; }
  static double mean_of(const Uniform& d) { return 0.5 * (d.lo + d.hi); }
  static double mean_of(const MD1Transit& d) { return d.extra + md1_transit_mean(d.lambda, d.mu); }
  static double mean_of(const Empirical& d) {
    return d.exact_mean ? *d.exact_mean : grid_mean(d);
  }
  static double mean_of(const Tabulated& d) { return d.mean; }

  // --- percentile ---------------------------------------------------------

  static double percentile_of(const Deterministic& d, double) { return d.value; }
  static double percentile_of(const ShiftedExponential& d, double p) {
    return d.shift - d.mean_excess * std::log1p(-p);
  }
  static double percentile_of(const Uniform& d, double p) { return d.lo + p * (d.hi - d.lo); }
  static double percentile_of(const MD1Transit& d, double p) {
    const double base = d.extra + 2.0 / d.mu;
    const double rho = d.lambda / d.mu;
    if (p <= 1.0 - rho) return base;
    double lo = 0.0;
    double hi = 1.0 / d.mu;
    while (md1_wait_cdf(d.lambda, d.mu, hi) < p) {
      lo = hi;
      hi *= 2.0;
    }
    for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
      const double mid = 0.5 * (lo + hi);
      (md1_wait_cdf(d.lambda, d.mu, mid) >= p ? hi : lo) = mid;
    }
    return base + hi;
  }
  static double percentile_of(const Empirical& d, double p) {
    const auto it = std::lower_bound(d.F.begin(), d.F.end(), p);
    if (it == d.F.end()) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "empirical CDF tops out at %.9g below p = %.9g", d.F.back(), p);
      throw horizon_error(buf, 1.0 - d.F.back());
    }
    const std::size_t i = static_cast<std::size_t>(it - d.F.begin());
    if (i == 0 || d.F[i] == p) return d.t[i];
    const double w = (p - d.F[i - 1]) / (d.F[i] - d.F[i - 1]);
    return d.t[i - 1] + w * (d.t[i] - d.t[i - 1]);
  }
  static double percentile_of(const Tabulated& d, double p) {
    double v = std::numeric_limits<double>::quiet_NaN();
    if (p == 0.90) v = d.p90;
    else if (p == 0.9999) v = d.p9999;
    else throw unsupported_percentile("tabulated latency only carries p90 and p99.99");
    if (std::isnan(v)) throw unsupported_percentile("tabulated latency lacks the requested percentile");
    return v;
  }

  // --- support and atoms ----------------------------------------------------

  static double support_min_of(const Deterministic& d) { return d.value; }
  static double support_min_of(const ShiftedExponential& d) { return d.shift; }
  static double support_min_of(const Uniform& d) { return d.lo; }
  static double support_min_of(const MD1Transit& d) { return d.extra + 2.0 / d.mu; }
  static double support_min_of(const Empirical& d) { return d.t.front(); }
  static double support_min_of(const Tabulated&) {
    throw unsupported_percentile("tabulated latency has no support description");
  }

  static std::vector<Atom> atoms_of(const Deterministic& d) { return {{d.value, 1.0}}; }
  static std::vector<Atom> atoms_of(const ShiftedExponential& d) {
    if (d.mean_excess == 0.0) return {{d.shift, 1.0}};
    return {};
  }
  static std::vector<Atom> atoms_of(const Uniform& d) {
    if (d.lo == d.hi) return {{d.lo, 1.0}};
    return {};
  }
  static std::vector<Atom> atoms_of(const MD1Transit& d) {
    return {{d.extra + 2.0 / d.mu, 1.0 - d.lambda / d.mu}};
  }
  static std::vector<Atom> atoms_of(const Empirical& d) {
    if (d.F.front() > 0.0) return {{d.t.front(), d.F.front()}};
    return {};
  }
  static std::vector<Atom> atoms_of(const Tabulated&) {
    throw unsupported_percentile("tabulated latency has no atom description");
  }
};

/// Free-function spellings.
inline double percentile(const LatencyDistribution& d, double p) { return d.percentile(p); }
inline double mean(const LatencyDistribution& d) { return d.mean(); }
inline double cdf(const LatencyDistribution& d, double t) { return d.cdf(t); }

/// Shifted exponential through two known statistics of a tabulated latency.
/// Prefers (p90, p99.99); otherwise matches the mean and whichever percentile
/// exists. Returns nullopt when fewer than two statistics are present.
inline std::optional<ShiftedExponential> shifted_exponential_fit(const Tabulated& tab) {
  const double l90 = -std::log1p(-0.90);
  const double l9999 = -std::log1p(-0.9999);
  const bool has_m = !std::isnan(tab.mean);
  const bool has_90 = !std::isnan(tab.p90);
  const bool has_99 = !std::isnan(tab.p9999);
  double m = 0.0;
  double s = 0.0;
  double q = 0.0;
  double lq = 0.0;
  if (has_90 && has_99) {
    m = (tab.p9999 - tab.p90) / (l9999 - l90);
    s = tab.p90 - m * l90;
    q = tab.p90;
    lq = l90;
  } else if (has_m && (has_90 || has_99)) {
    q = has_99 ? tab.p9999 : tab.p90;
    lq = has_99 ? l9999 : l90;
    m = (q - tab.mean) / (lq - 1.0);
    s = tab.mean - m;
  } else {
    return std::nullopt;
  }
  if (m <= 0.0) return ShiftedExponential{q, 0.0};
  if (s < 0.0) return ShiftedExponential{0.0, q / lq};
  return ShiftedExponential{s, m};
}

}  // namespace e2elat
