#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "e2elat/distribution.hpp"
#include "e2elat/errors.hpp"
#include "e2elat/scenario.hpp"

namespace e2elat {

struct Anchor {
  double p;
  double value;  ///< seconds
};

/// CDF pinned to a set of (percentile, value) anchors.
///
/// From the minimum latency up to the first anchor the CDF is piecewise
/// linear with one knot at the midpoint, whose height is chosen so the
/// overall mean hits the target; without a target, or when no knot height
/// in [0, p1] reaches it, the knot is clamped and the achieved mean differs.
/// Between anchors and past the last one the log-survival is linear.
class AnchoredCdf {
 public:
  AnchoredCdf(std::vector<Anchor> anchors, double min_value, std::optional<double> target_mean = {})
      : anchors_(std::move(anchors)), min_(min_value), target_(target_mean) {
    if (anchors_.size() < 2) throw validation_error("anchored CDF needs at least two anchors");
    for (std::size_t i = 0; i < anchors_.size(); ++i) {
      const Anchor& a = anchors_[i];
      if (!(a.p > 0.0 && a.p < 1.0)) throw validation_error("anchor percentiles must lie in (0, 1)");
      if (i > 0 && !(a.p > anchors_[i - 1].p && a.value > anchors_[i - 1].value))
        throw validation_error("anchors must be strictly increasing in percentile and value");
    }
    if (!(min_value >= 0.0 && min_value < anchors_.front().value))
      throw validation_error("minimum latency must be >= 0 and below the first anchor");

    rates_.resize(anchors_.size() - 1);
    for (std::size_t i = 0; i + 1 < anchors_.size(); ++i) {
      const double s0 = 1.0 - anchors_[i].p;
      const double s1 = 1.0 - anchors_[i + 1].p;
      rates_[i] = std::log(s0 / s1) / (anchors_[i + 1].value - anchors_[i].value);
    }

    const double p1 = anchors_.front().p;
    const double len = anchors_.front().value - min_;
    knot_t_ = min_ + 0.5 * len;
    double fk = 0.5 * p1;
    if (target_) {
      const double need = *target_ - min_ - tail_integral();
      fk = 0.5 * (4.0 * (1.0 - need / len) - p1);
    }
    knot_f_ = std::clamp(fk, 0.0, p1);
    matched_ = target_.has_value() && fk == knot_f_;
  }

  double cdf(double t) const {
    const Anchor& first = anchors_.front();
    if (t < min_) return 0.0;
    if (t < knot_t_) return knot_f_ * (t - min_) / (knot_t_ - min_);
    if (t < first.value)
      return knot_f_ + (first.p - knot_f_) * (t - knot_t_) / (first.value - knot_t_);
    std::size_t i = 0;
    while (i + 1 < anchors_.size() && t >= anchors_[i + 1].value) ++i;
    const double r = rates_[std::min(i, rates_.size() - 1)];
    return 1.0 - (1.0 - anchors_[i].p) * std::exp(-r * (t - anchors_[i].value));
  }

  double quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) throw validation_error("quantile: p must lie in (0, 1)");
    const Anchor& first = anchors_.front();
    for (const Anchor& a : anchors_) {
      if (p == a.p) return a.value;
    }
    if (p <= knot_f_) return min_ + (knot_t_ - min_) * p / knot_f_;
    if (p < first.p) return knot_t_ + (first.value - knot_t_) * (p - knot_f_) / (first.p - knot_f_);
    std::size_t i = 0;
    while (i + 1 < anchors_.size() && p >= anchors_[i + 1].p) ++i;
    const double r = rates_[std::min(i, rates_.size() - 1)];
    return anchors_[i].value + std::log((1.0 - anchors_[i].p) / (1.0 - p)) / r;
  }

  double mean() const {
    const Anchor& first = anchors_.front();
    const double len = first.value - min_;
    const double body = len - len * (2.0 * knot_f_ + first.p) / 4.0;
    return min_ + body + tail_integral();
  }

  bool mean_matched() const { return matched_; }
  std::optional<double> target_mean() const { return target_; }
  const std::vector<Anchor>& anchors() const { return anchors_; }
  double min_value() const { return min_; }

  /// Dense piecewise-linear sampling; anchors and knots are exact grid points.
  Empirical sample(std::size_t per_segment = 256, double tail = 1e-9) const {
    Empirical e;
    auto push = [&e](double t, double f) {
      if (!e.t.empty() && t <= e.t.back()) return;
      e.t.push_back(t);
      e.F.push_back(std::max(f, e.F.empty() ? 0.0 : e.F.back()));
    };
    push(min_, 0.0);
    push(knot_t_, knot_f_);
    push(anchors_.front().value, anchors_.front().p);
    for (std::size_t i = 0; i < anchors_.size(); ++i) {
      const double t0 = anchors_[i].value;
      const double r = rates_[std::min(i, rates_.size() - 1)];
      const double t1 = i + 1 < anchors_.size()
                            ? anchors_[i + 1].value
                            : t0 + std::log((1.0 - anchors_[i].p) / tail) / r;
      for (std::size_t k = 1; k < per_segment; ++k) {
        const double t = t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(per_segment);
        push(t, 1.0 - (1.0 - anchors_[i].p) * std::exp(-r * (t - t0)));
      }
      push(t1, i + 1 < anchors_.size() ? anchors_[i + 1].p : 1.0);
    }
    e.F.back() = 1.0;
    e.exact_mean = mean();
    return e;
  }

  /// Same shape with every time scaled by k.
  AnchoredCdf scaled(double k) const {
    std::vector<Anchor> a = anchors_;
    for (Anchor& x : a) x.value *= k;
    std::optional<double> m = target_;
    if (m) *m *= k;
    return AnchoredCdf(std::move(a), min_ * k, m);
  }

 private:
  std::vector<Anchor> anchors_;
  std::vector<double> rates_;
  double min_;
  std::optional<double> target_;
  double knot_t_ = 0.0;
  double knot_f_ = 0.0;
  bool matched_ = false;

  /// Integral of the survival function from the first anchor on.
  double tail_integral() const {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < anchors_.size(); ++i)
      acc += ((1.0 - anchors_[i].p) - (1.0 - anchors_[i + 1].p)) / rates_[i];
    acc += (1.0 - anchors_.back().p) / rates_.back();
    return acc;
  }
};

enum class InternetMode { round_trip, one_way };

inline AnchoredCdf internet_anchors(double min_ms = 1.0) {
  return AnchoredCdf({{0.90, 21e-3}, {0.9999, 43e-3}}, min_ms * 1e-3, 10.3e-3);
}

inline AnchoredCdf peering_anchors(PeeringKind kind, double min_ms) {
  if (kind == PeeringKind::local)
    return AnchoredCdf({{0.90, 0.431e-3}, {0.9999, 1.493e-3}}, min_ms * 1e-3, 0.306e-3);
  return AnchoredCdf({{0.90, 29.867e-3}, {0.9999, 99.212e-3}}, min_ms * 1e-3, 13.001e-3);
}

namespace detail {

inline Empirical scale_time(Empirical e, double k) {
  for (double& t : e.t) t *= k;
  if (e.exact_mean) *e.exact_mean *= k;
  return e;
}

}  // namespace detail

/// UPF to AS Internet latency; a supplied CDF is taken as round trip.
inline LatencyDistribution internet_latency(InternetMode mode, const ExternalsConfig& cfg = {}) {
  const double k = mode == InternetMode::one_way ? 0.5 : 1.0;
  if (cfg.internet_cdf) return detail::scale_time(*cfg.internet_cdf, k);
  return internet_anchors(cfg.internet_min_ms).scaled(k).sample();
}

inline LatencyDistribution peering_latency(PeeringKind kind, const ExternalsConfig& cfg = {}) {
  if (kind == PeeringKind::local && cfg.peering_local_cdf) return *cfg.peering_local_cdf;
  if (kind == PeeringKind::remote && cfg.peering_remote_cdf) return *cfg.peering_remote_cdf;
  const double min_ms =
      kind == PeeringKind::local ? cfg.peering_local_min_ms : cfg.peering_remote_min_ms;
  return peering_anchors(kind, min_ms).sample();
}

}  // namespace e2elat
