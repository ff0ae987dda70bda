#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <vector>

#include "e2elat/distribution.hpp"
#include "e2elat/errors.hpp"

namespace e2elat {

struct ConvolutionOptions {
  double step = 10e-6;          ///< grid step upper bound, seconds
  std::size_t min_points = 1024;  ///< step shrinks so the span holds at least this many cells
  double tail = 1e-6;           ///< both inputs are covered up to CDF >= 1 - tail
  double max_horizon = 300.0;   ///< seconds
  std::size_t max_points = std::size_t{1} << 15;  ///< the step grows past this
};

/// Smallest t with F(t) >= 1 - tail.
inline double upper_quantile(const LatencyDistribution& d, double tail) {
  if (const auto* e = std::get_if<Empirical>(&d.variant())) {
    const auto it = std::lower_bound(e->F.begin(), e->F.end(), 1.0 - tail);
    if (it == e->F.end()) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "empirical CDF ends at F = %.9g; tail mass %.3g exceeds the threshold %.3g",
                    e->F.back(), 1.0 - e->F.back(), tail);
      throw horizon_error(buf, 1.0 - e->F.back());
    }
    return e->t[static_cast<std::size_t>(it - e->F.begin())];
  }
  if (const auto* u = std::get_if<Uniform>(&d.variant())) return u->hi;
  if (const auto* x = std::get_if<Deterministic>(&d.variant())) return x->value;
  return d.percentile(1.0 - tail);
}

/// CDF of the sum of two independent latencies on a uniform grid.
///
/// Atoms of either input are convolved exactly against the other input's
/// CDF. The continuous parts are discretized into cell masses placed at cell
/// midpoints; their pairwise sums land on grid points and count half at the
/// point itself (midpoint rule, second order in the step).
inline LatencyDistribution convolve(const LatencyDistribution& a, const LatencyDistribution& b,
                                    const ConvolutionOptions& opt = {}) {
  if (!a.has_cdf() || !b.has_cdf())
    throw unsupported_percentile("convolution needs full CDFs; lift tabulated latencies first");
  if (a.is<Deterministic>() && b.is<Deterministic>())
    return Deterministic{a.as<Deterministic>().value + b.as<Deterministic>().value};

  const double lo_a = a.support_min();
  const double lo_b = b.support_min();
  const double hi_a = std::max(lo_a, upper_quantile(a, opt.tail));
  const double hi_b = std::max(lo_b, upper_quantile(b, opt.tail));
  const double lo = lo_a + lo_b;
  const double hi = hi_a + hi_b;
  const double exact_mean = a.mean() + b.mean();
  if (hi > opt.max_horizon) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "convolution horizon %.6g s exceeds the limit %.6g s", hi,
                  opt.max_horizon);
    const double reach = opt.max_horizon - lo;
    const double tail = (1.0 - a.cdf(lo_a + 0.5 * reach)) + (1.0 - b.cdf(lo_b + 0.5 * reach));
    throw horizon_error(buf, tail);
  }
  const double span = hi - lo;
  if (span <= 0.0) return Deterministic{lo};

  double h = std::min(opt.step, span / static_cast<double>(opt.min_points));
  h = std::max(h, span / static_cast<double>(opt.max_points));
  const auto n = static_cast<std::size_t>(std::ceil(span / h - 1e-9));
  h = span / static_cast<double>(n);

  auto cell_masses = [h](const LatencyDistribution& d, double from, double to) {
    const auto cells = static_cast<std::size_t>(std::ceil((to - from) / h - 1e-9));
    std::vector<double> m(cells, 0.0);
    double prev = d.continuous_cdf(from);
    for (std::size_t i = 0; i < cells; ++i) {
      const double cur = d.continuous_cdf(from + static_cast<double>(i + 1) * h);
      m[i] = std::max(0.0, cur - prev);
      prev = std::max(prev, cur);
    }
    return m;
  };

  const std::vector<Atom> atoms_a = a.atoms();
  const std::vector<Atom> atoms_b = b.atoms();
  const std::vector<double> mass_a = atoms_a.empty() || atoms_a.front().weight < 1.0
                                         ? cell_masses(a, lo_a, hi_a)
                                         : std::vector<double>{};
  const std::vector<double> mass_b = atoms_b.empty() || atoms_b.front().weight < 1.0
                                         ? cell_masses(b, lo_b, hi_b)
                                         : std::vector<double>{};

  std::vector<double> cell(n + 2, 0.0);
  for (std::size_t i = 0; i < mass_a.size(); ++i) {
    const double ma = mass_a[i];
    if (ma == 0.0) continue;
    const std::size_t limit = std::min(mass_b.size(), n + 1 - std::min(n + 1, i + 1));
    for (std::size_t j = 0; j < limit; ++j) cell[i + j + 1] += ma * mass_b[j];
  }

  const double eps = 1e-9 * h;
  Empirical out;
  out.t.resize(n + 1);
  out.F.resize(n + 1);
  double cum = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = lo + static_cast<double>(k) * h;
    double f = cum + 0.5 * cell[k];
    cum += cell[k];
    for (const Atom& at : atoms_a) f += at.weight * b.cdf(t - at.at + eps);
    for (const Atom& at : atoms_b) f += at.weight * a.continuous_cdf(t - at.at + eps);
    f = std::clamp(f, prev, 1.0);
    out.t[k] = t;
    out.F[k] = f;
    prev = f;
  }
  out.F[n] = 1.0;
  out.exact_mean = exact_mean;
  return out;
}

/// Left fold of convolve over a list of component latencies.
inline LatencyDistribution convolve_all(const std::vector<LatencyDistribution>& parts,
                                        const ConvolutionOptions& opt = {}) {
  if (parts.empty()) return Deterministic{0.0};
  LatencyDistribution acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = convolve(acc, parts[i], opt);
  return acc;
}

}  // namespace e2elat
