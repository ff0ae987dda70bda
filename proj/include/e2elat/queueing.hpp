#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include "e2elat/errors.hpp"

namespace e2elat {

namespace detail {

inline void require_stable(double lambda, double mu, const char* who) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw validation_error(std::string(who) + ": service rate must be positive and finite");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw validation_error(std::string(who) + ": arrival rate must be nonnegative and finite");
  }
  if (lambda >= mu) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: unstable queue, rho = %.6g >= 1", who, lambda / mu);
    throw instability_error(buf, {{who, lambda / mu}});
  }
}

}  // namespace detail

/// Mean sojourn time of an M/M/1 node, 1/(mu - lambda).
inline double mm1_sojourn_mean(double lambda, double mu) {
  detail::require_stable(lambda, mu, "mm1");
  return 1.0 / (mu - lambda);
}

/// Mean transit time through an M/D/1 UPF: processing and transmission 2/mu
/// plus the Pollaczek-Khinchine queueing term.
inline double md1_transit_mean(double lambda, double mu) {
  detail::require_stable(lambda, mu, "md1");
  const double rho = lambda / mu;
  return 2.0 / mu + lambda / (2.0 * mu * mu * (1.0 - rho));
}

/// Decay rate gamma and prefactor C of the M/D/1 waiting-time tail,
/// P(W > t) ~ C exp(-gamma t).
struct md1_tail {
  double gamma;
  double c;
};

inline md1_tail md1_tail_asymptote(double lambda, double mu) {
  detail::require_stable(lambda, mu, "md1");
  const double rho = lambda / mu;
  // y = gamma * D solves rho (e^y - 1) = y with y > 0.
  auto f = [rho](double y) { return rho * std::expm1(y) - y; };
  double lo = 0.0;
  double hi = 1.0;
  while (f(hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  // f < 0 just right of zero, so lo = 0 brackets from below.
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? hi : lo) = mid;
  }
  const double y = 0.5 * (lo + hi);
  return {y * mu, (1.0 - rho) / (y + rho - 1.0)};
}

/// P(W <= t) for the M/D/1 waiting time (service D = 1/mu).
///
/// Uses the finite alternating sum for t < 12 D, evaluated in long double
/// with log-domain magnitudes. Past that the sum loses digits to
/// cancellation (about 1e-9 by lambda*t = 20) while the dominant-pole
/// asymptote is good to about 1e-14 absolute.
inline double md1_wait_cdf(double lambda, double mu, double t) {
  detail::require_stable(lambda, mu, "md1");
  if (t < 0.0) return 0.0;
  if (lambda == 0.0) return 1.0;
  const double d = 1.0 / mu;
  const double rho = lambda * d;
  const double kd = std::floor(t / d);
  if (kd < 12.0) {
    const long k = static_cast<long>(kd);
    long double sum = 0.0L;
    for (long j = 0; j <= k; ++j) {
      const long double x = static_cast<long double>(lambda) *
                            (static_cast<long double>(t) - static_cast<long double>(j) * d);
      if (x <= 0.0L) {
        if (j == 0) sum += 1.0L;
        continue;
      }
      const long double log_mag = static_cast<long double>(j) * std::log(x) -
                                  std::lgamma(static_cast<long double>(j) + 1.0L) + x;
      const long double term = std::exp(log_mag);
      sum += (j % 2 == 0) ? term : -term;
    }
    const double v = static_cast<double>((1.0L - rho) * sum);
    return std::fmin(1.0, std::fmax(1.0 - rho, v));
  }
  const md1_tail tail = md1_tail_asymptote(lambda, mu);
  const double v = 1.0 - tail.c * std::exp(-tail.gamma * t);
  return std::fmin(1.0, std::fmax(1.0 - rho, v));
}

}  // namespace e2elat
