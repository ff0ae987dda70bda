#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace e2elat {

/// Bad input: a parameter outside its admissible range or a malformed file.
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A queue with utilization at or above one.
class instability_error : public std::runtime_error {
 public:
  struct node {
    std::string name;
    double rho;
  };

  instability_error(const std::string& what, std::vector<node> nodes)
      : std::runtime_error(what), nodes_(std::move(nodes)) {}

  const std::vector<node>& nodes() const noexcept { return nodes_; }

 private:
  std::vector<node> nodes_;
};

/// Percentile requested from a tabulated distribution that does not carry it.
class unsupported_percentile : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Numerical convolution could not reach the tail mass threshold.
class horizon_error : public std::runtime_error {
 public:
  horizon_error(const std::string& what, double tail_mass)
      : std::runtime_error(what), tail_mass_(tail_mass) {}

  double tail_mass() const noexcept { return tail_mass_; }

 private:
  double tail_mass_;
};

}  // namespace e2elat
