#pragma once

#include <vector>

namespace fracwave {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t samples = 0;
};

/// Ordinary least squares y = slope*x + intercept.
LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

/// Fit log|y| against log|x|; the caller filters the samples.
LinearFit log_log_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace fracwave
