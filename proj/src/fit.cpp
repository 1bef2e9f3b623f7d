#include "fracwave/fit.hpp"

#include <cmath>

#include "fracwave/errors.hpp"

namespace fracwave {

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DataError("fit: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw InsufficientSamplesError("fit needs at least two samples");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw InsufficientSamplesError("fit: abscissae are all equal");
  LinearFit out;
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  out.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  out.samples = n;
  return out;
}

LinearFit log_log_fit(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) lx[i] = std::log(std::abs(x[i]));
  for (std::size_t i = 0; i < y.size(); ++i) ly[i] = std::log(std::abs(y[i]));
  return least_squares(lx, ly);
}

}  // namespace fracwave
