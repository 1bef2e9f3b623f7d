#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "fracwave/symbols.hpp"

namespace fracwave {

struct QuadratureResult {
  cplx value;
  double error = 0.0;      // estimated absolute error
  std::size_t panels = 0;  // panels in the final partition
};

struct AdaptiveOptions {
  double tol = 1e-9;             // absolute
  double max_panel_width = 0.0;  // 0 = no cap on the initial partition
  std::size_t max_panels = 400000;
};

/// Adaptive Gauss-Kronrod (G7/K15) on [a, b]. The interval is first cut into
/// panels no wider than max_panel_width, then the panel with the largest error
/// estimate is bisected until the total estimate drops below tol.
/// Throws QuadratureError with the achieved estimate if max_panels is hit.
QuadratureResult integrate_adaptive(const std::function<cplx(double)>& f, double a, double b,
                                    const AdaptiveOptions& opts = {});

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(std::size_t points);

/// Composite Simpson on a uniform grid (odd sample count; falls back to a
/// trapezoid on the last interval otherwise).
double simpson(const std::vector<double>& values, double h);

}  // namespace fracwave
