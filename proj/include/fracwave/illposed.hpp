#pragma once

#include <array>
#include <utility>
#include <vector>

#include "fracwave/symbols.hpp"

namespace fracwave {

/// Indicator datum on the frequency side: hat = amplitude on [lo, hi].
struct BandDatum {
  int n_scale = 0;
  double r = 1.0;
  double s = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double amplitude = 0.0;  // r^{-1/2} N^{-s}

  double hat(double xi) const noexcept { return (xi >= lo && xi <= hi) ? amplitude : 0.0; }
  /// ( int (1 + xi^2)^{s'} |hat|^2 d xi )^{1/2}.
  double sobolev_norm(double s_prime) const;
};

using BandPair = std::pair<BandDatum, BandDatum>;

/// v0 on [-N, -N + r], w0 on [N + r, N + 2r].
BandPair make_band_pair(int n_scale, double r, double s);

/// Contributions of the three nonlinear terms to the second derivative of the
/// flow at frequency xi; total() is their sum.
struct FlowDerivativeTerms {
  std::array<cplx, 3> term{};
  cplx total() const noexcept { return term[0] + term[1] + term[2]; }
};

/// 2 g(t, xi) with g the interaction integral over the band overlap in eta.
FlowDerivativeTerms second_flow_derivative_terms(const SymbolSpec& spec, double t,
                                                 const BandPair& pair, double xi, int quad_points);
cplx second_flow_derivative_hat(const SymbolSpec& spec, double t, const BandPair& pair, double xi,
                                int quad_points);

struct IllposedOptions {
  double r = 1.0;
  int quad_points = 64;
  int xi_points = 4096;
  unsigned jobs = 0;  // 0 = all cores
};

struct IllposednessReport {
  SymbolSpec spec;
  double s = 0.0;
  double t = 0.0;
  std::vector<int> ns;
  std::vector<double> norms;
  std::array<std::vector<double>, 3> term_norms;
  std::vector<double> data_norms;  // H^s norm of v0 for each N
  double fitted_exponent = 0.0;
  double predicted_exponent = 0.0;
  double r_squared = 0.0;
};

/// Growth exponent predicted for (spec, s); throws PreconditionError when the
/// exponent is not positive.
double predicted_growth_exponent(const SymbolSpec& spec, double s);

IllposednessReport illposedness_scan(const SymbolSpec& spec, double s, double t,
                                     const std::vector<int>& ns, const IllposedOptions& opts = {});

}  // namespace fracwave
