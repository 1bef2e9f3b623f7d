#pragma once

#include <string>
#include <vector>

#include "fracwave/spectral.hpp"
#include "fracwave/symbols.hpp"

namespace fracwave {

/// Samples of K(t, .) on increasing abscissae.
struct KernelProfile {
  double t = 0.0;
  std::vector<double> xs;
  std::vector<double> values;
  std::string method;  // "quadrature" or "fft"
  double truncation = 0.0;
};

struct DecayFit {
  double exponent = 0.0;  // positive: |K| ~ |x|^{-exponent}
  double r_squared = 0.0;
  std::size_t samples = 0;
  bool hit_floor = false;  // some window samples fell below the floor
};

inline constexpr double kernel_floor = 1e-13;
inline constexpr double kernel_max_time = 20.0;

/// exp(-f(xi) t).
cplx kernel_hat(const SymbolSpec& spec, double t, double xi);

/// Cutoff Xi with exp(-(Xi^alpha - Xi^beta) t) < 1e-16.
double truncation(const SymbolSpec& spec, double t);

/// K(t,x) = (1/2pi) int exp(i x xi - f(xi) t) d xi by adaptive quadrature on
/// [-Xi, Xi]. Throws QuadratureError if tol is not reached and NumericalError
/// if the imaginary residue exceeds tol.
double kernel_point(const SymbolSpec& spec, double t, double x, double tol = 1e-9);

/// d/dx K(t,x) by the same quadrature applied to i xi exp(-f t).
double kernel_derivative_point(const SymbolSpec& spec, double t, double x, double tol = 1e-9);

/// Samples of the L-periodized kernel at the grid nodes via one inverse FFT.
std::vector<double> kernel_grid(const SymbolSpec& spec, double t, const Grid& grid);

/// Quadrature profile on the given abscissae; jobs = 0 uses every core.
KernelProfile kernel_profile(const SymbolSpec& spec, double t, const std::vector<double>& xs,
                             double tol = 1e-9, unsigned jobs = 0);
KernelProfile kernel_profile_fft(const SymbolSpec& spec, double t, const Grid& grid);

/// Slope of log|K| against log|x| over samples with x_lo <= |x| <= x_hi and
/// |K| > kernel_floor. Throws InsufficientSamplesError (< 20 usable samples)
/// or BelowFloorError (every sample in the window below the floor).
DecayFit decay_fit(const KernelProfile& profile, double x_lo, double x_hi);

/// ||K(t,.)||_p for p = 1, 2 or infinity (pass p = 0 for infinity).
double kernel_lp_norm(const SymbolSpec& spec, double t, int p);
inline constexpr int lp_inf = 0;

}  // namespace fracwave
