#include "fracwave/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fracwave/errors.hpp"
#include "fracwave/fit.hpp"
#include "fracwave/parallel.hpp"
#include "fracwave/quadrature.hpp"

namespace fracwave {

namespace {

constexpr double log_1e16 = 36.841361487904734;  // -log(1e-16)

void check_time(double t) {
  if (!(t > 0.0)) throw DomainError("kernel time must be positive");
  if (t > kernel_max_time) {
    std::ostringstream msg;
    msg << "kernel time " << t << " exceeds the supported maximum " << kernel_max_time;
    throw DomainError(msg.str());
  }
}

// Inverse transform of weight(xi) exp(-f t); returns the complex value / 2pi.
cplx inverse_transform(const SymbolSpec& spec, double t, double x, double tol,
                       bool with_derivative) {
  check_time(t);
  if (!(tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  const double xi_max = truncation(spec, t);
  auto integrand = [&](double xi) {
    const cplx e = std::exp(cplx(0.0, x * xi) - full_symbol(spec, xi) * t);
    return with_derivative ? cplx(0.0, xi) * e : e;
  };
  // Panels resolve the phase x*xi plus the dispersive phase at the cutoff.
  double rate = std::abs(x);
  if (spec.dispersive())
    rate += t * (spec.kind() == DispersionKind::hilbert ? 2.0 * xi_max : 3.0 * xi_max * xi_max);
  AdaptiveOptions opts;
  opts.tol = std::numbers::pi * tol;  // each half; the result is divided by 2 pi
  opts.max_panel_width = std::min(xi_max / 16.0, std::numbers::pi / (4.0 * std::max(rate, 1e-300)));
  const auto left = integrate_adaptive(integrand, -xi_max, 0.0, opts);
  const auto right = integrate_adaptive(integrand, 0.0, xi_max, opts);
  return (left.value + right.value) / (2.0 * std::numbers::pi);
}

double real_part_checked(cplx value, double tol, double x) {
  if (std::abs(value.imag()) > tol) {
    std::ostringstream msg;
    msg << "kernel imaginary residue " << value.imag() << " exceeds tol " << tol << " at x = " << x;
    throw NumericalError(msg.str());
  }
  return value.real();
}

}  // namespace

cplx kernel_hat(const SymbolSpec& spec, double t, double xi) {
  return std::exp(-full_symbol(spec, xi) * t);
}

double truncation(const SymbolSpec& spec, double t) {
  check_time(t);
  const double a = spec.alpha(), b = spec.beta();
  auto g = [&](double xi) { return (std::pow(xi, a) - std::pow(xi, b)) * t - log_1e16; };
  double lo = 1.0, hi = 2.0;
  while (g(hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? hi : lo) = mid;
  }
  return hi;
}

double kernel_point(const SymbolSpec& spec, double t, double x, double tol) {
  return real_part_checked(inverse_transform(spec, t, x, tol, false), tol, x);
}

double kernel_derivative_point(const SymbolSpec& spec, double t, double x, double tol) {
  return real_part_checked(inverse_transform(spec, t, x, tol, true), tol, x);
}

std::vector<double> kernel_grid(const SymbolSpec& spec, double t, const Grid& grid) {
  check_time(t);
  const auto f = grid_symbol(spec, grid);
  std::vector<cplx> c(grid.n());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = std::exp(-f[k] * t) / grid.length();
  return to_physical(SpectralField(grid, std::move(c)));
}

KernelProfile kernel_profile(const SymbolSpec& spec, double t, const std::vector<double>& xs,
                             double tol, unsigned jobs) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1])) throw DataError("profile abscissae must be strictly increasing");
  KernelProfile out;
  out.t = t;
  out.xs = xs;
  out.values.resize(xs.size());
  out.method = "quadrature";
  out.truncation = truncation(spec, t);
  parallel_for(
      xs.size(), [&](std::size_t i) { out.values[i] = kernel_point(spec, t, xs[i], tol); }, jobs);
  return out;
}

KernelProfile kernel_profile_fft(const SymbolSpec& spec, double t, const Grid& grid) {
  KernelProfile out;
  out.t = t;
  out.xs = grid.nodes();
  out.values = kernel_grid(spec, t, grid);
  out.method = "fft";
  out.truncation = std::abs(grid.xi(grid.n() / 2));
  return out;
}

DecayFit decay_fit(const KernelProfile& profile, double x_lo, double x_hi) {
  if (!(x_hi > x_lo) || !(x_lo > 0.0)) throw DomainError("decay window must satisfy 0 < x_lo < x_hi");
  std::vector<double> xs, ys;
  std::size_t in_window = 0;
  for (std::size_t i = 0; i < profile.xs.size(); ++i) {
    const double ax = std::abs(profile.xs[i]);
    if (ax < x_lo || ax > x_hi) continue;
    ++in_window;
    if (std::abs(profile.values[i]) > kernel_floor) {
      xs.push_back(ax);
      ys.push_back(profile.values[i]);
    }
  }
  if (in_window > 0 && xs.empty())
    throw BelowFloorError("every sample in the decay window is below the floor");
  if (xs.size() < 20) {
    std::ostringstream msg;
    msg << "decay window holds " << xs.size() << " usable samples (need 20)";
    throw InsufficientSamplesError(msg.str());
  }
  const auto fit = log_log_fit(xs, ys);
  return {-fit.slope, fit.r_squared, xs.size(), xs.size() < in_window};
}

double kernel_lp_norm(const SymbolSpec& spec, double t, int p) {
  if (p != 1 && p != 2 && p != lp_inf) throw DomainError("p must be 1, 2 or infinity");
  check_time(t);
  constexpr double tol = 1e-12;
  const double scale = std::pow(t, 1.0 / spec.alpha());
  const double h = 0.05 * scale;
  const double x_inner = 30.0 * scale;
  const std::size_t half = 600;  // inner grid has 2*half+1 nodes

  std::vector<double> inner_x(2 * half + 1);
  for (std::size_t i = 0; i < inner_x.size(); ++i)
    inner_x[i] = -x_inner + h * static_cast<double>(i);
  const auto inner = kernel_profile(spec, t, inner_x, tol);

  if (p == lp_inf) {
    std::size_t best = 0;
    for (std::size_t i = 0; i < inner.values.size(); ++i)
      if (std::abs(inner.values[i]) > std::abs(inner.values[best])) best = i;
    // golden-section refinement of |K| on the bracketing cell
    double a = inner_x[best] - h, b = inner_x[best] + h;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    auto val = [&](double x) { return std::abs(kernel_point(spec, t, x, tol)); };
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = val(c), fd = val(d);
    for (int i = 0; i < 40; ++i) {
      if (fc > fd) {
        b = d, d = c, fd = fc;
        c = b - g * (b - a), fc = val(c);
      } else {
        a = c, c = d, fc = fd;
        d = a + g * (b - a), fd = val(d);
      }
    }
    return std::max({std::abs(inner.values[best]), fc, fd});
  }

  auto power = [p](double v) { return p == 1 ? std::abs(v) : v * v; };
  std::vector<double> integrand(inner.values.size());
  for (std::size_t i = 0; i < integrand.size(); ++i) integrand[i] = power(inner.values[i]);
  double total = simpson(integrand, h);

  // far field on a logarithmic grid, both sides, with a power-law tail
  const double x_outer = std::max(400.0, 20.0 * x_inner);
  const std::size_t outer_n = 401;
  const double du = std::log(x_outer / x_inner) / static_cast<double>(outer_n - 1);
  std::vector<double> outer_x(outer_n);
  for (std::size_t i = 0; i < outer_n; ++i) outer_x[i] = x_inner * std::exp(du * static_cast<double>(i));
  for (double sign : {-1.0, 1.0}) {
    std::vector<double> xs(outer_n);
    for (std::size_t i = 0; i < outer_n; ++i) xs[i] = sign * outer_x[i];
    if (sign < 0.0) std::reverse(xs.begin(), xs.end());
    auto prof = kernel_profile(spec, t, xs, tol);
    if (sign < 0.0) std::reverse(prof.values.begin(), prof.values.end());
    std::vector<double> weighted(outer_n);
    for (std::size_t i = 0; i < outer_n; ++i) weighted[i] = power(prof.values[i]) * outer_x[i];
    total += simpson(weighted, du);

    // tail beyond x_outer from a fit over the last fifth of the log grid
    std::vector<double> fx, fy;
    for (std::size_t i = outer_n - outer_n / 5; i < outer_n; ++i)
      if (std::abs(prof.values[i]) > kernel_floor) {
        fx.push_back(outer_x[i]);
        fy.push_back(prof.values[i]);
      }
    if (fx.size() >= 10) {
      const double q = -log_log_fit(fx, fy).slope * p;
      if (q > 1.0) total += power(prof.values.back()) * x_outer / (q - 1.0);
    }
  }
  return p == 1 ? total : std::sqrt(total);
}

}  // namespace fracwave
