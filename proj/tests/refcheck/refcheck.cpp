#include "refcheck.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fracwave::refcheck {

namespace {

void check_cap(std::size_t n) {
  if (n > dense_cap) throw std::length_error("dense oracle is capped at n = 4096");
}

// exp(2 pi i m / n) for m = 0..n-1
std::vector<cplx> roots(std::size_t n) {
  std::vector<cplx> w(n);
  for (std::size_t m = 0; m < n; ++m)
    w[m] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n));
  return w;
}

long signed_mode(std::size_t k, std::size_t n) {
  return k < n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

std::size_t slot(long mode, std::size_t n) {
  return static_cast<std::size_t>((mode % static_cast<long>(n) + static_cast<long>(n)) %
                                  static_cast<long>(n));
}

bool kept(long mode, std::size_t n) { return 3 * std::labs(mode) < static_cast<long>(n); }

bool even_integer(double p) { return p == std::round(p) && std::fmod(p, 2.0) == 0.0; }

}  // namespace

std::vector<cplx> dense_dft(const Grid& grid, const std::vector<double>& u) {
  const std::size_t n = grid.n();
  check_cap(n);
  if (u.size() != n) throw std::invalid_argument("dense_dft: length mismatch");
  const auto w = roots(n);
  std::vector<cplx> c(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx sum{};
    for (std::size_t j = 0; j < n; ++j) sum += u[j] * std::conj(w[(j * k) % n]);
    // x_j = -L/2 + j dx contributes exp(i pi k) = (-1)^k
    c[k] = (k % 2 == 0 ? 1.0 : -1.0) * sum / static_cast<double>(n);
  }
  return c;
}

std::vector<double> dense_idft(const Grid& grid, const std::vector<cplx>& c) {
  const std::size_t n = grid.n();
  check_cap(n);
  const auto w = roots(n);
  std::vector<double> u(n);
  for (std::size_t j = 0; j < n; ++j) {
    cplx sum{};
    for (std::size_t k = 0; k < n; ++k) sum += (k % 2 == 0 ? 1.0 : -1.0) * c[k] * w[(j * k) % n];
    u[j] = sum.real();
  }
  return u;
}

double dense_kernel(const SymbolSpec& spec, double t, double x, std::size_t nodes) {
  if (t < 0.05) throw std::invalid_argument("dense_kernel needs t >= 0.05");
  // own cutoff: (Xi^a - Xi^b) t = 37 by bisection
  double lo = 1.0, hi = 64.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    ((std::pow(mid, spec.alpha()) - std::pow(mid, spec.beta())) * t > 37.0 ? hi : lo) = mid;
  }
  const double xi_max = hi;
  if (nodes % 2 == 0) ++nodes;  // keep xi = 0 on the grid
  const double h = 2.0 * xi_max / static_cast<double>(nodes - 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes; ++i) {
    const double xi = -xi_max + h * static_cast<double>(i);
    const double a = std::abs(xi);
    const double m = spec.kind() == DispersionKind::hilbert ? a : -xi * xi;
    const double phase = x * xi - (spec.dispersive() ? m * xi * t : 0.0);
    const double mod = std::exp(-(std::pow(a, spec.alpha()) - std::pow(a, spec.beta())) * t);
    const double w = (i == 0 || i + 1 == nodes) ? 0.5 : 1.0;
    sum += w * mod * std::cos(phase);
  }
  return sum * h / (2.0 * std::numbers::pi);
}

std::vector<cplx> conv_nonlinearity(const Grid& grid, const std::vector<cplx>& coeffs,
                                    const NonlinearitySpec& nl) {
  const std::size_t n = grid.n();
  check_cap(n);
  const double dk = 2.0 * std::numbers::pi / grid.length();
  std::vector<long> modes;
  for (std::size_t k = 0; k < n; ++k)
    if (kept(signed_mode(k, n), n)) modes.push_back(signed_mode(k, n));

  std::vector<cplx> out(n);
  for (long k : modes) {
    cplx uu{}, du{};
    for (long a : modes) {
      const long b = k - a;
      if (!kept(b, n)) continue;
      const cplx ca = coeffs[slot(a, n)], cb = coeffs[slot(b, n)];
      uu += ca * cb;
      du += cplx(0.0, dk * a) * ca * cplx(0.0, dk * b) * cb;
    }
    const double xi = dk * static_cast<double>(k);
    out[slot(k, n)] = (cplx(0.0, nl.gamma1 * xi) - nl.gamma2 * xi * xi) * uu + nl.gamma3 * du;
  }
  return out;
}

std::vector<double> fd_solve(const Grid& grid, const std::vector<double>& u0,
                             const SymbolSpec& spec, double dt, double t_end) {
  const std::size_t n = grid.n();
  if (n > 1024) throw std::length_error("fd_solve is capped at n = 1024");
  if (u0.size() != n) throw std::invalid_argument("fd_solve: length mismatch");
  const double h = grid.dx();

  // Which pieces are local stencils and which go into the dense circulant.
  const bool local_alpha = even_integer(spec.alpha()) && spec.alpha() <= 4.0;
  const bool local_beta = even_integer(spec.beta()) && spec.beta() <= 4.0;
  const bool local_dispersion = spec.kind() == DispersionKind::laplacian;
  auto nonlocal_symbol = [&](double xi) {
    const double a = std::abs(xi);
    double s = 0.0;
    if (!local_alpha) s += std::pow(a, spec.alpha());
    if (!local_beta) s -= std::pow(a, spec.beta());
    cplx out = s;
    if (!local_dispersion && spec.dispersive()) out += cplx(0.0, a * xi);
    return out;
  };
  // circulant row: (M u)_j = sum_l m[(j - l) mod n] u_l
  std::vector<double> m(n, 0.0);
  bool any_nonlocal = !local_alpha || !local_beta || (!local_dispersion && spec.dispersive());
  if (any_nonlocal) {
    const auto w = roots(n);
    for (std::size_t d = 0; d < n; ++d) {
      cplx sum{};
      for (std::size_t k = 0; k < n; ++k) {
        cplx s = nonlocal_symbol(grid.xi(k));
        if (k == n / 2) s = s.real();
        sum += s * w[(d * k) % n];
      }
      m[d] = sum.real() / static_cast<double>(n);
    }
  }

  auto at = [n](const std::vector<double>& v, long j) {
    return v[static_cast<std::size_t>((j % static_cast<long>(n) + static_cast<long>(n)) %
                                      static_cast<long>(n))];
  };
  auto d1 = [&](const std::vector<double>& v, long j) {
    return (-at(v, j + 2) + 8.0 * at(v, j + 1) - 8.0 * at(v, j - 1) + at(v, j - 2)) / (12.0 * h);
  };
  auto d2 = [&](const std::vector<double>& v, long j) {
    return (-at(v, j + 2) + 16.0 * at(v, j + 1) - 30.0 * at(v, j) + 16.0 * at(v, j - 1) -
            at(v, j - 2)) / (12.0 * h * h);
  };
  auto d3 = [&](const std::vector<double>& v, long j) {
    return (-at(v, j + 3) + 8.0 * at(v, j + 2) - 13.0 * at(v, j + 1) + 13.0 * at(v, j - 1) -
            8.0 * at(v, j - 2) + at(v, j - 3)) / (8.0 * h * h * h);
  };
  auto d4 = [&](const std::vector<double>& v, long j) {
    return (-at(v, j + 3) + 12.0 * at(v, j + 2) - 39.0 * at(v, j + 1) + 56.0 * at(v, j) -
            39.0 * at(v, j - 1) + 12.0 * at(v, j - 2) - at(v, j - 3)) / (6.0 * h * h * h * h);
  };
  // D^p for even p: |xi|^2 <-> -d2, |xi|^4 <-> d4
  auto even_power = [&](double p, const std::vector<double>& v, long j) {
    if (p == 0.0) return at(v, j);
    return p == 2.0 ? -d2(v, j) : d4(v, j);
  };

  auto rhs = [&](const std::vector<double>& u) {
    std::vector<double> uu(n), out(n);
    for (std::size_t j = 0; j < n; ++j) uu[j] = u[j] * u[j];
    for (std::size_t jj = 0; jj < n; ++jj) {
      const long j = static_cast<long>(jj);
      double v = 0.0;
      if (local_dispersion && spec.dispersive()) v -= d3(u, j);  // D(u_x) = u_xxx
      if (local_alpha) v -= even_power(spec.alpha(), u, j);
      if (local_beta) v += even_power(spec.beta(), u, j);
      if (any_nonlocal) {
        double acc = 0.0;
        for (std::size_t l = 0; l < n; ++l) acc += m[(jj + n - l) % n] * u[l];
        v -= acc;
      }
      const double ux = d1(u, j);
      v -= spec.gamma1() * d1(uu, j) + spec.gamma2() * d2(uu, j) + spec.gamma3() * ux * ux;
      out[jj] = v;
    }
    return out;
  };

  const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
  const double step = steps > 0 ? t_end / static_cast<double>(steps) : 0.0;
  std::vector<double> u = u0, tmp(n);
  for (std::size_t s = 0; s < steps; ++s) {
    const auto k1 = rhs(u);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = u[j] + 0.5 * step * k1[j];
    const auto k2 = rhs(tmp);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = u[j] + 0.5 * step * k2[j];
    const auto k3 = rhs(tmp);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = u[j] + step * k3[j];
    const auto k4 = rhs(tmp);
    for (std::size_t j = 0; j < n; ++j) {
      u[j] += step / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
      if (!std::isfinite(u[j])) throw std::runtime_error("fd_solve diverged");
    }
  }
  return u;
}

}  // namespace fracwave::refcheck
