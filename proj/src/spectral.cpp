#include "fracwave/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "fracwave/errors.hpp"

namespace fracwave {

namespace {

// FFTW planning is not thread safe; execution on new arrays is.
struct PlanPair {
  fftw_plan forward;
  fftw_plan backward;
};

const PlanPair& plans_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, PlanPair> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<cplx> a(n), b(n);
  auto* in = reinterpret_cast<fftw_complex*>(a.data());
  auto* out = reinterpret_cast<fftw_complex*>(b.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  const int size = static_cast<int>(n);
  PlanPair p{fftw_plan_dft_1d(size, in, out, FFTW_FORWARD, flags),
             fftw_plan_dft_1d(size, in, out, FFTW_BACKWARD, flags)};
  return cache.emplace(n, p).first->second;
}

void execute(fftw_plan plan, std::vector<cplx>& in, std::vector<cplx>& out) {
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

void check_same_grid(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid())) throw DataError("fields live on different grids");
}

}  // namespace

Grid::Grid(std::size_t n, double length) : n_(n), length_(length) {
  if (n < 16 || (n & (n - 1)) != 0) {
    std::ostringstream msg;
    msg << "grid size must be a power of two >= 16 (got " << n << ")";
    throw DomainError(msg.str());
  }
  if (!(length > 0.0) || !std::isfinite(length)) throw DomainError("grid length must be positive");
}

double Grid::xi(std::size_t k) const noexcept {
  return 2.0 * std::numbers::pi * static_cast<double>(mode(k)) / length_;
}

std::vector<double> Grid::nodes() const {
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = x(j);
  return out;
}

std::vector<double> Grid::wavenumbers() const {
  std::vector<double> out(n_);
  for (std::size_t k = 0; k < n_; ++k) out[k] = xi(k);
  return out;
}

void enforce_hermitian(std::vector<cplx>& c) {
  const std::size_t n = c.size();
  c[0] = c[0].real();
  c[n / 2] = c[n / 2].real();
  for (std::size_t k = 1; k < n / 2; ++k) {
    const cplx avg = 0.5 * (c[k] + std::conj(c[n - k]));
    c[k] = avg;
    c[n - k] = std::conj(avg);
  }
}

SpectralField::SpectralField(Grid grid, std::vector<cplx> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.n()) {
    std::ostringstream msg;
    msg << "coefficient count " << coeffs_.size() << " does not match grid size " << grid_.n();
    throw DataError(msg.str());
  }
  enforce_hermitian(coeffs_);
}

SpectralField SpectralField::zeros(const Grid& grid) {
  return SpectralField(grid, std::vector<cplx>(grid.n()));
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  check_same_grid(*this, other);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  check_same_grid(*this, other);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

SpectralField& SpectralField::operator*=(double scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double scale, SpectralField a) { return a *= scale; }

std::vector<double> to_physical(const SpectralField& field) {
  const std::size_t n = field.size();
  std::vector<cplx> in(n), out(n);
  for (std::size_t k = 0; k < n; ++k) in[k] = (k % 2 == 0) ? field[k] : -field[k];
  execute(plans_for(n).backward, in, out);
  std::vector<double> u(n);
  for (std::size_t j = 0; j < n; ++j) u[j] = out[j].real();
  return u;
}

SpectralField to_spectral(const Grid& grid, std::span<const double> samples) {
  const std::size_t n = grid.n();
  if (samples.size() != n) {
    std::ostringstream msg;
    msg << "sample count " << samples.size() << " does not match grid size " << n;
    throw DataError(msg.str());
  }
  std::vector<cplx> in(samples.begin(), samples.end()), out(n);
  execute(plans_for(n).forward, in, out);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) out[k] *= (k % 2 == 0) ? scale : -scale;
  return SpectralField(grid, std::move(out));
}

SpectralField multiplier(const SpectralField& field, const std::function<cplx(double)>& symbol) {
  const Grid& g = field.grid();
  std::vector<cplx> c(field.coeffs());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] *= symbol(g.xi(k));
  return SpectralField(g, std::move(c));
}

SpectralField dealias(const SpectralField& field) {
  const Grid& g = field.grid();
  std::vector<cplx> c(field.coeffs());
  for (std::size_t k = 0; k < c.size(); ++k)
    if (!g.dealiased(k)) c[k] = 0.0;
  return SpectralField(g, std::move(c));
}

SpectralField nonlinearity(const SpectralField& field, const NonlinearitySpec& nl) {
  const Grid& g = field.grid();
  const std::size_t n = g.n();
  if (nl.is_zero()) return SpectralField::zeros(g);

  std::vector<cplx> u_hat(n), ux_hat(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!g.dealiased(k)) continue;
    u_hat[k] = field[k];
    ux_hat[k] = cplx(0.0, g.xi(k)) * field[k];
  }
  const auto u = to_physical(SpectralField(g, std::move(u_hat)));
  const auto ux = to_physical(SpectralField(g, std::move(ux_hat)));

  std::vector<double> uu(n), uxux(n);
  for (std::size_t j = 0; j < n; ++j) {
    uu[j] = u[j] * u[j];
    uxux[j] = ux[j] * ux[j];
  }
  const auto p = to_spectral(g, uu);
  const auto q = to_spectral(g, uxux);

  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!g.dealiased(k)) continue;
    const double xi = g.xi(k);
    out[k] = (cplx(0.0, nl.gamma1 * xi) - nl.gamma2 * xi * xi) * p[k] + nl.gamma3 * q[k];
  }
  return SpectralField(g, std::move(out));
}

double sobolev_norm(const SpectralField& field, double s) {
  const Grid& g = field.grid();
  double sum = 0.0;
  for (std::size_t k = 0; k < field.size(); ++k) {
    const double xi = g.xi(k);
    const double w = s == 0.0 ? 1.0 : std::pow(1.0 + xi * xi, s);
    sum += w * std::norm(field[k]);
  }
  return std::sqrt(g.length() * sum);
}

double inner_product(const SpectralField& a, const SpectralField& b) {
  check_same_grid(a, b);
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += (std::conj(a[k]) * b[k]).real();
  return a.grid().length() * sum;
}

double sup_norm(const SpectralField& field) {
  double m = 0.0;
  for (double v : to_physical(field)) m = std::max(m, std::abs(v));
  return m;
}

std::vector<cplx> grid_symbol(const SymbolSpec& spec, const Grid& grid) {
  std::vector<cplx> f(grid.n());
  for (std::size_t k = 0; k < grid.n(); ++k) f[k] = full_symbol(spec, grid.xi(k));
  f[grid.n() / 2] = f[grid.n() / 2].real();
  return f;
}

}  // namespace fracwave
