#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fracwave/symbols.hpp"

namespace fracwave {

/// Periodic grid on [-L/2, L/2): x_j = -L/2 + j L/n, xi_k = 2 pi k / L.
/// Spectral arrays use FFT ordering: index k for 0 <= k < n/2, k - n above.
class Grid {
public:
  Grid(std::size_t n, double length);

  std::size_t n() const noexcept { return n_; }
  double length() const noexcept { return length_; }
  double dx() const noexcept { return length_ / static_cast<double>(n_); }
  double x(std::size_t j) const noexcept { return -0.5 * length_ + static_cast<double>(j) * dx(); }
  /// Signed wavenumber index of storage slot k; the Nyquist slot maps to -n/2.
  long mode(std::size_t k) const noexcept {
    return k < n_ / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n_);
  }
  double xi(std::size_t k) const noexcept;
  /// Kept by the 2/3 rule: 3|mode| < n.
  bool dealiased(std::size_t k) const noexcept { return 3 * std::labs(mode(k)) < static_cast<long>(n_); }

  std::vector<double> nodes() const;
  std::vector<double> wavenumbers() const;

  friend bool operator==(const Grid&, const Grid&) = default;

private:
  std::size_t n_;
  double length_;
};

/// Real periodic field stored as c_k = (1/n) sum_j u_j exp(-i xi_k x_j).
/// The continuum transform is approximately L c_k. Hermitian symmetry and a
/// real Nyquist coefficient are enforced on construction.
class SpectralField {
public:
  SpectralField(Grid grid, std::vector<cplx> coeffs);
  static SpectralField zeros(const Grid& grid);

  const Grid& grid() const noexcept { return grid_; }
  const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }
  cplx operator[](std::size_t k) const { return coeffs_[k]; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double scale);

private:
  Grid grid_;
  std::vector<cplx> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double scale, SpectralField a);

/// Make coeffs Hermitian in place (average of c_k and conj c_{-k}; real c_0
/// and Nyquist).
void enforce_hermitian(std::vector<cplx>& coeffs);

std::vector<double> to_physical(const SpectralField& field);
SpectralField to_spectral(const Grid& grid, std::span<const double> samples);

/// Diagonal Fourier operator: c_k -> symbol(xi_k) c_k.
SpectralField multiplier(const SpectralField& field, const std::function<cplx(double)>& symbol);

/// Zero every mode outside the 2/3 ball.
SpectralField dealias(const SpectralField& field);

struct NonlinearitySpec {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma3 = 0.0;

  static NonlinearitySpec from(const SymbolSpec& spec) {
    return {spec.gamma1(), spec.gamma2(), spec.gamma3()};
  }
  bool is_zero() const noexcept { return gamma1 == 0.0 && gamma2 == 0.0 && gamma3 == 0.0; }
};

/// g1 (u^2)_x + g2 (u^2)_xx + g3 (u_x)^2 with physical-space products; the input
/// and each product are truncated by the 2/3 rule.
SpectralField nonlinearity(const SpectralField& field, const NonlinearitySpec& nl);

/// ( L sum_k (1 + xi_k^2)^s |c_k|^2 )^{1/2}, a Riemann sum for the H^s norm.
double sobolev_norm(const SpectralField& field, double s);

/// L sum_k Re(conj(a_k) b_k) = integral of a b.
double inner_product(const SpectralField& a, const SpectralField& b);

double sup_norm(const SpectralField& field);

/// f(xi_k) on the grid in storage order. The Nyquist entry keeps only its real
/// part so that multiplication preserves realness.
std::vector<cplx> grid_symbol(const SymbolSpec& spec, const Grid& grid);

}  // namespace fracwave
