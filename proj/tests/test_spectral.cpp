#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fracwave/errors.hpp"
#include "fracwave/models.hpp"
#include "fracwave/spectral.hpp"
#include "refcheck.hpp"

using namespace fracwave;
using std::numbers::pi;

namespace {

std::vector<double> random_samples(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d(0.0, 1.0);
  std::vector<double> u(n);
  for (auto& v : u) v = d(rng);
  return u;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

bool hermitian(const SpectralField& f) {
  const std::size_t n = f.size();
  if (f[0].imag() != 0.0 || f[n / 2].imag() != 0.0) return false;
  for (std::size_t k = 1; k < n / 2; ++k)
    if (f[k] != std::conj(f[n - k])) return false;
  return true;
}

}  // namespace

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(Grid(8, 1.0), DomainError);
  CHECK_THROWS_AS(Grid(48, 1.0), DomainError);
  CHECK_THROWS_AS(Grid(64, 0.0), DomainError);
  const Grid g(64, 2.0 * pi);
  CHECK(g.x(0) == doctest::Approx(-pi));
  CHECK(g.xi(1) == doctest::Approx(1.0));
  CHECK(g.mode(63) == -1);
  CHECK(g.mode(32) == -32);
  CHECK(g.dealiased(21));
  CHECK_FALSE(g.dealiased(22));
}

TEST_CASE("constant and cosine fields") {
  const Grid g(64, 10.0);
  const auto one = to_spectral(g, std::vector<double>(64, 1.0));
  CHECK(one[0].real() == doctest::Approx(1.0));
  for (std::size_t k = 1; k < 64; ++k) CHECK(std::abs(one[k]) < 1e-15);

  std::vector<double> c(64);
  for (std::size_t j = 0; j < 64; ++j) c[j] = std::cos(2.0 * pi * g.x(j) / g.length());
  const auto f = to_spectral(g, c);
  CHECK(std::abs(f[1] - cplx(0.5, 0.0)) < 1e-14);
  CHECK(std::abs(f[63] - cplx(0.5, 0.0)) < 1e-14);
  for (std::size_t k = 2; k < 63; ++k) CHECK(std::abs(f[k]) < 1e-14);
}

TEST_CASE("round trip and dense DFT agreement") {
  for (std::size_t n : {16u, 128u, 1024u, 4096u}) {
    const Grid g(n, 37.0);
    const auto u = random_samples(n, seed_from_env() + n);
    const auto f = to_spectral(g, u);
    CHECK(max_diff(to_physical(f), u) < 1e-12);
    CHECK(hermitian(f));
    const auto dense = refcheck::dense_dft(g, u);
    double err = 0.0;
    for (std::size_t k = 0; k < n; ++k) err = std::max(err, std::abs(dense[k] - f[k]));
    CHECK(err < 1e-10);
    CHECK(max_diff(refcheck::dense_idft(g, f.coeffs()), u) < 1e-10);
  }
  CHECK_THROWS_AS(to_spectral(Grid(16, 1.0), std::vector<double>(15, 0.0)), DataError);
}

TEST_CASE("multipliers") {
  const Grid g(128, 20.0);
  std::vector<double> s(128), c(128);
  const double k = 2.0 * pi / g.length();
  for (std::size_t j = 0; j < 128; ++j) {
    s[j] = std::sin(k * g.x(j));
    c[j] = k * std::cos(k * g.x(j));
  }
  const auto f = to_spectral(g, s);
  CHECK(max_diff(to_physical(multiplier(f, [](double) { return cplx(1.0); })), s) < 1e-14);
  CHECK(max_diff(to_physical(multiplier(f, [](double xi) { return cplx(0.0, xi); })), c) < 1e-10);
}

TEST_CASE("fractional derivative of a Gaussian against dense quadrature") {
  const Grid g(1024, 80.0);
  const double w = 1.5, alpha = 2.7;
  const auto u = gaussian_datum(g, 1.0, w);
  const auto frac = to_physical(multiplier(u, [&](double xi) { return cplx(std::pow(std::abs(xi), alpha)); }));
  // hat of exp(-x^2/w^2) is sqrt(pi) w exp(-xi^2 w^2 / 4)
  auto oracle = [&](double x) {
    const int nodes = 200001;
    const double xmax = 40.0 / w, h = 2.0 * xmax / (nodes - 1);
    double sum = 0.0;
    for (int i = 0; i < nodes; ++i) {
      const double xi = -xmax + h * i;
      const double v = std::pow(std::abs(xi), alpha) * std::sqrt(pi) * w *
                       std::exp(-xi * xi * w * w / 4.0) * std::cos(x * xi);
      sum += (i == 0 || i == nodes - 1) ? 0.5 * v : v;
    }
    return sum * h / (2.0 * pi);
  };
  for (std::size_t j = 384; j <= 640; j += 16) CHECK(std::abs(frac[j] - oracle(g.x(j))) < 1e-6);
}

TEST_CASE("nonlinearity closed forms") {
  const Grid g(128, 30.0);
  const auto c = to_spectral(g, std::vector<double>(128, 0.7));
  const auto zero = nonlinearity(c, {1.3, -0.4, 2.0});
  for (std::size_t k = 0; k < 128; ++k) CHECK(std::abs(zero[k]) < 1e-15);

  const double k = 2.0 * pi / g.length();
  std::vector<double> s(128), expect(128);
  for (std::size_t j = 0; j < 128; ++j) {
    s[j] = std::sin(k * g.x(j));
    expect[j] = k * std::sin(2.0 * k * g.x(j));
  }
  const auto n = nonlinearity(to_spectral(g, s), {1.0, 0.0, 0.0});
  CHECK(max_diff(to_physical(n), expect) < 1e-10);
  CHECK(hermitian(n));
}

TEST_CASE("dealiased nonlinearity matches coefficient convolution") {
  for (std::size_t n : {64u, 256u, 512u}) {
    const Grid g(n, 25.0);
    const auto u = random_band_limited(g, n / 3 - 1, 0.3, seed_from_env() + 7 * n);
    const NonlinearitySpec nl{0.8, -1.1, 1.7};
    const auto fast = nonlinearity(u, nl);
    const auto slow = refcheck::conv_nonlinearity(g, u.coeffs(), nl);
    double err = 0.0, size = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      err = std::max(err, std::abs(fast[k] - slow[k]));
      size = std::max(size, std::abs(slow[k]));
    }
    CHECK(err <= 1e-9 * std::max(1.0, size));
    CHECK(hermitian(fast));
  }
}

TEST_CASE("Sobolev norms and Plancherel") {
  const Grid g(512, 40.0);
  const auto u = random_samples(512, seed_from_env() + 3);
  const auto f = to_spectral(g, u);
  double phys = 0.0;
  for (double v : u) phys += v * v;
  phys = std::sqrt(phys * g.dx());
  CHECK(sobolev_norm(f, 0.0) == doctest::Approx(phys).epsilon(1e-10));
  CHECK(std::sqrt(inner_product(f, f)) == doctest::Approx(phys).epsilon(1e-10));

  // Gaussian exp(-x^2): ||u||_{L2}^2 = sqrt(pi/2); ||u_x||^2 = sqrt(pi/2)
  const auto gauss = gaussian_datum(Grid(512, 40.0), 1.0, 1.0);
  const double l2 = std::sqrt(std::sqrt(pi / 2.0));
  CHECK(sobolev_norm(gauss, 0.0) == doctest::Approx(l2).epsilon(1e-12));
  CHECK(sobolev_norm(gauss, 1.0) == doctest::Approx(std::sqrt(2.0) * l2).epsilon(1e-12));
}

TEST_CASE("grid symbol keeps realness") {
  const Grid g(64, 10.0);
  const SymbolSpec spec(DispersionKind::hilbert, 3.0, 1.0);
  const auto f = grid_symbol(spec, g);
  CHECK(f[32].imag() == 0.0);
  CHECK(f[3] == full_symbol(spec, g.xi(3)));
}
