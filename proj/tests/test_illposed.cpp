#include <doctest.h>

#include <cmath>

#include "fracwave/errors.hpp"
#include "fracwave/illposed.hpp"

using namespace fracwave;

namespace {
const SymbolSpec strong(DispersionKind::laplacian, 4.0, 2.0, 0.0, 1.0, 1.0);
const SymbolSpec transport(DispersionKind::hilbert, 3.0, 1.0, 1.0, 0.0, 0.0);
const std::vector<int> scan_ns{64, 128, 256, 512, 1024};
}  // namespace

TEST_CASE("band pairs") {
  for (int n : scan_ns) {
    const auto [v, w] = make_band_pair(n, 1.0, -1.5);
    CHECK(v.lo == -n);
    CHECK(v.hi == -n + 1.0);
    CHECK(w.lo == n + 1.0);
    CHECK(w.hi == n + 2.0);
    CHECK(v.hi < w.lo);
    CHECK(v.amplitude == doctest::Approx(std::pow(n, 1.5)));
    CHECK(v.sobolev_norm(-1.5) >= 0.5);
    CHECK(v.sobolev_norm(-1.5) <= 2.0);
    CHECK(w.sobolev_norm(-1.5) >= 0.5);
    CHECK(w.sobolev_norm(-1.5) <= 2.0);
  }
  // weight scaling N^{s'-s}
  const double ratio = make_band_pair(1024, 1.0, -1.5).first.sobolev_norm(-0.5) /
                       make_band_pair(512, 1.0, -1.5).first.sobolev_norm(-0.5);
  CHECK(ratio == doctest::Approx(2.0).epsilon(0.01));
  CHECK(make_band_pair(100, 0.5, 0.0).first.amplitude == doctest::Approx(std::sqrt(2.0)));

  CHECK_THROWS_AS(make_band_pair(63, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(make_band_pair(64, 0.4, 0.0), DomainError);
  CHECK_THROWS_AS(make_band_pair(64, 2.5, 0.0), DomainError);
}

TEST_CASE("second derivative of the flow") {
  const auto pair = make_band_pair(128, 1.0, -1.5);
  for (double xi : {-1.0, 0.0, 0.5, 0.999, 3.001, 3.5, 10.0})
    CHECK(std::abs(second_flow_derivative_hat(strong, 0.1, pair, xi, 64)) == 0.0);
  for (double xi : {1.2, 2.0, 2.7}) {
    const cplx a = second_flow_derivative_hat(strong, 0.1, pair, xi, 64);
    const cplx b = second_flow_derivative_hat(strong, 0.1, pair, xi, 128);
    CHECK(std::abs(a) > 0.0);
    CHECK(std::abs(a - b) <= 1e-8 * std::abs(b));
    const auto terms = second_flow_derivative_terms(strong, 0.1, pair, xi, 64);
    CHECK(std::abs(terms.total() - a) <= 1e-14 * std::abs(a));
    CHECK(std::abs(terms.term[0]) == 0.0);
  }
  // the denominator is of size N^alpha on the overlap
  const double xi = 2.0, eta = 129.5;
  const cplx denom = full_symbol(strong, xi) - full_symbol(strong, eta) - full_symbol(strong, xi - eta);
  CHECK(std::abs(denom) / std::pow(128.0, 4.0) > 0.5);
  CHECK(std::abs(denom) / std::pow(128.0, 4.0) < 4.0);

  CHECK_THROWS_AS(second_flow_derivative_hat(strong, 0.0, pair, 2.0, 64), DomainError);
  CHECK_THROWS_AS(second_flow_derivative_hat(strong, 0.1, pair, 2.0, 32), DomainError);
}

TEST_CASE("growth exponent") {
  CHECK(predicted_growth_exponent(strong, -1.5) == doctest::Approx(1.0));
  CHECK(predicted_growth_exponent(transport, -2.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(predicted_growth_exponent(strong, -0.5), PreconditionError);
  CHECK_THROWS_AS(predicted_growth_exponent(transport, -1.5), PreconditionError);

  const auto a = illposedness_scan(strong, -1.5, 0.1, scan_ns);
  CHECK(a.norms.size() == scan_ns.size());
  CHECK(a.data_norms.size() == scan_ns.size());
  CHECK(a.fitted_exponent == doctest::Approx(1.0).epsilon(0.1));
  for (double d : a.data_norms) {
    CHECK(d >= 0.5);
    CHECK(d <= 2.0);
  }
  const auto b = illposedness_scan(transport, -2.0, 0.1, scan_ns);
  CHECK(b.fitted_exponent == doctest::Approx(1.0).epsilon(0.1));

  // lower s grows faster
  const auto c = illposedness_scan(strong, -2.0, 0.1, scan_ns);
  CHECK(c.fitted_exponent > a.fitted_exponent + 0.5);

  // insensitive to the time within the scan range
  for (double t : {0.05, 0.2})
    CHECK(illposedness_scan(strong, -1.5, t, scan_ns).fitted_exponent ==
          doctest::Approx(a.fitted_exponent).epsilon(0.02));

  CHECK_THROWS_AS(illposedness_scan(strong, -1.5, 0.1, {64}), DomainError);
  CHECK_THROWS_AS(illposedness_scan(strong, -1.5, 0.1, {128, 64}), DomainError);
  CHECK_THROWS_AS(illposedness_scan(strong, -1.5, 0.1, {32, 64}), DomainError);
  CHECK_THROWS_AS(illposedness_scan(strong.with_gammas(0.0, 0.0, 0.0), -1.5, 0.1, scan_ns),
                  PreconditionError);
}
