#include "fracwave/illposed.hpp"

#include <cmath>
#include <sstream>

#include "fracwave/errors.hpp"
#include "fracwave/fit.hpp"
#include "fracwave/parallel.hpp"
#include "fracwave/quadrature.hpp"

namespace fracwave {

double BandDatum::sobolev_norm(double s_prime) const {
  const auto& gl = gauss_legendre(64);
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  double sum = 0.0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double xi = c + h * gl.nodes[i];
    sum += gl.weights[i] * std::pow(1.0 + xi * xi, s_prime);
  }
  return amplitude * std::sqrt(h * sum);
}

BandPair make_band_pair(int n_scale, double r, double s) {
  if (n_scale < 64) throw DomainError("band scale N must be >= 64");
  if (!(r >= 0.5 && r <= 2.0)) throw DomainError("band width r must lie in [0.5, 2]");
  const double n = static_cast<double>(n_scale);
  const double amp = std::pow(r, -0.5) * std::pow(n, -s);
  BandDatum v{n_scale, r, s, -n, -n + r, amp};
  BandDatum w{n_scale, r, s, n + r, n + 2.0 * r, amp};
  return {v, w};
}

FlowDerivativeTerms second_flow_derivative_terms(const SymbolSpec& spec, double t,
                                                 const BandPair& pair, double xi, int quad_points) {
  if (!(t > 0.0)) throw DomainError("t must be positive");
  if (quad_points < 64) throw DomainError("quad_points must be >= 64");
  const auto& [v, w] = pair;
  // eta in w's band and xi - eta in v's band
  const double lo = std::max(w.lo, xi - v.hi);
  const double hi = std::min(w.hi, xi - v.lo);
  FlowDerivativeTerms out;
  if (!(hi > lo)) return out;

  const cplx f_xi = full_symbol(spec, xi);
  const cplx decay_xi = std::exp(-f_xi * t);
  const auto& gl = gauss_legendre(static_cast<std::size_t>(quad_points));
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  const double amp = v.amplitude * w.amplitude;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double eta = c + h * gl.nodes[i];
    const cplx f_eta = full_symbol(spec, eta);
    const cplx f_rest = full_symbol(spec, xi - eta);
    const cplx den = f_xi - f_eta - f_rest;
    cplx quotient;
    if (std::abs(den) < 1e-8 * std::abs(f_eta)) {
      quotient = t * decay_xi;
    } else {
      quotient = (std::exp(-(f_eta + f_rest) * t) - decay_xi) / den;
    }
    const cplx base = gl.weights[i] * h * amp * quotient;
    out.term[0] += base * cplx(0.0, spec.gamma1() * xi);
    out.term[1] += base * (-spec.gamma2() * xi * xi);
    out.term[2] += base * (-spec.gamma3() * (xi - eta) * eta);
  }
  for (auto& term : out.term) term *= 2.0;
  return out;
}

cplx second_flow_derivative_hat(const SymbolSpec& spec, double t, const BandPair& pair, double xi,
                                int quad_points) {
  return second_flow_derivative_terms(spec, t, pair, xi, quad_points).total();
}

double predicted_growth_exponent(const SymbolSpec& spec, double s) {
  const double half_alpha = 0.5 * spec.alpha();
  const double exponent =
      spec.strong_nonlinearity() ? 2.0 * (1.0 - s - half_alpha) : 2.0 * (-s - half_alpha);
  if (!(exponent > 0.0)) {
    std::ostringstream msg;
    msg << "no growth expected: s = " << s << " is not below the threshold "
        << (spec.strong_nonlinearity() ? 1.0 - half_alpha : -half_alpha)
        << " where the flow map is smooth";
    throw PreconditionError(msg.str());
  }
  return exponent;
}

IllposednessReport illposedness_scan(const SymbolSpec& spec, double s, double t,
                                     const std::vector<int>& ns, const IllposedOptions& opts) {
  if (!(t > 0.0)) throw DomainError("t must be positive");
  if (!spec.has_nonlinearity()) throw PreconditionError("the scan needs a nonzero nonlinearity");
  if (ns.size() < 2) throw DomainError("the scan needs at least two values of N");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 64) throw DomainError("every N must be >= 64");
    if (i > 0 && ns[i] <= ns[i - 1]) throw DomainError("N values must be strictly increasing");
  }
  if (opts.xi_points < 16) throw DomainError("xi_points must be >= 16");

  IllposednessReport report{spec, s, t, ns, {}, {}, {}, 0.0, 0.0, 0.0};
  report.predicted_exponent = predicted_growth_exponent(spec, s);
  const std::size_t count = ns.size();
  report.norms.assign(count, 0.0);
  for (auto& v : report.term_norms) v.assign(count, 0.0);
  report.data_norms.assign(count, 0.0);

  const double width = 4.0 * opts.r;
  const double dxi = width / static_cast<double>(opts.xi_points);
  parallel_for(
      count,
      [&](std::size_t i) {
        const auto pair = make_band_pair(ns[i], opts.r, s);
        report.data_norms[i] = pair.first.sobolev_norm(s);
        double total = 0.0;
        std::array<double, 3> terms{};
        for (int q = 0; q < opts.xi_points; ++q) {
          const double xi = (static_cast<double>(q) + 0.5) * dxi;  // midpoints of (0, 4r)
          const auto d = second_flow_derivative_terms(spec, t, pair, xi, opts.quad_points);
          const double weight = std::pow(1.0 + xi * xi, s) * dxi;
          total += weight * std::norm(d.total());
          for (int j = 0; j < 3; ++j) terms[j] += weight * std::norm(d.term[j]);
        }
        // negative frequencies mirror the positive ones
        report.norms[i] = std::sqrt(2.0 * total);
        for (int j = 0; j < 3; ++j) report.term_norms[j][i] = std::sqrt(2.0 * terms[j]);
      },
      opts.jobs);

  std::vector<double> xs(ns.begin(), ns.end());
  const auto fit = log_log_fit(xs, report.norms);
  report.fitted_exponent = fit.slope;
  report.r_squared = fit.r_squared;
  return report;
}

}  // namespace fracwave
