#include "fracwave/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracwave/errors.hpp"
#include "fracwave/fit.hpp"
#include "fracwave/kernel.hpp"
#include "fracwave/parallel.hpp"

namespace fracwave {

namespace {

double hdot1_sq(const SpectralField& u) {
  const Grid& g = u.grid();
  double sum = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) sum += g.xi(k) * g.xi(k) * std::norm(u[k]);
  return g.length() * sum;
}

// integral of u_x^2 u by the grid rule (exact for fields inside the 2/3 ball)
double cubic_flux(const SpectralField& u) {
  const auto phys = to_physical(u);
  const auto ux = to_physical(multiplier(u, [](double xi) { return cplx(0.0, xi); }));
  double sum = 0.0;
  for (std::size_t j = 0; j < phys.size(); ++j) sum += ux[j] * ux[j] * phys[j];
  return sum * u.grid().dx();
}

std::size_t find_time(const std::vector<double>& times, double t) {
  for (std::size_t i = 0; i < times.size(); ++i)
    if (std::abs(times[i] - t) <= 1e-9 * std::max(1.0, std::abs(t))) return i;
  std::ostringstream msg;
  msg << "trajectory has no snapshot at t = " << t;
  throw DataError(msg.str());
}

}  // namespace

double energy_residual(const SpectralField& state, const SymbolSpec& spec,
                       const SpectralField& dstate_dt) {
  const auto f = grid_symbol(spec, state.grid());
  double dissipation = 0.0;
  for (std::size_t k = 0; k < state.size(); ++k) dissipation += f[k].real() * std::norm(state[k]);
  dissipation *= state.grid().length();
  const double flux_coeff = 2.0 * spec.gamma2() - spec.gamma3();
  const double flux = flux_coeff != 0.0 ? flux_coeff * cubic_flux(state) : 0.0;
  return std::abs(inner_product(state, dstate_dt) + dissipation - flux);
}

double energy_scale(const SpectralField& state) {
  const double h2 = sobolev_norm(state, 2.0);
  return h2 * h2 + h2 * h2 * h2;
}

EnergyLedger build_ledger(const Trajectory& traj, const SymbolSpec& spec, double s) {
  EnergyLedger ledger;
  ledger.s = s;
  const std::size_t count = traj.states.size();
  ledger.times = traj.times;
  ledger.l2_sq.resize(count);
  ledger.hs.resize(count);
  ledger.dxx_inf.resize(count);
  ledger.identity_residual.resize(count);
  std::vector<double> grad(count);
  parallel_for(count, [&](std::size_t i) {
    const auto& u = traj.states[i];
    const double l2 = sobolev_norm(u, 0.0);
    ledger.l2_sq[i] = l2 * l2;
    ledger.hs[i] = sobolev_norm(u, s);
    ledger.dxx_inf[i] = dxx_sup(u);
    ledger.identity_residual[i] = energy_residual(u, spec, rhs(u, spec));
    grad[i] = hdot1_sq(u);
  });
  ledger.dxx_inf_integral.assign(count, 0.0);
  ledger.hdot1_sq_integral.assign(count, 0.0);
  for (std::size_t i = 1; i < count; ++i) {
    const double dt = ledger.times[i] - ledger.times[i - 1];
    ledger.dxx_inf_integral[i] =
        ledger.dxx_inf_integral[i - 1] + 0.5 * dt * (ledger.dxx_inf[i] + ledger.dxx_inf[i - 1]);
    ledger.hdot1_sq_integral[i] =
        ledger.hdot1_sq_integral[i - 1] + 0.5 * dt * (grad[i] + grad[i - 1]);
  }
  return ledger;
}

GwpCheck gwp_bound_check(const EnergyLedger& ledger, const SymbolSpec& spec,
                         std::size_t t_ref_index) {
  if (!spec.gwp_eligible())
    throw PreconditionError("global bound needs -2 gamma2 + gamma3 = 0");
  if (t_ref_index >= ledger.times.size()) throw DomainError("reference index out of range");
  const double m = std::pow(2.0, 1.0 / (spec.alpha() - spec.beta()));
  GwpCheck out;
  out.rate = 2.0 * std::pow(m, spec.beta());
  out.margin = std::numeric_limits<double>::infinity();
  const double ref = ledger.l2_sq[t_ref_index];
  const double t_ref = ledger.times[t_ref_index];
  for (std::size_t j = t_ref_index + 1; j < ledger.times.size(); ++j) {
    if (ledger.l2_sq[j] <= 0.0) continue;
    const double bound = ref * std::exp(out.rate * (ledger.times[j] - t_ref));
    out.margin = std::min(out.margin, bound / ledger.l2_sq[j]);
  }
  out.pass = out.margin >= 1.0;
  return out;
}

double blowup_monitor(const EnergyLedger& ledger) {
  return ledger.dxx_inf_integral.empty() ? 0.0 : ledger.dxx_inf_integral.back();
}

DecayReport decay_track(const SpectralField& state, double kappa, const DecayExponent& n,
                        double window_fraction, double t) {
  if (!(window_fraction > 0.0) || window_fraction > 0.5)
    throw DomainError("window_fraction must lie in (0, 0.5]");
  if (!(kappa > 0.0)) throw DomainError("kappa must be positive");
  double weight = kappa;
  if (!n.is_schwartz()) weight = std::min(kappa, static_cast<double>(n.value()));
  if (!std::isfinite(weight)) throw DomainError("degenerate window: kappa and n are both infinite");

  const Grid& g = state.grid();
  const double x_hi = window_fraction * g.length();
  const double x_lo = 0.1 * x_hi;
  const auto u = to_physical(state);

  DecayReport report;
  report.t = t;
  report.kappa = kappa;
  report.n = n;
  std::vector<double> xs, ys;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double ax = std::abs(g.x(j));
    if (ax > x_hi) continue;
    report.weighted_sup = std::max(report.weighted_sup, (1.0 + std::pow(ax, weight)) * std::abs(u[j]));
    if (ax >= x_lo && std::abs(u[j]) > kernel_floor) {
      xs.push_back(ax);
      ys.push_back(u[j]);
    }
  }
  if (xs.size() < 20) {
    report.fitted_exponent = std::numeric_limits<double>::quiet_NaN();
    return report;
  }
  const auto fit = log_log_fit(xs, ys);
  report.fitted_exponent = -fit.slope;
  report.r_squared = fit.r_squared;
  report.samples = xs.size();
  return report;
}

double profile_coefficient(const SpectralField& u0, const EnergyLedger& ledger,
                           const SymbolSpec& spec, double t) {
  const double mass = u0.grid().length() * u0[0].real();
  if (spec.gamma3() == 0.0) return mass;
  const auto& ts = ledger.times;
  if (ts.empty() || t < ts.front() || t > ts.back() * (1.0 + 1e-12))
    throw DomainError("ledger does not cover the requested time");
  double integral = ledger.hdot1_sq_integral.back();
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (ts[i] >= t) {
      const double w = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
      integral = (1.0 - w) * ledger.hdot1_sq_integral[i - 1] + w * ledger.hdot1_sq_integral[i];
      break;
    }
  }
  return mass - spec.gamma3() * integral;
}

ProfileCheck profile_verify(const Trajectory& traj, const SymbolSpec& spec, double t, double x_lo,
                            double x_hi, double tol) {
  if (!(x_hi > x_lo) || !(x_lo > 0.0)) throw DomainError("profile window must satisfy 0 < x_lo < x_hi");
  const std::size_t idx = find_time(traj.times, t);
  Trajectory head;
  head.times.assign(traj.times.begin(), traj.times.begin() + static_cast<long>(idx) + 1);
  head.states.assign(traj.states.begin(), traj.states.begin() + static_cast<long>(idx) + 1);
  const auto ledger = build_ledger(head, spec);
  ProfileCheck out;
  out.coefficient = profile_coefficient(traj.states.front(), ledger, spec, t);
  double scale = 0.0;
  for (double v : to_physical(traj.states.front())) scale += std::abs(v);
  scale *= traj.states.front().grid().dx();
  if (std::abs(out.coefficient) <= 1e-12 * scale)
    throw DomainError("profile coefficient vanishes (zero-mean datum without gamma3)");

  const auto& state = traj.states[idx];
  const Grid& g = state.grid();
  const auto u = to_physical(state);
  std::vector<std::size_t> nodes;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double ax = std::abs(g.x(j));
    if (ax >= x_lo && ax <= x_hi) nodes.push_back(j);
  }
  std::vector<double> k(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t i) { k[i] = kernel_point(spec, t, g.x(nodes[i]), tol); });
  std::vector<double> errors;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (std::abs(k[i]) < 100.0 * tol) continue;
    errors.push_back(std::abs(u[nodes[i]] / k[i] - out.coefficient) / std::abs(out.coefficient));
  }
  if (errors.empty()) throw InsufficientSamplesError("profile window is empty after guarding");
  out.samples = errors.size();
  const auto mid = errors.begin() + static_cast<long>(errors.size() / 2);
  std::nth_element(errors.begin(), mid, errors.end());
  out.ratio_error = *mid;
  return out;
}

}  // namespace fracwave
