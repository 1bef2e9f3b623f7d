#include "fracwave/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracwave/errors.hpp"

namespace fracwave {

namespace {

bool all_finite(const SpectralField& field) {
  return std::all_of(field.coeffs().begin(), field.coeffs().end(), [](cplx c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
  });
}

SpectralField scaled_by(const std::vector<cplx>& factor, const SpectralField& field) {
  std::vector<cplx> c(field.coeffs());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] *= factor[k];
  return SpectralField(field.grid(), std::move(c));
}

}  // namespace

std::string to_string(Integrator integrator) {
  return integrator == Integrator::etdrk2 ? "etdrk2" : "picard";
}

Integrator parse_integrator(const std::string& text) {
  if (text == "etdrk2") return Integrator::etdrk2;
  if (text == "picard") return Integrator::picard;
  throw DataError("unknown integrator '" + text + "' (expected etdrk2 or picard)");
}

void EvolveConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw DomainError("t_end must be positive");
  if (dt > t_end * (1.0 + 1e-12)) throw DomainError("dt must not exceed t_end");
  if (!(picard_tol > 0.0)) throw DomainError("picard_tol must be positive");
  if (picard_max_iter < 1) throw DomainError("picard_max_iter must be >= 1");
  if (picard_quad < 8) throw DomainError("picard_quad must be >= 8");
  if (snapshot_every < 1) throw DomainError("snapshot_every must be >= 1");
  if (std::isnan(blowup_threshold) || !(blowup_threshold > 0.0))
    throw DomainError("blowup_threshold must be positive");
}

double lwp_time_bound(const SymbolSpec& spec, double s, double hs_norm) {
  if (!(hs_norm > 0.0)) throw DomainError("H^s norm must be positive");
  const double eta = local_time_eta(spec, s);
  const double raw = std::pow(4.0 * hs_norm, -1.0 / eta);
  return std::min(raw, 1.0) * (1.0 - 1e-9);
}

SpectralField rhs(const SpectralField& state, const SymbolSpec& spec) {
  const auto f = grid_symbol(spec, state.grid());
  const auto n_hat = nonlinearity(state, NonlinearitySpec::from(spec));
  std::vector<cplx> c(state.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = -f[k] * state[k] - n_hat[k];
  return SpectralField(state.grid(), std::move(c));
}

namespace {

// exp(z) - 1 without cancellation for small |z|
cplx expm1(cplx z) {
  const double s = std::sin(0.5 * z.imag());
  const double re = std::expm1(z.real()) * std::cos(z.imag()) - 2.0 * s * s;
  return {re, std::exp(z.real()) * std::sin(z.imag())};
}

}  // namespace

cplx phi1(cplx z) {
  if (std::abs(z) < 1e-5) return 1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0;
  return expm1(z) / z;
}

cplx phi2(cplx z) {
  if (std::abs(z) < 1e-5) return 0.5 + z / 6.0 + z * z / 24.0 + z * z * z / 120.0;
  return (expm1(z) - z) / (z * z);
}

EtdStepper::EtdStepper(const SymbolSpec& spec, const Grid& grid, double dt)
    : spec_(spec), nl_(NonlinearitySpec::from(spec)), dt_(dt) {
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  const auto f = grid_symbol(spec, grid);
  const std::size_t n = grid.n();
  expo_.resize(n);
  phi1_.resize(n);
  phi2_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx z = -f[k] * dt;
    expo_[k] = std::exp(z);
    phi1_[k] = dt * phi1(z);
    phi2_[k] = dt * phi2(z);
  }
}

SpectralField EtdStepper::step(const SpectralField& state, double time) const {
  const std::size_t n = state.size();
  if (expo_.size() != n) throw DataError("stepper was built for a different grid");
  std::vector<cplx> a(n);
  if (nl_.is_zero()) {
    for (std::size_t k = 0; k < n; ++k) a[k] = expo_[k] * state[k];
    SpectralField out(state.grid(), std::move(a));
    if (!all_finite(out)) throw DivergedError("integration diverged", time);
    return out;
  }
  const auto n0 = nonlinearity(state, nl_);
  for (std::size_t k = 0; k < n; ++k) a[k] = expo_[k] * state[k] - phi1_[k] * n0[k];
  SpectralField predictor(state.grid(), std::move(a));
  const auto n1 = nonlinearity(predictor, nl_);
  std::vector<cplx> c(predictor.coeffs());
  for (std::size_t k = 0; k < n; ++k) c[k] -= phi2_[k] * (n1[k] - n0[k]);
  SpectralField out(state.grid(), std::move(c));
  if (!all_finite(out)) throw DivergedError("integration diverged", time);
  return out;
}

SpectralField etd_step(const SpectralField& state, const SymbolSpec& spec, double dt) {
  return EtdStepper(spec, state.grid(), dt).step(state);
}

PicardResult picard_solve(const SpectralField& u0, const SymbolSpec& spec, double t,
                          const PicardOptions& opts) {
  if (!(t > 0.0)) throw DomainError("picard time must be positive");
  if (opts.m_quad < 8) throw DomainError("m_quad must be >= 8");
  if (opts.max_iter < 1) throw DomainError("max_iter must be >= 1");
  if (!(opts.tol > 0.0)) throw DomainError("picard tol must be positive");
  if (opts.enforce_time_bound && spec.has_nonlinearity()) {
    const double norm = sobolev_norm(u0, opts.s);
    if (norm > 0.0) {
      const double bound = lwp_time_bound(spec, opts.s, norm);
      if (t > bound) {
        std::ostringstream msg;
        msg << "t = " << t << " exceeds the local existence time " << bound;
        throw PreconditionError(msg.str());
      }
    }
  }

  const Grid& grid = u0.grid();
  const std::size_t n = grid.n();
  const auto m = static_cast<std::size_t>(opts.m_quad);
  const double h = t / (static_cast<double>(m) - 0.5);
  std::vector<double> tau(m + 1);
  tau[0] = 0.0;
  for (std::size_t j = 1; j <= m; ++j) tau[j] = 0.5 * h + static_cast<double>(j - 1) * h;
  tau[m] = t;

  const auto f = grid_symbol(spec, grid);
  auto exp_table = [&](double d) {
    std::vector<cplx> e(n);
    for (std::size_t k = 0; k < n; ++k) e[k] = std::exp(-f[k] * d);
    return e;
  };
  std::vector<std::vector<cplx>> at_tau(m + 1), at_gap(m);
  for (std::size_t j = 0; j <= m; ++j) at_tau[j] = exp_table(tau[j]);
  for (std::size_t d = 0; d < m; ++d) at_gap[d] = exp_table(static_cast<double>(d) * h);
  // panel widths: first one halved
  auto width = [&](std::size_t i) { return i == 0 ? 0.5 * h : h; };

  std::vector<SpectralField> free_flow, slices;
  free_flow.reserve(m + 1);
  for (std::size_t j = 0; j <= m; ++j) free_flow.push_back(scaled_by(at_tau[j], u0));
  slices = free_flow;

  const auto nl = NonlinearitySpec::from(spec);
  PicardResult result{u0, {}, {}, 0, false};
  int non_decreasing = 0;
  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    std::vector<SpectralField> forcing;
    forcing.reserve(m + 1);
    for (const auto& s : slices) forcing.push_back(nonlinearity(s, nl));

    std::vector<SpectralField> next;
    next.reserve(m + 1);
    next.push_back(free_flow[0]);
    for (std::size_t j = 1; j <= m; ++j) {
      std::vector<cplx> c(free_flow[j].coeffs());
      for (std::size_t i = 0; i <= j; ++i) {
        double w = 0.0;
        if (i > 0) w += 0.5 * width(i - 1);
        if (i < j) w += 0.5 * width(i);
        const auto& e = i == 0 ? at_tau[j] : at_gap[j - i];
        const auto& g = forcing[i];
        for (std::size_t k = 0; k < n; ++k) c[k] -= w * e[k] * g[k];
      }
      next.emplace_back(grid, std::move(c));
    }

    double dist = 0.0;
    for (std::size_t j = 0; j <= m; ++j) {
      if (!all_finite(next[j])) throw DivergedError("picard iterate is not finite", 0.0);
      dist = std::max(dist, sobolev_norm(next[j] - slices[j], opts.s));
    }
    slices = std::move(next);
    result.iterations = iter;
    if (!result.distances.empty()) {
      const double prev = result.distances.back();
      const double ratio = prev > 0.0 ? dist / prev : 0.0;
      result.ratios.push_back(ratio);
      if (ratio > 0.5 && ratio < 0.9) result.flagged = true;
      non_decreasing = dist >= prev ? non_decreasing + 1 : 0;
    }
    result.distances.push_back(dist);
    if (dist <= opts.tol) {
      result.state = slices[m];
      return result;
    }
    if (non_decreasing >= 3) {
      std::ostringstream msg;
      msg << "picard distances failed to decrease for 3 iterations (last " << dist << ")";
      throw NonContractionError(msg.str());
    }
  }
  std::ostringstream msg;
  msg << "picard iteration hit max_iter = " << opts.max_iter << " (distance "
      << result.distances.back() << ")";
  throw MaxIterError(msg.str());
}

double dxx_sup(const SpectralField& state) {
  return sup_norm(multiplier(state, [](double xi) { return cplx(-xi * xi); }));
}

Trajectory run(const SpectralField& u0, const SymbolSpec& spec, const EvolveConfig& cfg) {
  cfg.validate();
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::round(cfg.t_end / cfg.dt)));
  const double dt = cfg.t_end / static_cast<double>(steps);

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(u0);
  traj.monitor.push_back(0.0);

  double integrand = dxx_sup(u0);
  if (integrand > cfg.blowup_threshold) {
    traj.halted = HaltRecord{0.0, "blowup-monitor"};
    return traj;
  }

  std::optional<EtdStepper> stepper;
  if (cfg.integrator == Integrator::etdrk2) stepper.emplace(spec, u0.grid(), dt);
  PicardOptions popts;
  popts.m_quad = cfg.picard_quad;
  popts.max_iter = cfg.picard_max_iter;
  popts.tol = cfg.picard_tol;

  SpectralField state = u0;
  double integral = 0.0;
  for (std::size_t step = 1; step <= steps; ++step) {
    const double t_prev = static_cast<double>(step - 1) * dt;
    const double t_now = static_cast<double>(step) * dt;
    if (stepper) {
      state = stepper->step(state, t_prev);
    } else {
      state = picard_solve(state, spec, dt, popts).state;
    }
    integral += integrand * dt;
    integrand = dxx_sup(state);
    traj.steps = step;
    const bool crossed = integrand > cfg.blowup_threshold;
    if (crossed || step % static_cast<std::size_t>(cfg.snapshot_every) == 0 || step == steps) {
      traj.times.push_back(t_now);
      traj.states.push_back(state);
      traj.monitor.push_back(integral);
    }
    if (crossed) {
      traj.halted = HaltRecord{t_now, "blowup-monitor"};
      break;
    }
  }
  return traj;
}

}  // namespace fracwave
