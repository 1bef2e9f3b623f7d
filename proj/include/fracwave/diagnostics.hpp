#pragma once

#include <cstddef>
#include <vector>

#include "fracwave/evolve.hpp"
#include "fracwave/spectral.hpp"
#include "fracwave/symbols.hpp"

namespace fracwave {

struct EnergyLedger {
  double s = 0.0;  // Sobolev index of the hs column
  std::vector<double> times;
  std::vector<double> l2_sq;
  std::vector<double> hs;
  std::vector<double> dxx_inf;
  std::vector<double> dxx_inf_integral;  // running trapezoid
  std::vector<double> identity_residual;
  std::vector<double> hdot1_sq_integral;  // running trapezoid of ||u_x||^2
};

/// | <u, u_t> + int (D^a - D^b)u u - (2 g2 - g3) int u_x^2 u |.
double energy_residual(const SpectralField& state, const SymbolSpec& spec,
                       const SpectralField& dstate_dt);

/// ||u||_{H^2}^2 + ||u||_{H^2}^3, the reference size for the residual.
double energy_scale(const SpectralField& state);

EnergyLedger build_ledger(const Trajectory& traj, const SymbolSpec& spec, double s = 0.0);

struct GwpCheck {
  bool pass = false;
  double margin = 0.0;  // min over j of bound_j / l2_sq[j]
  double rate = 0.0;    // 2 M^beta
};

/// l2_sq[j] <= l2_sq[ref] exp(2 M^beta (t_j - t_ref)), M = 2^{1/(alpha-beta)}.
/// Throws PreconditionError unless -2 g2 + g3 = 0.
GwpCheck gwp_bound_check(const EnergyLedger& ledger, const SymbolSpec& spec,
                         std::size_t t_ref_index);

/// Final entry of the running integral of ||u_xx||_inf.
double blowup_monitor(const EnergyLedger& ledger);

struct DecayReport {
  double t = 0.0;
  double kappa = 0.0;
  DecayExponent n = DecayExponent::schwartz();
  double weighted_sup = 0.0;
  double fitted_exponent = 0.0;  // NaN when the far window has < 20 usable samples
  double r_squared = 0.0;
  std::size_t samples = 0;
};

/// Weighted sup of (1 + |x|^min(kappa, n)) |u| over |x| <= window_fraction L and
/// a log-log fit of |u| over window_fraction L / 10 <= |x| <= window_fraction L
/// (both sides pooled, samples below 1e-13 dropped).
DecayReport decay_track(const SpectralField& state, double kappa, const DecayExponent& n,
                        double window_fraction, double t = 0.0);

/// A(t) = int u0 - g3 int_0^t ||u_x||^2 d tau (trapezoid over ledger samples).
double profile_coefficient(const SpectralField& u0, const EnergyLedger& ledger,
                           const SymbolSpec& spec, double t);

struct ProfileCheck {
  double ratio_error = 0.0;  // median of |u/K - A| / |A|
  double coefficient = 0.0;  // A(t)
  std::size_t samples = 0;
};

/// Compare u(t,x)/K(t,x) with A(t) for x_lo <= |x| <= x_hi, discarding samples
/// with |K| < 100 tol.
ProfileCheck profile_verify(const Trajectory& traj, const SymbolSpec& spec, double t, double x_lo,
                            double x_hi, double tol = 1e-11);

}  // namespace fracwave
