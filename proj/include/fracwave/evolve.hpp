#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fracwave/spectral.hpp"
#include "fracwave/symbols.hpp"

namespace fracwave {

enum class Integrator { etdrk2, picard };
std::string to_string(Integrator integrator);
Integrator parse_integrator(const std::string& text);

struct EvolveConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  Integrator integrator = Integrator::etdrk2;
  int picard_max_iter = 50;
  double picard_tol = 1e-12;
  int picard_quad = 16;  // Duhamel slices per step for the picard integrator
  double blowup_threshold = std::numeric_limits<double>::infinity();
  int snapshot_every = 1;  // steps between stored snapshots

  void validate() const;
};

struct HaltRecord {
  double time = 0.0;
  std::string reason;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<SpectralField> states;
  /// Running integral of ||u_xx||_inf, left rectangles per step, at each stored time.
  std::vector<double> monitor;
  std::optional<HaltRecord> halted;
  std::size_t steps = 0;
};

/// min( (4 ||u0||_{H^s})^{-1/eta}, 1 ) (1 - 1e-9).
double lwp_time_bound(const SymbolSpec& spec, double s, double hs_norm);

/// d/dt u_hat = -f u_hat - N_hat(u).
SpectralField rhs(const SpectralField& state, const SymbolSpec& spec);

/// phi1(z) = (e^z - 1)/z and phi2(z) = (e^z - 1 - z)/z^2, series for |z| < 1e-5.
cplx phi1(cplx z);
cplx phi2(cplx z);

/// ETDRK2 (Cox-Matthews) with coefficients cached for one grid and step.
class EtdStepper {
public:
  EtdStepper(const SymbolSpec& spec, const Grid& grid, double dt);
  /// Throws DivergedError (carrying `time`) on a non-finite result.
  SpectralField step(const SpectralField& state, double time = 0.0) const;

private:
  SymbolSpec spec_;
  NonlinearitySpec nl_;
  std::vector<cplx> expo_, phi1_, phi2_;
  double dt_;
};

SpectralField etd_step(const SpectralField& state, const SymbolSpec& spec, double dt);

struct PicardOptions {
  int m_quad = 16;
  int max_iter = 50;
  double tol = 1e-12;
  double s = 0.0;  // Sobolev index of the iteration distance and the time bound
  bool enforce_time_bound = true;
};

struct PicardResult {
  SpectralField state;
  std::vector<double> distances;  // sup over slices of successive H^s differences
  std::vector<double> ratios;     // distances[k] / distances[k-1]
  int iterations = 0;
  bool flagged = false;  // some ratio from iteration 2 on fell in (0.5, 0.9)
};

/// Fixed point of u = K(t)*u0 - int_0^t K(t - tau)*N(u(tau)) d tau on m_quad + 1
/// slices (first panel halved), Duhamel integral by the trapezoid rule.
PicardResult picard_solve(const SpectralField& u0, const SymbolSpec& spec, double t,
                          const PicardOptions& opts = {});

/// ||u_xx||_inf.
double dxx_sup(const SpectralField& state);

/// Advance to cfg.t_end; halts with reason "blowup-monitor" once ||u_xx||_inf
/// exceeds cfg.blowup_threshold (the crossing state is the last snapshot).
Trajectory run(const SpectralField& u0, const SymbolSpec& spec, const EvolveConfig& cfg);

}  // namespace fracwave
