#pragma once

#include <complex>
#include <optional>
#include <string>

namespace fracwave {

using cplx = std::complex<double>;

/// Dispersive operator D in D(u_x): hilbert is H d/dx (m = |xi|), laplacian is
/// d^2/dx^2 (m = -|xi|^2).
enum class DispersionKind { hilbert, laplacian };

std::string to_string(DispersionKind kind);
DispersionKind parse_dispersion_kind(const std::string& text);

/// One member of the equation family
///   u_t + D(u_x) + (D^alpha - D^beta) u + g1 (u^2)_x + g2 (u^2)_xx + g3 (u_x)^2 = 0
/// with fractional derivatives normalized so that D^a has symbol |xi|^a.
///
/// Construction validates alpha > beta >= 1 and alpha > 7/2 when g2 or g3 is
/// nonzero, alpha > 2 otherwise.
class SymbolSpec {
public:
  SymbolSpec(DispersionKind kind, double alpha, double beta, double gamma1 = 0.0,
             double gamma2 = 0.0, double gamma3 = 0.0);

  DispersionKind kind() const noexcept { return kind_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double gamma1() const noexcept { return gamma1_; }
  double gamma2() const noexcept { return gamma2_; }
  double gamma3() const noexcept { return gamma3_; }

  bool has_nonlinearity() const noexcept {
    return gamma1_ != 0.0 || gamma2_ != 0.0 || gamma3_ != 0.0;
  }
  /// g2 or g3 nonzero (the strong-nonlinearity branch of the theory).
  bool strong_nonlinearity() const noexcept { return gamma2_ != 0.0 || gamma3_ != 0.0; }
  /// -2 g2 + g3 == 0: the L2 energy obeys a global Gronwall bound.
  bool gwp_eligible() const noexcept { return -2.0 * gamma2_ + gamma3_ == 0.0; }

  /// Copy with the dispersive term switched off. Only used to probe symmetry
  /// properties of the kernel; the result is not a member of the family.
  SymbolSpec without_dispersion() const;
  bool dispersive() const noexcept { return dispersive_; }

  SymbolSpec with_gammas(double gamma1, double gamma2, double gamma3) const;

private:
  DispersionKind kind_;
  double alpha_;
  double beta_;
  double gamma1_;
  double gamma2_;
  double gamma3_;
  bool dispersive_ = true;
};

/// Algebraic far-field decay rate |x|^{-n} of the kernel, or faster than any
/// polynomial.
class DecayExponent {
public:
  static DecayExponent algebraic(int n);
  static DecayExponent schwartz() { return DecayExponent(); }

  bool is_schwartz() const noexcept { return !n_.has_value(); }
  /// Integer exponent; throws DomainError on the schwartz branch.
  int value() const;
  std::string to_string() const;

  friend bool operator==(const DecayExponent&, const DecayExponent&) = default;

private:
  DecayExponent() = default;
  std::optional<int> n_;
};

double dispersion_symbol(DispersionKind kind, double xi);

/// f(xi) = i m(xi) xi + |xi|^alpha - |xi|^beta.
cplx full_symbol(const SymbolSpec& spec, double xi);

/// k-th derivative of f for k in 1..5. Throws DomainError at xi = 0 when the
/// derivative does not exist there, NotImplementedError for k > 5.
cplx symbol_derivative(const SymbolSpec& spec, double xi, int order);

DecayExponent decay_exponent(const SymbolSpec& spec);

/// f(xi) - f(eta) - f(xi - eta).
cplx resonance(const SymbolSpec& spec, double xi, double eta);

/// eta = s/alpha - 5/(2 alpha) + 1; throws DomainError if eta <= 0.
double local_time_eta(const SymbolSpec& spec, double s);

/// Point where the dissipation |xi|^alpha - |xi|^beta attains its minimum.
double dissipation_minimizer(const SymbolSpec& spec);

bool is_even_integer(double value);

}  // namespace fracwave
