#include "fracwave/symbols.hpp"

#include <cmath>
#include <sstream>

#include "fracwave/errors.hpp"

namespace fracwave {

namespace {

constexpr cplx I{0.0, 1.0};

// Falling factorial p (p-1) ... (p-k+1).
double falling(double p, int k) {
  double out = 1.0;
  for (int j = 0; j < k; ++j) out *= p - j;
  return out;
}

// k-th derivative of |xi|^p at xi != 0.
double abs_power_derivative(double p, double xi, int k) {
  const double coeff = falling(p, k) * std::pow(std::abs(xi), p - k);
  return (xi < 0.0 && k % 2 == 1) ? -coeff : coeff;
}

// k-th derivative of |xi|^p at xi = 0, when it exists.
double abs_power_derivative_at_zero(double p, int k) {
  if (is_even_integer(p)) {
    if (k == static_cast<int>(p)) return std::tgamma(p + 1.0);
    return 0.0;
  }
  if (k < p) return 0.0;
  std::ostringstream msg;
  msg << "derivative of order " << k << " of |xi|^" << p << " is singular at xi = 0";
  throw DomainError(msg.str());
}

// Derivatives of the dispersive part i m(xi) xi.
cplx dispersion_derivative(DispersionKind kind, double xi, int k) {
  if (kind == DispersionKind::hilbert) {
    // i xi |xi|
    if (xi == 0.0) {
      if (k == 1) return 0.0;
      throw DomainError("derivative of i xi|xi| of order >= 2 is singular at xi = 0");
    }
    if (k == 1) return 2.0 * I * std::abs(xi);
    if (k == 2) return 2.0 * I * (xi > 0.0 ? 1.0 : -1.0);
    return 0.0;
  }
  // -i xi^3
  switch (k) {
    case 1: return -3.0 * I * xi * xi;
    case 2: return -6.0 * I * xi;
    case 3: return -6.0 * I;
    default: return 0.0;
  }
}

}  // namespace

bool is_even_integer(double value) {
  return value == std::round(value) && std::fmod(value, 2.0) == 0.0;
}

std::string to_string(DispersionKind kind) {
  return kind == DispersionKind::hilbert ? "hilbert" : "laplacian";
}

DispersionKind parse_dispersion_kind(const std::string& text) {
  if (text == "hilbert") return DispersionKind::hilbert;
  if (text == "laplacian") return DispersionKind::laplacian;
  throw DataError("unknown dispersion kind '" + text + "' (expected hilbert or laplacian)");
}

SymbolSpec::SymbolSpec(DispersionKind kind, double alpha, double beta, double gamma1,
                       double gamma2, double gamma3)
    : kind_(kind), alpha_(alpha), beta_(beta), gamma1_(gamma1), gamma2_(gamma2),
      gamma3_(gamma3) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma1) ||
      !std::isfinite(gamma2) || !std::isfinite(gamma3))
    throw DomainError("symbol parameters must be finite");
  if (beta < 1.0) throw DomainError("beta must be >= 1");
  if (!(alpha > beta)) throw DomainError("alpha must exceed beta");
  if (strong_nonlinearity()) {
    if (!(alpha > 3.5)) throw DomainError("alpha must exceed 7/2 when gamma2 or gamma3 is nonzero");
  } else if (!(alpha > 2.0)) {
    throw DomainError("alpha must exceed 2");
  }
}

SymbolSpec SymbolSpec::without_dispersion() const {
  SymbolSpec copy = *this;
  copy.dispersive_ = false;
  return copy;
}

SymbolSpec SymbolSpec::with_gammas(double gamma1, double gamma2, double gamma3) const {
  SymbolSpec out(kind_, alpha_, beta_, gamma1, gamma2, gamma3);
  out.dispersive_ = dispersive_;
  return out;
}

DecayExponent DecayExponent::algebraic(int n) {
  if (n < 2) throw DomainError("algebraic decay exponent must be >= 2");
  DecayExponent out;
  out.n_ = n;
  return out;
}

int DecayExponent::value() const {
  if (!n_) throw DomainError("schwartz decay has no integer exponent");
  return *n_;
}

std::string DecayExponent::to_string() const {
  return n_ ? std::to_string(*n_) : std::string("schwartz");
}

double dispersion_symbol(DispersionKind kind, double xi) {
  return kind == DispersionKind::hilbert ? std::abs(xi) : -xi * xi;
}

cplx full_symbol(const SymbolSpec& spec, double xi) {
  const double a = std::abs(xi);
  const double dissipation = std::pow(a, spec.alpha()) - std::pow(a, spec.beta());
  const double phase = spec.dispersive() ? dispersion_symbol(spec.kind(), xi) * xi : 0.0;
  return {dissipation, phase};
}

cplx symbol_derivative(const SymbolSpec& spec, double xi, int order) {
  if (order < 1) throw DomainError("derivative order must be >= 1");
  if (order > 5) throw NotImplementedError("symbol derivatives are implemented for orders 1..5");
  cplx out = spec.dispersive() ? dispersion_derivative(spec.kind(), xi, order) : cplx{};
  if (xi == 0.0) {
    out += abs_power_derivative_at_zero(spec.alpha(), order);
    out -= abs_power_derivative_at_zero(spec.beta(), order);
  } else {
    out += abs_power_derivative(spec.alpha(), xi, order);
    out -= abs_power_derivative(spec.beta(), xi, order);
  }
  return out;
}

DecayExponent decay_exponent(const SymbolSpec& spec) {
  const auto floor_plus_one = [](double v) { return static_cast<int>(std::floor(v)) + 1; };
  if (spec.kind() == DispersionKind::hilbert)
    return DecayExponent::algebraic(std::min(3, floor_plus_one(spec.beta())));
  const bool alpha_even = is_even_integer(spec.alpha());
  const bool beta_even = is_even_integer(spec.beta());
  if (alpha_even && beta_even) return DecayExponent::schwartz();
  if (beta_even) return DecayExponent::algebraic(floor_plus_one(spec.alpha()));
  return DecayExponent::algebraic(floor_plus_one(spec.beta()));
}

cplx resonance(const SymbolSpec& spec, double xi, double eta) {
  return full_symbol(spec, xi) - full_symbol(spec, eta) - full_symbol(spec, xi - eta);
}

double local_time_eta(const SymbolSpec& spec, double s) {
  const double alpha = spec.alpha();
  const double eta = s / alpha - 5.0 / (2.0 * alpha) + 1.0;
  if (!(eta > 0.0)) {
    std::ostringstream msg;
    msg << "local time exponent eta = " << eta << " is not positive for s = " << s;
    throw DomainError(msg.str());
  }
  return eta;
}

double dissipation_minimizer(const SymbolSpec& spec) {
  return std::pow(spec.beta() / spec.alpha(), 1.0 / (spec.alpha() - spec.beta()));
}

}  // namespace fracwave
