#include "fracwave/models.hpp"

#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>

#include "fracwave/errors.hpp"

namespace fracwave {

namespace {

struct Entry {
  const char* name;
  DispersionKind kind;
  double alpha, beta, g1, g2, g3;
  bool free_exponents;
  bool free_gammas;
  const char* description;
  std::size_t n;
  double length;
  DatumFamily datum;
};

// Suggested grids keep |x| <= L/4 well away from the periodic images.
const Entry catalog[] = {
    {"npbo", DispersionKind::hilbert, 3.0, 1.0, 1.0, 0.0, 0.0, false, false,
     "nonlocal perturbed Benjamin-Ono equation", 4096, 800.0, DatumFamily::gaussian},
    {"plasma", DispersionKind::hilbert, 4.0, 1.0, 1.0, 0.0, 0.0, false, false,
     "Benjamin-Ono type model from plasma theory", 4096, 800.0, DatumFamily::gaussian},
    {"mbo", DispersionKind::hilbert, 4.0, 2.5, 1.0, 0.0, 0.0, true, false,
     "modified Benjamin-Ono equation", 4096, 800.0, DatumFamily::gaussian},
    {"mkdv", DispersionKind::laplacian, 3.0, 1.5, 1.0, 0.0, 0.0, true, false,
     "modified KdV equation with fractional dissipation", 4096, 800.0, DatumFamily::gaussian},
    {"ost", DispersionKind::laplacian, 3.0, 1.0, 1.0, 0.0, 0.0, false, false,
     "Ostrovsky-Stepanyants-Tsimring equation", 4096, 800.0, DatumFamily::gaussian},
    {"dkv", DispersionKind::laplacian, 4.0, 2.0, 0.0, 1.0, 2.0, false, true,
     "dispersive Kuramoto-Velarde equation", 512, 100.0, DatumFamily::gaussian},
    {"ks", DispersionKind::laplacian, 4.0, 2.0, 0.0, 0.0, 1.0, false, true,
     "Kuramoto-Sivashinsky equation", 512, 100.0, DatumFamily::wavelet},
};

double pick(const std::optional<double>& value, double fallback, bool allowed, const char* key,
            const char* model) {
  if (!value) return fallback;
  if (!allowed && *value != fallback) {
    std::ostringstream msg;
    msg << "model '" << model << "' fixes " << key << " = " << fallback;
    throw DomainError(msg.str());
  }
  return *value;
}

}  // namespace

std::string to_string(DatumFamily family) {
  switch (family) {
    case DatumFamily::gaussian: return "gaussian";
    case DatumFamily::wavelet: return "wavelet";
    case DatumFamily::band_pair: return "band-pair";
  }
  return "?";
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& e : catalog) out.emplace_back(e.name);
  return out;
}

ModelPreset preset(const std::string& name, const PresetOverrides& o) {
  for (const auto& e : catalog) {
    if (name != e.name) continue;
    const double alpha = pick(o.alpha, e.alpha, e.free_exponents, "alpha", e.name);
    const double beta = pick(o.beta, e.beta, e.free_exponents, "beta", e.name);
    const double g1 = pick(o.gamma1, e.g1, false, "gamma1", e.name);
    // ks keeps gamma2 = 0; dkv has both free
    const double g2 = pick(o.gamma2, e.g2, e.free_gammas && std::string(e.name) != "ks", "gamma2", e.name);
    const double g3 = pick(o.gamma3, e.g3, e.free_gammas, "gamma3", e.name);
    ModelPreset p{e.name, SymbolSpec(e.kind, alpha, beta, g1, g2, g3), e.description, e.n,
                  e.length, e.datum};
    return p;
  }
  std::ostringstream msg;
  msg << "unknown model '" << name << "'; available:";
  for (const auto& n : preset_names()) msg << ' ' << n;
  throw UnknownModelError(msg.str());
}

SpectralField gaussian_datum(const Grid& grid, double amplitude, double width, double center) {
  if (!(width > 0.0)) throw DomainError("datum width must be positive");
  std::vector<double> u(grid.n());
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double z = (grid.x(j) - center) / width;
    u[j] = amplitude * std::exp(-z * z);
  }
  return to_spectral(grid, u);
}

SpectralField wavelet_datum(const Grid& grid, double amplitude, double width) {
  if (!(width > 0.0)) throw DomainError("datum width must be positive");
  std::vector<double> u(grid.n());
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double z2 = grid.x(j) * grid.x(j) / (width * width);
    u[j] = amplitude * (1.0 - 2.0 * z2) * std::exp(-z2);
  }
  return to_spectral(grid, u);
}

SpectralField algebraic_datum(const Grid& grid, double amplitude, double kappa) {
  if (!(kappa > 0.0)) throw DomainError("kappa must be positive");
  std::vector<double> u(grid.n());
  for (std::size_t j = 0; j < u.size(); ++j)
    u[j] = amplitude * std::pow(1.0 + grid.x(j) * grid.x(j), -0.5 * kappa);
  return to_spectral(grid, u);
}

SpectralField random_band_limited(const Grid& grid, std::size_t max_mode, double amplitude,
                                  std::uint64_t seed) {
  if (max_mode >= grid.n() / 2) throw DomainError("max_mode must stay below the Nyquist mode");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<cplx> c(grid.n());
  c[0] = amplitude * normal(rng);
  for (std::size_t k = 1; k <= max_mode; ++k) {
    const double re = normal(rng), im = normal(rng);
    c[k] = amplitude * cplx(re, im);
    c[grid.n() - k] = std::conj(c[k]);
  }
  return SpectralField(grid, std::move(c));
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  if (const char* env = std::getenv("FRACWAVE_SEED")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return fallback;
}

}  // namespace fracwave
