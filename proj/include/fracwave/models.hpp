#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fracwave/spectral.hpp"
#include "fracwave/symbols.hpp"

namespace fracwave {

enum class DatumFamily { gaussian, wavelet, band_pair };
std::string to_string(DatumFamily family);

struct ModelPreset {
  std::string name;
  SymbolSpec spec;
  std::string description;  // which physical model the preset stands for
  std::size_t grid_n = 1024;
  double grid_length = 200.0;
  DatumFamily datum = DatumFamily::gaussian;
  double amplitude = 0.1;
  double width = 1.0;
};

/// Optional overrides; presets with fixed parameters reject conflicting ones.
struct PresetOverrides {
  std::optional<double> alpha, beta, gamma1, gamma2, gamma3;
};

/// Throws UnknownModelError (listing the catalog) for unknown names.
ModelPreset preset(const std::string& name, const PresetOverrides& overrides = {});
std::vector<std::string> preset_names();

// Initial data on a grid. Each returns the spectral field of the samples.
SpectralField gaussian_datum(const Grid& grid, double amplitude, double width, double center = 0.0);
/// (1 - 2x^2/w^2) exp(-x^2/w^2): zero mean and zero first moment.
SpectralField wavelet_datum(const Grid& grid, double amplitude, double width);
/// amplitude (1 + x^2)^{-kappa/2}.
SpectralField algebraic_datum(const Grid& grid, double amplitude, double kappa);
/// Random real field with modes |k| <= max_mode, unit-free amplitude scale.
SpectralField random_band_limited(const Grid& grid, std::size_t max_mode, double amplitude,
                                  std::uint64_t seed);

/// Seed from FRACWAVE_SEED, or `fallback` when unset.
std::uint64_t seed_from_env(std::uint64_t fallback = 20240601);

}  // namespace fracwave
