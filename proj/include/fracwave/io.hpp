#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fracwave/diagnostics.hpp"
#include "fracwave/evolve.hpp"
#include "fracwave/illposed.hpp"
#include "fracwave/kernel.hpp"
#include "fracwave/spectral.hpp"

namespace fracwave {

namespace fs = std::filesystem;

/// %.17g
std::string format_double(double value);

/// Ordered `key = value` records.
using KeyValues = std::vector<std::pair<std::string, std::string>>;
void write_key_values(const fs::path& path, const KeyValues& records);
KeyValues read_key_values(const fs::path& path);
KeyValues spec_records(const SymbolSpec& spec);

/// Flat config: `key = value` lines under optional `[section]` headers; '#'
/// starts a comment. Keys are returned without the section prefix; a key
/// repeated in two sections is an error.
std::map<std::string, std::string> parse_config(const fs::path& path);

void write_kernel_csv(const fs::path& path, const KernelProfile& profile, const SymbolSpec& spec);
void write_field_csv(const fs::path& path, const SpectralField& field);
void write_ledger_csv(const fs::path& path, const EnergyLedger& ledger);
void write_decay_csv(const fs::path& path, const std::vector<DecayReport>& reports);
void write_illposed_csv(const fs::path& path, const IllposednessReport& report);

/// Binary snapshot: "FWF1", n (u64 LE), L (f64 LE), n samples (f64 LE).
void write_fwf1(const fs::path& path, const SpectralField& field);
SpectralField read_fwf1(const fs::path& path);

/// Directory with meta.txt, times.csv and snapshots/NNNNNN.fwf.
void save_trajectory(const fs::path& dir, const Trajectory& traj, const KeyValues& meta);
Trajectory load_trajectory(const fs::path& dir);

}  // namespace fracwave
