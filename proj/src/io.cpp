#include "fracwave/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "fracwave/errors.hpp"

namespace fracwave {

namespace {

std::ofstream open_out(const fs::path& path, std::ios::openmode mode = std::ios::out) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, mode);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
void put_le(std::ostream& out, T value) {
  static_assert(sizeof(T) == 8);
  std::uint64_t bits;
  std::memcpy(&bits, &value, 8);
  unsigned char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(bits >> (8 * i));
  out.write(reinterpret_cast<const char*>(bytes), 8);
}

template <class T>
T get_le(std::istream& in) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) throw DataError("truncated snapshot file");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  T value;
  std::memcpy(&value, &bits, 8);
  return value;
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_key_values(const fs::path& path, const KeyValues& records) {
  auto out = open_out(path);
  for (const auto& [k, v] : records) out << k << " = " << v << '\n';
}

KeyValues read_key_values(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path.string());
  KeyValues out;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

KeyValues spec_records(const SymbolSpec& spec) {
  return {{"kind", to_string(spec.kind())},
          {"alpha", format_double(spec.alpha())},
          {"beta", format_double(spec.beta())},
          {"gamma1", format_double(spec.gamma1())},
          {"gamma2", format_double(spec.gamma2())},
          {"gamma3", format_double(spec.gamma3())},
          {"gwp_eligible", spec.gwp_eligible() ? "true" : "false"},
          {"decay_exponent", decay_exponent(spec).to_string()}};
}

std::map<std::string, std::string> parse_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read config " + path.string());
  std::map<std::string, std::string> out;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw DataError("config line " + std::to_string(lineno) + ": bad section");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DataError("config line " + std::to_string(lineno) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw DataError("config line " + std::to_string(lineno) + ": empty key");
    if (!out.emplace(key, trim(line.substr(eq + 1))).second)
      throw DataError("config key '" + key + "' given twice");
  }
  return out;
}

void write_kernel_csv(const fs::path& path, const KernelProfile& profile, const SymbolSpec& spec) {
  auto out = open_out(path);
  out << "x,K,t,alpha,beta,kind,method\n";
  const auto t = format_double(profile.t), a = format_double(spec.alpha()),
             b = format_double(spec.beta()), kind = to_string(spec.kind());
  for (std::size_t i = 0; i < profile.xs.size(); ++i)
    out << format_double(profile.xs[i]) << ',' << format_double(profile.values[i]) << ',' << t
        << ',' << a << ',' << b << ',' << kind << ',' << profile.method << '\n';
}

void write_field_csv(const fs::path& path, const SpectralField& field) {
  auto out = open_out(path);
  out << "x,u\n";
  const auto u = to_physical(field);
  for (std::size_t j = 0; j < u.size(); ++j)
    out << format_double(field.grid().x(j)) << ',' << format_double(u[j]) << '\n';
}

void write_ledger_csv(const fs::path& path, const EnergyLedger& l) {
  auto out = open_out(path);
  out << "t,l2sq,hs,dxxinf,dxxint,residual,hdot1int\n";
  for (std::size_t i = 0; i < l.times.size(); ++i)
    out << format_double(l.times[i]) << ',' << format_double(l.l2_sq[i]) << ','
        << format_double(l.hs[i]) << ',' << format_double(l.dxx_inf[i]) << ','
        << format_double(l.dxx_inf_integral[i]) << ',' << format_double(l.identity_residual[i])
        << ',' << format_double(l.hdot1_sq_integral[i]) << '\n';
}

void write_decay_csv(const fs::path& path, const std::vector<DecayReport>& reports) {
  auto out = open_out(path);
  out << "t,kappa,n,wsup,fitexp\n";
  for (const auto& r : reports)
    out << format_double(r.t) << ',' << format_double(r.kappa) << ',' << r.n.to_string() << ','
        << format_double(r.weighted_sup) << ',' << format_double(r.fitted_exponent) << '\n';
}

void write_illposed_csv(const fs::path& path, const IllposednessReport& report) {
  auto out = open_out(path);
  out << "N,norm,predicted,fitted\n";
  for (std::size_t i = 0; i < report.ns.size(); ++i)
    out << report.ns[i] << ',' << format_double(report.norms[i]) << ','
        << format_double(report.predicted_exponent) << ','
        << format_double(report.fitted_exponent) << '\n';
}

void write_fwf1(const fs::path& path, const SpectralField& field) {
  auto out = open_out(path, std::ios::out | std::ios::binary);
  out.write("FWF1", 4);
  put_le<std::uint64_t>(out, field.grid().n());
  put_le<double>(out, field.grid().length());
  for (double v : to_physical(field)) put_le<double>(out, v);
  if (!out) throw DataError("failed writing " + path.string());
}

SpectralField read_fwf1(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "FWF1", 4) != 0)
    throw DataError(path.string() + " is not an FWF1 snapshot");
  const auto n = get_le<std::uint64_t>(in);
  const auto length = get_le<double>(in);
  if (n > (std::uint64_t{1} << 28)) throw DataError("snapshot size is implausible");
  Grid grid(static_cast<std::size_t>(n), length);
  std::vector<double> u(grid.n());
  for (auto& v : u) v = get_le<double>(in);
  return to_spectral(grid, u);
}

void save_trajectory(const fs::path& dir, const Trajectory& traj, const KeyValues& meta) {
  fs::create_directories(dir / "snapshots");
  KeyValues all = meta;
  all.emplace_back("snapshots", std::to_string(traj.states.size()));
  all.emplace_back("steps", std::to_string(traj.steps));
  all.emplace_back("halted", traj.halted ? "true" : "false");
  if (traj.halted) {
    all.emplace_back("halt_time", format_double(traj.halted->time));
    all.emplace_back("halt_reason", traj.halted->reason);
    all.emplace_back("halt_note", "threshold heuristic on ||u_xx||_inf, not a proof of blow-up");
  }
  write_key_values(dir / "meta.txt", all);
  auto out = open_out(dir / "times.csv");
  out << "index,t,monitor\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    out << i << ',' << format_double(traj.times[i]) << ',' << format_double(traj.monitor[i]) << '\n';
    char name[32];
    std::snprintf(name, sizeof name, "%06zu.fwf", i);
    write_fwf1(dir / "snapshots" / name, traj.states[i]);
  }
}

Trajectory load_trajectory(const fs::path& dir) {
  std::ifstream in(dir / "times.csv");
  if (!in) throw DataError("no trajectory at " + dir.string());
  Trajectory traj;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::istringstream row(line);
    std::string idx, t, mon;
    std::getline(row, idx, ',');
    std::getline(row, t, ',');
    std::getline(row, mon, ',');
    traj.times.push_back(std::stod(t));
    traj.monitor.push_back(std::stod(mon));
    char name[32];
    std::snprintf(name, sizeof name, "%06zu.fwf", static_cast<std::size_t>(std::stoul(idx)));
    traj.states.push_back(read_fwf1(dir / "snapshots" / name));
  }
  if (traj.states.empty()) throw DataError("trajectory at " + dir.string() + " is empty");
  for (const auto& [k, v] : read_key_values(dir / "meta.txt")) {
    if (k == "steps") traj.steps = std::stoul(v);
    if (k == "halt_time") {
      if (!traj.halted) traj.halted = HaltRecord{};
      traj.halted->time = std::stod(v);
    }
    if (k == "halt_reason") {
      if (!traj.halted) traj.halted = HaltRecord{};
      traj.halted->reason = v;
    }
  }
  return traj;
}

}  // namespace fracwave
