#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fracwave/diagnostics.hpp"
#include "fracwave/errors.hpp"
#include "fracwave/evolve.hpp"
#include "fracwave/illposed.hpp"
#include "fracwave/io.hpp"
#include "fracwave/kernel.hpp"
#include "fracwave/models.hpp"

namespace fs = std::filesystem;
using namespace fracwave;

namespace {

struct UsageError : Error {
  using Error::Error;
};

constexpr double inf = std::numeric_limits<double>::infinity();

double parse_real(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(std::string("cannot read ") + what + " from '" + text + "'");
}

// --- model selection -------------------------------------------------------

struct ModelArgs {
  std::string model;
  std::string kind;
  std::optional<double> alpha, beta, gamma1, gamma2, gamma3;

  void attach(CLI::App* app) {
    app->add_option("--model", model, "catalog model (see list-models)");
    app->add_option("--kind", kind, "dispersion kind for a custom symbol: hilbert | laplacian");
    app->add_option("--alpha", alpha);
    app->add_option("--beta", beta);
    app->add_option("--gamma1", gamma1);
    app->add_option("--gamma2", gamma2);
    app->add_option("--gamma3", gamma3);
  }
};

struct Selection {
  SymbolSpec spec;
  std::optional<ModelPreset> preset;
  std::string name;
};

Selection select_model(const ModelArgs& a) {
  if (!a.model.empty()) {
    const auto p = preset(a.model, {a.alpha, a.beta, a.gamma1, a.gamma2, a.gamma3});
    if (!a.kind.empty() && parse_dispersion_kind(a.kind) != p.spec.kind())
      throw UsageError("--kind conflicts with model '" + a.model + "'");
    return {p.spec, p, p.name};
  }
  if (!a.alpha) throw UsageError("a model is required: pass --model NAME or --alpha/--beta/--kind");
  DispersionKind kind = DispersionKind::laplacian;
  if (!a.kind.empty()) {
    try {
      kind = parse_dispersion_kind(a.kind);
    } catch (const DataError& e) {
      throw UsageError(e.what());
    }
  }
  const SymbolSpec spec(kind, *a.alpha, a.beta.value_or(1.0), a.gamma1.value_or(0.0),
                        a.gamma2.value_or(0.0), a.gamma3.value_or(0.0));
  return {spec, std::nullopt, "custom"};
}

SymbolSpec spec_from_meta(const KeyValues& meta) {
  std::map<std::string, std::string> m(meta.begin(), meta.end());
  auto num = [&](const char* key) {
    const auto it = m.find(key);
    if (it == m.end()) throw DataError(std::string("trajectory meta lacks '") + key + "'");
    return std::stod(it->second);
  };
  if (!m.count("kind")) throw DataError("trajectory meta lacks 'kind'");
  return SymbolSpec(parse_dispersion_kind(m.at("kind")), num("alpha"), num("beta"), num("gamma1"),
                    num("gamma2"), num("gamma3"));
}

std::string meta_value(const KeyValues& meta, const std::string& key) {
  for (const auto& [k, v] : meta)
    if (k == key) return v;
  return {};
}

void finish(const fs::path& out, const KeyValues& summary) {
  write_key_values(out / "summary.txt", summary);
  for (const auto& [k, v] : summary) std::cout << k << " = " << v << '\n';
}

void append(KeyValues& to, const KeyValues& from) { to.insert(to.end(), from.begin(), from.end()); }

// --- commands --------------------------------------------------------------

struct Global {
  std::string config;
  std::string out = "fracwave_out";
  unsigned jobs = 0;
};

struct KernelArgs {
  ModelArgs model;
  double t = 1.0;
  double x_max = 300.0;
  std::size_t samples = 2001;
  double window_lo = 30.0, window_hi = 300.0;
  double tol = 1e-9;
};

int cmd_kernel(const Global& g, const KernelArgs& a) {
  const auto sel = select_model(a.model);
  if (!(a.t > 0.0)) throw UsageError("--t must be positive");
  if (a.samples < 3) throw UsageError("--samples must be at least 3");
  if (!(a.x_max > 0.0)) throw UsageError("--x-max must be positive");
  const fs::path out = g.out;
  fs::create_directories(out);

  std::vector<double> xs(a.samples);
  for (std::size_t i = 0; i < xs.size(); ++i)
    xs[i] = -a.x_max + 2.0 * a.x_max * static_cast<double>(i) / static_cast<double>(xs.size() - 1);
  const auto profile = kernel_profile(sel.spec, a.t, xs, a.tol, g.jobs);
  write_kernel_csv(out / "kernel.csv", profile, sel.spec);

  KernelProfile dprofile = profile;
  dprofile.method = "quadrature-dx";
  for (std::size_t i = 0; i < xs.size(); ++i)
    dprofile.values[i] = kernel_derivative_point(sel.spec, a.t, xs[i], a.tol);
  write_kernel_csv(out / "kernel_dx.csv", dprofile, sel.spec);

  KeyValues s{{"command", "kernel"}, {"model", sel.name}};
  append(s, spec_records(sel.spec));
  const auto n = decay_exponent(sel.spec);
  s.emplace_back("t", format_double(a.t));
  s.emplace_back("truncation", format_double(profile.truncation));
  s.emplace_back("predicted_n", n.to_string());
  s.emplace_back("window_lo", format_double(a.window_lo));
  s.emplace_back("window_hi", format_double(a.window_hi));
  try {
    const auto fit = decay_fit(profile, a.window_lo, a.window_hi);
    s.emplace_back("fit_status", "ok");
    s.emplace_back("exponent", format_double(fit.exponent));
    s.emplace_back("r_squared", format_double(fit.r_squared));
    s.emplace_back("samples", std::to_string(fit.samples));
    s.emplace_back("hit_floor", fit.hit_floor ? "true" : "false");
  } catch (const BelowFloorError&) {
    s.emplace_back("fit_status", "below-floor");
  } catch (const InsufficientSamplesError&) {
    s.emplace_back("fit_status", "insufficient-samples");
  }
  // smallest |x| beyond which every sample is below the floor
  double below = inf;
  for (std::size_t i = 0; i < xs.size() / 2; ++i) {
    const std::size_t j = xs.size() - 1 - i;
    if (std::abs(profile.values[i]) > kernel_floor || std::abs(profile.values[j]) > kernel_floor) break;
    below = std::abs(xs[i]);
  }
  s.emplace_back("below_floor_from", format_double(below));
  finish(out, s);
  return 0;
}

struct DatumArgs {
  std::string datum;
  double amplitude = std::numeric_limits<double>::quiet_NaN();
  double width = std::numeric_limits<double>::quiet_NaN();
  double kappa = 2.0;
  std::size_t max_mode = 32;

  void attach(CLI::App* app) {
    app->add_option("--datum", datum, "gaussian | wavelet | algebraic | random");
    app->add_option("--amplitude", amplitude);
    app->add_option("--width", width);
    app->add_option("--kappa", kappa, "algebraic decay rate of the datum");
    app->add_option("--max-mode", max_mode, "band limit of the random datum");
  }
};

struct SimulateArgs {
  ModelArgs model;
  DatumArgs datum;
  std::size_t n = 0;
  double length = 0.0;
  double dt = 1e-3;
  double t_end = 1.0;
  std::string integrator = "etdrk2";
  std::string threshold = "inf";
  int snapshot_every = 10;
  double s = 0.0;
};

int cmd_simulate(const Global& g, const SimulateArgs& a) {
  const auto sel = select_model(a.model);
  const std::size_t n = a.n ? a.n : (sel.preset ? sel.preset->grid_n : 1024);
  const double length = a.length > 0.0 ? a.length : (sel.preset ? sel.preset->grid_length : 200.0);
  const Grid grid(n, length);

  std::string family = a.datum.datum;
  if (family.empty()) family = sel.preset ? to_string(sel.preset->datum) : "gaussian";
  const double amp = std::isnan(a.datum.amplitude) ? (sel.preset ? sel.preset->amplitude : 0.1)
                                                   : a.datum.amplitude;
  const double width = std::isnan(a.datum.width) ? (sel.preset ? sel.preset->width : 1.0) : a.datum.width;
  std::optional<SpectralField> u0;
  double kappa = inf;
  if (family == "gaussian") {
    u0 = gaussian_datum(grid, amp, width);
  } else if (family == "wavelet") {
    u0 = wavelet_datum(grid, amp, width);
  } else if (family == "algebraic") {
    u0 = algebraic_datum(grid, amp, a.datum.kappa);
    kappa = a.datum.kappa;
  } else if (family == "random") {
    u0 = random_band_limited(grid, a.datum.max_mode, amp, seed_from_env());
  } else {
    throw UsageError("unknown datum '" + family + "'");
  }
  if (sel.spec.has_nonlinearity()) u0 = dealias(*u0);

  EvolveConfig cfg;
  cfg.dt = a.dt;
  cfg.t_end = a.t_end;
  try {
    cfg.integrator = parse_integrator(a.integrator);
  } catch (const DataError& e) {
    throw UsageError(e.what());
  }
  cfg.blowup_threshold = parse_real(a.threshold, "--threshold");
  cfg.snapshot_every = a.snapshot_every;
  const auto traj = run(*u0, sel.spec, cfg);

  const fs::path out = g.out;
  KeyValues meta{{"model", sel.name}};
  append(meta, spec_records(sel.spec));
  meta.emplace_back("n", std::to_string(n));
  meta.emplace_back("length", format_double(length));
  meta.emplace_back("datum", family);
  meta.emplace_back("amplitude", format_double(amp));
  meta.emplace_back("width", format_double(width));
  meta.emplace_back("kappa", format_double(kappa));
  meta.emplace_back("dt", format_double(cfg.dt));
  meta.emplace_back("t_end", format_double(cfg.t_end));
  meta.emplace_back("integrator", to_string(cfg.integrator));
  meta.emplace_back("threshold", format_double(cfg.blowup_threshold));
  save_trajectory(out / "trajectory", traj, meta);

  const auto ledger = build_ledger(traj, sel.spec, a.s);
  write_ledger_csv(out / "ledger.csv", ledger);
  write_field_csv(out / "final.csv", traj.states.back());

  const auto final_u = to_physical(traj.states.back());
  double sum = 0.0, sq = 0.0, worst = 0.0;
  for (double v : final_u) {
    sum += v;
    sq += v * v;
  }
  for (std::size_t i = 0; i < ledger.times.size(); ++i) {
    const double scale = energy_scale(traj.states[i]);
    if (scale > 0.0) worst = std::max(worst, ledger.identity_residual[i] / scale);
  }

  KeyValues s{{"command", "simulate"}};
  append(s, meta);
  s.emplace_back("steps", std::to_string(traj.steps));
  s.emplace_back("final_time", format_double(traj.times.back()));
  s.emplace_back("halted", traj.halted ? "true" : "false");
  if (traj.halted) {
    s.emplace_back("halt_time", format_double(traj.halted->time));
    s.emplace_back("halt_reason", traj.halted->reason);
  }
  s.emplace_back("monitor", format_double(traj.monitor.back()));
  s.emplace_back("l2_sq_final", format_double(ledger.l2_sq.back()));
  s.emplace_back("checksum_sum", format_double(sum * grid.dx()));
  s.emplace_back("checksum_l2sq", format_double(sq * grid.dx()));
  s.emplace_back("energy_residual_max", format_double(worst));
  finish(out, s);
  return 0;
}

struct TrajectoryArgs {
  std::string trajectory;
};

struct Loaded {
  Trajectory traj;
  KeyValues meta;
  SymbolSpec spec;
};

Loaded load(const std::string& dir) {
  if (dir.empty()) throw UsageError("--trajectory DIR is required");
  auto traj = load_trajectory(dir);
  auto meta = read_key_values(fs::path(dir) / "meta.txt");
  const auto spec = spec_from_meta(meta);
  return {std::move(traj), std::move(meta), spec};
}

struct DecayArgs {
  TrajectoryArgs src;
  std::string kappa;
  double window_fraction = 0.075;
};

int cmd_decay(const Global& g, const DecayArgs& a) {
  const auto in = load(a.src.trajectory);
  double kappa = inf;
  if (!a.kappa.empty()) {
    kappa = parse_real(a.kappa, "--kappa");
  } else if (const auto k = meta_value(in.meta, "kappa"); !k.empty()) {
    kappa = std::stod(k);
  }
  const auto n = decay_exponent(in.spec);
  std::vector<DecayReport> reports;
  for (std::size_t i = 0; i < in.traj.states.size(); ++i)
    reports.push_back(decay_track(in.traj.states[i], kappa, n, a.window_fraction, in.traj.times[i]));
  const fs::path out = g.out;
  fs::create_directories(out);
  write_decay_csv(out / "decay.csv", reports);

  const auto& last = reports.back();
  KeyValues s{{"command", "decay"}};
  append(s, spec_records(in.spec));
  s.emplace_back("t", format_double(last.t));
  s.emplace_back("kappa", format_double(kappa));
  s.emplace_back("n", n.to_string());
  s.emplace_back("weighted_sup", format_double(last.weighted_sup));
  s.emplace_back("fitted_exponent", format_double(last.fitted_exponent));
  s.emplace_back("r_squared", format_double(last.r_squared));
  s.emplace_back("samples", std::to_string(last.samples));
  finish(out, s);
  return 0;
}

struct ProfileArgs {
  TrajectoryArgs src;
  double t = -1.0;
  double x_lo = 40.0, x_hi = 150.0;
  double tol = 1e-11;
};

int cmd_profile(const Global& g, const ProfileArgs& a) {
  const auto in = load(a.src.trajectory);
  const double t = a.t < 0.0 ? in.traj.times.back() : a.t;
  const auto check = profile_verify(in.traj, in.spec, t, a.x_lo, a.x_hi, a.tol);
  const fs::path out = g.out;
  fs::create_directories(out);
  KeyValues s{{"command", "profile"}};
  append(s, spec_records(in.spec));
  s.emplace_back("t", format_double(t));
  s.emplace_back("x_lo", format_double(a.x_lo));
  s.emplace_back("x_hi", format_double(a.x_hi));
  s.emplace_back("coefficient", format_double(check.coefficient));
  s.emplace_back("ratio_error", format_double(check.ratio_error));
  s.emplace_back("samples", std::to_string(check.samples));
  finish(out, s);
  return 0;
}

struct EnergyArgs {
  TrajectoryArgs src;
  double s = 0.0;
  double t_ref = 0.0;
};

int cmd_energy(const Global& g, const EnergyArgs& a) {
  const auto in = load(a.src.trajectory);
  const auto ledger = build_ledger(in.traj, in.spec, a.s);
  const fs::path out = g.out;
  fs::create_directories(out);
  write_ledger_csv(out / "ledger.csv", ledger);
  double worst = 0.0;
  for (std::size_t i = 0; i < ledger.times.size(); ++i) {
    const double scale = energy_scale(in.traj.states[i]);
    if (scale > 0.0) worst = std::max(worst, ledger.identity_residual[i] / scale);
  }
  KeyValues s{{"command", "energy"}};
  append(s, spec_records(in.spec));
  s.emplace_back("energy_residual_max", format_double(worst));
  s.emplace_back("monitor", format_double(blowup_monitor(ledger)));
  if (in.spec.gwp_eligible()) {
    std::size_t ref = 0;
    while (ref + 1 < ledger.times.size() && ledger.times[ref] < a.t_ref) ++ref;
    const auto gwp = gwp_bound_check(ledger, in.spec, ref);
    s.emplace_back("gwp_rate", format_double(gwp.rate));
    s.emplace_back("gwp_margin", format_double(gwp.margin));
    s.emplace_back("gwp_pass", gwp.pass ? "true" : "false");
  } else {
    s.emplace_back("gwp_pass", "not-applicable");
  }
  finish(out, s);
  return 0;
}

struct IllposedArgs {
  ModelArgs model;
  std::optional<double> s;
  double t = 0.1;
  std::string ns = "64,128,256,512,1024";
  double r = 1.0;
  int quad_points = 64;
  int xi_points = 4096;
};

std::vector<int> parse_ns(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("bad --ns entry '" + item + "'");
    }
  }
  if (out.size() < 2) throw UsageError("--ns needs at least two comma-separated values");
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] < 64) throw UsageError("--ns values must be >= 64");
    if (i > 0 && out[i] <= out[i - 1]) throw UsageError("--ns values must be strictly increasing");
  }
  return out;
}

int cmd_illposed(const Global& g, const IllposedArgs& a) {
  const auto sel = select_model(a.model);
  if (!a.s) throw UsageError("--s is required");
  const auto ns = parse_ns(a.ns);
  IllposedOptions opts;
  opts.r = a.r;
  opts.quad_points = a.quad_points;
  opts.xi_points = a.xi_points;
  opts.jobs = g.jobs;
  const auto report = illposedness_scan(sel.spec, *a.s, a.t, ns, opts);
  const fs::path out = g.out;
  fs::create_directories(out);
  write_illposed_csv(out / "illposed.csv", report);
  KeyValues s{{"command", "illposed"}, {"model", sel.name}};
  append(s, spec_records(sel.spec));
  s.emplace_back("s", format_double(*a.s));
  s.emplace_back("t", format_double(a.t));
  s.emplace_back("predicted_exponent", format_double(report.predicted_exponent));
  s.emplace_back("fitted_exponent", format_double(report.fitted_exponent));
  s.emplace_back("r_squared", format_double(report.r_squared));
  finish(out, s);
  return 0;
}

int cmd_list_models() {
  for (const auto& name : preset_names()) {
    const auto p = preset(name);
    std::printf("%-7s %-9s alpha=%-4g beta=%-4g gamma=(%g,%g,%g)  n=%-8s %s\n", name.c_str(),
                to_string(p.spec.kind()).c_str(), p.spec.alpha(), p.spec.beta(), p.spec.gamma1(),
                p.spec.gamma2(), p.spec.gamma3(), decay_exponent(p.spec).to_string().c_str(),
                p.description.c_str());
  }
  return 0;
}

// Values from --config fill every option the command line left unset.
void apply_config(CLI::App& app, CLI::App* sub, const std::string& path) {
  for (const auto& [raw, value] : parse_config(path)) {
    std::string key = raw;
    for (auto& c : key)
      if (c == '_') c = '-';
    CLI::Option* opt = sub ? sub->get_option_no_throw("--" + key) : nullptr;
    if (!opt) opt = app.get_option_no_throw("--" + key);
    if (!opt) throw UsageError("config key '" + raw + "' is not an option of this command");
    if (opt->count() > 0) continue;
    opt->add_result(value);
    opt->run_callback();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fracwave: kernels, simulation and diagnostics for dispersive-dissipative equations"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--config", g.config, "key = value file; flags override it");
  app.add_option("--out", g.out, "output directory");
  app.add_option("--jobs", g.jobs, "worker threads for sweeps (0 = all cores)");

  KernelArgs ka;
  auto* kernel = app.add_subcommand("kernel", "sample the kernel and fit its decay");
  ka.model.attach(kernel);
  kernel->add_option("--t", ka.t);
  kernel->add_option("--x-max", ka.x_max);
  kernel->add_option("--samples", ka.samples);
  kernel->add_option("--window-lo", ka.window_lo);
  kernel->add_option("--window-hi", ka.window_hi);
  kernel->add_option("--tol", ka.tol);

  SimulateArgs sa;
  auto* simulate = app.add_subcommand("simulate", "evolve a datum and write the trajectory");
  sa.model.attach(simulate);
  sa.datum.attach(simulate);
  simulate->add_option("--n", sa.n, "grid points (power of two)");
  simulate->add_option("--length", sa.length, "period");
  simulate->add_option("--dt", sa.dt);
  simulate->add_option("--t-end", sa.t_end);
  simulate->add_option("--integrator", sa.integrator, "etdrk2 | picard");
  simulate->add_option("--threshold", sa.threshold, "halt once ||u_xx||_inf exceeds this");
  simulate->add_option("--snapshot-every", sa.snapshot_every);
  simulate->add_option("--s", sa.s, "Sobolev index recorded in the ledger");

  DecayArgs da;
  auto* decay = app.add_subcommand("decay", "weighted decay of saved snapshots");
  decay->add_option("--trajectory", da.src.trajectory);
  decay->add_option("--kappa", da.kappa, "datum decay rate (default from the trajectory)");
  decay->add_option("--window-fraction", da.window_fraction);

  ProfileArgs pa;
  auto* profile = app.add_subcommand("profile", "compare the far field with A(t) K(t,x)");
  profile->add_option("--trajectory", pa.src.trajectory);
  profile->add_option("--t", pa.t, "snapshot time (default last)");
  profile->add_option("--x-lo", pa.x_lo);
  profile->add_option("--x-hi", pa.x_hi);
  profile->add_option("--tol", pa.tol);

  EnergyArgs ea;
  auto* energy = app.add_subcommand("energy", "energy ledger and global bound audit");
  energy->add_option("--trajectory", ea.src.trajectory);
  energy->add_option("--s", ea.s);
  energy->add_option("--t-ref", ea.t_ref);

  IllposedArgs ia;
  auto* illposed = app.add_subcommand("illposed", "growth of the second derivative of the flow");
  ia.model.attach(illposed);
  illposed->add_option("--s", ia.s);
  illposed->add_option("--t", ia.t);
  illposed->add_option("--ns", ia.ns, "comma-separated band scales");
  illposed->add_option("--r", ia.r);
  illposed->add_option("--quad-points", ia.quad_points);
  illposed->add_option("--xi-points", ia.xi_points);

  auto* list = app.add_subcommand("list-models", "print the model catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    CLI::App* active = nullptr;
    for (auto* sub : app.get_subcommands()) active = sub;
    if (!g.config.empty()) apply_config(app, active, g.config);
    if (active == kernel) return cmd_kernel(g, ka);
    if (active == simulate) return cmd_simulate(g, sa);
    if (active == decay) return cmd_decay(g, da);
    if (active == profile) return cmd_profile(g, pa);
    if (active == energy) return cmd_energy(g, ea);
    if (active == illposed) return cmd_illposed(g, ia);
    if (active == list) return cmd_list_models();
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const UnknownModelError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 4;
  } catch (const Error& e) {
    // data, precondition and not-implemented
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
}
