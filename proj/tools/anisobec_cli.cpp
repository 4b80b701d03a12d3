// anisobec command line front end.
//
// Subcommands:
//   scales        derived length scales, critical atom numbers, regime
//   sweep         N-sweep across methods, CSV out
//   ground-state  3D ground state, binary field file + JSON sidecar
//   verify        check a field file (norm, reflection symmetry)
//
// Exit codes: 0 success, 2 config error, 3 numerical failure.

#include "anisobec/config.hpp"
#include "anisobec/field_io.hpp"
#include "anisobec/gpe3d.hpp"
#include "anisobec/regimes.hpp"
#include "anisobec/schmidt.hpp"
#include "anisobec/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace anisobec;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os)
    throw bench::ConfigError("cannot open output file " + path);
  return os;
}

int cmd_scales(const bench::RunConfig& cfg, const std::string& out_path) {
  ProblemSpec spec = cfg.problem(2.0);
  const double N_T = detail::upper_critical_N(spec.scaled());
  spec.atom_number = cfg.ground_state_N > 1.0 ? cfg.ground_state_N : N_T;
  const RegimeReport rep = classify(spec);

  const double um = 1e6;
  std::cout << "trap: d=" << cfg.trap.d
            << "  omega_T/2pi=" << cfg.trap.omega_T / (2 * std::numbers::pi)
            << " Hz  omega_L/2pi=" << cfg.trap.omega_L / (2 * std::numbers::pi)
            << " Hz\n";
  std::cout << "rho0      = " << rep.rho0 * um << " um\n";
  std::cout << "r0        = " << rep.r0 * um << " um\n";
  std::cout << "N_L       = " << rep.N_L << "\n";
  std::cout << "N_T       = " << rep.N_T << "\n";
  std::cout << "epsilon(N=" << spec.atom_number << ") = " << rep.epsilon
            << "\n";
  std::cout << "bare aspect ratio rho0:r0      = 1:" << rep.r0 / rep.rho0
            << "\n";
  std::cout << "TF aspect at N_T  rho0:R_L0    = 1:"
            << rep.R_L0_at_NT / rep.rho0 << "\n";
  std::cout << "regime    = " << to_string(rep.regime_label) << "\n";

  if (!out_path.empty()) {
    auto os = open_out(out_path);
    os << "# anisobec " << bench::kVersion << "\n";
    os << "rho0_m,r0_m,N_L,N_T,epsilon,R_L0_m,R_L0_at_NT_m,aspect_at_NT,"
          "regime\n";
    os.precision(12);
    os << rep.rho0 << "," << rep.r0 << "," << rep.N_L << "," << rep.N_T << ","
       << rep.epsilon << "," << rep.R_L0 << "," << rep.R_L0_at_NT << ","
       << rep.R_L0_at_NT / rep.rho0 << "," << to_string(rep.regime_label)
       << "\n";
  }
  return 0;
}

int cmd_sweep(const bench::RunConfig& cfg, const std::string& out_path) {
  const auto rows = bench::run_sweep(cfg);
  if (out_path.empty()) {
    bench::write_csv(std::cout, cfg, rows);
  } else {
    auto os = open_out(out_path);
    bench::write_csv(os, cfg, rows);
  }
  bool any_failed = false;
  for (const auto& r : rows)
    if (!r.error.empty()) {
      std::cerr << "row N=" << r.N << " method=" << to_string(r.method)
                << " failed: " << r.error << "\n";
      any_failed = true;
    }
  return any_failed ? kExitNumerical : 0;
}

int cmd_ground_state(const bench::RunConfig& cfg, double N_flag,
                     const std::string& out_prefix) {
  double N = N_flag > 0.0 ? N_flag : cfg.ground_state_N;
  if (!(N >= 1.0))
    throw bench::ConfigError(
        "ground-state: give N >= 1 via --N or [ground_state] N");
  const ScaledProblem sp = cfg.problem(N).scaled();
  Grid grid = Grid::make_default(sp);
  if (cfg.nx)
    grid.nx = *cfg.nx;
  if (cfg.ny)
    grid.ny = *cfg.ny;
  if (cfg.nz)
    grid.nz = *cfg.nz;
  if (cfg.Lx)
    grid.Lx = *cfg.Lx;
  if (cfg.Ly)
    grid.Ly = *cfg.Ly;
  if (cfg.Lz)
    grid.Lz = *cfg.Lz;
  grid.validate(sp);
  const double cap = cfg.mem_cap_gib * (1024.0 * 1024.0 * 1024.0);
  if (static_cast<double>(grid.estimated_bytes()) > cap)
    throw bench::ConfigError("grid working set exceeds the memory cap");

  const auto state = gpe::relax_ground_state(sp, grid, cfg.numerics);
  const auto spectrum = gpe::schmidt_decompose(state, sp, grid);
  const auto purity = gpe::purity_of(spectrum);

  const std::string prefix =
      out_prefix.empty() ? std::string("ground_state") : out_prefix;
  io::write_field(prefix + ".field", grid, state.psi, cfg.hash());

  nlohmann::json sidecar{
      {"version", bench::kVersion},
      {"config_hash", cfg.hash()},
      {"N", N},
      {"mu_over_hbar_omegaT", state.mu},
      {"energy_parts",
       {{"kinetic_T", state.energy_parts.kinetic_T},
        {"kinetic_L", state.energy_parts.kinetic_L},
        {"potential_T", state.energy_parts.potential_T},
        {"potential_L", state.energy_parts.potential_L},
        {"interaction", state.energy_parts.interaction},
        {"total", state.energy_parts.total()}}},
      {"purity", purity.purity},
      {"lambda1", purity.lambda1_estimate},
      {"iterations", state.iterations},
      {"residual", state.residual},
      {"converged", state.converged},
      {"grid",
       {{"nx", grid.nx},
        {"ny", grid.ny},
        {"nz", grid.nz},
        {"Lx", grid.Lx},
        {"Ly", grid.Ly},
        {"Lz", grid.Lz}}},
  };
  {
    auto os = open_out(prefix + ".json");
    os << sidecar.dump(2) << "\n";
  }
  std::cout << "wrote " << prefix << ".field and " << prefix << ".json (mu="
            << state.mu << ", purity=" << purity.purity << ")\n";
  return 0;
}

int cmd_verify(const std::string& field_path) {
  const auto file = io::read_field(field_path);
  const auto rep = io::verify_field(file);
  std::cout << "grid " << file.grid.nx << "x" << file.grid.ny << "x"
            << file.grid.nz << ", box " << file.grid.Lx << " x " << file.grid.Ly
            << " x " << file.grid.Lz << "\n";
  std::cout << "norm          = " << rep.norm << "\n";
  std::cout << "max asymmetry = " << rep.max_asymmetry << "\n";
  std::cout << (rep.ok ? "OK" : "FAILED") << "\n";
  return rep.ok ? 0 : kExitNumerical;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"anisotropic BEC reduced-dimensionality bench"};
  app.require_subcommand(1);

  std::string config_path, out_path, field_path;
  int workers = 0;
  double mem_cap = 0.0;
  double gs_N = 0.0;

  const auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* c = sub->add_option("--config", config_path, "config file path");
    if (config_required)
      c->required();
    sub->add_option("--out", out_path, "output path (CSV or file prefix)");
    sub->add_option("--workers", workers, "max concurrent sweep points");
    sub->add_option("--mem-cap", mem_cap, "solver memory cap [GiB]");
  };

  auto* scales = app.add_subcommand("scales", "derived scales and regime");
  add_common(scales, true);
  auto* sweep = app.add_subcommand("sweep", "N-sweep across methods, CSV");
  add_common(sweep, true);
  auto* ground =
      app.add_subcommand("ground-state", "3D ground state field + sidecar");
  add_common(ground, true);
  ground->add_option("--N", gs_N, "atom number (overrides [ground_state] N)");
  auto* verify = app.add_subcommand("verify", "check a field file");
  verify->add_option("path", field_path, "field file to verify")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (verify->parsed())
      return cmd_verify(field_path);

    bench::RunConfig cfg = bench::parse_config_file(config_path);
    if (workers > 0)
      cfg.workers = workers;
    if (mem_cap > 0.0)
      cfg.mem_cap_gib = mem_cap;

    if (scales->parsed())
      return cmd_scales(cfg, out_path);
    if (sweep->parsed())
      return cmd_sweep(cfg, out_path);
    if (ground->parsed())
      return cmd_ground_state(cfg, gs_N, out_path);
  } catch (const bench::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
