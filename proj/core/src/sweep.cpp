#include "anisobec/sweep.hpp"

#include "anisobec/gpe3d.hpp"
#include "anisobec/grid.hpp"
#include "anisobec/regimes.hpp"
#include "anisobec/schmidt.hpp"
#include "anisobec/variational.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <thread>

namespace anisobec::bench {

std::vector<double> sweep_N_values(const RunConfig& cfg, double N_T) {
  if (!cfg.N_list.empty()) {
    // explicit lists are always absolute
    std::vector<double> out = cfg.N_list;
    std::sort(out.begin(), out.end());
    return out;
  }
  double lo = cfg.N_min, hi = cfg.N_max;
  if (!cfg.range_absolute) {
    lo *= N_T;
    hi *= N_T;
  }
  lo = std::max(lo, 2.0);
  std::vector<double> out;
  out.reserve(cfg.points);
  if (cfg.points == 1) {
    out.push_back(lo);
    return out;
  }
  const double step = std::log(hi / lo) / (cfg.points - 1);
  for (int i = 0; i < cfg.points; ++i)
    out.push_back(lo * std::exp(i * step));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

Grid grid_for(const RunConfig& cfg, const ScaledProblem& sp) {
  Grid g = Grid::make_default(sp);
  if (cfg.nx)
    g.nx = *cfg.nx;
  if (cfg.ny)
    g.ny = *cfg.ny;
  if (cfg.nz)
    g.nz = *cfg.nz;
  if (cfg.Lx)
    g.Lx = *cfg.Lx;
  if (cfg.Ly)
    g.Ly = *cfg.Ly;
  if (cfg.Lz)
    g.Lz = *cfg.Lz;
  g.validate(sp);
  return g;
}

} // namespace

SweepRow evaluate_point(const RunConfig& cfg, double N, double N_T,
                        Method method) {
  SweepRow row;
  row.N = N;
  row.N_over_NT = N / N_T;
  row.method = method;
  const ScaledProblem sp = cfg.problem(N).scaled();

  switch (method) {
  case Method::FormulaFirstOrder: {
    row.mu = schmidt::chemical_potential(sp, schmidt::MuMode::FirstOrder);
    const auto z = schmidt::rl_zero_order(sp);
    row.R_L = z.R_L0 * (1.0 + z.R_L1_over_R_L0);
    row.purity = schmidt::purity_first_order(sp);
    row.N_eta = schmidt::average_density(sp).N_eta_full * sp.a;
    break;
  }
  case Method::FormulaExactRL: {
    const auto m = schmidt::reduced_model(sp, 64);
    row.mu = m.mu_total;
    row.R_L = m.R_L;
    row.purity = m.purity;
    row.N_eta = N * m.eta * sp.a;
    break;
  }
  case Method::Variational: {
    const auto sol = sp.d == 1 ? variational::solve_quasi1d(sp)
                               : variational::solve_quasi2d(sp);
    const auto obs = variational::variational_observables(sol, N);
    row.mu = sol.mu_d;
    row.R_L = sol.R_dL;
    row.purity = obs.purity;
    row.N_eta = obs.N_eta * sp.a;
    break;
  }
  case Method::Solver3D: {
    const Grid g = grid_for(cfg, sp);
    const double cap_bytes = cfg.mem_cap_gib * (1024.0 * 1024.0 * 1024.0);
    if (static_cast<double>(g.estimated_bytes()) > cap_bytes)
      throw std::runtime_error(
          "solver-3d refused: estimated working set " +
          std::to_string(g.estimated_bytes() >> 20) + " MiB exceeds cap of " +
          std::to_string(cfg.mem_cap_gib) + " GiB");
    const auto state = gpe::relax_ground_state(sp, g, cfg.numerics);
    row.mu = state.mu;
    row.N_eta = gpe::average_density_of(state, g, N) * sp.a;
    const auto spectrum = gpe::schmidt_decompose(state, sp, g);
    row.purity = gpe::purity_of(spectrum).purity;
    break;
  }
  }
  return row;
}

std::vector<SweepRow> run_sweep(const RunConfig& cfg) {
  const double N_T =
      detail::upper_critical_N(cfg.problem(2.0).scaled());
  const std::vector<double> Ns = sweep_N_values(cfg, N_T);

  std::vector<Method> methods = cfg.methods;
  std::sort(methods.begin(), methods.end(),
            [](Method a, Method b) { return to_string(a) < to_string(b); });

  struct Task {
    double N;
    Method method;
  };
  std::vector<Task> tasks;
  for (double n : Ns)
    for (Method m : methods)
      tasks.push_back({n, m});

  std::vector<SweepRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size())
        return;
      const auto t0 = std::chrono::steady_clock::now();
      SweepRow& row = rows[i];
      try {
        row = evaluate_point(cfg, tasks[i].N, N_T, tasks[i].method);
      } catch (const std::exception& e) {
        row.N = tasks[i].N;
        row.N_over_NT = tasks[i].N / N_T;
        row.method = tasks[i].method;
        row.error = e.what();
      }
      row.runtime_s =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
    }
  };

  const int n_workers =
      std::min<std::size_t>(cfg.workers, tasks.size());
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n_workers; ++i)
      pool.emplace_back(worker);
    for (auto& th : pool)
      th.join();
  }
  // tasks were generated in (N asc, method name asc) order already; sort
  // defensively so the ordering contract survives refactors
  std::stable_sort(rows.begin(), rows.end());
  return rows;
}

namespace {
void emit(std::ostream& os, const std::optional<double>& v) {
  if (v)
    os << *v;
  else
    os << "null";
}
} // namespace

void write_csv(std::ostream& os, const RunConfig& cfg,
               const std::vector<SweepRow>& rows) {
  os << "# anisobec " << kVersion << " config_hash=0x" << std::hex
     << std::setw(16) << std::setfill('0') << cfg.hash() << std::dec
     << std::setfill(' ') << "\n";
  os << "N,N_over_NT,method,mu_over_hbar_omegaT,N_eta_rho0sq_a,purity,"
        "R_L_over_rho0,runtime_s,error\n";
  os << std::setprecision(12);
  for (const SweepRow& r : rows) {
    os << r.N << "," << r.N_over_NT << "," << to_string(r.method) << ",";
    emit(os, r.mu);
    os << ",";
    emit(os, r.N_eta);
    os << ",";
    emit(os, r.purity);
    os << ",";
    emit(os, r.R_L);
    os << "," << r.runtime_s << ",";
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    os << err << "\n";
  }
}

} // namespace anisobec::bench
