#pragma once

#include "anisobec/config.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace anisobec::bench {

inline constexpr const char* kVersion = "0.1.0";

/// One (N, method) result. Missing observables stay unset and are emitted
/// as explicit nulls in the CSV.
struct SweepRow {
  double N = 0;
  double N_over_NT = 0;
  Method method = Method::FormulaFirstOrder;
  std::optional<double> mu;     // hbar omega_T
  std::optional<double> N_eta;  // (rho0^2 a)^{-1}
  std::optional<double> purity;
  std::optional<double> R_L;    // rho0
  double runtime_s = 0;
  std::string error; // empty on success; failures do not abort the sweep

  bool operator<(const SweepRow& o) const {
    if (N != o.N)
      return N < o.N;
    return to_string(method) < to_string(o.method);
  }
};

/// N values of the sweep axis, absolute. Log-spaced ranges in N_T units
/// are scaled by N_T and clipped below at 2.
std::vector<double> sweep_N_values(const RunConfig& cfg, double N_T);

/// Evaluate one point with one method. Throws on failure (the sweep
/// driver catches and records).
SweepRow evaluate_point(const RunConfig& cfg, double N, double N_T,
                        Method method);

/// Run all (N, method) combinations, up to cfg.workers concurrently. Rows
/// come back sorted by (N, method name) regardless of completion order.
std::vector<SweepRow> run_sweep(const RunConfig& cfg);

/// Stable CSV schema:
///   # anisobec <version> config_hash=0x<16 hex digits>
///   N,N_over_NT,method,mu_over_hbar_omegaT,N_eta_rho0sq_a,purity,
///   R_L_over_rho0,runtime_s,error
/// (header on one line). Missing observables are the literal `null`.
void write_csv(std::ostream& os, const RunConfig& cfg,
               const std::vector<SweepRow>& rows);

} // namespace anisobec::bench
