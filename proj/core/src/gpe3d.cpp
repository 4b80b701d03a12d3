#include "anisobec/gpe3d.hpp"

#include "anisobec/schmidt.hpp"

#include <fftw3.h>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace anisobec::gpe {

using std::numbers::pi;

namespace {

std::vector<double> wavenumbers(int n, double halfwidth) {
  std::vector<double> k(n);
  const double dk = pi / halfwidth; // 2 pi / (2 L)
  for (int i = 0; i < n; ++i)
    k[i] = dk * (i <= n / 2 ? i : i - n);
  return k;
}

/// Trap potential at a grid point. Tight axes are harmonic at omega_T = 1;
/// loose axes carry (1/2) k |r|^q.
struct Potential {
  const ScaledProblem& sp;
  const Grid& g;

  double operator()(int i, int j, int kk) const {
    const double x = g.x(i), y = g.y(j), z = g.z(kk);
    if (sp.d == 1)
      return 0.5 * (x * x + y * y) +
             0.5 * sp.k * std::pow(std::abs(z), sp.q);
    return 0.5 * z * z +
           0.5 * sp.k * std::pow(std::hypot(x, y), sp.q);
  }
};

/// FFTW r2c/c2r workspace bound to one grid.
class Spectral {
public:
  explicit Spectral(const Grid& g)
      : g_(g), n_(g.size()),
        nspec_(static_cast<std::size_t>(g.nx) * g.ny * (g.nz / 2 + 1)),
        real_(fftw_alloc_real(n_)),
        spec_(fftw_alloc_complex(nspec_)),
        kx_(wavenumbers(g.nx, g.Lx)), ky_(wavenumbers(g.ny, g.Ly)),
        kz_(wavenumbers(g.nz, g.Lz)) {
    fwd_ = fftw_plan_dft_r2c_3d(g.nx, g.ny, g.nz, real_, spec_,
                                FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_c2r_3d(g.nx, g.ny, g.nz, spec_, real_,
                                FFTW_ESTIMATE);
  }
  ~Spectral() {
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(real_);
    fftw_free(spec_);
  }
  Spectral(const Spectral&) = delete;
  Spectral& operator=(const Spectral&) = delete;

  double* real() { return real_; }
  std::size_t size() const { return n_; }

  /// In-place half-kinetic step exp(-dt k^2 / 2) on real_.
  void kinetic_step(double dt) {
    fftw_execute(fwd_);
    const int nzc = g_.nz / 2 + 1;
    std::vector<double> ex(g_.nx), ey(g_.ny), ez(nzc);
    for (int i = 0; i < g_.nx; ++i)
      ex[i] = std::exp(-0.5 * dt * kx_[i] * kx_[i]);
    for (int j = 0; j < g_.ny; ++j)
      ey[j] = std::exp(-0.5 * dt * ky_[j] * ky_[j]);
    for (int kk = 0; kk < nzc; ++kk)
      ez[kk] = std::exp(-0.5 * dt * kz_[kk] * kz_[kk]);
    const double inv_n = 1.0 / static_cast<double>(n_);
    std::size_t idx = 0;
    for (int i = 0; i < g_.nx; ++i)
      for (int j = 0; j < g_.ny; ++j) {
        const double exy = ex[i] * ey[j] * inv_n;
        for (int kk = 0; kk < nzc; ++kk, ++idx) {
          const double f = exy * ez[kk];
          spec_[idx][0] *= f;
          spec_[idx][1] *= f;
        }
      }
    fftw_execute(bwd_);
  }

  /// int |grad_axis psi|^2 for one axis (0 = x, 1 = y, 2 = z) via
  /// Parseval on the r2c spectrum of the field currently in real_.
  /// Leaves the spectrum in spec_.
  double grad_norm_sq(int axis) {
    fftw_execute(fwd_);
    const int nzc = g_.nz / 2 + 1;
    double acc = 0.0;
    std::size_t idx = 0;
    for (int i = 0; i < g_.nx; ++i)
      for (int j = 0; j < g_.ny; ++j)
        for (int kk = 0; kk < nzc; ++kk, ++idx) {
          const double k2 = axis == 0   ? kx_[i] * kx_[i]
                            : axis == 1 ? ky_[j] * ky_[j]
                                        : kz_[kk] * kz_[kk];
          // conjugate-symmetric half: double all kz except 0 and Nyquist
          const double w = (kk == 0 || kk == g_.nz / 2) ? 1.0 : 2.0;
          acc += w * k2 *
                 (spec_[idx][0] * spec_[idx][0] +
                  spec_[idx][1] * spec_[idx][1]);
        }
    // Parseval with the unnormalized DFT: sum_x |dpsi|^2 = (1/N) sum_k
    // k^2 |psi_k|^2
    return acc * g_.cell_volume() / static_cast<double>(n_);
  }

  /// Replace real_ with -1/2 laplacian of real_ (spectral).
  void apply_half_laplacian() {
    fftw_execute(fwd_);
    const int nzc = g_.nz / 2 + 1;
    const double inv_n = 1.0 / static_cast<double>(n_);
    std::size_t idx = 0;
    for (int i = 0; i < g_.nx; ++i)
      for (int j = 0; j < g_.ny; ++j)
        for (int kk = 0; kk < nzc; ++kk, ++idx) {
          const double k2 = kx_[i] * kx_[i] + ky_[j] * ky_[j] +
                            kz_[kk] * kz_[kk];
          const double f = 0.5 * k2 * inv_n;
          spec_[idx][0] *= f;
          spec_[idx][1] *= f;
        }
    fftw_execute(bwd_);
  }

private:
  const Grid& g_;
  std::size_t n_;
  std::size_t nspec_;
  double* real_;
  fftw_complex* spec_;
  std::vector<double> kx_, ky_, kz_;
  fftw_plan fwd_, bwd_;
};

double norm_of(std::span<const double> psi, const Grid& g) {
  double s = 0.0;
  for (double v : psi)
    s += v * v;
  return std::sqrt(s * g.cell_volume());
}

} // namespace

EnergyParts energy_parts_of(std::span<const double> psi,
                            const ScaledProblem& sp, const Grid& grid) {
  Spectral ws(grid);
  EnergyParts parts;
  std::copy(psi.begin(), psi.end(), ws.real());
  const double gx = ws.grad_norm_sq(0);
  std::copy(psi.begin(), psi.end(), ws.real());
  const double gy = ws.grad_norm_sq(1);
  std::copy(psi.begin(), psi.end(), ws.real());
  const double gz = ws.grad_norm_sq(2);
  if (sp.d == 1) {
    parts.kinetic_T = 0.5 * (gx + gy);
    parts.kinetic_L = 0.5 * gz;
  } else {
    parts.kinetic_T = 0.5 * gz;
    parts.kinetic_L = 0.5 * (gx + gy);
  }
  const Potential V{sp, grid};
  const double dV = grid.cell_volume();
  const double gt = sp.g_tilde();
  double pot_T = 0, pot_L = 0, inter = 0;
  std::size_t idx = 0;
  for (int i = 0; i < grid.nx; ++i)
    for (int j = 0; j < grid.ny; ++j)
      for (int kk = 0; kk < grid.nz; ++kk, ++idx) {
        const double p2 = psi[idx] * psi[idx];
        const double x = grid.x(i), y = grid.y(j), z = grid.z(kk);
        double vt, vl;
        if (sp.d == 1) {
          vt = 0.5 * (x * x + y * y);
          vl = 0.5 * sp.k * std::pow(std::abs(z), sp.q);
        } else {
          vt = 0.5 * z * z;
          vl = 0.5 * sp.k * std::pow(std::hypot(x, y), sp.q);
        }
        pot_T += vt * p2;
        pot_L += vl * p2;
        inter += p2 * p2;
      }
  parts.potential_T = pot_T * dV;
  parts.potential_L = pot_L * dV;
  parts.interaction = 0.5 * gt * inter * dV;
  return parts;
}

double gp_energy(std::span<const double> psi, const ScaledProblem& sp,
                 const Grid& grid) {
  return energy_parts_of(psi, sp, grid).total();
}

GroundState relax_ground_state(const ScaledProblem& sp, const Grid& grid,
                               const Numerics& numerics) {
  grid.validate(sp);
  const std::size_t n = grid.size();
  Spectral ws(grid);
  double* psi = ws.real();

  // initial state: the assembled first-order separable approximation when
  // interactions are on (close to the minimum, so the slow longitudinal
  // modes need little relaxation), else the bare-trap Gaussian product
  bool seeded = false;
  if (sp.N > 1.0) {
    try {
      const auto guess = schmidt::assemble_wavefunction(sp, grid);
      std::copy(guess.begin(), guess.end(), psi);
      seeded = true;
    } catch (const std::exception&) {
      // fall through to the Gaussian product
    }
  }
  if (!seeded) {
    std::size_t idx = 0;
    for (int i = 0; i < grid.nx; ++i)
      for (int j = 0; j < grid.ny; ++j)
        for (int kk = 0; kk < grid.nz; ++kk, ++idx) {
          const double x = grid.x(i), y = grid.y(j), z = grid.z(kk);
          double trans2, long2;
          if (sp.d == 1) {
            trans2 = x * x + y * y;
            long2 = z * z;
          } else {
            trans2 = z * z;
            long2 = x * x + y * y;
          }
          psi[idx] = std::exp(-0.5 * trans2 -
                              0.5 * long2 / (sp.r0 * sp.r0));
        }
    const double nrm = norm_of({psi, n}, grid);
    for (std::size_t m = 0; m < n; ++m)
      psi[m] /= nrm;
  }

  // precompute trap potential
  std::vector<double> V(n);
  {
    const Potential pot{sp, grid};
    std::size_t idx = 0;
    for (int i = 0; i < grid.nx; ++i)
      for (int j = 0; j < grid.ny; ++j)
        for (int kk = 0; kk < grid.nz; ++kk, ++idx)
          V[idx] = pot(i, j, kk);
  }

  struct Stage {
    double dt;
    double tol;
    long iters; // 0 = until converged
  };
  std::vector<Stage> stages;
  if (numerics.fixed_iters > 0) {
    stages.push_back({numerics.dt, 0.0, numerics.fixed_iters});
  } else {
    if (numerics.coarse_stages) {
      const double coarse_dt = std::max(4.0 * numerics.dt, 0.1);
      stages.push_back({coarse_dt, 100.0 * numerics.tol, 0});
    }
    stages.push_back({numerics.dt, numerics.tol, 0});
  }

  const double gt = sp.g_tilde();
  GroundState out;
  long total_iters = 0;
  double mu_est = 0.0, residual = 1.0;
  bool converged = false;

  for (const Stage& stage : stages) {
    const double dt = stage.dt;
    // sample mu once per unit imaginary time for the drift test
    const long block = std::max(1L, std::lround(1.0 / dt));
    double mu_mark = 0.0;
    bool have_mark = false;
    converged = false;
    for (long it = 0;; ++it) {
      if (stage.iters > 0 && it >= stage.iters) {
        converged = true;
        break;
      }
      if (stage.iters == 0 && total_iters >= numerics.max_iters)
        break;
      ws.kinetic_step(0.5 * dt);
      // the mid-step field is not normalized; rescale the density in the
      // nonlinear term or the effective coupling picks up an O(dt) bias
      double mid = 0.0;
      for (std::size_t m = 0; m < n; ++m)
        mid += psi[m] * psi[m];
      const double gt_eff = gt / (mid * grid.cell_volume());
      for (std::size_t m = 0; m < n; ++m)
        psi[m] *= std::exp(-dt * (V[m] + gt_eff * psi[m] * psi[m]));
      ws.kinetic_step(0.5 * dt);
      const double nrm = norm_of({psi, n}, grid);
      if (!std::isfinite(nrm) || nrm == 0.0)
        throw std::runtime_error(
            "relax_ground_state: field became non-finite; reduce dt");
      const double inv = 1.0 / nrm;
      for (std::size_t m = 0; m < n; ++m)
        psi[m] *= inv;
      ++total_iters;
      mu_est = -std::log(nrm) / dt;
      if ((it + 1) % block == 0) {
        if (have_mark) {
          const double span = static_cast<double>(block) * dt;
          residual =
              std::abs(mu_est - mu_mark) / (std::abs(mu_est) * span);
          if (stage.iters == 0 && residual < stage.tol) {
            converged = true;
            break;
          }
        }
        mu_mark = mu_est;
        have_mark = true;
      }
    }
    if (!converged && stage.iters == 0) {
      std::ostringstream msg;
      msg << "relax_ground_state: no convergence after " << total_iters
          << " iterations (residual " << residual << ", tol " << stage.tol
          << " at dt " << stage.dt << ")";
      throw std::runtime_error(msg.str());
    }
  }

  // ground state is nodeless; fix the global sign
  double mass = 0.0;
  for (std::size_t m = 0; m < n; ++m)
    mass += psi[m];
  if (mass < 0.0)
    for (std::size_t m = 0; m < n; ++m)
      psi[m] = -psi[m];

  out.psi.assign(psi, psi + n);
  out.energy_parts = energy_parts_of(out.psi, sp, grid);
  out.mu = out.energy_parts.total() + out.energy_parts.interaction;
  out.residual = residual;
  out.iterations = total_iters;
  out.converged = converged;
  return out;
}

double chemical_potential_of(const GroundState& state,
                             const ScaledProblem& sp, const Grid& grid) {
  Spectral ws(grid);
  std::copy(state.psi.begin(), state.psi.end(), ws.real());
  ws.apply_half_laplacian(); // real_ now holds -1/2 lap psi
  const Potential V{sp, grid};
  const double gt = sp.g_tilde();
  double acc = 0.0;
  std::size_t idx = 0;
  for (int i = 0; i < grid.nx; ++i)
    for (int j = 0; j < grid.ny; ++j)
      for (int kk = 0; kk < grid.nz; ++kk, ++idx) {
        const double p = state.psi[idx];
        acc += p * (ws.real()[idx] + V(i, j, kk) * p + gt * p * p * p);
      }
  return acc * grid.cell_volume();
}

double average_density_of(const GroundState& state, const Grid& grid,
                          double N) {
  double acc = 0.0;
  for (double p : state.psi)
    acc += p * p * p * p;
  return N * acc * grid.cell_volume();
}

SchmidtSpectrum schmidt_decompose(const GroundState& state,
                                  const ScaledProblem& sp, const Grid& grid,
                                  int max_modes) {
  const double w_xy = grid.dx() * grid.dy();
  const double w_z = grid.dz();
  // rows: transverse points, cols: longitudinal points
  Eigen::MatrixXd A;
  long n_trans, n_long;
  if (sp.d == 1) {
    n_trans = static_cast<long>(grid.nx) * grid.ny;
    n_long = grid.nz;
    A.resize(n_trans, n_long);
    for (long t = 0; t < n_trans; ++t)
      for (long l = 0; l < n_long; ++l)
        A(t, l) = state.psi[t * n_long + l];
    A *= std::sqrt(w_xy * w_z);
  } else {
    n_trans = grid.nz;
    n_long = static_cast<long>(grid.nx) * grid.ny;
    A.resize(n_trans, n_long);
    for (long l = 0; l < n_long; ++l)
      for (long t = 0; t < n_trans; ++t)
        A(t, l) = state.psi[l * n_trans + t];
    A *= std::sqrt(w_xy * w_z);
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU |
                                            Eigen::ComputeThinV);
  const auto& s = svd.singularValues();

  SchmidtSpectrum spec;
  spec.lambdas.resize(s.size());
  for (long m = 0; m < s.size(); ++m)
    spec.lambdas[m] = s[m] * s[m];

  const double w_trans = sp.d == 1 ? w_xy : w_z;
  const double w_long = sp.d == 1 ? w_z : w_xy;
  const int keep = std::min<long>(max_modes, s.size());
  for (int m = 0; m < keep; ++m) {
    std::vector<double> chi(n_trans), phi(n_long);
    for (long t = 0; t < n_trans; ++t)
      chi[t] = svd.matrixU()(t, m) / std::sqrt(w_trans);
    for (long l = 0; l < n_long; ++l)
      phi[l] = svd.matrixV()(l, m) / std::sqrt(w_long);
    spec.chi_modes.push_back(std::move(chi));
    spec.phi_modes.push_back(std::move(phi));
  }
  return spec;
}

PurityReport purity_of(const SchmidtSpectrum& spectrum) {
  PurityReport rep;
  double p = 0.0;
  for (double l : spectrum.lambdas)
    p += l * l;
  rep.purity = p;
  rep.lambda1_estimate =
      spectrum.lambdas.size() > 1 ? spectrum.lambdas[1] : 0.0;
  return rep;
}

} // namespace anisobec::gpe
