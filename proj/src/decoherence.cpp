#include "dqlab/decoherence.hpp"

#include <cmath>

#include "dqlab/angular.hpp"

namespace dqlab {

namespace {
constexpr Complex kI{0.0, 1.0};

// (flat index, coefficient) components of a degenerate Bell ket.
std::vector<std::pair<int, Complex>> components(const DegenerateBellState& s) {
  const Complex sg = static_cast<double>(s.sign);
  if (s.kind == BellKind::kPlus0011) {
    return {{0, s.a1 * s.b1},  {10, sg * s.a1 * s.b1}, {1, s.a1 * s.b2},
            {11, sg * s.a1 * s.b2}, {4, s.a2 * s.b1},  {14, sg * s.a2 * s.b1},
            {5, s.a2 * s.b2},  {15, sg * s.a2 * s.b2}};
  }
  return {{2, s.a1 * s.b1},  {8, sg * s.a1 * s.b1}, {3, s.a1 * s.b2},
          {9, sg * s.a1 * s.b2},  {6, s.a2 * s.b1}, {12, sg * s.a2 * s.b1},
          {7, s.a2 * s.b2},  {13, sg * s.a2 * s.b2}};
}

// Net Zeeman phase weight of flat product state m = 4i + j.
std::array<double, 16> product_weights() {
  const auto w = sublevel_phase_weights();
  std::array<double, 16> out{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) out[4 * i + j] = w[i] + w[j];
  }
  return out;
}

std::vector<ComplexMatrix> mc_dephase_impl(const StateVector& psi0,
                                           const std::vector<double>& weights,
                                           const DephasingParams& p) {
  p.validate();
  const double span = p.t_grid.back() - p.t_grid.front();
  const double dt_target = span > 0.0 ? span / p.n_steps : 0.0;
  if (dt_target * p.mu * p.mu * p.b0 * p.b0 > 0.01) {
    throw ConfigError("mc_dephase: n_steps too coarse for the noise strength");
  }
  const Eigen::Index dim = psi0.size();
  std::vector<ComplexMatrix> rho(p.t_grid.size(), ComplexMatrix::Zero(dim, dim));

  StateVector psi(dim);
  for (long traj = 0; traj < p.n_traj; ++traj) {
    SplitMix64 rng(SplitMix64::derive(p.seed, static_cast<std::uint64_t>(traj)));
    double field_integral = 0.0;  // int_0^t B(t') dt'
    double t_prev = p.t_grid.front();
    for (size_t g = 0; g < p.t_grid.size(); ++g) {
      const double seg = p.t_grid[g] - t_prev;
      if (seg > 0.0) {
        const long m = std::max<long>(1, std::lround(seg / dt_target));
        const double step_var = p.b0 * p.b0 * seg / m;
        const double step_sd = std::sqrt(step_var);
        for (long k = 0; k < m; ++k) field_integral += step_sd * rng.normal();
      }
      for (Eigen::Index n = 0; n < dim; ++n) {
        psi(n) = psi0(n) * std::exp(kI * (p.mu * weights[n] * field_integral));
      }
      rho[g].noalias() += psi * psi.adjoint();
      t_prev = p.t_grid[g];
    }
  }
  for (auto& r : rho) r /= static_cast<double>(p.n_traj);
  return rho;
}

}  // namespace

void DephasingParams::validate() const {
  if (t_grid.empty() || t_grid.front() != 0.0) {
    throw ValidationError("DephasingParams: time grid must start at 0");
  }
  for (size_t k = 1; k < t_grid.size(); ++k) {
    if (t_grid[k] <= t_grid[k - 1]) {
      throw ValidationError("DephasingParams: time grid must be strictly increasing");
    }
  }
  if (n_traj < 1) throw ValidationError("DephasingParams: n_traj must be >= 1");
  if (n_steps < 10) throw ValidationError("DephasingParams: n_steps must be >= 10");
}

void DegenerateBellState::validate() const {
  if (std::abs(std::norm(a1) + std::norm(a2) - 1.0) > 1e-12 ||
      std::abs(std::norm(b1) + std::norm(b2) - 1.0) > 1e-12) {
    throw ValidationError("DegenerateBellState: single-atom weights must be normalized");
  }
  if (sign != 1 && sign != -1) {
    throw ValidationError("DegenerateBellState: sign must be +-1");
  }
}

StateVector DegenerateBellState::ket() const {
  validate();
  StateVector psi = StateVector::Zero(16);
  for (const auto& [flat, coeff] : components(*this)) psi(flat) = coeff;
  psi /= std::sqrt(2.0);
  return psi;
}

double dephase_offdiagonal(const DephasingParams& p, double t) {
  if (t < 0.0) throw ValidationError("dephase_offdiagonal: t must be non-negative");
  return std::exp(-2.0 * p.mu * p.mu * p.b0 * p.b0 * t);
}

ComplexMatrix bell_density_matrix(const DephasingParams& p, double t, int sign) {
  if (sign != 1 && sign != -1) {
    throw ValidationError("bell_density_matrix: sign must be +-1");
  }
  const double decay = dephase_offdiagonal(p, t);
  ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
  rho(0, 0) = 0.5;
  rho(3, 3) = 0.5;
  rho(0, 3) = 0.5 * sign * decay;
  rho(3, 0) = 0.5 * sign * decay;
  return rho;
}

std::array<double, 4> sublevel_phase_weights() {
  const double gg = lande_factor(level_s_half(), 2.0);
  const double ge = lande_factor(level_p_half(), 2.0);
  return {-0.5 * gg, 0.5 * gg, -0.5 * ge, 0.5 * ge};
}

ComplexMatrix degenerate_dephased_state(const DegenerateBellState& state) {
  const auto comps = components(state);
  const auto weights = product_weights();
  ComplexMatrix rho = ComplexMatrix::Zero(16, 16);
  for (const auto& [m, cm] : comps) {
    for (const auto& [n, cn] : comps) {
      if (std::abs(weights[m] - weights[n]) < 1e-9) {
        rho(m, n) += 0.5 * cm * std::conj(cn);
      }
    }
  }
  return rho;
}

std::vector<ComplexMatrix> mc_dephase_bell(int sign, const DephasingParams& p) {
  if (sign != 1 && sign != -1) {
    throw ValidationError("mc_dephase_bell: sign must be +-1");
  }
  StateVector psi0 = StateVector::Zero(4);
  psi0(0) = 1.0 / std::sqrt(2.0);
  psi0(3) = sign / std::sqrt(2.0);
  // One unit of phase weight per excited atom; |11> gains the relative 2 phi.
  return mc_dephase_impl(psi0, {0.0, 1.0, 1.0, 2.0}, p);
}

std::vector<ComplexMatrix> mc_dephase(const DegenerateBellState& state,
                                      const DephasingParams& p) {
  const auto w = product_weights();
  return mc_dephase_impl(state.ket(), std::vector<double>(w.begin(), w.end()), p);
}

std::array<std::array<double, 2>, 2> level_measurement_stats(const ComplexMatrix& rho) {
  if (rho.rows() != rho.cols() || (rho.rows() != 4 && rho.rows() != 16)) {
    throw ValidationError("level_measurement_stats: expected a 4x4 or 16x16 density matrix");
  }
  if (std::abs(rho.trace().real() - 1.0) > 1e-10 || std::abs(rho.trace().imag()) > 1e-10) {
    throw ValidationError("level_measurement_stats: trace must be 1 within 1e-10");
  }
  std::array<std::array<double, 2>, 2> table{};
  if (rho.rows() == 16) {
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        table[i / 2][j / 2] += rho(4 * i + j, 4 * i + j).real();
      }
    }
  } else {
    for (int q1 = 0; q1 < 2; ++q1) {
      for (int q2 = 0; q2 < 2; ++q2) {
        table[q1][q2] += rho(2 * q1 + q2, 2 * q1 + q2).real();
      }
    }
  }
  return table;
}

}  // namespace dqlab
