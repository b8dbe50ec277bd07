#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "dqlab/matcore.hpp"
#include "dqlab/rng.hpp"

namespace dqlab {

// Gaussian white-noise dephasing parameters. B(t) has correlator
// B0^2 delta(t' - t''), so mu^2 B0^2 carries units of 1/time.
struct DephasingParams {
  double mu = 1.0;                // effective moment
  double b0 = 1.0;                // noise strength
  std::vector<double> t_grid;     // strictly increasing, starts at 0
  long n_traj = 1;
  long n_steps = 100;             // steps per trajectory across the grid span
  std::uint64_t seed = kDefaultSeed;

  void validate() const;
};

enum class BellKind { kPlus0011, kPlus0110 };

// A product of single-atom superpositions entangled blockwise:
// a1, a2 weight the first atom's degenerate pair, b1, b2 the second's.
struct DegenerateBellState {
  BellKind kind = BellKind::kPlus0011;
  Complex a1{1.0}, a2{0.0}, b1{1.0}, b2{0.0};
  int sign = +1;  // relative sign between the two level components

  void validate() const;
  // Normalized 16-dimensional ket in the flat 4i+j basis.
  StateVector ket() const;
};

// Analytic off-diagonal decay exp(-2 mu^2 B0^2 t).
double dephase_offdiagonal(const DephasingParams& p, double t);

// 4x4 density matrix of (|00> +- |11>)/sqrt(2) dephased for time t
// (unit trace; the printed matrix is trace 2 and is halved here).
ComplexMatrix bell_density_matrix(const DephasingParams& p, double t, int sign);

// Infinite-time dephased mixture of a degenerate Bell state: coherences
// survive only between components with equal net Zeeman phase weight.
ComplexMatrix degenerate_dephased_state(const DegenerateBellState& state);

// Per-sublevel phase weights g_j m_j for (ground -1/2, +1/2, excited -1/2,
// +1/2) with g(2S1/2) = 2, g(2P1/2) = 2/3.
std::array<double, 4> sublevel_phase_weights();

// White-noise Monte Carlo dephasing of a two-qubit Bell state (4x4 output
// per grid time). Deterministic per seed.
std::vector<ComplexMatrix> mc_dephase_bell(int sign, const DephasingParams& p);

// Same for a 16-dimensional degenerate Bell state.
std::vector<ComplexMatrix> mc_dephase(const DegenerateBellState& state,
                                      const DephasingParams& p);

// 2x2 joint level-outcome probabilities [gg, ge; eg, ee] coarse-grained from
// a 4x4 (two-qubit) or 16x16 (two-degenerate-atom) density matrix.
std::array<std::array<double, 2>, 2> level_measurement_stats(const ComplexMatrix& rho);

}  // namespace dqlab
