#pragma once

#include <array>

#include "dqlab/matcore.hpp"

namespace dqlab {

// Two identical degenerate atoms; product basis |alpha_i beta_j> with flat
// index m = 4i + j, i and j running over (ground -1/2, ground +1/2,
// excited -1/2, excited +1/2).
struct TwoAtomModel {
  double omega = 1.0;     // transition frequency (rad/time)
  Complex h = 1.0;        // exchange coupling h_{2,8} = ... = h_{7,13} (energy)
  double hbar = 1.0;

  double omega_prime() const { return std::abs(h) / hbar; }
};

struct ProductBasisIndex {
  int i = 0;
  int j = 0;

  int flat() const { return 4 * i + j; }
  static ProductBasisIndex from_flat(int m);
};

struct CZDiagnostics {
  Complex c;            // cos-type amplitude from the evolution
  Complex d;            // exchange amplitude
  double theta = 0.0;   // e^{i theta} = |c| + i |d|
  double offdiag_max = 0.0;
  Complex phase;        // the e^{4 i theta} diagonal entry of U5
};

// Flat indices coupled by the exchange interaction.
inline constexpr std::array<int, 8> kCoupledIndices = {2, 3, 6, 7, 8, 9, 12, 13};

// Post-RWA interaction matrix: h at (2,8), (3,9), (6,12), (7,13), mirrored
// conjugates, zero elsewhere.
ComplexMatrix build_vab_interaction(const TwoAtomModel& model);

// Projector onto the coupled subspace (identity on kCoupledIndices).
ComplexMatrix coupled_projector();

// Closed-form evolution I - D + cos(W't) D - i sin(W't) V / (hbar W').
// Falls back to the identity when |h| = 0.
ComplexMatrix u_ab_closed(double t, const TwoAtomModel& model);

// Single-atom Hamiltonian (hbar omega/2) diag(1, 1, -1, -1) and the full
// two-atom Hamiltonian H_A x I + I x H_B + V_AB.
ComplexMatrix h_single(const TwoAtomModel& model);
ComplexMatrix h_two_atom(const TwoAtomModel& model);

// The local 4x4 gates used by the CZ construction.
struct LocalGateSet {
  ComplexMatrix p1, p2, p3, p4, p5, p6, s, h, z;
  double theta = 0.0;
};

// Builds the gate set for evolution amplitudes (c, d) with |c|^2 + |d|^2 = 1.
// theta = atan2(|d|, |c|); when d = 0 the d-dependent phases default to 1.
LocalGateSet local_gate_library(Complex c, Complex d);

struct CZSequenceResult {
  ComplexMatrix u5;
  CZDiagnostics diag;
};

// Applies the local-gate sequence U2 -> U3 -> U4 -> U5 to a 16x16 evolution
// with amplitudes (c, d) and returns U5 plus diagnostics.
CZSequenceResult cz_sequence(const ComplexMatrix& u, Complex c, Complex d);

// Reads (c, d) off the matrix entries of a u_ab_closed-shaped evolution.
std::pair<Complex, Complex> extract_cd(const ComplexMatrix& u);

struct CZTimingReport {
  double t_star = 0.0;     // smallest t > 0 with |c(t)| = |d(t)| (W't = pi/4)
  double t_literal = 0.0;  // root of the printed condition tan^2(W't) = W'^2 hbar^2
  double discrepancy = 0.0;
};

CZTimingReport solve_cz_time(const TwoAtomModel& model);

}  // namespace dqlab
