#pragma once

#include <vector>

#include "dqlab/angular.hpp"
#include "dqlab/matcore.hpp"

namespace dqlab {

// Single-atom scenario parameters for the 2S1/2 <-> 2P1/2 reference
// transition. The basis ordering is (alpha0, alpha1, beta0, beta1):
// ground m = -1/2, +1/2, then excited m = -1/2, +1/2.
struct PhysParams {
  double omega_rabi = 1.0;   // Rabi angular frequency Omega = S|E|/(hbar sqrt 6)
  double omega = 96.0;       // transition angular frequency (E_P - E_S)/hbar
  double r = 0.0;            // dimensionless field ratio mu_B B0 / (hbar Omega)
  double theta = 0.0;        // field tilt angle from the polarization axis (rad)
  double g_s = 2.0;          // spin g-factor
  double hbar = 1.0;

  // Throws ValidationError on out-of-range values; returns true when the
  // perturbative-regime condition r << 1 holds (false means "warn").
  bool validate() const;
};

struct RabiAmplitudes {
  Complex alpha0, alpha1;  // ground m = -1/2, +1/2
  Complex beta0, beta1;    // excited m = -1/2, +1/2

  StateVector to_vector() const;
  static RabiAmplitudes from_vector(const StateVector& v);
  double norm_sq() const;
};

// Interaction-picture dipole Hamiltonian (hbar Omega / 2) times the block
// swap pattern.
ComplexMatrix h_int(const PhysParams& p);

// Bare Hamiltonian fixed so that exp(-i H0 t / hbar) carries e^{+i omega t/2}
// on the ground states: H0 = -(hbar omega / 2) diag(1, 1, -1, -1).
ComplexMatrix h_bare(const PhysParams& p);

// Zeeman term for the field ratio r at tilt theta (mu_B B0 = r hbar Omega).
ComplexMatrix h_zeeman(const PhysParams& p);

// Free evolution diag(e^{i omega t/2} I2, e^{-i omega t/2} I2).
ComplexMatrix u0(double t, const PhysParams& p);

// Field-free Schrodinger-picture evolution u0(t) exp(-i H_int t / hbar).
ComplexMatrix u_schrodinger(double t, const PhysParams& p);

// Evolution of H0 + H_B (the dipole-free evolution with field present).
ComplexMatrix u_prime(double t, const PhysParams& p);

// Full evolution u0(t) exp(-i (H_int + H_B) t / hbar); H_B is stationary in
// the interaction picture.
ComplexMatrix u_tot(double t, const PhysParams& p);

// Closed-form Rabi evolution of the amplitudes (r = 0).
RabiAmplitudes rabi_amplitudes(double t, const RabiAmplitudes& initial, const PhysParams& p);

// Fixed-step RK4 integration of the interaction-picture amplitude equations
// with detuning delta and a general n_g x n_e coupling block (energy units).
RabiAmplitudes integrate_odes(double t, const RabiAmplitudes& initial, const PhysParams& p,
                              double delta, const ComplexMatrix& coupling);

// Same integration, sampled on an increasing time grid starting at >= 0.
std::vector<RabiAmplitudes> integrate_odes_grid(const std::vector<double>& t_grid,
                                                const RabiAmplitudes& initial,
                                                const PhysParams& p, double delta,
                                                const ComplexMatrix& coupling);

// Degenerate Hadamard sequence U'(7pi/2w - pi/2W) U_tot(pi/2W) U'(3pi/2w),
// with the sequence's global phase of i removed so the r = 0 gate equals the
// block Hadamard exactly. The closing duration is used literally even when
// it comes out negative (omega > 7 Omega).
ComplexMatrix hadamard_gate(const PhysParams& p);

// The commensurability-limited sequence U0(3pi/2w) U(pi/2W) U0(3pi/2w);
// equals -i H only when omega/Omega is a multiple of 8, otherwise carries
// residual block phases e^{+-i delta}, delta = omega pi / (4 Omega).
ComplexMatrix naive_hadamard_gate(const PhysParams& p);

// The ideal degenerate Hadamard (block Hadamard on each m-pair).
ComplexMatrix ideal_hadamard();

// Taylor coefficients U^(k), k <= order <= 2, of the gate in the field ratio
// r at r = 0, by Richardson-extrapolated central finite differences.
std::vector<ComplexMatrix> taylor_expand_gate(const PhysParams& p, int order);

// Printed first- and second-order expansion matrices (per unit r), evaluated
// at the given parameters; used for entrywise comparison reports.
ComplexMatrix printed_first_order(const PhysParams& p);
ComplexMatrix printed_second_order(const PhysParams& p);

}  // namespace dqlab
