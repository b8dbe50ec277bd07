#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dqlab/matcore.hpp"
#include "dqlab/rng.hpp"
#include "dqlab/singleatom.hpp"

namespace dqlab {

struct FidelityReport {
  double closed_form = 0.0;
  double mc_estimate = 0.0;
  double mc_stderr = 0.0;
  long n_samples = 0;
  std::uint64_t seed = 0;
};

// Closed-form average gate fidelity (n + |Tr(target^dag actual)|^2)/(n(n+1)).
// Both inputs must be unitary within 1e-10.
double avg_fidelity_closed(const ComplexMatrix& target, const ComplexMatrix& actual, int n);

// Haar Monte Carlo estimate: averages |<psi| target^dag actual |psi>|^2 over
// normalized complex Gaussian vectors. Deterministic for a fixed seed.
std::pair<double, double> avg_fidelity_mc(const ComplexMatrix& target,
                                          const ComplexMatrix& actual, long n_samples,
                                          std::uint64_t seed = kDefaultSeed);

// Quadratic fidelity-loss coefficient c2 so that F ~ 1 - c2 r^2 for the
// degenerate Hadamard gate under a weak field (r = mu_B B0 / hbar Omega).
double fidelity_series_coefficient(double omega, double omega_rabi, double hbar = 1.0);

// Least-squares fit of 1 - F = c r^2 from gate evaluations at the given
// field ratios. Returns (c_hat, max relative residual). Requires >= 3
// distinct positive r values, all <= 0.03.
std::pair<double, double> fit_quadratic_loss(const PhysParams& p_base,
                                             const std::vector<double>& r_values,
                                             double theta);

}  // namespace dqlab
