#include "dqlab/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace dqlab {

double avg_fidelity_closed(const ComplexMatrix& target, const ComplexMatrix& actual, int n) {
  if (target.rows() != n || actual.rows() != n) {
    throw ValidationError("avg_fidelity_closed: dimension mismatch");
  }
  if (!is_unitary(target) || !is_unitary(actual)) {
    throw ValidationError("avg_fidelity_closed: inputs must be unitary within 1e-10");
  }
  const Complex tr = (target.adjoint() * actual).trace();
  return (n + std::norm(tr)) / (n * (n + 1.0));
}

std::pair<double, double> avg_fidelity_mc(const ComplexMatrix& target,
                                          const ComplexMatrix& actual, long n_samples,
                                          std::uint64_t seed) {
  if (n_samples < 1000) {
    throw ValidationError("avg_fidelity_mc: need at least 1000 samples");
  }
  if (!is_unitary(target) || !is_unitary(actual)) {
    throw ValidationError("avg_fidelity_mc: inputs must be unitary within 1e-10");
  }
  const Eigen::Index n = target.rows();
  const ComplexMatrix m = target.adjoint() * actual;
  SplitMix64 rng(SplitMix64::derive(seed, 0));
  double sum = 0.0;
  double sum_sq = 0.0;
  StateVector psi(n);
  for (long k = 0; k < n_samples; ++k) {
    for (Eigen::Index i = 0; i < n; ++i) psi(i) = Complex(rng.normal(), rng.normal());
    psi /= psi.norm();
    const double f = std::norm(Complex(psi.adjoint() * (m * psi)));
    sum += f;
    sum_sq += f * f;
  }
  const double mean = sum / n_samples;
  const double sample_var =
      std::max(0.0, sum_sq - n_samples * mean * mean) / (n_samples - 1);
  return {mean, std::sqrt(sample_var / n_samples)};
}

double fidelity_series_coefficient(double omega, double omega_rabi, double hbar) {
  if (omega <= 0.0 || omega_rabi <= 0.0) {
    throw ValidationError("fidelity_series_coefficient: frequencies must be positive");
  }
  using std::numbers::pi;
  const double wo = hbar * omega / 2.0;
  const double ro = hbar * omega_rabi / 2.0;
  return (458.0 * pi * pi * ro * ro + 2.0 * (20.0 - 7.0 * pi) * pi * ro * wo +
          (8.0 - 4.0 * pi + pi * pi) * wo * wo) /
         (180.0 * wo * wo);
}

std::pair<double, double> fit_quadratic_loss(const PhysParams& p_base,
                                             const std::vector<double>& r_values,
                                             double theta) {
  std::set<double> distinct;
  for (double r : r_values) {
    if (r <= 0.0 || r > 0.03) {
      throw ValidationError("fit_quadratic_loss: r values must be in (0, 0.03]");
    }
    distinct.insert(r);
  }
  if (distinct.size() < 3) {
    throw ValidationError("fit_quadratic_loss: need at least 3 distinct r values");
  }
  const ComplexMatrix ideal = ideal_hadamard();
  double sxx = 0.0, sxy = 0.0;
  std::vector<std::pair<double, double>> points;
  for (double r : r_values) {
    PhysParams p = p_base;
    p.r = r;
    p.theta = theta;
    const double f = avg_fidelity_closed(ideal, hadamard_gate(p), 4);
    const double x = r * r;
    const double y = 1.0 - f;
    points.emplace_back(x, y);
    sxx += x * x;
    sxy += x * y;
  }
  const double c_hat = sxy / sxx;
  double max_rel = 0.0;
  for (const auto& [x, y] : points) {
    max_rel = std::max(max_rel, std::abs(y - c_hat * x) / std::abs(c_hat * x));
  }
  return {c_hat, max_rel};
}

}  // namespace dqlab
