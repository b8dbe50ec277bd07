// Acceptance gate for the dqlab library. Each criterion prints exactly one
// PASS/FAIL line; the process exits 0 only when every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "dqlab/angular.hpp"
#include "dqlab/decoherence.hpp"
#include "dqlab/fidelity.hpp"
#include "dqlab/matcore.hpp"
#include "dqlab/rng.hpp"
#include "dqlab/scenario.hpp"
#include "dqlab/singleatom.hpp"
#include "dqlab/twoatom.hpp"

#include "oracles.hpp"

using namespace dqlab;
using std::numbers::pi;

namespace {

constexpr Complex kI{0.0, 1.0};

bool criterion_rabi_closed_form() {
  PhysParams p;
  const ComplexMatrix coupling = p.hbar * p.omega_rabi * ComplexMatrix::Identity(2, 2);
  const RabiAmplitudes start{1.0, 0.0, 0.0, 0.0};
  double max_err = 0.0;
  const int n = 200;
  for (int k = 0; k <= n; ++k) {
    const double t = 8.0 * pi / p.omega_rabi * k / n;
    const double got = std::norm(integrate_odes(t, start, p, 0.0, coupling).beta0);
    const double want = std::pow(std::sin(p.omega_rabi * t / 2.0), 2);
    max_err = std::max(max_err, std::abs(got - want));
  }
  return max_err <= 1e-8;
}

bool criterion_selection_rules() {
  DipoleScenario s{level_s_half(), level_p_half()};
  s.line_strength_s = 2.3;
  s.e_magnitude = 1.7;
  const ComplexMatrix omega = dipole_coupling_matrix(s);
  const double want = s.line_strength_s * s.e_magnitude / std::sqrt(6.0);
  double err = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double target = i == j ? want : 0.0;
      err = std::max(err, std::abs(std::abs(omega(i, j)) - target));
    }
  }
  return err < 1e-14 * want;
}

bool criterion_hadamard_identity() {
  PhysParams p;
  const ComplexMatrix ideal = ideal_hadamard();
  SplitMix64 rng(321);
  for (int k = 0; k < 20; ++k) {
    p.omega = 2.0 + 198.0 * rng.uniform();
    if (phase_distance(hadamard_gate(p), ideal) > 1e-10) return false;
  }
  // The naive sequence only works on omega/Omega multiples of 8.
  for (double ratio : {8.0, 16.0, 96.0}) {
    p.omega = ratio;
    if (phase_distance(naive_hadamard_gate(p), ideal) > 1e-10) return false;
  }
  for (double ratio : {10.0, 7.0, 13.5}) {
    p.omega = ratio;
    const ComplexMatrix naive = naive_hadamard_gate(p);
    if (phase_distance(naive, ideal) < 0.1) return false;
    // Residual block phases e^{+-i delta}, delta = omega pi / (4 Omega).
    const double delta = ratio * pi / (4.0 * p.omega_rabi);
    const Complex up = std::exp(kI * delta);
    ComplexMatrix want = ComplexMatrix::Zero(4, 4);
    const double inv = 1.0 / std::sqrt(2.0);
    want(0, 0) = want(1, 1) = want(0, 2) = want(1, 3) = up * inv;
    want(2, 0) = want(3, 1) = std::conj(up) * inv;
    want(2, 2) = want(3, 3) = -std::conj(up) * inv;
    want *= -kI;
    if ((naive - want).cwiseAbs().maxCoeff() > 1e-10) return false;
  }
  return true;
}

bool criterion_zeeman() {
  const AngularLevel g = level_s_half();
  const AngularLevel e = level_p_half();
  if (std::abs(lande_factor(g, 2.0) - 2.0) > 1e-14) return false;
  if (std::abs(lande_factor(e, 2.0) - 2.0 / 3.0) > 1e-14) return false;

  const double b0 = 1.0;
  ComplexMatrix want0 = ComplexMatrix::Zero(4, 4);
  want0(0, 0) = -b0 / 2.0;
  want0(1, 1) = b0 / 2.0;
  want0(2, 2) = -b0 / 6.0;
  want0(3, 3) = b0 / 6.0;
  if ((zeeman_matrix(g, e, b0, 0.0, 2.0, 1.0) - want0).cwiseAbs().maxCoeff() > 1e-14)
    return false;

  ComplexMatrix want90 = ComplexMatrix::Zero(4, 4);
  want90(0, 1) = want90(1, 0) = b0 / 2.0;
  want90(2, 3) = want90(3, 2) = b0 / 6.0;
  return (zeeman_matrix(g, e, b0, pi / 2.0, 2.0, 1.0) - want90).cwiseAbs().maxCoeff() <=
         1e-14;
}

bool criterion_perturbation_series() {
  PhysParams p;
  bool printed_match = true;
  for (double theta : {0.0, pi / 3.0}) {
    p.theta = theta;
    const auto coeffs = taylor_expand_gate(p, 2);
    if ((coeffs[0] - ideal_hadamard()).cwiseAbs().maxCoeff() > 1e-10) return false;

    // Residual after the second order must shrink like r^3.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const std::vector<double> rs = {1e-3, 2e-3, 5e-3, 1e-2, 2e-2, 3e-2};
    for (double r : rs) {
      PhysParams q = p;
      q.r = r;
      const double resid =
          (hadamard_gate(q) - coeffs[0] - r * coeffs[1] - r * r * coeffs[2]).norm();
      const double x = std::log(r), y = std::log(resid);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double n = static_cast<double>(rs.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    if (std::abs(slope - 3.0) > 0.2) return false;

    // Entrywise comparison against the printed expansion matrices is
    // reported output only; record the outcome without failing on it.
    const ComplexMatrix p1 = printed_first_order(p);
    printed_match = printed_match &&
                    (coeffs[1] - p1).cwiseAbs().maxCoeff() / p1.cwiseAbs().maxCoeff() < 1e-5;
    if (theta == 0.0) {
      const ComplexMatrix p2 = printed_second_order(p);
      printed_match =
          printed_match &&
          (coeffs[2] - p2).cwiseAbs().maxCoeff() / p2.cwiseAbs().maxCoeff() < 1e-5;
    }
  }
  std::printf("      (printed first/second order comparison at 1e-5 relative: %s)\n",
              printed_match ? "agrees" : "deviates");
  return true;
}

bool criterion_fidelity_law() {
  PhysParams p;  // omega/Omega = 96 by default
  const double c2 = fidelity_series_coefficient(p.omega, p.omega_rabi, p.hbar);
  const auto [c_hat, resid] =
      fit_quadratic_loss(p, {1e-3, 2e-3, 5e-3, 1e-2, 2e-2, 3e-2}, 0.0);
  (void)resid;
  return std::abs(c_hat - c2) / c2 < 0.005;
}

bool criterion_haar_oracle() {
  SplitMix64 rng(777);
  for (int k = 0; k < 20; ++k) {
    const ComplexMatrix a = oracle::random_unitary(4, rng);
    const ComplexMatrix b = oracle::random_unitary(4, rng);
    const double closed = avg_fidelity_closed(a, b, 4);
    const auto [f, se] = avg_fidelity_mc(a, b, 200000, 5000 + k);
    if (std::abs(f - closed) > 4.0 * se) return false;
  }
  for (int k = 0; k < 3; ++k) {
    const ComplexMatrix a = oracle::random_unitary(2, rng);
    const ComplexMatrix b = oracle::random_unitary(2, rng);
    if (std::abs(oracle::bloch_avg_fidelity(a, b) - avg_fidelity_closed(a, b, 2)) > 1e-6)
      return false;
  }
  return true;
}

bool criterion_two_atom() {
  SplitMix64 rng(911);
  for (int k = 0; k < 50; ++k) {
    TwoAtomModel model;
    model.h = std::polar(0.2 + 2.0 * rng.uniform(), 2.0 * pi * rng.uniform());
    const double t = 5.0 * rng.uniform();
    const ComplexMatrix u = u_ab_closed(t, model);
    const ComplexMatrix want =
        oracle::expm_taylor(build_vab_interaction(model), t, model.hbar);
    if ((u - want).norm() > 1e-10) return false;
  }

  TwoAtomModel model;
  model.h = std::polar(1.3, 0.9);
  const double w = model.omega_prime();
  for (double wt : {0.3, pi / 6.0, pi / 4.0}) {
    const ComplexMatrix u = u_ab_closed(wt / w, model);
    const auto [c, d] = extract_cd(u);
    const auto res = cz_sequence(u, c, d);
    if (res.diag.offdiag_max > 1e-10) return false;
    const Complex want = std::exp(4.0 * kI * res.diag.theta);
    for (int m = 0; m < 16; ++m) {
      const bool both_excited = (m / 4 >= 2) && (m % 4 >= 2);
      if (std::abs(res.u5(m, m) - (both_excited ? want : Complex(1.0))) > 1e-10)
        return false;
    }
    if (wt == pi / 4.0 && std::abs(res.diag.phase + 1.0) > 1e-10) return false;
  }
  return true;
}

bool criterion_dephasing() {
  DephasingParams p;
  p.t_grid = {0.0, 0.5};  // mu^2 B0^2 t = 0.5 at the second point
  p.n_traj = 100000;
  p.n_steps = 100;
  const auto rhos = mc_dephase_bell(1, p);
  const double mc = 2.0 * std::abs(rhos[1](0, 3));
  if (std::abs(mc - std::exp(-1.0)) / std::exp(-1.0) > 0.02) return false;

  DegenerateBellState s;
  s.kind = BellKind::kPlus0110;
  const double inv = 1.0 / std::sqrt(2.0);
  s.a1 = s.b1 = inv;
  s.a2 = s.b2 = inv;
  const StateVector psi = s.ket();
  const auto pure = level_measurement_stats(ComplexMatrix(psi * psi.adjoint()));
  const auto mixed = level_measurement_stats(degenerate_dephased_state(s));
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (std::abs(pure[i][j] - mixed[i][j]) > 1e-14) return false;
    }
  }
  return true;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool criterion_determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "dqlab_acceptance";
  std::filesystem::create_directories(dir);
  bool ok = true;
  const std::pair<ScenarioCommand, const char*> runs[] = {
      {ScenarioCommand::kFidelitySweep,
       "{\"params\": {\"mc_samples\": 2000, \"r_values\": [0.001, 0.003, 0.01]}, "
       "\"seed\": 11}"},
      {ScenarioCommand::kDephase,
       "{\"params\": {\"n_traj\": 500, \"n_points\": 5}, \"seed\": 11, "
       "\"format\": \"json\"}"},
      {ScenarioCommand::kCz, "{}"},
  };
  int n = 0;
  for (const auto& [cmd, json] : runs) {
    ScenarioConfig cfg = parse_config(cmd, json);
    cfg.output_path = (dir / ("a" + std::to_string(n) + ".out")).string();
    run_and_write(cfg);
    const std::string first = slurp(cfg.output_path);
    cfg.output_path = (dir / ("b" + std::to_string(n) + ".out")).string();
    run_and_write(cfg);
    ok = ok && !first.empty() && first == slurp(cfg.output_path);
    ++n;
  }
  std::filesystem::remove_all(dir);
  return ok;
}

struct Criterion {
  const char* description;
  std::function<bool()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"criterion 1: Rabi ODE matches sin^2(Omega t / 2) within 1e-8 over [0, 8pi]",
       criterion_rabi_closed_form},
      {"criterion 2: dipole coupling matrix is S|E|/sqrt(6) times the identity",
       criterion_selection_rules},
      {"criterion 3: degenerate Hadamard ideal at r = 0; naive sequence only mod 8",
       criterion_hadamard_identity},
      {"criterion 4: Zeeman matrix entries and Lande factors 2 and 2/3",
       criterion_zeeman},
      {"criterion 5: Taylor series U^(0) ideal, remainder slope 3.0 +- 0.2",
       criterion_perturbation_series},
      {"criterion 6: fitted c2 within 0.5% of the closed-form coefficient",
       criterion_fidelity_law},
      {"criterion 7: Haar MC within 4 stderr of closed form; Bloch quadrature 1e-6",
       criterion_haar_oracle},
      {"criterion 8: two-atom evolution vs expm oracle; U5 diagonal CZ at |c| = |d|",
       criterion_two_atom},
      {"criterion 9: MC dephasing e-fold within 2%; level stats unchanged by mixing",
       criterion_dephasing},
      {"criterion 10: byte-identical scenario reruns for fixed config and seed",
       criterion_determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    bool ok = false;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      std::printf("      (exception: %s)\n", e.what());
      ok = false;
    }
    std::printf("%s: %s\n", ok ? "PASS" : "FAIL", c.description);
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
