#include <cmath>
#include <vector>

#include <doctest.h>

#include "dqlab/decoherence.hpp"
#include "oracles.hpp"

using namespace dqlab;

namespace {

DephasingParams base_params() {
  DephasingParams p;
  p.mu = 1.0;
  p.b0 = 1.0;
  p.t_grid = {0.0, 0.5};
  p.n_traj = 1000;
  p.n_steps = 100;
  p.seed = kDefaultSeed;
  return p;
}

void check_density(const ComplexMatrix& rho) {
  CHECK(hermiticity_error(rho) < 1e-12);
  CHECK(std::abs(rho.trace() - Complex(1.0)) < 1e-12);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
  CHECK(es.eigenvalues().minCoeff() > -1e-10);
}

}  // namespace

TEST_CASE("dephase_offdiagonal decay law") {
  const DephasingParams p = base_params();
  CHECK(dephase_offdiagonal(p, 0.0) == 1.0);
  CHECK(dephase_offdiagonal(p, 0.5) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  double prev = 1.0;
  for (double t = 0.1; t < 2.0; t += 0.1) {
    const double v = dephase_offdiagonal(p, t);
    CHECK(v < prev);
    prev = v;
  }
  CHECK_THROWS_AS(dephase_offdiagonal(p, -0.1), ValidationError);
}

TEST_CASE("bell_density_matrix structure") {
  const DephasingParams p = base_params();
  const ComplexMatrix pure = bell_density_matrix(p, 0.0, 1);
  StateVector bell(4);
  bell << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
  CHECK((pure - bell * bell.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  check_density(pure);

  const ComplexMatrix late = bell_density_matrix(p, 1e6, -1);
  CHECK(std::abs(late(0, 3)) < 1e-12);
  CHECK(late(0, 0) == Complex(0.5));
  CHECK(late(3, 3) == Complex(0.5));

  const double t = 0.8;
  const double e = dephase_offdiagonal(p, t);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(bell_density_matrix(p, t, 1));
  CHECK(es.eigenvalues()(3) == doctest::Approx((1.0 + e) / 2.0).epsilon(1e-12));
  CHECK(es.eigenvalues()(2) == doctest::Approx((1.0 - e) / 2.0).epsilon(1e-12));
  CHECK(std::abs(es.eigenvalues()(0)) < 1e-14);

  CHECK_THROWS_AS(bell_density_matrix(p, 0.1, 2), ValidationError);
}

TEST_CASE("sublevel phase weights follow the Lande factors") {
  const auto w = sublevel_phase_weights();
  CHECK(w[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(w[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(w[2] == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
  CHECK(w[3] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("degenerate_dephased_state keeps only equal-weight coherences") {
  DegenerateBellState s;
  s.kind = BellKind::kPlus0110;
  const double inv = 1.0 / std::sqrt(2.0);
  s.a1 = s.b1 = inv;
  s.a2 = s.b2 = inv;
  s.sign = 1;
  const ComplexMatrix rho = degenerate_dephased_state(s);
  check_density(rho);

  // Surviving pairs of the printed infinite-time mixture.
  const double quarter = 0.5 * 0.25;  // 1/2 (Bell) * |a b|^2
  for (auto [m, n] : {std::pair{2, 8}, {3, 12}, {6, 9}, {7, 13}}) {
    CHECK(std::abs(rho(m, n) - quarter) < 1e-14);
    CHECK(std::abs(rho(n, m) - quarter) < 1e-14);
  }
  // Cross terms between differently dephasing components vanish.
  for (auto [m, n] : {std::pair{2, 3}, {2, 9}, {2, 7}, {3, 9}, {6, 12}, {7, 9}}) {
    CHECK(rho(m, n) == Complex(0.0));
  }
  for (int m : {2, 3, 6, 7, 8, 9, 12, 13}) {
    CHECK(std::abs(rho(m, m) - quarter) < 1e-14);
  }
}

TEST_CASE("degenerate_dephased_state single-component limit is pure") {
  DegenerateBellState s;
  s.kind = BellKind::kPlus0110;
  s.a1 = 1.0;
  s.a2 = 0.0;
  s.b1 = 1.0;
  s.b2 = 0.0;
  const ComplexMatrix rho = degenerate_dephased_state(s);
  check_density(rho);
  CHECK(std::abs((rho * rho).trace() - Complex(1.0)) < 1e-12);  // pure
  CHECK(std::abs(rho(2, 8) - Complex(0.5)) < 1e-14);
}

TEST_CASE("DegenerateBellState validation") {
  DegenerateBellState s;
  s.a1 = 0.5;  // not normalized
  CHECK_THROWS_AS(s.validate(), ValidationError);
  s.a1 = 1.0;
  s.sign = 2;
  CHECK_THROWS_AS(s.validate(), ValidationError);
}

TEST_CASE("DephasingParams validation") {
  DephasingParams p = base_params();
  p.t_grid = {0.5, 1.0};
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p.t_grid = {0.0, 1.0, 1.0};
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = base_params();
  p.n_traj = 0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = base_params();
  p.n_steps = 5;
  CHECK_THROWS_AS(p.validate(), ValidationError);

  // Too-coarse noise steps are a configuration error.
  p = base_params();
  p.n_steps = 10;
  p.b0 = 10.0;
  CHECK_THROWS_AS(mc_dephase_bell(1, p), ConfigError);
}

TEST_CASE("mc_dephase_bell preserves the pure state at B0 = 0") {
  DephasingParams p = base_params();
  p.b0 = 0.0;
  p.n_traj = 10;
  const auto rhos = mc_dephase_bell(1, p);
  StateVector bell(4);
  bell << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
  for (const auto& rho : rhos) {
    CHECK((rho - bell * bell.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("mc_dephase_bell matches the analytic decay at the e-fold point") {
  DephasingParams p = base_params();
  p.n_traj = 100000;
  p.n_steps = 100;
  const auto rhos = mc_dephase_bell(1, p);
  const double mc = 2.0 * std::abs(rhos[1](0, 3));
  CHECK(std::abs(mc - std::exp(-1.0)) / std::exp(-1.0) < 0.02);
  check_density(rhos[1]);
}

TEST_CASE("mc_dephase_bell is deterministic per seed") {
  DephasingParams p = base_params();
  p.n_traj = 200;
  const auto a = mc_dephase_bell(-1, p);
  const auto b = mc_dephase_bell(-1, p);
  CHECK((a[1] - b[1]).norm() == 0.0);
  p.seed += 1;
  const auto c = mc_dephase_bell(-1, p);
  CHECK((a[1] - c[1]).norm() > 0.0);
}

TEST_CASE("MC error scales as 1/sqrt(n_traj)") {
  std::vector<double> lx, ly;
  for (long n : {1000L, 10000L, 100000L}) {
    double err = 0.0;
    const int n_seeds = 12;
    for (int s = 0; s < n_seeds; ++s) {
      DephasingParams p = base_params();
      p.n_traj = n;
      p.seed = 40000 + s;
      const auto rhos = mc_dephase_bell(1, p);
      err += std::abs(2.0 * std::abs(rhos[1](0, 3)) - std::exp(-1.0));
    }
    lx.push_back(std::log(static_cast<double>(n)));
    ly.push_back(std::log(err / n_seeds));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t k = 0; k < lx.size(); ++k) {
    sx += lx[k];
    sy += ly[k];
    sxx += lx[k] * lx[k];
    sxy += lx[k] * ly[k];
  }
  const double n = static_cast<double>(lx.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(std::abs(slope + 0.5) < 0.1);
}

TEST_CASE("mc_dephase preserves the equal-weight survivor coherences") {
  DegenerateBellState s;
  s.kind = BellKind::kPlus0110;
  const double inv = 1.0 / std::sqrt(2.0);
  s.a1 = s.b1 = inv;
  s.a2 = s.b2 = inv;

  DephasingParams p = base_params();
  p.t_grid = {0.0, 1.0};
  p.n_traj = 20000;
  const auto rhos = mc_dephase(s, p);

  // (2,8) has equal net phase weights: no decay beyond MC noise.
  CHECK(std::abs(rhos[1](2, 8) - rhos[0](2, 8)) < 0.01);
  CHECK(std::abs(rhos[0](2, 8) - Complex(0.125)) < 1e-12);
  // (2, 3) coherence decays as exp(-(w2 - w3)^2 mu^2 B0^2 t / 2), gap 2/3.
  const double want_23 = 0.125 * std::exp(-std::pow(2.0 / 3.0, 2) / 2.0);
  CHECK(std::abs(std::abs(rhos[1](2, 3)) - want_23) < 0.01);
  // (2, 13) has the largest weight gap (-4/3 vs +4/3) and decays fastest.
  CHECK(std::abs(rhos[1](2, 13)) < std::abs(rhos[1](2, 3)));
}

TEST_CASE("level_measurement_stats tables") {
  // Pure (|01> + |10>)/sqrt(2) analogue.
  DegenerateBellState s;
  s.kind = BellKind::kPlus0110;
  const double inv = 1.0 / std::sqrt(2.0);
  s.a1 = s.b1 = inv;
  s.a2 = s.b2 = inv;
  const StateVector psi = s.ket();
  const ComplexMatrix pure = psi * psi.adjoint();
  const auto t_pure = level_measurement_stats(pure);
  CHECK(t_pure[0][1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(t_pure[1][0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(t_pure[0][0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(t_pure[1][1] == doctest::Approx(0.0).epsilon(1e-12));

  // The dephased mixture has identical level statistics.
  const auto t_mixed = level_measurement_stats(degenerate_dephased_state(s));
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      CHECK(t_mixed[i][j] == doctest::Approx(t_pure[i][j]).epsilon(1e-12));
    }
  }

  const auto t_mix = level_measurement_stats(
      ComplexMatrix(ComplexMatrix::Identity(16, 16) / 16.0));
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) CHECK(t_mix[i][j] == doctest::Approx(0.25).epsilon(1e-12));
  }

  CHECK_THROWS_AS(level_measurement_stats(ComplexMatrix(2.0 * pure)), ValidationError);
  CHECK_THROWS_AS(level_measurement_stats(ComplexMatrix::Identity(8, 8)), ValidationError);
}
