#include "dqlab/twoatom.hpp"

#include <cmath>
#include <numbers>

namespace dqlab {

namespace {
constexpr Complex kI{0.0, 1.0};
using std::numbers::pi;

constexpr std::array<std::pair<int, int>, 4> kExchangePairs = {
    {{2, 8}, {3, 9}, {6, 12}, {7, 13}}};
}  // namespace

ProductBasisIndex ProductBasisIndex::from_flat(int m) {
  if (m < 0 || m > 15) throw ValidationError("ProductBasisIndex: flat index out of range");
  return {m / 4, m % 4};
}

ComplexMatrix build_vab_interaction(const TwoAtomModel& model) {
  ComplexMatrix v = ComplexMatrix::Zero(16, 16);
  for (const auto& [row, col] : kExchangePairs) {
    v(row, col) = model.h;
    v(col, row) = std::conj(model.h);
  }
  return v;
}

ComplexMatrix coupled_projector() {
  ComplexMatrix d = ComplexMatrix::Zero(16, 16);
  for (int idx : kCoupledIndices) d(idx, idx) = 1.0;
  return d;
}

ComplexMatrix u_ab_closed(double t, const TwoAtomModel& model) {
  const double w = model.omega_prime();
  if (w == 0.0) return ComplexMatrix::Identity(16, 16);
  const ComplexMatrix d = coupled_projector();
  const ComplexMatrix v = build_vab_interaction(model);
  return ComplexMatrix::Identity(16, 16) - d + std::cos(w * t) * d -
         kI * std::sin(w * t) / (model.hbar * w) * v;
}

ComplexMatrix h_single(const TwoAtomModel& model) {
  ComplexMatrix h = ComplexMatrix::Zero(4, 4);
  const double e = model.hbar * model.omega / 2.0;
  h(0, 0) = e;
  h(1, 1) = e;
  h(2, 2) = -e;
  h(3, 3) = -e;
  return h;
}

ComplexMatrix h_two_atom(const TwoAtomModel& model) {
  const ComplexMatrix id = ComplexMatrix::Identity(4, 4);
  const ComplexMatrix ha = h_single(model);
  return tensor(ha, id) + tensor(id, ha) + build_vab_interaction(model);
}

LocalGateSet local_gate_library(Complex c, Complex d) {
  const double norm = std::norm(c) + std::norm(d);
  if (std::abs(norm - 1.0) > 1e-10) {
    throw ValidationError("local_gate_library: |c|^2 + |d|^2 must be 1");
  }
  const double ac = std::abs(c);
  const double ad = std::abs(d);
  const double theta = std::atan2(ad, ac);

  // d -> 0 limit convention: phase factors built from d default to 1.
  const Complex unit_d = ad > 0.0 ? d / ad : Complex(1.0);
  const Complex unit_c = ac > 0.0 ? c / ac : Complex(1.0);
  const Complex p1_phase = ad > 0.0 ? -kI * unit_d : Complex(1.0);
  // The printed P2 (= P1^dag) leaves U5 non-diagonal; the phase that makes
  // the dressed evolution symmetric, and hence U5 the printed diagonal, is
  // the phase of c.
  const Complex p2_phase = ac > 0.0 ? unit_c : Complex(1.0);
  // sqrt(c* d*) / sqrt(|c||d|) = sqrt of the unit phases; principal branch.
  // At d = 0 the pi/4 factors would break the degenerate (diagonal) case, so
  // they default to 1 together with the d phase.
  const Complex p3_phase =
      ad > 0.0 ? std::exp(kI * pi / 4.0) * std::sqrt(std::conj(unit_c) * std::conj(unit_d))
               : Complex(1.0);
  const Complex p4_phase =
      ad > 0.0 ? std::exp(-kI * pi / 4.0) * std::sqrt(unit_c * unit_d) : Complex(1.0);

  auto lower_block = [](Complex phase) {
    ComplexMatrix g = ComplexMatrix::Identity(4, 4);
    g(2, 2) = phase;
    g(3, 3) = phase;
    return g;
  };

  LocalGateSet gates;
  gates.theta = theta;
  gates.p1 = lower_block(p1_phase);
  gates.p2 = lower_block(p2_phase);
  gates.p3 = lower_block(p3_phase);
  gates.p4 = lower_block(p4_phase);
  gates.p5 = lower_block(std::exp(kI * theta));
  gates.p5(0, 0) = std::exp(-kI * theta);
  gates.p5(1, 1) = std::exp(-kI * theta);
  gates.p6 = lower_block(std::exp(2.0 * kI * theta));
  gates.s = lower_block(kI);
  gates.z = lower_block(-1.0);
  gates.h = ComplexMatrix(4, 4);
  const double v = 1.0 / std::sqrt(2.0);
  gates.h << v, 0, v, 0,  //
      0, v, 0, v,         //
      v, 0, -v, 0,        //
      0, v, 0, -v;
  return gates;
}

CZSequenceResult cz_sequence(const ComplexMatrix& u, Complex c, Complex d) {
  if (u.rows() != 16 || u.cols() != 16) {
    throw ValidationError("cz_sequence: expected a 16x16 evolution");
  }
  const LocalGateSet g = local_gate_library(c, d);
  const ComplexMatrix id4 = ComplexMatrix::Identity(4, 4);

  const ComplexMatrix u2 =
      tensor(g.p3, g.p3) * tensor(g.p1, g.p2) * u * tensor(g.p3, g.p4);
  const ComplexMatrix hh = tensor(g.h, g.h);
  const ComplexMatrix u3 =
      tensor(g.s.adjoint(), g.s.adjoint()) * hh * u2 * hh * tensor(g.s, g.s);
  const ComplexMatrix iz = tensor(id4, g.z);
  const ComplexMatrix u4 = iz * u3 * iz * u3;
  const ComplexMatrix u5 = tensor(g.p6, g.p5) * u4;

  CZDiagnostics diag;
  diag.c = c;
  diag.d = d;
  diag.theta = g.theta;
  ComplexMatrix off = u5;
  off.diagonal().setZero();
  diag.offdiag_max = off.cwiseAbs().maxCoeff();
  diag.phase = u5(10, 10);
  return {u5, diag};
}

std::pair<Complex, Complex> extract_cd(const ComplexMatrix& u) {
  if (u.rows() != 16 || u.cols() != 16) {
    throw ValidationError("extract_cd: expected a 16x16 evolution");
  }
  // Entry (2,2) carries c*, entry (2,8) carries d.
  return {std::conj(u(2, 2)), u(2, 8)};
}

CZTimingReport solve_cz_time(const TwoAtomModel& model) {
  const double w = model.omega_prime();
  if (w == 0.0) throw ValidationError("solve_cz_time: |h| must be positive");
  CZTimingReport report;
  // |cos(W't)| = |sin(W't)| first holds at W't = pi/4.
  report.t_star = pi / (4.0 * w);
  report.t_literal = std::atan(w * model.hbar) / w;
  report.discrepancy = std::abs(report.t_star - report.t_literal);
  return report;
}

}  // namespace dqlab
