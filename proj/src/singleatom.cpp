#include "dqlab/singleatom.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace dqlab {

namespace {
constexpr Complex kI{0.0, 1.0};
using std::numbers::pi;
}  // namespace

bool PhysParams::validate() const {
  if (omega_rabi <= 0.0) throw ValidationError("PhysParams: Omega must be positive");
  if (omega <= 0.0) throw ValidationError("PhysParams: omega must be positive");
  if (r < 0.0) throw ValidationError("PhysParams: field ratio r must be non-negative");
  if (theta < 0.0 || theta > pi) throw ValidationError("PhysParams: theta must be in [0, pi]");
  if (hbar <= 0.0) throw ValidationError("PhysParams: hbar must be positive");
  return r <= 0.1;
}

StateVector RabiAmplitudes::to_vector() const {
  StateVector v(4);
  v << alpha0, alpha1, beta0, beta1;
  return v;
}

RabiAmplitudes RabiAmplitudes::from_vector(const StateVector& v) {
  if (v.size() != 4) throw ValidationError("RabiAmplitudes: expected a 4-vector");
  return {v(0), v(1), v(2), v(3)};
}

double RabiAmplitudes::norm_sq() const {
  return std::norm(alpha0) + std::norm(alpha1) + std::norm(beta0) + std::norm(beta1);
}

ComplexMatrix h_int(const PhysParams& p) {
  ComplexMatrix h = ComplexMatrix::Zero(4, 4);
  const double e = p.hbar * p.omega_rabi / 2.0;
  h(0, 2) = e;
  h(1, 3) = e;
  h(2, 0) = e;
  h(3, 1) = e;
  return h;
}

ComplexMatrix h_bare(const PhysParams& p) {
  ComplexMatrix h = ComplexMatrix::Zero(4, 4);
  const double e = p.hbar * p.omega / 2.0;
  h(0, 0) = -e;
  h(1, 1) = -e;
  h(2, 2) = e;
  h(3, 3) = e;
  return h;
}

ComplexMatrix h_zeeman(const PhysParams& p) {
  // mu_B B0 = r hbar Omega; pass mu_B = 1 and fold the product into B0.
  const double b0 = p.r * p.hbar * p.omega_rabi;
  return zeeman_matrix(level_s_half(), level_p_half(), b0, p.theta, p.g_s, 1.0);
}

ComplexMatrix u0(double t, const PhysParams& p) {
  ComplexMatrix u = ComplexMatrix::Zero(4, 4);
  const Complex up = std::exp(kI * (p.omega * t / 2.0));
  u(0, 0) = up;
  u(1, 1) = up;
  u(2, 2) = std::conj(up);
  u(3, 3) = std::conj(up);
  return u;
}

ComplexMatrix u_schrodinger(double t, const PhysParams& p) {
  return u0(t, p) * expm_generator(h_int(p), t, p.hbar);
}

ComplexMatrix u_prime(double t, const PhysParams& p) {
  return expm_generator(h_bare(p) + h_zeeman(p), t, p.hbar);
}

ComplexMatrix u_tot(double t, const PhysParams& p) {
  return u0(t, p) * expm_generator(h_int(p) + h_zeeman(p), t, p.hbar);
}

RabiAmplitudes rabi_amplitudes(double t, const RabiAmplitudes& initial, const PhysParams& p) {
  const ComplexMatrix u = expm_generator(h_int(p), t, p.hbar);
  return RabiAmplitudes::from_vector(u * initial.to_vector());
}

namespace {

// Right-hand side of the interaction-picture amplitude equations.
StateVector amplitude_rhs(double t, const StateVector& z, double delta,
                          const ComplexMatrix& coupling, double hbar) {
  const Eigen::Index ng = coupling.rows();
  const Eigen::Index ne = coupling.cols();
  const Complex phase = std::exp(kI * (delta * t));
  StateVector dz = StateVector::Zero(ng + ne);
  for (Eigen::Index i = 0; i < ng; ++i) {
    Complex acc = 0.0;
    for (Eigen::Index j = 0; j < ne; ++j) acc += coupling(i, j) * z(ng + j);
    dz(i) = -kI * phase * acc / (2.0 * hbar);
  }
  for (Eigen::Index j = 0; j < ne; ++j) {
    Complex acc = 0.0;
    for (Eigen::Index i = 0; i < ng; ++i) acc += std::conj(coupling(i, j)) * z(i);
    dz(ng + j) = -kI * std::conj(phase) * acc / (2.0 * hbar);
  }
  return dz;
}

StateVector rk4_segment(StateVector z, double t0, double t1, double h_max, double delta,
                        const ComplexMatrix& coupling, double hbar) {
  const double span = t1 - t0;
  if (span == 0.0) return z;
  const long n_steps = static_cast<long>(std::ceil(span / h_max));
  const double h = span / static_cast<double>(n_steps);
  if (!(h > 0.0) || t0 + h == t0) {
    throw ConfigError("integrate_odes: step size underflow");
  }
  double t = t0;
  for (long k = 0; k < n_steps; ++k) {
    const StateVector k1 = amplitude_rhs(t, z, delta, coupling, hbar);
    const StateVector k2 = amplitude_rhs(t + h / 2.0, z + (h / 2.0) * k1, delta, coupling, hbar);
    const StateVector k3 = amplitude_rhs(t + h / 2.0, z + (h / 2.0) * k2, delta, coupling, hbar);
    const StateVector k4 = amplitude_rhs(t + h, z + h * k3, delta, coupling, hbar);
    z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t = t0 + (k + 1) * h;
  }
  return z;
}

double rk4_step_bound(const PhysParams& p, double delta) {
  return 2.0 * pi / (200.0 * std::max(p.omega_rabi, std::abs(delta)));
}

}  // namespace

RabiAmplitudes integrate_odes(double t, const RabiAmplitudes& initial, const PhysParams& p,
                              double delta, const ComplexMatrix& coupling) {
  if (coupling.rows() + coupling.cols() != 4) {
    throw ValidationError("integrate_odes: coupling block must act on 4 amplitudes");
  }
  StateVector z = initial.to_vector();
  z = rk4_segment(z, 0.0, t, rk4_step_bound(p, delta), delta, coupling, p.hbar);
  return RabiAmplitudes::from_vector(z);
}

std::vector<RabiAmplitudes> integrate_odes_grid(const std::vector<double>& t_grid,
                                                const RabiAmplitudes& initial,
                                                const PhysParams& p, double delta,
                                                const ComplexMatrix& coupling) {
  if (coupling.rows() + coupling.cols() != 4) {
    throw ValidationError("integrate_odes: coupling block must act on 4 amplitudes");
  }
  const double h_max = rk4_step_bound(p, delta);
  std::vector<RabiAmplitudes> out;
  out.reserve(t_grid.size());
  StateVector z = initial.to_vector();
  double t_prev = 0.0;
  for (double t : t_grid) {
    if (t < t_prev) throw ValidationError("integrate_odes: time grid must be increasing");
    z = rk4_segment(z, t_prev, t, h_max, delta, coupling, p.hbar);
    out.push_back(RabiAmplitudes::from_vector(z));
    t_prev = t;
  }
  return out;
}

ComplexMatrix hadamard_gate(const PhysParams& p) {
  const double t1 = 3.0 * pi / (2.0 * p.omega);
  const double tp = pi / (2.0 * p.omega_rabi);
  // The closing duration is kept literal even when negative (omega > 7 Omega);
  // the sequence is an algebraic composition of exponentials and only the
  // literal value reproduces the printed expansion and fidelity series. A
  // realizable schedule would add whole free-evolution periods 4 pi / omega.
  const double t2 = 7.0 * pi / (2.0 * p.omega) - pi / (2.0 * p.omega_rabi);
  // The raw sequence carries a global phase of i; remove it so the r = 0
  // gate matches the block Hadamard entrywise.
  return -kI * (u_prime(t2, p) * u_tot(tp, p) * u_prime(t1, p));
}

ComplexMatrix naive_hadamard_gate(const PhysParams& p) {
  const double t1 = 3.0 * pi / (2.0 * p.omega);
  const double tp = pi / (2.0 * p.omega_rabi);
  return u0(t1, p) * u_schrodinger(tp, p) * u0(t1, p);
}

ComplexMatrix ideal_hadamard() {
  ComplexMatrix h(4, 4);
  const double v = 1.0 / std::sqrt(2.0);
  h << v, 0, v, 0,  //
      0, v, 0, v,   //
      v, 0, -v, 0,  //
      0, v, 0, -v;
  return h;
}

std::vector<ComplexMatrix> taylor_expand_gate(const PhysParams& p, int order) {
  if (order < 0 || order > 2) {
    throw ValidationError("taylor_expand_gate: order must be 0, 1, or 2");
  }
  auto gate_at = [&p](double r) {
    PhysParams q = p;
    q.r = r;  // signed probe values are internal to the differentiation
    return hadamard_gate(q);
  };

  std::vector<ComplexMatrix> coeffs;
  const ComplexMatrix g0 = gate_at(0.0);
  coeffs.push_back(g0);
  if (order == 0) return coeffs;

  const double h0 = 1e-3;
  ComplexMatrix gp[3], gm[3];
  for (int k = 0; k < 3; ++k) {
    const double h = h0 / std::pow(2.0, k);
    gp[k] = gate_at(h);
    gm[k] = gate_at(-h);
  }

  auto richardson = [](const ComplexMatrix d[3], const char* what) {
    const ComplexMatrix b0 = (4.0 * d[1] - d[0]) / 3.0;
    const ComplexMatrix b1 = (4.0 * d[2] - d[1]) / 3.0;
    const double spread = (b1 - b0).cwiseAbs().maxCoeff();
    if (spread > 1e-5) {
      throw NumericalError(std::string("taylor_expand_gate: non-convergent Richardson "
                                       "tableau for ") +
                           what + ", level spread = " + std::to_string(spread));
    }
    return ComplexMatrix((16.0 * b1 - b0) / 15.0);
  };

  ComplexMatrix d1[3], d2[3];
  for (int k = 0; k < 3; ++k) {
    const double h = h0 / std::pow(2.0, k);
    d1[k] = (gp[k] - gm[k]) / (2.0 * h);
    d2[k] = (gp[k] - 2.0 * g0 + gm[k]) / (h * h);
  }
  coeffs.push_back(richardson(d1, "U^(1)"));
  if (order == 2) coeffs.push_back(0.5 * richardson(d2, "U^(2)"));
  return coeffs;
}

ComplexMatrix printed_first_order(const PhysParams& p) {
  const double wo = p.hbar * p.omega / 2.0;
  const double ro = p.hbar * p.omega_rabi / 2.0;
  const double k = 1.0 / (12.0 * std::sqrt(2.0) * wo);
  const double a = ((pi - 4.0) * wo - 30.0 * pi * ro) * k;
  const double b = pi * (wo - 24.0 * ro) * k;
  const double c = pi * (16.0 * ro + wo) * k;
  const double d = (10.0 * pi * ro + (pi - 4.0) * wo) * k;
  const double cs = std::cos(p.theta);
  const double sn = std::sin(p.theta);
  ComplexMatrix m(4, 4);
  m << -a * cs, a * sn, -b * cs, b * sn,  //
      a * sn, a * cs, b * sn, b * cs,     //
      c * cs, -c * sn, -d * cs, d * sn,   //
      -c * sn, -c * cs, d * sn, d * cs;
  return kI * m;  // per unit r = mu_B B0 / (hbar Omega)
}

ComplexMatrix printed_second_order(const PhysParams& p) {
  const double wo = p.hbar * p.omega / 2.0;
  const double ro = p.hbar * p.omega_rabi / 2.0;
  const double k = 1.0 / (288.0 * std::sqrt(2.0) * wo * wo);
  const double q = 16.0 - 4.0 * pi + pi * pi;
  const double a = -pi * (900.0 * pi * ro * ro - 60.0 * (pi - 4.0) * ro * wo +
                          (pi - 4.0) * wo * wo) * k;
  const double b = -(576.0 * pi * pi * ro * ro - 48.0 * pi * pi * ro * wo + q * wo * wo) * k;
  const double c = -(256.0 * pi * pi * ro * ro + 32.0 * pi * pi * ro * wo + q * wo * wo) * k;
  const double d = pi * (100.0 * pi * ro * ro + 20.0 * (pi - 4.0) * ro * wo +
                         (pi - 4.0) * wo * wo) * k;
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = a;
  m(1, 1) = a;
  m(0, 2) = b;
  m(1, 3) = b;
  m(2, 0) = c;
  m(3, 1) = c;
  m(2, 2) = d;
  m(3, 3) = d;
  return m;  // per unit r^2
}

}  // namespace dqlab
