#include "dqlab/angular.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace dqlab {
namespace {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

BigInt factorial(int n) {
  BigInt f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Round a half-integer to its doubled integer representation; throws when
// the value is off the half-integer lattice.
int doubled(double x, const char* what) {
  const double twice = 2.0 * x;
  const double rounded = std::round(twice);
  if (std::abs(twice - rounded) > 1e-9) {
    throw ValidationError(std::string("wigner3j: ") + what + " is not a half-integer");
  }
  return static_cast<int>(rounded);
}

}  // namespace

AngularLevel::AngularLevel(int l_, double s_, double j_) : l(l_), s(s_), j(j_) {
  if (l < 0 || s < 0.0 || j < 0.0) {
    throw ValidationError("AngularLevel: quantum numbers must be non-negative");
  }
  doubled(s, "S");
  doubled(j, "J");
  if (j < std::abs(l - s) - 1e-12 || j > l + s + 1e-12) {
    throw ValidationError("AngularLevel: J violates |L-S| <= J <= L+S");
  }
}

int AngularLevel::multiplicity() const { return static_cast<int>(std::round(2.0 * j)) + 1; }

std::vector<double> AngularLevel::m_list() const {
  std::vector<double> ms(multiplicity());
  for (int k = 0; k < multiplicity(); ++k) ms[k] = -j + k;
  return ms;
}

AngularLevel level_s_half() { return AngularLevel(0, 0.5, 0.5); }
AngularLevel level_p_half() { return AngularLevel(1, 0.5, 0.5); }

double wigner3j(double j1, double j2, double j3, double m1, double m2, double m3) {
  const int tj1 = doubled(j1, "j1"), tj2 = doubled(j2, "j2"), tj3 = doubled(j3, "j3");
  const int tm1 = doubled(m1, "m1"), tm2 = doubled(m2, "m2"), tm3 = doubled(m3, "m3");
  if (tj1 < 0 || tj2 < 0 || tj3 < 0) {
    throw ValidationError("wigner3j: negative angular momentum");
  }
  if ((tj1 - tm1) % 2 != 0 || (tj2 - tm2) % 2 != 0 || (tj3 - tm3) % 2 != 0) {
    throw ValidationError("wigner3j: m has wrong integer/half-integer parity");
  }
  if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tm3) > tj3) return 0.0;
  if (tm1 + tm2 + tm3 != 0) return 0.0;
  if ((tj1 + tj2 + tj3) % 2 != 0) return 0.0;
  if (tj3 < std::abs(tj1 - tj2) || tj3 > tj1 + tj2) return 0.0;

  // Integer arguments of the Racah sum, from the doubled representation.
  const int a = (tj1 + tj2 - tj3) / 2;
  const int b = (tj1 - tj2 + tj3) / 2;
  const int c = (-tj1 + tj2 + tj3) / 2;
  const int j1m = (tj1 - tm1) / 2, j1p = (tj1 + tm1) / 2;
  const int j2m = (tj2 - tm2) / 2, j2p = (tj2 + tm2) / 2;
  const int j3m = (tj3 - tm3) / 2, j3p = (tj3 + tm3) / 2;

  const int t_min = std::max({0, (tj2 - tj3 - tm1) / 2, (tj1 - tj3 + tm2) / 2});
  const int t_max = std::min({a, j1m, j2p});
  if (t_min > t_max) return 0.0;

  BigRational sum = 0;
  for (int t = t_min; t <= t_max; ++t) {
    BigInt denom = factorial(t) * factorial((tj3 - tj2 + tm1) / 2 + t) *
                   factorial((tj3 - tj1 - tm2) / 2 + t) * factorial(a - t) *
                   factorial(j1m - t) * factorial(j2p - t);
    BigRational term(1, denom);
    if (t % 2 != 0) term = -term;
    sum += term;
  }
  if (sum == 0) return 0.0;

  BigRational norm(factorial(a) * factorial(b) * factorial(c),
                   factorial((tj1 + tj2 + tj3) / 2 + 1));
  norm *= BigRational(factorial(j1m) * factorial(j1p) * factorial(j2m) * factorial(j2p) *
                      factorial(j3m) * factorial(j3p));
  // Exact value^2 as a rational; a single sqrt at the end keeps full precision.
  const BigRational value_sq = norm * sum * sum;
  double value = std::sqrt(value_sq.convert_to<double>());
  if (sum < 0) value = -value;
  if (((tj1 - tj2 - tm3) / 2) % 2 != 0) value = -value;
  return value;
}

double line_strength(double a12, double k12, int n_degeneracy, double alpha, double c) {
  if (a12 < 0.0) throw ValidationError("line_strength: A12 must be non-negative");
  if (k12 <= 0.0) throw ValidationError("line_strength: k12 must be positive");
  if (n_degeneracy < 1) throw ValidationError("line_strength: degeneracy must be >= 1");
  return std::sqrt(3.0 * a12 * n_degeneracy / (4.0 * c * alpha * k12 * k12));
}

ComplexMatrix dipole_coupling_matrix(const DipoleScenario& s) {
  if (s.line_strength_s < 0.0 || s.e_magnitude < 0.0) {
    throw ValidationError("dipole_coupling_matrix: S and |E| must be non-negative");
  }
  const auto mg = s.ground.m_list();
  const auto me = s.excited.m_list();
  ComplexMatrix omega = ComplexMatrix::Zero(mg.size(), me.size());
  for (size_t i = 0; i < mg.size(); ++i) {
    for (size_t k = 0; k < me.size(); ++k) {
      omega(i, k) = s.line_strength_s * s.e_magnitude *
                    wigner3j(s.ground.j, 1.0, s.excited.j, -mg[i], 0.0, me[k]);
    }
  }
  return omega;
}

double lande_factor(const AngularLevel& level, double g_s) {
  if (level.j <= 0.0) {
    throw ValidationError("lande_factor: projection undefined for J = 0");
  }
  const double jj = level.j * (level.j + 1.0);
  const double ll = level.l * (level.l + 1.0);
  const double ss = level.s * (level.s + 1.0);
  const double lj = (jj + ll - ss) / 2.0;
  const double sj = (jj + ss - ll) / 2.0;
  return (lj + g_s * sj) / jj;
}

namespace {

// cos(theta) J_z + sin(theta) J_x in the m-ascending basis (hbar units).
ComplexMatrix tilted_j(const AngularLevel& level, double theta) {
  const auto ms = level.m_list();
  const int n = static_cast<int>(ms.size());
  ComplexMatrix jmat = ComplexMatrix::Zero(n, n);
  const double j = level.j;
  for (int k = 0; k < n; ++k) {
    jmat(k, k) = std::cos(theta) * ms[k];
    if (k + 1 < n) {
      const double ladder = 0.5 * std::sqrt(j * (j + 1.0) - ms[k] * (ms[k] + 1.0));
      jmat(k, k + 1) += std::sin(theta) * ladder;
      jmat(k + 1, k) += std::sin(theta) * ladder;
    }
  }
  return jmat;
}

double literal_gs3_factor(const AngularLevel& level, double g_s) {
  if (level.l == 0) return g_s;
  if (level.l == 1 && std::abs(level.j - 0.5) < 1e-12) return g_s / 3.0;
  throw ValidationError("zeeman_matrix: literal g_s/3 convention only covers 2S1/2 and 2P1/2");
}

}  // namespace

ComplexMatrix zeeman_matrix(const AngularLevel& ground, const AngularLevel& excited,
                            double b0, double theta, double g_s, double mu_b,
                            ZeemanConvention convention) {
  const double field = b0 / g_s;  // B0 absorbs g_s|B|
  const int ng = ground.multiplicity();
  const int ne = excited.multiplicity();
  ComplexMatrix h = ComplexMatrix::Zero(ng + ne, ng + ne);
  const double g_ground = convention == ZeemanConvention::kProjection
                              ? lande_factor(ground, g_s)
                              : literal_gs3_factor(ground, g_s);
  const double g_excited = convention == ZeemanConvention::kProjection
                               ? lande_factor(excited, g_s)
                               : literal_gs3_factor(excited, g_s);
  h.topLeftCorner(ng, ng) = mu_b * field * g_ground * tilted_j(ground, theta);
  h.bottomRightCorner(ne, ne) = mu_b * field * g_excited * tilted_j(excited, theta);
  return h;
}

}  // namespace dqlab
