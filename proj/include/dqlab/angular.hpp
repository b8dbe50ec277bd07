#pragma once

#include <vector>

#include "dqlab/matcore.hpp"

namespace dqlab {

// A fine-structure level (L, S, J) with its ordered m_J sublevels.
// S and J may be half-integers; L is an integer.
struct AngularLevel {
  int l = 0;
  double s = 0.0;
  double j = 0.0;

  AngularLevel(int l_, double s_, double j_);

  int multiplicity() const;
  // m_J values from -J to +J, strictly increasing in steps of 1.
  std::vector<double> m_list() const;
};

// Reference levels for the 2S1/2 -> 2P1/2 example transition.
AngularLevel level_s_half();
AngularLevel level_p_half();

// Wigner 3j symbol via the Racah finite sum with exact integer factorials
// (big integers internally, promoted to double at the end). Returns 0 when
// the triangle or m-sum conditions fail. Throws ValidationError when an m
// is off the {-j, ..., j} lattice or a j is negative.
double wigner3j(double j1, double j2, double j3, double m1, double m2, double m3);

// Reduced dipole element e<0||rC^(1)||1> from the Einstein A coefficient:
// sqrt(3 A12 n / (4 c alpha k12^2)).
double line_strength(double a12, double k12, int n_degeneracy, double alpha, double c);

struct DipoleScenario {
  AngularLevel ground;
  AngularLevel excited;
  double line_strength_s = 1.0;  // S = e<0||rC^(1)||1>
  double e_magnitude = 1.0;      // |E|
};

// n_g x n_e block of coupling strengths Omega_ij = S * 3j(J0,1,J1; -m_i,0,m_j) * |E|
// for z-linear polarization (q = 0 channel only).
ComplexMatrix dipole_coupling_matrix(const DipoleScenario& s);

// Lande factor via the projection theorem:
// <L.J>/(j(j+1)) + g_s <S.J>/(j(j+1)). Throws ValidationError for J = 0.
double lande_factor(const AngularLevel& level, double g_s);

enum class ZeemanConvention {
  // Projection-theorem Lande factors (default).
  kProjection,
  // The printed per-level coefficients g_s and g_s/3, which coincide with
  // the Lande values only at g_s = 2. Valid for the 2S1/2 / 2P1/2 pair.
  kLiteralGs3,
};

// Block-diagonal Zeeman matrix mu_B (L + g_s S).B for the (ground, excited)
// pair in the basis (ground m ascending, then excited m ascending). The field
// is B0/g_s in magnitude (B0 absorbs g_s|B|), tilted by theta from the
// polarization z-axis toward x.
ComplexMatrix zeeman_matrix(const AngularLevel& ground, const AngularLevel& excited,
                            double b0, double theta, double g_s, double mu_b,
                            ZeemanConvention convention = ZeemanConvention::kProjection);

}  // namespace dqlab
