#pragma once

#include <complex>

#include <Eigen/Dense>

#include "dqlab/errors.hpp"

namespace dqlab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

// Tolerance conventions: 1e-12 for algebraic identities, 1e-10 for
// composed numerics (dim <= 16, double precision).
inline constexpr double kAlgebraTol = 1e-12;
inline constexpr double kComposedTol = 1e-10;

// max |A - A^dag| over entries.
double hermiticity_error(const ComplexMatrix& a);

// max |U^dag U - I| over entries.
double unitarity_error(const ComplexMatrix& u);

bool is_unitary(const ComplexMatrix& u, double tol = kComposedTol);

// U = exp(-i H t / hbar) via Hermitian eigendecomposition H = Q L Q^dag.
// Throws ValidationError if H is not Hermitian within 1e-12, NumericalError
// if the eigensolver fails.
ComplexMatrix expm_generator(const ComplexMatrix& h, double t, double hbar = 1.0);

// Kronecker product, index convention (iA*dimB + iB).
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

// min over real phi of ||A - e^{i phi} B||_F, via phi* = arg Tr(B^dag A).
double phase_distance(const ComplexMatrix& a, const ComplexMatrix& b);

// Normalizes psi in place; throws ValidationError on a zero vector.
void normalize(StateVector& psi);

}  // namespace dqlab
