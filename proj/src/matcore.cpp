#include "dqlab/matcore.hpp"

#include <cmath>
#include <string>

namespace dqlab {

double hermiticity_error(const ComplexMatrix& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_error(const ComplexMatrix& u) {
  ComplexMatrix id = ComplexMatrix::Identity(u.rows(), u.cols());
  return (u.adjoint() * u - id).cwiseAbs().maxCoeff();
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  return u.rows() == u.cols() && unitarity_error(u) <= tol;
}

ComplexMatrix expm_generator(const ComplexMatrix& h, double t, double hbar) {
  if (h.rows() != h.cols()) {
    throw ValidationError("expm_generator: matrix must be square");
  }
  const double herm_err = hermiticity_error(h);
  if (herm_err > kAlgebraTol) {
    throw ValidationError("expm_generator: non-Hermitian generator, max|H - H^dag| = " +
                          std::to_string(herm_err));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("expm_generator: eigensolver failed to converge, ||H|| = " +
                         std::to_string(h.norm()));
  }
  const Eigen::VectorXd& lambda = solver.eigenvalues();
  Eigen::VectorXcd phases(lambda.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    phases(k) = std::exp(Complex(0.0, -lambda(k) * t / hbar));
  }
  const ComplexMatrix& q = solver.eigenvectors();
  return q * phases.asDiagonal() * q.adjoint();
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double phase_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError("phase_distance: dimension mismatch");
  }
  const Complex overlap = (b.adjoint() * a).trace();
  if (std::abs(overlap) == 0.0) {
    return (a - b).norm();
  }
  const Complex phase = std::exp(Complex(0.0, std::arg(overlap)));
  return (a - phase * b).norm();
}

void normalize(StateVector& psi) {
  const double n = psi.norm();
  if (n == 0.0) {
    throw ValidationError("normalize: zero state vector");
  }
  psi /= n;
}

}  // namespace dqlab
