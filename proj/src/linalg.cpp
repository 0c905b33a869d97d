#include "ddforge/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace ddforge {

namespace {

constexpr double kHermitianTolerance = 1e-10;

void require_finite(const ComplexMatrix& a, const char* what) {
  if (!a.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
  }
}

}  // namespace

ComplexMatrix identity(Eigen::Index dim) {
  if (dim <= 0) throw std::invalid_argument("identity: dim must be positive");
  return ComplexMatrix::Identity(dim, dim);
}

ComplexMatrix pauli(Axis axis) {
  ComplexMatrix m(2, 2);
  const Complex i{0.0, 1.0};
  switch (axis) {
    case Axis::X:
      m << 0, 1, 1, 0;
      break;
    case Axis::Y:
      m << 0, -i, i, 0;
      break;
    case Axis::Z:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matmul: inner dimensions disagree");
  }
  return a * b;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector kron_state(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

ComplexMatrix dagger(const ComplexMatrix& a) { return a.adjoint(); }

ComplexMatrix embed_single(Axis axis, int k, int n_qubits) {
  if (n_qubits < 1 || n_qubits > 3) {
    throw std::invalid_argument("embed_single: qubit count must be 1..3");
  }
  if (k < 1 || k > n_qubits) {
    throw std::invalid_argument("embed_single: qubit index out of range");
  }
  ComplexMatrix out = (k == 1) ? pauli(axis) : identity(2);
  for (int q = 2; q <= n_qubits; ++q) {
    out = kron(out, (q == k) ? pauli(axis) : identity(2));
  }
  return out;
}

double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& h) {
  return max_abs(ComplexMatrix(h - h.adjoint()));
}

HermitianEigen::HermitianEigen(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) {
    throw std::invalid_argument("HermitianEigen: matrix must be square");
  }
  require_finite(h, "HermitianEigen");
  if (hermiticity_defect(h) > kHermitianTolerance) {
    throw std::invalid_argument("HermitianEigen: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("HermitianEigen: eigensolver did not converge");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

ComplexMatrix HermitianEigen::evolution(double t) const {
  const Eigen::Index dim = eigenvalues_.size();
  ComplexVector phases(dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    phases(j) = std::polar(1.0, -eigenvalues_(j) * t);
  }
  return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t) {
  return HermitianEigen(h).evolution(t);
}

}  // namespace ddforge
