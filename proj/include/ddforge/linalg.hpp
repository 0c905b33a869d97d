#pragma once

#include <complex>

#include <Eigen/Dense>

namespace ddforge {

using Complex = std::complex<double>;

// Dense row-major storage throughout; every operator in this project lives on
// a 2-, 4- or 8-dimensional Hilbert space, so there is nothing to gain from
// sparsity or structure.
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

enum class Axis { X, Y, Z };

ComplexMatrix identity(Eigen::Index dim);
ComplexMatrix pauli(Axis axis);

// Matrix product with an explicit shape check (throws std::invalid_argument).
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

// Kronecker product; `a` is the slow (leftmost, qubit-1) factor.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Tensor product of states, same ordering convention.
ComplexVector kron_state(const ComplexVector& a, const ComplexVector& b);

ComplexMatrix dagger(const ComplexMatrix& a);

// sigma_axis acting on qubit k (1-based) of an n_qubits register, identity on
// the rest. Qubit 1 is the leftmost Kronecker factor; n_qubits <= 3.
ComplexMatrix embed_single(Axis axis, int k, int n_qubits);

// Entrywise max modulus.
double max_abs(const ComplexMatrix& a);

// max |h - h^dagger| entrywise.
double hermiticity_defect(const ComplexMatrix& h);

// Eigendecomposition of a Hermitian operator. Constructed once per
// Hamiltonian and reused to produce exp(-i h t) for every segment duration of
// a decoupling schedule; the output is unitary up to round-off by
// construction.
class HermitianEigen {
 public:
  // Throws std::invalid_argument if h is not Hermitian within 1e-10
  // (entrywise), std::runtime_error if the eigensolver fails to converge.
  explicit HermitianEigen(const ComplexMatrix& h);

  // exp(-i h t)
  ComplexMatrix evolution(double t) const;

  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

 private:
  Eigen::VectorXd eigenvalues_;
  ComplexMatrix eigenvectors_;
};

// exp(-i h t) for Hermitian h.
ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t);

}  // namespace ddforge
