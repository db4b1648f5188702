#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace incompat {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// A validated d x d complex Hermitian matrix. Construction symmetrizes the
/// input as (H + H^dag)/2 and rejects it when the correction exceeds the
/// Hermiticity tolerance.
class HermitianOperator {
public:
    static constexpr double kHermTol = 1e-10;

    explicit HermitianOperator(Matrix m);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const Matrix& mat() const { return mat_; }

    static HermitianOperator identity(int d);
    static HermitianOperator zero(int d);

private:
    Matrix mat_;
};

/// Eigendecomposition result: ascending real eigenvalues, orthonormal columns.
struct Spectrum {
    Eigen::VectorXd eigenvalues;
    Matrix eigenvectors;
};

/// Cyclic Jacobi eigensolver for Hermitian matrices. Eigenvalues ascending;
/// each eigenvector phase-fixed so its first nonzero component is positive real.
Spectrum eig_hermitian(const HermitianOperator& H);

double op_norm(const HermitianOperator& H);
double min_eig(const HermitianOperator& H);
double max_eig(const HermitianOperator& H);

/// || [M,N] || computed through the Hermitian form i(MN - NM).
double commutator_norm(const HermitianOperator& M, const HermitianOperator& N);

HermitianOperator kron(const HermitianOperator& A, const HermitianOperator& B);

/// true iff min_eig(H) >= -tol
bool psd_check(const HermitianOperator& H, double tol);

// Pauli matrices and friends, used all over the qubit-level code.
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

}  // namespace incompat
