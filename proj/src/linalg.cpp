#include "incompat/linalg.hpp"

#include <Eigen/Jacobi>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace incompat {

HermitianOperator::HermitianOperator(Matrix m) {
    if (m.rows() < 1 || m.rows() != m.cols())
        throw std::invalid_argument("HermitianOperator: matrix must be square, dim >= 1");
    Matrix sym = 0.5 * (m + m.adjoint());
    double corr = (m - sym).norm();
    if (corr > kHermTol)
        throw std::invalid_argument("HermitianOperator: input not Hermitian (correction " +
                                    std::to_string(corr) + ")");
    mat_ = std::move(sym);
}

HermitianOperator HermitianOperator::identity(int d) {
    return HermitianOperator(Matrix::Identity(d, d));
}

HermitianOperator HermitianOperator::zero(int d) {
    return HermitianOperator(Matrix::Zero(d, d));
}

namespace {

double offdiag_sq(const Matrix& a) {
    double s = 0.0;
    for (int j = 0; j < a.cols(); ++j)
        for (int i = 0; i < j; ++i) s += std::norm(a(i, j));
    return s;
}

}  // namespace

Spectrum eig_hermitian(const HermitianOperator& H) {
    const int d = H.dim();
    Matrix a = H.mat();
    Matrix v = Matrix::Identity(d, d);

    const double tol = 1e-28 * std::max(1.0, a.squaredNorm());
    const int max_sweeps = 80;
    for (int sweep = 0; sweep < max_sweeps && offdiag_sq(a) > tol; ++sweep) {
        for (int p = 0; p < d - 1; ++p) {
            for (int q = p + 1; q < d; ++q) {
                if (std::norm(a(p, q)) == 0.0) continue;
                Eigen::JacobiRotation<cxd> rot;
                rot.makeJacobi(a, p, q);
                a.applyOnTheLeft(p, q, rot.adjoint());
                a.applyOnTheRight(p, q, rot);
                v.applyOnTheRight(p, q, rot);
            }
        }
    }

    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    Spectrum s;
    s.eigenvalues.resize(d);
    s.eigenvectors.resize(d, d);
    for (int k = 0; k < d; ++k) {
        s.eigenvalues(k) = a(order[k], order[k]).real();
        Vector col = v.col(order[k]);
        // phase-fix: first nonzero component made positive real
        for (int i = 0; i < d; ++i) {
            if (std::abs(col(i)) > 1e-12) {
                col *= std::conj(col(i)) / std::abs(col(i));
                break;
            }
        }
        s.eigenvectors.col(k) = col;
    }
    return s;
}

double op_norm(const HermitianOperator& H) {
    Spectrum s = eig_hermitian(H);
    return std::max(std::abs(s.eigenvalues(0)), std::abs(s.eigenvalues(H.dim() - 1)));
}

double min_eig(const HermitianOperator& H) { return eig_hermitian(H).eigenvalues(0); }

double max_eig(const HermitianOperator& H) {
    return eig_hermitian(H).eigenvalues(H.dim() - 1);
}

double commutator_norm(const HermitianOperator& M, const HermitianOperator& N) {
    if (M.dim() != N.dim())
        throw std::invalid_argument("commutator_norm: dimension mismatch");
    Matrix c = M.mat() * N.mat() - N.mat() * M.mat();
    // i[M,N] is Hermitian when [M,N] is anti-Hermitian
    return op_norm(HermitianOperator(cxd(0, 1) * c));
}

HermitianOperator kron(const HermitianOperator& A, const HermitianOperator& B) {
    const int da = A.dim(), db = B.dim();
    Matrix out(da * db, da * db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j)
            out.block(i * db, j * db, db, db) = A.mat()(i, j) * B.mat();
    return HermitianOperator(std::move(out));
}

bool psd_check(const HermitianOperator& H, double tol) { return min_eig(H) >= -tol; }

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0, cxd(0, -1), cxd(0, 1), 0;
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

}  // namespace incompat
