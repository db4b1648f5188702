#include "incompat/povm.hpp"

#include <cmath>
#include <stdexcept>

namespace incompat {

namespace {

// Clamp eigenvalues to [0,1] when they only stray by at most tol.
HermitianOperator validate_effect(HermitianOperator E, double tol) {
    Spectrum s = eig_hermitian(E);
    double lo = s.eigenvalues(0);
    double hi = s.eigenvalues(E.dim() - 1);
    if (lo < -tol || hi > 1.0 + tol)
        throw std::invalid_argument("BinaryObservable: effect outside [0, I] (eigenvalues " +
                                    std::to_string(lo) + ", " + std::to_string(hi) + ")");
    if (lo >= 0.0 && hi <= 1.0) return E;
    Eigen::VectorXd clamped = s.eigenvalues.cwiseMax(0.0).cwiseMin(1.0);
    Matrix m = s.eigenvectors * clamped.asDiagonal() * s.eigenvectors.adjoint();
    return HermitianOperator(std::move(m));
}

}  // namespace

BinaryObservable::BinaryObservable(HermitianOperator effect)
    : effect_(validate_effect(std::move(effect), kEffectTol)) {}

HermitianOperator BinaryObservable::complement() const {
    return HermitianOperator(Matrix::Identity(dim(), dim()) - effect_.mat());
}

NoiseParams::NoiseParams(double lambda_, double bias_) : lambda(lambda_), bias(bias_) {
    if (lambda < 0.0 || lambda > 1.0) throw std::invalid_argument("NoiseParams: lambda not in [0,1]");
    if (bias < -1.0 || bias > 1.0) throw std::invalid_argument("NoiseParams: bias not in [-1,1]");
}

double JointCandidate::equality_residual(const BinaryObservable& M,
                                         const BinaryObservable& N) const {
    const Matrix& g11 = blocks[0].mat();
    const Matrix& g10 = blocks[1].mat();
    const Matrix& g01 = blocks[2].mat();
    const Matrix& g00 = blocks[3].mat();
    const int d = blocks[0].dim();
    double r1 = (g11 + g10 - M.effect().mat()).norm();
    double r2 = (g11 + g01 - N.effect().mat()).norm();
    double r3 = (g11 + g10 + g01 + g00 - Matrix::Identity(d, d)).norm();
    return std::max({r1, r2, r3});
}

DeformationMatrix::DeformationMatrix(double a00, double a01, double a11)
    : a00_(a00), a01_(a01), a11_(a11) {
    if (a00 < 0.0 || a01 < 0.0 || a11 < 0.0)
        throw std::invalid_argument("DeformationMatrix: entries must be nonnegative");
}

double DeformationMatrix::for_block(int k) const {
    switch (k) {
        case 0: return a11_;
        case 1: return a01_;
        case 2: return a01_;
        case 3: return a00_;
        default: throw std::invalid_argument("DeformationMatrix: block index out of range");
    }
}

DeformationMatrix DeformationMatrix::from_bias(double b) {
    if (b < -1.0 || b > 1.0) throw std::invalid_argument("DeformationMatrix: bias not in [-1,1]");
    return DeformationMatrix(0.5 * (1.0 - b), 0.0, 0.5 * (1.0 + b));
}

BinaryObservable deform_noise(const BinaryObservable& M, const NoiseParams& np) {
    const int d = M.dim();
    Matrix m = (1.0 - np.lambda) * M.effect().mat() +
               np.lambda * np.p1() * Matrix::Identity(d, d);
    return BinaryObservable(HermitianOperator(std::move(m)));
}

BinaryObservable deform_depolarize(const BinaryObservable& M, double lambda) {
    if (lambda < 0.0 || lambda > 1.0)
        throw std::invalid_argument("deform_depolarize: lambda not in [0,1]");
    const int d = M.dim();
    double fill = M.effect().mat().trace().real() / d;
    Matrix m = (1.0 - lambda) * M.effect().mat() + lambda * fill * Matrix::Identity(d, d);
    return BinaryObservable(HermitianOperator(std::move(m)));
}

BinaryObservable apply_channel(const std::vector<Matrix>& kraus, const BinaryObservable& M) {
    if (kraus.empty()) throw std::invalid_argument("apply_channel: empty Kraus set");
    const int d = M.dim();
    Matrix unit = Matrix::Zero(d, d);
    for (const Matrix& k : kraus) {
        if (k.rows() != d || k.cols() != d)
            throw std::invalid_argument("apply_channel: Kraus dimension mismatch");
        unit += k.adjoint() * k;
    }
    if ((unit - Matrix::Identity(d, d)).norm() > 1e-9)
        throw std::invalid_argument("apply_channel: Kraus operators do not sum to identity");
    Matrix out = Matrix::Zero(d, d);
    for (const Matrix& k : kraus) out += k.adjoint() * M.effect().mat() * k;
    return BinaryObservable(HermitianOperator(std::move(out)));
}

JointCandidate joint_from_free_block(const HermitianOperator& G, const BinaryObservable& M,
                                     const BinaryObservable& N) {
    const int d = G.dim();
    if (M.dim() != d || N.dim() != d)
        throw std::invalid_argument("joint_from_free_block: dimension mismatch");
    Matrix id = Matrix::Identity(d, d);
    return JointCandidate{{HermitianOperator(G.mat()),
                           HermitianOperator(M.effect().mat() - G.mat()),
                           HermitianOperator(N.effect().mat() - G.mat()),
                           HermitianOperator(id - M.effect().mat() - N.effect().mat() + G.mat())}};
}

BinaryObservable qubit_projector(double theta) {
    Matrix m = 0.5 * (Matrix::Identity(2, 2) + std::sin(theta) * pauli_x() +
                      std::cos(theta) * pauli_z());
    return BinaryObservable(HermitianOperator(std::move(m)));
}

BinaryObservable effect_from_bloch(double alpha, const std::array<double, 3>& m) {
    double norm = std::sqrt(m[0] * m[0] + m[1] * m[1] + m[2] * m[2]);
    if (norm > std::min(alpha, 2.0 - alpha) + 1e-12)
        throw std::invalid_argument("effect_from_bloch: |m| must be <= min(alpha, 2-alpha)");
    Matrix e = 0.5 * (alpha * Matrix::Identity(2, 2) + m[0] * pauli_x() + m[1] * pauli_y() +
                      m[2] * pauli_z());
    return BinaryObservable(HermitianOperator(std::move(e)));
}

}  // namespace incompat
