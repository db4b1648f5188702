#include "incompat/spectral.hpp"

#include "incompat/qubit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace incompat {
namespace spectral {

namespace {

constexpr double kEdgeEps = 1e-9;  // spectrum exclusion band around 0 and 1

void require_projective(const BinaryObservable& M, const char* who) {
    const Matrix& m = M.effect().mat();
    if ((m * m - m).norm() > 1e-9)
        throw std::invalid_argument(std::string(who) + ": input effect is not a projection");
}

}  // namespace

AngleSpectrum angle_spectrum(const BinaryObservable& M, const BinaryObservable& N) {
    require_projective(M, "angle_spectrum");
    require_projective(N, "angle_spectrum");
    if (M.dim() != N.dim()) throw std::invalid_argument("angle_spectrum: dimension mismatch");
    const int d = M.dim();
    Matrix diff = M.effect().mat() - N.effect().mat();
    HermitianOperator op(Matrix::Identity(d, d) - diff * diff);
    Spectrum s = eig_hermitian(op);
    AngleSpectrum out;
    for (int i = 0; i < d; ++i) {
        double x = s.eigenvalues(i);
        if (x > kEdgeEps && x < 1.0 - kEdgeEps)
            out.angles.push_back(std::acos(2.0 * x - 1.0));
    }
    std::sort(out.angles.begin(), out.angles.end());
    return out;
}

double inoise_projective(const BinaryObservable& M, const BinaryObservable& N, double b) {
    AngleSpectrum spec = angle_spectrum(M, N);
    double best = 0.0;
    for (double theta : spec.angles) best = std::max(best, qubit::inoise_qubit(theta, b));
    return best;
}

std::optional<double> fidelity_angle(const Vector& phi, const Vector& psi) {
    double np = phi.norm(), nq = psi.norm();
    if (np < 1e-14 || nq < 1e-14) throw std::invalid_argument("fidelity_angle: zero vector");
    if (std::abs(np - 1.0) > 1e-10 || std::abs(nq - 1.0) > 1e-10)
        throw std::invalid_argument("fidelity_angle: vectors must be unit norm");
    double f2 = std::norm(phi.dot(psi));
    if (f2 < kEdgeEps || f2 > 1.0 - kEdgeEps) return std::nullopt;
    return std::acos(2.0 * f2 - 1.0);
}

std::pair<BinaryObservable, BinaryObservable> qp_binarization(int grid_size) {
    if (grid_size < 2 || grid_size % 2 != 0)
        throw std::invalid_argument("qp_binarization: grid size must be even and >= 2");
    const int n = grid_size;
    const double c = 0.5 * (n - 1);

    Matrix qplus = Matrix::Zero(n, n);
    for (int k = 0; k < n; ++k)
        if (k > c) qplus(k, k) = 1.0;  // positive-coordinate points x_k = (k - c) h

    // centered unitary DFT: F_jk = exp(-2 pi i (j-c)(k-c)/n) / sqrt(n)
    Matrix f(n, n);
    const double w = 2.0 * std::numbers::pi / n;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            f(j, k) = std::exp(cxd(0.0, -w * (j - c) * (k - c))) / std::sqrt(double(n));

    Matrix pplus = f.adjoint() * qplus * f;
    // exact projection up to rounding; symmetrize through the validated ctor
    return {BinaryObservable(HermitianOperator(std::move(qplus))),
            BinaryObservable(HermitianOperator(std::move(pplus)))};
}

}  // namespace spectral
}  // namespace incompat
