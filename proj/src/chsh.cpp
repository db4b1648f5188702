#include "incompat/chsh.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace incompat {
namespace chsh {

namespace {

void check_contraction(const HermitianOperator& X, const char* name) {
    if (op_norm(X) > 1.0 + 1e-9)
        throw std::invalid_argument(std::string("BellSetting: ") + name + " violates -I <= X <= I");
}

HermitianOperator sign_operator(const HermitianOperator& H) {
    Spectrum s = eig_hermitian(H);
    Eigen::VectorXd sgn(H.dim());
    for (int i = 0; i < H.dim(); ++i) sgn(i) = s.eigenvalues(i) < 0.0 ? -1.0 : 1.0;
    return HermitianOperator(s.eigenvectors * sgn.asDiagonal() * s.eigenvectors.adjoint());
}

// Reduce <psi|(C (x) B)psi> to tr[T B]; psi lives on C^dA (x) C^dB.
Matrix bob_side(const Matrix& C, const Vector& psi, int dA, int dB) {
    Eigen::Map<const Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> Psi(
        psi.data(), dA, dB);
    Matrix t = (Psi.adjoint() * C * Psi).transpose();
    return 0.5 * (t + t.adjoint());
}

Matrix kron_m(const Matrix& A, const Matrix& B) {
    Matrix out(A.rows() * B.rows(), A.cols() * B.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return out;
}

Matrix random_hermitian(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = cxd(g(rng), g(rng));
    return 0.5 * (m + m.adjoint());
}

Vector random_state(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vector v(d);
    for (int i = 0; i < d; ++i) v(i) = cxd(g(rng), g(rng));
    return v / v.norm();
}

}  // namespace

BellSetting::BellSetting(HermitianOperator a1, HermitianOperator a2, HermitianOperator b1,
                         HermitianOperator b2, Vector state)
    : A1(std::move(a1)), A2(std::move(a2)), B1(std::move(b1)), B2(std::move(b2)),
      psi(std::move(state)) {
    check_contraction(A1, "A1");
    check_contraction(A2, "A2");
    check_contraction(B1, "B1");
    check_contraction(B2, "B2");
    if (A1.dim() != A2.dim() || B1.dim() != B2.dim())
        throw std::invalid_argument("BellSetting: factor dimensions mismatch");
    if (psi.size() != A1.dim() * B1.dim())
        throw std::invalid_argument("BellSetting: state dimension mismatch");
    if (std::abs(psi.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("BellSetting: state not normalized");
}

HermitianOperator bell_operator(const BellSetting& s) {
    HermitianOperator sum(s.B1.mat() + s.B2.mat());
    HermitianOperator diff(s.B1.mat() - s.B2.mat());
    Matrix b = 0.5 * (kron(s.A1, sum).mat() + kron(s.A2, diff).mat());
    return HermitianOperator(std::move(b));
}

HermitianOperator s_operator(const HermitianOperator& B2, const DeformationMatrix& a) {
    const int d = B2.dim();
    Matrix id = Matrix::Identity(d, d);
    Matrix s = 0.5 * (a.a00() * (id - B2.mat()) + a.a11() * (id + B2.mat()) +
                      2.0 * a.a01() * id);
    return HermitianOperator(std::move(s));
}

namespace {

struct RatioParts {
    Matrix t1;   // Bob-side of (A1+A2)/4, paired with B1
    Matrix t2;   // Bob-side of (A1-A2)/4, paired with B2
    Matrix t0;   // Bob-side of I (Bob marginal), for the denominator
};

// numerator <psi| (B - I)/2 psi>, denominator <psi| I (x) S_a psi>
double numerator(const RatioParts& p, const Matrix& B1, const Matrix& B2) {
    return ((p.t1 * B1).trace() + (p.t2 * B2).trace()).real() - 0.5;
}

double denominator(const RatioParts& p, const Matrix& B2, double alpha, double beta) {
    return alpha + beta * (p.t0 * B2).trace().real();
}

}  // namespace

SeesawResult dual_value_lower(const BinaryObservable& M, const BinaryObservable& N,
                              const DeformationMatrix& a, int max_sweeps, std::uint64_t seed,
                              int restarts) {
    const int d = M.dim();
    if (N.dim() != d) throw std::invalid_argument("dual_value_lower: dimension mismatch");
    if (a.total() <= 0.0) throw std::invalid_argument("dual_value_lower: zero deformation");

    // Entrywise-larger deformations only lower I_a, so a small diagonal
    // regularization keeps the seesaw value a valid lower bound while making
    // the denominator support stable when a00 or a11 vanishes.
    const double reg = 1e-9 * a.total();
    const DeformationMatrix ar(a.a00() + reg, a.a01(), a.a11() + reg);

    const Matrix id = Matrix::Identity(d, d);
    const Matrix a1 = id - 2.0 * N.effect().mat();
    const Matrix a2 = 2.0 * M.effect().mat() - id;
    const Matrix c1 = 0.25 * (a1 + a2);
    const Matrix c2 = 0.25 * (a1 - a2);
    const double alpha = 0.5 * (ar.a00() + ar.a11() + 2.0 * ar.a01());
    const double beta = 0.5 * (ar.a11() - ar.a00());

    SeesawResult best;
    best.value = -std::numeric_limits<double>::infinity();

    for (int r = 0; r < restarts; ++r) {
        std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * (r + 1));
        Matrix B1 = sign_operator(HermitianOperator(random_hermitian(d, rng))).mat();
        Matrix B2 = sign_operator(HermitianOperator(random_hermitian(d, rng))).mat();
        Vector psi = random_state(d * d, rng);

        double value = -std::numeric_limits<double>::infinity();
        bool converged = false;
        int sweep = 0;
        for (; sweep < max_sweeps; ++sweep) {
            // psi-step: generalized eigenproblem on the support of I (x) S_a
            Matrix sa = s_operator(HermitianOperator(B2), ar).mat();
            Spectrum ssa = eig_hermitian(HermitianOperator(sa));
            std::vector<int> supp;
            for (int i = 0; i < d; ++i)
                if (ssa.eigenvalues(i) > 1e-12) supp.push_back(i);
            if (supp.empty()) break;  // unbounded direction; keep previous value
            const int rdim = static_cast<int>(supp.size());
            Matrix vhalf(d, rdim);
            for (int i = 0; i < rdim; ++i)
                vhalf.col(i) =
                    ssa.eigenvectors.col(supp[i]) / std::sqrt(ssa.eigenvalues(supp[i]));
            Matrix lift(d * d, d * rdim);
            lift.setZero();
            for (int ai = 0; ai < d; ++ai)
                lift.block(ai * d, ai * rdim, d, rdim) = vhalf;

            Matrix bell = 0.5 * (kron_m(a1, B1 + B2) + kron_m(a2, B1 - B2));
            Matrix x = 0.5 * (bell - Matrix::Identity(d * d, d * d));
            Matrix red = lift.adjoint() * x * lift;
            HermitianOperator reduced(0.5 * (red + red.adjoint()));
            Spectrum sx = eig_hermitian(reduced);
            double top = sx.eigenvalues(d * rdim - 1);
            psi = lift * sx.eigenvectors.col(d * rdim - 1);
            psi /= psi.norm();
            double new_value = top;

            RatioParts parts{bob_side(c1, psi, d, d), bob_side(c2, psi, d, d),
                             bob_side(id, psi, d, d)};

            // B1-step: linear in the numerator only
            B1 = sign_operator(HermitianOperator(parts.t1)).mat();

            // B2-step: Dinkelbach on the affine-affine ratio
            double den = denominator(parts, B2, alpha, beta);
            if (den < 1e-12) break;
            double ratio = numerator(parts, B1, B2) / den;
            for (int inner = 0; inner < 50; ++inner) {
                Matrix k = parts.t2 - ratio * beta * parts.t0;
                Matrix cand = sign_operator(HermitianOperator(0.5 * (k + k.adjoint()))).mat();
                double cden = denominator(parts, cand, alpha, beta);
                if (cden < 1e-12) break;
                double cratio = numerator(parts, B1, cand) / cden;
                if (cratio < ratio - 1e-12) break;
                B2 = cand;
                if (cratio - ratio < 1e-10) {
                    ratio = cratio;
                    break;
                }
                ratio = cratio;
            }
            new_value = std::max(new_value, ratio);

            if (std::isfinite(value) && new_value - value < 1e-12) {
                value = std::max(value, new_value);
                converged = true;
                break;
            }
            value = new_value;
        }
        if (value > best.value) {
            best.value = value;
            best.sweeps = sweep + 1;
            best.converged = converged;
        }
    }
    if (!std::isfinite(best.value)) {
        best.value = 0.0;
        best.converged = false;
    }
    return best;
}

namespace {

// sup over psi of <psi|(B - I)psi> / <psi| I (x) (I + b B2) psi> via the
// generalized eigenproblem restricted to the support of the denominator.
double best_ratio(const Matrix& bell, const Matrix& b2m, double b, int d) {
    Matrix y = Matrix::Identity(d, d) + b * b2m;
    Spectrum sy = eig_hermitian(HermitianOperator(y));
    std::vector<int> supp;
    for (int i = 0; i < d; ++i)
        if (sy.eigenvalues(i) > 1e-8) supp.push_back(i);
    if (supp.empty()) return -std::numeric_limits<double>::infinity();
    const int rdim = static_cast<int>(supp.size());
    Matrix vhalf(d, rdim);
    for (int i = 0; i < rdim; ++i)
        vhalf.col(i) = sy.eigenvectors.col(supp[i]) / std::sqrt(sy.eigenvalues(supp[i]));
    Matrix lift(d * d, d * rdim);
    lift.setZero();
    for (int ai = 0; ai < d; ++ai) lift.block(ai * d, ai * rdim, d, rdim) = vhalf;
    Matrix x = bell - Matrix::Identity(d * d, d * d);
    Matrix red = lift.adjoint() * x * lift;
    Spectrum sx = eig_hermitian(HermitianOperator(0.5 * (red + red.adjoint())));
    return sx.eigenvalues(d * rdim - 1);
}

}  // namespace

TsirelsonReport tsirelson_check(int samples, std::uint64_t seed) {
    TsirelsonReport rep;
    std::mt19937_64 rng(seed);
    const double biases[] = {-1.0, -0.9, -0.6, -0.3, 0.0, 0.3, 0.6, 0.9, 1.0};
    for (int s = 0; s < samples; ++s) {
        const int d = (s % 2 == 0) ? 2 : 4;
        Matrix a1m, a2m, b1m, b2m;
        if (s == 0) {
            // include the CHSH-optimal settings so the b = 0 bound is touched
            const double r = 1.0 / std::sqrt(2.0);
            a1m = pauli_z();
            a2m = pauli_x();
            b1m = r * (pauli_z() + pauli_x());
            b2m = r * (pauli_z() - pauli_x());
        } else {
            auto contraction = [&]() {
                Matrix h = random_hermitian(d, rng);
                double n = op_norm(HermitianOperator(h));
                return n > 1e-12 ? Matrix(h / n) : Matrix::Identity(d, d).eval();
            };
            a1m = contraction();
            a2m = contraction();
            b1m = contraction();
            b2m = contraction();
        }
        Matrix sum = b1m + b2m, diff = b1m - b2m;
        Matrix bell = 0.5 * (kron_m(a1m, sum) + kron_m(a2m, diff));
        for (double b : biases) {
            double ratio = best_ratio(bell, b2m, b, d);
            if (!std::isfinite(ratio)) continue;
            double bound = 1.0 / (1.0 + std::sqrt(2.0 * (1.0 - b * b)));
            rep.max_slack = std::max(rep.max_slack, ratio - bound);
            rep.max_ratio = std::max(rep.max_ratio, ratio);
        }
        ++rep.samples;
    }
    rep.ok = rep.max_slack <= 1e-8;
    return rep;
}

}  // namespace chsh
}  // namespace incompat
