#include "incompat/circuit.hpp"

#include "incompat/qubit.hpp"
#include "incompat/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace incompat {
namespace circuit {

CircuitSpec::CircuitSpec(int qubits, std::vector<double> angles)
    : n(qubits), thetas(std::move(angles)) {
    if (n < 1 || n > 10) throw std::invalid_argument("CircuitSpec: qubit count must be in [1, 10]");
    if (thetas.size() != (size_t{1} << (n - 1)))
        throw std::invalid_argument("CircuitSpec: need exactly 2^(n-1) angles");
    for (double t : thetas)
        if (t < 0.0 || t > 0.5 * std::numbers::pi + 1e-12)
            throw std::invalid_argument("CircuitSpec: angles must lie in [0, pi/2]");
}

Matrix rotation_y(double theta) {
    double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
    Matrix u(2, 2);
    u << c, -s, s, c;
    return u;
}

namespace {

// sigma_x on qubit k (1-based, qubit 1 most significant) as a permutation.
Matrix x_gate(int n, int k) {
    const int dim = 1 << n;
    const int mask = 1 << (n - k);
    Matrix m = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) m(i ^ mask, i) = 1.0;
    return m;
}

// U_theta on the last qubit controlled on the first n-1 qubits being |1...1>.
Matrix controlled_rotation(int n, double theta) {
    const int dim = 1 << n;
    Matrix m = Matrix::Identity(dim, dim);
    Matrix u = rotation_y(theta);
    m.block(dim - 2, dim - 2, 2, 2) = u;
    return m;
}

}  // namespace

Matrix circuit_unitary(const CircuitSpec& spec) {
    const int n = spec.n;
    const int dim = 1 << n;
    const int patterns = 1 << (n - 1);
    Matrix w = Matrix::Identity(dim, dim);
    for (int i = 0; i < patterns; ++i) {
        Matrix wi = controlled_rotation(n, spec.thetas[i]);
        // flip the control qubits whose pattern bit is 0 so CU fires on block i
        for (int k = 1; k <= n - 1; ++k) {
            if (((i >> (n - 1 - k)) & 1) == 0) {
                Matrix x = x_gate(n, k);
                wi = x * wi * x;
            }
        }
        w = wi * w;
    }
    return w;
}

std::pair<BinaryObservable, BinaryObservable> build_measurement_pair(const CircuitSpec& spec) {
    const int dim = 1 << spec.n;
    Matrix m0 = Matrix::Zero(dim, dim);
    for (int i = 1; i < dim; i += 2) m0(i, i) = 1.0;  // last qubit in |1>
    Matrix w = circuit_unitary(spec);
    Matrix rotated = w.adjoint() * m0 * w;
    return {BinaryObservable(HermitianOperator(std::move(m0))),
            BinaryObservable(HermitianOperator(std::move(rotated)))};
}

double circuit_incompat(const CircuitSpec& spec, double b) {
    auto [m0, moved] = build_measurement_pair(spec);
    double via_spectrum = spectral::inoise_projective(m0, moved, b);
    double via_blocks = 0.0;
    for (double theta : spec.thetas)
        via_blocks = std::max(via_blocks, qubit::inoise_qubit(theta, b));
    if (std::abs(via_spectrum - via_blocks) > 1e-8)
        throw std::runtime_error("circuit_incompat: spectral and block routes disagree");
    return via_blocks;
}

std::vector<double> maximal_bias_points(const CircuitSpec& spec) {
    std::vector<double> out;
    out.reserve(spec.thetas.size());
    for (double theta : spec.thetas) {
        // invert theta_star: imax(b) = 1 - (2(1+cos theta))^(-1/2)
        double m = 1.0 - 1.0 / std::sqrt(2.0 * (1.0 + std::cos(theta)));
        double s = 1.0 / m - 2.0;
        out.push_back(std::sqrt(std::max(0.0, 1.0 - 0.5 * s * s)));
    }
    return out;
}

}  // namespace circuit
}  // namespace incompat
