#pragma once

#include "incompat/povm.hpp"

#include <utility>
#include <vector>

namespace incompat {
namespace circuit {

/// n-qubit circuit with one rotation angle per control pattern of the first
/// n-1 qubits. thetas has length 2^(n-1), each angle in [0, pi/2].
struct CircuitSpec {
    int n;
    std::vector<double> thetas;

    CircuitSpec(int qubits, std::vector<double> angles);
};

/// Rotation exp(-i theta/2 sigma_y).
Matrix rotation_y(double theta);

/// Total circuit unitary W = prod_i W_i(theta_i), where W_i conjugates the
/// controlled rotation CU_theta by Pauli-X gates selecting pattern i.
Matrix circuit_unitary(const CircuitSpec& spec);

/// (M0, W^dag M0 W) with M0 = I^(n-1) (x) |1><1|; both exact projections.
std::pair<BinaryObservable, BinaryObservable> build_measurement_pair(const CircuitSpec& spec);

/// Noise robustness of the circuit pair at bias b. Computed through the
/// high-dimensional angle spectrum and cross-checked against the max of the
/// per-block qubit values; the two routes must agree within 1e-8.
double circuit_incompat(const CircuitSpec& spec, double b);

/// For each theta_i the bias b >= 0 at which the circuit pair attains the
/// maximal noise robustness imax(b).
std::vector<double> maximal_bias_points(const CircuitSpec& spec);

}  // namespace circuit
}  // namespace incompat
