#pragma once

#include "incompat/povm.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace incompat {
namespace spectral {

/// Angles theta in the open interval (0, pi) with (1+cos theta)/2 in the
/// spectrum of I - (M-N)^2, with multiplicities, ascending.
struct AngleSpectrum {
    std::vector<double> angles;
    bool empty() const { return angles.empty(); }
};

/// Requires M, N projective (M^2 = M within 1e-9).
AngleSpectrum angle_spectrum(const BinaryObservable& M, const BinaryObservable& N);

/// sup over the angle spectrum of the qubit noise robustness; 0 when empty.
double inoise_projective(const BinaryObservable& M, const BinaryObservable& N, double b);

/// Angle arccos(2 F^2 - 1) from the fidelity of two unit vectors; nullopt when
/// F in {0, 1} (compatible rank-1 pair, no angle).
std::optional<double> fidelity_angle(const Vector& phi, const Vector& psi);

/// Half-line binarizations of position and momentum on a centered grid of the
/// given even size; momentum side conjugated by the centered unitary DFT.
std::pair<BinaryObservable, BinaryObservable> qp_binarization(int grid_size);

}  // namespace spectral
}  // namespace incompat
