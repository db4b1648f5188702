#pragma once

#include "incompat/povm.hpp"

#include <cstdint>
#include <vector>

namespace incompat {
namespace chsh {

/// Correlation operators -I <= A1, A2, B1, B2 <= I and a unit state psi on
/// the tensor product of Alice's and Bob's spaces (Alice factor first).
struct BellSetting {
    HermitianOperator A1, A2, B1, B2;
    Vector psi;

    BellSetting(HermitianOperator a1, HermitianOperator a2, HermitianOperator b1,
                HermitianOperator b2, Vector state);
};

/// B = [A1 (x) (B1+B2) + A2 (x) (B1-B2)] / 2
HermitianOperator bell_operator(const BellSetting& s);

/// S_a = [a00 (I - B2) + a11 (I + B2) + 2 a01 I] / 2
HermitianOperator s_operator(const HermitianOperator& B2, const DeformationMatrix& a);

struct SeesawResult {
    double value = 0.0;       // best ratio found; certified lower bound on I_a
    int sweeps = 0;           // sweeps used by the best restart
    bool converged = false;
};

/// Alternating maximization of the scaled CHSH ratio over (psi, B1, B2) with
/// A1 = I - 2N, A2 = 2M - I fixed. Bob's dimension equals Alice's.
SeesawResult dual_value_lower(const BinaryObservable& M, const BinaryObservable& N,
                              const DeformationMatrix& a, int max_sweeps, std::uint64_t seed,
                              int restarts = 8);

struct TsirelsonReport {
    double max_slack = -1.0;    // max over samples of ratio - bound (should stay <= 0)
    double max_ratio = 0.0;     // largest generalized ratio attained
    int samples = 0;
    bool ok = false;            // no sample exceeded the bound beyond 1e-8
};

/// Random-settings check of the generalized Tsirelson inequality
///   <psi|(B - I)psi> / <psi| I (x) (I + b B2) psi>  <=  1/(1 + sqrt(2(1-b^2)))
/// over qubit and dim-4 factors and a grid of biases.
TsirelsonReport tsirelson_check(int samples, std::uint64_t seed);

}  // namespace chsh
}  // namespace incompat
