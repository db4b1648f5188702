#pragma once

#include "incompat/linalg.hpp"

#include <array>
#include <vector>

namespace incompat {

/// Outcome-1 effect M of a two-element POVM (M, I-M). Validates 0 <= M <= I
/// to tolerance 1e-10; violations within the tolerance are clamped.
class BinaryObservable {
public:
    static constexpr double kEffectTol = 1e-10;

    explicit BinaryObservable(HermitianOperator effect);

    int dim() const { return effect_.dim(); }
    const HermitianOperator& effect() const { return effect_; }
    /// I - M
    HermitianOperator complement() const;

private:
    HermitianOperator effect_;
};

/// Noise magnitude lambda in [0,1] and bias b in [-1,1]; the trivial-outcome
/// distribution is p1 = (1+b)/2, p0 = (1-b)/2.
struct NoiseParams {
    double lambda;
    double bias;
    NoiseParams(double lambda_, double bias_);
    double p1() const { return 0.5 * (1.0 + bias); }
    double p0() const { return 0.5 * (1.0 - bias); }
};

/// Four joint-POVM blocks G_11, G_10, G_01, G_00 (in that order).
struct JointCandidate {
    std::array<HermitianOperator, 4> blocks;

    const HermitianOperator& g11() const { return blocks[0]; }
    const HermitianOperator& g10() const { return blocks[1]; }
    const HermitianOperator& g01() const { return blocks[2]; }
    const HermitianOperator& g00() const { return blocks[3]; }

    /// Max Frobenius residual of the marginal equalities against (M, N).
    double equality_residual(const BinaryObservable& M, const BinaryObservable& N) const;
};

/// Symmetric nonnegative 2x2 deformation matrix a = (a_ij), i,j in {0,1}.
class DeformationMatrix {
public:
    DeformationMatrix(double a00, double a01, double a11);

    double a00() const { return a00_; }
    double a01() const { return a01_; }
    double a10() const { return a01_; }
    double a11() const { return a11_; }
    /// a = sum_ij a_ij
    double total() const { return a00_ + 2.0 * a01_ + a11_; }

    /// Entry paired with block G_ij of a JointCandidate, blocks ordered 11,10,01,00.
    double for_block(int k) const;

    static DeformationMatrix unbiased() { return DeformationMatrix(0.5, 0.0, 0.5); }
    /// Diagonal matrix with a_00 = (1-b)/2, a_11 = (1+b)/2 (total 1, bias b).
    static DeformationMatrix from_bias(double b);

private:
    double a00_, a01_, a11_;
};

/// (1-lambda) M + lambda (1+b)/2 I
BinaryObservable deform_noise(const BinaryObservable& M, const NoiseParams& np);

/// (1-lambda) M + lambda (tr M / d) I
BinaryObservable deform_depolarize(const BinaryObservable& M, double lambda);

/// Heisenberg-picture channel action M -> sum_i K_i^dag M K_i.
/// Requires sum_i K_i^dag K_i = I within 1e-9.
BinaryObservable apply_channel(const std::vector<Matrix>& kraus, const BinaryObservable& M);

/// G_11 = G, G_10 = M-G, G_01 = N-G, G_00 = I-M-N+G.
JointCandidate joint_from_free_block(const HermitianOperator& G, const BinaryObservable& M,
                                     const BinaryObservable& N);

/// P_theta = (I + sin(theta) sigma_x + cos(theta) sigma_z)/2, a rank-1 projection.
BinaryObservable qubit_projector(double theta);

/// E = (alpha I + m . sigma)/2; requires |m| <= min(alpha, 2-alpha).
BinaryObservable effect_from_bloch(double alpha, const std::array<double, 3>& m);

}  // namespace incompat
