#pragma once

#include "incompat/povm.hpp"

#include <optional>
#include <string>

namespace incompat {
namespace sdp {

struct IncompatProgram {
    BinaryObservable M, N;
    DeformationMatrix a;
    double tol = 1e-7;

    IncompatProgram(BinaryObservable m, BinaryObservable n, DeformationMatrix def,
                    double tolerance = 1e-7);
};

/// Inner max-min-eigenvalue result at a fixed deformation mu: the optimal
/// slack t (each shifted block >= t I) and the maximizing free block.
struct FeasibilityResult {
    bool feasible = false;
    double t = 0.0;                 // optimal slack; margin |t| when infeasible
    HermitianOperator free_block = HermitianOperator::zero(1);  // G_11 attaining the slack
    int newton_steps = 0;
};

enum class SolveStatus { optimal, feasible_only, numerical_failure };

struct IncompatResult {
    double mu_star = 0.0;           // I_a(M, N)
    JointCandidate joint{{HermitianOperator::zero(1), HermitianOperator::zero(1),
                          HermitianOperator::zero(1), HermitianOperator::zero(1)}};
    // blocks at mu_star + tol
    double dual_lower = 0.0;        // seesaw lower bound
    double gap = 0.0;               // mu_star - dual_lower
    SolveStatus status = SolveStatus::numerical_failure;
};

/// Barrier solve of the inner problem at fixed mu >= 0. Optional warm start
/// from a previous free block.
FeasibilityResult feasible_at(double mu, const IncompatProgram& prog,
                              const HermitianOperator* warm = nullptr);

/// Bisection over the monotone feasibility predicate, certified by the
/// seesaw dual bound.
IncompatResult solve_incompat(const IncompatProgram& prog);

/// Least depolarizing-noise weight making the pair compatible. Verifies
/// bracket monotonicity by sampling rather than assuming it.
struct SteerResult {
    double lambda = 0.0;
    bool monotone_verified = false;
};
SteerResult solve_steer(const BinaryObservable& M, const BinaryObservable& N, double tol = 1e-7);

struct CertifyReport {
    double equality_residual = 0.0;
    double min_psd_margin = 0.0;    // min eigenvalue over shifted blocks
    double duality_gap = 0.0;
    bool ok = false;
    std::string detail;
};

CertifyReport certify(const IncompatResult& result, const IncompatProgram& prog);

}  // namespace sdp
}  // namespace incompat
