#pragma once

#include "incompat/povm.hpp"

#include <optional>

namespace incompat {
namespace game {

enum class Scenario { controlled_bias, known_bias, qp_bias, unknown_bias, unknown_both };

/// LR picks the bias: optimal b = 0 regardless of QP's choice.
struct ControlledBiasReport {
    double j_value;            // joint measurability degree (1 + 2||[M,N]||)^(-1/2)
    double qp_optimal_theta;   // pi/2 (||[M,N]|| = 1/2)
    double lr_win_threshold;   // LR wins iff lambda_LR >= this
};
ControlledBiasReport scenario_controlled_bias(const BinaryObservable& M,
                                              const BinaryObservable& N);

/// Bias fixed and known to QP.
struct KnownBiasReport {
    double qp_optimal_theta;   // theta_star(b)
    double lr_win_threshold;   // imax(b)
};
KnownBiasReport scenario_known_bias(double b);

/// QP picks the bias: maximally biased noise plus near-commuting measurements.
struct QpBiasReport {
    double b_choice;           // +-1
    double lr_win_threshold;   // 1/2
    double recommended_theta;  // small angle (near-commuting pair)
};
QpBiasReport scenario_qp_bias();

/// Bias fixed, unknown to QP, drawn uniformly.
struct UnknownBiasReport {
    double qp_optimal_theta;
    double p_qp_win;
};
UnknownBiasReport scenario_unknown_bias(double lambda_lr);

/// Both bias and magnitude unknown, drawn uniformly.
struct UnknownBothReport {
    double p_qp_win;   // fixed-theta value, or the maximal-resource value
    double p_max;      // integral of imax over b
};
/// draw_b_squared switches the prior from uniform b to uniform b^2.
UnknownBothReport scenario_unknown_both(std::optional<double> theta,
                                        bool draw_b_squared = false);

/// Adaptive Simpson quadrature, exposed for reuse in tests.
double integrate(double (*f)(double, void*), void* ctx, double a, double b, double tol);

}  // namespace game
}  // namespace incompat
