#include "incompat/game.hpp"

#include "incompat/qubit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace incompat {
namespace game {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinThreshold = 0.29289321881345254;  // 1 - 1/sqrt(2)

double simpson(double (*f)(double, void*), void* ctx, double a, double b, double fa, double fm,
               double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm, ctx), frm = f(rm, ctx);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson(f, ctx, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson(f, ctx, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(double (*f)(double, void*), void* ctx, double a, double b, double tol) {
    double fa = f(a, ctx), fb = f(b, ctx), fm = f(0.5 * (a + b), ctx);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson(f, ctx, a, b, fa, fm, fb, whole, tol, 48);
}

ControlledBiasReport scenario_controlled_bias(const BinaryObservable& M,
                                              const BinaryObservable& N) {
    double cn = commutator_norm(M.effect(), N.effect());
    return {1.0 / std::sqrt(1.0 + 2.0 * cn), 0.5 * kPi, kMinThreshold};
}

KnownBiasReport scenario_known_bias(double b) {
    if (std::abs(b) > 1.0) throw std::invalid_argument("scenario_known_bias: |b| > 1");
    return {qubit::theta_star(b), qubit::imax(b)};
}

QpBiasReport scenario_qp_bias() { return {1.0, 0.5, 1e-3}; }

UnknownBiasReport scenario_unknown_bias(double lambda_lr) {
    if (lambda_lr <= 0.0 || lambda_lr > 0.5)
        throw std::invalid_argument("scenario_unknown_bias: lambda_LR must be in (0, 1/2]");
    if (lambda_lr <= kMinThreshold) return {0.5 * kPi, 1.0};
    double inv = 1.0 / lambda_lr;
    double theta = std::acos(std::clamp(0.5 / ((1.0 - lambda_lr) * (1.0 - lambda_lr)) - 1.0,
                                        -1.0, 1.0));
    double arg = 0.5 * inv * inv - (inv - 1.0) * (inv - 1.0);
    return {theta, 1.0 - std::sqrt(std::max(arg, 0.0))};
}

namespace {

struct ThetaCtx {
    double theta;
    bool has_theta;
};

double integrand_b(double b, void* ctx) {
    const ThetaCtx* c = static_cast<const ThetaCtx*>(ctx);
    return c->has_theta ? qubit::inoise_qubit(c->theta, b) : qubit::imax(b);
}

double integrand_bsq(double u, void* ctx) {
    double b = std::sqrt(std::max(u, 0.0));
    const ThetaCtx* c = static_cast<const ThetaCtx*>(ctx);
    // symmetric in the sign of b
    return c->has_theta ? qubit::inoise_qubit(c->theta, b) : qubit::imax(b);
}

}  // namespace

UnknownBothReport scenario_unknown_both(std::optional<double> theta, bool draw_b_squared) {
    if (theta && (*theta <= 0.0 || *theta >= kPi))
        throw std::invalid_argument("scenario_unknown_both: theta must be in (0, pi)");
    ThetaCtx fixed{theta.value_or(0.0), theta.has_value()};
    ThetaCtx maximal{0.0, false};
    double p_fixed, p_max;
    if (draw_b_squared) {
        // win probability doubles relative to the half-interval integral
        p_fixed = 2.0 * integrate(integrand_bsq, &fixed, 0.0, 1.0, 1e-8);
        p_max = 2.0 * integrate(integrand_bsq, &maximal, 0.0, 1.0, 1e-8);
    } else {
        p_fixed = integrate(integrand_b, &fixed, -1.0, 1.0, 1e-8);
        p_max = integrate(integrand_b, &maximal, -1.0, 1.0, 1e-8);
    }
    return {theta ? p_fixed : p_max, p_max};
}

}  // namespace game
}  // namespace incompat
