#include "incompat/qubit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace incompat {
namespace qubit {

namespace {

constexpr double kPi = std::numbers::pi;

struct Bloch {
    double alpha;
    double m[3];
};

Bloch bloch_of(const BinaryObservable& E) {
    if (E.dim() != 2) throw std::invalid_argument("busch_compatible: qubit effects required");
    const Matrix& e = E.effect().mat();
    Bloch b;
    b.alpha = e.trace().real();
    b.m[0] = (e * pauli_x()).trace().real();
    b.m[1] = (e * pauli_y()).trace().real();
    b.m[2] = (e * pauli_z()).trace().real();
    return b;
}

double pairing(const Bloch& e, const Bloch& f) {
    return e.alpha * f.alpha - (e.m[0] * f.m[0] + e.m[1] * f.m[1] + e.m[2] * f.m[2]);
}

Bloch perp(const Bloch& e) { return Bloch{2.0 - e.alpha, {-e.m[0], -e.m[1], -e.m[2]}}; }

// LHS - RHS of the quartic compatibility equation for the deformed pair.
double comp_gap(double lambda, double theta, double b) {
    double u = 1.0 - lambda;
    double lhs = u * u * std::cos(theta) - lambda * lambda * b * b;
    return lhs * lhs - (2.0 * u * u - 1.0 + 2.0 * lambda * lambda * b * b);
}

}  // namespace

bool busch_compatible(const BinaryObservable& E, const BinaryObservable& F) {
    Bloch e = bloch_of(E), f = bloch_of(F);
    Bloch ep = perp(e), fp = perp(f);
    double prod = pairing(e, e) * pairing(ep, ep) * pairing(f, f) * pairing(fp, fp);
    double value = std::sqrt(std::max(prod, 0.0)) - pairing(e, ep) * pairing(f, fp) +
                   pairing(e, fp) * pairing(ep, f) + pairing(e, f) * pairing(ep, fp);
    return value >= -1e-10;
}

double inoise_qubit(double theta, double b) {
    if (std::abs(b) > 1.0) throw std::invalid_argument("inoise_qubit: |b| > 1");
    if (theta <= 0.0 || theta >= kPi) return 0.0;  // commuting pair
    double lo = 0.0, hi = 0.5;
    // unique sign change on [0, 1/2]: negative below the root
    for (int it = 0; it < 64 && hi - lo > 1e-10; ++it) {
        double mid = 0.5 * (lo + hi);
        if (comp_gap(mid, theta, b) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double inoise_unbiased(double theta) { return 1.0 - 1.0 / std::sqrt(1.0 + std::sin(theta)); }

double inoise_maxbias(double theta) {
    return 1.0 - 1.0 / (1.0 + std::sqrt(0.5 * (1.0 + std::cos(theta))));
}

double imax(double b) { return 1.0 / (2.0 + std::sqrt(2.0 * (1.0 - b * b))); }

double theta_star(double b) {
    double u = 1.0 - imax(b);
    double c = 0.5 / (u * u) - 1.0;
    return std::acos(std::clamp(c, -1.0, 1.0));
}

double chi(double b) {
    double u = 1.0 - imax(b);
    return 0.25 / (u * u);
}

double f_a(double mu, double a_total) {
    if (mu < 0.0) throw std::invalid_argument("f_a: mu < 0");
    return a_total * mu / (1.0 + a_total * mu);
}

double f_a_inv(double lambda, double a_total) {
    if (lambda < 0.0 || lambda >= 1.0) throw std::invalid_argument("f_a_inv: lambda not in [0,1)");
    return lambda / (a_total * (1.0 - lambda));
}

double bias_of(const DeformationMatrix& a) {
    double total = a.total();
    if (total <= 0.0) throw std::invalid_argument("bias_of: zero deformation matrix");
    return 2.0 * (a.a11() + a.a01()) / total - 1.0;
}

double bias_threshold(double theta, double lambda) {
    if (lambda <= inoise_qubit(theta, 0.0)) return 0.0;
    if (lambda >= inoise_qubit(theta, 1.0)) return 1.0;
    double lo = 0.0, hi = 1.0;
    // lambda(b) is non-decreasing in b >= 0
    for (int it = 0; it < 64 && hi - lo > 1e-10; ++it) {
        double mid = 0.5 * (lo + hi);
        if (inoise_qubit(theta, mid) < lambda)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

int dlambda_db_sign(double theta, double b) {
    const double h = 1e-5;
    double d = (inoise_qubit(theta, b + h) - inoise_qubit(theta, b - h)) / (2.0 * h);
    if (std::abs(d) < 1e-6) return 0;
    return d > 0.0 ? 1 : -1;
}

}  // namespace qubit
}  // namespace incompat
