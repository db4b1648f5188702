#pragma once

#include "incompat/povm.hpp"

namespace incompat {
namespace qubit {

/// Busch criterion for compatibility of two qubit effects.
bool busch_compatible(const BinaryObservable& E, const BinaryObservable& F);

/// Least noise magnitude lambda making the (lambda, b)-deformed pair
/// (P_0, P_theta) compatible. Returns 0 outside theta in (0, pi).
double inoise_qubit(double theta, double b);

/// Closed forms for b = 0 and b = +-1.
double inoise_unbiased(double theta);
double inoise_maxbias(double theta);

/// Largest attainable noise robustness at bias b: 1/(2 + sqrt(2(1-b^2))).
double imax(double b);
/// Angle attaining imax(b).
double theta_star(double b);
/// Spectral point chi_b = (1 - imax(b))^-2 / 4 marking maximal incompatibility.
double chi(double b);

/// Link function f_a(mu) = a mu / (1 + a mu) and its inverse.
double f_a(double mu, double a_total);
double f_a_inv(double lambda, double a_total);
double bias_of(const DeformationMatrix& a);

/// The b >= 0 with inoise_qubit(theta, b) = lambda; 0 below the unbiased
/// value, 1 at or above the supremum over b.
double bias_threshold(double theta, double lambda);

/// Sign of d lambda / d b by central difference; 0 when |derivative| < 1e-6.
int dlambda_db_sign(double theta, double b);

}  // namespace qubit
}  // namespace incompat
