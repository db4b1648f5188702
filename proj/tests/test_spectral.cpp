#include "incompat/spectral.hpp"

#include "incompat/circuit.hpp"
#include "incompat/qubit.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace incompat;

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("angle_spectrum: qubit pair") {
    for (double theta : {0.3, 1.0, kPi / 2, 2.6}) {
        auto spec = spectral::angle_spectrum(qubit_projector(0.0), qubit_projector(theta));
        REQUIRE(spec.angles.size() == 2);
        CHECK(spec.angles[0] == doctest::Approx(theta).epsilon(1e-9));
        CHECK(spec.angles[1] == doctest::Approx(theta).epsilon(1e-9));
    }
}

TEST_CASE("angle_spectrum: commuting and edge cases") {
    Matrix m = Matrix::Zero(3, 3), n = Matrix::Zero(3, 3);
    m(0, 0) = m(1, 1) = 1.0;
    n(1, 1) = n(2, 2) = 1.0;
    auto spec = spectral::angle_spectrum(BinaryObservable{HermitianOperator(m)},
                                         BinaryObservable{HermitianOperator(n)});
    CHECK(spec.empty());

    std::mt19937_64 rng(21);
    BinaryObservable soft{HermitianOperator(0.5 * Matrix::Identity(2, 2))};
    CHECK_THROWS_AS(spectral::angle_spectrum(soft, qubit_projector(0.3)), std::invalid_argument);
    CHECK_THROWS_AS(
        spectral::angle_spectrum(
            BinaryObservable{HermitianOperator(testing::random_projection(3, 1, rng))},
            qubit_projector(0.3)),
        std::invalid_argument);
}

TEST_CASE("angle_spectrum: direct sum of qubit blocks") {
    circuit::CircuitSpec cs(2, {0.7, 1.3});
    auto [m, n] = circuit::build_measurement_pair(cs);
    auto spec = spectral::angle_spectrum(m, n);
    REQUIRE(spec.angles.size() == 4);
    CHECK(spec.angles[0] == doctest::Approx(0.7).epsilon(1e-9));
    CHECK(spec.angles[1] == doctest::Approx(0.7).epsilon(1e-9));
    CHECK(spec.angles[2] == doctest::Approx(1.3).epsilon(1e-9));
    CHECK(spec.angles[3] == doctest::Approx(1.3).epsilon(1e-9));
}

TEST_CASE("inoise_projective reduces to the qubit value") {
    for (double theta : {0.4, kPi / 2, 2.0}) {
        for (double b : {0.0, 0.6, -0.9}) {
            CHECK(spectral::inoise_projective(qubit_projector(0.0), qubit_projector(theta), b) ==
                  doctest::Approx(qubit::inoise_qubit(theta, b)).epsilon(1e-9));
        }
    }
    circuit::CircuitSpec cs(2, {0.7, 1.3});
    auto [m, n] = circuit::build_measurement_pair(cs);
    CHECK(spectral::inoise_projective(m, n, 0.0) ==
          doctest::Approx(qubit::inoise_qubit(1.3, 0.0)).epsilon(1e-9));
}

TEST_CASE("fidelity_angle") {
    for (double alpha : {0.2, 0.6, 1.1}) {
        Vector phi = Vector::Zero(2), psi(2);
        phi(0) = 1.0;
        psi << std::cos(alpha), std::sin(alpha);
        auto ang = spectral::fidelity_angle(phi, psi);
        REQUIRE(ang.has_value());
        CHECK(*ang == doctest::Approx(2.0 * alpha).epsilon(1e-10));
    }

    Vector e0 = Vector::Zero(3), e1 = Vector::Zero(3);
    e0(0) = 1.0;
    e1(1) = 1.0;
    CHECK_FALSE(spectral::fidelity_angle(e0, e1).has_value());
    CHECK_FALSE(spectral::fidelity_angle(e0, e0).has_value());
    CHECK_THROWS_AS(spectral::fidelity_angle(e0, 0.5 * e1), std::invalid_argument);
}

TEST_CASE("qp_binarization") {
    CHECK_THROWS_AS(spectral::qp_binarization(3), std::invalid_argument);
    CHECK_THROWS_AS(spectral::qp_binarization(0), std::invalid_argument);

    // the 2-point grid gives a maximally incompatible pair
    auto [q2, p2] = spectral::qp_binarization(2);
    CHECK((p2.effect().mat() - 0.5 * (Matrix::Identity(2, 2) + pauli_y())).norm() <= 1e-12);
    CHECK(spectral::inoise_projective(q2, p2, 0.0) ==
          doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-9));

    // pinned regression: the 128-point spectrum reaches both ends of (0, pi)
    // and its interior gaps shrink as the grid refines
    {
        auto [q, p] = spectral::qp_binarization(128);
        auto spec = spectral::angle_spectrum(q, p);
        CHECK(spec.angles.size() == 36);
        CHECK(spec.angles.front() < 1e-3);
        CHECK(spec.angles.back() > kPi - 1e-3);
        double gap = 0.0;
        for (size_t i = 1; i < spec.angles.size(); ++i)
            gap = std::max(gap, spec.angles[i] - spec.angles[i - 1]);
        CHECK(gap == doctest::Approx(0.761452876539).epsilon(1e-9));
    }

    for (int n : {4, 8, 16}) {
        auto [q, p] = spectral::qp_binarization(n);
        const Matrix& pm = p.effect().mat();
        CHECK((pm * pm - pm).norm() <= 1e-9);
        CHECK(std::abs(pm.trace().real() - 0.5 * n) <= 1e-9);
        double v = spectral::inoise_projective(q, p, 0.0);
        CHECK(v > 0.0);
        CHECK(v <= qubit::imax(0.0) + 1e-9);
    }
}
