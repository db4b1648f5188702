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

TEST_CASE("rotation_y") {
    Matrix u = circuit::rotation_y(kPi / 2);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(u(0, 0).real() == doctest::Approx(r));
    CHECK(u(0, 1).real() == doctest::Approx(-r));
    for (double theta : {0.0, 0.4, kPi / 2}) {
        Matrix v = circuit::rotation_y(theta);
        CHECK((v.adjoint() * v - Matrix::Identity(2, 2)).norm() <= 1e-12);
    }
}

TEST_CASE("circuit_unitary block structure") {
    circuit::CircuitSpec c1(1, {0.9});
    CHECK((circuit::circuit_unitary(c1) - circuit::rotation_y(0.9)).norm() <= 1e-12);

    circuit::CircuitSpec c3(3, {0.2, 0.5, 0.9, 1.3});
    Matrix w = circuit::circuit_unitary(c3);
    CHECK((w.adjoint() * w - Matrix::Identity(8, 8)).norm() <= 1e-12);
    for (int i = 0; i < 4; ++i) {
        Matrix blk = w.block(2 * i, 2 * i, 2, 2);
        CHECK((blk - circuit::rotation_y(c3.thetas[i])).norm() <= 1e-12);
    }
    // block diagonal: no coupling between control patterns
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            if (i / 2 != j / 2) CHECK(std::abs(w(i, j)) <= 1e-12);
}

TEST_CASE("build_measurement_pair") {
    circuit::CircuitSpec cs(2, {0.3, 1.2});
    auto [m, n] = circuit::build_measurement_pair(cs);
    const Matrix& mm = m.effect().mat();
    const Matrix& nn = n.effect().mat();
    CHECK((mm * mm - mm).norm() <= 1e-12);
    CHECK((nn * nn - nn).norm() <= 1e-12);
    CHECK(std::abs(mm.trace().real() - 2.0) <= 1e-12);
    Matrix w = circuit::circuit_unitary(cs);
    CHECK((nn - w.adjoint() * mm * w).norm() <= 1e-12);
}

TEST_CASE("circuit_incompat") {
    circuit::CircuitSpec cs(3, {0.2, 0.5, 0.9, 1.3});
    for (double b : {0.0, 0.4, -0.7}) {
        double want = 0.0;
        for (double t : cs.thetas) want = std::max(want, qubit::inoise_qubit(t, b));
        CHECK(circuit::circuit_incompat(cs, b) == doctest::Approx(want).epsilon(1e-10));
    }

    circuit::CircuitSpec flat(2, {kPi / 2, kPi / 2});
    CHECK(circuit::circuit_incompat(flat, 0.0) ==
          doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("maximal_bias_points") {
    circuit::CircuitSpec cs(2, {0.0, kPi / 2});
    auto pts = circuit::maximal_bias_points(cs);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pts[1] <= 1e-7);

    // round trip: theta_star at the reported bias recovers the angle
    circuit::CircuitSpec cs2(2, {0.4, 1.2});
    auto pts2 = circuit::maximal_bias_points(cs2);
    for (size_t i = 0; i < pts2.size(); ++i) {
        CHECK(qubit::theta_star(pts2[i]) == doctest::Approx(cs2.thetas[i]).epsilon(1e-8));
        CHECK(qubit::inoise_qubit(cs2.thetas[i], pts2[i]) ==
              doctest::Approx(qubit::imax(pts2[i])).epsilon(1e-8));
    }
}

TEST_CASE("CircuitSpec validation") {
    CHECK_THROWS_AS(circuit::CircuitSpec(0, {}), std::invalid_argument);
    CHECK_THROWS_AS(circuit::CircuitSpec(2, {0.1}), std::invalid_argument);
    CHECK_THROWS_AS(circuit::CircuitSpec(1, {2.0}), std::invalid_argument);
    CHECK_THROWS_AS(circuit::CircuitSpec(1, {-0.1}), std::invalid_argument);
}
