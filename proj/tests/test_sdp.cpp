#include "incompat/sdp.hpp"

#include "incompat/circuit.hpp"
#include "incompat/qubit.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace incompat;

namespace {
const double kPi = std::numbers::pi;

double analytic_mu(double theta, double b) {
    return qubit::f_a_inv(qubit::inoise_qubit(theta, b), 1.0);
}
}

TEST_CASE("feasible_at mu = 0") {
    Matrix m = Matrix::Zero(2, 2), n = Matrix::Zero(2, 2);
    m(0, 0) = 1.0;
    n(0, 0) = 0.3;
    n(1, 1) = 0.8;
    sdp::IncompatProgram commuting(BinaryObservable{HermitianOperator(m)},
                                   BinaryObservable{HermitianOperator(n)},
                                   DeformationMatrix::unbiased());
    auto fr = sdp::feasible_at(0.0, commuting);
    CHECK(fr.feasible);

    sdp::IncompatProgram sharp(qubit_projector(0.0), qubit_projector(kPi / 2),
                               DeformationMatrix::unbiased());
    CHECK_FALSE(sdp::feasible_at(0.0, sharp).feasible);
}

TEST_CASE("solve_incompat: qubit pairs against the closed form") {
    struct Case {
        double theta, b;
    };
    for (auto [theta, b] : {Case{kPi / 2, 0.0}, Case{1.1, 0.5}, Case{0.7, -0.8}}) {
        sdp::IncompatProgram prog(qubit_projector(0.0), qubit_projector(theta),
                                  DeformationMatrix::from_bias(b), 1e-8);
        auto res = sdp::solve_incompat(prog);
        CHECK(res.mu_star == doctest::Approx(analytic_mu(theta, b)).epsilon(1e-6));
        CHECK(res.status == sdp::SolveStatus::optimal);
        auto cert = sdp::certify(res, prog);
        CHECK(cert.ok);
        CHECK(cert.equality_residual <= 1e-9);
        CHECK(cert.min_psd_margin >= -1e-7);
    }
}

TEST_CASE("solve_incompat: one-sided deformation a = diag(0, 1)") {
    double theta = kPi / 2;
    sdp::IncompatProgram prog(qubit_projector(0.0), qubit_projector(theta),
                              DeformationMatrix(0.0, 0.0, 1.0), 1e-8);
    auto res = sdp::solve_incompat(prog);
    double lam = qubit::inoise_maxbias(theta);
    CHECK(res.mu_star == doctest::Approx(lam / (1.0 - lam)).epsilon(1e-6));
    CHECK(sdp::certify(res, prog).ok);
}

TEST_CASE("solve_incompat: commuting fast path") {
    Matrix m = Matrix::Zero(3, 3), n = Matrix::Zero(3, 3);
    m(0, 0) = m(1, 1) = 1.0;
    n(1, 1) = n(2, 2) = 1.0;
    sdp::IncompatProgram prog(BinaryObservable{HermitianOperator(m)},
                              BinaryObservable{HermitianOperator(n)},
                              DeformationMatrix::from_bias(0.3));
    auto res = sdp::solve_incompat(prog);
    CHECK(res.mu_star == 0.0);
    CHECK(res.joint.equality_residual(prog.M, prog.N) <= 1e-9);
}

TEST_CASE("solve_incompat: dim-4 direct sum matches the larger block") {
    circuit::CircuitSpec cs(2, {0.6, 1.4});
    auto [m, n] = circuit::build_measurement_pair(cs);
    sdp::IncompatProgram prog(m, n, DeformationMatrix::unbiased(), 1e-7);
    auto res = sdp::solve_incompat(prog);
    CHECK(res.mu_star == doctest::Approx(analytic_mu(1.4, 0.0)).epsilon(1e-5));
}

TEST_CASE("solve_steer equals the unbiased noise robustness for sharp qubits") {
    for (double theta : {0.8, kPi / 2}) {
        auto sr = sdp::solve_steer(qubit_projector(0.0), qubit_projector(theta), 1e-7);
        CHECK(sr.lambda == doctest::Approx(qubit::inoise_qubit(theta, 0.0)).epsilon(1e-5));
        CHECK(sr.monotone_verified);
    }
}

TEST_CASE("program validation") {
    CHECK_THROWS_AS(sdp::IncompatProgram(qubit_projector(0.0),
                                         BinaryObservable{HermitianOperator::identity(3)},
                                         DeformationMatrix::unbiased()),
                    std::invalid_argument);
    CHECK_THROWS_AS(sdp::IncompatProgram(qubit_projector(0.0), qubit_projector(1.0),
                                         DeformationMatrix::unbiased(), 0.0),
                    std::invalid_argument);
}
