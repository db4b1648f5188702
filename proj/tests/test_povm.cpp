#include "incompat/povm.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace incompat;

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("deform_noise") {
    std::mt19937_64 rng(5);
    BinaryObservable m{HermitianOperator(testing::random_effect(3, rng))};

    auto same = deform_noise(m, NoiseParams(0.0, 0.4));
    CHECK((same.effect().mat() - m.effect().mat()).norm() <= 1e-12);

    auto trivial = deform_noise(m, NoiseParams(1.0, 0.4));
    CHECK((trivial.effect().mat() - 0.7 * Matrix::Identity(3, 3)).norm() <= 1e-12);

    auto half = deform_noise(qubit_projector(0.0), NoiseParams(0.5, 0.0));
    Spectrum s = eig_hermitian(half.effect());
    CHECK(s.eigenvalues(0) == doctest::Approx(0.25));
    CHECK(s.eigenvalues(1) == doctest::Approx(0.75));
}

TEST_CASE("deform_depolarize") {
    std::mt19937_64 rng(6);
    BinaryObservable m{HermitianOperator(testing::random_effect(3, rng))};
    CHECK((deform_depolarize(m, 0.0).effect().mat() - m.effect().mat()).norm() <= 1e-12);

    double fill = m.effect().mat().trace().real() / 3.0;
    CHECK((deform_depolarize(m, 1.0).effect().mat() - fill * Matrix::Identity(3, 3)).norm() <=
          1e-12);

    // rank-1 qubit projection: depolarizing equals unbiased noise
    auto p = qubit_projector(1.2);
    auto viadep = deform_depolarize(p, 0.37);
    auto vianoise = deform_noise(p, NoiseParams(0.37, 0.0));
    CHECK((viadep.effect().mat() - vianoise.effect().mat()).norm() <= 1e-12);
}

TEST_CASE("apply_channel") {
    std::mt19937_64 rng(9);
    BinaryObservable m{HermitianOperator(testing::random_effect(2, rng))};

    Matrix u = testing::random_unitary(2, rng);
    auto moved = apply_channel({u}, m);
    Spectrum before = eig_hermitian(m.effect());
    Spectrum after = eig_hermitian(moved.effect());
    CHECK((before.eigenvalues - after.eigenvalues).norm() <= 1e-10);

    // depolarizing Kraus set reproduces deform_depolarize on a qubit
    double lam = 0.42;
    std::vector<Matrix> kraus = {std::sqrt(1.0 - 0.75 * lam) * Matrix::Identity(2, 2),
                                 std::sqrt(0.25 * lam) * pauli_x(),
                                 std::sqrt(0.25 * lam) * pauli_y(),
                                 std::sqrt(0.25 * lam) * pauli_z()};
    auto via_kraus = apply_channel(kraus, m);
    auto via_dep = deform_depolarize(m, lam);
    CHECK((via_kraus.effect().mat() - via_dep.effect().mat()).norm() <= 1e-12);

    // complete dephasing maps P_{pi/2} to I/2
    Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2);
    k0(0, 0) = 1.0;
    k1(1, 1) = 1.0;
    auto dephased = apply_channel({k0, k1}, qubit_projector(kPi / 2));
    CHECK((dephased.effect().mat() - 0.5 * Matrix::Identity(2, 2)).norm() <= 1e-12);

    CHECK_THROWS_AS(apply_channel({0.5 * Matrix::Identity(2, 2)}, m), std::invalid_argument);
}

TEST_CASE("joint_from_free_block") {
    auto zero = BinaryObservable(HermitianOperator::zero(2));
    auto j = joint_from_free_block(HermitianOperator::zero(2), zero, zero);
    CHECK((j.g00().mat() - Matrix::Identity(2, 2)).norm() <= 1e-12);
    CHECK(j.equality_residual(zero, zero) <= 1e-12);

    // commuting projections with G = MN: all blocks PSD
    Matrix m = Matrix::Zero(4, 4), n = Matrix::Zero(4, 4);
    m(0, 0) = m(1, 1) = 1.0;
    n(1, 1) = n(2, 2) = 1.0;
    BinaryObservable M{HermitianOperator(m)}, N{HermitianOperator(n)};
    auto jc = joint_from_free_block(HermitianOperator(m * n), M, N);
    for (const auto& blk : jc.blocks) CHECK(psd_check(blk, 1e-10));
    CHECK(jc.equality_residual(M, N) <= 1e-12);

    std::mt19937_64 rng(12);
    BinaryObservable A{HermitianOperator(testing::random_effect(3, rng))};
    BinaryObservable B{HermitianOperator(testing::random_effect(3, rng))};
    HermitianOperator g(0.5 * (A.effect().mat() + B.effect().mat()));
    CHECK(joint_from_free_block(g, A, B).equality_residual(A, B) <= 1e-12);
}

TEST_CASE("qubit_projector and effect_from_bloch") {
    Matrix p0 = qubit_projector(0.0).effect().mat();
    CHECK(p0(0, 0).real() == doctest::Approx(1.0));
    CHECK(p0(1, 1).real() == doctest::Approx(0.0));

    Matrix p90 = qubit_projector(kPi / 2).effect().mat();
    CHECK((p90 - 0.5 * (Matrix::Identity(2, 2) + pauli_x())).norm() <= 1e-12);

    auto e = effect_from_bloch(1.0, {0.0, 0.0, 1.0});
    CHECK((e.effect().mat() - p0).norm() <= 1e-12);

    CHECK_THROWS_AS(effect_from_bloch(0.5, {0.0, 0.0, 0.9}), std::invalid_argument);
}

TEST_CASE("noise composition and channel covariance") {
    std::mt19937_64 rng(13);
    BinaryObservable m{HermitianOperator(testing::random_effect(3, rng))};
    double b = 0.3, l1 = 0.2, l2 = 0.55;

    auto twice = deform_noise(deform_noise(m, NoiseParams(l1, b)), NoiseParams(l2, b));
    auto once = deform_noise(m, NoiseParams(1.0 - (1.0 - l1) * (1.0 - l2), b));
    CHECK((twice.effect().mat() - once.effect().mat()).norm() <= 1e-12);

    Matrix u = testing::random_unitary(3, rng);
    auto lhs = apply_channel({u}, deform_noise(m, NoiseParams(l1, b)));
    auto rhs = deform_noise(apply_channel({u}, m), NoiseParams(l1, b));
    CHECK((lhs.effect().mat() - rhs.effect().mat()).norm() <= 1e-12);
}
