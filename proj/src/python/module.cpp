#include "incompat/chsh.hpp"
#include "incompat/circuit.hpp"
#include "incompat/game.hpp"
#include "incompat/qubit.hpp"
#include "incompat/sdp.hpp"
#include "incompat/spectral.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace incompat;

namespace {

BinaryObservable obs(const Matrix& m) { return BinaryObservable(HermitianOperator(m)); }

const char* status_name(sdp::SolveStatus s) {
    switch (s) {
        case sdp::SolveStatus::optimal: return "optimal";
        case sdp::SolveStatus::feasible_only: return "feasible_only";
        default: return "numerical_failure";
    }
}

}  // namespace

PYBIND11_MODULE(_incompat, m) {
    m.doc() = "incompatibility monotones for binary quantum measurements";

    m.def("inoise_qubit", &qubit::inoise_qubit, py::arg("theta"), py::arg("b"));
    m.def("inoise_unbiased", &qubit::inoise_unbiased, py::arg("theta"));
    m.def("inoise_maxbias", &qubit::inoise_maxbias, py::arg("theta"));
    m.def("imax", &qubit::imax, py::arg("b"));
    m.def("theta_star", &qubit::theta_star, py::arg("b"));
    m.def("chi", &qubit::chi, py::arg("b"));
    m.def("f_a", &qubit::f_a, py::arg("mu"), py::arg("a_total"));
    m.def("f_a_inv", &qubit::f_a_inv, py::arg("lam"), py::arg("a_total"));
    m.def("bias_threshold", &qubit::bias_threshold, py::arg("theta"), py::arg("lam"));

    m.def(
        "solve_incompat",
        [](const Matrix& M, const Matrix& N, double a00, double a01, double a11, double tol) {
            sdp::IncompatProgram prog(obs(M), obs(N), DeformationMatrix(a00, a01, a11), tol);
            auto res = sdp::solve_incompat(prog);
            auto cert = sdp::certify(res, prog);
            py::dict d;
            d["mu_star"] = res.mu_star;
            d["i_noise"] = qubit::f_a(res.mu_star, a00 + 2.0 * a01 + a11);
            d["dual_lower"] = res.dual_lower;
            d["gap"] = res.gap;
            d["status"] = status_name(res.status);
            d["certified"] = cert.ok;
            return d;
        },
        py::arg("M"), py::arg("N"), py::arg("a00") = 0.5, py::arg("a01") = 0.0,
        py::arg("a11") = 0.5, py::arg("tol") = 1e-7);

    m.def(
        "solve_steer",
        [](const Matrix& M, const Matrix& N, double tol) {
            return sdp::solve_steer(obs(M), obs(N), tol).lambda;
        },
        py::arg("M"), py::arg("N"), py::arg("tol") = 1e-7);

    m.def(
        "angle_spectrum",
        [](const Matrix& M, const Matrix& N) {
            return spectral::angle_spectrum(obs(M), obs(N)).angles;
        },
        py::arg("M"), py::arg("N"));
    m.def(
        "inoise_projective",
        [](const Matrix& M, const Matrix& N, double b) {
            return spectral::inoise_projective(obs(M), obs(N), b);
        },
        py::arg("M"), py::arg("N"), py::arg("b") = 0.0);
    m.def(
        "qp_binarization",
        [](int grid_size) {
            auto [q, p] = spectral::qp_binarization(grid_size);
            return py::make_tuple(q.effect().mat(), p.effect().mat());
        },
        py::arg("grid_size"));

    m.def(
        "circuit_unitary",
        [](int n, const std::vector<double>& thetas) {
            return circuit::circuit_unitary(circuit::CircuitSpec(n, thetas));
        },
        py::arg("n"), py::arg("thetas"));
    m.def(
        "circuit_incompat",
        [](int n, const std::vector<double>& thetas, double b) {
            return circuit::circuit_incompat(circuit::CircuitSpec(n, thetas), b);
        },
        py::arg("n"), py::arg("thetas"), py::arg("b") = 0.0);
    m.def(
        "maximal_bias_points",
        [](int n, const std::vector<double>& thetas) {
            return circuit::maximal_bias_points(circuit::CircuitSpec(n, thetas));
        },
        py::arg("n"), py::arg("thetas"));

    m.def(
        "scenario_unknown_bias",
        [](double lambda_lr) {
            auto rep = game::scenario_unknown_bias(lambda_lr);
            return py::make_tuple(rep.qp_optimal_theta, rep.p_qp_win);
        },
        py::arg("lambda_lr"));
    m.def(
        "scenario_unknown_both",
        [](std::optional<double> theta, bool draw_b_squared) {
            auto rep = game::scenario_unknown_both(theta, draw_b_squared);
            return py::make_tuple(rep.p_qp_win, rep.p_max);
        },
        py::arg("theta") = std::nullopt, py::arg("draw_b_squared") = false);

    m.def(
        "tsirelson_check",
        [](int samples, std::uint64_t seed) {
            auto rep = chsh::tsirelson_check(samples, seed);
            py::dict d;
            d["ok"] = rep.ok;
            d["max_slack"] = rep.max_slack;
            d["max_ratio"] = rep.max_ratio;
            d["samples"] = rep.samples;
            return d;
        },
        py::arg("samples"), py::arg("seed"));
}
