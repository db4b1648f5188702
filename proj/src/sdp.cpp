#include "incompat/sdp.hpp"

#include "incompat/chsh.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace incompat {
namespace sdp {

namespace {

constexpr double kInnerTol = 1e-8;   // feasibility threshold on the slack t
constexpr double kGapTarget = 1e-9;  // barrier duality gap on t

// Orthonormal real basis of d x d Hermitian matrices, each element a sum of
// at most two weighted entry positions.
struct BasisTerm {
    int r, c;
    cxd w;
};
struct BasisElem {
    BasisTerm t[2];
    int nt;
};

std::vector<BasisElem> hermitian_basis(int d) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<BasisElem> basis;
    basis.reserve(d * d);
    for (int i = 0; i < d; ++i) basis.push_back({{{i, i, 1.0}, {}}, 1});
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            basis.push_back({{{i, j, inv_sqrt2}, {j, i, inv_sqrt2}}, 2});
            basis.push_back({{{i, j, cxd(0, inv_sqrt2)}, {j, i, cxd(0, -inv_sqrt2)}}, 2});
        }
    return basis;
}

Matrix from_coords(const Eigen::VectorXd& x, const std::vector<BasisElem>& basis, int d) {
    Matrix g = Matrix::Zero(d, d);
    for (size_t p = 0; p < basis.size(); ++p)
        for (int t = 0; t < basis[p].nt; ++t)
            g(basis[p].t[t].r, basis[p].t[t].c) += x(p) * basis[p].t[t].w;
    return g;
}

Eigen::VectorXd to_coords(const Matrix& g, const std::vector<BasisElem>& basis) {
    Eigen::VectorXd x(basis.size());
    for (size_t p = 0; p < basis.size(); ++p) {
        cxd acc = 0.0;
        for (int t = 0; t < basis[p].nt; ++t)
            acc += std::conj(basis[p].t[t].w) * g(basis[p].t[t].r, basis[p].t[t].c);
        x(p) = acc.real();
    }
    return x;
}

// Interior-point solver for: maximize t over Hermitian G subject to
//   base_k + sign_k G + (mu a_k - t) I  >= 0,   k = 0..3.
class InnerSolver {
public:
    InnerSolver(const IncompatProgram& prog, double mu)
        : d_(prog.M.dim()), basis_(hermitian_basis(d_)), n_(static_cast<int>(basis_.size())) {
        const Matrix id = Matrix::Identity(d_, d_);
        base_[0] = Matrix::Zero(d_, d_);
        base_[1] = prog.M.effect().mat();
        base_[2] = prog.N.effect().mat();
        base_[3] = id - prog.M.effect().mat() - prog.N.effect().mat();
        for (int k = 0; k < 4; ++k) shift_[k] = mu * prog.a.for_block(k);
    }

    FeasibilityResult run(const HermitianOperator* warm) {
        Eigen::VectorXd z(n_ + 1);
        Matrix g0 = warm ? warm->mat()
                         : Matrix(0.5 * (base_[1] + base_[2]) - 0.25 * Matrix::Identity(d_, d_));
        z.head(n_) = to_coords(g0, basis_);
        z(n_) = strict_t(g0);

        int steps = 0;
        const double m_total = 4.0 * d_;
        for (double tau = 8.0; m_total / tau > kGapTarget; tau *= 20.0)
            steps += newton_stage(z, tau);

        FeasibilityResult res;
        res.t = z(n_);
        res.feasible = res.t >= -kInnerTol;
        res.free_block = HermitianOperator(from_coords(z.head(n_), basis_, d_));
        res.newton_steps = steps;
        return res;
    }

private:
    static constexpr int kSign[4] = {+1, -1, -1, +1};

    double strict_t(const Matrix& g) const {
        double lo = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 4; ++k) {
            HermitianOperator blk(base_[k] + double(kSign[k]) * g +
                                  shift_[k] * Matrix::Identity(d_, d_));
            lo = std::min(lo, min_eig(blk));
        }
        return lo - 0.1;
    }

    // S_k at the point z; returns false if any block is not positive definite.
    bool factor_blocks(const Eigen::VectorXd& z, std::array<Eigen::LLT<Matrix>, 4>& llt,
                       double* logdet_sum) const {
        Matrix g = from_coords(z.head(n_), basis_, d_);
        double ld = 0.0;
        for (int k = 0; k < 4; ++k) {
            Matrix s = base_[k] + double(kSign[k]) * g +
                       (shift_[k] - z(n_)) * Matrix::Identity(d_, d_);
            s = 0.5 * (s + s.adjoint());
            llt[k].compute(s);
            if (llt[k].info() != Eigen::Success) return false;
            for (int i = 0; i < d_; ++i) ld += 2.0 * std::log(llt[k].matrixLLT()(i, i).real());
        }
        if (logdet_sum) *logdet_sum = ld;
        return true;
    }

    double barrier_value(const Eigen::VectorXd& z, double tau, bool* ok) const {
        std::array<Eigen::LLT<Matrix>, 4> llt;
        double ld = 0.0;
        if (!factor_blocks(z, llt, &ld)) {
            *ok = false;
            return 0.0;
        }
        *ok = true;
        return -tau * z(n_) - ld;
    }

    int newton_stage(Eigen::VectorXd& z, double tau) const {
        int steps = 0;
        for (; steps < 60; ++steps) {
            std::array<Eigen::LLT<Matrix>, 4> llt;
            double ld = 0.0;
            if (!factor_blocks(z, llt, &ld))
                throw std::runtime_error("sdp inner solver: iterate left the cone");
            double f0 = -tau * z(n_) - ld;

            Eigen::VectorXd grad = Eigen::VectorXd::Zero(n_ + 1);
            Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(n_ + 1, n_ + 1);
            grad(n_) = -tau;
            const Matrix id = Matrix::Identity(d_, d_);
            for (int k = 0; k < 4; ++k) {
                Matrix a = llt[k].solve(id);        // S_k^{-1}
                Matrix a2 = a * a;
                grad(n_) += a.trace().real();
                hess(n_, n_) += a2.trace().real();
                for (int p = 0; p < n_; ++p) {
                    cxd tr_a = 0.0, tr_a2 = 0.0;
                    for (int t = 0; t < basis_[p].nt; ++t) {
                        const BasisTerm& bt = basis_[p].t[t];
                        tr_a += bt.w * a(bt.c, bt.r);
                        tr_a2 += bt.w * a2(bt.c, bt.r);
                    }
                    grad(p) -= kSign[k] * tr_a.real();
                    double hpt = -kSign[k] * tr_a2.real();
                    hess(p, n_) += hpt;
                    hess(n_, p) += hpt;
                }
                // tr(A e_ab A e_cd) = A(d,a) A(b,c)
                for (int p = 0; p < n_; ++p)
                    for (int q = p; q < n_; ++q) {
                        cxd acc = 0.0;
                        for (int s = 0; s < basis_[p].nt; ++s)
                            for (int t = 0; t < basis_[q].nt; ++t) {
                                const BasisTerm& bp = basis_[p].t[s];
                                const BasisTerm& bq = basis_[q].t[t];
                                acc += bp.w * bq.w * a(bq.c, bp.r) * a(bp.c, bq.r);
                            }
                        hess(p, q) += acc.real();
                        if (q != p) hess(q, p) += acc.real();
                    }
            }
            hess.diagonal().array() += 1e-12;

            Eigen::VectorXd delta = hess.ldlt().solve(-grad);
            double decrement = -grad.dot(delta);
            if (decrement < 2e-12) break;

            double alpha = 1.0;
            bool moved = false;
            while (alpha > 1e-12) {
                Eigen::VectorXd cand = z + alpha * delta;
                bool ok = false;
                double f1 = barrier_value(cand, tau, &ok);
                if (ok && f1 <= f0 + 0.25 * alpha * grad.dot(delta)) {
                    z = cand;
                    moved = true;
                    break;
                }
                alpha *= 0.5;
            }
            if (!moved) break;
        }
        return steps;
    }

    int d_;
    std::vector<BasisElem> basis_;
    int n_;
    Matrix base_[4];
    double shift_[4];
};

JointCandidate joint_of(const HermitianOperator& g, const IncompatProgram& prog) {
    return joint_from_free_block(g, prog.M, prog.N);
}

// Commuting pairs admit the product joint G = MN; detect them up front to
// avoid boundary ill-conditioning.
std::optional<JointCandidate> commuting_product_joint(const BinaryObservable& M,
                                                     const BinaryObservable& N) {
    if (commutator_norm(M.effect(), N.effect()) >= 1e-10) return std::nullopt;
    Matrix prod = M.effect().mat() * N.effect().mat();
    HermitianOperator g(0.5 * (prod + prod.adjoint()));
    JointCandidate joint = joint_from_free_block(g, M, N);
    for (const auto& blk : joint.blocks)
        if (!psd_check(blk, 1e-9)) return std::nullopt;
    return joint;
}

}  // namespace

IncompatProgram::IncompatProgram(BinaryObservable m, BinaryObservable n, DeformationMatrix def,
                                 double tolerance)
    : M(std::move(m)), N(std::move(n)), a(def), tol(tolerance) {
    if (M.dim() != N.dim()) throw std::invalid_argument("IncompatProgram: dimension mismatch");
    if (tol <= 0.0) throw std::invalid_argument("IncompatProgram: tol must be positive");
}

FeasibilityResult feasible_at(double mu, const IncompatProgram& prog,
                              const HermitianOperator* warm) {
    if (mu < 0.0) throw std::invalid_argument("feasible_at: mu < 0");
    InnerSolver solver(prog, mu);
    return solver.run(warm);
}

namespace {

// Closed-form upper bound on I_a from candidate free blocks; the program is
// strictly feasible so some candidate always yields a finite mu.
double bracket_hi(const IncompatProgram& prog) {
    const int d = prog.M.dim();
    const Matrix id = Matrix::Identity(d, d);
    const Matrix& m = prog.M.effect().mat();
    const Matrix& n = prog.N.effect().mat();
    const Matrix candidates[] = {Matrix::Zero(d, d), m, n, m + n, m + n - id,
                                 0.5 * (m + n) - 0.25 * id};
    double best = std::numeric_limits<double>::infinity();
    for (const Matrix& g : candidates) {
        JointCandidate joint = joint_from_free_block(HermitianOperator(g), prog.M, prog.N);
        double need = 0.0;
        bool ok = true;
        for (int k = 0; k < 4; ++k) {
            double lo = min_eig(joint.blocks[k]);
            double ak = prog.a.for_block(k);
            if (lo >= -1e-12) continue;
            if (ak <= 0.0) {
                ok = false;
                break;
            }
            need = std::max(need, -lo / ak);
        }
        if (ok) best = std::min(best, need);
    }
    if (!std::isfinite(best))
        throw std::runtime_error("solve_incompat: could not construct a feasible bracket");
    return best * 1.01 + 1e-6;
}

}  // namespace

IncompatResult solve_incompat(const IncompatProgram& prog) {
    if (prog.a.total() <= 0.0)
        throw std::invalid_argument("solve_incompat: deformation matrix must have a positive entry");

    IncompatResult res{0.0,
                       joint_from_free_block(HermitianOperator::zero(prog.M.dim()), prog.M, prog.N),
                       0.0,
                       0.0,
                       SolveStatus::numerical_failure};

    if (auto joint = commuting_product_joint(prog.M, prog.N)) {
        res.mu_star = 0.0;
        res.joint = *joint;
        res.dual_lower = 0.0;
        res.gap = 0.0;
        res.status = SolveStatus::optimal;
        return res;
    }

    FeasibilityResult at_zero = feasible_at(0.0, prog);
    double mu_star = 0.0;
    HermitianOperator witness = at_zero.free_block;
    if (!at_zero.feasible) {
        double lo = 0.0;
        double hi = bracket_hi(prog);
        FeasibilityResult at_hi = feasible_at(hi, prog, &witness);
        int guard = 0;
        while (!at_hi.feasible && guard++ < 24) {
            hi *= 2.0;
            at_hi = feasible_at(hi, prog, &witness);
        }
        if (!at_hi.feasible) return res;  // numerical_failure
        witness = at_hi.free_block;
        while (hi - lo > prog.tol) {
            double mid = 0.5 * (lo + hi);
            FeasibilityResult fm = feasible_at(mid, prog, &witness);
            witness = fm.free_block;
            if (fm.feasible)
                hi = mid;
            else
                lo = mid;
        }
        mu_star = hi;
    }

    FeasibilityResult fin = feasible_at(mu_star + prog.tol, prog, &witness);
    res.mu_star = mu_star;
    res.joint = joint_of(fin.free_block, prog);

    chsh::SeesawResult dual =
        chsh::dual_value_lower(prog.M, prog.N, prog.a, 200, 0x1ce5eed5u);
    res.dual_lower = dual.value;
    res.gap = mu_star - dual.value;
    res.status = std::abs(res.gap) <= 10.0 * prog.tol ? SolveStatus::optimal
                                                      : SolveStatus::feasible_only;
    return res;
}

SteerResult solve_steer(const BinaryObservable& M, const BinaryObservable& N, double tol) {
    auto compatible_at = [&](double lambda) {
        BinaryObservable ml = deform_depolarize(M, lambda);
        BinaryObservable nl = deform_depolarize(N, lambda);
        if (commuting_product_joint(ml, nl)) return true;
        IncompatProgram prog(ml, nl, DeformationMatrix::unbiased(), tol);
        return feasible_at(0.0, prog).feasible;
    };

    SteerResult out;
    if (compatible_at(0.0)) {
        out.lambda = 0.0;
        out.monotone_verified = true;
        return out;
    }
    double lo = 0.0, hi = 1.0;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (compatible_at(mid))
            hi = mid;
        else
            lo = mid;
    }
    out.lambda = hi;

    // compatibility is expected monotone in lambda for this model; verify by
    // sampling instead of assuming
    out.monotone_verified = true;
    for (int i = 1; i <= 6; ++i) {
        double below = out.lambda * (i / 7.0);
        double above = out.lambda + (1.0 - out.lambda) * (i / 7.0);
        if (compatible_at(below) || !compatible_at(above)) {
            out.monotone_verified = false;
            break;
        }
    }
    return out;
}

CertifyReport certify(const IncompatResult& result, const IncompatProgram& prog) {
    CertifyReport rep;
    rep.equality_residual = result.joint.equality_residual(prog.M, prog.N);
    double mu = result.mu_star + prog.tol;
    double margin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 4; ++k) {
        HermitianOperator shifted(result.joint.blocks[k].mat() +
                                  mu * prog.a.for_block(k) *
                                      Matrix::Identity(prog.M.dim(), prog.M.dim()));
        margin = std::min(margin, min_eig(shifted));
    }
    rep.min_psd_margin = margin;
    rep.duality_gap = result.gap;
    const double limit = 10.0 * prog.tol;
    rep.ok = rep.equality_residual <= 1e-9 && rep.min_psd_margin >= -limit &&
             std::abs(rep.duality_gap) <= limit;
    if (!rep.ok) {
        rep.detail = "violations:";
        if (rep.equality_residual > 1e-9) rep.detail += " equality";
        if (rep.min_psd_margin < -limit) rep.detail += " psd";
        if (std::abs(rep.duality_gap) > limit) rep.detail += " gap";
    }
    return rep;
}

}  // namespace sdp
}  // namespace incompat
