#include "physical/physical.hpp"

#include "core/lp.hpp"
#include "zoo/systems.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace gptctx {

namespace {

constexpr double kIsoConditionLimit = 1e8;

// Feasibility LP in the entries of the decode map M (A.dim × B.dim for a
// simulation A → B): state equalities M·Γ(v) = v on A's state vertices,
// optional adjoint equalities M*(e) = Θ(e) on A's effect vertices, and both
// physicality memberships through explicit convex / subconvex weights.
LpStatus solve_realisation_lp(const UnivalentSimulation& sim, bool strictAdjoint, Mat& out) {
    const GptSystem& A = sim.source;
    const GptSystem& B = sim.target;
    const Eigen::Index dA = A.dim;
    const Eigen::Index dB = B.dim;
    const auto nSA = static_cast<Eigen::Index>(A.stateVertices.size());
    const auto nSB = static_cast<Eigen::Index>(B.stateVertices.size());
    const auto nEA = static_cast<Eigen::Index>(A.effectVertices.size());
    const auto nEB = static_cast<Eigen::Index>(B.effectVertices.size());

    const Eigen::Index nM = dA * dB;
    const Eigen::Index lamBase = nM;              // nSB blocks of nSA convex weights
    const Eigen::Index muBase = lamBase + nSB * nSA;  // nEA blocks of nEB subconvex weights
    const Eigen::Index nv = muBase + nEA * nEB;

    LinearProgram lp(nv);
    for (Eigen::Index k = nM; k < nv; ++k) lp.lo(k) = 0.0;

    const auto mIdx = [dB](Eigen::Index i, Eigen::Index j) { return i * dB + j; };

    // M(Γ(v)) = v on A's state vertices.
    for (Eigen::Index s = 0; s < nSA; ++s) {
        const Vec& v = A.stateVertices[static_cast<std::size_t>(s)];
        const Vec g = sim.stateMap * v;
        for (Eigen::Index i = 0; i < dA; ++i) {
            Vec row = Vec::Zero(nv);
            for (Eigen::Index j = 0; j < dB; ++j) row(mIdx(i, j)) = g(j);
            lp.add_eq(row, v(i));
        }
    }

    // M*(e) = Θ(e) on A's effect vertices.
    if (strictAdjoint) {
        for (Eigen::Index a = 0; a < nEA; ++a) {
            const Vec& e = A.effectVertices[static_cast<std::size_t>(a)];
            const Vec t = sim.effectMap * e;
            for (Eigen::Index j = 0; j < dB; ++j) {
                Vec row = Vec::Zero(nv);
                for (Eigen::Index i = 0; i < dA; ++i) row(mIdx(i, j)) = e(i);
                lp.add_eq(row, t(j));
            }
        }
    }

    // Physicality, state side: M(w) ∈ Ω_A for each B state vertex w.
    for (Eigen::Index b = 0; b < nSB; ++b) {
        const Vec& w = B.stateVertices[static_cast<std::size_t>(b)];
        const Eigen::Index off = lamBase + b * nSA;
        for (Eigen::Index i = 0; i < dA; ++i) {
            Vec row = Vec::Zero(nv);
            for (Eigen::Index j = 0; j < dB; ++j) row(mIdx(i, j)) = w(j);
            for (Eigen::Index k = 0; k < nSA; ++k)
                row(off + k) = -A.stateVertices[static_cast<std::size_t>(k)](i);
            lp.add_eq(row, 0.0);
        }
        Vec sum = Vec::Zero(nv);
        sum.segment(off, nSA).setOnes();
        lp.add_eq(sum, 1.0);
    }

    // Physicality, effect side: M*(e) ∈ E_B for each A effect vertex e.
    for (Eigen::Index a = 0; a < nEA; ++a) {
        const Vec& e = A.effectVertices[static_cast<std::size_t>(a)];
        const Eigen::Index off = muBase + a * nEB;
        for (Eigen::Index j = 0; j < dB; ++j) {
            Vec row = Vec::Zero(nv);
            for (Eigen::Index i = 0; i < dA; ++i) row(mIdx(i, j)) = e(i);
            for (Eigen::Index k = 0; k < nEB; ++k)
                row(off + k) = -B.effectVertices[static_cast<std::size_t>(k)](j);
            lp.add_eq(row, 0.0);
        }
        Vec sum = Vec::Zero(nv);
        sum.segment(off, nEB).setOnes();
        lp.add_le(sum, 1.0);
    }

    const LpResult res = solve_lp(lp);
    if (res.optimal()) {
        out = Mat::Zero(dA, dB);
        for (Eigen::Index i = 0; i < dA; ++i)
            for (Eigen::Index j = 0; j < dB; ++j) out(i, j) = res.x(mIdx(i, j));
    }
    return res.status;
}

// Worst residual of the realisation equalities at M.
double realisation_residual(const UnivalentSimulation& sim, const Mat& M, bool strictAdjoint) {
    double worst = 0.0;
    for (const Vec& v : sim.source.stateVertices)
        worst = std::max(worst, max_abs(M * (sim.stateMap * v) - v));
    if (strictAdjoint)
        for (const Vec& e : sim.source.effectVertices)
            worst = std::max(worst, max_abs(M.transpose() * e - sim.effectMap * e));
    return worst;
}

// An LP-produced decode map only counts as found if it survives independent
// re-validation: physical at tol and equality residuals at tol.
bool realisation_verifies(const UnivalentSimulation& sim, const Mat& M, bool strictAdjoint,
                          double tol) {
    if (realisation_residual(sim, M, strictAdjoint) > tol) return false;
    PhysicalMap pm{sim.target, sim.source, M};
    return check_physical_map(pm, tol).passed;
}

ValidationReport surjectivity_iso_impl(const GptSystem& A, const GptSystem& B,
                                       const PhysicalMap& M, double tol) {
    ValidationReport rep;
    const Mat& C = M.coefficients;
    if (M.target.dim != A.dim || M.source.dim != B.dim || C.rows() != A.dim ||
        C.cols() != B.dim) {
        rep.add("realisation-shape",
                {static_cast<int>(C.rows()), static_cast<int>(C.cols())}, 0.0);
        return rep;
    }

    // M(Ω_B) is the convex hull of the images of B's state vertices; state
    // surjectivity holds iff every A state vertex lies inside it.
    GptSystem image;
    image.label = "image";
    image.dim = A.dim;
    image.unitEffect = A.unitEffect;
    image.stateVertices.reserve(B.stateVertices.size());
    for (const Vec& w : B.stateVertices) image.stateVertices.push_back(C * w);

    for (std::size_t s = 0; s < A.stateVertices.size(); ++s) {
        const double d = state_distance(image, A.stateVertices[s]);
        if (d > tol) rep.add("state-surjectivity", {static_cast<int>(s)}, d);
    }

    if (A.dim == B.dim) {
        const Eigen::JacobiSVD<Mat> svd(C);
        const Vec& sig = svd.singularValues();
        const double smax = sig(0);
        const double smin = sig(sig.size() - 1);
        const double cond = smin > 0.0 ? smax / smin : kInf;
        if (!(cond <= kIsoConditionLimit)) rep.add("isomorphism", {}, cond);
    }
    return rep;
}

}  // namespace

const char* to_string(RealisationStatus s) {
    switch (s) {
        case RealisationStatus::Feasible: return "feasible";
        case RealisationStatus::Infeasible: return "infeasible";
        case RealisationStatus::SolverFailure: return "solver-failure";
    }
    return "?";
}

ValidationReport check_physical_map(const PhysicalMap& M, double tol) {
    ValidationReport rep;
    const Mat& C = M.coefficients;
    if (C.rows() != M.target.dim || C.cols() != M.source.dim) {
        rep.add("shape", {static_cast<int>(C.rows()), static_cast<int>(C.cols())}, 0.0);
        return rep;
    }
    for (std::size_t b = 0; b < M.source.stateVertices.size(); ++b) {
        const double d = state_distance(M.target, C * M.source.stateVertices[b]);
        if (d > tol) rep.add("state-image", {static_cast<int>(b)}, d);
    }
    for (std::size_t a = 0; a < M.target.effectVertices.size(); ++a) {
        const double d = effect_distance(M.source, C.transpose() * M.target.effectVertices[a]);
        if (d > tol) rep.add("effect-image", {static_cast<int>(a)}, d);
    }
    return rep;
}

RealisationResult find_realisation(const UnivalentSimulation& sim, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("find_realisation: tol must be positive");
    const SimulationCheck chk = validate_simulation(sim, tol);
    if (!chk.valid() || chk.epsilonObserved > tol)
        throw std::invalid_argument("find_realisation: simulation does not validate at tol");

    RealisationResult out;

    // Strict mode pins the adjoint to the simulation's effect map. Its
    // feasible set is contained in the relaxed one, so a certified
    // infeasibility of the relaxed LP below settles both modes at once.
    Mat M;
    const LpStatus strict = solve_realisation_lp(sim, /*strictAdjoint=*/true, M);
    if (strict == LpStatus::Optimal && realisation_verifies(sim, M, true, tol)) {
        out.status = RealisationStatus::Feasible;
        out.strictAdjoint = true;
        out.map = PhysicalMap{sim.target, sim.source, std::move(M)};
        return out;
    }

    const LpStatus relaxed = solve_realisation_lp(sim, /*strictAdjoint=*/false, M);
    if (relaxed == LpStatus::Optimal && realisation_verifies(sim, M, false, tol)) {
        out.status = RealisationStatus::Feasible;
        out.strictAdjoint = false;
        out.map = PhysicalMap{sim.target, sim.source, std::move(M)};
    } else if (relaxed == LpStatus::Infeasible) {
        out.status = RealisationStatus::Infeasible;
    } else {
        out.status = RealisationStatus::SolverFailure;
    }
    return out;
}

PhysicalMap hbb_realisation(const GptSystem& sys) {
    const ValidationReport rep = validate_system(sys);
    if (!rep.passed) throw std::invalid_argument("hbb_realisation: system does not validate");
    const auto n = static_cast<int>(sys.stateVertices.size());
    PhysicalMap pm;
    pm.source = make_simplex(n);
    pm.target = sys;
    pm.coefficients = stack_columns(sys.stateVertices, sys.dim);
    return pm;
}

ValidationReport check_surjectivity_and_iso(const UnivalentSimulation& sim, const PhysicalMap& M,
                                            double tol) {
    return surjectivity_iso_impl(sim.source, sim.target, M, tol);
}

ValidationReport check_surjectivity_and_iso(const HbbModel& model, const PhysicalMap& M,
                                            double tol) {
    return surjectivity_iso_impl(model.source, model.target, M, tol);
}

}  // namespace gptctx
