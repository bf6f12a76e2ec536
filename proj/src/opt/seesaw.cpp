#include "opt/seesaw.hpp"

#include "core/lp.hpp"
#include "zoo/systems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <thread>

namespace gptctx {

int resolve_threads(const SeesawConfig& cfg) {
    if (cfg.threads > 0) return cfg.threads;
    if (const char* env = std::getenv("GPTCTX_THREADS")) {
        const int t = std::atoi(env);
        if (t > 0) return t;
    }
    return 1;
}

namespace {

// Portable 53-bit uniform in [0,1); avoids implementation-defined
// distribution internals so seeded runs agree across standard libraries.
double u01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

// Runs `work` over restart indices with batch parallelism. The result is the
// lowest index whose score beats earlyStop if one exists, otherwise the best
// score over all indices (ties to the lowest index) — identical for every
// thread count, since batches are index-ordered and an early hit at index r
// only suppresses indices > r.
template <typename Payload>
std::optional<std::pair<double, Payload>> run_restarts(
    int restarts, int threads, double earlyStop,
    const std::function<std::optional<std::pair<double, Payload>>(int)>& work) {
    std::vector<std::optional<std::pair<double, Payload>>> results(
        static_cast<std::size_t>(restarts));
    for (int batch = 0; batch < restarts; batch += threads) {
        const int end = std::min(restarts, batch + threads);
        if (end - batch == 1) {
            results[static_cast<std::size_t>(batch)] = work(batch);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(end - batch));
            for (int r = batch; r < end; ++r)
                pool.emplace_back([&, r] { results[static_cast<std::size_t>(r)] = work(r); });
            for (auto& th : pool) th.join();
        }
        for (int r = 0; r < end; ++r)
            if (results[static_cast<std::size_t>(r)] &&
                results[static_cast<std::size_t>(r)]->first <= earlyStop)
                return results[static_cast<std::size_t>(r)];
    }
    std::optional<std::pair<double, Payload>> best;
    for (int r = 0; r < restarts; ++r) {
        const auto& res = results[static_cast<std::size_t>(r)];
        if (res && (!best || res->first < best->first)) best = res;
    }
    return best;
}

// ---------------------------------------------------------------------------
// Embedding see-saw
// ---------------------------------------------------------------------------

struct EmbedProblem {
    const GptSystem& A;
    const GptSystem& T;
    bool classicalTarget;
    bool preserveUnit;
    Mat SA;            // A state vertices as columns
    Mat pair;          // pair(i,j) = e_i · ω_j over A's vertex lists
    std::vector<Vec> gj;  // scratch: current state images

    EmbedProblem(const GptSystem& a, const GptSystem& t, bool pu)
        : A(a), T(t), classicalTarget(is_classical_simplex(t)), preserveUnit(pu) {
        SA = stack_columns(A.stateVertices, A.dim);
        pair.resize(static_cast<Eigen::Index>(A.effectVertices.size()),
                    static_cast<Eigen::Index>(A.stateVertices.size()));
        for (std::size_t i = 0; i < A.effectVertices.size(); ++i)
            for (std::size_t j = 0; j < A.stateVertices.size(); ++j)
                pair(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    A.effectVertices[i].dot(A.stateVertices[j]);
    }
};

// Least-squares fit of a linear map sending A's state vertices to the given
// targets (exact when the vertices are linearly independent).
Mat fit_state_map(const Mat& SA, const std::vector<Vec>& targets, Eigen::Index dT) {
    Mat Y(dT, static_cast<Eigen::Index>(targets.size()));
    for (std::size_t j = 0; j < targets.size(); ++j)
        Y.col(static_cast<Eigen::Index>(j)) = targets[j];
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(SA.transpose());
    return cod.solve(Y.transpose()).transpose();
}

// Effect step: fix G, minimize worst adequacy deviation over effect maps with
// image membership. Returns nullopt on solver breakdown.
std::optional<std::pair<Mat, double>> effect_step(const EmbedProblem& P, const Mat& G) {
    const Eigen::Index dA = P.A.dim, dT = P.T.dim;
    const auto& EA = P.A.effectVertices;
    const auto& FT = P.T.effectVertices;
    const Eigen::Index nE = static_cast<Eigen::Index>(EA.size());
    const Eigen::Index nF = static_cast<Eigen::Index>(FT.size());
    const Eigen::Index nTe = dT * dA;
    const Eigen::Index nMu = P.classicalTarget ? 0 : nE * nF;
    const Eigen::Index V = nTe + nMu + 1;
    const Eigen::Index tIdx = V - 1;
    auto te = [dA](Eigen::Index r, Eigen::Index c) { return r * dA + c; };
    auto mu = [nTe, nF](Eigen::Index i, Eigen::Index w) { return nTe + i * nF + w; };

    LinearProgram lp(V);
    lp.c(tIdx) = 1.0;
    lp.lo(tIdx) = 0.0;
    for (Eigen::Index k = 0; k < nMu; ++k) lp.lo(nTe + k) = 0.0;

    std::vector<Vec> gj(P.A.stateVertices.size());
    for (std::size_t j = 0; j < gj.size(); ++j) gj[j] = G * P.A.stateVertices[j];

    for (Eigen::Index i = 0; i < nE; ++i) {
        const Vec& e = EA[static_cast<std::size_t>(i)];
        if (P.classicalTarget) {
            // Image coordinates boxed into [0,1].
            for (Eigen::Index c = 0; c < dT; ++c) {
                Vec row = Vec::Zero(V);
                for (Eigen::Index col = 0; col < dA; ++col) row(te(c, col)) = e(col);
                lp.add_le(row, 1.0);
                lp.add_ge(row, 0.0);
            }
        } else {
            for (Eigen::Index c = 0; c < dT; ++c) {
                Vec row = Vec::Zero(V);
                for (Eigen::Index col = 0; col < dA; ++col) row(te(c, col)) = e(col);
                for (Eigen::Index w = 0; w < nF; ++w)
                    row(mu(i, w)) = -FT[static_cast<std::size_t>(w)](c);
                lp.add_eq(row, 0.0);
            }
            Vec sums = Vec::Zero(V);
            for (Eigen::Index w = 0; w < nF; ++w) sums(mu(i, w)) = 1.0;
            lp.add_le(sums, 1.0);
        }
        for (std::size_t j = 0; j < gj.size(); ++j) {
            Vec row = Vec::Zero(V);
            for (Eigen::Index c = 0; c < dT; ++c)
                for (Eigen::Index col = 0; col < dA; ++col)
                    row(te(c, col)) = e(col) * gj[j](c);
            const double p = P.pair(i, static_cast<Eigen::Index>(j));
            Vec up = row, dn = -row;
            up(tIdx) = -1.0;
            dn(tIdx) = -1.0;
            lp.add_le(up, p);
            lp.add_le(dn, -p);
        }
    }
    if (P.preserveUnit) {
        for (Eigen::Index c = 0; c < dT; ++c) {
            Vec row = Vec::Zero(V);
            for (Eigen::Index col = 0; col < dA; ++col) row(te(c, col)) = P.A.unitEffect(col);
            lp.add_eq(row, P.T.unitEffect(c));
        }
    }

    LpResult res = solve_lp(lp);
    if (!res.optimal()) return std::nullopt;
    Mat Teff(dT, dA);
    for (Eigen::Index r = 0; r < dT; ++r)
        for (Eigen::Index c = 0; c < dA; ++c) Teff(r, c) = res.x(te(r, c));
    return std::make_pair(std::move(Teff), res.value);
}

// State step: fix the effect map, minimize the deviation over state maps with
// state-image membership.
std::optional<std::pair<Mat, double>> state_step(const EmbedProblem& P, const Mat& Teff) {
    const Eigen::Index dA = P.A.dim, dT = P.T.dim;
    const auto& SAv = P.A.stateVertices;
    const auto& WT = P.T.stateVertices;
    const Eigen::Index nS = static_cast<Eigen::Index>(SAv.size());
    const Eigen::Index nW = static_cast<Eigen::Index>(WT.size());
    const Eigen::Index nG = dT * dA;
    const Eigen::Index nLam = P.classicalTarget ? 0 : nS * nW;
    const Eigen::Index V = nG + nLam + 1;
    const Eigen::Index tIdx = V - 1;
    auto gi = [dA](Eigen::Index r, Eigen::Index c) { return r * dA + c; };
    auto lam = [nG, nW](Eigen::Index j, Eigen::Index v) { return nG + j * nW + v; };

    LinearProgram lp(V);
    lp.c(tIdx) = 1.0;
    lp.lo(tIdx) = 0.0;
    for (Eigen::Index k = 0; k < nLam; ++k) lp.lo(nG + k) = 0.0;

    std::vector<Vec> fi(P.A.effectVertices.size());
    for (std::size_t i = 0; i < fi.size(); ++i) fi[i] = Teff * P.A.effectVertices[i];

    for (Eigen::Index j = 0; j < nS; ++j) {
        const Vec& w = SAv[static_cast<std::size_t>(j)];
        if (P.classicalTarget) {
            Vec sumRow = Vec::Zero(V);
            for (Eigen::Index c = 0; c < dT; ++c) {
                Vec row = Vec::Zero(V);
                for (Eigen::Index col = 0; col < dA; ++col) row(gi(c, col)) = w(col);
                lp.add_ge(row, 0.0);
                sumRow += row;
            }
            lp.add_eq(sumRow, 1.0);
        } else {
            for (Eigen::Index c = 0; c < dT; ++c) {
                Vec row = Vec::Zero(V);
                for (Eigen::Index col = 0; col < dA; ++col) row(gi(c, col)) = w(col);
                for (Eigen::Index v = 0; v < nW; ++v)
                    row(lam(j, v)) = -WT[static_cast<std::size_t>(v)](c);
                lp.add_eq(row, 0.0);
            }
            Vec sums = Vec::Zero(V);
            for (Eigen::Index v = 0; v < nW; ++v) sums(lam(j, v)) = 1.0;
            lp.add_eq(sums, 1.0);
        }
        for (std::size_t i = 0; i < fi.size(); ++i) {
            Vec row = Vec::Zero(V);
            for (Eigen::Index c = 0; c < dT; ++c)
                for (Eigen::Index col = 0; col < dA; ++col)
                    row(gi(c, col)) = fi[i](c) * w(col);
            const double p = P.pair(static_cast<Eigen::Index>(i), j);
            Vec up = row, dn = -row;
            up(tIdx) = -1.0;
            dn(tIdx) = -1.0;
            lp.add_le(up, p);
            lp.add_le(dn, -p);
        }
    }

    LpResult res = solve_lp(lp);
    if (!res.optimal()) return std::nullopt;
    Mat G(dT, dA);
    for (Eigen::Index r = 0; r < dT; ++r)
        for (Eigen::Index c = 0; c < dA; ++c) G(r, c) = res.x(gi(r, c));
    return std::make_pair(std::move(G), res.value);
}

std::vector<Vec> embed_init_targets(const EmbedProblem& P, int k, std::uint64_t seed) {
    const auto& WT = P.T.stateVertices;
    const std::size_t nW = WT.size();
    const std::size_t nS = P.A.stateVertices.size();
    std::vector<Vec> y(nS);
    if (k == 0) {
        for (std::size_t j = 0; j < nS; ++j) y[j] = WT[j % nW];
    } else if (k == 1) {
        for (std::size_t j = 0; j < nS; ++j) y[j] = WT[(j * nW) / nS];
    } else if (k == 2) {
        Vec bary = Vec::Zero(P.T.dim);
        for (const Vec& w : WT) bary += w;
        bary /= static_cast<double>(nW);
        for (std::size_t j = 0; j < nS; ++j) y[j] = bary;
    } else {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(k));
        const int support = 1 + (k % 3);
        for (std::size_t j = 0; j < nS; ++j) {
            Vec mix = Vec::Zero(P.T.dim);
            double total = 0.0;
            for (int s = 0; s < support; ++s) {
                const std::size_t pick = static_cast<std::size_t>(rng() % nW);
                const double wgt = -std::log(1.0 - u01(rng));
                mix += wgt * WT[pick];
                total += wgt;
            }
            y[j] = mix / total;
        }
    }
    return y;
}

// Snap polish: round each effect image to the nearest target effect vertex
// (or zero) and refit. Alternating minimax descent often stalls with the
// right combinatorial pattern but skewed coordinates; snapping recovers the
// exact embedding when the pattern is correct. Callers keep the polished maps
// only when they validate better.
Mat snap_effect_map(const EmbedProblem& P, const Mat& Teff) {
    const auto& EA = P.A.effectVertices;
    const auto& FT = P.T.effectVertices;
    std::vector<Vec> snapped(EA.size());
    for (std::size_t i = 0; i < EA.size(); ++i) {
        const Vec img = Teff * EA[i];
        Vec best = Vec::Zero(P.T.dim);
        double bestDist = img.cwiseAbs().maxCoeff();  // zero-effect candidate
        for (const Vec& f : FT) {
            const double d = (img - f).cwiseAbs().maxCoeff();
            if (d < bestDist) {
                bestDist = d;
                best = f;
            }
        }
        snapped[i] = std::move(best);
    }
    Mat E = stack_columns(std::vector<Vec>(EA.begin(), EA.end()), P.A.dim);
    return fit_state_map(E, snapped, P.T.dim);
}

// Dual start: assign each source effect vertex to a target effect vertex and
// fit the effect map by least squares; structured embeddings (effect vertices
// landing on effect vertices) are reached far more reliably from this side.
Mat embed_init_effect_map(const EmbedProblem& P, int k, std::uint64_t seed) {
    const auto& EA = P.A.effectVertices;
    const auto& FT = P.T.effectVertices;
    const std::size_t nE = EA.size();
    const std::size_t nF = FT.size();
    std::vector<Vec> img(nE);
    // The vertex with the largest total pairing stands in for the unit.
    std::size_t uLike = 0;
    double bestSum = -kInf;
    for (std::size_t w = 0; w < nF; ++w) {
        double s = 0.0;
        for (const Vec& st : P.T.stateVertices) s += FT[w].dot(st);
        if (s > bestSum) {
            bestSum = s;
            uLike = w;
        }
    }
    std::size_t uIdx = nE;  // source vertex closest to the unit effect
    for (std::size_t i = 0; i < nE; ++i)
        if ((EA[i] - P.A.unitEffect).cwiseAbs().maxCoeff() < 1e-12) uIdx = i;
    if (k <= 1) {
        const std::size_t stride = static_cast<std::size_t>(k) + 1;
        for (std::size_t i = 0; i < nE; ++i) img[i] = FT[(i * stride) % nF];
        if (uIdx < nE) img[uIdx] = FT[uLike];
    } else {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(k) * 104729u);
        for (std::size_t i = 0; i < nE; ++i) img[i] = FT[rng() % nF];
        if (uIdx < nE && k % 2 == 0) img[uIdx] = FT[uLike];
    }
    Mat E = stack_columns(std::vector<Vec>(EA.begin(), EA.end()), P.A.dim);
    return fit_state_map(E, img, P.T.dim);
}

}  // namespace

EmbedResult seesaw_embed(const GptSystem& A, const GptSystem& target, const SeesawConfig& cfg) {
    if (cfg.restarts < 1 || cfg.maxIters < 1)
        throw std::invalid_argument("seesaw: restarts and maxIters must be >= 1");
    EmbedProblem P(A, target, cfg.preserveUnit);

    struct Iterate {
        Mat G, Teff;
        double t = kInf;
        bool ok = false;
    };
    auto alternate = [&](Mat G, int iters) -> Iterate {
        Iterate it;
        double lastT = kInf;
        for (int iter = 0; iter < iters; ++iter) {
            auto eStep = effect_step(P, G);
            if (!eStep) return it;
            it.Teff = std::move(eStep->first);
            auto sStep = state_step(P, it.Teff);
            if (!sStep) return it;
            G = std::move(sStep->first);
            const double t = sStep->second;
            if (std::abs(lastT - t) < cfg.convergenceTol || t < 1e-10) {
                lastT = t;
                break;
            }
            lastT = t;
        }
        it.G = std::move(G);
        it.t = lastT;
        it.ok = true;
        return it;
    };

    auto work = [&](int r) -> std::optional<std::pair<double, UnivalentSimulation>> {
        Mat G0;
        if (r % 2 == 0) {
            G0 = fit_state_map(P.SA, embed_init_targets(P, r / 2, cfg.seed), target.dim);
        } else {
            auto s0 = state_step(P, embed_init_effect_map(P, (r - 1) / 2, cfg.seed));
            if (!s0) return std::nullopt;
            G0 = std::move(s0->first);
        }
        Iterate best = alternate(std::move(G0), cfg.maxIters);
        if (!best.ok) return std::nullopt;
        for (int round = 0; round < 3 && best.t > 1e-10; ++round) {
            auto s0 = state_step(P, snap_effect_map(P, best.Teff));
            if (!s0) break;
            Iterate polished = alternate(std::move(s0->first), cfg.maxIters);
            if (!polished.ok || polished.t >= best.t - cfg.convergenceTol) break;
            best = std::move(polished);
        }
        UnivalentSimulation sim{A, target, best.G, best.Teff, std::max(best.t, 0.0)};
        SimulationCheck chk = validate_simulation(sim, kCertTol, cfg.preserveUnit);
        if (!chk.valid()) return std::nullopt;
        sim.epsilonClaimed = chk.epsilonObserved;
        return std::make_pair(chk.epsilonObserved, std::move(sim));
    };

    auto best = run_restarts<UnivalentSimulation>(cfg.restarts, resolve_threads(cfg), 1e-10, work);
    EmbedResult out;
    if (!best) {
        out.solverFailure = true;
        return out;
    }
    out.found = true;
    out.epsilon = best->first;
    out.certificate = std::move(best->second);
    return out;
}

EmbedResult seesaw_excess(const GptSystem& A, int m, const SeesawConfig& cfg) {
    return seesaw_embed(A, make_simplex(m), cfg);
}

// ---------------------------------------------------------------------------
// POM see-saw
// ---------------------------------------------------------------------------

namespace {

inline int bit_of(int x, int y) { return (x >> (y - 1)) & 1; }

inline int parity_of(int x) {
    int p = 0;
    while (x) {
        p ^= (x & 1);
        x >>= 1;
    }
    return p;
}

// Per-string objective vectors c_x = Σ_y (bit ? e_y : u − e_y).
std::vector<Vec> string_objectives(const GptSystem& A, const std::vector<Vec>& effects, int n) {
    const int N = 1 << n;
    std::vector<Vec> cx(static_cast<std::size_t>(N), Vec::Zero(A.dim));
    for (int x = 0; x < N; ++x)
        for (int y = 1; y <= n; ++y)
            cx[static_cast<std::size_t>(x)] +=
                bit_of(x, y) ? effects[static_cast<std::size_t>(y - 1)]
                             : Vec(A.unitEffect - effects[static_cast<std::size_t>(y - 1)]);
    return cx;
}

// Joint states LP: maximize Σ_x c_x·ω_x over ω_x ∈ Ω_A with exact parity
// obliviousness. Returns per-string convex weights over A's state vertices.
std::optional<std::vector<Vec>> pom_states_step(const GptSystem& A, const std::vector<Vec>& cx,
                                                int n) {
    const int N = 1 << n;
    const Eigen::Index nW = static_cast<Eigen::Index>(A.stateVertices.size());
    const Eigen::Index V = static_cast<Eigen::Index>(N) * nW;
    auto lam = [nW](int x, Eigen::Index v) { return static_cast<Eigen::Index>(x) * nW + v; };

    LinearProgram lp(V);
    for (Eigen::Index k = 0; k < V; ++k) lp.lo(k) = 0.0;
    for (int x = 0; x < N; ++x)
        for (Eigen::Index v = 0; v < nW; ++v)
            lp.c(lam(x, v)) = -cx[static_cast<std::size_t>(x)].dot(
                A.stateVertices[static_cast<std::size_t>(v)]);

    for (int x = 0; x < N; ++x) {
        Vec row = Vec::Zero(V);
        for (Eigen::Index v = 0; v < nW; ++v) row(lam(x, v)) = 1.0;
        lp.add_eq(row, 1.0);
    }
    for (Eigen::Index c = 0; c < A.dim; ++c) {
        Vec row = Vec::Zero(V);
        for (int x = 0; x < N; ++x) {
            const double sign = parity_of(x) == 0 ? 1.0 : -1.0;
            for (Eigen::Index v = 0; v < nW; ++v)
                row(lam(x, v)) = sign * A.stateVertices[static_cast<std::size_t>(v)](c);
        }
        lp.add_eq(row, 0.0);
    }

    LpResult res = solve_lp(lp);
    if (!res.optimal()) return std::nullopt;
    std::vector<Vec> weights(static_cast<std::size_t>(N));
    for (int x = 0; x < N; ++x) {
        Vec wx(nW);
        for (Eigen::Index v = 0; v < nW; ++v) wx(v) = res.x(lam(x, v));
        weights[static_cast<std::size_t>(x)] = std::move(wx);
    }
    return weights;
}

std::vector<Vec> states_from_weights(const GptSystem& A, std::vector<Vec> weights) {
    std::vector<Vec> states;
    states.reserve(weights.size());
    for (Vec& w : weights) {
        // Clip LP round-off and renormalize so each state is an exact convex
        // combination of vertices.
        for (Eigen::Index v = 0; v < w.size(); ++v) w(v) = std::max(w(v), 0.0);
        const double total = w.sum();
        if (total > 0.0) w /= total;
        Vec s = Vec::Zero(A.dim);
        for (Eigen::Index v = 0; v < w.size(); ++v)
            s += w(v) * A.stateVertices[static_cast<std::size_t>(v)];
        states.push_back(std::move(s));
    }
    return states;
}

// Exact per-bit effect step: maximize g_y·e over the measurement-feasible
// region {e ∈ E : u − e ∈ E}. Both memberships enter as subconvex vertex
// weights (the zero effect is implicit), tied by Vμ + Vν = u; a bare effect
// vertex whose complement falls outside E is thereby never selected. The
// returned effect is rebuilt exactly from its clipped, rescaled weights so
// its own membership is exact by construction. On a solver failure the
// incumbent effect is kept.
std::vector<Vec> pom_effects_step(const GptSystem& A, const std::vector<Vec>& states,
                                  const std::vector<Vec>& incumbent, int n) {
    const int N = 1 << n;
    const Eigen::Index nF = static_cast<Eigen::Index>(A.effectVertices.size());
    std::vector<Vec> effects;
    effects.reserve(static_cast<std::size_t>(n));
    for (int y = 1; y <= n; ++y) {
        Vec g = Vec::Zero(A.dim);
        for (int x = 0; x < N; ++x)
            g += (bit_of(x, y) ? 1.0 : -1.0) * states[static_cast<std::size_t>(x)];

        LinearProgram lp(2 * nF);
        for (Eigen::Index j = 0; j < 2 * nF; ++j) lp.lo(j) = 0.0;
        for (Eigen::Index v = 0; v < nF; ++v)
            lp.c(v) = -g.dot(A.effectVertices[static_cast<std::size_t>(v)]);
        for (Eigen::Index c = 0; c < A.dim; ++c) {
            Vec row = Vec::Zero(2 * nF);
            for (Eigen::Index v = 0; v < nF; ++v) {
                row(v) = A.effectVertices[static_cast<std::size_t>(v)](c);
                row(nF + v) = A.effectVertices[static_cast<std::size_t>(v)](c);
            }
            lp.add_eq(row, A.unitEffect(c));
        }
        Vec sumMu = Vec::Zero(2 * nF);
        sumMu.head(nF).setOnes();
        lp.add_le(sumMu, 1.0);
        Vec sumNu = Vec::Zero(2 * nF);
        sumNu.tail(nF).setOnes();
        lp.add_le(sumNu, 1.0);

        LpResult res = solve_lp(lp);
        if (!res.optimal()) {
            effects.push_back(incumbent[static_cast<std::size_t>(y - 1)]);
            continue;
        }
        Vec mu = res.x.head(nF).cwiseMax(0.0);
        const double total = mu.sum();
        if (total > 1.0) mu /= total;
        Vec e = Vec::Zero(A.dim);
        for (Eigen::Index v = 0; v < nF; ++v)
            e += mu(v) * A.effectVertices[static_cast<std::size_t>(v)];
        effects.push_back(std::move(e));
    }
    return effects;
}

std::vector<Vec> pom_init_effects(const GptSystem& A, int n, int r, std::uint64_t seed) {
    const auto& F = A.effectVertices;
    const std::size_t nF = F.size();
    std::vector<Vec> effects(static_cast<std::size_t>(n));
    if (r <= 2) {
        // Strided round-robin: stride 1 pairs bits with consecutive effect
        // vertices, stride 2 skips over complements in axis-ordered lists.
        const std::size_t stride = static_cast<std::size_t>(r) + 1;
        for (int y = 1; y <= n; ++y)
            effects[static_cast<std::size_t>(y - 1)] =
                F[(static_cast<std::size_t>(y - 1) * stride) % nF];
    } else {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(r) * 7919u);
        const int support = 1 + (r % 3);
        for (int y = 1; y <= n; ++y) {
            Vec mix = Vec::Zero(A.dim);
            double total = 0.0;
            for (int s = 0; s < support; ++s) {
                const std::size_t pick = static_cast<std::size_t>(rng() % nF);
                const double wgt = -std::log(1.0 - u01(rng));
                mix += wgt * F[pick];
                total += wgt;
            }
            effects[static_cast<std::size_t>(y - 1)] = mix / total;
        }
    }
    return effects;
}

}  // namespace

double pom_success(const GptSystem& A, const PomStrategy& s) {
    const int N = 1 << s.n;
    double total = 0.0;
    for (int x = 0; x < N; ++x)
        for (int y = 1; y <= s.n; ++y) {
            const Vec& e = s.effects[static_cast<std::size_t>(y - 1)];
            const Vec& w = s.states[static_cast<std::size_t>(x)];
            total += bit_of(x, y) ? e.dot(w) : (A.unitEffect - e).dot(w);
        }
    return total / (static_cast<double>(N) * s.n);
}

double pom_po_residual(const PomStrategy& s) {
    if (s.states.empty()) return 0.0;
    Vec diff = Vec::Zero(s.states[0].size());
    for (int x = 0; x < (1 << s.n); ++x)
        diff += (parity_of(x) == 0 ? 1.0 : -1.0) * s.states[static_cast<std::size_t>(x)];
    return max_abs(diff);
}

ValidationReport validate_pom_strategy(const GptSystem& A, const PomStrategy& s, double tol) {
    ValidationReport rep;
    if (s.n < 2) {
        rep.add("bit-count", {}, s.n);
        return rep;
    }
    if (s.states.size() != static_cast<std::size_t>(1 << s.n) ||
        s.effects.size() != static_cast<std::size_t>(s.n)) {
        rep.add("strategy-shape", {}, 0.0);
        return rep;
    }
    for (std::size_t x = 0; x < s.states.size(); ++x) {
        const double d = state_distance(A, s.states[x]);
        if (d > tol) rep.add("state-membership", {static_cast<int>(x)}, d);
    }
    for (std::size_t y = 0; y < s.effects.size(); ++y) {
        const double d = effect_distance(A, s.effects[y]);
        if (d > tol) rep.add("effect-membership", {static_cast<int>(y)}, d);
        const double dc = effect_distance(A, A.unitEffect - s.effects[y]);
        if (dc > tol) rep.add("complement-membership", {static_cast<int>(y)}, dc);
    }
    const double po = pom_po_residual(s);
    if (po > tol) rep.add("parity-obliviousness", {}, po);
    return rep;
}

PomResult seesaw_pom(const GptSystem& A, int n, const SeesawConfig& cfg) {
    if (n < 2) throw std::invalid_argument("seesaw_pom: n must be >= 2");
    if (cfg.restarts < 1 || cfg.maxIters < 1)
        throw std::invalid_argument("seesaw: restarts and maxIters must be >= 1");

    auto work = [&](int r) -> std::optional<std::pair<double, PomStrategy>> {
        std::vector<Vec> effects = pom_init_effects(A, n, r, cfg.seed);
        std::vector<Vec> weights;
        double last = -kInf;
        for (int iter = 0; iter < cfg.maxIters; ++iter) {
            auto step = pom_states_step(A, string_objectives(A, effects, n), n);
            if (!step) return std::nullopt;
            weights = std::move(*step);
            std::vector<Vec> states = states_from_weights(A, weights);
            effects = pom_effects_step(A, states, effects, n);
            PomStrategy probe{n, states, effects};
            const double succ = pom_success(A, probe);
            if (succ - last < cfg.convergenceTol || succ >= 1.0 - 1e-12) {
                last = std::max(succ, last);
                break;
            }
            last = succ;
        }
        if (weights.empty()) return std::nullopt;
        PomStrategy s{n, states_from_weights(A, weights), effects};
        const double succ = pom_success(A, s);
        if (!validate_pom_strategy(A, s, 1e-7).passed) return std::nullopt;
        return std::make_pair(-succ, std::move(s));  // runner minimizes
    };

    auto best =
        run_restarts<PomStrategy>(cfg.restarts, resolve_threads(cfg), -(1.0 - 1e-12), work);
    PomResult out;
    if (!best) {
        out.solverFailure = true;
        return out;
    }
    out.found = true;
    out.strategy = std::move(best->second);
    out.success = -best->first;
    return out;
}

double brute_force_pom_classical(int d, int n) {
    if (d < 1 || d > 5 || (n != 2 && n != 3))
        throw std::invalid_argument("brute_force_pom_classical: guarded to d <= 5, n in {2,3}");
    GptSystem A = make_simplex(d);
    const int N = 1 << n;
    const int masks = 1 << d;
    double best = 0.0;

    std::vector<int> tuple(static_cast<std::size_t>(n), 0);
    std::vector<Vec> effects(static_cast<std::size_t>(n));
    while (true) {
        for (int y = 0; y < n; ++y) {
            Vec f = Vec::Zero(d);
            for (int c = 0; c < d; ++c)
                if (tuple[static_cast<std::size_t>(y)] & (1 << c)) f(c) = 1.0;
            effects[static_cast<std::size_t>(y)] = f;
        }
        auto weights = pom_states_step(A, string_objectives(A, effects, n), n);
        if (weights) {
            PomStrategy s{n, states_from_weights(A, *weights), effects};
            best = std::max(best, pom_success(A, s));
        }
        int y = 0;
        for (; y < n; ++y) {
            if (++tuple[static_cast<std::size_t>(y)] < masks) break;
            tuple[static_cast<std::size_t>(y)] = 0;
        }
        if (y == n) break;
    }
    return best;
}

}  // namespace gptctx
