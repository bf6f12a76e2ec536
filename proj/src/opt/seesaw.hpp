#pragma once
// Bilinear see-saw searches: best-effort ε-simulations into an arbitrary
// target system (excess upper bounds when the target is a simplex) and
// parity-oblivious multiplexing strategies, plus the exact classical POM
// oracle. All returned numbers are re-validated against their certificates;
// solver claims never leak through.
#include "sim/simulation.hpp"

#include <cstdint>

namespace gptctx {

struct SeesawConfig {
    int restarts = 32;
    int maxIters = 200;
    std::uint64_t seed = 0;
    double convergenceTol = 1e-9;
    double innerTol = kDefaultTol;  // reserved for membership slack inside steps
    bool preserveUnit = false;      // require Θ(u_A) = u_target in embeddings
    int threads = 0;                // 0: use GPTCTX_THREADS, else 1
};

struct EmbedResult {
    double epsilon = kInf;  // validated adequacy of the certificate
    UnivalentSimulation certificate;
    bool found = false;          // at least one restart validated
    bool solverFailure = false;  // every restart failed numerically
};

// Alternating LPs over the two linear maps of a candidate simulation A →
// target: the effect step fixes the state map and minimizes the worst
// adequacy deviation over effect maps with effect-image membership enforced;
// the state step does the converse. Restart r of the schedule is
// deterministic for r ≤ 2 and seeded Dirichlet-random for r ≥ 3; results are
// independent of thread count (restart indices are totally ordered and an
// exact hit short-circuits later indices only).
EmbedResult seesaw_embed(const GptSystem& A, const GptSystem& target, const SeesawConfig& cfg);

// Specialization to the classical target Δ_m (box memberships instead of
// convex-weight columns).
EmbedResult seesaw_excess(const GptSystem& A, int m, const SeesawConfig& cfg);

// A parity-oblivious multiplexing strategy: one encoding state per n-bit
// string (index x, bit y of x read as (x >> (y-1)) & 1) and one b=1 effect
// per requested bit y.
struct PomStrategy {
    int n = 0;
    std::vector<Vec> states;   // size 2^n
    std::vector<Vec> effects;  // size n
};

// Average success probability (1/(2^n n)) Σ_{x,y} [bit ? e_y : u−e_y]·ω_x.
double pom_success(const GptSystem& A, const PomStrategy& s);
// Max-norm residual of the parity-obliviousness equality
// Σ_{even parity} ω_x = Σ_{odd parity} ω_x.
double pom_po_residual(const PomStrategy& s);
// Memberships of all states, effects, and complements u−e_y, plus the PO
// residual at tol.
ValidationReport validate_pom_strategy(const GptSystem& A, const PomStrategy& s,
                                       double tol = kDefaultTol);

struct PomResult {
    double success = 0.0;  // recomputed exactly from the returned strategy
    PomStrategy strategy;
    bool found = false;
    bool solverFailure = false;
};

// Alternates a joint states LP (convex weights per string, PO imposed
// exactly) with an exact per-bit effect LP over the measurement-feasible
// region {e : e and u−e are both effects} — on composites that region is a
// strict subset of the effect polytope. Best restart wins; the returned
// success is re-evaluated from the cleaned strategy.
PomResult seesaw_pom(const GptSystem& A, int n, const SeesawConfig& cfg);

// Exact optimum of the POM game on Δ_d by enumerating all indicator-effect
// tuples (per-bit optima sit at cube vertices) and solving the PO states LP
// for each. Guarded to d ≤ 5 and n ∈ {2,3}.
double brute_force_pom_classical(int d, int n);

// Effective parallelism: cfg.threads if positive, else GPTCTX_THREADS, else 1.
int resolve_threads(const SeesawConfig& cfg);

}  // namespace gptctx
