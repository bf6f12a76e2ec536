#pragma once
// Resource-theoretic quantities built on the see-saw engine: classical-excess
// sweeps with sound witness lower bounds, POM values and yields over free
// classical wires, and hierarchy comparison verdicts with validated evidence.
#include "opt/seesaw.hpp"

#include <optional>
#include <string>

namespace gptctx {

struct ExcessEstimate {
    std::string label;           // system the estimate is about
    int m = 0;                   // simplex target size
    double upperBound = kInf;    // validated adequacy of the best certificate
    double lowerBound = 0.0;     // witness bound, uniform in m
    UnivalentSimulation certificate;
    bool failed = false;  // see-saw produced no validated certificate for this m
};

struct ExcessSweep {
    std::vector<ExcessEstimate> perM;  // m = 1..mMax in order
    double stabilized = kInf;          // min validated upper bound over the sweep
    bool stabilizedFlag = false;       // last three upper bounds agree within 1e-6
    double lowerBound = 0.0;           // the uniform witness lower bound
};

// Upper bounds from per-m see-saw embeddings plus one witness lower bound
// (computed once with n = 2) shared by every row.
ExcessSweep classical_excess(const GptSystem& A, int mMax, const SeesawConfig& cfg);

// max(0, p̂ − (n+1)/2n) for the re-validated success p̂ of the best strategy
// found. Sound as a lower bound on the excess into every simplex: an
// ε-simulation carries any strategy over with the parity equality preserved
// exactly and each probability shifted by at most ε, while no simplex
// strategy beats (n+1)/2n.
double pom_excess_witness(const GptSystem& A, int n, const SeesawConfig& cfg);

struct PomValue {
    double value = 0.0;  // achievable (validated strategy), not a certified optimum
    PomStrategy strategy;
    bool solverFailure = false;
};

PomValue pom_value(const GptSystem& A, int n, const SeesawConfig& cfg);

struct PomYield {
    double value = 0.0;          // max over d of the per-wire values
    std::vector<double> perD;    // index d-1, d = 1..dMax
    std::vector<bool> failedD;   // per-d solver failure marks
    bool stabilizedFlag = false;  // last two per-d values agree within 1e-6
};

// POM value of A ⊗ Δ_d maximized over the free classical wire size d.
PomYield pom_yield(const GptSystem& A, int n, int dMax, const SeesawConfig& cfg);

enum class Verdict { Holds, Refuted, Inconclusive };
std::string to_string(Verdict v);

struct HierarchyEvidence {
    Verdict verdict = Verdict::Inconclusive;
    int freeWireSize = 0;  // the n achieving a holds verdict
    std::optional<UnivalentSimulation> certificate;  // validates at ≤ 1e-6 when holds
    double witnessLower = 0.0;    // lower bound on the left system's excess
    double simulatorUpper = kInf;  // stabilized excess upper bound of the right system
    std::vector<double> perN;      // best validated ε per free wire size (diagnostic)
};

// Evidence for "A is simulable by B plus a free classical wire": search for an
// exact certificate A → B ⊗ Δ_n over n = 1..nFreeMax; refute via the monotone
// gap witness(A) > excess-upper(B) + margin; otherwise inconclusive.
HierarchyEvidence compare(const GptSystem& A, const GptSystem& B, int nFreeMax,
                          const SeesawConfig& cfg);

// Product of two holds certificates f1: A1 → B1⊗Δ_n1 and f2: A2 → B2⊗Δ_n2,
// reassembled as one certificate A1⊗A2 → (B1⊗B2) ⊗ Δ_{n1·n2}.
UnivalentSimulation tensor_certificates(const UnivalentSimulation& f1, const GptSystem& B1,
                                        int n1, const UnivalentSimulation& f2,
                                        const GptSystem& B2, int n2);

// Closed form (n + 1 − 2α)/2n for the noisy bit; α ∈ (0, 0.5], n ≥ 2.
double noisy_bit_pom_formula(double alpha, int n);

}  // namespace gptctx
