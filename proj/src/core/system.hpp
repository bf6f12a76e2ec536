#pragma once
// Vertex-described GPT systems: state polytope, effect polytope (zero effect
// implicit), unit effect, and the membership/validation machinery everything
// else is built on.
#include "core/linalg.hpp"

#include <string>
#include <vector>

namespace gptctx {

struct GptSystem {
    std::string label;
    Eigen::Index dim = 0;
    std::vector<Vec> stateVertices;
    std::vector<Vec> effectVertices;  // extremal nonzero effects; 0 adjoined implicitly
    Vec unitEffect;
};

struct Violation {
    std::string invariant;
    std::vector<int> indices;
    double magnitude = 0.0;
};

struct ValidationReport {
    bool passed = true;
    std::vector<Violation> violations;
    void add(std::string invariant, std::vector<int> indices, double magnitude) {
        passed = false;
        violations.push_back({std::move(invariant), std::move(indices), magnitude});
    }
};

// Inner product of an effect (dual) vector with a state vector.
// Throws std::invalid_argument on dimension mismatch.
double pairing(const Vec& e, const Vec& omega);

// Checks every structural invariant at tolerance tol; failures become report
// entries, never exceptions.
ValidationReport validate_system(const GptSystem& sys, double tol = kDefaultTol);

// Max-norm distance from v to the convex hull of the state vertices
// (Chebyshev LP; closed forms for classical simplices).
double state_distance(const GptSystem& sys, const Vec& v);
// Same against conv(effectVertices ∪ {0}).
double effect_distance(const GptSystem& sys, const Vec& f);

bool state_membership(const GptSystem& sys, const Vec& v, double tol = kDefaultTol);
bool effect_membership(const GptSystem& sys, const Vec& f, double tol = kDefaultTol);

// True when the system is structurally a classical simplex in standard
// coordinates: basis-vector states, all 0/1 indicator effect vertices, and an
// all-ones unit. Recognition is exact up to 1e-12 so near-misses stay general.
bool is_classical_simplex(const GptSystem& sys);

// Minimal composite: pairwise tensor products on both the state and the
// effect side, unit u_A ⊗ u_B. Vertex order is A-major (for each A vertex,
// all B vertices in order); duplicates are removed by exact equality.
GptSystem minimal_tensor(const GptSystem& A, const GptSystem& B);

}  // namespace gptctx
