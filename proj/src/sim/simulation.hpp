#pragma once
// Univalent simulations as linear map pairs, their validation, and the
// structural constructions: composition, tensoring with a classical identity,
// composite reduction, and the simplex product identification.
#include "core/json_io.hpp"
#include "core/system.hpp"

namespace gptctx {

struct UnivalentSimulation {
    GptSystem source;
    GptSystem target;
    Mat stateMap;   // target.dim x source.dim, states: ω ↦ stateMap·ω
    Mat effectMap;  // target.dim x source.dim, dual coords: e ↦ effectMap·e
    double epsilonClaimed = 0.0;
};

struct SimulationCheck {
    double epsilonObserved = 0.0;
    ValidationReport report;  // membership / structural failures
    bool valid() const { return report.passed; }
};

// Checks memberships of all vertex images at tol, measures the worst
// adequacy deviation over (effect vertex, state vertex) pairs, and flags
// state-vertex images that collide although some effect separates their
// sources by more than 2·epsilonObserved + tol. Zero preservation is exact
// for linear maps. With preserveUnit, additionally requires
// effectMap·u_source = u_target within tol.
SimulationCheck validate_simulation(const UnivalentSimulation& sim, double tol = kDefaultTol,
                                    bool preserveUnit = false);

UnivalentSimulation identity_simulation(const GptSystem& sys);

// Sequential composition; inner systems must agree vertex-for-vertex.
// epsilonClaimed adds.
UnivalentSimulation compose(const UnivalentSimulation& first, const UnivalentSimulation& second);

// sim ⊗ id on the minimal composites with Δ_n.
UnivalentSimulation tensor_with_classical(const UnivalentSimulation& sim, int n);

// From a simulation of type A⊗Δ_n → B, builds A → B⊗Δ_k by pinning the
// classical input to δ₁ and tagging the output with δ₁ of Δ_k:
//   Γ₁(ω) = Γ(ω⊗δ₁)⊗δ₁,  Θ₁(e) = Θ(e⊗δ₁*)⊗δ₁*.
// sim.source must be minimal_tensor(A, Δ_n).
UnivalentSimulation reduce_composite(const UnivalentSimulation& sim, const GptSystem& A, int n,
                                     int k);

// Δ_m ↪ Δ_M for m ≤ M: basis/indicator inclusion, exact.
UnivalentSimulation make_simplex_embedding(int m, int M);

// Coordinate identification between Δ_m⊗Δ_k and Δ_{m·k} under the pairing
// (i,j) ↦ i·k + j. The forward direction is exact. The reverse direction is
// exact only when min(m,k) = 1: for m,k ≥ 2 a non-product indicator (e.g. the
// diagonal) lies outside the composite's product-effect hull, so its effect
// images fail membership and validation reports it.
struct SimplexProductIso {
    UnivalentSimulation forward;  // Δ_m⊗Δ_k → Δ_{m·k}
    UnivalentSimulation reverse;  // Δ_{m·k} → Δ_m⊗Δ_k
};
SimplexProductIso simplex_product_iso(int m, int k);

Json simulation_to_json(const UnivalentSimulation& sim);
// source/target may be embedded system objects or zoo names.
UnivalentSimulation simulation_from_json(const Json& j);

}  // namespace gptctx
