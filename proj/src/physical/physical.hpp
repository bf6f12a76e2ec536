#pragma once
// Physical transformations between vertex-described systems: cone-condition
// checks, the decode-map (realisation) LP for univalent simulations, the
// constructive realisation of the basis model, and surjectivity /
// isomorphism diagnostics.
#include "zoo/models.hpp"

namespace gptctx {

// Linear map M : V_B → V_A (source B, target A) that is physical when it
// sends B's state polytope into A's and its adjoint sends A's effect
// polytope into B's.
struct PhysicalMap {
    GptSystem source;  // B
    GptSystem target;  // A
    Mat coefficients;  // dim(A) × dim(B)
};

// Both cone conditions, checked at the vertices (which suffices by
// linearity): M(state vertices of source) ∈ Ω_target and M*(effect vertices
// of target) ∈ E_source.
ValidationReport check_physical_map(const PhysicalMap& M, double tol = kDefaultTol);

enum class RealisationStatus { Feasible, Infeasible, SolverFailure };
const char* to_string(RealisationStatus s);

struct RealisationResult {
    RealisationStatus status = RealisationStatus::SolverFailure;
    PhysicalMap map;  // populated when status == Feasible
    // Whether the adjoint equalities M*(e) = Θ(e) hold exactly. When they
    // are unsatisfiable as stated (the effect map may land strictly inside
    // the target's effect space), the decode map is searched with the state
    // equalities and both physicality memberships only; the induced pairing
    // identity M*(e)·Γ(ω) = e·ω then still holds.
    bool strictAdjoint = false;
};

// Search for a physical decode map M : V_B → V_A of a univalent simulation
// f : A → B, satisfying M(Γ(v)) = v on A's state vertices (and, in strict
// mode, M*(e) = Θ(e) on A's effect vertices) as one LP feasibility problem
// in the coefficients of M. Infeasible is reported only on a certified
// phase-1 infeasibility certificate covering both modes; solver breakdown is
// a distinct status. Throws std::invalid_argument when sim itself does not
// validate at tol.
RealisationResult find_realisation(const UnivalentSimulation& sim, double tol = 1e-7);

// The constructive realisation Δ_n → sys of hbb_model(sys): the i-th
// simplex vertex maps to the i-th state vertex (columns of the matrix), so
// M*(e) is exactly the probability table of e on the state vertices.
PhysicalMap hbb_realisation(const GptSystem& sys);

// Verifies M(Ω_B) ⊇ Ω_A by a preimage LP per A state vertex; when the two
// ambient dimensions agree, additionally requires M invertible within a
// conditioning threshold of 1e8. The first argument only pins which
// simulation M is claimed to realise (shape check).
ValidationReport check_surjectivity_and_iso(const UnivalentSimulation& sim,
                                            const PhysicalMap& M, double tol = kDefaultTol);
ValidationReport check_surjectivity_and_iso(const HbbModel& model, const PhysicalMap& M,
                                            double tol = kDefaultTol);

}  // namespace gptctx
