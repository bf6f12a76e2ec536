#pragma once
// Named example simulations and the vertex-level HBB construction.
#include "sim/simulation.hpp"

namespace gptctx {

// Δ₂ → Δ₃: basis inclusion on both sides, exact.
UnivalentSimulation bit_in_trit();

// Toy bit → Δ₄, the 4-ontic-state model. Both maps come from a symmetric
// sign matrix H with H² = 4I (stateMap = H/4, effectMap = H), so adequacy is
// exact in floating point.
UnivalentSimulation make_toy_bit_model();

// Vertex-level data of the model sys → Δ_n (n = state-vertex count):
// the i-th state vertex goes to δ_i; effects go to their probability tables
// on the state vertices, Θ(e) = S·e with S the stacked state vertices. The
// state side is a vertex table, not a linear map: on mixed states the model
// is multi-valued, so only vertex images are recorded.
struct HbbModel {
    GptSystem source;
    GptSystem target;                    // Δ_n
    std::vector<Vec> stateVertexImages;  // δ_i for the i-th source state vertex
    Mat effectMap;                       // n x dim: Θ(e) = effectMap · e
};
HbbModel hbb_model(const GptSystem& sys);

// Worst adequacy deviation of the HBB data over all vertex pairs
// (exactly 0 up to floating round-off, by construction).
double hbb_adequacy_deviation(const HbbModel& model);

}  // namespace gptctx
