#pragma once
// Named example systems: classical simplices, the noisy bit, the toy bit
// (octahedron), the squit (square gbit), and regular-polygon systems.
#include "core/system.hpp"

#include <optional>
#include <string>

namespace gptctx {

// Classical n-level system: basis states, all 2^n - 1 nonzero 0/1 indicator
// effects, all-ones unit. Guarded to n <= 16 (indicator count grows as 2^n).
GptSystem make_simplex(int n);

// Two classical states read out through noisy effects:
// chi_i . delta_j = 1 - alpha when i = j, alpha otherwise. alpha in (0, 0.5].
// At alpha = 0.5 the two effects coincide with u/2 and the system becomes
// degenerate (no nontrivial effect separates the states) — validation then
// reports the rank failure honestly.
GptSystem make_noisy_bit(double alpha);

// Octahedron states (1,±1,0,0), (1,0,±1,0), (1,0,0,±1) with the six dual
// axis effects ½(1,±1,0,0), … and unit (1,0,0,0).
GptSystem make_toy_bit();

// Square state space (1,±1,±1) with the four facet effects ½(1,±1,0),
// ½(1,0,±1) and unit (1,0,0).
GptSystem make_square_gbit();

// Regular k-gon states (1, cos(2πj/k), sin(2πj/k)) with the full dual effect
// polytope {f : f·ω_j ∈ [0,1] ∀j}, vertex-enumerated. k in [3, 24].
GptSystem make_polygon(int k);

// Resolves "simplex:n" | "noisy-bit:alpha" | "toy-bit" | "squit" |
// "polygon:k". Returns nullopt for unrecognized names; parameter violations
// inside a recognized name throw like the constructors do.
std::optional<GptSystem> make_from_name(const std::string& name);

}  // namespace gptctx
