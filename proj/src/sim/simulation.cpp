#include "sim/simulation.hpp"

#include "zoo/systems.hpp"

#include <cmath>
#include <stdexcept>

namespace gptctx {

namespace {

void require_shape(const UnivalentSimulation& sim) {
    if (sim.stateMap.rows() != sim.target.dim || sim.stateMap.cols() != sim.source.dim ||
        sim.effectMap.rows() != sim.target.dim || sim.effectMap.cols() != sim.source.dim)
        throw std::invalid_argument("simulation: map shapes do not match source/target dims");
}

bool same_vertex_list(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!exactly_equal(a[i], b[i])) return false;
    return true;
}

}  // namespace

SimulationCheck validate_simulation(const UnivalentSimulation& sim, double tol, bool preserveUnit) {
    require_shape(sim);
    SimulationCheck out;

    std::vector<Vec> stateImages;
    stateImages.reserve(sim.source.stateVertices.size());
    for (std::size_t j = 0; j < sim.source.stateVertices.size(); ++j) {
        Vec img = sim.stateMap * sim.source.stateVertices[j];
        const double dist = state_distance(sim.target, img);
        if (dist > tol)
            out.report.add("state-image-membership", {static_cast<int>(j)}, dist);
        stateImages.push_back(std::move(img));
    }

    std::vector<Vec> effectImages;
    effectImages.reserve(sim.source.effectVertices.size());
    for (std::size_t i = 0; i < sim.source.effectVertices.size(); ++i) {
        Vec img = sim.effectMap * sim.source.effectVertices[i];
        const double dist = effect_distance(sim.target, img);
        if (dist > tol)
            out.report.add("effect-image-membership", {static_cast<int>(i)}, dist);
        effectImages.push_back(std::move(img));
    }

    double eps = 0.0;
    for (std::size_t i = 0; i < sim.source.effectVertices.size(); ++i)
        for (std::size_t j = 0; j < sim.source.stateVertices.size(); ++j) {
            const double want = sim.source.effectVertices[i].dot(sim.source.stateVertices[j]);
            const double got = effectImages[i].dot(stateImages[j]);
            eps = std::max(eps, std::abs(want - got));
        }
    out.epsilonObserved = eps;

    // Image overlap: collapsing two vertices is illegal exactly when some
    // effect tells them apart by more than the adequacy slack can absorb.
    for (std::size_t a = 0; a + 1 < stateImages.size(); ++a)
        for (std::size_t b = a + 1; b < stateImages.size(); ++b) {
            if ((stateImages[a] - stateImages[b]).cwiseAbs().maxCoeff() > tol) continue;
            if ((sim.source.stateVertices[a] - sim.source.stateVertices[b]).cwiseAbs().maxCoeff() <=
                tol)
                continue;  // duplicated source vertex, not a collapse
            double sep = 0.0;
            for (const Vec& e : sim.source.effectVertices)
                sep = std::max(sep, std::abs(e.dot(sim.source.stateVertices[a]) -
                                             e.dot(sim.source.stateVertices[b])));
            if (sep > 2.0 * eps + tol)
                out.report.add("state-image-overlap", {static_cast<int>(a), static_cast<int>(b)},
                               sep);
        }

    if (preserveUnit) {
        const double gap =
            (sim.effectMap * sim.source.unitEffect - sim.target.unitEffect).cwiseAbs().maxCoeff();
        if (gap > tol) out.report.add("unit-preservation", {}, gap);
    }
    return out;
}

UnivalentSimulation identity_simulation(const GptSystem& sys) {
    UnivalentSimulation sim;
    sim.source = sys;
    sim.target = sys;
    sim.stateMap = Mat::Identity(sys.dim, sys.dim);
    sim.effectMap = Mat::Identity(sys.dim, sys.dim);
    sim.epsilonClaimed = 0.0;
    return sim;
}

UnivalentSimulation compose(const UnivalentSimulation& first, const UnivalentSimulation& second) {
    if (first.target.dim != second.source.dim ||
        !same_vertex_list(first.target.stateVertices, second.source.stateVertices) ||
        !same_vertex_list(first.target.effectVertices, second.source.effectVertices) ||
        !exactly_equal(first.target.unitEffect, second.source.unitEffect))
        throw std::invalid_argument("compose: inner systems differ");
    UnivalentSimulation out;
    out.source = first.source;
    out.target = second.target;
    out.stateMap = second.stateMap * first.stateMap;
    out.effectMap = second.effectMap * first.effectMap;
    out.epsilonClaimed = first.epsilonClaimed + second.epsilonClaimed;
    return out;
}

UnivalentSimulation tensor_with_classical(const UnivalentSimulation& sim, int n) {
    require_shape(sim);
    GptSystem dn = make_simplex(n);
    UnivalentSimulation out;
    out.source = minimal_tensor(sim.source, dn);
    out.target = minimal_tensor(sim.target, dn);
    Mat id = Mat::Identity(n, n);
    out.stateMap = kron(sim.stateMap, id);
    out.effectMap = kron(sim.effectMap, id);
    out.epsilonClaimed = sim.epsilonClaimed;
    return out;
}

UnivalentSimulation reduce_composite(const UnivalentSimulation& sim, const GptSystem& A, int n,
                                     int k) {
    require_shape(sim);
    if (n < 1 || k < 1) throw std::invalid_argument("reduce_composite: n, k must be >= 1");
    if (sim.source.dim != A.dim * n)
        throw std::invalid_argument("reduce_composite: source is not A⊗Δ_n (dimension check)");

    // ω ↦ ω⊗δ₁ and v ↦ v⊗δ₁ as kron with a basis column.
    Mat e1n = Mat::Zero(n, 1);
    e1n(0, 0) = 1.0;
    Mat e1k = Mat::Zero(k, 1);
    e1k(0, 0) = 1.0;
    Mat embedSrc = kron(Mat::Identity(A.dim, A.dim), e1n);           // A.dim*n x A.dim
    Mat tagTgt = kron(Mat::Identity(sim.target.dim, sim.target.dim), e1k);

    UnivalentSimulation out;
    out.source = A;
    out.target = minimal_tensor(sim.target, make_simplex(k));
    out.stateMap = tagTgt * sim.stateMap * embedSrc;
    out.effectMap = tagTgt * sim.effectMap * embedSrc;
    out.epsilonClaimed = sim.epsilonClaimed;
    return out;
}

UnivalentSimulation make_simplex_embedding(int m, int M) {
    if (m < 1 || M < m) throw std::invalid_argument("make_simplex_embedding: need 1 <= m <= M");
    UnivalentSimulation sim;
    sim.source = make_simplex(m);
    sim.target = make_simplex(M);
    Mat inc = Mat::Zero(M, m);
    inc.topLeftCorner(m, m).setIdentity();
    sim.stateMap = inc;
    sim.effectMap = inc;
    sim.epsilonClaimed = 0.0;
    return sim;
}

SimplexProductIso simplex_product_iso(int m, int k) {
    if (m < 1 || k < 1) throw std::invalid_argument("simplex_product_iso: m, k must be >= 1");
    GptSystem composite = minimal_tensor(make_simplex(m), make_simplex(k));
    GptSystem flat = make_simplex(m * k);
    // The kron layout already realizes (i,j) ↦ i·k + j, so both coordinate
    // maps are identities; only the polytopes differ.
    Mat id = Mat::Identity(m * k, m * k);
    SimplexProductIso iso;
    iso.forward = {composite, flat, id, id, 0.0};
    iso.reverse = {flat, composite, id, id, 0.0};
    return iso;
}

Json simulation_to_json(const UnivalentSimulation& sim) {
    Json j;
    j["source"] = system_to_json(sim.source);
    j["target"] = system_to_json(sim.target);
    j["state_map"] = mat_to_json(sim.stateMap);
    j["effect_map"] = mat_to_json(sim.effectMap);
    j["epsilon"] = sim.epsilonClaimed;
    return j;
}

namespace {

GptSystem system_from_ref(const Json& j, const char* field) {
    if (j.is_string()) {
        auto sys = make_from_name(j.get<std::string>());
        if (!sys)
            throw std::runtime_error(std::string(field) + ": unknown system name \"" +
                                     j.get<std::string>() + "\"");
        return *sys;
    }
    return system_from_json(j);
}

}  // namespace

UnivalentSimulation simulation_from_json(const Json& j) {
    if (!j.is_object()) throw std::runtime_error("simulation document must be a JSON object");
    for (const char* key : {"source", "target", "state_map", "effect_map"})
        if (!j.contains(key))
            throw std::runtime_error(std::string("simulation document missing \"") + key + "\"");
    UnivalentSimulation sim;
    sim.source = system_from_ref(j.at("source"), "source");
    sim.target = system_from_ref(j.at("target"), "target");
    sim.stateMap = mat_from_json(j.at("state_map"));
    sim.effectMap = mat_from_json(j.at("effect_map"));
    sim.epsilonClaimed = j.value("epsilon", 0.0);
    require_shape(sim);
    return sim;
}

}  // namespace gptctx
