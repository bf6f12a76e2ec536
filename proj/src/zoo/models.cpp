#include "zoo/models.hpp"

#include "zoo/systems.hpp"

#include <cmath>

namespace gptctx {

UnivalentSimulation bit_in_trit() {
    UnivalentSimulation sim;
    sim.source = make_simplex(2);
    sim.target = make_simplex(3);
    Mat inc = Mat::Zero(3, 2);
    inc(0, 0) = 1.0;
    inc(1, 1) = 1.0;
    sim.stateMap = inc;
    sim.effectMap = inc;
    sim.epsilonClaimed = 0.0;
    return sim;
}

UnivalentSimulation make_toy_bit_model() {
    Mat h(4, 4);
    h << 1, 1, 1, 1,
         1, 1, -1, -1,
         1, -1, 1, -1,
         1, -1, -1, 1;
    UnivalentSimulation sim;
    sim.source = make_toy_bit();
    sim.target = make_simplex(4);
    sim.stateMap = 0.25 * h;
    sim.effectMap = h;
    sim.epsilonClaimed = 0.0;
    return sim;
}

HbbModel hbb_model(const GptSystem& sys) {
    const int n = static_cast<int>(sys.stateVertices.size());
    HbbModel model;
    model.source = sys;
    model.target = make_simplex(n);
    model.effectMap = Mat(n, sys.dim);
    for (int i = 0; i < n; ++i) {
        Vec delta = Vec::Zero(n);
        delta(i) = 1.0;
        model.stateVertexImages.push_back(delta);
        model.effectMap.row(i) = sys.stateVertices[static_cast<std::size_t>(i)];
    }
    return model;
}

double hbb_adequacy_deviation(const HbbModel& model) {
    double worst = 0.0;
    for (const Vec& e : model.source.effectVertices) {
        const Vec img = model.effectMap * e;
        for (std::size_t j = 0; j < model.source.stateVertices.size(); ++j) {
            const double want = e.dot(model.source.stateVertices[j]);
            const double got = img.dot(model.stateVertexImages[j]);
            worst = std::max(worst, std::abs(want - got));
        }
    }
    return worst;
}

}  // namespace gptctx
