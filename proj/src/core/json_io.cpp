#include "core/json_io.hpp"

#include <stdexcept>

namespace gptctx {

Json vec_to_json(const Vec& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

Vec vec_from_json(const Json& j) {
    if (!j.is_array()) throw std::runtime_error("expected a numeric array");
    Vec v(static_cast<Eigen::Index>(j.size()));
    Eigen::Index i = 0;
    for (const auto& x : j) {
        if (!x.is_number()) throw std::runtime_error("expected a numeric array");
        v(i++) = x.get<double>();
    }
    return v;
}

Json mat_to_json(const Mat& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(vec_to_json(m.row(i).transpose()));
    return rows;
}

Mat mat_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw std::runtime_error("expected a non-empty array of rows");
    std::vector<Vec> rows;
    rows.reserve(j.size());
    for (const auto& r : j) rows.push_back(vec_from_json(r));
    const Eigen::Index cols = rows[0].size();
    Mat m(static_cast<Eigen::Index>(rows.size()), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::runtime_error("ragged coefficient grid");
        m.row(static_cast<Eigen::Index>(i)) = rows[i];
    }
    return m;
}

Json system_to_json(const GptSystem& sys) {
    Json j;
    j["label"] = sys.label;
    j["dim"] = sys.dim;
    Json states = Json::array();
    for (const Vec& s : sys.stateVertices) states.push_back(vec_to_json(s));
    j["state_vertices"] = std::move(states);
    Json effects = Json::array();
    for (const Vec& f : sys.effectVertices) effects.push_back(vec_to_json(f));
    j["effect_vertices"] = std::move(effects);
    j["unit_effect"] = vec_to_json(sys.unitEffect);
    return j;
}

GptSystem system_from_json(const Json& j) {
    if (!j.is_object()) throw std::runtime_error("system document must be a JSON object");
    for (const char* key : {"label", "dim", "state_vertices", "effect_vertices", "unit_effect"})
        if (!j.contains(key)) throw std::runtime_error(std::string("system document missing \"") + key + "\"");
    GptSystem sys;
    sys.label = j.at("label").get<std::string>();
    sys.dim = j.at("dim").get<Eigen::Index>();
    if (sys.dim <= 0) throw std::runtime_error("system dim must be positive");
    for (const auto& s : j.at("state_vertices")) sys.stateVertices.push_back(vec_from_json(s));
    for (const auto& f : j.at("effect_vertices")) sys.effectVertices.push_back(vec_from_json(f));
    sys.unitEffect = vec_from_json(j.at("unit_effect"));
    return sys;
}

}  // namespace gptctx
