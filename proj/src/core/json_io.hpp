#pragma once
// JSON (de)serialization for systems and coefficient grids. ordered_json
// keeps key order deterministic so identical runs emit identical bytes.
#include "core/system.hpp"

#include <json.hpp>

namespace gptctx {

using Json = nlohmann::ordered_json;

Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j);

// Dense row-major coefficient grids.
Json mat_to_json(const Mat& m);
Mat mat_from_json(const Json& j);

Json system_to_json(const GptSystem& sys);
// Throws std::runtime_error (or nlohmann exceptions) on malformed documents.
GptSystem system_from_json(const Json& j);

}  // namespace gptctx
