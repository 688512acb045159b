#pragma once

#include <json.hpp>

#include "gspec/graphon.hpp"

namespace gspec {

// {"type":"constant","value":c}
// {"type":"product","profile":"sqrt" | "identity"}
// {"type":"product","profile":"affine","a":a,"b":b}
// {"type":"product","profile":"sampled","values":[...]}
// {"type":"step","n":N,"values":[[...],...]}
// {"type":"kernel","name":"mixed"}
nlohmann::json to_json(const Graphon& w);
Graphon graphon_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Profile1D& r);
Profile1D profile_from_json(const nlohmann::json& j);

}  // namespace gspec
