#pragma once

#include <json.hpp>
#include <string>

#include "quiver/quiver.hpp"

namespace quiver::io {

using nlohmann::json;

// {"n": int, "arrows": [[tail, head, mult], ...]}. Sorted by (tail, head).
json to_json(const Quiver& q);

// Accepts the arrow-list form or {"b": [[...], ...]}; validates invariants.
// Error messages name the offending arrow entry.
Quiver quiver_from_json(const json& j);
Quiver parse_quiver(const std::string& text);

json to_json(const Permutation& p);

}  // namespace quiver::io
