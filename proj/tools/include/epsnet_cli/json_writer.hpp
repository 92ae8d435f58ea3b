#pragma once

#include <string>

#include "json.hpp"

namespace epsnet::cli {

using Json = nlohmann::ordered_json;

/// Pretty-prints with two-space indentation, keys in insertion order and doubles as %.17g.
/// Non-finite doubles become null.
std::string dump_json(const Json& value);

}  // namespace epsnet::cli
