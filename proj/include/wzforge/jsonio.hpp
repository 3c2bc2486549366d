#pragma once

#include "json.hpp"

namespace wzforge {

using Json = nlohmann::ordered_json;

}  // namespace wzforge
