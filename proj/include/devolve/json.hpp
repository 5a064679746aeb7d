#pragma once

#include <json.hpp>

namespace devolve {

// Insertion-ordered so emitted documents diff cleanly.
using ordered_json = nlohmann::ordered_json;

}  // namespace devolve
