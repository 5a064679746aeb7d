#pragma once

#include <stdexcept>
#include <string>

#include "devolve/allocation.hpp"
#include "devolve/json.hpp"

namespace devolve {

/// A config document is missing keys or carries values of the wrong shape.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kConfigFormat = "devolve-config/1";

/// Stable key order:
///   format, algorithm, params, topology{nodes, links},
///   controllers[{id, monitored, preferred, multipaths[{s, t, paths[{nodes, links}]}]}],
///   mapping[{s, t, controllers}]
ordered_json config_to_json(const ControllerConfig& config);
ControllerConfig config_from_json(const ordered_json& doc);

void write_config_file(const ControllerConfig& config, const std::string& path, const ordered_json& extra = {});
ControllerConfig read_config_file(const std::string& path);

}  // namespace devolve
