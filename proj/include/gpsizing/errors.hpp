#pragma once

#include <stdexcept>
#include <string>

namespace gpsizing {

/// Invalid primitive sets, initialization settings, experiment configs.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace gpsizing
