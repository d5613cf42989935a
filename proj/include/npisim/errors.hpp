#pragma once

#include <stdexcept>
#include <string>

namespace npisim {

// Invalid configuration (bad field value, inconsistent combination).
// The CLI maps this to exit code 2; runtime failures map to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace npisim
