#pragma once

#include <stdexcept>
#include <string>

namespace pension_mc {

// Invalid scenario parameters, unknown keys, unparseable values.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Sequence arguments whose lengths do not agree.
class ShapeError : public std::invalid_argument {
 public:
  explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace pension_mc
