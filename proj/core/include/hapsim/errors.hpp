#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace hapsim {

/// Raised when a configuration document (or a profile built from one) violates
/// a declared invariant. Carries the dotted field path for diagnostics,
/// e.g. "channel.scenarios.dense-urban.los_prob[3]".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace hapsim
