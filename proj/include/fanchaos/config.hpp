#pragma once

#include "fanchaos/relspace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fanchaos {

/// A system read from the key = value config format, plus optional spine and cylinders.
///
///   name = robinson
///   piece = [0,1]
///   segment = f1 [0,1] power 2 0 0      # (x-0)^2 + 0
///   segment = f1 [2,3] power 1/3 2 2
///   segment = f2 [0,1] shift 2
///   segment = r [0,1] scale 1/2
///   spine = 0 2
///   cylinder = (0,1) (0,1)
///   tag = devaney4
///
/// '#' starts a comment. Rationals are written p/q, integers or decimals.
struct SystemConfig {
  std::optional<RelationSystem> system;
  std::vector<Rational> spine;
  std::vector<std::vector<Interval>> cylinders;  // open intervals
};

/// Throws ConfigError with the offending line number.
SystemConfig parse_config(const std::string& text);
SystemConfig load_config(const std::string& path);

}  // namespace fanchaos
