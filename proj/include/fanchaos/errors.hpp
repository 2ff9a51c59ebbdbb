#pragma once

#include <stdexcept>
#include <string>

namespace fanchaos {

// Value outside a branch domain or image.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Requested coordinate beyond the materialized itinerary.
struct DepthError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// Star concatenation of paths whose endpoints differ.
struct JoinError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotInRelation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotNeverConnect : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NoWitness : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed system description or run configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fanchaos
