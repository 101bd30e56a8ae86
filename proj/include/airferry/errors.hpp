#pragma once
// Error taxonomy shared by the planning toolkit.  Every failure mode that a
// caller can act on gets its own exception type; all of them derive from
// std::runtime_error so tools can catch the base and map to exit codes.

#include <stdexcept>
#include <string>

namespace airferry {

// Ground feasible set is not connected (or a ground path query could not be
// satisfied).  Signals bad world input rather than a planner fault.
struct DisconnectedGroundError : std::runtime_error {
  explicit DisconnectedGroundError(const std::string& what)
      : std::runtime_error(what) {}
};

// A monitoring point cannot be served by any single-point tour launched from
// its own ground projection, so no feasible plan exists for the instance.
struct InfeasibleInstanceError : std::runtime_error {
  explicit InfeasibleInstanceError(const std::string& what)
      : std::runtime_error(what) {}
};

// Random world generation could not satisfy its constraints within the
// attempt budget.
struct GenerationFailedError : std::runtime_error {
  explicit GenerationFailedError(const std::string& what)
      : std::runtime_error(what) {}
};

// No in-budget replacement release/collect pair exists for a blocked tour.
struct AdjustmentExhaustedError : std::runtime_error {
  explicit AdjustmentExhaustedError(const std::string& what)
      : std::runtime_error(what) {}
};

// Two plans that were expected to share visit structure do not.
struct StructureMismatchError : std::runtime_error {
  explicit StructureMismatchError(const std::string& what)
      : std::runtime_error(what) {}
};

// An exhaustive reference computation was asked to run beyond its size caps.
struct TooLargeError : std::runtime_error {
  explicit TooLargeError(const std::string& what)
      : std::runtime_error(what) {}
};

// A scenario or plan document failed schema or content checks.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace airferry
