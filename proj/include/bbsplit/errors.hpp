#pragma once

#include <stdexcept>
#include <string>

namespace bbsplit {

// Base class for every error raised by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// An edge whose source and destination coincide.
class SelfCycleError : public Error {
public:
  using Error::Error;
};

// A node, edge endpoint, or cluster id that does not exist.
class DanglingReferenceError : public Error {
public:
  using Error::Error;
};

// A source or sink node without a fixed cluster assignment.
class UnseededTerminalError : public Error {
public:
  using Error::Error;
};

// Path enumeration exceeded the configured cap.
class PathExplosionError : public Error {
public:
  using Error::Error;
};

// A node that cannot reach any seed through the connection graph.
class UnreachableNodeError : public Error {
public:
  using Error::Error;
};

// Attempt to mutate a seed node.
class SeedMutationError : public Error {
public:
  using Error::Error;
};

// A normalization constant came out zero.
class DegenerateNormError : public Error {
public:
  using Error::Error;
};

// Exhaustive enumeration would exceed the configured cap.
class SearchSpaceTooLargeError : public Error {
public:
  using Error::Error;
};

// Malformed scenario document.
class ScenarioParseError : public Error {
public:
  using Error::Error;
};

// Invariant violation in caller-supplied data (bad weights, bad scheme, ...).
class ValidationError : public Error {
public:
  using Error::Error;
};

}  // namespace bbsplit
