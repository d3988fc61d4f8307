#pragma once

#include <stdexcept>
#include <string>

namespace delivery {

// Base class for all structured errors thrown by the library. The CLI maps
// subclasses onto its documented exit codes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input files, malformed rationals, invalid instances.
struct ParseError : Error {
  using Error::Error;
};

// The requested computation has no feasible answer (t unreachable, no agent
// can reach the package, ...).
struct Infeasible : Error {
  using Error::Error;
};

// A brute-force reference solver refused to run because the instance exceeds
// its size guard. Guards are hard errors, never silent truncation.
struct GuardExceeded : Error {
  using Error::Error;
};

struct NotAPath : Error {
  using Error::Error;
};

struct NonUniformVelocities : Error {
  using Error::Error;
};

struct EpsilonOutOfRange : Error {
  using Error::Error;
};

struct UnknownAgent : Error {
  using Error::Error;
};

struct UnreachablePoint : Error {
  using Error::Error;
};

struct EmptyHandoverList : Error {
  using Error::Error;
};

struct MalformedFormula : Error {
  using Error::Error;
};

struct UnsatisfiedAssignment : Error {
  using Error::Error;
};

struct NotExtremalSchedule : Error {
  using Error::Error;
};

struct BadParameters : Error {
  using Error::Error;
};

// An envelope structure was asked to store the same (slope, intercept,
// owner) line twice.
struct DuplicateEntry : Error {
  using Error::Error;
};

}  // namespace delivery
