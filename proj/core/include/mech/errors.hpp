#pragma once

#include <stdexcept>
#include <string>

namespace mech {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  using Error::Error;
};

// Instance validation: some agent is strictly costlier and strictly slower
// than another, which the market model rules out.
struct MonotonicityViolation : Error {
  using Error::Error;
};

// Instance validation: no agent is affordable under the unit reward.
struct Infeasible : Error {
  using Error::Error;
};

struct UnknownWitness : Error {
  using Error::Error;
};

// Brute-force routines refuse instances beyond their subset-enumeration cap.
struct InstanceTooLarge : Error {
  using Error::Error;
};

struct NoFeasibleSet : Error {
  using Error::Error;
};

struct KOutOfRange : Error {
  using Error::Error;
};

struct SchemeInvalid : Error {
  using Error::Error;
};

struct SchemeMismatch : Error {
  using Error::Error;
};

struct NoFeasibleK : Error {
  using Error::Error;
};

struct KTooSmall : Error {
  using Error::Error;
};

struct UnknownDistribution : Error {
  using Error::Error;
};

struct SolverError : Error {
  using Error::Error;
};

// A proven per-row guarantee failed during an experiment run. Carries the
// offending instance in the on-disk text format so the run can be replayed.
struct GuaranteeViolation : Error {
  GuaranteeViolation(const std::string& what, std::string instance_text)
      : Error(what), instance_text(std::move(instance_text)) {}
  std::string instance_text;
};

}  // namespace mech
