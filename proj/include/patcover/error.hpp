#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace patcover {

enum class ErrorCode {
  InvalidArgument,
  ZeroScale,
  RingMismatch,
  DuplicateElements,
  InvalidFamily,
  InvalidCover,
  Infeasible,
  BudgetExhausted,
  TooLarge,
  HypothesisFails,
  OutOfRange,
  SeedExhausted,
  InvalidResidue,
  ArityMismatch,
  EpsilonViolated,
  NoPrimeFound,
  ResolutionExceeded,
  MissingWitness,
  NoHarmonicFamily,
  RegistryMiss,
  DegeneratePolytope,
  DegenerateScale,
  EmptyTable,
  ConfigInvalid,
  CacheCorrupt,
};

std::string_view error_name(ErrorCode code);

// Process exit status for a given error (see README for the table).
int exit_status(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace patcover
