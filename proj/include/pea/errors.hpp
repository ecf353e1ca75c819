#pragma once

#include <stdexcept>
#include <string>

namespace pea {

enum class Err {
  InvalidSize,
  TorusTooSmall,
  IndexOutOfRange,
  NotConnected,
  LengthMismatch,
  UnknownFitness,
  ZeroSuccessProbability,
  NonConvergent,
  UnsupportedKind,
  DomainError,
  StateSpaceTooLarge,
  SingularSystem,
  MissingBaseline,
  BadConfig,
};

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

}  // namespace pea
