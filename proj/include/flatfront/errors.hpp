#pragma once

#include <stdexcept>
#include <string>

namespace flatfront {

enum class Errc {
  SignatureMismatch,
  NotCollinear,
  DegenerateConfiguration,
  NotHarmonic,
  DegenerateParameter,
  PotentialOverflow,
  TransportDiverged,
  ContactSpanDegenerate,
  PointSphereEncountered,
  ConfigParse,
  Io,
};

/// Library error carrying a machine-checkable code plus a human message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace flatfront
