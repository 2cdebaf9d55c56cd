#pragma once

#include <stdexcept>
#include <string>

namespace elgame {

enum class Errc {
  NegativeUtility,
  SocialUtilityExceedsBeta,
  UnsortedCandidates,
  EmptyParty,
  TooFewParties,
  UtilityVectorSize,
  IndexOutOfRange,
  InvalidArgument,
  ProfileSpaceTooLarge,
  NotEgoistic,
  NotStronglyEgoistic,
  MemberIsSingleton,
  CoalitionSpaceTooLarge,
  InvalidCoalitions,
  TooFewVariables,
  ParseError,
  InfeasibleConfig,
  NonMonotoneWp,
};

const char* errc_name(Errc code) noexcept;

/// Error type thrown by every operation in the library. `code()` is stable
/// and machine-readable; `what()` carries a human-readable explanation.
class GameError : public std::runtime_error {
 public:
  GameError(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }
  const char* code_name() const noexcept { return errc_name(code_); }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw GameError(code, message);
}

}  // namespace elgame
