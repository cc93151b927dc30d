#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace profinite {

/// Every failure raised by the library carries one of these codes so callers
/// (tests, the CLI exit-code mapping) can branch without parsing messages.
enum class Errc {
  InvalidArgument,
  NotPrime,
  LevelMismatch,
  PrecisionExceeded,
  LevelTooSmall,
  OverlappingBalls,
  PointNotInManifold,
  NotLevelCompatible,
  NotBijective,
  TowerIncompatible,
  DomainMismatch,
  UnequalFibers,
  TooLarge,
  InfiniteSupport,
  BasePointMoved,
  NotHomomorphism,
  NotCauchy,
  OrderUndefined,
  ConfigInvalid,
  UnknownCommand,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace profinite
