#include "profinite/errors.hpp"

namespace profinite {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NotPrime: return "NotPrime";
    case Errc::LevelMismatch: return "LevelMismatch";
    case Errc::PrecisionExceeded: return "PrecisionExceeded";
    case Errc::LevelTooSmall: return "LevelTooSmall";
    case Errc::OverlappingBalls: return "OverlappingBalls";
    case Errc::PointNotInManifold: return "PointNotInManifold";
    case Errc::NotLevelCompatible: return "NotLevelCompatible";
    case Errc::NotBijective: return "NotBijective";
    case Errc::TowerIncompatible: return "TowerIncompatible";
    case Errc::DomainMismatch: return "DomainMismatch";
    case Errc::UnequalFibers: return "UnequalFibers";
    case Errc::TooLarge: return "TooLarge";
    case Errc::InfiniteSupport: return "InfiniteSupport";
    case Errc::BasePointMoved: return "BasePointMoved";
    case Errc::NotHomomorphism: return "NotHomomorphism";
    case Errc::NotCauchy: return "NotCauchy";
    case Errc::OrderUndefined: return "OrderUndefined";
    case Errc::ConfigInvalid: return "ConfigInvalid";
    case Errc::UnknownCommand: return "UnknownCommand";
  }
  return "Unknown";
}

}  // namespace profinite
