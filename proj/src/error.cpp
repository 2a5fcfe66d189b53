#include "blobshift/error.hpp"

namespace blobshift {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
  case Errc::InvalidArgument: return "InvalidArgument";
  case Errc::Parse: return "ParseError";
  case Errc::Overflow: return "Overflow";
  case Errc::SizeLimit: return "SizeLimit";
  case Errc::PaddingUnavailable: return "PaddingUnavailable";
  case Errc::GlueConflict: return "GlueConflict";
  case Errc::EmptySupport: return "EmptySupport";
  case Errc::RadiiNotIncreasing: return "RadiiNotIncreasing";
  case Errc::NotZeroPreserving: return "NotZeroPreserving";
  case Errc::NotInvertible: return "NotInvertible";
  case Errc::InjectionNotDistinct: return "InjectionNotDistinct";
  case Errc::InjectionNotPrime: return "InjectionNotPrime";
  case Errc::NoPrimeInRange: return "NoPrimeInRange";
  case Errc::UnsupportedFormat: return "UnsupportedFormat";
  }
  return "Unknown";
}

} // namespace blobshift
