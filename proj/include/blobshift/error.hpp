#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace blobshift {

enum class Errc {
  InvalidArgument,
  Parse,
  Overflow,
  SizeLimit,
  PaddingUnavailable,
  GlueConflict,
  EmptySupport,
  RadiiNotIncreasing,
  NotZeroPreserving,
  NotInvertible,
  InjectionNotDistinct,
  InjectionNotPrime,
  NoPrimeInRange,
  UnsupportedFormat,
};

std::string_view errc_name(Errc code) noexcept;

// Every domain failure raised by the library. The CLI maps these to exit
// code 2; anything else escaping is a bug.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string &what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

} // namespace blobshift
