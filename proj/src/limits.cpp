#include "blobshift/limits.hpp"

#include <cstdlib>
#include <string>

#include "blobshift/error.hpp"

namespace blobshift {

std::size_t cell_cap() {
  if (const char *env = std::getenv("BLOBSHIFT_CELL_CAP")) {
    char *end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0)
      return static_cast<std::size_t>(v);
  }
  return kDefaultCellCap;
}

void check_cells(std::size_t cells, const char *what) {
  if (cells > cell_cap())
    throw Error(Errc::SizeLimit, std::string(what) + " needs " +
                                     std::to_string(cells) + " cells, cap is " +
                                     std::to_string(cell_cap()));
}

void check_coord(std::int64_t value, const char *what) {
  if (value > kCoordLimit || value < -kCoordLimit)
    throw Error(Errc::Overflow, std::string(what) + " coordinate " +
                                    std::to_string(value) + " out of range");
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Error(Errc::Overflow, "integer product overflows 64 bits");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw Error(Errc::Overflow, "integer sum overflows 64 bits");
  return r;
}

} // namespace blobshift
