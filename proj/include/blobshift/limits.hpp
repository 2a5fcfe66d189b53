#pragma once

#include <cstddef>
#include <cstdint>

namespace blobshift {

// Coordinates beyond this magnitude are rejected so that padding and
// translation arithmetic can never wrap.
inline constexpr std::int64_t kCoordLimit = std::int64_t{1} << 40;

inline constexpr std::size_t kDefaultCellCap = std::size_t{1} << 26;

// Global output cap for generated patterns and words. BLOBSHIFT_CELL_CAP
// overrides the default when set to a positive integer.
std::size_t cell_cap();

void check_cells(std::size_t cells, const char *what);
void check_coord(std::int64_t value, const char *what);

std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_add(std::int64_t a, std::int64_t b);

} // namespace blobshift
