#pragma once

#include <string>
#include <string_view>

#include "blobshift/pattern.hpp"

namespace blobshift {

// Text format:
//   dims W            (1D)   |   dims W H   (2D)
//   alphabet <zero><others...>
//   origin X [Y]      (optional, only when the box is not at the origin)
//   H rows, top row first; '.' reads as zero, '?' marks cells outside the
//   domain.
// `dot_zero` writes the zero symbol as '.'.
std::string to_text(const Pattern &p, bool dot_zero = false);
Pattern parse_pattern(std::string_view text);

// Plain PBM (P1), nonzero cells as 1, absent cells as 0.
std::string to_pbm(const Pattern &p);

std::string read_file(const std::string &path);

} // namespace blobshift
