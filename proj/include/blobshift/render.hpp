#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "blobshift/paths.hpp"
#include "blobshift/pattern.hpp"

namespace blobshift {

enum class Format { Json, Text, Pbm, SvgPaths };

// UnsupportedFormat for unknown names.
Format parse_format(std::string_view name);
std::string_view format_name(Format f);

// Text draws zero as '.', other symbols as themselves and absent cells as
// '?', top row first, over the pattern's domain box; the output parses back
// with parse_pattern. Pbm is plain P1. Other formats are UnsupportedFormat.
std::string render(const Pattern &p, Format f);

// Height paths as SVG polylines, one per word, x to the right and height up.
std::string render_svg_paths(const std::vector<paths::MoveWord> &words, int scale = 4);

} // namespace blobshift
