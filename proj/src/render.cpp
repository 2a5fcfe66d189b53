#include "blobshift/render.hpp"

#include <algorithm>
#include <sstream>

#include "blobshift/error.hpp"
#include "blobshift/pattern_io.hpp"

namespace blobshift {

Format parse_format(std::string_view name) {
  if (name == "json")
    return Format::Json;
  if (name == "text")
    return Format::Text;
  if (name == "pbm")
    return Format::Pbm;
  if (name == "svg-paths")
    return Format::SvgPaths;
  throw Error(Errc::UnsupportedFormat, "unknown format '" + std::string(name) + "'");
}

std::string_view format_name(Format f) {
  switch (f) {
  case Format::Json:
    return "json";
  case Format::Text:
    return "text";
  case Format::Pbm:
    return "pbm";
  case Format::SvgPaths:
    return "svg-paths";
  }
  return "?";
}

std::string render(const Pattern &p, Format f) {
  switch (f) {
  case Format::Text:
    return to_text(p, true);
  case Format::Pbm:
    return to_pbm(p);
  default:
    throw Error(Errc::UnsupportedFormat,
                "patterns render as text or pbm, not " + std::string(format_name(f)));
  }
}

std::string render_svg_paths(const std::vector<paths::MoveWord> &words, int scale) {
  if (scale < 1)
    throw Error(Errc::InvalidArgument, "scale must be positive");
  std::int64_t width = 1, lo = 0, hi = 0;
  std::vector<std::vector<std::int64_t>> heights;
  for (const auto &w : words) {
    heights.push_back(paths::integrate(w).heights);
    width = std::max<std::int64_t>(width, static_cast<std::int64_t>(w.size()));
    for (auto h : heights.back()) {
      lo = std::min(lo, h);
      hi = std::max(hi, h);
    }
  }
  const std::int64_t pad = 2;
  const std::int64_t w = (width + 2 * pad) * scale;
  const std::int64_t h = (hi - lo + 2 * pad) * scale;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
  const std::int64_t base_y = (hi + pad) * scale;
  out << "<line x1=\"0\" y1=\"" << base_y << "\" x2=\"" << w << "\" y2=\"" << base_y
      << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
  for (const auto &hs : heights) {
    out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < hs.size(); ++i) {
      if (i)
        out << ' ';
      out << (static_cast<std::int64_t>(i) + pad) * scale << ',' << (hi + pad - hs[i]) * scale;
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

} // namespace blobshift
