#include "blobshift/blobfractal.hpp"

#include <algorithm>
#include <unordered_map>

#include "blobshift/error.hpp"
#include "blobshift/pathcover.hpp"

namespace blobshift::fractal {

BlobHierarchy build_hierarchy(const Pattern &p, const std::vector<std::int64_t> &radii) {
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] < 0)
      throw Error(Errc::InvalidArgument, "radii must be nonnegative");
    if (i > 0 && radii[i] <= radii[i - 1])
      throw Error(Errc::RadiiNotIncreasing, "radius " + std::to_string(radii[i]) +
                                                " does not exceed " + std::to_string(radii[i - 1]));
  }
  BlobHierarchy h;
  h.source = p;
  for (auto r : radii) {
    HierarchyLevel level;
    level.radius = r;
    std::unordered_multimap<std::size_t, std::size_t> index;
    for (auto &occ : blob_occurrences(p, r)) {
      if (occ.truncated) {
        level.truncated_anchors.push_back(occ.anchor);
        continue;
      }
      auto hash = blob_hash(occ.blob);
      auto [lo, hi] = index.equal_range(hash);
      auto found = std::find_if(lo, hi, [&](const auto &kv) {
        return level.blobs[kv.second].blob == occ.blob;
      });
      if (found != hi) {
        level.blobs[found->second].anchors.push_back(occ.anchor);
      } else {
        index.emplace(hash, level.blobs.size());
        level.blobs.push_back({std::move(occ.blob), {occ.anchor}});
      }
    }
    h.levels.push_back(std::move(level));
  }
  return h;
}

// ---------------------------------------------------------------------------
// Axioms

namespace {

AxiomCheck fail(Cell at, std::string detail) { return {false, at, std::move(detail)}; }

std::string cell_text(Cell c) {
  return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

LevelReport check_pair(const BlobHierarchy &h, std::size_t lower) {
  const auto &lo = h.levels[lower];
  const auto &hi = h.levels[lower + 1];
  const int dim = h.source.dim();
  LevelReport rep;
  rep.lower = lower;
  if (hi.blobs.empty()) {
    Cell at = hi.truncated_anchors.empty() ? Cell{} : hi.truncated_anchors.front();
    std::string why = "no complete blob at radius " + std::to_string(hi.radius);
    rep.glue = rep.contains = rep.splits = fail(at, why);
    return rep;
  }

  for (const auto &big : hi.blobs) {
    const Cell anchor = big.anchors.front();
    const Pattern &bp = big.blob.pattern;
    auto support = bp.support();
    auto comps = connected_components(support, lo.radius, dim);

    std::vector<Blob> parts;
    for (const auto &comp : comps)
      parts.push_back(make_blob(bp, comp, lo.radius));

    if (rep.glue.passed) {
      Pattern glued(dim, bp.alphabet());
      for (std::size_t k = 0; k < parts.size() && rep.glue.passed; ++k) {
        bool known = std::any_of(lo.blobs.begin(), lo.blobs.end(),
                                 [&](const LevelBlob &b) { return b.blob == parts[k]; });
        if (!known) {
          rep.glue = fail(anchor + comps[k].front(),
                          "sub-blob at " + cell_text(anchor + comps[k].front()) +
                              " is not a level blob");
          break;
        }
        try {
          glued = zero_glue(glued, parts[k].pattern.translated(comps[k].front()));
        } catch (const Error &e) {
          rep.glue = fail(anchor + comps[k].front(), e.what());
        }
      }
      if (rep.glue.passed) {
        if (glued.support() != support) {
          rep.glue = fail(anchor, "glued supports differ from the blob support");
        } else {
          for (Cell c : glued.domain())
            if (bp.at(c) != glued.at(c)) {
              rep.glue = fail(anchor + c, "glued value differs at " + cell_text(anchor + c));
              break;
            }
        }
      }
    }

    if (rep.contains.passed) {
      for (std::size_t b = 0; b < lo.blobs.size(); ++b) {
        bool present = std::any_of(parts.begin(), parts.end(),
                                   [&](const Blob &part) { return part == lo.blobs[b].blob; });
        if (!present) {
          rep.contains = fail(anchor, "blob at " + cell_text(anchor) + " lacks level blob #" +
                                          std::to_string(b));
          break;
        }
      }
    }

    if (rep.splits.passed && comps.size() < 2)
      rep.splits = fail(anchor, "blob at " + cell_text(anchor) + " has a single sub-blob");
  }
  return rep;
}

} // namespace

bool AxiomReport::passed() const {
  return std::all_of(pairs.begin(), pairs.end(), [](const LevelReport &r) { return r.passed(); });
}

std::size_t AxiomReport::verified_levels() const {
  std::size_t n = 1;
  for (const auto &r : pairs) {
    if (!r.passed())
      break;
    ++n;
  }
  return n;
}

AxiomReport verify_axioms(const BlobHierarchy &h) {
  if (h.levels.size() < 2)
    throw Error(Errc::InvalidArgument, "axiom checks need at least two levels");
  AxiomReport out;
  out.pairs.resize(h.levels.size() - 1);
  const auto n = static_cast<std::int64_t>(out.pairs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i)
    out.pairs[static_cast<std::size_t>(i)] = check_pair(h, static_cast<std::size_t>(i));
  return out;
}

AxiomReport serial::verify_axioms(const BlobHierarchy &h) {
  if (h.levels.size() < 2)
    throw Error(Errc::InvalidArgument, "axiom checks need at least two levels");
  AxiomReport out;
  for (std::size_t i = 0; i + 1 < h.levels.size(); ++i)
    out.pairs.push_back(check_pair(h, i));
  return out;
}

// ---------------------------------------------------------------------------
// Classification

std::string_view fractal_tag_name(FractalTag t) {
  switch (t) {
  case FractalTag::FinitePointCandidate:
    return "FinitePointCandidate";
  case FractalTag::UnboundedComponent:
    return "UnboundedComponent";
  case FractalTag::BlobFractalCandidate:
    return "BlobFractalCandidate";
  }
  return "?";
}

FractalVerdict classify(const Pattern &p, const std::vector<std::int64_t> &radii,
                        std::int64_t component_threshold) {
  if (component_threshold < 1)
    throw Error(Errc::InvalidArgument, "component threshold must be positive");
  if (radii.empty())
    throw Error(Errc::InvalidArgument, "radius schedule is empty");
  auto h = build_hierarchy(p, radii);
  FractalVerdict v;

  if (p.support_size() > 0) {
    for (auto r : radii) {
      auto g = cover::geodesic_witness(p, r);
      auto len = static_cast<std::int64_t>(g.path.size());
      if (len >= component_threshold) {
        v.tag = FractalTag::UnboundedComponent;
        v.radius = r;
        v.witness_length = len;
        if (h.levels.size() >= 2)
          v.report = verify_axioms(h);
        return v;
      }
    }
  }

  if (h.levels.size() >= 2)
    v.report = verify_axioms(h);

  auto single = [](const HierarchyLevel &l) {
    return l.blobs.size() == 1 && l.truncated_anchors.empty() && l.blobs[0].count() == 1;
  };
  const auto n = h.levels.size();
  if (n >= 2 && single(h.levels[n - 1]) && single(h.levels[n - 2]) &&
      h.levels[n - 1].blobs[0].blob.pattern.support() ==
          h.levels[n - 2].blobs[0].blob.pattern.support()) {
    v.tag = FractalTag::FinitePointCandidate;
    return v;
  }
  v.tag = FractalTag::BlobFractalCandidate;
  v.verified_levels = h.levels.size() >= 2 ? v.report.verified_levels() : 1;
  return v;
}

std::vector<std::int64_t> auto_radii(const Pattern &p, std::int64_t start) {
  if (start < 1)
    throw Error(Errc::InvalidArgument, "starting radius must be positive");
  auto support = p.support();
  std::vector<std::int64_t> out;
  if (support.empty())
    return {start};
  const Box &b = p.box();
  const std::int64_t extent = b.width + b.height;
  std::size_t last = 0;
  for (std::int64_t r = start;; r *= 2) {
    auto count = connected_components(support, r, p.dim()).size();
    if (out.empty() || count != last) {
      out.push_back(r);
      last = count;
    }
    if (count == 1 || r > extent)
      break;
  }
  return out;
}

} // namespace blobshift::fractal
