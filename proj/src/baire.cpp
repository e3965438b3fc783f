#include "cgmt/construct.hpp"
#include "cgmt/truncated_tree.hpp"

namespace cgmt {

namespace {

// Extends s to `depth` by the leftmost extendible route.
BitString leftmost_from(const TreeSource& src, BitString s, int depth) {
  while (s.size() < depth) {
    BitString zero = s.child(0);
    if (src.extendible(zero)) {
      s = zero;
      continue;
    }
    BitString one = s.child(1);
    if (!src.extendible(one)) throw Error(ErrorCode::NotExtendible, "no extendible child of '" + s.str() + "'", s.str());
    s = one;
  }
  return s;
}

}  // namespace

BitString baire_intersect(const TreeSource& src, const std::vector<OpenCode>& opens, const BitString& start,
                          int depth, std::uint64_t cap) {
  if (!src.has_extendible()) throw Error(ErrorCode::NotExtendible, "baire_intersect needs extendible");
  check_depth(depth, "baire depth");
  if (!src.member(start) || !src.extendible(start)) {
    throw Error(ErrorCode::NotExtendible, "start '" + start.str() + "' is not extendible", start.str());
  }
  BitString cur = start;
  for (std::size_t stage = 0; stage < opens.size(); ++stage) {
    // Proper extensions of cur in length-lex order, through extendible nodes.
    std::vector<BitString> frontier{cur};
    std::uint64_t tried = 0;
    std::optional<BitString> hit;
    while (!hit && !frontier.empty() && frontier.front().size() < depth) {
      std::vector<BitString> next;
      for (const auto& s : frontier) {
        for (int b = 0; b < 2 && !hit; ++b) {
          BitString c = s.child(b);
          if (!src.member(c) || !src.extendible(c)) continue;
          if (++tried > cap) {
            throw Error(ErrorCode::DensityViolated, "open set " + std::to_string(stage) + " not met within " +
                                                        std::to_string(cap) + " candidates");
          }
          if (opens[stage](c)) hit = c;
          next.push_back(c);
        }
        if (hit) break;
      }
      frontier = std::move(next);
    }
    if (!hit) {
      throw Error(ErrorCode::DensityViolated,
                  "open set " + std::to_string(stage) + " not met by any extension up to depth " +
                      std::to_string(depth));
    }
    cur = *hit;
  }
  return leftmost_from(src, cur, depth);
}

DmmResult dense_monotone_min(const TreeSource& src, const MonotoneFn& f, const DensityTarget& target,
                             const DensityCallback& density, int depth, int stages) {
  if (!src.has_extendible()) throw Error(ErrorCode::NotExtendible, "dense_monotone_min needs extendible");
  check_depth(depth, "dmm depth");
  DmmResult out;
  BitString cur;
  if (!src.member(cur) || !src.extendible(cur)) throw Error(ErrorCode::NotExtendible, "empty closed set");
  for (int stage = 0; stage < stages; ++stage) {
    AlgebraicWeight bound = target.alpha + target.schedule(stage);
    std::optional<BitString> ext = density(cur, target.schedule(stage));
    auto fail = [&](const std::string& why) {
      throw Error(ErrorCode::DensityViolated, "stage " + std::to_string(stage) + ": " + why, cur.str());
    };
    if (!ext) fail("density callback found no extension");
    if (!cur.is_prefix_of(*ext)) fail("callback returned a non-extension");
    if (ext->size() > depth) fail("extension longer than the working depth");
    if (!src.member(*ext) || !src.extendible(*ext)) fail("extension leaves the pruned tree");
    AlgebraicWeight v = f.eval(*ext);
    if (compare(v, bound) != Cmp::Less) fail("extension does not drop below the bound");
    cur = *ext;
    out.steps.push_back({stage, cur.size(), v, bound});
  }
  out.path = leftmost_from(src, cur, depth);
  return out;
}

}  // namespace cgmt
