#include "cgmt/marking.hpp"

#include <algorithm>

namespace cgmt {

Marking::Marking(int depth) : depth_(depth) {
  if (depth >= 0) check_depth(depth, "marking depth");
  levels_.resize(static_cast<std::size_t>(depth + 1));
}

Marking Marking::from_prefix(const CodePrefix& p) {
  Marking m(p.complete_block());
  for (int k = 0; k <= m.depth_; ++k) {
    std::uint64_t base = block_length(k - 1);
    std::uint64_t width = std::uint64_t{1} << k;
    for (std::uint64_t v = 0; v < width; ++v) {
      if (p[base + v]) m.level(k).push_back(v);
    }
  }
  return m;
}

Marking Marking::from_tree(const TruncatedTree& t) {
  Marking m(t.depth());
  if (t.empty()) return m;
  for (int k = 0; k <= t.depth(); ++k) m.level(k) = t.level(k);
  return m;
}

Marking Marking::from_strings(int depth, const std::vector<BitString>& marked) {
  Marking m(depth);
  for (const auto& s : marked) {
    if (s.size() <= depth) m.level(s.size()).push_back(s.bits());
  }
  for (auto& lv : m.levels_) {
    std::sort(lv.begin(), lv.end());
    lv.erase(std::unique(lv.begin(), lv.end()), lv.end());
  }
  return m;
}

CodePrefix Marking::to_prefix() const {
  std::vector<std::uint8_t> e(static_cast<std::size_t>(block_length(depth_)), 0);
  for (int k = 0; k <= depth_; ++k) {
    std::uint64_t base = block_length(k - 1);
    for (std::uint64_t v : level(k)) e[base + v] = 1;
  }
  return CodePrefix(std::move(e));
}

TruncatedTree Marking::to_tree() const {
  std::vector<BitString> ms;
  for (int k = 0; k <= depth_; ++k)
    for (std::uint64_t v : level(k)) ms.emplace_back(v, k);
  return TruncatedTree::from_members(std::max(depth_, 0), ms);
}

bool Marking::marks(const BitString& s) const {
  if (s.size() > depth_) return false;
  const auto& lv = level(s.size());
  return std::binary_search(lv.begin(), lv.end(), s.bits());
}

std::size_t Marking::size() const {
  std::size_t n = 0;
  for (const auto& lv : levels_) n += lv.size();
  return n;
}

Marking Marking::truncated(int k) const {
  Marking m(std::min(k, depth_));
  for (int j = 0; j <= m.depth_; ++j) m.level(j) = level(j);
  m.restriction_ = restriction_;
  return m;
}

SubtreeCodePrefix validate_code(const CodePrefix& nu, const TreeSource& ambient, bool pruned) {
  auto fail = [](ErrorCode c, const BitString& s, const std::string& what) {
    throw Error(c, what + " at '" + s.str() + "'", s.str());
  };
  const std::size_t n = nu.size();
  int level_marks = 0;
  for (std::size_t i = 0; i < n; ++i) {
    BitString s = string_at(i);
    if (nu[i]) {
      ++level_marks;
      if (!s.empty() && !nu.marks(s.parent())) fail(ErrorCode::Condition1, s, "marked string without marked parent");
      if (!ambient.member(s)) fail(ErrorCode::Condition2, s, "marked string outside the ambient tree");
    }
    // The child condition for a parent is decidable once its second child is.
    if (pruned && !s.empty() && s[s.size() - 1] == 1) {
      BitString p = s.parent();
      if (nu.marks(p) && !nu.marks(p.child(0)) && !nu.marks(s)) {
        fail(ErrorCode::PrunedViolation, p, "marked string with no marked child");
      }
    }
    bool level_end = (i + 2) == (std::uint64_t{2} << s.size());
    if (level_end) {
      if (level_marks == 0) {
        fail(ErrorCode::Condition3, s, "no marked string of length " + std::to_string(s.size()));
      }
      level_marks = 0;
    }
  }
  SubtreeCodePrefix out;
  out.prefix = nu;
  out.validated_block = nu.complete_block();
  out.pruned = pruned;
  out.marking = Marking::from_prefix(nu);
  return out;
}

Marking restrict(const Marking& z, const BitString& tau) {
  Marking out(z.depth());
  out.set_restriction(true);
  for (int k = 0; k <= z.depth(); ++k) {
    for (std::uint64_t v : z.level(k)) {
      if (BitString(v, k).compatible(tau)) out.level(k).push_back(v);
    }
  }
  return out;
}

}  // namespace cgmt
