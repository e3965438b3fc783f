#include "cgmt/separable.hpp"

#include <algorithm>

namespace cgmt {

BitString PathGenerator::prefix(int depth) const {
  if (depth <= head.size()) return head.prefix(depth);
  BitString s = head;
  while (s.size() < depth) {
    if (!through) {
      s = s.child(0);
      continue;
    }
    BitString zero = s.child(0);
    if (through->extendible(zero)) {
      s = zero;
      continue;
    }
    BitString one = s.child(1);
    if (!through->extendible(one)) {
      throw Error(ErrorCode::NotExtendible, "generator leaves the tree at '" + s.str() + "'", s.str());
    }
    s = one;
  }
  return s;
}

SeparableSequence separable_from_pruned(const TreeSourcePtr& src, std::size_t count, int depth) {
  if (!src->has_extendible()) {
    throw Error(ErrorCode::NotExtendible, "separable_from_pruned needs an extendibility callback");
  }
  SeparableSequence out;
  if (count == 0) return out;
  // Breadth-first walk visits members in length-lex order.
  std::vector<BitString> level;
  if (src->member(BitString())) level.push_back(BitString());
  for (int k = 0; k <= depth && !level.empty() && out.generators.size() < count; ++k) {
    std::vector<BitString> next;
    for (const auto& s : level) {
      if (out.generators.size() < count) {
        if (!src->extendible(s)) {
          throw Error(ErrorCode::NotExtendible, "member '" + s.str() + "' is not extendible", s.str());
        }
        out.generators.push_back(PathGenerator{s, src});
      }
      if (k < depth) {
        for (int b = 0; b < 2; ++b) {
          BitString c = s.child(b);
          if (src->member(c)) next.push_back(c);
        }
      }
    }
    level = std::move(next);
  }
  return out;
}

TruncatedTree tree_from_separable(const SeparableSequence& s, int depth) {
  std::vector<BitString> members;
  for (const auto& g : s.generators) {
    BitString p = g.prefix(depth);
    for (int k = 0; k <= depth; ++k) members.push_back(p.prefix(k));
  }
  return TruncatedTree::from_members(depth, members);
}

}  // namespace cgmt
