#include "cgmt/truncated_tree.hpp"

#include <algorithm>

namespace cgmt {

TruncatedTree::TruncatedTree(int depth) : depth_(depth) {
  check_depth(depth, "truncation depth");
  levels_.resize(static_cast<std::size_t>(depth + 1));
}

TruncatedTree TruncatedTree::from_members(int depth, const std::vector<BitString>& members) {
  TruncatedTree t(depth);
  std::vector<BitString> sorted = members;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (const auto& s : sorted) {
    if (s.size() > depth) {
      throw Error(ErrorCode::InvalidArgument, "member '" + s.str() + "' deeper than the tree depth",
                  s.str());
    }
    if (!s.empty() && !t.contains(s.parent())) {
      throw Error(ErrorCode::NotPrefixClosed, "'" + s.str() + "' is listed without its parent",
                  s.str());
    }
    t.levels_[static_cast<std::size_t>(s.size())].push_back(s.bits());
  }
  return t;
}

TruncatedTree TruncatedTree::from_source(const TreeSource& src, int depth) {
  TruncatedTree t(depth);
  if (!src.member(BitString())) return t;
  t.levels_[0].push_back(0);
  for (int k = 0; k < depth; ++k) {
    auto& next = t.levels_[static_cast<std::size_t>(k + 1)];
    for (std::uint64_t v : t.levels_[static_cast<std::size_t>(k)]) {
      BitString s(v, k);
      for (int b = 0; b < 2; ++b) {
        BitString c = s.child(b);
        if (src.member(c)) next.push_back(c.bits());
      }
    }
  }
  return t;
}

bool TruncatedTree::contains(const BitString& s) const {
  if (s.size() > depth_ || levels_.empty()) return false;
  const auto& lv = levels_[static_cast<std::size_t>(s.size())];
  return std::binary_search(lv.begin(), lv.end(), s.bits());
}

std::size_t TruncatedTree::size() const {
  std::size_t n = 0;
  for (const auto& lv : levels_) n += lv.size();
  return n;
}

std::vector<BitString> TruncatedTree::members() const {
  std::vector<BitString> out;
  for (int k = 0; k <= depth_ && !levels_.empty(); ++k) {
    for (std::uint64_t v : level(k)) out.emplace_back(v, k);
  }
  return out;
}

Count TruncatedTree::count_extensions(const BitString& s, int m) const {
  if (m > depth_ || m < s.size()) return 0;
  const auto& lv = level(m);
  int shift = m - s.size();
  std::uint64_t lo = shift >= 64 ? 0 : (s.bits() << shift);
  std::uint64_t hi = shift >= 64 ? ~0ull : lo + ((std::uint64_t{1} << shift) - 1);
  auto a = std::lower_bound(lv.begin(), lv.end(), lo);
  auto b = std::upper_bound(lv.begin(), lv.end(), hi);
  return static_cast<Count>(b - a);
}

bool TruncatedTree::has_depth_extension(const BitString& s) const {
  return count_extensions(s, depth_) > 0;
}

TreeSource TruncatedTree::as_source() const {
  auto self = std::make_shared<const TruncatedTree>(*this);
  TreeSource t;
  t.name = "explicit";
  t.member = [self](const BitString& s) { return self->contains(s); };
  t.extendible = [self](const BitString& s) { return self->has_depth_extension(s); };
  t.level_count = [self](const BitString& s, int m) { return self->count_extensions(s, m); };
  return t;
}

TruncatedTree prune_truncation(const TruncatedTree& t) {
  TruncatedTree out(t.depth());
  std::vector<BitString> keep;
  int m = t.depth();
  std::vector<std::uint64_t> cur = t.empty() ? std::vector<std::uint64_t>{} : t.level(m);
  std::vector<std::vector<std::uint64_t>> levels(static_cast<std::size_t>(m + 1));
  for (int k = m; k >= 0; --k) {
    levels[static_cast<std::size_t>(k)] = cur;
    std::vector<std::uint64_t> up;
    for (std::uint64_t v : cur) {
      if (up.empty() || up.back() != (v >> 1)) up.push_back(v >> 1);
    }
    cur = std::move(up);
  }
  for (int k = 0; k <= m; ++k) {
    for (std::uint64_t v : levels[static_cast<std::size_t>(k)]) keep.emplace_back(v, k);
  }
  return TruncatedTree::from_members(m, keep);
}

BitString leftmost_path(const TreeSource& src, int depth) {
  if (!src.has_extendible()) {
    throw Error(ErrorCode::NotExtendible, "leftmost_path needs an extendibility callback");
  }
  if (depth < 0 || depth > BitString::kMaxLen) check_depth(depth, "path depth");
  BitString s;
  if (!src.extendible(s)) throw Error(ErrorCode::NotExtendible, "the root is not extendible", "");
  while (s.size() < depth) {
    BitString zero = s.child(0);
    if (src.extendible(zero)) {
      s = zero;
      continue;
    }
    BitString one = s.child(1);
    if (!src.extendible(one)) {
      throw Error(ErrorCode::NotExtendible, "no extendible child of '" + s.str() + "'", s.str());
    }
    s = one;
  }
  return s;
}

}  // namespace cgmt
