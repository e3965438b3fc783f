#pragma once

#include <cstdint>
#include <vector>

#include "cgmt/core.hpp"
#include "cgmt/tree_source.hpp"

namespace cgmt {

// A tree truncated at depth m: one sorted list of member strings per level.
class TruncatedTree {
 public:
  TruncatedTree() = default;
  // Empty tree of the given depth.
  explicit TruncatedTree(int depth);

  // Throws NotPrefixClosed naming the first member (length-lex) whose parent
  // is missing.
  static TruncatedTree from_members(int depth, const std::vector<BitString>& members);
  // Members of length <= depth, found by walking `member` from the root.
  static TruncatedTree from_source(const TreeSource& src, int depth);

  int depth() const { return depth_; }
  bool empty() const { return levels_.empty() || levels_[0].empty(); }
  bool contains(const BitString& s) const;
  const std::vector<std::uint64_t>& level(int k) const { return levels_[static_cast<std::size_t>(k)]; }
  std::size_t size() const;
  std::vector<BitString> members() const;

  // Convention for truncations: extendible means "has a member extension
  // at the truncation depth".
  bool has_depth_extension(const BitString& s) const;
  Count count_extensions(const BitString& s, int m) const;

  TreeSource as_source() const;

  friend bool operator==(const TruncatedTree&, const TruncatedTree&) = default;

 private:
  int depth_ = 0;
  std::vector<std::vector<std::uint64_t>> levels_;
};

// Keeps s iff some length-m extension of s is a member.
TruncatedTree prune_truncation(const TruncatedTree& t);

// Follows 0 when extendible, else 1. Needs the extendible callback.
BitString leftmost_path(const TreeSource& src, int depth);

}  // namespace cgmt
