#pragma once

#include <cstdint>
#include <vector>

#include "cgmt/core.hpp"
#include "cgmt/tree_source.hpp"
#include "cgmt/truncated_tree.hpp"

namespace cgmt {

// The marked strings of a code prefix whose blocks 0..depth are complete,
// one sorted list per level. depth == -1 is the empty prefix.
class Marking {
 public:
  Marking() = default;
  explicit Marking(int depth);

  // Keeps the complete blocks of p; a trailing partial level is dropped.
  static Marking from_prefix(const CodePrefix& p);
  static Marking from_tree(const TruncatedTree& t);
  static Marking from_strings(int depth, const std::vector<BitString>& marked);

  CodePrefix to_prefix() const;
  TruncatedTree to_tree() const;

  int depth() const { return depth_; }
  const std::vector<std::uint64_t>& level(int k) const { return levels_[static_cast<std::size_t>(k)]; }
  std::vector<std::uint64_t>& level(int k) { return levels_[static_cast<std::size_t>(k)]; }
  bool marks(const BitString& s) const;
  std::size_t size() const;

  // Set on Z_tau style markings, which may leave a level empty.
  bool restriction() const { return restriction_; }
  void set_restriction(bool r) { restriction_ = r; }

  // The same marking cut back to blocks 0..k.
  Marking truncated(int k) const;

  friend bool operator==(const Marking& a, const Marking& b) {
    return a.depth_ == b.depth_ && a.levels_ == b.levels_;
  }

 private:
  int depth_ = -1;
  std::vector<std::vector<std::uint64_t>> levels_;
  bool restriction_ = false;
};

struct SubtreeCodePrefix {
  CodePrefix prefix;
  int validated_block = -1;
  bool pruned = false;
  Marking marking;
};

// Checks the subtree-code conditions: (1) marks are prefix-closed, (2) marks
// are ambient members, (3) each complete level has a mark; with `pruned`, a
// marked string whose children are both defined has a marked child. The
// first violation in index order is thrown with the offending string.
SubtreeCodePrefix validate_code(const CodePrefix& nu, const TreeSource& ambient, bool pruned);

// Z_tau: keeps the marks compatible with tau.
Marking restrict(const Marking& z, const BitString& tau);

}  // namespace cgmt
