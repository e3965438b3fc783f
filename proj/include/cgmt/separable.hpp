#pragma once

#include <memory>
#include <vector>

#include "cgmt/core.hpp"
#include "cgmt/tree_source.hpp"
#include "cgmt/truncated_tree.hpp"

namespace cgmt {

// One point of a separable presentation: a head string followed by either
// zeros or the leftmost extendible continuation through a source.
struct PathGenerator {
  BitString head;
  TreeSourcePtr through;  // null: eventually zero

  BitString prefix(int depth) const;
};

struct SeparableSequence {
  std::vector<PathGenerator> generators;
};

// Generator n follows the n-th member (length-lex) and then the leftmost
// extendible path. Stops early if the tree has fewer than `count` members
// of length <= depth.
SeparableSequence separable_from_pruned(const TreeSourcePtr& src, std::size_t count, int depth);

// Collects every length-<=depth prefix of every generator.
TruncatedTree tree_from_separable(const SeparableSequence& s, int depth);

}  // namespace cgmt
