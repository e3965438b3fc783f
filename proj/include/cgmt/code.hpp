#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <tuple>
#include <string>
#include <unordered_map>
#include <vector>

#include "cgmt/core.hpp"
#include "cgmt/marking.hpp"
#include "cgmt/tree_source.hpp"

namespace cgmt {

// Immutable trie node of a subtree code. A null pointer is an unmarked
// string. A lazy node marks its position and every ambient extension of it.
//
// Sharing rule: an explicit node may sit at several positions only when
// those positions have the same length and the same ambient key, so that
// (node, depth) determines the marked subtree.
struct CodeNode {
  std::shared_ptr<const CodeNode> kid[2];
  bool lazy = false;
};
using NodePtr = std::shared_ptr<const CodeNode>;

NodePtr lazy_node();
NodePtr make_node(NodePtr k0, NodePtr k1);

// The closed set codes live in: members of a source, or with `pruned` the
// members that are also extendible.
class Ambient {
 public:
  struct Key {
    std::uint64_t a = 0;
    int len = 0;
    bool by_state = false;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<std::uint64_t>()(k.a * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(k.len) * 2 +
                                        (k.by_state ? 1 : 0));
    }
  };

  Ambient(TreeSourcePtr src, bool pruned, std::uint64_t budget = 50'000'000);

  const TreeSource& source() const { return *src_; }
  const TreeSourcePtr& source_ptr() const { return src_; }
  bool pruned() const { return pruned_; }
  bool has_state() const { return static_cast<bool>(src_->state); }

  bool member(const BitString& s) const;
  // (state, length) when the source offers states, else the string itself.
  Key key(const BitString& s) const;
  // Ambient strings of length m extending s, s assumed in the ambient.
  Count count(const BitString& s, int m) const;

  // Counts visits made without a state key; throws BudgetExceeded.
  void charge() const;

 private:
  TreeSourcePtr src_;
  bool pruned_;
  std::uint64_t budget_;
  mutable std::uint64_t spent_ = 0;
  mutable std::map<std::tuple<std::uint64_t, int, bool, int>, Count> counts_;
};
using AmbientPtr = std::shared_ptr<const Ambient>;

AmbientPtr make_ambient(const TreeSource& src, bool pruned);

// A subtree code known through blocks 0..depth.
class Code {
 public:
  Code() = default;
  Code(AmbientPtr amb, NodePtr root, int depth);

  // The code of the ambient itself.
  static Code of_ambient(AmbientPtr amb, int depth);
  static Code from_marking(AmbientPtr amb, const Marking& m);

  const AmbientPtr& ambient() const { return amb_; }
  const NodePtr& root() const { return root_; }
  int depth() const { return depth_; }

  // Child b of `node` sitting at `pos`; expands lazy nodes.
  static NodePtr child(const Ambient& amb, const NodePtr& node, const BitString& pos, int b);
  NodePtr child(const NodePtr& node, const BitString& pos, int b) const { return child(*amb_, node, pos, b); }
  NodePtr node_at(const BitString& s) const;
  bool marks(const BitString& s) const { return s.size() <= depth_ && node_at(s) != nullptr; }

  Count level_count(int k) const;
  // Marked strings of length k in lex order; throws BudgetExceeded past `limit`.
  std::vector<BitString> level(int k, std::size_t limit = 1u << 22) const;
  Marking materialize(int k) const;

  // Z_tau.
  Code restricted(const BitString& tau) const;
  Code with_depth(int depth) const { return Code(amb_, root_, depth); }

  // Shared-node listing: each entry is (kid0, kid1) with -1 for unmarked and
  // -2 for lazy; the last entry is the root.
  struct Dag {
    std::vector<std::pair<long, long>> nodes;
    long root = -1;
  };
  Dag to_dag() const;
  static Code from_dag(AmbientPtr amb, const Dag& dag, int depth);

  // Every marked string lies in the ambient and has a marked parent.
  bool is_subtree_of_ambient(std::size_t limit = 1u << 22) const;

 private:
  AmbientPtr amb_;
  NodePtr root_;
  int depth_ = 0;
};

// Marked strings of `node` at `pos` lying exactly `m - |pos|` levels above.
class LevelCounter {
 public:
  LevelCounter(const Ambient& amb, int m) : amb_(amb), m_(m) {}
  Count count(const NodePtr& node, const BitString& pos);

 private:
  struct PK {
    const CodeNode* p;
    int d;
    friend bool operator==(const PK&, const PK&) = default;
  };
  struct PKHash {
    std::size_t operator()(const PK& k) const {
      return std::hash<const void*>()(k.p) ^ (static_cast<std::size_t>(k.d) * 0x9E3779B97F4A7C15ull);
    }
  };
  const Ambient& amb_;
  int m_;
  std::unordered_map<PK, std::pair<NodePtr, Count>, PKHash> memo_;
};

}  // namespace cgmt
