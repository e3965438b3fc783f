#include "cgmt/code.hpp"

#include <algorithm>
#include <functional>

namespace cgmt {

NodePtr lazy_node() {
  static const NodePtr n = [] {
    auto p = std::make_shared<CodeNode>();
    p->lazy = true;
    return NodePtr(p);
  }();
  return n;
}

NodePtr make_node(NodePtr k0, NodePtr k1) {
  auto p = std::make_shared<CodeNode>();
  p->kid[0] = std::move(k0);
  p->kid[1] = std::move(k1);
  return p;
}

Ambient::Ambient(TreeSourcePtr src, bool pruned, std::uint64_t budget)
    : src_(std::move(src)), pruned_(pruned), budget_(budget) {
  if (pruned_ && !src_->has_extendible()) {
    throw Error(ErrorCode::NotExtendible, "a pruned ambient needs an extendibility callback");
  }
}

AmbientPtr make_ambient(const TreeSource& src, bool pruned) {
  return std::make_shared<const Ambient>(std::make_shared<const TreeSource>(src), pruned);
}

bool Ambient::member(const BitString& s) const {
  if (!src_->member(s)) return false;
  return !pruned_ || src_->extendible(s);
}

Ambient::Key Ambient::key(const BitString& s) const {
  if (src_->state) return Key{src_->state(s), s.size(), true};
  return Key{s.bits(), s.size(), false};
}

void Ambient::charge() const {
  if (++spent_ > budget_) {
    throw Error(ErrorCode::BudgetExceeded, "ambient enumeration exceeded " + std::to_string(budget_) + " visits");
  }
}

Count Ambient::count(const BitString& s, int m) const {
  if (m < s.size()) return 0;
  if (m == s.size()) return 1;
  if (!pruned_ && src_->level_count) return src_->level_count(s, m);
  Key k = key(s);
  auto mk = std::make_tuple(k.a, k.len, k.by_state, m);
  if (k.by_state) {
    auto it = counts_.find(mk);
    if (it != counts_.end()) return it->second;
  } else {
    charge();
  }
  Count total = 0;
  for (int b = 0; b < 2; ++b) {
    BitString c = s.child(b);
    if (member(c)) total += count(c, m);
  }
  if (k.by_state) counts_.emplace(mk, total);
  return total;
}

Code::Code(AmbientPtr amb, NodePtr root, int depth) : amb_(std::move(amb)), root_(std::move(root)), depth_(depth) {
  check_depth(depth, "code depth");
}

Code Code::of_ambient(AmbientPtr amb, int depth) {
  NodePtr root = amb->member(BitString()) ? lazy_node() : nullptr;
  return Code(std::move(amb), root, depth);
}

Code Code::from_marking(AmbientPtr amb, const Marking& m) {
  int depth = std::max(m.depth(), 0);
  std::function<NodePtr(const BitString&)> build = [&](const BitString& pos) -> NodePtr {
    if (!m.marks(pos)) return nullptr;
    if (pos.size() == m.depth()) return make_node(nullptr, nullptr);
    return make_node(build(pos.child(0)), build(pos.child(1)));
  };
  return Code(std::move(amb), m.depth() < 0 ? nullptr : build(BitString()), depth);
}

NodePtr Code::child(const Ambient& amb, const NodePtr& node, const BitString& pos, int b) {
  if (!node) return nullptr;
  if (node->lazy) return amb.member(pos.child(b)) ? lazy_node() : nullptr;
  return node->kid[b];
}

NodePtr Code::node_at(const BitString& s) const {
  NodePtr cur = root_;
  BitString pos;
  for (int i = 0; i < s.size() && cur; ++i) {
    cur = child(cur, pos, s[i]);
    pos = pos.child(s[i]);
  }
  return cur;
}

Count Code::level_count(int k) const {
  LevelCounter lc(*amb_, k);
  return lc.count(root_, BitString());
}

std::vector<BitString> Code::level(int k, std::size_t limit) const {
  std::vector<BitString> out;
  std::function<void(const NodePtr&, const BitString&)> walk = [&](const NodePtr& node, const BitString& pos) {
    if (!node) return;
    if (pos.size() == k) {
      if (out.size() >= limit) throw Error(ErrorCode::BudgetExceeded, "level listing too large");
      out.push_back(pos);
      return;
    }
    for (int b = 0; b < 2; ++b) walk(child(node, pos, b), pos.child(b));
  };
  walk(root_, BitString());
  return out;
}

Marking Code::materialize(int k) const {
  Marking m(k);
  std::size_t seen = 0;
  std::function<void(const NodePtr&, const BitString&)> walk = [&](const NodePtr& node, const BitString& pos) {
    if (!node) return;
    if (++seen > (1u << 24)) throw Error(ErrorCode::BudgetExceeded, "code too large to materialize");
    m.level(pos.size()).push_back(pos.bits());
    if (pos.size() == k) return;
    for (int b = 0; b < 2; ++b) walk(child(node, pos, b), pos.child(b));
  };
  walk(root_, BitString());
  return m;
}

Code Code::restricted(const BitString& tau) const {
  std::function<NodePtr(const NodePtr&, const BitString&)> go = [&](const NodePtr& node,
                                                                    const BitString& pos) -> NodePtr {
    if (!node) return nullptr;
    if (pos.size() == tau.size()) return node;
    int b = tau[pos.size()];
    NodePtr k = go(child(node, pos, b), pos.child(b));
    return b == 0 ? make_node(k, nullptr) : make_node(nullptr, k);
  };
  return Code(amb_, go(root_, BitString()), depth_);
}

Code::Dag Code::to_dag() const {
  Dag dag;
  std::unordered_map<const CodeNode*, long> ids;
  std::function<long(const NodePtr&)> visit = [&](const NodePtr& n) -> long {
    if (!n) return -1;
    if (n->lazy) return -2;
    auto it = ids.find(n.get());
    if (it != ids.end()) return it->second;
    long a = visit(n->kid[0]);
    long b = visit(n->kid[1]);
    long id = static_cast<long>(dag.nodes.size());
    dag.nodes.emplace_back(a, b);
    ids.emplace(n.get(), id);
    return id;
  };
  dag.root = visit(root_);
  return dag;
}

Code Code::from_dag(AmbientPtr amb, const Dag& dag, int depth) {
  std::vector<NodePtr> built;
  built.reserve(dag.nodes.size());
  auto ref = [&](long id) -> NodePtr {
    if (id == -1) return nullptr;
    if (id == -2) return lazy_node();
    if (id < 0 || static_cast<std::size_t>(id) >= built.size()) {
      throw Error(ErrorCode::ParseError, "code node refers forward or out of range");
    }
    return built[static_cast<std::size_t>(id)];
  };
  for (const auto& [a, b] : dag.nodes) built.push_back(make_node(ref(a), ref(b)));
  return Code(std::move(amb), ref(dag.root), depth);
}

bool Code::is_subtree_of_ambient(std::size_t limit) const {
  std::unordered_map<const CodeNode*, std::vector<int>> seen;
  std::size_t visits = 0;
  std::function<bool(const NodePtr&, const BitString&)> walk = [&](const NodePtr& n, const BitString& pos) {
    if (!n) return true;
    if (!amb_->member(pos)) return false;
    if (n->lazy || pos.size() == depth_) return true;
    auto& ds = seen[n.get()];
    if (std::find(ds.begin(), ds.end(), pos.size()) != ds.end()) return true;
    ds.push_back(pos.size());
    if (++visits > limit) throw Error(ErrorCode::BudgetExceeded, "code too large to check");
    return walk(n->kid[0], pos.child(0)) && walk(n->kid[1], pos.child(1));
  };
  return walk(root_, BitString());
}

Count LevelCounter::count(const NodePtr& node, const BitString& pos) {
  if (!node || pos.size() > m_) return 0;
  if (pos.size() == m_) return 1;
  if (node->lazy) return amb_.count(pos, m_);
  PK k{node.get(), pos.size()};
  auto it = memo_.find(k);
  if (it != memo_.end()) return it->second.second;
  Count c = count(node->kid[0], pos.child(0)) + count(node->kid[1], pos.child(1));
  memo_.emplace(k, std::make_pair(node, c));
  return c;
}

}  // namespace cgmt
