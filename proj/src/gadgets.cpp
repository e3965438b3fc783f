#include "cgmt/gadgets.hpp"

#include <algorithm>
#include <unordered_set>

namespace cgmt {

InjectionTable::InjectionTable(std::vector<std::uint64_t> values) : values_(std::move(values)) {
  std::unordered_set<std::uint64_t> seen;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!seen.insert(values_[k]).second) {
      throw Error(ErrorCode::InvalidArgument,
                  "table repeats value " + std::to_string(values_[k]) + " at k = " + std::to_string(k));
    }
  }
}

InjectionTable InjectionTable::random(std::mt19937_64& rng, std::size_t horizon, std::uint64_t bound) {
  if (bound < horizon) throw Error(ErrorCode::InvalidArgument, "value bound below the horizon");
  std::uniform_int_distribution<std::uint64_t> pick(0, bound - 1);
  std::unordered_set<std::uint64_t> used;
  std::vector<std::uint64_t> values;
  while (values.size() < horizon) {
    std::uint64_t v = pick(rng);
    if (used.insert(v).second) values.push_back(v);
  }
  return InjectionTable(std::move(values));
}

std::optional<std::uint64_t> InjectionTable::witness(std::uint64_t n) const {
  auto it = std::find(values_.begin(), values_.end(), n);
  if (it == values_.end()) return std::nullopt;
  return static_cast<std::uint64_t>(it - values_.begin());
}

bool InjectionTable::seen_before(std::uint64_t n, int len) const {
  auto w = witness(n);
  return w && *w < static_cast<std::uint64_t>(len);
}

std::string gadget_name(GadgetKind k) {
  switch (k) {
    case GadgetKind::RangeTauTree: return "range-tau-tree";
    case GadgetKind::SeparableRange: return "separable-range";
    case GadgetKind::BctcColumn: return "bctc-column";
    case GadgetKind::SMMin: return "smmin";
    case GadgetKind::NonRealizedInf: return "non-realized-inf";
  }
  return "?";
}

GadgetKind parse_gadget_kind(const std::string& name) {
  for (GadgetKind k : {GadgetKind::RangeTauTree, GadgetKind::SeparableRange, GadgetKind::BctcColumn,
                       GadgetKind::SMMin, GadgetKind::NonRealizedInf}) {
    if (gadget_name(k) == name) return k;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown gadget kind '" + name + "'");
}

BitString tau_string(int n) { return BitString::zeros(n).child(1); }

namespace {

int first_one(const BitString& s) {
  for (int i = 0; i < s.size(); ++i)
    if (s[i]) return i;
  return -1;
}

// Column n of s contains a 0.
bool column_has_zero(const BitString& s, std::uint64_t n) {
  for (std::uint64_t m = 0;; ++m) {
    std::uint64_t pos = pair(n, m);
    if (pos >= static_cast<std::uint64_t>(s.size())) return false;
    if (!s[static_cast<int>(pos)]) return true;
  }
}

// Columns of s that are nonempty.
std::uint64_t column_count(const BitString& s) {
  std::uint64_t n = 0;
  while (pair(n, 0) < static_cast<std::uint64_t>(s.size())) ++n;
  return n;
}

TreeSource tau_tree(const InjectionTable& f) {
  TreeSource t;
  t.name = "range-tau-tree";
  t.member = [f](const BitString& s) {
    int n = first_one(s);
    return n < 0 || !f.seen_before(static_cast<std::uint64_t>(n), s.size());
  };
  t.extendible = [f](const BitString& s) {
    int n = first_one(s);
    return n < 0 || !f.in_range(static_cast<std::uint64_t>(n));
  };
  return t;
}

TreeSource column_tree(const InjectionTable& f) {
  TreeSource t;
  t.name = "bctc-column";
  t.member = [f](const BitString& s) {
    for (std::uint64_t n = 0, cols = column_count(s); n < cols; ++n) {
      if (column_has_zero(s, n) && f.seen_before(n, s.size())) return false;
    }
    return true;
  };
  // The all-ones continuation keeps every column free of new zeros.
  t.extendible = [f](const BitString& s) {
    for (std::uint64_t n = 0, cols = column_count(s); n < cols; ++n) {
      if (column_has_zero(s, n) && f.in_range(n)) return false;
    }
    return true;
  };
  return t;
}

TreeSource smmin_tree(const InjectionTable& g) {
  TreeSource t;
  t.name = "smmin";
  t.member = [g](const BitString& s) {
    for (int n = 0; n < s.size(); ++n)
      if (!s[n] && g.seen_before(static_cast<std::uint64_t>(n), s.size())) return false;
    return true;
  };
  t.extendible = [g](const BitString& s) {
    for (int n = 0; n < s.size(); ++n)
      if (!s[n] && g.in_range(static_cast<std::uint64_t>(n))) return false;
    return true;
  };
  return t;
}

constexpr int kMaterializeDepth = 16;

}  // namespace

std::vector<int> smmin_set(const InjectionTable& g, const BitString& sigma) {
  std::vector<int> a;
  for (int n = 0; n < sigma.size(); ++n) {
    if (!sigma[n] || g.seen_before(static_cast<std::uint64_t>(n), sigma.size())) a.push_back(n);
  }
  return a;
}

AlgebraicWeight smmin_value(const InjectionTable& g, const BitString& sigma) {
  Dyadic sum;
  for (int n : smmin_set(g, sigma)) sum = sum + Dyadic::pow2(-n - 1);
  return AlgebraicWeight(Dyadic(1) - sum);
}

AlgebraicWeight eval_counterexample(const BitString& sigma) {
  int k = first_one(sigma);
  return AlgebraicWeight(k < 0 ? Dyadic(1) : Dyadic::pow2(-k));
}

GadgetInstance build_gadget(GadgetKind kind, const InjectionTable& f, int depth) {
  check_depth(depth, "gadget depth");
  GadgetInstance g;
  g.kind = kind;
  g.table = f;
  g.depth = depth;
  const std::size_t H = f.horizon();
  switch (kind) {
    case GadgetKind::RangeTauTree: {
      g.tree = tau_tree(f);
      g.jump_stand_in = "closed-form pruning with every witness k < H visible";
      auto through = std::make_shared<const TreeSource>(g.tree);
      // Leftmost continuations of the spine and of every live tau_n cylinder.
      g.sequence.generators.push_back({BitString(), through});
      for (std::size_t n = 0; n < H && static_cast<int>(n) < depth; ++n) {
        BitString tau = tau_string(static_cast<int>(n));
        if (g.tree.extendible(tau)) g.sequence.generators.push_back({tau, through});
      }
      break;
    }
    case GadgetKind::SeparableRange: {
      // X_k is 0^{f(k)} 1 0 0 ...; past the depth it is indistinguishable from 0^omega.
      for (std::uint64_t v : f.values()) {
        PathGenerator gen;
        if (v < static_cast<std::uint64_t>(depth)) gen.head = tau_string(static_cast<int>(v));
        g.sequence.generators.push_back(gen);
      }
      if (g.sequence.generators.empty()) g.sequence.generators.push_back({});
      TruncatedTree t = tree_from_separable(g.sequence, depth);
      g.tree = t.as_source();
      g.tree.name = "separable-range";
      g.materialized = std::move(t);
      g.jump_stand_in = "none: the tree is read off the sequence";
      break;
    }
    case GadgetKind::BctcColumn: {
      g.tree = column_tree(f);
      g.jump_stand_in = "depth-bounded exhaustive pruning, in closed form: a node is kept iff no column "
                        "holding a 0 belongs to a value in the table";
      for (std::size_t n = 0; n < H; ++n) {
        g.opens.push_back([f, n](const BitString& s) { return f.seen_before(n, s.size()) || column_has_zero(s, n); });
      }
      break;
    }
    case GadgetKind::SMMin: {
      g.tree = smmin_tree(f);
      g.ftilde = MonotoneFn{[f](const BitString& s) { return smmin_value(f, s); }};
      g.jump_stand_in = "closed-form pruning with every witness k < H visible";
      break;
    }
    case GadgetKind::NonRealizedInf: {
      g.tree = builtin::full();
      g.ftilde = MonotoneFn{eval_counterexample};
      g.jump_stand_in = "none";
      break;
    }
  }
  if (!g.materialized && depth <= kMaterializeDepth) g.materialized = TruncatedTree::from_source(g.tree, depth);
  return g;
}

namespace {

void finish(GadgetReport& r) {
  for (auto& v : r.verdicts) {
    v.match = v.decoded && *v.decoded == v.in_range;
    if (!v.match) ++r.mismatches;
  }
}

void check_tau(const GadgetInstance& g, const InjectionTable& f, int depth, GadgetReport& r) {
  // n is outside the range iff some sequence element runs through tau_n.
  std::vector<BitString> points;
  for (const auto& gen : g.sequence.generators) points.push_back(gen.prefix(depth));
  for (std::size_t n = 0; n < f.horizon(); ++n) {
    GadgetVerdict v{n, f.in_range(n), std::nullopt, false};
    if (static_cast<int>(n) < depth) {
      BitString tau = tau_string(static_cast<int>(n));
      bool hit = std::any_of(points.begin(), points.end(), [&](const BitString& x) {
        return tau.is_prefix_of(x) && g.tree.member(x);
      });
      v.decoded = !hit;
    }
    r.verdicts.push_back(v);
  }
}

void check_separable(const GadgetInstance& g, const InjectionTable& f, int depth, GadgetReport& r) {
  for (std::size_t n = 0; n < f.horizon(); ++n) {
    GadgetVerdict v{n, f.in_range(n), std::nullopt, false};
    if (static_cast<int>(n) < depth) {
      BitString y = tau_string(static_cast<int>(n));
      while (y.size() < depth) y = y.child(0);
      v.decoded = g.tree.member(y);
    }
    r.verdicts.push_back(v);
  }
}

void check_bctc(const GadgetInstance& g, const InjectionTable& f, int depth, GadgetReport& r) {
  BitString z;
  try {
    z = baire_intersect(g.tree, g.opens, BitString(), depth);
  } catch (const Error& e) {
    r.notes.push_back(std::string("baire_intersect failed: ") + e.what());
    for (std::size_t n = 0; n < f.horizon(); ++n) r.verdicts.push_back({n, f.in_range(n), std::nullopt, false});
    return;
  }
  r.path = z;
  // Scan prefixes of z for the first one entering V_n, then read which
  // condition put it there.
  for (std::size_t n = 0; n < f.horizon(); ++n) {
    GadgetVerdict v{n, f.in_range(n), std::nullopt, false};
    for (int len = 0; len <= z.size() && !v.decoded; ++len) {
      BitString p = z.prefix(len);
      if (f.seen_before(n, len)) v.decoded = true;
      else if (column_has_zero(p, n)) v.decoded = false;
    }
    r.verdicts.push_back(v);
  }
  if (pair(f.horizon() ? f.horizon() - 1 : 0, 0) >= static_cast<std::uint64_t>(depth)) {
    r.notes.push_back("columns past " + std::to_string(column_count(BitString::zeros(depth)) - 1) +
                      " are empty at depth " + std::to_string(depth));
  }
}

void check_smmin(const GadgetInstance& g, const InjectionTable& f, int depth, GadgetReport& r) {
  // Greedy descent: the child with the smaller value, 0 on ties, through the pruned tree.
  DensityCallback greedy = [&g, depth](const BitString& p, const AlgebraicWeight& eps) -> std::optional<BitString> {
    BitString s = p;
    while (true) {
      if (g.ftilde.eval(s) < eps) return s;
      if (s.size() >= depth) return std::nullopt;
      std::optional<BitString> best;
      for (int b = 0; b < 2; ++b) {
        BitString c = s.child(b);
        if (!g.tree.member(c) || !g.tree.extendible(c)) continue;
        if (!best || g.ftilde.eval(c) < g.ftilde.eval(*best)) best = c;
      }
      if (!best) return std::nullopt;
      s = *best;
    }
  };
  DmmResult res;
  try {
    res = dense_monotone_min(g.tree, g.ftilde, DensityTarget{AlgebraicWeight()}, greedy, depth, depth);
  } catch (const Error& e) {
    r.notes.push_back(std::string("dense_monotone_min failed: ") + e.what());
    for (std::size_t n = 0; n < f.horizon(); ++n) r.verdicts.push_back({n, f.in_range(n), std::nullopt, false});
    return;
  }
  r.path = res.path;
  r.notes.push_back("value at depth: " + g.ftilde.eval(res.path).str());
  for (std::size_t n = 0; n < f.horizon(); ++n) {
    GadgetVerdict v{n, f.in_range(n), std::nullopt, false};
    if (static_cast<int>(n) < res.path.size()) v.decoded = res.path[static_cast<int>(n)] == 1;
    r.verdicts.push_back(v);
  }
}

void check_counterexample(int depth, GadgetReport& r) {
  // Leaves 0^k 1 0.. take every value 2^{-k}, k < depth; none reaches 0.
  AlgebraicWeight lowest(1);
  for (int k = 0; k < depth; ++k) {
    BitString leaf = tau_string(k);
    while (leaf.size() < depth) leaf = leaf.child(0);
    lowest = min(lowest, eval_counterexample(leaf));
  }
  r.notes.push_back("least leaf value at depth " + std::to_string(depth) + ": " + lowest.str());
}

}  // namespace

GadgetReport check_gadget(const GadgetInstance& g, const InjectionTable& f, int depth) {
  check_depth(depth, "gadget check depth");
  GadgetReport r;
  r.kind = g.kind;
  r.horizon = f.horizon();
  r.depth = depth;
  r.notes.push_back("jump stand-in: " + g.jump_stand_in);
  if (depth < static_cast<int>(f.horizon()) && g.kind != GadgetKind::NonRealizedInf) {
    r.notes.push_back("depth below the horizon: late witnesses are invisible");
  }
  switch (g.kind) {
    case GadgetKind::RangeTauTree: check_tau(g, f, depth, r); break;
    case GadgetKind::SeparableRange: check_separable(g, f, depth, r); break;
    case GadgetKind::BctcColumn: check_bctc(g, f, depth, r); break;
    case GadgetKind::SMMin: check_smmin(g, f, depth, r); break;
    case GadgetKind::NonRealizedInf: check_counterexample(depth, r); break;
  }
  finish(r);
  return r;
}

}  // namespace cgmt
