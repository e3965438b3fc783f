#include <map>
#include <tuple>

#include "cgmt/construct.hpp"

namespace cgmt {

namespace {

AlgebraicWeight from_count(Count c) { return AlgebraicWeight(Dyadic(to_mpz(c), 0)); }

bool in_range(const AlgebraicWeight& v, const AlgebraicWeight& lo, const AlgebraicWeight& hi) {
  return compare(v, lo) != Cmp::Less && compare(v, hi) == Cmp::Less;
}

std::vector<BlockValue> window_values(const Code& y, const Exponent& s, int n, int from, int to) {
  std::vector<BlockValue> out;
  for (int k = from; k <= to; ++k) out.push_back({k, htilde(y, s, n, k)});
  return out;
}

bool window_ok(const std::vector<BlockValue>& w, const AlgebraicWeight& lo, const AlgebraicWeight& hi) {
  for (const auto& bv : w)
    if (!in_range(bv.value, lo, hi)) return false;
  return true;
}

// Y_0: z up to the prefix level, then for every node there a single chain to
// its lex-least level-m extension that still has a level-D extension, then
// z's whole subtree above that extension.
class Y0Builder {
 public:
  Y0Builder(const Ambient& amb, int prefix_level, int m, LevelCounter& survive)
      : amb_(amb), np_(prefix_level), m_(m), survive_(survive) {}

  NodePtr build(const NodePtr& zn, const BitString& pos) {
    if (!zn) return nullptr;
    if (pos.size() == np_) return chain(zn, pos);
    auto key = memo_key(zn, pos);
    if (key) {
      auto it = memo_.find(*key);
      if (it != memo_.end()) return it->second;
    }
    NodePtr out = make_node(build(Code::child(amb_, zn, pos, 0), pos.child(0)),
                            build(Code::child(amb_, zn, pos, 1), pos.child(1)));
    if (key) memo_.emplace(*key, out);
    return out;
  }

 private:
  using Key = std::tuple<int, std::uint64_t, int>;

  std::optional<Key> memo_key(const NodePtr& zn, const BitString& pos) const {
    if (!zn->lazy) return Key{0, reinterpret_cast<std::uintptr_t>(zn.get()), pos.size()};
    Ambient::Key k = amb_.key(pos);
    if (!k.by_state) return std::nullopt;
    return Key{1, k.a, k.len};
  }

  NodePtr chain(const NodePtr& zn, const BitString& pos) {
    std::vector<int> bits;
    NodePtr cur = zn;
    BitString at = pos;
    while (at.size() < m_) {
      int pick = -1;
      NodePtr next;
      for (int b = 0; b < 2 && pick < 0; ++b) {
        NodePtr k = Code::child(amb_, cur, at, b);
        if (k && survive_.count(k, at.child(b)) > 0) {
          pick = b;
          next = k;
        }
      }
      if (pick < 0) break;  // a dead end already at the prefix level
      bits.push_back(pick);
      cur = next;
      at = at.child(pick);
    }
    NodePtr out = at.size() == m_ ? cur : make_node(nullptr, nullptr);
    for (auto it = bits.rbegin(); it != bits.rend(); ++it) {
      out = *it == 0 ? make_node(out, nullptr) : make_node(nullptr, out);
    }
    return out;
  }

  const Ambient& amb_;
  int np_;
  int m_;
  LevelCounter& survive_;
  std::map<Key, NodePtr> memo_;
};

}  // namespace

InterpolationResult interpolate_subset(const Code& z, int prefix_level, const Exponent& s, int n,
                                       const AlgebraicWeight& c, const AlgebraicWeight& eps, int window,
                                       std::optional<int> fixed_depth) {
  if (s.is_zero()) throw Error(ErrorCode::InvalidArgument, "interpolation needs s > 0");
  if (eps.sign() < 0 || c.sign() < 0) throw Error(ErrorCode::InvalidArgument, "c and eps must be >= 0");
  if (eps.is_zero()) throw Error(ErrorCode::NoStableIndex, "empty target interval (eps = 0)");
  if (prefix_level < 0 || n < 0 || window < 0) throw Error(ErrorCode::InvalidArgument, "negative level");

  const Ambient& amb = *z.ambient();
  const bool zero_target = c.is_zero();
  InterpolationResult res;
  res.target_high = zero_target ? eps : c + eps;
  // Largest jump one added level-m subtree may cause.
  const AlgebraicWeight gap = zero_target ? eps.scaled(-1) : eps;

  LevelCounter at_prefix(amb, prefix_level);
  const Count K = at_prefix.count(z.root(), BitString());
  const AlgebraicWeight K_w = from_count(K);
  int m = std::max(prefix_level, n);
  for (;; ++m) {
    if (m > depth_cap()) {
      throw Error(ErrorCode::DepthCapExceeded, "no level up to the depth cap meets the interpolation bounds");
    }
    AlgebraicWeight w = AlgebraicWeight::scale_weight(s, m);
    if (compare(w, gap) == Cmp::Less && compare(K_w * w, res.target_high) == Cmp::Less) break;
  }
  res.m = m;
  const int D = fixed_depth ? *fixed_depth : m + window;
  check_depth(D, "interpolation depth");
  if (m > D) {
    throw Error(ErrorCode::NoStableIndex, "level " + std::to_string(m) + " needed but working depth is " +
                                              std::to_string(D) + "; enlarge the window or depth");
  }
  Code zD = z.with_depth(D);

  CodeEvaluator at_D(z.ambient(), s, n, D);
  const AlgebraicWeight zval = at_D.evaluate(zD);
  if (zero_target) {
    if (zval.is_zero()) throw Error(ErrorCode::PreconditionMeasure, "input has no measure at the working depth");
    res.target_low = min(eps.scaled(-1), zval);
  } else {
    res.target_low = c;
    if (compare(zval, c) == Cmp::Less) {
      throw Error(ErrorCode::PreconditionMeasure,
                  "input value " + zval.decimal(12) + " is below c at block " + std::to_string(D));
    }
  }
  const AlgebraicWeight& lo = res.target_low;
  const AlgebraicWeight& hi = res.target_high;

  auto finish = [&](Code y, std::vector<BlockValue> w) {
    res.code = std::move(y);
    res.window = std::move(w);
    res.bracket.lower = res.window.back().value;
    res.bracket.lower_block = res.window.back().block;
    res.bracket.upper = res.window.front().value;
    res.bracket.upper_block = res.window.front().block;
    return res;
  };

  auto zw = window_values(zD, s, n, m, D);
  if (window_ok(zw, lo, hi)) {
    res.identity = true;
    return finish(zD, std::move(zw));
  }

  LevelCounter survive(amb, D);
  Y0Builder y0b(amb, prefix_level, m, survive);
  const NodePtr y0 = y0b.build(z.root(), BitString());

  LevelCounter at_m(amb, m);
  const Count M = at_m.count(z.root(), BitString());
  res.candidates = M;

  // Candidate r >= 1 adds every z-string up to and including the subtree
  // above the r-th marked level-m string, in lex order. Only the boundary
  // path is new; both sides are shared with z or Y_0.
  auto candidate = [&](Count r) -> NodePtr {
    if (r == 0) return y0;
    Count j = r - 1;
    std::vector<int> path;
    NodePtr cur = z.root();
    BitString pos;
    while (pos.size() < m) {
      NodePtr k0 = z.child(cur, pos, 0);
      Count c0 = at_m.count(k0, pos.child(0));
      int b = j < c0 ? 0 : 1;
      if (b == 1) j -= c0;
      path.push_back(b);
      cur = b == 0 ? k0 : z.child(cur, pos, 1);
      pos = pos.child(b);
    }
    std::vector<NodePtr> zs{z.root()}, ys{y0};
    BitString p;
    for (int b : path) {
      zs.push_back(z.child(zs.back(), p, b));
      ys.push_back(Code::child(amb, ys.back(), p, b));
      p = p.child(b);
    }
    NodePtr out = zs.back();
    for (int i = m - 1; i >= 0; --i) {
      int b = path[static_cast<std::size_t>(i)];
      BitString at = p.prefix(i);
      std::size_t ii = static_cast<std::size_t>(i);
      if (b == 1) {
        out = make_node(z.child(zs[ii], at, 0), out);
      } else {
        out = make_node(out, Code::child(amb, ys[ii], at, 1));
      }
    }
    return out;
  };

  auto reaches = [&](Count r) { return compare(at_D.value(candidate(r), BitString()), lo) != Cmp::Less; };
  Count a = 0, b = M;
  while (a < b) {
    Count mid = a + (b - a) / 2;
    if (reaches(mid)) {
      b = mid;
    } else {
      a = mid + 1;
    }
  }
  res.index = a;
  Code y(z.ambient(), candidate(a), D);
  auto yw = window_values(y, s, n, m, D);
  if (!window_ok(yw, lo, hi)) {
    throw Error(ErrorCode::NoStableIndex,
                "candidate " + count_str(a) + " leaves [" + lo.decimal(12) + ", " + hi.decimal(12) +
                    ") within blocks " + std::to_string(m) + ".." + std::to_string(D) + "; try another window");
  }
  return finish(std::move(y), std::move(yw));
}

InterpolationResult approx_subset(const TreeSource& src, const Exponent& s, int n, const AlgebraicWeight& c,
                                  const AlgebraicWeight& eps, int window) {
  Code z = Code::of_ambient(make_ambient(src, false), depth_cap());
  return interpolate_subset(z, n, s, n, c, eps, window);
}

InterpolationResult pruned_approx_subset(const TreeSource& src, const Exponent& s, int n,
                                         const AlgebraicWeight& c, const AlgebraicWeight& eps, int window) {
  if (!src.has_extendible()) throw Error(ErrorCode::NotExtendible, "pruned_approx_subset needs extendible");
  Code z = Code::of_ambient(make_ambient(src, true), depth_cap());
  return interpolate_subset(z, n, s, n, c, eps, window);
}

}  // namespace cgmt
