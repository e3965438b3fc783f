#include <functional>
#include <map>

#include "cgmt/construct.hpp"

namespace cgmt {

bool thin_test(const Code& z, const Exponent& s, int n, const BitString& tau, const AlgebraicWeight& theta,
               int depth) {
  if (tau.size() != n) throw Error(ErrorCode::InvalidArgument, "thin_test needs |tau| = n");
  Code r = z.restricted(tau).with_depth(depth);
  AlgebraicWeight bound = AlgebraicWeight::scale_weight(s, n) + theta;
  return compare(htilde(r, s, n + 1, depth), bound) != Cmp::Greater;
}

ThinResult thinify(const Code& z, const Exponent& s, int n, int prefix_level, const AlgebraicWeight& theta,
                   int depth) {
  if (s.is_zero()) throw Error(ErrorCode::InvalidArgument, "thinning needs s > 0");
  if (theta.sign() < 0) throw Error(ErrorCode::InvalidArgument, "theta must be >= 0");
  const AlgebraicWeight target = AlgebraicWeight::scale_weight(s, n);
  const AlgebraicWeight bound = target + theta;
  const int keep_to = std::max(prefix_level, n + 1);
  ThinResult out;
  std::map<BitString, NodePtr> replacement;
  for (const BitString& tau : z.level(n)) {
    BranchRecord rec;
    rec.tau = tau;
    Code zt = z.restricted(tau).with_depth(depth);
    rec.before = htilde(zt, s, n + 1, depth);
    if (compare(rec.before, bound) != Cmp::Greater) {
      rec.after = rec.before;
    } else {
      InterpolationResult ir = interpolate_subset(zt, keep_to, s, n + 1, target, theta, 0, depth);
      rec.replaced = !ir.identity;
      rec.m = ir.m;
      rec.after = ir.bracket.lower;
      replacement.emplace(tau, ir.code.node_at(tau));
    }
    out.branches.push_back(std::move(rec));
  }
  std::function<NodePtr(const NodePtr&, const BitString&)> go = [&](const NodePtr& zn,
                                                                    const BitString& pos) -> NodePtr {
    if (!zn) return nullptr;
    if (pos.size() == n) {
      auto it = replacement.find(pos);
      return it == replacement.end() ? zn : it->second;
    }
    return make_node(go(z.child(zn, pos, 0), pos.child(0)), go(z.child(zn, pos, 1), pos.child(1)));
  };
  out.code = Code(z.ambient(), go(z.root(), BitString()), depth);
  return out;
}

}  // namespace cgmt
