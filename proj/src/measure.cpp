#include "cgmt/measure.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cgmt {

AlgebraicWeight level_cover_weight(const Exponent& s, int n) {
  return AlgebraicWeight::scale_weight(s, n).scaled(n);
}

MeasureValue htilde(const Marking& nu, const Exponent& s, int n, bool want_witness) {
  MeasureValue out;
  const int m = nu.depth();
  out.at_block = m;
  if (m < n) {
    out.case2 = true;
    out.value = level_cover_weight(s, n);
    return out;
  }

  // Nodes of level j are the length-j prefixes of marked level-m strings;
  // everything else has value 0 and never enters a cover.
  struct Cell {
    std::uint64_t bits;
    AlgebraicWeight f;
    bool here;  // the witness covers this string itself
  };
  std::vector<std::vector<Cell>> lv(static_cast<std::size_t>(m + 1));
  const AlgebraicWeight wm = AlgebraicWeight::scale_weight(s, m);
  for (std::uint64_t v : nu.level(m)) lv[static_cast<std::size_t>(m)].push_back({v, wm, true});
  for (int j = m - 1; j >= 0; --j) {
    const auto& below = lv[static_cast<std::size_t>(j + 1)];
    auto& cur = lv[static_cast<std::size_t>(j)];
    const AlgebraicWeight wj = AlgebraicWeight::scale_weight(s, j);
    for (std::size_t i = 0; i < below.size();) {
      std::uint64_t parent = below[i].bits >> 1;
      AlgebraicWeight sum = below[i].f;
      std::size_t next = i + 1;
      if (next < below.size() && (below[next].bits >> 1) == parent) sum += below[next++].f;
      bool here = false;
      if (j >= n && compare(wj, sum) != Cmp::Greater) {
        here = true;
        sum = wj;
      }
      cur.push_back({parent, sum, here});
      i = next;
    }
  }
  const auto& top = lv[0];
  out.value = top.empty() ? AlgebraicWeight() : top[0].f;
  if (!want_witness) return out;

  CoverSet cover;
  cover.n = n;
  cover.m = m;
  // Walk down from the root, stopping at strings that cover themselves.
  std::vector<std::uint64_t> frontier;
  if (!top.empty()) frontier.push_back(0);
  for (int j = 0; j <= m && !frontier.empty(); ++j) {
    const auto& cells = lv[static_cast<std::size_t>(j)];
    std::vector<std::uint64_t> next;
    for (std::uint64_t v : frontier) {
      auto it = std::lower_bound(cells.begin(), cells.end(), v,
                                 [](const Cell& c, std::uint64_t x) { return c.bits < x; });
      if (it == cells.end() || it->bits != v) continue;
      if (it->here) {
        cover.strings.emplace_back(v, j);
      } else {
        next.push_back(v << 1);
        next.push_back((v << 1) | 1);
      }
    }
    frontier = std::move(next);
  }
  std::sort(cover.strings.begin(), cover.strings.end());
  out.witness = std::move(cover);
  return out;
}

MeasureValue htilde_bruteforce(const Marking& nu, const Exponent& s, int n) {
  const int m = nu.depth();
  if (m > 7) throw Error(ErrorCode::DepthTooLarge, "brute force needs block <= 7, got " + std::to_string(m));
  MeasureValue out;
  out.at_block = m;
  if (m < n) {
    out.case2 = true;
    out.value = level_cover_weight(s, n);
    return out;
  }
  using Hist = std::vector<int>;  // count of cover strings per length
  // All length histograms of covers of the marked level-m strings above sigma.
  auto covers = [&](auto&& self, const BitString& sigma) -> std::set<Hist> {
    const int d = sigma.size();
    bool any = false;
    for (std::uint64_t v : nu.level(m)) any = any || sigma.is_prefix_of(BitString(v, m));
    if (!any) return {Hist(static_cast<std::size_t>(m + 1), 0)};
    std::set<Hist> out;
    if (d >= n) {
      Hist h(static_cast<std::size_t>(m + 1), 0);
      h[static_cast<std::size_t>(d)] = 1;
      out.insert(h);
    }
    if (d < m) {
      auto a = self(self, sigma.child(0));
      auto b = self(self, sigma.child(1));
      for (const auto& x : a) {
        for (const auto& y : b) {
          Hist h(x);
          for (std::size_t i = 0; i < h.size(); ++i) h[i] += y[i];
          out.insert(std::move(h));
        }
      }
    }
    return out;
  };
  auto all = covers(covers, BitString());
  bool first = true;
  for (const auto& h : all) {
    std::map<int, mpz_class> counts;
    for (int j = 0; j <= m; ++j)
      if (h[static_cast<std::size_t>(j)]) counts[j] = h[static_cast<std::size_t>(j)];
    AlgebraicWeight w = weight_of_lengths(counts, s);
    if (first || compare(w, out.value) == Cmp::Less) out.value = w;
    first = false;
  }
  return out;
}

AlgebraicWeight verify_delta_cover(const CoverSet& cover, const TruncatedTree& t, int n, const Exponent& s) {
  std::map<int, mpz_class> counts;
  for (const auto& c : cover.strings) {
    if (c.size() < n) {
      throw Error(ErrorCode::LengthViolation,
                  "cover string '" + c.str() + "' is shorter than " + std::to_string(n), c.str());
    }
    counts[c.size()] += 1;
  }
  if (!t.empty()) {
    for (std::uint64_t v : t.level(t.depth())) {
      BitString leaf(v, t.depth());
      bool hit = std::any_of(cover.strings.begin(), cover.strings.end(),
                             [&](const BitString& c) { return c.is_prefix_of(leaf); });
      if (!hit) throw Error(ErrorCode::NotACover, "'" + leaf.str() + "' is not covered", leaf.str());
    }
  }
  return weight_of_lengths(counts, s);
}

CodeEvaluator::CodeEvaluator(AmbientPtr amb, const Exponent& s, int n, int k)
    : amb_(std::move(amb)), s_(s), n_(n), k_(k) {
  w_.reserve(static_cast<std::size_t>(k + 1));
  for (int d = 0; d <= k; ++d) w_.push_back(AlgebraicWeight::scale_weight(s, d));
}

AlgebraicWeight CodeEvaluator::combine(int depth, const AlgebraicWeight& sum) const {
  if (depth < n_ || sum.is_zero()) return sum;
  const auto& w = w_[static_cast<std::size_t>(depth)];
  return compare(w, sum) == Cmp::Less ? w : sum;
}

AlgebraicWeight CodeEvaluator::lazy_value(const BitString& pos) {
  if (pos.size() == k_) return w_[static_cast<std::size_t>(k_)];
  Ambient::Key key = amb_->key(pos);
  if (key.by_state) {
    auto it = lazy_memo_.find(key);
    if (it != lazy_memo_.end()) return it->second;
  } else {
    amb_->charge();
  }
  AlgebraicWeight sum;
  for (int b = 0; b < 2; ++b) {
    BitString c = pos.child(b);
    if (amb_->member(c)) sum += lazy_value(c);
  }
  AlgebraicWeight f = combine(pos.size(), sum);
  if (key.by_state) lazy_memo_.emplace(key, f);
  return f;
}

AlgebraicWeight CodeEvaluator::value(const NodePtr& node, const BitString& pos) {
  if (!node) return AlgebraicWeight();
  if (pos.size() == k_) return w_[static_cast<std::size_t>(k_)];
  if (node->lazy) return lazy_value(pos);
  PK key{node.get(), pos.size()};
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second.second;
  AlgebraicWeight sum = value(node->kid[0], pos.child(0));
  sum += value(node->kid[1], pos.child(1));
  AlgebraicWeight f = combine(pos.size(), sum);
  memo_.emplace(key, std::make_pair(node, f));
  return f;
}

AlgebraicWeight CodeEvaluator::evaluate(const Code& z) {
  if (k_ < n_) return level_cover_weight(s_, n_);
  return value(z.root(), BitString());
}

AlgebraicWeight htilde(const Code& z, const Exponent& s, int n, int k) {
  if (k > z.depth()) {
    throw Error(ErrorCode::PrefixTooShort,
                "block " + std::to_string(k) + " beyond code depth " + std::to_string(z.depth()));
  }
  CodeEvaluator ev(z.ambient(), s, n, k);
  return ev.evaluate(z);
}

std::vector<MeasureValue> measure_sequence(const TreeSource& src, const Exponent& s, int n,
                                           const std::vector<int>& blocks) {
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    if (blocks[i] <= blocks[i - 1]) throw Error(ErrorCode::InvalidArgument, "blocks must increase");
  }
  std::vector<MeasureValue> out;
  if (blocks.empty()) return out;
  for (int b : blocks) check_depth(b, "measure block");
  Code z = Code::of_ambient(make_ambient(src, false), blocks.back());
  for (int b : blocks) {
    MeasureValue v;
    v.at_block = b;
    v.case2 = b < n;
    v.value = htilde(z, s, n, b);
    out.push_back(std::move(v));
  }
  return out;
}

MeasureComparison compare_measures(const Code& zE, const Code& zF, const Exponent& s, int n,
                                   const AlgebraicWeight& eps, int horizon) {
  if (horizon > zE.depth() || horizon > zF.depth()) {
    throw Error(ErrorCode::PrefixTooShort, "horizon beyond available code depth");
  }
  MeasureComparison out;
  for (int b = 0; b <= horizon; ++b) {
    out.e_values.push_back(htilde(zE, s, n, b));
    out.f_values.push_back(htilde(zF, s, n, b));
  }
  for (int k = 0; k <= horizon && !out.verified; ++k) {
    bool ok = true;
    for (int m = 0; m <= horizon && ok; ++m) {
      ok = compare(out.e_values[static_cast<std::size_t>(k)],
                   out.f_values[static_cast<std::size_t>(m)] + eps) == Cmp::Less;
    }
    if (ok) {
      out.verified = true;
      out.k = k;
    }
  }
  return out;
}

}  // namespace cgmt
