#include "doctest.h"

#include <set>

#include "cgmt/gadgets.hpp"

using namespace cgmt;

namespace {

InjectionTable doubling(std::size_t h) {
  std::vector<std::uint64_t> v;
  for (std::size_t k = 0; k < h; ++k) v.push_back(2 * k);
  return InjectionTable(v);
}

InjectionTable identity(std::size_t h) {
  std::vector<std::uint64_t> v;
  for (std::size_t k = 0; k < h; ++k) v.push_back(k);
  return InjectionTable(v);
}

BitString random_string(std::mt19937_64& rng, int len) {
  return BitString(len == 0 ? 0 : rng() >> (64 - len), len);
}

std::vector<BitString> at_level(const TruncatedTree& t, int k) {
  std::vector<BitString> out;
  for (std::uint64_t v : t.level(k)) out.emplace_back(v, k);
  return out;
}

}  // namespace

TEST_CASE("injection tables") {
  CHECK_THROWS_AS(InjectionTable({1, 2, 1}), Error);
  InjectionTable f = doubling(5);
  CHECK(f.in_range(8));
  CHECK(!f.in_range(3));
  CHECK(f.witness(6) == 3u);
  CHECK(f.seen_before(6, 4));
  CHECK(!f.seen_before(6, 3));
  std::mt19937_64 rng(1);
  InjectionTable r = InjectionTable::random(rng, 20, 40);
  CHECK(std::set<std::uint64_t>(r.values().begin(), r.values().end()).size() == 20);
  CHECK(parse_gadget_kind("bctc-column") == GadgetKind::BctcColumn);
  CHECK_THROWS_AS(parse_gadget_kind("nope"), Error);
}

TEST_CASE("range tau tree examples") {
  GadgetInstance evens = build_gadget(GadgetKind::RangeTauTree, doubling(10), 10);
  REQUIRE(evens.materialized);
  const BitString tau3 = BitString::parse("0001");
  auto above = [&](const GadgetInstance& g) {
    auto leaves = at_level(*g.materialized, 10);
    return std::count_if(leaves.begin(), leaves.end(), [&](const BitString& s) { return tau3.is_prefix_of(s); });
  };
  CHECK(above(evens) == 64);
  GadgetInstance ident = build_gadget(GadgetKind::RangeTauTree, identity(10), 10);
  CHECK(above(ident) == 0);
  CHECK(ident.materialized->contains(BitString::parse("000")));
  CHECK(!ident.materialized->contains(BitString::parse("0001")));
}

TEST_CASE("smmin value example") {
  InjectionTable f = doubling(10);
  BitString s = BitString::parse("111111");
  CHECK(smmin_set(f, s) == std::vector<int>{0, 2, 4});
  CHECK(smmin_value(f, s) == AlgebraicWeight::parse("11/32"));
}

TEST_CASE("eval_counterexample") {
  CHECK(eval_counterexample(BitString::parse("001")) == AlgebraicWeight::parse("1/4"));
  CHECK(eval_counterexample(BitString::parse("0000")) == AlgebraicWeight(1));
  CHECK(eval_counterexample(BitString()) == AlgebraicWeight(1));
  // Every 2^{-k}, k < D, occurs at depth D; nothing falls below 2^{-D}.
  const int D = 12;
  std::set<long> exps;
  for (std::uint64_t v = 0; v < (1u << D); ++v) {
    AlgebraicWeight w = eval_counterexample(BitString(v, D));
    CHECK(w >= AlgebraicWeight(Dyadic::pow2(-D)));
    for (long k = 0; k < D; ++k)
      if (w == AlgebraicWeight(Dyadic::pow2(-k))) exps.insert(k);
  }
  CHECK(exps.size() == D);
  GadgetInstance g = build_gadget(GadgetKind::NonRealizedInf, InjectionTable(), D);
  GadgetReport r = check_gadget(g, InjectionTable(), D);
  CHECK(r.verdicts.empty());
  CHECK(r.mismatches == 0);
}

TEST_CASE("decoding on f(k) = 2k and the identity") {
  for (GadgetKind kind : {GadgetKind::RangeTauTree, GadgetKind::SeparableRange, GadgetKind::BctcColumn,
                          GadgetKind::SMMin}) {
    CAPTURE(gadget_name(kind));
    for (const InjectionTable& f : {doubling(8), identity(8)}) {
      GadgetReport r = check_gadget(build_gadget(kind, f, 48), f, 48);
      REQUIRE(r.verdicts.size() == 8);
      CHECK(r.mismatches == 0);
      for (const auto& v : r.verdicts) CHECK(v.in_range == (f.values()[1] == 2 ? v.n % 2 == 0 : true));
    }
    GadgetReport empty = check_gadget(build_gadget(kind, InjectionTable(), 12), InjectionTable(), 12);
    CHECK(empty.verdicts.empty());
  }
}

TEST_CASE("closed-form pruning agrees with exhaustive pruning") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    InjectionTable f = InjectionTable::random(rng, 5, 8);
    for (GadgetKind kind : {GadgetKind::RangeTauTree, GadgetKind::BctcColumn, GadgetKind::SMMin}) {
      GadgetInstance g = build_gadget(kind, f, 12);
      TruncatedTree pruned = prune_truncation(*g.materialized);
      for (const BitString& s : g.materialized->members()) CHECK(g.tree.extendible(s) == pruned.contains(s));
    }
  }
}

TEST_CASE("range tau survivors shrink with depth") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    InjectionTable f = InjectionTable::random(rng, 10, 16);
    for (int d = 4; d < 12; ++d) {
      TruncatedTree lo = prune_truncation(*build_gadget(GadgetKind::RangeTauTree, f, d).materialized);
      TruncatedTree hi = prune_truncation(*build_gadget(GadgetKind::RangeTauTree, f, d + 1).materialized);
      for (int k = 0; k <= d; ++k)
        for (const BitString& s : at_level(hi, k)) CHECK(lo.contains(s));
    }
  }
}

TEST_CASE("smmin monotone, approaching 0, separated") {
  std::mt19937_64 rng(29);
  const InjectionTable f = InjectionTable::random(rng, 16, 32);
  const int D = 40;
  GadgetInstance g = build_gadget(GadgetKind::SMMin, f, D);
  int pairs = 0;
  while (pairs < 1000) {
    BitString t = random_string(rng, 1 + static_cast<int>(rng() % D));
    if (!g.tree.member(t)) {
      // Flip forced zeros so the sample lands in the tree.
      std::uint64_t bits = t.bits();
      for (int n = 0; n < t.size(); ++n)
        if (f.in_range(static_cast<std::uint64_t>(n))) bits |= 1ull << (t.size() - 1 - n);
      t = BitString(bits, t.size());
    }
    REQUIRE(g.tree.member(t));
    BitString s = t.prefix(static_cast<int>(rng() % (t.size() + 1)));
    CHECK(smmin_value(f, s) >= smmin_value(f, t));
    ++pairs;
  }
  // The range-prefix string of length n, padded with ones past the horizon.
  for (int n = 1; n <= 16; ++n) {
    std::uint64_t bits = 0;
    for (int k = 0; k < n; ++k) bits = (bits << 1) | (f.in_range(static_cast<std::uint64_t>(k)) ? 1u : 0u);
    BitString w(bits, n);
    while (w.size() < 20) w = w.child(1);
    CHECK(smmin_value(f, w) <= AlgebraicWeight(Dyadic::pow2(-n)));
  }
  // A 1 at a position outside the range keeps the term 2^{-k-1} out of the
  // sum forever, so values stay at or above 2^{-k-1}.
  for (int k = 0; k < 16; ++k) {
    if (f.in_range(static_cast<std::uint64_t>(k))) continue;
    for (int trial = 0; trial < 30; ++trial) {
      std::uint64_t bits = rng();
      int len = k + 1 + static_cast<int>(rng() % (D - k));
      BitString t(bits >> (64 - len), len);
      std::uint64_t b = t.bits() | (1ull << (len - 1 - k));
      for (int n = 0; n < len; ++n)
        if (f.in_range(static_cast<std::uint64_t>(n))) b |= 1ull << (len - 1 - n);
      t = BitString(b, len);
      REQUIRE(g.tree.member(t));
      CHECK(smmin_value(f, t) >= AlgebraicWeight(Dyadic::pow2(-k - 1)));
    }
    // The bound 2^{-k} itself is not kept: fill every other position.
    int len = std::max(k + 2, 17);
    std::uint64_t b = 0;
    for (int n = 0; n < len; ++n) b = (b << 1) | ((n == k || f.in_range(static_cast<std::uint64_t>(n))) ? 1u : 0u);
    BitString tight(b, len);
    REQUIRE(g.tree.member(tight));
    CHECK(smmin_value(f, tight) == AlgebraicWeight(Dyadic::pow2(-k - 1) + Dyadic::pow2(-len)));
  }
}

TEST_CASE("bctc open codes are upward closed and decode the range") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    InjectionTable f = InjectionTable::random(rng, 6, 12);
    GadgetInstance g = build_gadget(GadgetKind::BctcColumn, f, 40);
    REQUIRE(g.opens.size() == 6);
    for (int i = 0; i < 200; ++i) {
      BitString t = random_string(rng, 1 + static_cast<int>(rng() % 40));
      BitString s = t.prefix(static_cast<int>(rng() % (t.size() + 1)));
      for (const auto& v : g.opens)
        if (v(s)) CHECK(v(t));
    }
    GadgetReport r = check_gadget(g, f, 40);
    CHECK(r.mismatches == 0);
    REQUIRE(r.path);
    // Independent re-check: the path has a prefix in every V_n.
    for (const auto& v : g.opens) CHECK(v(*r.path));
  }
}

TEST_CASE("tree and sequence gadgets at horizon 64") {
  ScopedDepthCap cap(64);
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 5; ++trial) {
    InjectionTable f = InjectionTable::random(rng, 64, 128);
    for (GadgetKind kind : {GadgetKind::RangeTauTree, GadgetKind::SeparableRange, GadgetKind::SMMin}) {
      CAPTURE(gadget_name(kind));
      GadgetReport r = check_gadget(build_gadget(kind, f, 64), f, 64);
      CHECK(r.verdicts.size() == 64);
      CHECK(r.mismatches == 0);
    }
  }
}
