#include "doctest.h"

#include "cgmt/construct.hpp"
#include "gen.hpp"

using namespace cgmt;

namespace {

const Exponent kHalf(1, 2);
const Exponent kOne(1, 1);

AlgebraicWeight W(const char* text) { return AlgebraicWeight::parse(text); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

bool in_range(const AlgebraicWeight& v, const AlgebraicWeight& lo, const AlgebraicWeight& hi) {
  return v >= lo && v < hi;
}

// Subset of the ambient, and agrees with `z` through `level`.
void check_subtree_and_prefix(const Code& y, const Code& z, int level, int depth) {
  Marking my = y.materialize(depth);
  Marking mz = z.materialize(depth);
  for (int k = 0; k <= depth; ++k) {
    for (std::uint64_t v : my.level(k)) CHECK(mz.marks(BitString(v, k)));
    if (k <= level) CHECK(my.level(k) == mz.level(k));
  }
}

}  // namespace

TEST_CASE("interpolation on the full tree, s = 1") {
  auto amb = make_ambient(builtin::full(), false);
  Code z = Code::of_ambient(amb, 20);
  InterpolationResult r = interpolate_subset(z, 0, kOne, 0, W("1/2"), W("1/4"), 3);
  CHECK(!r.identity);
  CHECK(r.m == 3);
  CHECK(r.code.depth() == 6);
  for (const auto& bv : r.window) CHECK(in_range(bv.value, W("1/2"), W("3/4")));
  // Independent re-evaluation on the explicit marking, and by brute force.
  for (int k = r.m; k <= r.code.depth(); ++k) {
    Marking mk = r.code.materialize(k);
    AlgebraicWeight v = htilde(mk, kOne, 0).value;
    CHECK(in_range(v, W("1/2"), W("3/4")));
    CHECK(htilde_bruteforce(mk, kOne, 0).value == v);
  }
  check_subtree_and_prefix(r.code, z, 0, r.code.depth());
}

TEST_CASE("interpolation identity and zero-target cases") {
  auto amb = make_ambient(builtin::full(), false);
  Code z = Code::of_ambient(amb, 30);
  InterpolationResult same = interpolate_subset(z, 1, kHalf, 1, W("2:0,2"), W("1/8"), 4);
  CHECK(same.identity);
  CHECK(same.code.root() == z.root());

  InterpolationResult zero = interpolate_subset(z, 0, kOne, 0, AlgebraicWeight(), W("1/8"), 3);
  CHECK(zero.target_low == W("1/16"));
  for (const auto& bv : zero.window) CHECK(in_range(bv.value, W("1/16"), W("1/8")));

  CHECK(code_of([&] { interpolate_subset(z, 0, Exponent(0, 1), 0, W("1/2"), W("1/4"), 3); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([&] { interpolate_subset(z, 0, kOne, 0, W("3/2"), W("1/4"), 3); }) ==
        ErrorCode::PreconditionMeasure);
}

TEST_CASE("approx_subset and pruned_approx_subset") {
  InterpolationResult r = approx_subset(builtin::full(), kHalf, 1, AlgebraicWeight(1), W("1/8"));
  for (const auto& bv : r.window) CHECK(in_range(bv.value, W("1"), W("9/8")));

  InterpolationResult p = pruned_approx_subset(builtin::full(), kHalf, 1, AlgebraicWeight(1), W("1/8"));
  CHECK(p.bracket.lower == r.bracket.lower);
  CHECK(p.bracket.upper == r.bracket.upper);
  Marking mk = p.code.materialize(p.code.depth());
  for (int k = 0; k < mk.depth(); ++k) {
    for (std::uint64_t v : mk.level(k)) {
      BitString s(v, k);
      CHECK((mk.marks(s.child(0)) || mk.marks(s.child(1))));
    }
  }

  InterpolationResult exact = approx_subset(builtin::full(), kHalf, 1, W("2:0,2"), W("1/1024"));
  CHECK(exact.identity);
}

TEST_CASE("interpolation brackets on random trees") {
  std::mt19937_64 rng(404);
  int solved = 0, unstable = 0;
  for (int trial = 0; trial < 40; ++trial) {
    TruncatedTree t = testgen::random_tree(rng, 14, 0.8);
    auto amb = make_ambient(t.as_source(), false);
    Code z = Code::of_ambient(amb, 14);
    const Exponent s = trial % 2 ? kOne : Exponent(3, 4);
    int n = static_cast<int>(rng() % 2);
    AlgebraicWeight top = htilde(z, s, n, 14);
    if (top.is_zero()) continue;
    AlgebraicWeight c = top.scaled(-1 - static_cast<long>(rng() % 3));
    AlgebraicWeight eps(Dyadic::pow2(-2 - static_cast<long>(rng() % 3)));
    try {
      InterpolationResult r = interpolate_subset(z, n, s, n, c, eps, 0, 14);
      for (const auto& bv : r.window) CHECK(in_range(bv.value, c, c + eps));
      check_subtree_and_prefix(r.code, z, n, 14);
      ++solved;
    } catch (const Error& e) {
      REQUIRE(e.code() == ErrorCode::NoStableIndex);
      ++unstable;
    }
  }
  MESSAGE("solved " << solved << ", NoStableIndex " << unstable);
  CHECK(solved > 0);
}

TEST_CASE("thin_test examples") {
  auto full = Code::of_ambient(make_ambient(builtin::full(), false), 12);
  CHECK(!thin_test(full, kHalf, 1, BitString::parse("0"), AlgebraicWeight(), 12));
  auto left = Code::of_ambient(make_ambient(builtin::branch_left(), false), 12);
  CHECK(thin_test(left, kHalf, 1, BitString::parse("1"), AlgebraicWeight(), 12));
  CHECK(thin_test(full, kHalf, 1, BitString::parse("0"), AlgebraicWeight(1), 12));
}

TEST_CASE("thinify examples") {
  auto amb = make_ambient(builtin::full(), false);
  Code z = Code::of_ambient(amb, 24);
  ThinResult th = thinify(z, kHalf, 1, 1, W("1/64"), 24);
  REQUIRE(th.branches.size() == 2);
  for (const auto& tau : {BitString::parse("0"), BitString::parse("1")}) {
    CHECK(thin_test(th.code, kHalf, 1, tau, W("1/64"), 24));
  }
  CHECK(htilde(th.code, kHalf, 0, 24) >= AlgebraicWeight(1));
  check_subtree_and_prefix(th.code, z, 2, 12);

  // Already thin: s = 1 on the full tree.
  ThinResult same = thinify(z, kOne, 2, 2, W("1/64"), 24);
  for (const auto& br : same.branches) CHECK(!br.replaced);
  CHECK(same.code.materialize(10) == z.materialize(10));

  CHECK(code_of([&] { thinify(z, kHalf, 1, 1, AlgebraicWeight(), 24); }) == ErrorCode::NoStableIndex);
}

TEST_CASE("thin transfer and lower-bound preservation on random trees") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 50; ++trial) {
    TruncatedTree t = prune_truncation(testgen::random_tree(rng, 16, 0.85));
    auto amb = make_ambient(t.as_source(), false);
    Code z = Code::of_ambient(amb, 16);
    const Exponent s = trial % 2 ? kOne : Exponent(3, 4);
    int n = 1 + static_cast<int>(rng() % 2);
    AlgebraicWeight theta(Dyadic::pow2(-3 - static_cast<long>(rng() % 2)));
    ThinResult th;
    try {
      th = thinify(z, s, n, n, theta, 16);
    } catch (const Error& e) {
      REQUIRE(e.code() == ErrorCode::NoStableIndex);
      continue;
    }
    for (const auto& br : th.branches) CHECK(thin_test(th.code, s, n, br.tau, theta, 16));
    // Covers of level-n strings move one level down at a cost of theta each.
    AlgebraicWeight w = htilde(th.code, s, n, 16);
    AlgebraicWeight t_count(Dyadic(to_mpz(th.code.level_count(n)), 0));
    CHECK(htilde(th.code, s, n + 1, 16) <= w + t_count * theta);
    for (int n0 = 0; n0 <= n; ++n0) CHECK(htilde(th.code, s, n0, 16) == htilde(z, s, n0, 16));
    check_subtree_and_prefix(th.code, z, n + 1, 16);
  }
}

TEST_CASE("besicovitch on the full space") {
  BesicovitchResult r = besicovitch_extract(builtin::full(), kHalf, AlgebraicWeight(1), 0, 7);
  REQUIRE(r.certificates.size() == 7);
  for (const auto& cert : r.certificates) {
    CHECK(cert.lower_ok);
    CHECK(cert.upper_ok);
    CHECK(cert.lower_value >= AlgebraicWeight(1));
    CHECK(cert.upper_value < AlgebraicWeight(1) + AlgebraicWeight(Dyadic::pow2(-cert.stage)));
  }
  // Re-evaluate the upper verdicts on explicit markings.
  for (const auto& cert : r.certificates) {
    if (cert.upper_block > 16) continue;
    Marking mk = r.code.materialize(cert.upper_block);
    CHECK(htilde(mk, kHalf, cert.stage).value == cert.upper_value);
  }
  auto again = recheck_certificates(r.code, kHalf, 0, AlgebraicWeight(1), r.certificates);
  for (std::size_t i = 0; i < again.size(); ++i) {
    CHECK(again[i].upper_value == r.certificates[i].upper_value);
    CHECK(again[i].lower_value == r.certificates[i].lower_value);
  }

  BesicovitchResult one = besicovitch_extract(builtin::full(), kOne, AlgebraicWeight(1), 0, 5);
  for (const auto& cert : one.certificates) {
    CHECK(cert.replaced_branches == 0);
    CHECK(cert.upper_ok);
  }
  CHECK(code_of([] { besicovitch_extract(builtin::full(), kHalf, W("3/2"), 0, 3); }) ==
        ErrorCode::PreconditionMeasure);
}

TEST_CASE("lebesgue_path") {
  // i = 0 is tried first; past the root both children of a path node qualify.
  BitString left = lebesgue_path(builtin::branch_left(), Dyadic::parse("1/2"), 8, 40);
  CHECK(left.str() == "01111111");
  for (int k = 0; k <= 8; ++k) CHECK(builtin::branch_left().member(left.prefix(k)));
  CHECK(lebesgue_path(builtin::full(), Dyadic(1), 3, 40).str() == "111");
  for (const char* c : {"1/2", "1/4", "3/4"}) {
    TreeSource t = builtin::dyadic(Dyadic::parse(c));
    BitString x = lebesgue_path(t, Dyadic::parse(c), 40, 63);
    for (int k = 0; k <= 40; ++k) CHECK(t.member(x.prefix(k)));
  }
  CHECK(code_of([] { lebesgue_path(builtin::branch_left(), Dyadic::parse("3/4"), 8, 40); }) ==
        ErrorCode::PromiseViolated);
}

TEST_CASE("baire_intersect") {
  TreeSource full = builtin::full();
  std::vector<OpenCode> yes(3, [](const BitString&) { return true; });
  CHECK(baire_intersect(full, yes, BitString(), 6) == leftmost_path(full, 6));

  auto has_one = [](const BitString& s) {
    for (int i = 0; i < s.size(); ++i)
      if (s[i]) return true;
    return false;
  };
  CHECK(baire_intersect(full, {has_one}, BitString(), 5).str() == "10000");

  std::vector<OpenCode> with_empty{has_one, [](const BitString&) { return false; }};
  CHECK(code_of([&] { baire_intersect(full, with_empty, BitString(), 10, 5000); }) ==
        ErrorCode::DensityViolated);
}

TEST_CASE("dense_monotone_min") {
  TreeSource full = builtin::full();
  // Search extensions in length-lex order for a value under alpha + eps.
  auto searcher = [&](const MonotoneFn& f, const AlgebraicWeight& alpha, int depth) -> DensityCallback {
    return [&f, alpha, depth](const BitString& p, const AlgebraicWeight& eps) -> std::optional<BitString> {
      std::vector<BitString> frontier{p};
      for (int len = p.size(); len <= depth; ++len) {
        std::vector<BitString> next;
        for (const auto& s : frontier) {
          if (f.eval(s) < alpha + eps) return s;
          next.push_back(s.child(0));
          next.push_back(s.child(1));
        }
        frontier = std::move(next);
      }
      return std::nullopt;
    };
  };

  MonotoneFn constant{[](const BitString&) { return AlgebraicWeight(1); }};
  DmmResult flat = dense_monotone_min(full, constant, {AlgebraicWeight(1)}, searcher(constant, AlgebraicWeight(1), 8), 8, 4);
  CHECK(flat.path == leftmost_path(full, 8));
  for (const auto& st : flat.steps) CHECK(st.block == 0);

  MonotoneFn first_one{[](const BitString& s) {
    for (int i = 0; i < s.size(); ++i)
      if (s[i]) return AlgebraicWeight(Dyadic::pow2(-i));
    return AlgebraicWeight(1);
  }};
  CHECK(code_of([&] {
          dense_monotone_min(full, first_one, {AlgebraicWeight()}, searcher(first_one, AlgebraicWeight(), 10), 10, 4);
        }) == ErrorCode::DensityViolated);
}

TEST_CASE("oracle discipline") {
  CallCounter cc;
  TreeSource watched = instrument(builtin::full(), cc, true);
  approx_subset(watched, kHalf, 1, AlgebraicWeight(1), W("1/8"));
  auto amb = make_ambient(watched, false);
  interpolate_subset(Code::of_ambient(amb, 20), 0, kOne, 0, W("1/2"), W("1/4"), 3);
  CHECK(*cc.extendible_calls == 0);
  CHECK(*cc.member_calls > 0);

  CallCounter bare;
  TreeSource only_oracles = instrument(builtin::full(), bare, false);
  CHECK(!only_oracles.state);
  CHECK(!only_oracles.level_count);
  pruned_approx_subset(only_oracles, kOne, 0, W("1/2"), W("1/4"), 2);
  BesicovitchConfig cfg;
  cfg.depth = 9;
  besicovitch_extract(only_oracles, kOne, AlgebraicWeight(1), 0, 3, cfg);
  CHECK(*bare.extendible_calls > 0);
}
