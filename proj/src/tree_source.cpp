#include "cgmt/tree_source.hpp"

#include <vector>

namespace cgmt {

mpz_class to_mpz(Count c) {
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(c >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(c)));
  return (hi << 64) + lo;
}

std::string count_str(Count c) { return to_mpz(c).get_str(); }

namespace {

Count span(int levels) {
  if (levels < 0) return 0;
  if (levels >= 127) throw Error(ErrorCode::DepthCapExceeded, "count span too large");
  return Count{1} << levels;
}

// Members of length m below t when every extension of t is a member.
Count full_count(const BitString& t, int m) { return m < t.size() ? 0 : span(m - t.size()); }

}  // namespace

namespace builtin {

TreeSource full() {
  TreeSource t;
  t.name = "full";
  t.member = [](const BitString&) { return true; };
  t.extendible = [](const BitString&) { return true; };
  t.state = [](const BitString&) { return std::uint64_t{0}; };
  t.level_count = [](const BitString& s, int m) { return full_count(s, m); };
  return t;
}

namespace {

TreeSource branch(int bit, const char* name) {
  TreeSource t;
  t.name = name;
  auto mem = [bit](const BitString& s) { return s.empty() || s[0] == bit; };
  t.member = mem;
  t.extendible = mem;
  t.state = [](const BitString& s) { return std::uint64_t{s.empty() ? 1u : 0u}; };
  t.level_count = [mem](const BitString& s, int m) -> Count {
    if (!mem(s) || m < s.size()) return 0;
    if (s.empty()) return m == 0 ? 1 : span(m - 1);
    return full_count(s, m);
  };
  return t;
}

}  // namespace

TreeSource branch_left() { return branch(0, "branch-left"); }
TreeSource branch_right() { return branch(1, "branch-right"); }

TreeSource dyadic(const Dyadic& c) {
  if (c.sign() <= 0 || c > Dyadic(1)) {
    throw Error(ErrorCode::InvalidArgument, "dyadic tree needs 0 < c <= 1");
  }
  TreeSource t;
  t.name = "dyadic(" + c.str() + ")";
  if (c == Dyadic(1)) {
    TreeSource f = full();
    f.name = t.name;
    return f;
  }
  // c = N / 2^L with N odd and L >= 1.
  long L = -c.exp();
  if (L > 62) throw Error(ErrorCode::InvalidArgument, "dyadic tree needs c with at most 62 binary digits");
  std::uint64_t N = c.num().get_ui();
  // First k digits of the expansion of c, as an integer.
  auto cut = [N, L](int k) -> Count {
    if (k >= L) return static_cast<Count>(N) << (k - L);
    return static_cast<Count>(N >> (L - k));
  };
  // Level k keeps the strings below the cut; the cut string itself stays
  // while digits of c remain, so the level-m weight is exactly c for m >= L.
  auto top = [cut, L](int k) -> Count { return k >= L ? cut(k) : cut(k) + 1; };
  auto mem = [top](const BitString& s) { return static_cast<Count>(s.bits()) < top(s.size()); };
  t.member = mem;
  t.extendible = mem;
  t.state = [cut](const BitString& s) {
    return std::uint64_t{static_cast<Count>(s.bits()) == cut(s.size()) ? 1u : 0u};
  };
  t.level_count = [top, mem](const BitString& s, int m) -> Count {
    if (m < s.size() || !mem(s)) return 0;
    Count lo = static_cast<Count>(s.bits()) << (m - s.size());
    Count end = lo + span(m - s.size());
    Count t_m = top(m);
    if (t_m <= lo) return 0;
    return (t_m < end ? t_m : end) - lo;
  };
  return t;
}

}  // namespace builtin

Count count_level(const TreeSource& src, const BitString& t, int m, std::uint64_t budget) {
  if (src.level_count) return src.level_count(t, m);
  if (m < t.size() || !src.member(t)) return 0;
  Count total = 0;
  std::uint64_t visits = 0;
  std::vector<BitString> stack{t};
  while (!stack.empty()) {
    BitString s = stack.back();
    stack.pop_back();
    if (++visits > budget) throw Error(ErrorCode::BudgetExceeded, "level count enumeration");
    if (s.size() == m) {
      ++total;
      continue;
    }
    for (int b = 1; b >= 0; --b) {
      BitString c = s.child(b);
      if (src.member(c)) stack.push_back(c);
    }
  }
  return total;
}

TreeSource instrument(const TreeSource& src, const CallCounter& counter, bool keep_accelerators) {
  TreeSource t;
  t.name = src.name;
  auto mc = counter.member_calls;
  auto ec = counter.extendible_calls;
  auto member = src.member;
  t.member = [member, mc](const BitString& s) {
    ++*mc;
    return member(s);
  };
  if (src.extendible) {
    auto ext = src.extendible;
    t.extendible = [ext, ec](const BitString& s) {
      ++*ec;
      return ext(s);
    };
  }
  if (keep_accelerators) {
    t.state = src.state;
    t.level_count = src.level_count;
  }
  return t;
}

}  // namespace cgmt
