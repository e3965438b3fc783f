#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include <gmpxx.h>

#include "cgmt/core.hpp"
#include "cgmt/weight.hpp"

namespace cgmt {

using Count = unsigned __int128;

mpz_class to_mpz(Count c);
std::string count_str(Count c);

// A closed set presented by its tree. `member` must be prefix-closed.
// `extendible`, when present, decides "lies on an infinite path" and stands
// in for one jump of the tree; operations that may not use the jump never
// call it. `state` and `level_count` are optional accelerators: `state`
// returns a key such that (state(s), |s|) determines the subtree of members
// above s; `level_count(t, m)` counts members of length m extending t.
struct TreeSource {
  std::string name;
  std::function<bool(const BitString&)> member;
  std::function<bool(const BitString&)> extendible;
  std::function<std::uint64_t(const BitString&)> state;
  std::function<Count(const BitString&, int)> level_count;

  bool has_extendible() const { return static_cast<bool>(extendible); }
};

using TreeSourcePtr = std::shared_ptr<const TreeSource>;

namespace builtin {

TreeSource full();
// Strings starting with 0 (plus the root).
TreeSource branch_left();
TreeSource branch_right();
// Paths lexicographically below the binary expansion of c, 0 < c <= 1.
// Pruned; 2^{-m} times its level-m count is exactly c once m reaches the
// number of binary digits of c.
TreeSource dyadic(const Dyadic& c);

}  // namespace builtin

// Members of length m extending t, by enumeration through `member` when the
// source has no level_count. Throws BudgetExceeded past `budget` visits.
Count count_level(const TreeSource& src, const BitString& t, int m,
                  std::uint64_t budget = 50'000'000);

// Wraps a source so that every member/extendible call is counted. Used by
// the oracle-discipline checks.
struct CallCounter {
  std::shared_ptr<std::uint64_t> member_calls = std::make_shared<std::uint64_t>(0);
  std::shared_ptr<std::uint64_t> extendible_calls = std::make_shared<std::uint64_t>(0);
};
TreeSource instrument(const TreeSource& src, const CallCounter& counter, bool keep_accelerators);

}  // namespace cgmt
