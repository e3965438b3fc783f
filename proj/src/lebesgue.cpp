#include "cgmt/construct.hpp"

namespace cgmt {

BitString lebesgue_path(const TreeSource& src, const Dyadic& c, int depth, int cap) {
  if (c.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "lebesgue_path needs c > 0");
  check_depth(depth, "path depth");
  check_depth(cap, "search cap");
  BitString x;
  if (!src.member(x)) throw Error(ErrorCode::PromiseViolated, "empty tree cannot have measure c");
  for (int k = 0; k < depth; ++k) {
    bool done = false;
    for (int m = k + 1; m <= cap && !done; ++m) {
      Count total = count_level(src, BitString(), m);
      // A level weight under c already refutes the promise.
      if (Dyadic(to_mpz(total), -m) < c) {
        throw Error(ErrorCode::PromiseViolated,
                    "level " + std::to_string(m) + " weight is below c", x.str());
      }
      Count outside = total - count_level(src, x, m);
      for (int i = 0; i < 2 && !done; ++i) {
        Count w = count_level(src, x.child(i), m) + outside;
        if (Dyadic(to_mpz(w), -m) < c) {
          BitString next = x.child(1 - i);
          if (!src.member(next)) {
            throw Error(ErrorCode::PromiseViolated, "search chose '" + next.str() + "' outside the tree",
                        next.str());
          }
          x = next;
          done = true;
        }
      }
    }
    if (!done) {
      throw Error(ErrorCode::PromiseViolated,
                  "no level up to " + std::to_string(cap) + " decides bit " + std::to_string(k), x.str());
    }
  }
  return x;
}

}  // namespace cgmt
