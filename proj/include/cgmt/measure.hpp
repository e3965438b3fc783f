#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "cgmt/code.hpp"
#include "cgmt/marking.hpp"
#include "cgmt/truncated_tree.hpp"
#include "cgmt/weight.hpp"

namespace cgmt {

struct CoverSet {
  std::vector<BitString> strings;  // length-lex order
  int n = 0;
  int m = 0;
};

struct MeasureValue {
  AlgebraicWeight value;
  std::optional<CoverSet> witness;
  int at_block = -1;
  bool case2 = false;  // too shallow for any cover; value is 2^{(1-s)n}
};

// 2^{(1-s)n}.
AlgebraicWeight level_cover_weight(const Exponent& s, int n);

// Minimum s-weight of a set of strings with lengths in [n, m] covering the
// marked strings of length m, m the marking depth. On a tie between a
// string and its children's covers the witness keeps the string.
MeasureValue htilde(const Marking& nu, const Exponent& s, int n, bool want_witness = true);

// Same minimum by enumerating every cover's length histogram. m <= 7.
MeasureValue htilde_bruteforce(const Marking& nu, const Exponent& s, int n);

// Checks lengths >= n and that every length-depth member of t has a prefix
// in the cover; returns the cover's s-weight.
AlgebraicWeight verify_delta_cover(const CoverSet& cover, const TruncatedTree& t, int n, const Exponent& s);

// The htilde recursion on a compressed code, evaluated at block k. Memos
// are kept for the evaluator's lifetime, so one evaluator can score many
// codes that share nodes.
class CodeEvaluator {
 public:
  CodeEvaluator(AmbientPtr amb, const Exponent& s, int n, int k);

  AlgebraicWeight value(const NodePtr& node, const BitString& pos);
  // Root value, with the shallow-block convention when k < n.
  AlgebraicWeight evaluate(const Code& z);

  int block() const { return k_; }

 private:
  struct PK {
    const CodeNode* p;
    int d;
    friend bool operator==(const PK&, const PK&) = default;
  };
  struct PKHash {
    std::size_t operator()(const PK& k) const {
      return std::hash<const void*>()(k.p) ^ (static_cast<std::size_t>(k.d) * 0x9E3779B97F4A7C15ull);
    }
  };

  AlgebraicWeight combine(int depth, const AlgebraicWeight& sum) const;
  AlgebraicWeight lazy_value(const BitString& pos);

  AmbientPtr amb_;
  Exponent s_;
  int n_;
  int k_;
  std::vector<AlgebraicWeight> w_;
  std::unordered_map<PK, std::pair<NodePtr, AlgebraicWeight>, PKHash> memo_;
  std::unordered_map<Ambient::Key, AlgebraicWeight, Ambient::KeyHash> lazy_memo_;
};

AlgebraicWeight htilde(const Code& z, const Exponent& s, int n, int k);

// htilde of the source's tree at each requested block.
std::vector<MeasureValue> measure_sequence(const TreeSource& src, const Exponent& s, int n,
                                           const std::vector<int>& blocks);

struct MeasureComparison {
  bool verified = false;  // claim holds up to the horizon only
  int k = -1;             // least working k
  std::vector<AlgebraicWeight> e_values;  // by block 0..horizon
  std::vector<AlgebraicWeight> f_values;
};

// Looks for one k <= horizon with htilde(zE at k) < htilde(zF at m) + eps
// for every m <= horizon.
MeasureComparison compare_measures(const Code& zE, const Code& zF, const Exponent& s, int n,
                                   const AlgebraicWeight& eps, int horizon);

}  // namespace cgmt
