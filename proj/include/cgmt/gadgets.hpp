#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cgmt/construct.hpp"
#include "cgmt/separable.hpp"
#include "cgmt/truncated_tree.hpp"

namespace cgmt {

// f(0..H-1) of a one-to-one function. Every "range" below is the range at
// this horizon.
class InjectionTable {
 public:
  InjectionTable() = default;
  // Throws InvalidArgument on a repeated value.
  explicit InjectionTable(std::vector<std::uint64_t> values);

  // H distinct values drawn from [0, bound).
  static InjectionTable random(std::mt19937_64& rng, std::size_t horizon, std::uint64_t bound);

  std::size_t horizon() const { return values_.size(); }
  const std::vector<std::uint64_t>& values() const { return values_; }
  bool in_range(std::uint64_t n) const { return witness(n).has_value(); }
  // The k < H with f(k) = n.
  std::optional<std::uint64_t> witness(std::uint64_t n) const;
  // Some k < min(len, H) has f(k) = n.
  bool seen_before(std::uint64_t n, int len) const;

 private:
  std::vector<std::uint64_t> values_;
};

enum class GadgetKind { RangeTauTree, SeparableRange, BctcColumn, SMMin, NonRealizedInf };

std::string gadget_name(GadgetKind k);
// Accepts the names printed by gadget_name; throws InvalidArgument.
GadgetKind parse_gadget_kind(const std::string& name);

// n zeros then a 1.
BitString tau_string(int n);

struct GadgetInstance {
  GadgetKind kind = GadgetKind::RangeTauTree;
  InjectionTable table;
  int depth = 0;
  // The gadget's tree. `extendible` is the jump stand-in: membership at a
  // depth where every table witness is visible.
  TreeSource tree;
  std::optional<TruncatedTree> materialized;  // small depths only
  SeparableSequence sequence;                  // RangeTauTree, SeparableRange
  std::vector<OpenCode> opens;                 // BctcColumn: V_n, n < H
  MonotoneFn ftilde;                           // SMMin, NonRealizedInf
  std::string jump_stand_in;
};

GadgetInstance build_gadget(GadgetKind kind, const InjectionTable& f, int depth);

struct GadgetVerdict {
  std::uint64_t n = 0;
  bool in_range = false;
  std::optional<bool> decoded;  // gadget side; empty when undecided at depth
  bool match = false;
};

struct GadgetReport {
  GadgetKind kind = GadgetKind::RangeTauTree;
  std::size_t horizon = 0;
  int depth = 0;
  std::vector<GadgetVerdict> verdicts;
  std::size_t mismatches = 0;
  std::optional<BitString> path;  // decoding path, when the gadget builds one
  std::vector<std::string> notes;
};

GadgetReport check_gadget(const GadgetInstance& g, const InjectionTable& f, int depth);

// 1 on all-zero strings, else 2^{-k} for the first 1 at position k.
AlgebraicWeight eval_counterexample(const BitString& sigma);

// 1 - sum of 2^{-n-1} over A[sigma].
AlgebraicWeight smmin_value(const InjectionTable& g, const BitString& sigma);

// Positions n < |sigma| in A[sigma].
std::vector<int> smmin_set(const InjectionTable& g, const BitString& sigma);

}  // namespace cgmt
