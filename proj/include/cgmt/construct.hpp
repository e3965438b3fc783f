#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cgmt/code.hpp"
#include "cgmt/measure.hpp"
#include "cgmt/weight.hpp"

namespace cgmt {

struct BlockValue {
  int block = 0;
  AlgebraicWeight value;
};

struct MeasureBracket {
  AlgebraicWeight lower;  // value at the deepest checked block
  int lower_block = -1;
  AlgebraicWeight upper;  // value at the shallowest checked block
  int upper_block = -1;
};

struct InterpolationResult {
  Code code;                        // defined through blocks 0..depth
  int m = 0;                        // first level meeting both bounds
  AlgebraicWeight target_low;       // c, or the chosen d when c = 0
  AlgebraicWeight target_high;      // c + eps, or eps when c = 0
  std::vector<BlockValue> window;   // htilde at blocks m..depth
  MeasureBracket bracket;
  bool identity = false;            // the input code already qualified
  Count index = 0;                  // 0: Y_0 alone; r: Y_0 plus the first r level-m subtrees
  Count candidates = 0;             // marked level-m strings of the input
};

// Finds Y with z^{<=prefix_level} subset Y subset z and htilde^s_n(Y) in
// [c, c + eps) at every block m..depth, where depth = m + window. With
// fixed_depth set, depth is that value instead and m must not exceed it.
InterpolationResult interpolate_subset(const Code& z, int prefix_level, const Exponent& s, int n,
                                       const AlgebraicWeight& c, const AlgebraicWeight& eps, int window,
                                       std::optional<int> fixed_depth = std::nullopt);

// Interpolation from the source's own code; never consults extendible.
InterpolationResult approx_subset(const TreeSource& src, const Exponent& s, int n, const AlgebraicWeight& c,
                                  const AlgebraicWeight& eps, int window = 4);
// Same over the pruned ambient; the output has a marked child at every
// marked string below its depth.
InterpolationResult pruned_approx_subset(const TreeSource& src, const Exponent& s, int n,
                                         const AlgebraicWeight& c, const AlgebraicWeight& eps,
                                         int window = 4);

// htilde^s_{n+1}(Z_tau) <= 2^{-ns} + theta at block `depth`.
bool thin_test(const Code& z, const Exponent& s, int n, const BitString& tau, const AlgebraicWeight& theta,
               int depth);

struct BranchRecord {
  BitString tau;
  AlgebraicWeight before;  // htilde^s_{n+1}(Z_tau) at the working depth
  AlgebraicWeight after;
  bool replaced = false;
  int m = 0;
};

struct ThinResult {
  Code code;
  std::vector<BranchRecord> branches;
};

// Makes every length-n branch theta-thin at block `depth`, keeping z up to
// max(prefix_level, n + 1). Replaced branches are interpolated into
// [2^{-ns}, 2^{-ns} + theta).
ThinResult thinify(const Code& z, const Exponent& s, int n, int prefix_level, const AlgebraicWeight& theta,
                   int depth);

struct RefinementCertificate {
  int stage = 0;
  AlgebraicWeight d;             // c + 2^{-stage}
  AlgebraicWeight theta;         // slack used by this stage's thinning (0 at the first stage)
  int lower_block = 0;           // htilde^s_{n0} >= c here
  AlgebraicWeight lower_value;
  bool lower_ok = false;
  int upper_block = -1;          // htilde^s_stage < d here
  AlgebraicWeight upper_value;
  bool upper_ok = false;
  int replaced_branches = 0;
};

struct BesicovitchConfig {
  int window = 4;
  std::optional<int> depth;      // working depth; derived from the stage count when unset
  std::optional<AlgebraicWeight> eps0;
};

struct BesicovitchResult {
  Code code;
  int depth = 0;
  std::vector<RefinementCertificate> certificates;
};

// Stages n0 .. n0 + stages - 1. Every certificate is recomputed on the final
// code before returning.
BesicovitchResult besicovitch_extract(const TreeSource& src, const Exponent& s, const AlgebraicWeight& c, int n0,
                                      int stages, const BesicovitchConfig& cfg = {});

// Re-evaluates the certificate verdicts on a code.
std::vector<RefinementCertificate> recheck_certificates(const Code& z, const Exponent& s, int n0,
                                                        const AlgebraicWeight& c,
                                                        const std::vector<RefinementCertificate>& certs);

// Extends `start` through `depth`, meeting each open set in turn. An open
// set is given by its code: a predicate closed under extension.
using OpenCode = std::function<bool(const BitString&)>;
BitString baire_intersect(const TreeSource& src, const std::vector<OpenCode>& opens, const BitString& start,
                          int depth, std::uint64_t cap = 1'000'000);

struct MonotoneFn {
  std::function<AlgebraicWeight(const BitString&)> eval;
};

struct DensityTarget {
  AlgebraicWeight alpha;
  // eps_n; defaults to 2^{-n}.
  std::function<AlgebraicWeight(int)> schedule = [](int n) { return AlgebraicWeight(Dyadic::pow2(-n)); };
};

// Returns an extension of `prefix` with f below alpha + eps, or nothing.
using DensityCallback = std::function<std::optional<BitString>(const BitString&, const AlgebraicWeight&)>;

struct DmmStep {
  int stage = 0;
  int block = 0;
  AlgebraicWeight value;
  AlgebraicWeight bound;
};

struct DmmResult {
  BitString path;
  std::vector<DmmStep> steps;
};

DmmResult dense_monotone_min(const TreeSource& src, const MonotoneFn& f, const DensityTarget& target,
                             const DensityCallback& density, int depth, int stages);

// Follows the measure-c promise down the tree; see the README for the
// search order.
BitString lebesgue_path(const TreeSource& src, const Dyadic& c, int depth, int cap);

}  // namespace cgmt
