#include "cgmt/construct.hpp"

namespace cgmt {

namespace {

RefinementCertificate certify(const Code& z, const Exponent& s, int n0, const AlgebraicWeight& c, int stage,
                              int lower_block, std::optional<int> upper_block) {
  RefinementCertificate cert;
  cert.stage = stage;
  cert.d = c + AlgebraicWeight(Dyadic::pow2(-stage));
  cert.lower_block = lower_block;
  cert.lower_value = htilde(z, s, n0, lower_block);
  cert.lower_ok = compare(cert.lower_value, c) != Cmp::Less;
  if (upper_block) {
    cert.upper_block = *upper_block;
    cert.upper_value = htilde(z, s, stage, *upper_block);
  } else {
    // Values only fall as blocks deepen, so the first block below d is the
    // cheapest witness.
    cert.upper_block = z.depth();
    for (int k = 0; k <= z.depth(); ++k) {
      AlgebraicWeight v = htilde(z, s, stage, k);
      if (compare(v, cert.d) == Cmp::Less || k == z.depth()) {
        cert.upper_block = k;
        cert.upper_value = v;
        break;
      }
    }
  }
  cert.upper_ok = compare(cert.upper_value, cert.d) == Cmp::Less;
  return cert;
}

// Largest 2^{-j} not above x; x > 0.
AlgebraicWeight dyadic_floor(const AlgebraicWeight& x) {
  for (long j = 0;; ++j) {
    AlgebraicWeight p(Dyadic::pow2(-j));
    if (compare(p, x) != Cmp::Greater) return p;
  }
}

}  // namespace

std::vector<RefinementCertificate> recheck_certificates(const Code& z, const Exponent& s, int n0,
                                                        const AlgebraicWeight& c,
                                                        const std::vector<RefinementCertificate>& certs) {
  std::vector<RefinementCertificate> out;
  for (const auto& old : certs) {
    RefinementCertificate cert = certify(z, s, n0, c, old.stage, old.lower_block, old.upper_block);
    cert.theta = old.theta;
    cert.replaced_branches = old.replaced_branches;
    out.push_back(std::move(cert));
  }
  return out;
}

BesicovitchResult besicovitch_extract(const TreeSource& src, const Exponent& s, const AlgebraicWeight& c, int n0,
                                      int stages, const BesicovitchConfig& cfg) {
  if (!src.has_extendible()) throw Error(ErrorCode::NotExtendible, "besicovitch_extract needs extendible");
  if (s.is_zero()) throw Error(ErrorCode::InvalidArgument, "besicovitch_extract needs s > 0");
  if (stages < 1 || n0 < 0) throw Error(ErrorCode::InvalidArgument, "need stages >= 1 and n0 >= 0");
  if (c.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "besicovitch_extract needs c > 0");
  const int last = n0 + stages - 1;
  const AlgebraicWeight d_last = c + AlgebraicWeight(Dyadic::pow2(-last));

  // Deep enough for 2^{-sm} to pass under the default slack of the last stage.
  int depth = cfg.depth.value_or(0);
  if (!cfg.depth) {
    long need = (static_cast<long>(2 * last + 8) * s.q + s.p - 1) / s.p;
    depth = static_cast<int>(std::min<long>(depth_cap(), need + cfg.window));
  }
  check_depth(depth, "besicovitch working depth");

  BesicovitchResult out;
  out.depth = depth;
  Code z = Code::of_ambient(make_ambient(src, true), depth);

  // Half the final slack goes to the first stage, the rest is shared out by
  // the thinning stages.
  AlgebraicWeight eps0 = cfg.eps0.value_or(AlgebraicWeight(Dyadic::pow2(-last - 1)));
  InterpolationResult first = interpolate_subset(z, n0, s, n0, c, eps0, 0, depth);
  z = first.code;
  out.certificates.push_back(certify(z, s, n0, c, n0, depth, std::nullopt));

  AlgebraicWeight upper = htilde(z, s, n0, depth);
  for (int n = n0 + 1; n <= last; ++n) {
    AlgebraicWeight slack = d_last - upper;
    if (slack.sign() <= 0) {
      throw Error(ErrorCode::NoStableIndex, "no slack left before stage " + std::to_string(n));
    }
    Count t = z.level_count(n - 1);
    int t_log = 0;
    while ((Count{1} << t_log) < t) ++t_log;
    AlgebraicWeight by_slack = slack.scaled(-(t_log + 1));
    AlgebraicWeight by_default = AlgebraicWeight(Dyadic::pow2(-n - (n + 3)));
    AlgebraicWeight theta = dyadic_floor(min(by_slack, by_default));

    ThinResult th = thinify(z, s, n - 1, n - 1, theta, depth);
    z = th.code;
    RefinementCertificate cert = certify(z, s, n0, c, n, depth, std::nullopt);
    cert.theta = theta;
    for (const auto& br : th.branches) cert.replaced_branches += br.replaced ? 1 : 0;
    out.certificates.push_back(std::move(cert));
    upper = htilde(z, s, n, depth);
  }

  out.code = z;
  out.certificates = recheck_certificates(z, s, n0, c, out.certificates);
  return out;
}

}  // namespace cgmt
