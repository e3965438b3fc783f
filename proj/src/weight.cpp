#include "cgmt/weight.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "cgmt/error.hpp"

namespace cgmt {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

mpz_class parse_int(std::string_view s) {
  s = trim(s);
  std::string t(s);
  if (t.empty()) throw Error(ErrorCode::ParseError, "empty number");
  std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  if (start == t.size()) throw Error(ErrorCode::ParseError, "bad integer '" + t + "'");
  for (std::size_t i = start; i < t.size(); ++i) {
    if (t[i] < '0' || t[i] > '9') throw Error(ErrorCode::ParseError, "bad integer '" + t + "'");
  }
  if (t[0] == '+') t.erase(0, 1);
  return mpz_class(t, 10);
}

long log2_exact(const mpz_class& v) {
  if (v <= 0) return -1;
  unsigned long tz = mpz_scan1(v.get_mpz_t(), 0);
  mpz_class w = v >> tz;
  return w == 1 ? static_cast<long>(tz) : -1;
}

// Interval enclosures of u^j, u = 2^{-1/q}, as integers scaled by 2^P.
struct PowerBounds {
  std::vector<mpz_class> lo, hi;
};

const PowerBounds& power_bounds(int q, long P) {
  static std::mutex mu;
  static std::map<std::pair<int, long>, PowerBounds> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(q, P);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  mpz_class big = mpz_class(1) << static_cast<unsigned long>(P * q - 1);
  mpz_class L;
  mpz_root(L.get_mpz_t(), big.get_mpz_t(), static_cast<unsigned long>(q));
  mpz_class H = L + 1;
  PowerBounds b;
  b.lo.resize(static_cast<std::size_t>(q));
  b.hi.resize(static_cast<std::size_t>(q));
  mpz_class one = mpz_class(1) << static_cast<unsigned long>(P);
  b.lo[0] = one;
  b.hi[0] = one;
  mpz_class lp = L, hp = H;
  for (int j = 1; j < q; ++j) {
    unsigned long shift = static_cast<unsigned long>(P * (j - 1));
    mpz_class lo, hi;
    mpz_fdiv_q_2exp(lo.get_mpz_t(), lp.get_mpz_t(), shift);
    mpz_cdiv_q_2exp(hi.get_mpz_t(), hp.get_mpz_t(), shift);
    b.lo[static_cast<std::size_t>(j)] = lo;
    b.hi[static_cast<std::size_t>(j)] = hi;
    lp *= L;
    hp *= H;
  }
  return cache.emplace(key, std::move(b)).first->second;
}

// Bounds on 2^P * value.
std::pair<Dyadic, Dyadic> enclose(const std::vector<Dyadic>& c, long P) {
  const PowerBounds& b = power_bounds(static_cast<int>(c.size()), P);
  Dyadic lo, hi;
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j].is_zero()) continue;
    const mpz_class& l = b.lo[j];
    const mpz_class& h = b.hi[j];
    if (c[j].sign() > 0) {
      lo += Dyadic(c[j].num() * l, c[j].exp());
      hi += Dyadic(c[j].num() * h, c[j].exp());
    } else {
      lo += Dyadic(c[j].num() * h, c[j].exp());
      hi += Dyadic(c[j].num() * l, c[j].exp());
    }
  }
  return {lo, hi};
}

}  // namespace

void Dyadic::normalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  unsigned long tz = mpz_scan1(num_.get_mpz_t(), 0);
  if (tz > 0) {
    num_ >>= tz;
    exp_ += static_cast<long>(tz);
  }
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.exp_ <= b.exp_) {
    return Dyadic(a.num_ + (b.num_ << static_cast<unsigned long>(b.exp_ - a.exp_)), a.exp_);
  }
  return Dyadic(b.num_ + (a.num_ << static_cast<unsigned long>(a.exp_ - b.exp_)), b.exp_);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  int s = (a - b).sign();
  return s < 0 ? std::strong_ordering::less
               : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Dyadic Dyadic::parse(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty dyadic literal");
  auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    mpz_class p = parse_int(s.substr(0, slash));
    std::string_view den = trim(s.substr(slash + 1));
    long k;
    if (den.size() > 2 && den.substr(0, 2) == "2^") {
      mpz_class kk = parse_int(den.substr(2));
      if (!kk.fits_slong_p() || kk < 0) throw Error(ErrorCode::ParseError, "bad exponent");
      k = kk.get_si();
    } else {
      mpz_class d = parse_int(den);
      k = log2_exact(d);
      if (k < 0) {
        throw Error(ErrorCode::ParseError,
                    "denominator must be a power of two: '" + std::string(s) + "'");
      }
    }
    return Dyadic(p, -k);
  }
  auto dot = s.find('.');
  if (dot != std::string_view::npos) {
    std::string digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
    long d = static_cast<long>(s.size() - dot - 1);
    mpz_class n = parse_int(digits);
    mpz_class five;
    mpz_ui_pow_ui(five.get_mpz_t(), 5, static_cast<unsigned long>(d));
    if (n % five != 0) {
      throw Error(ErrorCode::ParseError, "decimal '" + std::string(s) + "' is not dyadic");
    }
    return Dyadic(n / five, -d);
  }
  return Dyadic(parse_int(s), 0);
}

std::string Dyadic::str() const {
  if (exp_ >= 0) {
    mpz_class v = num_ << static_cast<unsigned long>(exp_);
    return v.get_str() + "/2^0";
  }
  return num_.get_str() + "/2^" + std::to_string(-exp_);
}

mpz_class Dyadic::floor_scaled(long bits) const {
  long e = exp_ + bits;
  if (e >= 0) return num_ << static_cast<unsigned long>(e);
  mpz_class r;
  mpz_fdiv_q_2exp(r.get_mpz_t(), num_.get_mpz_t(), static_cast<unsigned long>(-e));
  return r;
}

Exponent::Exponent(unsigned p_, unsigned q_) : p(p_), q(q_) {
  if (q == 0) throw Error(ErrorCode::InvalidArgument, "exponent denominator is zero");
  unsigned g = std::gcd(p, q);
  if (g > 1) {
    p /= g;
    q /= g;
  }
  if (p == 0) q = 1;
}

Exponent Exponent::parse(std::string_view text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  mpz_class p = parse_int(slash == std::string_view::npos ? s : s.substr(0, slash));
  mpz_class q = slash == std::string_view::npos ? mpz_class(1) : parse_int(s.substr(slash + 1));
  if (p < 0 || q <= 0 || !p.fits_uint_p() || !q.fits_uint_p() || q > 64) {
    throw Error(ErrorCode::ParseError, "exponent must be p/q with p >= 0 and 0 < q <= 64");
  }
  return Exponent(static_cast<unsigned>(p.get_ui()), static_cast<unsigned>(q.get_ui()));
}

std::string Exponent::str() const {
  return q == 1 ? std::to_string(p) : std::to_string(p) + "/" + std::to_string(q);
}

AlgebraicWeight::AlgebraicWeight(int q, std::vector<Dyadic> coeffs) : coeffs_(std::move(coeffs)) {
  if (q <= 0 || static_cast<int>(coeffs_.size()) > q) {
    throw Error(ErrorCode::InvalidArgument, "ring element needs 1 <= #coeffs <= q");
  }
  coeffs_.resize(static_cast<std::size_t>(q));
}

AlgebraicWeight AlgebraicWeight::u_power(int q, long k) {
  long a = k >= 0 ? k / q : -((-k + q - 1) / q);
  long b = k - a * q;
  std::vector<Dyadic> c(static_cast<std::size_t>(q));
  c[static_cast<std::size_t>(b)] = Dyadic::pow2(-a);
  return AlgebraicWeight(q, std::move(c));
}

AlgebraicWeight AlgebraicWeight::scale_weight(const Exponent& s, long len) {
  return u_power(static_cast<int>(s.q), static_cast<long>(s.p) * len);
}

AlgebraicWeight AlgebraicWeight::parse(std::string_view text) {
  std::string_view s = trim(text);
  auto colon = s.find(':');
  if (colon == std::string_view::npos) return AlgebraicWeight(Dyadic::parse(s));
  mpz_class q = parse_int(s.substr(0, colon));
  if (q <= 0 || q > 64) throw Error(ErrorCode::ParseError, "ring literal q must be in 1..64");
  std::vector<Dyadic> c;
  std::string_view rest = s.substr(colon + 1);
  while (true) {
    auto comma = rest.find(',');
    c.push_back(Dyadic::parse(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (static_cast<long>(c.size()) > q.get_si()) {
    throw Error(ErrorCode::ParseError, "ring literal has more than q coefficients");
  }
  return AlgebraicWeight(static_cast<int>(q.get_si()), std::move(c));
}

AlgebraicWeight AlgebraicWeight::promoted(int Q) const {
  int q0 = q();
  if (Q == q0) return *this;
  if (Q % q0 != 0) throw Error(ErrorCode::InvalidArgument, "promotion to a non-multiple q");
  int f = Q / q0;
  std::vector<Dyadic> c(static_cast<std::size_t>(Q));
  for (int j = 0; j < q0; ++j) c[static_cast<std::size_t>(j * f)] = coeffs_[static_cast<std::size_t>(j)];
  return AlgebraicWeight(Q, std::move(c));
}

AlgebraicWeight AlgebraicWeight::reduced() const {
  int g = q();
  for (int j = 1; j < q(); ++j) {
    if (!coeffs_[static_cast<std::size_t>(j)].is_zero()) g = std::gcd(g, j);
  }
  if (g == 1) return *this;
  int Q = q() / g;
  std::vector<Dyadic> c(static_cast<std::size_t>(Q));
  for (int j = 0; j < Q; ++j) c[static_cast<std::size_t>(j)] = coeffs_[static_cast<std::size_t>(j * g)];
  return AlgebraicWeight(Q, std::move(c));
}

bool AlgebraicWeight::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Dyadic& d) { return d.is_zero(); });
}

int AlgebraicWeight::sign() const {
  bool pos = false, neg = false;
  for (const auto& d : coeffs_) {
    if (d.sign() > 0) pos = true;
    if (d.sign() < 0) neg = true;
  }
  if (!pos && !neg) return 0;
  if (!neg) return 1;
  if (!pos) return -1;
  // Mixed signs: refine an enclosure of u until the sign is isolated. A
  // nonzero element cannot vanish at u because 2x^q - 1 is irreducible.
  for (long P = 64;; P *= 2) {
    auto [lo, hi] = enclose(coeffs_, P);
    if (lo.sign() > 0) return 1;
    if (hi.sign() < 0) return -1;
  }
}

AlgebraicWeight AlgebraicWeight::operator-() const {
  AlgebraicWeight r = *this;
  for (auto& d : r.coeffs_) d = -d;
  return r;
}

AlgebraicWeight operator+(const AlgebraicWeight& a, const AlgebraicWeight& b) {
  if (a.q() == b.q()) {
    AlgebraicWeight r = a;
    for (std::size_t j = 0; j < r.coeffs_.size(); ++j) r.coeffs_[j] += b.coeffs_[j];
    return r;
  }
  int Q = std::lcm(a.q(), b.q());
  return a.promoted(Q) + b.promoted(Q);
}

AlgebraicWeight& AlgebraicWeight::operator+=(const AlgebraicWeight& o) {
  if (q() == o.q()) {
    for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
    return *this;
  }
  return *this = *this + o;
}

AlgebraicWeight operator-(const AlgebraicWeight& a, const AlgebraicWeight& b) { return a + (-b); }

AlgebraicWeight operator*(const AlgebraicWeight& a, const AlgebraicWeight& b) {
  int Q = std::lcm(a.q(), b.q());
  AlgebraicWeight x = a.promoted(Q), y = b.promoted(Q);
  std::vector<Dyadic> c(static_cast<std::size_t>(Q));
  for (int i = 0; i < Q; ++i) {
    const Dyadic& xi = x.coeffs_[static_cast<std::size_t>(i)];
    if (xi.is_zero()) continue;
    for (int j = 0; j < Q; ++j) {
      const Dyadic& yj = y.coeffs_[static_cast<std::size_t>(j)];
      if (yj.is_zero()) continue;
      Dyadic t = xi * yj;
      int k = i + j;
      if (k >= Q) {
        k -= Q;
        t = t.scaled(-1);  // u^Q = 1/2
      }
      c[static_cast<std::size_t>(k)] += t;
    }
  }
  return AlgebraicWeight(Q, std::move(c));
}

AlgebraicWeight AlgebraicWeight::scaled(long k) const {
  AlgebraicWeight r = *this;
  for (auto& d : r.coeffs_) d = d.scaled(k);
  return r;
}

std::strong_ordering operator<=>(const AlgebraicWeight& a, const AlgebraicWeight& b) {
  int s = (a - b).sign();
  return s < 0 ? std::strong_ordering::less
               : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

bool operator==(const AlgebraicWeight& a, const AlgebraicWeight& b) { return (a - b).is_zero(); }

Cmp compare(const AlgebraicWeight& a, const AlgebraicWeight& b) {
  int s = (a - b).sign();
  return s < 0 ? Cmp::Less : (s > 0 ? Cmp::Greater : Cmp::Equal);
}

const char* cmp_name(Cmp c) {
  switch (c) {
    case Cmp::Less: return "Less";
    case Cmp::Equal: return "Equal";
    case Cmp::Greater: return "Greater";
  }
  return "?";
}

AlgebraicWeight min(const AlgebraicWeight& a, const AlgebraicWeight& b) { return b < a ? b : a; }
AlgebraicWeight max(const AlgebraicWeight& a, const AlgebraicWeight& b) { return a < b ? b : a; }

std::string AlgebraicWeight::decimal(int digits) const {
  int sg = sign();
  long P = std::max<long>(256, 4L * digits + 64);
  auto [lo, hi] = enclose(coeffs_, P);
  // Truncate toward zero using the bound nearer to zero.
  Dyadic v = sg >= 0 ? lo : -hi;
  if (v.sign() < 0) v = Dyadic();
  mpz_class ten;
  mpz_ui_pow_ui(ten.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  mpz_class scaled = Dyadic(v.num() * ten, v.exp()).floor_scaled(-P);
  std::string s = scaled.get_str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits + 1) - s.size(), '0');
  std::string out = s.substr(0, s.size() - static_cast<std::size_t>(digits));
  if (digits > 0) out += "." + s.substr(s.size() - static_cast<std::size_t>(digits));
  if (sg < 0 && scaled != 0) out.insert(0, "-");
  return out;
}

std::string AlgebraicWeight::str() const {
  std::string out;
  bool first = true;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j].is_zero()) continue;
    if (!first) out += " + ";
    first = false;
    out += coeffs_[j].str();
    if (j > 0) out += "*u^" + std::to_string(j);
  }
  if (first) out = "0";
  if (q() > 1) out += " [u=2^(-1/" + std::to_string(q()) + ")]";
  return out;
}

std::string AlgebraicWeight::literal() const {
  if (q() == 1) return coeffs_[0].str();
  std::string out = std::to_string(q()) + ":";
  for (std::size_t j = 0; j < coeffs_.size(); ++j) out += (j ? "," : "") + coeffs_[j].str();
  return out;
}

AlgebraicWeight weight_of_lengths(const std::map<int, mpz_class>& counts, const Exponent& s) {
  int q = static_cast<int>(s.q);
  std::vector<Dyadic> c(static_cast<std::size_t>(q));
  for (const auto& [len, count] : counts) {
    if (count == 0) continue;
    long k = static_cast<long>(s.p) * len;
    long a = k / q, b = k % q;
    c[static_cast<std::size_t>(b)] += Dyadic(count, -a);
  }
  return AlgebraicWeight(q, std::move(c));
}

}  // namespace cgmt
