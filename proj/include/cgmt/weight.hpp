#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace cgmt {

// num * 2^exp, kept canonical: num odd, or num == 0 with exp == 0.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long v) : num_(v) { normalize(); }  // NOLINT(google-explicit-constructor)
  Dyadic(mpz_class num, long exp) : num_(std::move(num)), exp_(exp) { normalize(); }

  static Dyadic pow2(long k) { return Dyadic(mpz_class(1), k); }

  // Accepts "7", "-3/8", "5/2^4", "0.625".
  static Dyadic parse(std::string_view text);

  const mpz_class& num() const { return num_; }
  long exp() const { return exp_; }
  int sign() const { return sgn(num_); }
  bool is_zero() const { return num_ == 0; }

  Dyadic operator-() const { return Dyadic(-num_, exp_); }
  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    return Dyadic(a.num_ * b.num_, a.exp_ + b.exp_);
  }
  Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
  Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }

  Dyadic scaled(long k) const { return is_zero() ? *this : Dyadic(num_, exp_ + k); }

  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);
  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exp_ == b.exp_ && a.num_ == b.num_;
  }

  // "p/2^k" with k >= 0.
  std::string str() const;
  // floor(value * 2^bits) as an integer.
  mpz_class floor_scaled(long bits) const;

 private:
  void normalize();

  mpz_class num_ = 0;
  long exp_ = 0;
};

// Rational exponent s = p/q >= 0 in lowest terms.
struct Exponent {
  unsigned p = 0;
  unsigned q = 1;

  Exponent() = default;
  Exponent(unsigned p_, unsigned q_);
  static Exponent parse(std::string_view text);
  std::string str() const;
  bool is_zero() const { return p == 0; }
  friend bool operator==(const Exponent&, const Exponent&) = default;
};

// Element sum_j r_j u^j of Z[1/2][u], u = 2^{-1/q}, 0 <= j < q.
class AlgebraicWeight {
 public:
  AlgebraicWeight() : coeffs_(1) {}
  AlgebraicWeight(Dyadic d) : coeffs_{std::move(d)} {}  // NOLINT(google-explicit-constructor)
  AlgebraicWeight(long v) : coeffs_{Dyadic(v)} {}      // NOLINT(google-explicit-constructor)
  AlgebraicWeight(int q, std::vector<Dyadic> coeffs);

  // u^k for u = 2^{-1/q}, any integer k.
  static AlgebraicWeight u_power(int q, long k);
  // 2^{-s * len}.
  static AlgebraicWeight scale_weight(const Exponent& s, long len);

  // Dyadic literal, or ring literal "q:r0,r1,...".
  static AlgebraicWeight parse(std::string_view text);

  int q() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<Dyadic>& coeffs() const { return coeffs_; }

  AlgebraicWeight promoted(int q) const;
  // Drops to the smallest q representing the same element.
  AlgebraicWeight reduced() const;

  bool is_zero() const;
  int sign() const;

  AlgebraicWeight operator-() const;
  friend AlgebraicWeight operator+(const AlgebraicWeight& a, const AlgebraicWeight& b);
  friend AlgebraicWeight operator-(const AlgebraicWeight& a, const AlgebraicWeight& b);
  friend AlgebraicWeight operator*(const AlgebraicWeight& a, const AlgebraicWeight& b);
  AlgebraicWeight& operator+=(const AlgebraicWeight& o);
  AlgebraicWeight& operator-=(const AlgebraicWeight& o) { return *this = *this - o; }

  // Multiply by 2^k.
  AlgebraicWeight scaled(long k) const;

  friend std::strong_ordering operator<=>(const AlgebraicWeight& a, const AlgebraicWeight& b);
  friend bool operator==(const AlgebraicWeight& a, const AlgebraicWeight& b);

  // Fixed-point decimal with `digits` fractional digits, truncated toward zero.
  std::string decimal(int digits = 30) const;
  std::string str() const;
  // Round-trips through parse: "q:c0,c1,...", or a plain dyadic when q = 1.
  std::string literal() const;

 private:
  std::vector<Dyadic> coeffs_;
};

enum class Cmp { Less, Equal, Greater };
Cmp compare(const AlgebraicWeight& a, const AlgebraicWeight& b);
const char* cmp_name(Cmp c);

AlgebraicWeight min(const AlgebraicWeight& a, const AlgebraicWeight& b);
AlgebraicWeight max(const AlgebraicWeight& a, const AlgebraicWeight& b);

// W_s(V) from a histogram of string lengths.
AlgebraicWeight weight_of_lengths(const std::map<int, mpz_class>& counts, const Exponent& s);

}  // namespace cgmt
