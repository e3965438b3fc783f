#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "cgmt/error.hpp"

namespace cgmt {

// Active depth cap. Defaults to 63; CGMT_DEPTH_CAP overrides, as does
// set_depth_cap. Never exceeds BitString::kMaxLen.
int depth_cap();
void set_depth_cap(int cap);
void check_depth(int depth, const char* what);

class ScopedDepthCap {
 public:
  explicit ScopedDepthCap(int cap);
  ~ScopedDepthCap();
  ScopedDepthCap(const ScopedDepthCap&) = delete;
  ScopedDepthCap& operator=(const ScopedDepthCap&) = delete;

 private:
  int saved_;
};

// Finite binary word of length <= 64. Stored right-aligned: the first
// character is the most significant of the `len` low bits, so plain integer
// order is lexicographic order within one length.
class BitString {
 public:
  static constexpr int kMaxLen = 64;

  BitString() = default;
  BitString(std::uint64_t bits, int len);

  static BitString parse(std::string_view text);
  static BitString zeros(int len) { return BitString(0, len); }

  int size() const { return len_; }
  bool empty() const { return len_ == 0; }
  std::uint64_t bits() const { return bits_; }

  int operator[](int i) const {
    return static_cast<int>((bits_ >> (len_ - 1 - i)) & 1u);
  }

  BitString child(int b) const;
  BitString prefix(int k) const;
  BitString parent() const { return prefix(len_ - 1); }

  bool is_prefix_of(const BitString& other) const;
  bool compatible(const BitString& other) const;

  std::string str() const;

  // Length-lex order.
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
    if (a.len_ != b.len_) return a.len_ <=> b.len_;
    return a.bits_ <=> b.bits_;
  }
  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::uint64_t bits_ = 0;
  int len_ = 0;
};

struct BitStringHash {
  std::size_t operator()(const BitString& s) const noexcept {
    return std::hash<std::uint64_t>()(s.bits() * 0x9E3779B97F4A7C15ull ^
                                      static_cast<std::uint64_t>(s.size()));
  }
};

using LengthLexIndex = std::uint64_t;

LengthLexIndex index_of(const BitString& s);
BitString string_at(LengthLexIndex i);

// Cantor pairing (n+m)(n+m+1)/2 + n.
std::uint64_t pair(std::uint64_t n, std::uint64_t m);
std::pair<std::uint64_t, std::uint64_t> unpair(std::uint64_t k);

// Finite 0/1 sequence over length-lex indices.
class CodePrefix {
 public:
  CodePrefix() = default;
  explicit CodePrefix(std::vector<std::uint8_t> entries);

  static CodePrefix parse(std::string_view digits);

  std::size_t size() const { return entries_.size(); }
  std::uint8_t operator[](std::size_t i) const { return entries_[i]; }
  bool marks(const BitString& s) const;
  bool defined(const BitString& s) const;
  const std::vector<std::uint8_t>& entries() const { return entries_; }

  // Largest n with 2^{n+1}-1 <= size(), or -1 when no block is complete.
  int complete_block() const;

  std::string str() const;

  friend bool operator==(const CodePrefix&, const CodePrefix&) = default;

 private:
  std::vector<std::uint8_t> entries_;
};

BitString column(const CodePrefix& p, std::uint64_t n);
CodePrefix block_prefix(const CodePrefix& p, int n);

// Number of entries in a block prefix of depth n: 2^{n+1} - 1.
std::uint64_t block_length(int n);

}  // namespace cgmt
