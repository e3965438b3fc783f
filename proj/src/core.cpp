#include "cgmt/core.hpp"

#include <atomic>
#include <bit>
#include <cstdlib>

namespace cgmt {

namespace {

std::atomic<int> g_cap_override{-1};

int env_cap() {
  static const int cap = [] {
    const char* v = std::getenv("CGMT_DEPTH_CAP");
    if (v == nullptr || *v == '\0') return 63;
    char* end = nullptr;
    long parsed = std::strtol(v, &end, 10);
    if (end == v || *end != '\0' || parsed < 0) return 63;
    return static_cast<int>(parsed > BitString::kMaxLen ? BitString::kMaxLen : parsed);
  }();
  return cap;
}

}  // namespace

int depth_cap() {
  int o = g_cap_override.load(std::memory_order_relaxed);
  return o >= 0 ? o : env_cap();
}

void set_depth_cap(int cap) {
  if (cap > BitString::kMaxLen) cap = BitString::kMaxLen;
  g_cap_override.store(cap, std::memory_order_relaxed);
}

void check_depth(int depth, const char* what) {
  if (depth < 0 || depth > depth_cap()) {
    throw Error(ErrorCode::DepthCapExceeded,
                std::string(what) + " " + std::to_string(depth) + " exceeds depth cap " +
                    std::to_string(depth_cap()));
  }
}

ScopedDepthCap::ScopedDepthCap(int cap) : saved_(g_cap_override.load()) { set_depth_cap(cap); }
ScopedDepthCap::~ScopedDepthCap() { g_cap_override.store(saved_); }

BitString::BitString(std::uint64_t bits, int len) : bits_(bits), len_(len) {
  if (len < 0 || len > kMaxLen) {
    throw Error(ErrorCode::DepthCapExceeded, "string length " + std::to_string(len));
  }
  if (len < 64) bits_ &= (std::uint64_t{1} << len) - 1;
}

BitString BitString::parse(std::string_view text) {
  if (text.size() > static_cast<std::size_t>(kMaxLen)) {
    throw Error(ErrorCode::DepthCapExceeded, "string longer than 64 digits");
  }
  std::uint64_t bits = 0;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw Error(ErrorCode::ParseError, "not a binary string: '" + std::string(text) + "'");
    }
    bits = (bits << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return BitString(bits, static_cast<int>(text.size()));
}

BitString BitString::child(int b) const {
  if (len_ >= kMaxLen) throw Error(ErrorCode::DepthCapExceeded, "string longer than 64 digits");
  return BitString((bits_ << 1) | static_cast<std::uint64_t>(b & 1), len_ + 1);
}

BitString BitString::prefix(int k) const {
  if (k <= 0) return BitString();
  if (k >= len_) return *this;
  return BitString(bits_ >> (len_ - k), k);
}

bool BitString::is_prefix_of(const BitString& other) const {
  return len_ <= other.len_ && other.prefix(len_).bits_ == bits_;
}

bool BitString::compatible(const BitString& other) const {
  return is_prefix_of(other) || other.is_prefix_of(*this);
}

std::string BitString::str() const {
  std::string out(static_cast<std::size_t>(len_), '0');
  for (int i = 0; i < len_; ++i) out[static_cast<std::size_t>(i)] = static_cast<char>('0' + (*this)[i]);
  return out;
}

LengthLexIndex index_of(const BitString& s) {
  if (s.size() > 63) throw Error(ErrorCode::DepthCapExceeded, "index of a length-64 string overflows");
  return ((std::uint64_t{1} << s.size()) - 1) + s.bits();
}

BitString string_at(LengthLexIndex i) {
  if (i == ~std::uint64_t{0}) throw Error(ErrorCode::DepthCapExceeded, "index out of range");
  std::uint64_t v = i + 1;
  int len = std::bit_width(v) - 1;
  return BitString(v - (std::uint64_t{1} << len), len);
}

std::uint64_t pair(std::uint64_t n, std::uint64_t m) {
  unsigned __int128 t = static_cast<unsigned __int128>(n) + m;
  unsigned __int128 r = t * (t + 1) / 2 + n;
  if (r >> 64) throw Error(ErrorCode::InvalidArgument, "pairing overflow");
  return static_cast<std::uint64_t>(r);
}

std::pair<std::uint64_t, std::uint64_t> unpair(std::uint64_t k) {
  // Largest t with t(t+1)/2 <= k.
  std::uint64_t lo = 0, hi = std::uint64_t{1} << 33;
  while (lo < hi) {
    std::uint64_t mid = lo + (hi - lo + 1) / 2;
    unsigned __int128 tri = static_cast<unsigned __int128>(mid) * (mid + 1) / 2;
    if (tri <= k) lo = mid; else hi = mid - 1;
  }
  std::uint64_t n = k - lo * (lo + 1) / 2;
  return {n, lo - n};
}

CodePrefix::CodePrefix(std::vector<std::uint8_t> entries) : entries_(std::move(entries)) {
  for (auto& e : entries_) {
    if (e > 1) throw Error(ErrorCode::InvalidArgument, "code entries must be 0 or 1");
  }
}

CodePrefix CodePrefix::parse(std::string_view digits) {
  std::vector<std::uint8_t> e;
  e.reserve(digits.size());
  for (char c : digits) {
    if (c != '0' && c != '1') throw Error(ErrorCode::ParseError, "code prefix must be binary");
    e.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return CodePrefix(std::move(e));
}

bool CodePrefix::defined(const BitString& s) const {
  return s.size() <= 63 && index_of(s) < entries_.size();
}

bool CodePrefix::marks(const BitString& s) const { return defined(s) && entries_[index_of(s)] == 1; }

int CodePrefix::complete_block() const {
  int n = -1;
  while (n + 1 < 63 && block_length(n + 1) <= entries_.size()) ++n;
  return n;
}

std::string CodePrefix::str() const {
  std::string out;
  out.reserve(entries_.size());
  for (auto e : entries_) out.push_back(static_cast<char>('0' + e));
  return out;
}

std::uint64_t block_length(int n) {
  if (n < 0) return 0;
  if (n >= 63) throw Error(ErrorCode::DepthCapExceeded, "block too deep to index");
  return (std::uint64_t{1} << (n + 1)) - 1;
}

BitString column(const CodePrefix& p, std::uint64_t n) {
  std::uint64_t bits = 0;
  int len = 0;
  for (std::uint64_t m = 0; len < BitString::kMaxLen; ++m) {
    std::uint64_t k = pair(n, m);
    if (k >= p.size()) break;
    bits = (bits << 1) | p[k];
    ++len;
  }
  return BitString(bits, len);
}

CodePrefix block_prefix(const CodePrefix& p, int n) {
  std::uint64_t need = block_length(n);
  if (p.size() < need) {
    throw Error(ErrorCode::PrefixTooShort, "prefix of length " + std::to_string(p.size()) +
                                               " has no block " + std::to_string(n));
  }
  return CodePrefix(std::vector<std::uint8_t>(p.entries().begin(),
                                              p.entries().begin() + static_cast<long>(need)));
}

}  // namespace cgmt
