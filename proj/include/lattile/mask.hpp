#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace lattile {

/// Subset of a ground set {1..n}, n <= 128. Element k is bit k-1.
struct Mask {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;

  constexpr Mask() = default;
  constexpr Mask(std::uint64_t low) : lo(low) {}
  constexpr Mask(std::uint64_t low, std::uint64_t high) : lo(low), hi(high) {}

  static constexpr Mask bit(int k) {
    return k < 64 ? Mask{std::uint64_t{1} << k, 0}
                  : Mask{0, std::uint64_t{1} << (k - 64)};
  }

  constexpr bool test(int k) const {
    return k < 64 ? (lo >> k) & 1 : (hi >> (k - 64)) & 1;
  }
  constexpr void set(int k) {
    if (k < 64) lo |= std::uint64_t{1} << k;
    else hi |= std::uint64_t{1} << (k - 64);
  }
  constexpr void reset(int k) {
    if (k < 64) lo &= ~(std::uint64_t{1} << k);
    else hi &= ~(std::uint64_t{1} << (k - 64));
  }

  constexpr int count() const { return std::popcount(lo) + std::popcount(hi); }
  constexpr bool empty() const { return lo == 0 && hi == 0; }

  friend constexpr Mask operator|(Mask a, Mask b) { return {a.lo | b.lo, a.hi | b.hi}; }
  friend constexpr Mask operator&(Mask a, Mask b) { return {a.lo & b.lo, a.hi & b.hi}; }
  friend constexpr Mask operator^(Mask a, Mask b) { return {a.lo ^ b.lo, a.hi ^ b.hi}; }
  friend constexpr bool operator==(Mask a, Mask b) { return a.lo == b.lo && a.hi == b.hi; }
  friend constexpr bool operator!=(Mask a, Mask b) { return !(a == b); }
  friend constexpr bool operator<(Mask a, Mask b) {
    return a.hi != b.hi ? a.hi < b.hi : a.lo < b.lo;
  }

  /// Subset-or-equal, the Boolean lattice order.
  constexpr bool subset_of(Mask b) const {
    return (lo & ~b.lo) == 0 && (hi & ~b.hi) == 0;
  }
};

inline std::string to_hex(Mask m) {
  std::ostringstream os;
  os << "0x" << std::hex;
  if (m.hi) {
    os << m.hi;
    os.width(16);
    os.fill('0');
  }
  os << m.lo;
  return os.str();
}

inline Mask mask_from_hex(const std::string& s) {
  if (s.size() < 3 || s[0] != '0' || (s[1] != 'x' && s[1] != 'X'))
    throw std::invalid_argument("mask literal must start with 0x: " + s);
  Mask m;
  for (size_t i = 2; i < s.size(); ++i) {
    char c = s[i];
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    else throw std::invalid_argument("bad hex digit in mask: " + s);
    m.hi = (m.hi << 4) | (m.lo >> 60);
    m.lo = (m.lo << 4) | static_cast<std::uint64_t>(d);
  }
  return m;
}

inline std::ostream& operator<<(std::ostream& os, Mask m) { return os << to_hex(m); }

/// All n low bits set.
constexpr Mask full_mask(int n) {
  if (n <= 0) return {};
  if (n >= 128) return {~std::uint64_t{0}, ~std::uint64_t{0}};
  if (n <= 64) return {n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1, 0};
  return {~std::uint64_t{0}, (std::uint64_t{1} << (n - 64)) - 1};
}

struct MaskHash {
  size_t operator()(Mask m) const {
    std::uint64_t x = m.lo * 0x9e3779b97f4a7c15ull;
    x ^= m.hi + 0x9e3779b97f4a7c15ull + (x << 6) + (x >> 2);
    return static_cast<size_t>(x);
  }
};

}  // namespace lattile
