#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lattile {

/// Unsigned exact integer, base 1e9 limbs. Just enough arithmetic for the
/// leftover-bound formulas: multiply, power, compare, decimal output.
class BigUint {
 public:
  BigUint() : limbs_{0} {}
  BigUint(std::uint64_t v) {
    limbs_.clear();
    do {
      limbs_.push_back(static_cast<std::uint32_t>(v % kBase));
      v /= kBase;
    } while (v);
  }

  static BigUint pow(std::uint64_t base, std::uint64_t exp) {
    BigUint r{1};
    BigUint b{base};
    while (exp) {
      if (exp & 1) r = r * b;
      b = b * b;
      exp >>= 1;
    }
    return r;
  }

  friend BigUint operator*(const BigUint& a, const BigUint& b) {
    std::vector<std::uint64_t> acc(a.limbs_.size() + b.limbs_.size(), 0);
    for (size_t i = 0; i < a.limbs_.size(); ++i) {
      std::uint64_t carry = 0;
      for (size_t j = 0; j < b.limbs_.size(); ++j) {
        std::uint64_t cur = acc[i + j] +
                            static_cast<std::uint64_t>(a.limbs_[i]) * b.limbs_[j] + carry;
        acc[i + j] = cur % kBase;
        carry = cur / kBase;
      }
      size_t j = i + b.limbs_.size();
      while (carry) {
        std::uint64_t cur = acc[j] + carry;
        acc[j] = cur % kBase;
        carry = cur / kBase;
        ++j;
      }
    }
    BigUint r;
    r.limbs_.assign(acc.begin(), acc.end());
    r.trim();
    return r;
  }

  friend bool operator<(const BigUint& a, const BigUint& b) {
    if (a.limbs_.size() != b.limbs_.size()) return a.limbs_.size() < b.limbs_.size();
    for (size_t i = a.limbs_.size(); i-- > 0;)
      if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i];
    return false;
  }
  friend bool operator==(const BigUint& a, const BigUint& b) { return a.limbs_ == b.limbs_; }

  static const BigUint& max(const BigUint& a, const BigUint& b) { return a < b ? b : a; }

  std::string str() const {
    std::string s = std::to_string(limbs_.back());
    for (size_t i = limbs_.size() - 1; i-- > 0;) {
      std::string part = std::to_string(limbs_[i]);
      s += std::string(9 - part.size(), '0') + part;
    }
    return s;
  }

 private:
  static constexpr std::uint64_t kBase = 1'000'000'000;
  void trim() {
    while (limbs_.size() > 1 && limbs_.back() == 0) limbs_.pop_back();
  }
  std::vector<std::uint32_t> limbs_;
};

}  // namespace lattile
