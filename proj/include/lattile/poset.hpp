#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "lattile/mask.hpp"

namespace lattile {

/// Explicit enumeration of hosts is refused beyond this many elements;
/// bigger hosts are reachable only through structured comparators.
constexpr std::uint64_t kMaterializationBudget = std::uint64_t{1} << 24;

class budget_error : public std::runtime_error {
 public:
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

/// Finite poset with the full reachability ("leq") matrix, one bitset row
/// per element. Intended for small posets: targets P, induced subposets,
/// parsed cover-relation files.
class Poset {
 public:
  Poset() = default;

  /// From an explicit leq predicate. Validates the partial-order axioms.
  template <typename Leq>
  static Poset from_leq(int n, Leq leq) {
    Poset p;
    p.init(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (leq(i, j)) p.set_leq(i, j);
    p.validate();
    return p;
  }

  /// From covering relations; takes the reflexive-transitive closure.
  static Poset from_covers(int n, const std::vector<std::pair<int, int>>& covers) {
    Poset p;
    p.init(n);
    std::vector<std::vector<int>> up(n);
    for (auto [a, b] : covers) {
      if (a < 0 || a >= n || b < 0 || b >= n)
        throw std::invalid_argument("cover relation references out-of-range element");
      up[a].push_back(b);
    }
    // DFS closure from each element
    for (int i = 0; i < n; ++i) {
      std::vector<int> stack{i};
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : up[v])
          if (!p.leq(i, w)) {
            p.set_leq(i, w);
            stack.push_back(w);
          }
      }
    }
    p.validate();
    return p;
  }

  int size() const { return n_; }
  bool leq(int i, int j) const {
    return (rows_[static_cast<size_t>(i) * words_ + static_cast<size_t>(j >> 6)] >>
            (j & 63)) & 1;
  }

  bool maximal(int i) const {
    for (int j = 0; j < n_; ++j)
      if (j != i && leq(i, j)) return false;
    return true;
  }
  bool minimal(int i) const {
    for (int j = 0; j < n_; ++j)
      if (j != i && leq(j, i)) return false;
    return true;
  }

  /// Index of the unique maximum, or -1 if maximal elements are not unique.
  int unique_max() const {
    int m = -1;
    for (int i = 0; i < n_; ++i)
      if (maximal(i)) {
        if (m >= 0) return -1;
        m = i;
      }
    return m;
  }
  int unique_min() const {
    int m = -1;
    for (int i = 0; i < n_; ++i)
      if (minimal(i)) {
        if (m >= 0) return -1;
        m = i;
      }
    return m;
  }

 private:
  void init(int n) {
    if (n < 0) throw std::invalid_argument("poset size must be nonnegative");
    n_ = n;
    words_ = static_cast<size_t>((n + 63) / 64);
    rows_.assign(static_cast<size_t>(n) * words_, 0);
    for (int i = 0; i < n; ++i) set_leq(i, i);
  }
  void set_leq(int i, int j) {
    rows_[static_cast<size_t>(i) * words_ + static_cast<size_t>(j >> 6)] |=
        std::uint64_t{1} << (j & 63);
  }
  void validate() const {
    for (int i = 0; i < n_; ++i) {
      if (!leq(i, i)) throw std::invalid_argument("relation is not reflexive");
      for (int j = 0; j < n_; ++j) {
        if (i != j && leq(i, j) && leq(j, i))
          throw std::invalid_argument("relation is not antisymmetric");
        if (!leq(i, j)) continue;
        // transitivity: row_j must be a subset of row_i
        for (size_t w = 0; w < words_; ++w)
          if (rows_[static_cast<size_t>(j) * words_ + w] &
              ~rows_[static_cast<size_t>(i) * words_ + w])
            throw std::invalid_argument("relation is not transitive");
      }
    }
  }

  int n_ = 0;
  size_t words_ = 0;
  std::vector<std::uint64_t> rows_;
};

/// d-dimensional grid [a_1]x...x[a_d] with componentwise order.
/// Element indexing is row-major with the LAST coordinate fastest:
/// index((c_1..c_d)) = ((c_1-1)*a_2 + (c_2-1))*a_3 + ... , coordinates 1-based.
struct GridPoset {
  std::vector<int> dims;

  explicit GridPoset(std::vector<int> d) : dims(std::move(d)) {
    if (dims.empty()) throw std::invalid_argument("grid needs at least one dimension");
    for (int a : dims)
      if (a < 1) throw std::invalid_argument("grid side lengths must be positive");
  }

  std::uint64_t size() const {
    std::uint64_t s = 1;
    for (int a : dims) s *= static_cast<std::uint64_t>(a);
    return s;
  }

  std::vector<int> coords(std::uint64_t idx) const {
    std::vector<int> c(dims.size());
    for (size_t k = dims.size(); k-- > 0;) {
      c[k] = static_cast<int>(idx % static_cast<std::uint64_t>(dims[k])) + 1;
      idx /= static_cast<std::uint64_t>(dims[k]);
    }
    return c;
  }

  std::uint64_t index(const std::vector<int>& c) const {
    std::uint64_t idx = 0;
    for (size_t k = 0; k < dims.size(); ++k) {
      if (c[k] < 1 || c[k] > dims[k]) throw std::invalid_argument("grid coordinate out of range");
      idx = idx * static_cast<std::uint64_t>(dims[k]) + static_cast<std::uint64_t>(c[k] - 1);
    }
    return idx;
  }

  bool leq(std::uint64_t i, std::uint64_t j) const {
    for (size_t k = dims.size(); k-- > 0;) {
      auto a = static_cast<std::uint64_t>(dims[k]);
      if (i % a > j % a) return false;
      i /= a;
      j /= a;
    }
    return true;
  }
};

/// Boolean lattice 2^[n] viewed as a host; element index == mask.
struct BooleanLattice {
  int n;
  explicit BooleanLattice(int ground_n) : n(ground_n) {
    if (n < 0 || n > 63) throw std::invalid_argument("indexed Boolean lattice needs 0 <= n <= 63");
  }
  std::uint64_t size() const { return std::uint64_t{1} << n; }
  bool leq(std::uint64_t i, std::uint64_t j) const { return (i & ~j) == 0; }
};

inline GridPoset grid_poset(std::vector<int> dims) { return GridPoset(std::move(dims)); }

inline Poset materialize(const GridPoset& g) {
  if (g.size() > kMaterializationBudget)
    throw budget_error("grid too large to materialize: " + std::to_string(g.size()) + " elements");
  return Poset::from_leq(static_cast<int>(g.size()),
                         [&](int i, int j) { return g.leq(i, j); });
}

inline Poset materialize(const BooleanLattice& b) {
  if (b.size() > kMaterializationBudget) throw budget_error("Boolean lattice too large to materialize");
  return Poset::from_leq(static_cast<int>(b.size()),
                         [&](int i, int j) { return b.leq(i, j); });
}

inline Poset chain_poset(int n) { return materialize(GridPoset({n})); }

inline Poset cartesian_product(const Poset& p, const Poset& q) {
  std::uint64_t sz = static_cast<std::uint64_t>(p.size()) * static_cast<std::uint64_t>(q.size());
  if (sz > kMaterializationBudget) throw budget_error("cartesian product exceeds materialization budget");
  int nq = q.size();
  return Poset::from_leq(static_cast<int>(sz), [&](int i, int j) {
    return p.leq(i / nq, j / nq) && q.leq(i % nq, j % nq);
  });
}

/// Two k-element antichains, every element of the lower one below every
/// element of the upper one. Elements 0..k-1 are the lower antichain.
inline Poset s2k_poset(int k) {
  if (k < 1) throw std::invalid_argument("s2k poset needs k >= 1");
  return Poset::from_leq(2 * k, [&](int i, int j) {
    if (i == j) return true;
    return i < k && j >= k;
  });
}

inline bool has_unique_max_min(const Poset& p) {
  return p.unique_max() >= 0 && p.unique_min() >= 0;
}

}  // namespace lattile
