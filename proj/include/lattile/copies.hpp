#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "lattile/poset.hpp"

namespace lattile {

/// Comparability structure of a poset with at most 64 elements, one
/// uint64 up-set row per element. Used for induced-subposet checks.
struct SmallOrder {
  int n = 0;
  std::vector<std::uint64_t> up;  // up[i] bit j : i <= j (includes i itself)

  template <typename Host>
  static SmallOrder induced(const Host& host, const std::vector<std::uint64_t>& subset) {
    SmallOrder s;
    s.n = static_cast<int>(subset.size());
    s.up.assign(subset.size(), 0);
    for (int i = 0; i < s.n; ++i)
      for (int j = 0; j < s.n; ++j)
        if (host.leq(subset[i], subset[j])) s.up[i] |= std::uint64_t{1} << j;
    return s;
  }

  static SmallOrder of(const Poset& p) {
    SmallOrder s;
    s.n = p.size();
    s.up.assign(static_cast<size_t>(s.n), 0);
    for (int i = 0; i < s.n; ++i)
      for (int j = 0; j < s.n; ++j)
        if (p.leq(i, j)) s.up[i] |= std::uint64_t{1} << j;
    return s;
  }

  int up_degree(int i) const { return std::popcount(up[i]); }
  int down_degree(int i) const {
    int d = 0;
    for (int j = 0; j < n; ++j)
      if ((up[j] >> i) & 1) ++d;
    return d;
  }
};

namespace detail {

/// Backtracking isomorphism search between two SmallOrders with
/// (up-degree, down-degree) signature pruning. Returns the index map
/// a -> b, or nothing.
inline std::optional<std::vector<int>> isomorphism(const SmallOrder& a, const SmallOrder& b) {
  if (a.n != b.n) return std::nullopt;
  if (a.n > 64) throw std::invalid_argument("copy check limited to 64 elements");
  int n = a.n;
  std::vector<std::pair<int, int>> siga(n), sigb(n);
  for (int i = 0; i < n; ++i) siga[i] = {a.up_degree(i), a.down_degree(i)};
  for (int i = 0; i < n; ++i) sigb[i] = {b.up_degree(i), b.down_degree(i)};
  {
    auto sa = siga, sb = sigb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  // order a's elements most-constrained first (rare signature, high degree)
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    return siga[x].first + siga[x].second > siga[y].first + siga[y].second;
  });

  std::vector<int> map(n, -1);
  std::uint64_t used = 0;

  auto consistent = [&](int ai, int bi, int depth) {
    for (int k = 0; k < depth; ++k) {
      int aj = order[k], bj = map[aj];
      bool ab1 = (a.up[ai] >> aj) & 1, ab2 = (a.up[aj] >> ai) & 1;
      bool bb1 = (b.up[bi] >> bj) & 1, bb2 = (b.up[bj] >> bi) & 1;
      if (ab1 != bb1 || ab2 != bb2) return false;
    }
    return true;
  };

  // iterative DFS over candidate assignments
  std::vector<int> choice(n, -1);
  int depth = 0;
  while (true) {
    int ai = order[depth];
    int start = choice[depth] + 1;
    int found = -1;
    for (int bi = start; bi < n; ++bi) {
      if ((used >> bi) & 1) continue;
      if (sigb[bi] != siga[ai]) continue;
      if (!consistent(ai, bi, depth)) continue;
      found = bi;
      break;
    }
    if (found < 0) {
      choice[depth] = -1;
      if (depth == 0) return std::nullopt;
      --depth;
      used &= ~(std::uint64_t{1} << map[order[depth]]);
      map[order[depth]] = -1;
      continue;
    }
    choice[depth] = found;
    map[ai] = found;
    used |= std::uint64_t{1} << found;
    if (depth + 1 == n) return map;
    ++depth;
  }
}

inline bool isomorphic(const SmallOrder& a, const SmallOrder& b) {
  return isomorphism(a, b).has_value();
}

}  // namespace detail

/// True iff the order induced on `subset` inside `host` is isomorphic to P.
template <typename Host>
bool is_copy(const std::vector<std::uint64_t>& subset, const Host& host, const Poset& p) {
  if (static_cast<int>(subset.size()) != p.size()) return false;
  for (auto e : subset)
    if (e >= host.size()) throw std::invalid_argument("subset references out-of-range element");
  return detail::isomorphic(SmallOrder::induced(host, subset), SmallOrder::of(p));
}

/// Reorder a copy so that position i holds the image of P's element i.
template <typename Host>
std::optional<std::vector<std::uint64_t>> find_embedding(const std::vector<std::uint64_t>& subset,
                                                         const Host& host, const Poset& p) {
  if (static_cast<int>(subset.size()) != p.size()) return std::nullopt;
  auto m = detail::isomorphism(SmallOrder::of(p), SmallOrder::induced(host, subset));
  if (!m) return std::nullopt;
  std::vector<std::uint64_t> image(subset.size());
  for (size_t i = 0; i < subset.size(); ++i)
    image[i] = subset[static_cast<size_t>((*m)[i])];
  return image;
}

struct CopyEnumerationBudget {
  std::uint64_t max_nodes = 20'000'000;  // backtracking nodes visited
  std::uint64_t max_copies = 2'000'000;
};

/// All copies of P in the host, as sorted element lists, duplicate-free,
/// in lexicographic order. Enumerates order-embeddings and dedups by image.
template <typename Host>
std::vector<std::vector<std::uint64_t>> enumerate_copies(
    const Host& host, const Poset& p, CopyEnumerationBudget budget = {}) {
  int k = p.size();
  std::uint64_t hn = host.size();
  if (k == 0) return {{}};
  SmallOrder po = SmallOrder::of(p);

  // embed in decreasing-degree order; ties by index for determinism
  std::vector<int> order(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    int dx = po.up_degree(x) + po.down_degree(x);
    int dy = po.up_degree(y) + po.down_degree(y);
    return dx != dy ? dx > dy : x < y;
  });

  std::set<std::vector<std::uint64_t>> images;
  std::vector<std::uint64_t> map(static_cast<size_t>(k));
  std::uint64_t nodes = 0;

  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == k) {
      std::vector<std::uint64_t> img(map);
      std::sort(img.begin(), img.end());
      images.insert(std::move(img));
      if (images.size() > budget.max_copies)
        throw budget_error("copy enumeration exceeded the copy budget");
      return;
    }
    int pi = order[depth];
    for (std::uint64_t cand = 0; cand < hn; ++cand) {
      if (++nodes > budget.max_nodes)
        throw budget_error("copy enumeration exceeded the search budget");
      bool ok = true;
      for (int d = 0; d < depth && ok; ++d) {
        int pj = order[d];
        if (map[static_cast<size_t>(pj)] == cand) { ok = false; break; }
        // pi <= pj in P must hold iff cand <= map[pj] in the host, both ways
        bool p1 = (po.up[pi] >> pj) & 1, p2 = (po.up[pj] >> pi) & 1;
        bool h1 = host.leq(cand, map[static_cast<size_t>(pj)]);
        bool h2 = host.leq(map[static_cast<size_t>(pj)], cand);
        if (p1 != h1 || p2 != h2) ok = false;
      }
      if (!ok) continue;
      map[static_cast<size_t>(pi)] = cand;
      self(self, depth + 1);
    }
  };
  rec(rec, 0);
  return {images.begin(), images.end()};
}

/// Smallest d such that 2^[d] contains a copy of P, with a witness
/// embedding (masks over [d], aligned with P's element indices).
struct CubeEmbedding {
  int d = 0;
  std::vector<std::uint64_t> witness;  // witness[i] = image of P element i
};

inline CubeEmbedding minimal_cube_dim(const Poset& p) {
  if (p.size() < 1) throw std::invalid_argument("minimal_cube_dim needs a nonempty poset");
  if (p.size() == 1) return {0, {0}};
  for (int d = 1;; ++d) {
    BooleanLattice host(d);
    if (host.size() < static_cast<std::uint64_t>(p.size())) continue;
    // direct embedding search preserving P element indices
    SmallOrder po = SmallOrder::of(p);
    int k = p.size();
    std::vector<std::uint64_t> map(static_cast<size_t>(k));
    auto rec = [&](auto&& self, int depth) -> bool {
      if (depth == k) return true;
      for (std::uint64_t cand = 0; cand < host.size(); ++cand) {
        bool ok = true;
        for (int d2 = 0; d2 < depth && ok; ++d2) {
          if (map[static_cast<size_t>(d2)] == cand) { ok = false; break; }
          bool p1 = (po.up[depth] >> d2) & 1, p2 = (po.up[d2] >> depth) & 1;
          bool h1 = host.leq(cand, map[static_cast<size_t>(d2)]);
          bool h2 = host.leq(map[static_cast<size_t>(d2)], cand);
          if (p1 != h1 || p2 != h2) ok = false;
        }
        if (!ok) continue;
        map[static_cast<size_t>(depth)] = cand;
        if (self(self, depth + 1)) return true;
      }
      return false;
    };
    if (rec(rec, 0)) return {d, map};
    // d <= |P| always suffices, so the loop terminates
  }
}

}  // namespace lattile
