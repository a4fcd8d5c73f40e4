#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "lattile/rect_tiling.hpp"
#include "lattile/tiling.hpp"

namespace lattile {

/// Threshold policy for the grid constructions. Strict enforces the
/// uniform bounds (c >= a^2*b + 2a for rectangles, c_i >= 12|P|^2 for the
/// induction, first side 2|P|); precise enforces only the inequality each
/// merge step actually uses and skips the doubling when the first target
/// side is already even.
enum class TileMode { kStrict, kPrecise };

namespace grid_detail {

inline std::uint64_t rank_in(const std::vector<int>& dims, const std::vector<int>& coords) {
  std::uint64_t r = 0;
  for (size_t k = 0; k < dims.size(); ++k)
    r = r * static_cast<std::uint64_t>(dims[k]) + static_cast<std::uint64_t>(coords[k] - 1);
  return r;
}

inline std::vector<int> unrank_in(const std::vector<int>& dims, std::uint64_t r) {
  std::vector<int> c(dims.size());
  for (size_t k = dims.size(); k-- > 0;) {
    c[k] = static_cast<int>(r % static_cast<std::uint64_t>(dims[k])) + 1;
    r /= static_cast<std::uint64_t>(dims[k]);
  }
  return c;
}

// Merge-step requirements: step k (k = d .. 2) refines factor c_{k-1} via
// tile_rectangle(g_1*...*g_{k-1}, g_k, c_{k-1}).
inline void validate_steps(const std::vector<int>& g, const std::vector<int>& c) {
  for (size_t k = g.size(); k >= 2; --k) {
    long long a = 1;
    for (size_t i = 0; i + 1 < k; ++i) a *= g[i];
    long long b = g[k - 1];
    long long ck = c[k - 2];
    if (ck % a == 0) continue;
    if (ck < a * a * b + 2 * a)
      throw std::invalid_argument(
          "host dimension " + std::to_string(k - 1) + " too small: need c >= " +
          std::to_string(a * a * b + 2 * a) + " (or " + std::to_string(a) +
          " | c) for the merge step, got " + std::to_string(ck));
  }
}

// Host [g_1*...*g_k] x [c_1] x ... x [c_{k-1}] into copies of the grid
// (g_1..g_k); g_1 even. Tiles carry target-rank order.
inline Tiling even_tiler(const std::vector<int>& g, const std::vector<int>& c) {
  std::uint64_t gprod = 1;
  for (int v : g) gprod *= static_cast<std::uint64_t>(v);
  Tiling t;
  t.target_dims = g;
  t.host_dims = {static_cast<int>(gprod)};
  for (int ci : c) t.host_dims.push_back(ci);

  if (g.size() == 1) {
    // trivial base: the host chain [g_1] is itself one copy
    std::vector<std::uint32_t> tile(static_cast<size_t>(g[0]));
    for (int u = 0; u < g[0]; ++u) tile[static_cast<size_t>(u)] = static_cast<std::uint32_t>(u);
    t.tiles.push_back(std::move(tile));
    return t;
  }

  std::vector<int> merged;
  merged.push_back(g[0] * g[1]);
  for (size_t i = 2; i < g.size(); ++i) merged.push_back(g[i]);
  std::vector<int> c_outer(c.begin(), c.end() - 1);
  int c_last = c.back();

  Tiling outer = even_tiler(merged, c_outer);
  Tiling rect = tile_rectangle(g[0], g[1], c_last);

  // compose: target (u_1..u_d) -> rect gives (m, z) from (u_1, u_2);
  // outer tile gives the prefix-host element for (m, u_3..u_d).
  size_t tile_size = 1;
  for (int v : g) tile_size *= static_cast<size_t>(v);
  t.tiles.reserve(outer.tiles.size() * rect.tiles.size());
  std::vector<int> ucoords(g.size());
  for (const auto& ot : outer.tiles)
    for (const auto& rt : rect.tiles) {
      std::vector<std::uint32_t> tile(tile_size);
      for (std::uint64_t pr = 0; pr < tile_size; ++pr) {
        std::vector<int> u = unrank_in(g, pr);
        int rect_rank = (u[0] - 1) * g[1] + (u[1] - 1);
        std::uint32_t rect_elem = rt[static_cast<size_t>(rect_rank)];
        int m = static_cast<int>(rect_elem) / c_last + 1;
        int z = static_cast<int>(rect_elem) % c_last + 1;
        std::vector<int> pcoords(merged.size());
        pcoords[0] = m;
        for (size_t i = 2; i < g.size(); ++i) pcoords[i - 1] = u[i];
        std::uint32_t prefix = ot[static_cast<size_t>(rank_in(merged, pcoords))];
        tile[static_cast<size_t>(pr)] =
            prefix * static_cast<std::uint32_t>(c_last) + static_cast<std::uint32_t>(z - 1);
      }
      t.tiles.push_back(std::move(tile));
    }
  return t;
}

// Host [first_side] x [c...] into copies of p_dims, where first_side is
// |P| (p_dims[0] even) or 2|P| (doubled first side, then each doubled tile
// splits into two).
inline Tiling tile_first_side(const std::vector<int>& p_dims, const std::vector<int>& c,
                              int first_side) {
  std::uint64_t psize = 1;
  for (int v : p_dims) psize *= static_cast<std::uint64_t>(v);
  if (first_side == static_cast<int>(psize) && p_dims[0] % 2 == 0) {
    validate_steps(p_dims, c);
    return even_tiler(p_dims, c);
  }
  if (first_side != static_cast<int>(2 * psize))
    throw std::invalid_argument("first host side must be |P| (even first target side) or 2|P|");

  std::vector<int> doubled = p_dims;
  doubled[0] *= 2;
  validate_steps(doubled, c);
  Tiling big = even_tiler(doubled, c);

  Tiling t;
  t.target_dims = p_dims;
  t.host_dims = big.host_dims;
  size_t half = 1;
  for (int v : p_dims) half *= static_cast<size_t>(v);
  for (const auto& bt : big.tiles) {
    for (int part = 0; part < 2; ++part) {
      std::vector<std::uint32_t> tile(half);
      for (std::uint64_t pr = 0; pr < half; ++pr) {
        std::vector<int> u = unrank_in(p_dims, pr);
        u[0] += part * p_dims[0];
        tile[static_cast<size_t>(pr)] = bt[static_cast<size_t>(rank_in(doubled, u))];
      }
      t.tiles.push_back(std::move(tile));
    }
  }
  return t;
}

}  // namespace grid_detail

/// Host [first]x[c_1]x...x[c_{d-1}] into copies of grid(p_dims), where the
/// first host side is 2|P| in strict mode and |P| when the first target
/// side is even in precise mode.
inline Tiling tile_grid_first_even(const std::vector<int>& p_dims, const std::vector<int>& c,
                                   TileMode mode = TileMode::kPrecise) {
  if (p_dims.empty()) throw std::invalid_argument("target needs at least one dimension");
  if (c.size() + 1 != p_dims.size())
    throw std::invalid_argument("need one host factor per target dimension beyond the first");
  long long psize = 1;
  for (int v : p_dims) {
    if (v < 1) throw std::invalid_argument("target sides must be positive");
    psize *= v;
  }
  if (mode == TileMode::kStrict) {
    for (size_t i = 0; i < c.size(); ++i)
      if (static_cast<long long>(c[i]) < 12 * psize * psize)
        throw std::invalid_argument("strict mode: host dimension " + std::to_string(i + 1) +
                                    " below the uniform bound 12|P|^2 = " +
                                    std::to_string(12 * psize * psize));
    return grid_detail::tile_first_side(p_dims, c, static_cast<int>(2 * psize));
  }
  int first = p_dims[0] % 2 == 0 ? static_cast<int>(psize) : static_cast<int>(2 * psize);
  return grid_detail::tile_first_side(p_dims, c, first);
}

/// Host [c_1]x...x[c_d] into copies of grid(p_dims): rotate a side
/// divisible by the slab thickness to the front, cut into slabs, and tile
/// each slab. One-dimensional hosts use plain divisibility.
inline Tiling tile_grid(const std::vector<int>& c, const std::vector<int>& p_dims,
                        TileMode mode = TileMode::kPrecise) {
  if (c.size() != p_dims.size())
    throw std::invalid_argument("host and target must have the same dimension");
  long long psize = 1;
  for (int v : p_dims) psize *= v;

  Tiling t;
  t.host_dims = c;
  t.target_dims = p_dims;

  if (c.size() == 1) {
    // exact divisibility case
    if (c[0] % p_dims[0] != 0)
      throw std::invalid_argument("1-dimensional host needs " + std::to_string(p_dims[0]) +
                                  " | " + std::to_string(c[0]));
    for (int s = 0; s < c[0] / p_dims[0]; ++s) {
      std::vector<std::uint32_t> tile(static_cast<size_t>(p_dims[0]));
      for (int u = 0; u < p_dims[0]; ++u)
        tile[static_cast<size_t>(u)] = static_cast<std::uint32_t>(s * p_dims[0] + u);
      t.tiles.push_back(std::move(tile));
    }
    return t;
  }

  // pick the slab side: prefer divisibility by 2|P|, then |P| (even first
  // target side, precise mode only), smallest index wins
  int slab_side = -1, slab_thickness = 0;
  for (size_t j = 0; j < c.size() && slab_side < 0; ++j)
    if (c[j] % (2 * psize) == 0) {
      slab_side = static_cast<int>(j);
      slab_thickness = static_cast<int>(2 * psize);
    }
  if (slab_side < 0 && mode == TileMode::kPrecise && p_dims[0] % 2 == 0)
    for (size_t j = 0; j < c.size() && slab_side < 0; ++j)
      if (c[j] % psize == 0) {
        slab_side = static_cast<int>(j);
        slab_thickness = static_cast<int>(psize);
      }
  if (slab_side < 0)
    throw std::invalid_argument("no host side divisible by 2|P| = " + std::to_string(2 * psize) +
                                (mode == TileMode::kPrecise && p_dims[0] % 2 == 0
                                     ? " (or |P| = " + std::to_string(psize) + ")"
                                     : ""));

  if (mode == TileMode::kStrict)
    for (size_t i = 0; i < c.size(); ++i)
      if (static_cast<long long>(c[i]) < 12 * psize * psize)
        throw std::invalid_argument("strict mode: host dimension " + std::to_string(i) +
                                    " below the uniform bound 12|P|^2 = " +
                                    std::to_string(12 * psize * psize));

  std::vector<int> inner_c;
  for (size_t j = 0; j < c.size(); ++j)
    if (static_cast<int>(j) != slab_side) inner_c.push_back(c[j]);

  Tiling inner = grid_detail::tile_first_side(
      p_dims, inner_c, slab_thickness);
  if (mode == TileMode::kStrict) {
    // thresholds were already checked; strict construction uses 2|P| slabs
  }

  GridPoset host(c);
  std::vector<int> inner_dims = inner.host_dims;
  int slabs = c[static_cast<size_t>(slab_side)] / slab_thickness;
  for (int s = 0; s < slabs; ++s)
    for (const auto& it : inner.tiles) {
      std::vector<std::uint32_t> tile(it.size());
      for (size_t k = 0; k < it.size(); ++k) {
        std::vector<int> ic = grid_detail::unrank_in(inner_dims, it[k]);
        std::vector<int> hc(c.size());
        hc[static_cast<size_t>(slab_side)] = s * slab_thickness + ic[0];
        size_t w = 1;
        for (size_t j = 0; j < c.size(); ++j)
          if (static_cast<int>(j) != slab_side) hc[j] = ic[w++];
        tile[k] = static_cast<std::uint32_t>(host.index(hc));
      }
      t.tiles.push_back(std::move(tile));
    }
  return t;
}

}  // namespace lattile
