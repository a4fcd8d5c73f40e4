#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "lattile/tiling.hpp"

namespace lattile {

// ---------------------------------------------------------------------------
// Partition of the rectangle [ab] x [c] into c copies of [a] x [b], for a
// even and c >= a^2*b + 2a (any c divisible by a works directly). Two block
// families A_{i,j}, B_{i,j} cover everything except a low strip S and a
// high strip T; switching the maximum of some A-tiles into T and the
// minimum of some B-tiles into S frees a set X that falls apart into r
// staircase chains, each again a copy of [a] x [b].
// ---------------------------------------------------------------------------

/// Parameters of the construction; q and r from c = a*q + r, 0 <= r < a.
struct RectParams {
  int a = 0, b = 0, c = 0;
  int q = 0;          // floor(c / a)
  int r = 0;          // c mod a
  int eps = 0;        // 1 if r == 1, else 2 (meaningful only when r >= 1)
};

inline RectParams rect_params(int a, int b, int c) {
  if (a < 1 || b < 1 || c < 1) throw std::invalid_argument("rectangle sides must be positive");
  if (a % 2 != 0) throw std::invalid_argument("first target side must be even, got a=" + std::to_string(a));
  RectParams p;
  p.a = a;
  p.b = b;
  p.c = c;
  p.q = c / a;
  p.r = c % a;
  p.eps = p.r == 1 ? 1 : 2;
  if (p.r != 0 && c < a * a * b + 2 * a)
    throw std::invalid_argument("need c >= a^2*b + 2a = " + std::to_string(a * a * b + 2 * a) +
                                " (or a | c), got c=" + std::to_string(c));
  return p;
}

namespace rect_detail {

// host index of the point (x, y) in [ab] x [c], row-major, y fastest
inline std::uint32_t host_index(const RectParams& p, int x, int y) {
  return static_cast<std::uint32_t>((x - 1) * p.c + (y - 1));
}

inline int rank_of(const RectParams& p, int u, int v) { return (u - 1) * p.b + (v - 1); }

// tile ids: A tiles first, then B tiles, then the patch chains C_k
inline std::uint32_t a_tile_id(const RectParams& p, int i, int j) {
  return static_cast<std::uint32_t>((i - 1) * p.q + (j - 1));
}
inline std::uint32_t b_tile_id(const RectParams& p, int i, int j) {
  return static_cast<std::uint32_t>(p.a / 2 * p.q + (i - 1) * p.q + (j - 1));
}
inline std::uint32_t c_tile_id(const RectParams& p, int k) {
  return static_cast<std::uint32_t>(p.a * p.q + (k - 1));
}

// bijections between the switch index set [a/2] x [br] and the strips
inline std::pair<int, int> phi_into_T(const RectParams& p, int i, int j) {
  int k = (i - 1) * p.b * p.r + (j - 1);
  return {p.a * p.b / 2 + 1 + k / p.r, p.a * p.q + 1 + k % p.r};
}
inline std::pair<int, int> psi_into_S(const RectParams& p, int i, int j) {
  int k = (i - 1) * p.b * p.r + (j - 1);
  return {1 + k / p.r, 1 + k % p.r};
}

inline std::pair<int, int> x_switch(const RectParams& p, int i, int j) {
  return {p.b * i, p.r + p.a * j};  // maximum of A_{i,j}
}
inline std::pair<int, int> y_switch(const RectParams& p, int i, int j) {
  return {p.a * p.b / 2 + p.b * (i - 1) + 1, p.a * (j + p.eps - 1) + 1};  // minimum of B_{i,j+eps}
}

}  // namespace rect_detail

/// Materialized tiling of [ab] x [c]: exactly c tiles, empty leftover.
inline Tiling tile_rectangle(int a, int b, int c) {
  using namespace rect_detail;
  RectParams p = rect_params(a, b, c);
  Tiling t;
  t.host_dims = {a * b, c};
  t.target_dims = {a, b};
  t.tiles.assign(static_cast<size_t>(c), {});

  if (p.r == 0) {
    // slabs of thickness a along y; each slab holds a side-by-side tiles
    for (int s = 1; s <= c / a; ++s)
      for (int i = 1; i <= a; ++i) {
        std::vector<std::uint32_t> tile(static_cast<size_t>(a * b));
        for (int u = 1; u <= a; ++u)
          for (int v = 1; v <= b; ++v)
            tile[static_cast<size_t>(rank_of(p, u, v))] =
                host_index(p, b * (i - 1) + v, a * (s - 1) + u);
        t.tiles[static_cast<size_t>((s - 1) * a + (i - 1))] = std::move(tile);
      }
    return t;
  }

  // A and B block families
  for (int i = 1; i <= a / 2; ++i)
    for (int j = 1; j <= p.q; ++j) {
      std::vector<std::uint32_t> ta(static_cast<size_t>(a * b)), tb(static_cast<size_t>(a * b));
      for (int u = 1; u <= a; ++u)
        for (int v = 1; v <= b; ++v) {
          ta[static_cast<size_t>(rank_of(p, u, v))] =
              host_index(p, b * (i - 1) + v, p.r + p.a * (j - 1) + u);
          tb[static_cast<size_t>(rank_of(p, u, v))] =
              host_index(p, a * b / 2 + b * (i - 1) + v, p.a * (j - 1) + u);
        }
      t.tiles[a_tile_id(p, i, j)] = std::move(ta);
      t.tiles[b_tile_id(p, i, j)] = std::move(tb);
    }

  // switches: replace the maximum of A_{i,j} by phi(i,j) in T and the
  // minimum of B_{i,j+eps} by psi(i,j) in S, for (i,j) in [a/2] x [br]
  for (int i = 1; i <= a / 2; ++i)
    for (int j = 1; j <= b * p.r; ++j) {
      auto [tx, ty] = phi_into_T(p, i, j);
      t.tiles[a_tile_id(p, i, j)][static_cast<size_t>(rank_of(p, a, b))] = host_index(p, tx, ty);
      auto [sx, sy] = psi_into_S(p, i, j);
      t.tiles[b_tile_id(p, i, j + p.eps)][0] = host_index(p, sx, sy);
    }

  // the freed switch points assemble into r staircase chains
  for (int k = 1; k <= p.r; ++k) {
    std::vector<std::uint32_t> tc(static_cast<size_t>(a * b));
    for (int u = 1; u <= a; ++u)
      for (int v = 1; v <= b; ++v) {
        int j = p.b * (k - 1) + v;
        auto [x, y] = u <= a / 2 ? x_switch(p, u, j) : y_switch(p, u - a / 2, j);
        tc[static_cast<size_t>(rank_of(p, u, v))] = host_index(p, x, y);
      }
    t.tiles[c_tile_id(p, k)] = std::move(tc);
  }
  return t;
}

/// Constant-time inverse of tile_rectangle: which tile holds (x, y), and at
/// which target rank. Case analysis over the strips, the switched corners
/// and the block interiors.
inline TilePosition rect_tile_lookup(std::pair<int, int> coord, const RectParams& p) {
  using namespace rect_detail;
  auto [x, y] = coord;
  if (x < 1 || x > p.a * p.b || y < 1 || y > p.c)
    throw std::invalid_argument("coordinate outside [ab] x [c]");

  if (p.r == 0) {
    int s = (y - 1) / p.a + 1, i = (x - 1) / p.b + 1;
    int u = (y - 1) % p.a + 1, v = (x - 1) % p.b + 1;
    return {static_cast<std::uint32_t>((s - 1) * p.a + (i - 1)),
            static_cast<std::uint32_t>(rank_of(p, u, v))};
  }

  if (x <= p.a * p.b / 2) {
    if (y <= p.r) {
      // strip S: the switched-in minimum of some B tile
      int k = (x - 1) * p.r + (y - 1);
      int i = k / (p.b * p.r) + 1, j = k % (p.b * p.r) + 1;
      return {b_tile_id(p, i, j + p.eps), 0};
    }
    int i = (x - 1) / p.b + 1, j = (y - p.r - 1) / p.a + 1;
    if (j <= p.b * p.r && x == p.b * i && y == p.r + p.a * j) {
      // freed maximum x_{i,j}: lives in patch chain C_k
      int k = (j - 1) / p.b + 1;
      int v = (j - 1) % p.b + 1;
      return {c_tile_id(p, k), static_cast<std::uint32_t>(rank_of(p, i, v))};
    }
    int u = (y - p.r - 1) % p.a + 1, v = (x - 1) % p.b + 1;
    return {a_tile_id(p, i, j), static_cast<std::uint32_t>(rank_of(p, u, v))};
  }

  if (y > p.a * p.q) {
    // strip T: the switched-in maximum of some A tile
    int k = (x - p.a * p.b / 2 - 1) * p.r + (y - p.a * p.q - 1);
    int i = k / (p.b * p.r) + 1, j = k % (p.b * p.r) + 1;
    return {a_tile_id(p, i, j), static_cast<std::uint32_t>(rank_of(p, p.a, p.b))};
  }
  int i = (x - p.a * p.b / 2 - 1) / p.b + 1, j = (y - 1) / p.a + 1;
  if (x == p.a * p.b / 2 + p.b * (i - 1) + 1 && y == p.a * (j - 1) + 1 && j - p.eps >= 1 &&
      j - p.eps <= p.b * p.r) {
    // freed minimum y_{i,j-eps}: lives in patch chain C_k
    int m = j - p.eps;
    int k = (m - 1) / p.b + 1;
    int v = (m - 1) % p.b + 1;
    return {c_tile_id(p, k), static_cast<std::uint32_t>(rank_of(p, i + p.a / 2, v))};
  }
  int u = (y - 1) % p.a + 1, v = (x - p.a * p.b / 2 - 1) % p.b + 1;
  return {b_tile_id(p, i, j), static_cast<std::uint32_t>(rank_of(p, u, v))};
}

}  // namespace lattile
