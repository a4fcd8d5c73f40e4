#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lattile/poset.hpp"

namespace lattile {

/// A tiling of a grid host into copies of a grid target. Each tile lists
/// host element ids in the target's row-major rank order, so tile[k] is
/// the image of the target element with rank k under the embedding.
struct Tiling {
  std::vector<int> host_dims;
  std::vector<int> target_dims;
  std::vector<std::vector<std::uint32_t>> tiles;
  std::vector<std::uint32_t> leftover;
};

/// Tile id and the position (target rank) a host element occupies in it.
struct TilePosition {
  std::uint32_t tile_id = 0;
  std::uint32_t position = 0;
  friend bool operator==(const TilePosition&, const TilePosition&) = default;
};

inline std::string dims_to_string(const std::vector<int>& dims) {
  std::string s;
  for (size_t i = 0; i < dims.size(); ++i) {
    if (i) s += 'x';
    s += std::to_string(dims[i]);
  }
  return s;
}

}  // namespace lattile
