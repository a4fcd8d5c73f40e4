#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "lattile/chains.hpp"
#include "lattile/copies.hpp"
#include "lattile/exact_cover.hpp"
#include "lattile/tiling.hpp"

namespace lattile {

struct TilingReport {
  bool pass = false;
  bool disjoint = false;
  bool coverage = false;
  bool tiles_are_copies = false;
  std::uint64_t tile_count = 0;
  std::uint64_t leftover_size = 0;
  std::string violation;
};

/// Ground truth for materialized tilings: disjointness, coverage of the
/// whole host by tiles plus leftover, and a full isomorphism check on
/// every tile.
template <typename Host>
TilingReport verify_tiling_exhaustive(const Host& host, const Tiling& t, const Poset& p) {
  TilingReport rep;
  rep.tile_count = t.tiles.size();
  rep.leftover_size = t.leftover.size();
  std::uint64_t hn = host.size();
  std::vector<std::uint8_t> seen(hn, 0);

  rep.disjoint = true;
  for (size_t ti = 0; ti < t.tiles.size(); ++ti)
    for (std::uint32_t e : t.tiles[ti]) {
      if (e >= hn) {
        rep.violation = "tile " + std::to_string(ti) + " references unknown element " + std::to_string(e);
        return rep;
      }
      if (seen[e]++) {
        rep.disjoint = false;
        rep.violation = "element " + std::to_string(e) + " covered twice (tile " + std::to_string(ti) + ")";
      }
    }
  for (std::uint32_t e : t.leftover) {
    if (e >= hn) {
      rep.violation = "leftover references unknown element " + std::to_string(e);
      return rep;
    }
    if (seen[e]++) {
      rep.disjoint = false;
      rep.violation = "leftover element " + std::to_string(e) + " also covered";
    }
  }

  rep.coverage = true;
  for (std::uint64_t e = 0; e < hn; ++e)
    if (!seen[e]) {
      rep.coverage = false;
      rep.violation = "element " + std::to_string(e) + " not covered";
      break;
    }

  rep.tiles_are_copies = true;
  for (size_t ti = 0; ti < t.tiles.size(); ++ti) {
    std::vector<std::uint64_t> subset(t.tiles[ti].begin(), t.tiles[ti].end());
    if (!is_copy(subset, host, p)) {
      rep.tiles_are_copies = false;
      if (rep.violation.empty())
        rep.violation = "tile " + std::to_string(ti) + " is not a copy of the target";
      break;
    }
  }

  rep.pass = rep.disjoint && rep.coverage && rep.tiles_are_copies;
  return rep;
}

inline std::string report_lines(const TilingReport& rep) {
  std::string out;
  out += std::string("verdict ") + (rep.pass ? "PASS" : "FAIL") + "\n";
  out += "tiles " + std::to_string(rep.tile_count) + "\n";
  out += "leftover " + std::to_string(rep.leftover_size) + "\n";
  if (!rep.violation.empty()) out += "violation check " + rep.violation + "\n";
  return out;
}

struct SearchOutcome {
  std::optional<Tiling> tiling;
  bool infeasible = false;  // search exhausted with no cover
  std::uint64_t nodes_visited = 0;
};

/// Independent tiling oracle: enumerate all copies of P in the host and run
/// exact cover over them. When |host| is not divisible by |P|, a hole
/// budget of |host| mod |P| elements is allowed and reported as leftover.
template <typename Host>
SearchOutcome exact_cover_tiling_search(const Host& host, const Poset& p,
                                        CopyEnumerationBudget budget = {}) {
  std::uint64_t hn = host.size();
  if (hn > (std::uint64_t{1} << 22)) throw budget_error("exact-cover host too large");
  auto copies = enumerate_copies(host, p, budget);
  ExactCover ec(static_cast<int>(hn));
  for (const auto& c : copies) ec.add_row(std::vector<int>(c.begin(), c.end()));
  int holes = static_cast<int>(hn % static_cast<std::uint64_t>(p.size()));
  auto res = ec.solve(holes);

  SearchOutcome out;
  out.nodes_visited = res.nodes_visited;
  if (!res.rows) {
    out.infeasible = res.exhausted;
    return out;
  }
  Tiling t;
  t.target_dims = {};  // caller knows the target; search stores plain sets
  for (int row : *res.rows) {
    std::vector<std::uint64_t> subset(copies[static_cast<size_t>(row)].begin(),
                                      copies[static_cast<size_t>(row)].end());
    auto image = find_embedding(subset, host, p);
    if (!image) throw std::logic_error("exact-cover row is not a copy");
    t.tiles.emplace_back(image->begin(), image->end());
  }
  for (int c : res.holes) t.leftover.push_back(static_cast<std::uint32_t>(c));
  out.tiling = std::move(t);
  return out;
}

struct SampledReport {
  bool pass = false;
  std::uint64_t samples = 0;
  std::uint64_t leftover_hits = 0;
  std::uint64_t distinct_tiles = 0;
  std::string violation;
};

/// Locator round-trip verification for implicit partitions: locate each
/// sampled element, materialize its tile, certify the copy, and re-locate
/// every member. Deterministic per seed; shards may run in parallel.
template <typename AP>
SampledReport verify_implicit_sampled(const AP& ap, std::uint64_t samples, std::uint64_t seed,
                                      int jobs = 1) {
  SampledReport rep;
  rep.samples = samples;
  if (jobs < 1) jobs = 1;
  std::vector<SampledReport> shard(static_cast<size_t>(jobs));
  auto work = [&](int w) {
    SampledReport& r = shard[static_cast<size_t>(w)];
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(w) * 0x9e3779b97f4a7c15ull);
    std::uint64_t count = samples / static_cast<std::uint64_t>(jobs) +
                          (static_cast<std::uint64_t>(w) < samples % static_cast<std::uint64_t>(jobs) ? 1 : 0);
    std::set<std::uint64_t> tiles_seen;
    for (std::uint64_t s = 0; s < count; ++s) {
      Mask x{rng() & full_mask(ap.ground_n()).lo};
      auto loc = ap.locate(x);
      if (!loc) {
        ++r.leftover_hits;
        if (!ap.in_leftover(x)) {
          r.violation = "element " + to_hex(x) + " located as leftover but not in the leftover set";
          return;
        }
        continue;
      }
      auto tile = ap.materialize_tile(loc->tile_id);
      bool member = false;
      for (Mask m : tile)
        if (m == x) member = true;
      if (!member) {
        r.violation = "tile " + std::to_string(loc->tile_id) + " does not contain " + to_hex(x);
        return;
      }
      if (!ap.tile_is_copy(tile)) {
        r.violation = "tile " + std::to_string(loc->tile_id) + " is not a copy of the target";
        return;
      }
      for (Mask m : tile) {
        auto loc2 = ap.locate(m);
        if (!loc2 || loc2->tile_id != loc->tile_id) {
          r.violation = "member " + to_hex(m) + " of tile " + std::to_string(loc->tile_id) +
                        " re-locates elsewhere";
          return;
        }
      }
      tiles_seen.insert(loc->tile_id);
    }
    r.distinct_tiles = tiles_seen.size();
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < jobs; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  for (const auto& r : shard) {
    rep.leftover_hits += r.leftover_hits;
    rep.distinct_tiles += r.distinct_tiles;
    if (!r.violation.empty() && rep.violation.empty()) rep.violation = r.violation;
  }
  rep.pass = rep.violation.empty();
  return rep;
}

}  // namespace lattile
