#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lattile/mask.hpp"
#include "lattile/poset.hpp"

namespace lattile {

// ---------------------------------------------------------------------------
// Symmetric chain decomposition, bracketing construction.
//
// View a subset x of [n] as a bracket string: position i holds ')' when
// element i+1 is in x, '(' otherwise. Matching brackets pair up; the
// unmatched positions form a block of ')' followed by a block of '('.
// The chain through x keeps the matched structure fixed and sweeps the
// unmatched positions from all-'(' to all-')' in ascending position order.
// ---------------------------------------------------------------------------

struct BracketInfo {
  std::vector<int> unmatched;  // ascending bit positions
  int closers = 0;             // how many of them are set in x (a prefix)
};

inline BracketInfo bracket_match(Mask x, int n) {
  BracketInfo b;
  std::vector<int> opens;
  for (int i = 0; i < n; ++i) {
    if (!x.test(i)) {
      opens.push_back(i);
    } else if (!opens.empty()) {
      opens.pop_back();
    } else {
      b.unmatched.push_back(i);
      ++b.closers;
    }
  }
  b.unmatched.insert(b.unmatched.end(), opens.begin(), opens.end());
  return b;
}

/// Chain bottom and index within the chain, any n <= 128. The chain is
/// identified by its minimum element.
inline std::pair<Mask, int> scd_locate(Mask x, int n) {
  BracketInfo b = bracket_match(x, n);
  Mask bottom = x;
  for (int i = 0; i < b.closers; ++i) bottom.reset(b.unmatched[static_cast<size_t>(i)]);
  return {bottom, b.closers};
}

struct Scd {
  int n = 0;
  std::vector<std::vector<Mask>> chains;  // each saturated, ascending
};

/// Materialized SCD of 2^[n]; chain count C(n, floor(n/2)).
inline Scd symmetric_chain_decomposition(int n) {
  if (n < 1 || n > 24) throw budget_error("symmetric chain decomposition materializes only for 1 <= n <= 24");
  Scd scd;
  scd.n = n;
  std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t m = 0; m < total; ++m) {
    Mask x{m};
    BracketInfo b = bracket_match(x, n);
    if (b.closers != 0) continue;  // not a chain bottom
    std::vector<Mask> chain;
    chain.reserve(b.unmatched.size() + 1);
    Mask cur = x;
    chain.push_back(cur);
    for (int p : b.unmatched) {
      cur.set(p);
      chain.push_back(cur);
    }
    scd.chains.push_back(std::move(chain));
  }
  return scd;
}

// ---------------------------------------------------------------------------
// Uniform chain partitions: all chains of size h except the first, whose
// size is h + (2^n mod h) in [h, 2h).
// ---------------------------------------------------------------------------

struct ChainPartition {
  int n = 0;
  int h = 0;
  std::vector<std::vector<Mask>> chains;  // chains[0] is the off-size chain C1
};

struct Infeasible {
  std::string reason;
  bool certified = false;  // true: a proof, not search exhaustion
};

struct ChainPartitionResult {
  std::optional<ChainPartition> partition;
  Infeasible infeasible;
  bool ok() const { return partition.has_value(); }
};

struct ChainReport {
  bool pass = false;
  std::uint64_t chain_count = 0;
  std::string violation;  // empty on pass
};

/// Disjoint cover of 2^[n], total order inside every chain, size contract.
inline ChainReport verify_chain_partition(const ChainPartition& cp) {
  ChainReport rep;
  rep.chain_count = cp.chains.size();
  if (cp.n < 0 || cp.n > 24) {
    rep.violation = "host out of verification range";
    return rep;
  }
  std::uint64_t total = std::uint64_t{1} << cp.n;
  std::vector<bool> seen(total, false);
  Mask ground = full_mask(cp.n);
  for (size_t ci = 0; ci < cp.chains.size(); ++ci) {
    const auto& ch = cp.chains[ci];
    if (ch.empty()) {
      rep.violation = "empty chain " + std::to_string(ci);
      return rep;
    }
    std::uint64_t want = ci == 0 ? 0 : static_cast<std::uint64_t>(cp.h);
    if (ci == 0) {
      if (static_cast<int>(ch.size()) < cp.h || static_cast<int>(ch.size()) >= 2 * cp.h) {
        rep.violation = "size contract: |C1|=" + std::to_string(ch.size()) +
                        " outside [h,2h) for h=" + std::to_string(cp.h);
        return rep;
      }
    } else if (ch.size() != want) {
      rep.violation = "size contract: chain " + std::to_string(ci) + " has size " +
                      std::to_string(ch.size()) + ", expected h=" + std::to_string(cp.h);
      return rep;
    }
    for (size_t k = 0; k < ch.size(); ++k) {
      if (!ch[k].subset_of(ground)) {
        rep.violation = "element outside ground set in chain " + std::to_string(ci);
        return rep;
      }
      if (k > 0 && !(ch[k - 1].subset_of(ch[k]) && ch[k - 1] != ch[k])) {
        rep.violation = "chain " + std::to_string(ci) + " not strictly ascending at position " +
                        std::to_string(k);
        return rep;
      }
      std::uint64_t idx = ch[k].lo;
      if (seen[idx]) {
        rep.violation = "element " + to_hex(ch[k]) + " covered twice";
        return rep;
      }
      seen[idx] = true;
    }
  }
  for (std::uint64_t i = 0; i < total; ++i)
    if (!seen[i]) {
      rep.violation = "element " + to_hex(Mask{i}) + " not covered";
      return rep;
    }
  rep.pass = true;
  return rep;
}

/// O(1) point query against a materialized partition.
class ChainLocator {
 public:
  explicit ChainLocator(const ChainPartition& cp) : n_(cp.n) {
    table_.assign(std::uint64_t{1} << cp.n, {0, 0});
    for (std::uint32_t ci = 0; ci < cp.chains.size(); ++ci)
      for (std::uint32_t k = 0; k < cp.chains[ci].size(); ++k)
        table_[cp.chains[ci][k].lo] = {ci, k};
  }
  std::pair<std::uint32_t, std::uint32_t> locate(Mask x) const {
    if (!x.subset_of(full_mask(n_))) throw std::invalid_argument("element outside ground set");
    return table_[x.lo];
  }

 private:
  int n_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> table_;
};

inline std::pair<std::uint32_t, std::uint32_t> chain_of(Mask x, const ChainPartition& cp) {
  for (std::uint32_t ci = 0; ci < cp.chains.size(); ++ci) {
    const auto& ch = cp.chains[ci];
    for (std::uint32_t k = 0; k < ch.size(); ++k)
      if (ch[k] == x) return {ci, k};
  }
  throw std::invalid_argument("element not present in partition");
}

namespace chains_detail {

inline std::uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

// A chain awaiting cutting. `plan` fixes which parts become pool pieces:
//   kWhole           - no pieces, length divisible by h
//   kSingle          - one piece of `a` elements, position flexible
//   kEnds            - piece of `a` at the bottom and `b` at the top
enum class CutPlan { kWhole, kSingle, kEnds };

struct WorkChain {
  std::vector<Mask> elems;
  CutPlan plan = CutPlan::kWhole;
  int a = 0, b = 0;
  int len() const { return static_cast<int>(elems.size()); }
};

struct Piece {
  int chain = -1;
  int size = 0;
  std::vector<int> starts;  // candidate offsets inside the chain
  int chosen = -1;
};

struct PoolState {
  std::vector<WorkChain> chains;
  std::vector<Piece> pieces;
  int h = 0;

  void rebuild_pieces() {
    pieces.clear();
    for (int ci = 0; ci < static_cast<int>(chains.size()); ++ci) {
      const WorkChain& wc = chains[static_cast<size_t>(ci)];
      if (wc.plan == CutPlan::kSingle) {
        Piece p;
        p.chain = ci;
        p.size = wc.a;
        for (int s = 0; s + wc.a <= wc.len(); s += h) p.starts.push_back(s);
        pieces.push_back(std::move(p));
      } else if (wc.plan == CutPlan::kEnds) {
        Piece lo;
        lo.chain = ci;
        lo.size = wc.a;
        lo.starts = {0};
        pieces.push_back(std::move(lo));
        Piece hi;
        hi.chain = ci;
        hi.size = wc.b;
        hi.starts = {wc.len() - wc.b};
        pieces.push_back(std::move(hi));
      }
    }
  }
};

// Piece u placed at start su can sit directly below piece v at start sv.
inline bool fits_below(const PoolState& st, const Piece& u, int su, const Piece& v, int sv) {
  const Mask& utop = st.chains[static_cast<size_t>(u.chain)].elems[static_cast<size_t>(su + u.size - 1)];
  const Mask& vbot = st.chains[static_cast<size_t>(v.chain)].elems[static_cast<size_t>(sv)];
  return utop != vbot && utop.subset_of(vbot);
}

inline bool pairable(const PoolState& st, const Piece& u, const Piece& v) {
  if (u.chain == v.chain) return false;  // same-chain pieces stay where cutting put them
  for (int su : u.starts)
    for (int sv : v.starts)
      if (fits_below(st, u, su, v, sv) || fits_below(st, v, sv, u, su)) return true;
  return false;
}

// Balance piece-size classes so that sizes pair up to h. Moves rewrite the
// cut plan of individual chains; each move changes one class delta by 2.
inline bool balance_classes(PoolState& st) {
  int h = st.h;
  auto counts = [&]() {
    std::vector<int> n_x(static_cast<size_t>(h), 0);
    for (const auto& wc : st.chains) {
      if (wc.plan == CutPlan::kSingle) ++n_x[static_cast<size_t>(wc.a)];
      if (wc.plan == CutPlan::kEnds) {
        ++n_x[static_cast<size_t>(wc.a)];
        ++n_x[static_cast<size_t>(wc.b)];
      }
    }
    return n_x;
  };
  auto find_single = [&](int size, bool need_room) -> int {
    int best = -1;
    for (int ci = 0; ci < static_cast<int>(st.chains.size()); ++ci) {
      const WorkChain& wc = st.chains[static_cast<size_t>(ci)];
      if (wc.plan != CutPlan::kSingle || wc.a != size) continue;
      if (need_room && wc.len() < size + h) continue;
      if (best < 0 || wc.len() > st.chains[static_cast<size_t>(best)].len()) best = ci;
    }
    return best;
  };

  for (int iter = 0; iter < 16 * h + 64; ++iter) {
    std::vector<int> n_x = counts();
    int x_bad = -1;
    for (int x = 1; 2 * x < h; ++x)
      if (n_x[static_cast<size_t>(x)] != n_x[static_cast<size_t>(h - x)]) {
        x_bad = x;
        break;
      }
    bool half_odd = (h % 2 == 0) && (n_x[static_cast<size_t>(h / 2)] % 2 != 0);
    if (x_bad < 0 && !half_odd) return true;

    if (x_bad >= 0) {
      int x = x_bad, y = h - x;
      if (n_x[static_cast<size_t>(y)] > n_x[static_cast<size_t>(x)]) {
        // split a big piece y -> (x, y-x)
        int ci = find_single(y, false);
        if (ci < 0) return false;
        WorkChain& wc = st.chains[static_cast<size_t>(ci)];
        wc.plan = CutPlan::kEnds;
        wc.a = x;
        wc.b = y - x;
      } else {
        // upgrade a small piece x -> (y, 2x), consuming one h-segment
        int ci = find_single(x, true);
        if (ci < 0) return false;
        WorkChain& wc = st.chains[static_cast<size_t>(ci)];
        wc.plan = CutPlan::kEnds;
        wc.a = y;
        wc.b = 2 * x;
      }
    } else {
      // odd count in the self-paired class h/2
      int ci = find_single(h / 2, false);
      if (ci < 0 || h / 2 < 2) return false;
      WorkChain& wc = st.chains[static_cast<size_t>(ci)];
      wc.plan = CutPlan::kEnds;
      wc.a = 1;
      wc.b = h / 2 - 1;
    }
  }
  return false;
}

}  // namespace chains_detail

ChainPartitionResult uniform_chain_partition(int n, int h);

enum class ChainFeasibility { kFeasible, kWidthInfeasible, kTooLong, kUnsupported };

/// What uniform_chain_partition(n, h) will do, without running it.
/// kUnsupported marks width-admissible parameters that no implemented
/// construction reaches.
inline ChainFeasibility chain_partition_feasibility(int n, int h) {
  if (n < 1 || n > 24 || h < 1) return ChainFeasibility::kUnsupported;
  std::uint64_t total = std::uint64_t{1} << n;
  int c1 = h + static_cast<int>(total % static_cast<std::uint64_t>(h));
  if (h > n + 1 || c1 > n + 1) return ChainFeasibility::kTooLong;
  std::uint64_t r = 1 + (total - static_cast<std::uint64_t>(c1)) / static_cast<std::uint64_t>(h);
  if (chains_detail::binom(n, n / 2) > r) return ChainFeasibility::kWidthInfeasible;
  if (h <= 2) return ChainFeasibility::kFeasible;
  if (h == 3 && n >= 5) return ChainFeasibility::kFeasible;
  if (h == 4 && n >= 9) return ChainFeasibility::kFeasible;
  if (n <= 6) return ChainFeasibility::kFeasible;  // exact search range
  return ChainFeasibility::kUnsupported;
}

}  // namespace lattile

#include "lattile/chains_impl.hpp"
