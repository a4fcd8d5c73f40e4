#pragma once

// Implementation of uniform_chain_partition: cut the symmetric chain
// decomposition into h-segments plus leftover pieces, then repair by
// pairing comparable pieces into full chains. Included by chains.hpp.

#include <cassert>
#include <functional>

namespace lattile {
namespace chains_detail {

// --- bipartite maximum matching (Hopcroft-Karp + full-scan augmenting) ----

struct Bipartite {
  int nl = 0, nr = 0;
  std::vector<std::vector<int>> adj;  // left -> right
  std::vector<int> ml, mr;

  explicit Bipartite(int l, int r) : nl(l), nr(r), adj(static_cast<size_t>(l)) {}

  int solve() {
    ml.assign(static_cast<size_t>(nl), -1);
    mr.assign(static_cast<size_t>(nr), -1);
    int matched = 0;
    std::vector<int> dist(static_cast<size_t>(nl));
    auto bfs = [&]() {
      std::vector<int> q;
      for (int u = 0; u < nl; ++u) {
        dist[static_cast<size_t>(u)] = ml[static_cast<size_t>(u)] < 0 ? 0 : -1;
        if (ml[static_cast<size_t>(u)] < 0) q.push_back(u);
      }
      bool reachable = false;
      for (size_t qi = 0; qi < q.size(); ++qi) {
        int u = q[qi];
        for (int v : adj[static_cast<size_t>(u)]) {
          int w = mr[static_cast<size_t>(v)];
          if (w < 0) reachable = true;
          else if (dist[static_cast<size_t>(w)] < 0) {
            dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(u)] + 1;
            q.push_back(w);
          }
        }
      }
      return reachable;
    };
    std::function<bool(int)> dfs = [&](int u) {
      for (int v : adj[static_cast<size_t>(u)]) {
        int w = mr[static_cast<size_t>(v)];
        if (w < 0 || (dist[static_cast<size_t>(w)] == dist[static_cast<size_t>(u)] + 1 && dfs(w))) {
          ml[static_cast<size_t>(u)] = v;
          mr[static_cast<size_t>(v)] = u;
          return true;
        }
      }
      dist[static_cast<size_t>(u)] = -1;
      return false;
    };
    while (bfs())
      for (int u = 0; u < nl; ++u)
        if (ml[static_cast<size_t>(u)] < 0 && dfs(u)) ++matched;
    return matched;
  }
};

// --- general maximum matching (Edmonds blossom, O(V^3)) -------------------

class Blossom {
 public:
  explicit Blossom(int n) : n_(n), adj_(static_cast<size_t>(n)) {}
  void add_edge(int u, int v) {
    adj_[static_cast<size_t>(u)].push_back(v);
    adj_[static_cast<size_t>(v)].push_back(u);
  }
  std::vector<int> solve() {
    match_.assign(static_cast<size_t>(n_), -1);
    for (int u = 0; u < n_; ++u)
      if (match_[static_cast<size_t>(u)] < 0)
        for (int v : adj_[static_cast<size_t>(u)])
          if (match_[static_cast<size_t>(v)] < 0) {
            match_[static_cast<size_t>(u)] = v;
            match_[static_cast<size_t>(v)] = u;
            break;
          }
    for (int u = 0; u < n_; ++u)
      if (match_[static_cast<size_t>(u)] < 0) augment(u);
    return match_;
  }

 private:
  int n_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> match_, p_, base_;
  std::vector<bool> used_, blossom_;

  int lca(int a, int b) {
    std::vector<bool> seen(static_cast<size_t>(n_), false);
    for (;;) {
      a = base_[static_cast<size_t>(a)];
      seen[static_cast<size_t>(a)] = true;
      if (match_[static_cast<size_t>(a)] < 0) break;
      a = p_[static_cast<size_t>(match_[static_cast<size_t>(a)])];
    }
    for (;;) {
      b = base_[static_cast<size_t>(b)];
      if (seen[static_cast<size_t>(b)]) return b;
      b = p_[static_cast<size_t>(match_[static_cast<size_t>(b)])];
    }
  }
  void mark_path(int v, int b, int child) {
    while (base_[static_cast<size_t>(v)] != b) {
      int mv = match_[static_cast<size_t>(v)];
      blossom_[static_cast<size_t>(base_[static_cast<size_t>(v)])] = true;
      blossom_[static_cast<size_t>(base_[static_cast<size_t>(mv)])] = true;
      p_[static_cast<size_t>(v)] = child;
      child = mv;
      v = p_[static_cast<size_t>(mv)];
    }
  }
  void augment(int root) {
    used_.assign(static_cast<size_t>(n_), false);
    p_.assign(static_cast<size_t>(n_), -1);
    base_.resize(static_cast<size_t>(n_));
    for (int i = 0; i < n_; ++i) base_[static_cast<size_t>(i)] = i;
    used_[static_cast<size_t>(root)] = true;
    std::vector<int> q{root};
    for (size_t qi = 0; qi < q.size(); ++qi) {
      int v = q[qi];
      for (int to : adj_[static_cast<size_t>(v)]) {
        if (base_[static_cast<size_t>(v)] == base_[static_cast<size_t>(to)] ||
            match_[static_cast<size_t>(v)] == to)
          continue;
        if (to == root ||
            (match_[static_cast<size_t>(to)] >= 0 && p_[static_cast<size_t>(match_[static_cast<size_t>(to)])] >= 0)) {
          int curbase = lca(v, to);
          blossom_.assign(static_cast<size_t>(n_), false);
          mark_path(v, curbase, to);
          mark_path(to, curbase, v);
          for (int i = 0; i < n_; ++i)
            if (blossom_[static_cast<size_t>(base_[static_cast<size_t>(i)])]) {
              base_[static_cast<size_t>(i)] = curbase;
              if (!used_[static_cast<size_t>(i)]) {
                used_[static_cast<size_t>(i)] = true;
                q.push_back(i);
              }
            }
        } else if (p_[static_cast<size_t>(to)] < 0) {
          p_[static_cast<size_t>(to)] = v;
          if (match_[static_cast<size_t>(to)] < 0) {
            // augmenting path found; flip it
            int u = to;
            while (u >= 0) {
              int pv = p_[static_cast<size_t>(u)], ppv = match_[static_cast<size_t>(pv)];
              match_[static_cast<size_t>(u)] = pv;
              match_[static_cast<size_t>(pv)] = u;
              u = ppv;
            }
            return;
          }
          int m = match_[static_cast<size_t>(to)];
          used_[static_cast<size_t>(m)] = true;
          q.push_back(m);
        }
      }
    }
  }
};

// --- piece matching driver -------------------------------------------------

struct MatchResult {
  bool perfect = false;
  std::vector<std::pair<int, int>> pairs;  // piece indices
  std::vector<int> unmatched;
};

inline MatchResult match_pieces(const PoolState& st) {
  MatchResult res;
  int h = st.h;
  std::vector<std::vector<int>> by_size(static_cast<size_t>(h));
  for (int i = 0; i < static_cast<int>(st.pieces.size()); ++i)
    by_size[static_cast<size_t>(st.pieces[static_cast<size_t>(i)].size)].push_back(i);

  for (int x = 1; 2 * x <= h; ++x) {
    int y = h - x;
    if (y >= h) continue;  // x paired with h-x only; sizes are < h
    const auto& xs = by_size[static_cast<size_t>(x)];
    const auto& ys = by_size[static_cast<size_t>(y)];
    if (x == y) {
      if (xs.empty()) continue;
      Blossom bm(static_cast<int>(xs.size()));
      for (size_t i = 0; i < xs.size(); ++i)
        for (size_t j = i + 1; j < xs.size(); ++j)
          if (pairable(st, st.pieces[static_cast<size_t>(xs[i])], st.pieces[static_cast<size_t>(xs[j])]))
            bm.add_edge(static_cast<int>(i), static_cast<int>(j));
      std::vector<int> m = bm.solve();
      for (size_t i = 0; i < xs.size(); ++i) {
        if (m[i] < 0) res.unmatched.push_back(xs[i]);
        else if (static_cast<size_t>(m[i]) > i) res.pairs.push_back({xs[i], xs[static_cast<size_t>(m[i])]});
      }
    } else {
      if (xs.empty() && ys.empty()) continue;
      if (xs.size() != ys.size()) {
        // class counts drifted; report everyone unmatched so escalation can act
        for (int i : xs) res.unmatched.push_back(i);
        for (int i : ys) res.unmatched.push_back(i);
        continue;
      }
      Bipartite bp(static_cast<int>(xs.size()), static_cast<int>(ys.size()));
      for (size_t i = 0; i < xs.size(); ++i)
        for (size_t j = 0; j < ys.size(); ++j)
          if (pairable(st, st.pieces[static_cast<size_t>(xs[i])], st.pieces[static_cast<size_t>(ys[j])]))
            bp.adj[i].push_back(static_cast<int>(j));
      bp.solve();
      for (size_t i = 0; i < xs.size(); ++i) {
        if (bp.ml[i] < 0) res.unmatched.push_back(xs[i]);
        else res.pairs.push_back({xs[i], ys[static_cast<size_t>(bp.ml[i])]});
      }
      for (size_t j = 0; j < ys.size(); ++j)
        if (bp.mr[j] < 0) res.unmatched.push_back(ys[j]);
    }
  }
  res.perfect = res.unmatched.empty();
  return res;
}

// Turn one whole chain into an end-piece donor so that `u` gains a partner.
inline bool escalate_for(PoolState& st, const Piece& u) {
  int h = st.h;
  int want = h - u.size;
  for (int ci = 0; ci < static_cast<int>(st.chains.size()); ++ci) {
    WorkChain& wc = st.chains[static_cast<size_t>(ci)];
    if (wc.plan != CutPlan::kWhole || wc.len() < h || ci == u.chain) continue;
    // donor top piece (size `want`) above u?
    const Mask& donor_top_bottom = wc.elems[static_cast<size_t>(wc.len() - want)];
    for (int su : u.starts) {
      const Mask& utop = st.chains[static_cast<size_t>(u.chain)].elems[static_cast<size_t>(su + u.size - 1)];
      if (utop != donor_top_bottom && utop.subset_of(donor_top_bottom)) {
        wc.plan = CutPlan::kEnds;
        wc.a = u.size;
        wc.b = want;
        return true;
      }
    }
    // donor bottom piece (size `want`) below u?
    const Mask& donor_bot_top = wc.elems[static_cast<size_t>(want - 1)];
    for (int su : u.starts) {
      const Mask& ubot = st.chains[static_cast<size_t>(u.chain)].elems[static_cast<size_t>(su)];
      if (donor_bot_top != ubot && donor_bot_top.subset_of(ubot)) {
        wc.plan = CutPlan::kEnds;
        wc.a = want;
        wc.b = u.size;
        return true;
      }
    }
  }
  return false;
}

inline std::optional<std::vector<std::vector<Mask>>> assemble(PoolState& st,
                                                              const MatchResult& mr) {
  int h = st.h;
  std::vector<std::vector<std::pair<int, int>>> reserved(st.chains.size());
  std::vector<std::vector<Mask>> out;

  for (auto [ui, vi] : mr.pairs) {
    Piece& u = st.pieces[static_cast<size_t>(ui)];
    Piece& v = st.pieces[static_cast<size_t>(vi)];
    bool placed = false;
    for (int su : u.starts) {
      for (int sv : v.starts) {
        const Piece *lo = nullptr, *hi = nullptr;
        int slo = 0, shi = 0;
        if (fits_below(st, u, su, v, sv)) {
          lo = &u; hi = &v; slo = su; shi = sv;
        } else if (fits_below(st, v, sv, u, su)) {
          lo = &v; hi = &u; slo = sv; shi = su;
        } else {
          continue;
        }
        std::vector<Mask> merged;
        const auto& le = st.chains[static_cast<size_t>(lo->chain)].elems;
        const auto& he = st.chains[static_cast<size_t>(hi->chain)].elems;
        merged.insert(merged.end(), le.begin() + slo, le.begin() + slo + lo->size);
        merged.insert(merged.end(), he.begin() + shi, he.begin() + shi + hi->size);
        out.push_back(std::move(merged));
        reserved[static_cast<size_t>(lo->chain)].push_back({slo, lo->size});
        reserved[static_cast<size_t>(hi->chain)].push_back({shi, hi->size});
        placed = true;
        break;
      }
      if (placed) break;
    }
    if (!placed) return std::nullopt;  // matching edge had no realizable placement
  }

  // cut the remainder of every chain into h-segments
  for (size_t ci = 0; ci < st.chains.size(); ++ci) {
    auto& res = reserved[ci];
    std::sort(res.begin(), res.end());
    const auto& elems = st.chains[ci].elems;
    int pos = 0;
    auto emit_gap = [&](int upto) -> bool {
      if ((upto - pos) % h != 0) return false;
      while (pos < upto) {
        out.emplace_back(elems.begin() + pos, elems.begin() + pos + h);
        pos += h;
      }
      return true;
    };
    for (auto [s, len] : res) {
      if (s < pos) return std::nullopt;  // overlapping placements
      if (!emit_gap(s)) return std::nullopt;
      pos = s + len;
    }
    if (!emit_gap(static_cast<int>(elems.size()))) return std::nullopt;
  }
  return out;
}

inline std::optional<std::vector<std::vector<Mask>>> cut_and_merge(int n, int h,
                                                                   std::vector<Mask> c1_chain) {
  Scd scd = symmetric_chain_decomposition(n);
  PoolState st;
  st.h = h;
  int c1 = static_cast<int>(c1_chain.size());
  for (auto& ch : scd.chains) {
    if (!ch.empty() && ch.front().empty() && c1 > 0) {
      // the chain through the empty set hosts C1 as its bottom prefix
      std::vector<Mask> rest(ch.begin() + c1, ch.end());
      if (!rest.empty()) st.chains.push_back({std::move(rest), CutPlan::kWhole, 0, 0});
    } else {
      st.chains.push_back({std::move(ch), CutPlan::kWhole, 0, 0});
    }
  }
  for (auto& wc : st.chains) {
    int s = wc.len() % h;
    if (s != 0) {
      wc.plan = CutPlan::kSingle;
      wc.a = s;
    }
  }
  if (!balance_classes(st)) return std::nullopt;

  for (int round = 0; round < 64; ++round) {
    st.rebuild_pieces();
    MatchResult mr = match_pieces(st);
    if (mr.perfect) {
      auto out = assemble(st, mr);
      if (out) {
        if (!c1_chain.empty()) out->push_back(std::move(c1_chain));
        return out;
      }
      return std::nullopt;
    }
    // add donors targeted at unmatched pieces, a few per round
    int added = 0;
    for (int ui : mr.unmatched) {
      if (escalate_for(st, st.pieces[static_cast<size_t>(ui)])) ++added;
      if (added >= 16) break;
    }
    if (added == 0) return std::nullopt;
  }
  return std::nullopt;
}

// --- structured constructions for h = 3 and h = 4 --------------------------
//
// Factor 2^[n] as 2^[k] x 2^[n-k] with k = 2 (h=3) or k = 3 (h=4). The
// blocks meeting the maximal chain of the small factor fall apart into
// fibers of size h; what is left is order-isomorphic to one (h=3) or two
// (h=4) copies of 2^[n-2], which recurse down to small bases.

using MaskChains = std::vector<std::vector<Mask>>;

// Every chain of the symmetric chain decomposition of 2^[9] passes through
// levels 4 and 5. Extend each such (A4,A5) pair downward and upward by
// bipartite matching into the remaining low/high elements; two fixed spare
// chains absorb the four leftover elements on each side.
inline std::optional<MaskChains> four_chain_base_9() {
  const int n = 9;
  Scd scd = symmetric_chain_decomposition(n);
  std::vector<std::pair<Mask, Mask>> dom;
  for (const auto& ch : scd.chains) {
    int start = ch.front().count();
    dom.push_back({ch[static_cast<size_t>(4 - start)], ch[static_cast<size_t>(5 - start)]});
  }
  const std::vector<Mask> spare_low = {Mask{0}, Mask{1}, Mask{3}, Mask{7}};
  Mask full = full_mask(n);
  std::vector<Mask> lows, highs;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    Mask x{m};
    bool spare = false;
    for (Mask s : spare_low)
      if (x == s || x == (s ^ full)) spare = true;
    if (spare) continue;
    if (x.count() <= 3) lows.push_back(x);
    else if (x.count() >= 6) highs.push_back(x);
  }
  if (lows.size() != dom.size() || highs.size() != dom.size()) return std::nullopt;

  Bipartite bl(static_cast<int>(lows.size()), static_cast<int>(dom.size()));
  for (size_t i = 0; i < lows.size(); ++i)
    for (size_t j = 0; j < dom.size(); ++j)
      if (lows[i] != dom[j].first && lows[i].subset_of(dom[j].first))
        bl.adj[i].push_back(static_cast<int>(j));
  if (bl.solve() != static_cast<int>(dom.size())) return std::nullopt;

  Bipartite bh(static_cast<int>(highs.size()), static_cast<int>(dom.size()));
  for (size_t i = 0; i < highs.size(); ++i)
    for (size_t j = 0; j < dom.size(); ++j)
      if (highs[i] != dom[j].second && dom[j].second.subset_of(highs[i]))
        bh.adj[i].push_back(static_cast<int>(j));
  if (bh.solve() != static_cast<int>(dom.size())) return std::nullopt;

  std::vector<int> low_of(dom.size(), -1), high_of(dom.size(), -1);
  for (size_t i = 0; i < lows.size(); ++i) low_of[static_cast<size_t>(bl.ml[i])] = static_cast<int>(i);
  for (size_t i = 0; i < highs.size(); ++i) high_of[static_cast<size_t>(bh.ml[i])] = static_cast<int>(i);

  MaskChains out;
  out.push_back(spare_low);
  std::vector<Mask> spare_high;
  for (size_t i = spare_low.size(); i-- > 0;) spare_high.push_back(spare_low[i] ^ full);
  out.push_back(std::move(spare_high));
  for (size_t j = 0; j < dom.size(); ++j)
    out.push_back({lows[static_cast<size_t>(low_of[j])], dom[j].first, dom[j].second,
                   highs[static_cast<size_t>(high_of[j])]});
  return out;
}

// 2^[n] = 2^[n-1] x {without n, with n}: split every ladder into its rows.
// Valid only when all chain sizes are exactly h (zero residue).
inline MaskChains double_rows(const MaskChains& sub, int new_n) {
  MaskChains out;
  Mask top_bit = Mask::bit(new_n - 1);
  out.reserve(sub.size() * 2);
  for (const auto& ch : sub) {
    out.push_back(ch);
    std::vector<Mask> shifted;
    shifted.reserve(ch.size());
    for (Mask m : ch) shifted.push_back(m | top_bit);
    out.push_back(std::move(shifted));
  }
  return out;
}

std::optional<MaskChains> small_base(int n, int h);

// (n,3): triples {d, d+{1}, d+{1,2}} for every d over {3..n}, plus one
// translated copy of a (n-2,3) partition on the masks containing 2 but not 1.
inline std::optional<MaskChains> build_h3(int n) {
  if (n <= 7) return small_base(n, 3);
  auto sub = build_h3(n - 2);
  if (!sub) return std::nullopt;
  MaskChains out;
  for (std::uint64_t d = 0; d < (std::uint64_t{1} << (n - 2)); ++d) {
    std::uint64_t base = d << 2;
    out.push_back({Mask{base}, Mask{base | 1}, Mask{base | 3}});
  }
  for (const auto& ch : *sub) {
    std::vector<Mask> mapped;
    mapped.reserve(ch.size());
    for (Mask m : ch) mapped.push_back(Mask{(m.lo << 2) | 2});
    out.push_back(std::move(mapped));
  }
  return out;
}

// (n,4): quadruples {d, d+{1}, d+{12}, d+{123}} for every d over {4..n},
// plus two translated copies of (n-2,4) on the remaining mask patterns.
inline std::optional<MaskChains> build_h4(int n) {
  if (n == 9) return four_chain_base_9();
  if (n == 10) {
    auto sub = build_h4(9);
    if (!sub) return std::nullopt;
    return double_rows(*sub, 10);
  }
  auto sub = build_h4(n - 2);
  if (!sub) return std::nullopt;
  MaskChains out;
  for (std::uint64_t d = 0; d < (std::uint64_t{1} << (n - 3)); ++d) {
    std::uint64_t base = d << 3;
    out.push_back({Mask{base}, Mask{base | 1}, Mask{base | 3}, Mask{base | 7}});
  }
  // copy A: intersection with {1,2,3} is {2} or {2,3}; element -> 3
  for (const auto& ch : *sub) {
    std::vector<Mask> mapped;
    mapped.reserve(ch.size());
    for (Mask m : ch) mapped.push_back(Mask{((m.lo & 1) << 2) | ((m.lo >> 1) << 3) | 2});
    out.push_back(std::move(mapped));
  }
  // copy B: intersection with {1,2,3} is {3} or {1,3}; element -> 1
  for (const auto& ch : *sub) {
    std::vector<Mask> mapped;
    mapped.reserve(ch.size());
    for (Mask m : ch) mapped.push_back(Mask{(m.lo & 1) | ((m.lo >> 1) << 3) | 4});
    out.push_back(std::move(mapped));
  }
  return out;
}

inline std::optional<MaskChains> build_chains_structured(int n, int h) {
  if (h == 3 && n >= 5) return build_h3(n);
  if (h == 4 && n >= 9) return build_h4(n);
  return std::nullopt;
}

// --- small exact search fallback -------------------------------------------

inline std::optional<std::vector<std::vector<Mask>>> exact_search(int n, int h, int c1,
                                                                  bool* complete) {
  *complete = false;
  if (n > 6) return std::nullopt;  // beyond this the branching is hopeless
  std::uint64_t total = std::uint64_t{1} << n;
  std::vector<Mask> order;
  for (std::uint64_t m = 0; m < total; ++m) order.push_back(Mask{m});
  std::sort(order.begin(), order.end(), [](Mask a, Mask b) {
    return a.count() != b.count() ? a.count() < b.count() : a < b;
  });
  struct Open {
    Mask top;
    int size;
    int target;
  };
  std::vector<Open> open;
  std::vector<std::vector<Mask>> built;
  std::uint64_t r = 1 + (total - static_cast<std::uint64_t>(c1)) / static_cast<std::uint64_t>(h);
  bool c1_used = false;
  std::uint64_t nodes = 0;
  const std::uint64_t budget = 30'000'000;
  std::vector<std::vector<Mask>> result;

  std::function<bool(size_t)> rec = [&](size_t idx) -> bool {
    if (++nodes > budget) return false;
    if (idx == order.size()) {
      for (const auto& o : open)
        if (o.size != o.target) return false;
      result = built;
      return true;
    }
    Mask x = order[idx];
    for (size_t ci = 0; ci < open.size(); ++ci) {
      Open& o = open[ci];
      if (o.size >= o.target || !(o.top.subset_of(x) && o.top != x)) continue;
      Mask saved = o.top;
      o.top = x;
      ++o.size;
      built[ci].push_back(x);
      if (rec(idx + 1)) return true;
      built[ci].pop_back();
      --o.size;
      o.top = saved;
    }
    if (built.size() < r) {
      // open a new chain with target h, and optionally the off-size target
      for (int t : {h, c1}) {
        if (t == c1 && (c1_used || c1 == h)) continue;
        if (t == c1) c1_used = true;
        open.push_back({x, 1, t});
        built.push_back({x});
        if (rec(idx + 1)) return true;
        built.pop_back();
        open.pop_back();
        if (t == c1) c1_used = false;
      }
    }
    return false;
  };
  bool found = rec(0);
  if (nodes <= budget) *complete = true;
  if (!found) return std::nullopt;
  return result;
}

inline std::optional<MaskChains> small_base(int n, int h) {
  int c1 = h + static_cast<int>((std::uint64_t{1} << n) % static_cast<std::uint64_t>(h));
  std::vector<Mask> c1_chain;
  if (c1 > h) {
    Mask cur{};
    c1_chain.push_back(cur);
    for (int i = 0; i + 1 < c1; ++i) {
      cur.set(i);
      c1_chain.push_back(cur);
    }
  }
  auto built = cut_and_merge(n, h, c1_chain);
  if (built) return built;
  bool complete = false;
  return exact_search(n, h, c1, &complete);
}

}  // namespace chains_detail

inline ChainPartitionResult uniform_chain_partition(int n, int h) {
  using namespace chains_detail;
  if (n < 1) throw std::invalid_argument("ground set size must be positive");
  if (n > 24) throw budget_error("uniform_chain_partition materializes only for n <= 24");
  if (h < 1) throw std::invalid_argument("chain size must be positive");

  std::uint64_t total = std::uint64_t{1} << n;
  if (h > n + 1)
    return {std::nullopt, {"no chain of size " + std::to_string(h) + " exists in 2^[" +
                               std::to_string(n) + "] (longest chain has " + std::to_string(n + 1) +
                               " elements)",
                           true}};
  int c1 = h + static_cast<int>(total % static_cast<std::uint64_t>(h));
  if (c1 > n + 1)
    return {std::nullopt,
            {"off-size chain would need " + std::to_string(c1) +
                 " elements but the longest chain has " + std::to_string(n + 1),
             true}};
  std::uint64_t r = 1 + (total - static_cast<std::uint64_t>(c1)) / static_cast<std::uint64_t>(h);
  std::uint64_t width = binom(n, n / 2);
  if (width > r)
    return {std::nullopt,
            {"width certificate: the middle level has " + std::to_string(width) +
                 " pairwise-incomparable elements, but the size contract admits only r=" +
                 std::to_string(r) + " chains",
             true}};

  ChainPartition cp;
  cp.n = n;
  cp.h = h;

  if (h == 1) {
    for (std::uint64_t m = 0; m < total; ++m) cp.chains.push_back({Mask{m}});
  } else if (h == 2) {
    // pair each set without element 1 with the same set plus element 1
    for (std::uint64_t m = 0; m < total; ++m)
      if ((m & 1) == 0) cp.chains.push_back({Mask{m}, Mask{m | 1}});
  } else {
    auto built = build_chains_structured(n, h);
    if (!built) {
      std::vector<Mask> c1_chain;
      if (c1 > h) {
        // bottom prefix of the chain through the empty set (the full prefix chain)
        Mask cur{};
        c1_chain.push_back(cur);
        for (int i = 0; i + 1 < c1; ++i) {
          cur.set(i);
          c1_chain.push_back(cur);
        }
      }
      built = cut_and_merge(n, h, c1_chain);
    }
    if (!built) {
      bool complete = false;
      auto exact = exact_search(n, h, c1, &complete);
      if (!exact)
        return {std::nullopt,
                {complete ? "exact search exhausted: no partition exists"
                          : "repair failed: piece matching found no completion",
                 complete}};
      built = std::move(exact);
    }
    cp.chains = std::move(*built);
  }

  std::sort(cp.chains.begin(), cp.chains.end(),
            [](const std::vector<Mask>& a, const std::vector<Mask>& b) {
              return a.front() < b.front();
            });
  // the unique off-size chain is C1 and goes first
  for (size_t i = 0; i < cp.chains.size(); ++i)
    if (static_cast<int>(cp.chains[i].size()) != h) {
      std::rotate(cp.chains.begin(), cp.chains.begin() + static_cast<long>(i),
                  cp.chains.begin() + static_cast<long>(i) + 1);
      break;
    }
  ChainReport rep = verify_chain_partition(cp);
  if (!rep.pass)
    throw std::logic_error("constructed chain partition failed verification: " + rep.violation);
  return {std::move(cp), {}};
}

}  // namespace lattile
