#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lattile/copies.hpp"
#include "lattile/poset.hpp"

namespace lattile {

// ---------------------------------------------------------------------------
// Weight functions over families of copies: a sparse nonnegative weighting
// of copies of P in a grid host; the weight of an element is the total
// weight of the copies containing it. Exact-t weightings give every
// element weight t, (1 mod t) weightings give every element weight
// congruent to 1.
// ---------------------------------------------------------------------------

struct WeightFunction {
  std::vector<int> host_dims;
  // copy (sorted host element ids) -> weight
  std::map<std::vector<std::uint32_t>, std::uint64_t> entries;

  void add(std::vector<std::uint32_t> copy, std::uint64_t w) {
    if (w == 0) return;
    entries[std::move(copy)] += w;
  }
  void add_scaled(const WeightFunction& other, std::uint64_t factor) {
    for (const auto& [copy, w] : other.entries) add(copy, w * factor);
  }
  std::uint64_t total_weight() const {
    std::uint64_t s = 0;
    for (const auto& [copy, w] : entries) s += w;
    return s;
  }
};

enum class WeightKind { kExactT, kOneModT };

struct WeightReport {
  bool pass = false;
  bool identity_ok = true;  // t|Q| = |P| * total weight, exact-t runs only
  std::uint64_t elements = 0;
  std::string violation;
  std::vector<std::uint64_t> weight_of;  // per-element weight table
};

/// Full per-element scan of a weight function. Keys that are not copies of
/// the target are a hard error, not a report line.
inline WeightReport verify_weight_function(const WeightFunction& w, const Poset& target, int t,
                                           WeightKind kind) {
  if (t < 1) throw std::invalid_argument("modulus must be positive");
  GridPoset host(w.host_dims);
  std::uint64_t hn = host.size();
  if (hn > kMaterializationBudget) throw budget_error("weight host exceeds materialization budget");

  WeightReport rep;
  rep.elements = hn;
  rep.weight_of.assign(hn, 0);
  for (const auto& [copy, weight] : w.entries) {
    std::vector<std::uint64_t> subset(copy.begin(), copy.end());
    if (!is_copy(subset, host, target))
      throw std::invalid_argument("weight entry keyed by a set that is not a copy of the target");
    for (std::uint32_t e : copy) rep.weight_of[e] += weight;
  }

  rep.pass = true;
  for (std::uint64_t e = 0; e < hn; ++e) {
    std::uint64_t v = rep.weight_of[e];
    bool ok = kind == WeightKind::kExactT
                  ? v == static_cast<std::uint64_t>(t)
                  : v % static_cast<std::uint64_t>(t) == 1 % static_cast<std::uint64_t>(t);
    if (!ok) {
      rep.pass = false;
      rep.violation = "element " + std::to_string(e) + " has weight " + std::to_string(v);
      break;
    }
  }
  if (kind == WeightKind::kExactT) {
    rep.identity_ok = static_cast<std::uint64_t>(t) * hn ==
                      static_cast<std::uint64_t>(target.size()) * w.total_weight();
    if (!rep.identity_ok) rep.pass = false;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Exact-t search over the copies of P in [2]^m.
// ---------------------------------------------------------------------------

struct TPartitionResult {
  std::optional<WeightFunction> weights;
  bool certified_infeasible = false;
  std::string reason;
};

/// Exhaustive search for a weight function giving every element of [2]^m
/// weight exactly t; weights range over 0..t per copy. Infeasible results
/// are certificates (the search space is finite and fully explored).
inline TPartitionResult find_t_partition(const Poset& p, int m, int t,
                                         CopyEnumerationBudget budget = {}) {
  if (m < 1 || m > 20) throw std::invalid_argument("exponent m out of range");
  if (t < 1) throw std::invalid_argument("modulus must be positive");
  BooleanLattice host(m);
  auto copies = enumerate_copies(host, p, budget);
  std::uint64_t hn = host.size();

  TPartitionResult res;
  if (copies.empty()) {
    res.certified_infeasible = true;
    res.reason = "the host contains no copy of the target";
    return res;
  }

  // elements decide once every covering copy has been assigned
  std::vector<std::vector<int>> covering(hn);
  for (size_t ci = 0; ci < copies.size(); ++ci)
    for (std::uint64_t e : copies[ci]) covering[e].push_back(static_cast<int>(ci));
  std::vector<int> last_copy(hn, -1);
  for (std::uint64_t e = 0; e < hn; ++e) {
    if (covering[e].empty()) {
      res.certified_infeasible = true;
      res.reason = "element " + std::to_string(e) + " is covered by no copy";
      return res;
    }
    last_copy[e] = covering[e].back();
  }

  std::vector<int> weight(copies.size(), 0);
  std::vector<std::uint64_t> acc(hn, 0);
  std::function<bool(size_t)> rec = [&](size_t ci) -> bool {
    if (ci == copies.size()) return true;
    for (int wv = 0; wv <= t; ++wv) {
      weight[ci] = wv;
      bool ok = true;
      for (std::uint64_t e : copies[ci]) {
        acc[e] += static_cast<std::uint64_t>(wv);
        if (acc[e] > static_cast<std::uint64_t>(t)) ok = false;
      }
      if (ok)
        for (std::uint64_t e = 0; e < hn && ok; ++e)
          if (last_copy[e] == static_cast<int>(ci) && acc[e] != static_cast<std::uint64_t>(t))
            ok = false;
      if (ok && rec(ci + 1)) return true;
      for (std::uint64_t e : copies[ci]) acc[e] -= static_cast<std::uint64_t>(wv);
    }
    return false;
  };
  if (!rec(0)) {
    res.certified_infeasible = true;
    res.reason = "exhaustive search over weights 0.." + std::to_string(t) + " for " +
                 std::to_string(copies.size()) + " copies found no exact-t weighting";
    return res;
  }
  WeightFunction w;
  w.host_dims.assign(static_cast<size_t>(m), 2);
  for (size_t ci = 0; ci < copies.size(); ++ci)
    if (weight[ci] > 0)
      w.add(std::vector<std::uint32_t>(copies[ci].begin(), copies[ci].end()),
            static_cast<std::uint64_t>(weight[ci]));
  res.weights = std::move(w);
  return res;
}

/// Lift a weight function on [2]^m to [2|P|]^{m_out}: the host splits into
/// blocks isomorphic to [2]^m (with singleton tails over the extra
/// factors), and every block carries an isomorphic copy of the weighting.
inline WeightFunction lift_to_blocks(const WeightFunction& w, const Poset& p, int m_out = 0) {
  int m = static_cast<int>(w.host_dims.size());
  for (int s : w.host_dims)
    if (s != 2) throw std::invalid_argument("lift_to_blocks expects a [2]^m host");
  if (m_out == 0) m_out = m;
  if (m_out < m) throw std::invalid_argument("extended exponent must be >= m");
  int side = 2 * p.size();
  GridPoset big(std::vector<int>(static_cast<size_t>(m_out), side));
  if (big.size() > kMaterializationBudget) throw budget_error("lifted host exceeds materialization budget");

  WeightFunction out;
  out.host_dims.assign(static_cast<size_t>(m_out), side);

  std::uint64_t blocks = 1;
  for (int k = 0; k < m; ++k) blocks *= static_cast<std::uint64_t>(p.size());
  std::uint64_t tails = 1;
  for (int k = m; k < m_out; ++k) tails *= static_cast<std::uint64_t>(side);

  for (std::uint64_t bi = 0; bi < blocks; ++bi) {
    std::vector<int> block(static_cast<size_t>(m));
    std::uint64_t rest = bi;
    for (int k = m - 1; k >= 0; --k) {
      block[static_cast<size_t>(k)] = static_cast<int>(rest % static_cast<std::uint64_t>(p.size())) + 1;
      rest /= static_cast<std::uint64_t>(p.size());
    }
    for (std::uint64_t ti = 0; ti < tails; ++ti) {
      std::vector<int> tail(static_cast<size_t>(m_out - m));
      std::uint64_t tr = ti;
      for (int k = m_out - m - 1; k >= 0; --k) {
        tail[static_cast<size_t>(k)] = static_cast<int>(tr % static_cast<std::uint64_t>(side)) + 1;
        tr /= static_cast<std::uint64_t>(side);
      }
      for (const auto& [copy, weight] : w.entries) {
        std::vector<std::uint32_t> image;
        image.reserve(copy.size());
        for (std::uint32_t e : copy) {
          std::vector<int> coords(static_cast<size_t>(m_out));
          std::uint64_t er = e;
          for (int k = m - 1; k >= 0; --k) {
            int eps = static_cast<int>(er % 2) + 1;  // coordinate in [2]
            er /= 2;
            coords[static_cast<size_t>(k)] = 2 * block[static_cast<size_t>(k)] + eps - 2;
          }
          for (int k = m; k < m_out; ++k) coords[static_cast<size_t>(k)] = tail[static_cast<size_t>(k - m)];
          image.push_back(static_cast<std::uint32_t>(big.index(coords)));
        }
        std::sort(image.begin(), image.end());
        out.add(std::move(image), weight);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Realizability calculus on Q = [2|P|]^(2d-1).
// ---------------------------------------------------------------------------

struct RealizabilityContext {
  Poset target;
  int d = 0;     // minimal cube dimension of the target
  int m = 0;     // 2d - 1
  int side = 0;  // 2|P|
  GridPoset q{{1}};
  std::uint64_t anchor = 0;                          // the all-2s element
  std::vector<std::vector<std::uint64_t>> cube_copies;  // copies of P in 2^[d], mask sets
};

inline RealizabilityContext make_realizability_context(const Poset& p) {
  if (p.size() < 2) throw std::invalid_argument("realizability needs |P| >= 2");
  if (p.unique_max() < 0 || p.unique_min() < 0)
    throw std::invalid_argument("realizability needs a unique maximal and minimal element");
  RealizabilityContext ctx;
  ctx.target = p;
  ctx.d = minimal_cube_dim(p).d;
  ctx.m = 2 * ctx.d - 1;
  ctx.side = 2 * p.size();
  ctx.q = GridPoset(std::vector<int>(static_cast<size_t>(ctx.m), ctx.side));
  if (ctx.q.size() > kMaterializationBudget)
    throw budget_error("realizability host (2|P|)^(2d-1) = " + std::to_string(ctx.q.size()) +
                       " exceeds the materialization budget");
  ctx.anchor = ctx.q.index(std::vector<int>(static_cast<size_t>(ctx.m), 2));
  ctx.cube_copies = enumerate_copies(BooleanLattice(ctx.d), p);
  if (ctx.cube_copies.empty()) throw std::logic_error("minimal cube contains no copy");
  return ctx;
}

namespace weights_detail {

// the unique maximal / minimal element of a copy (host element ids)
template <typename Host>
std::uint64_t copy_max(const std::vector<std::uint64_t>& copy, const Host& host) {
  for (std::uint64_t cand : copy) {
    bool top = true;
    for (std::uint64_t other : copy)
      if (!host.leq(other, cand)) top = false;
    if (top) return cand;
  }
  throw std::logic_error("copy has no maximum");
}
template <typename Host>
std::uint64_t copy_min(const std::vector<std::uint64_t>& copy, const Host& host) {
  for (std::uint64_t cand : copy) {
    bool bot = true;
    for (std::uint64_t other : copy)
      if (!host.leq(cand, other)) bot = false;
    if (bot) return cand;
  }
  throw std::logic_error("copy has no minimum");
}

// Case 1: embed the cube in the low corner over free coordinates J
// (values 1/2), everything else pinned to 1. Case 2: high corner (values
// side-1/side), everything else pinned to side.
inline std::uint64_t map_cube_element(const RealizabilityContext& ctx, const std::vector<int>& J,
                                      std::uint64_t cube_mask, bool low_corner) {
  std::vector<int> coords(static_cast<size_t>(ctx.m), low_corner ? 1 : ctx.side);
  for (size_t k = 0; k < J.size(); ++k) {
    bool bit = (cube_mask >> k) & 1;
    coords[static_cast<size_t>(J[k])] = low_corner ? (bit ? 2 : 1) : (bit ? ctx.side : ctx.side - 1);
  }
  return ctx.q.index(coords);
}

struct SwapPair {
  std::vector<std::uint64_t> copy;  // in Q, sorted
  std::uint64_t pivot;              // the max (case 1) or min (case 2)
};

// find the lexicographically least cube copy whose image avoids x
inline std::optional<SwapPair> corner_copy(const RealizabilityContext& ctx,
                                           const std::vector<int>& J, std::uint64_t x,
                                           bool low_corner) {
  for (const auto& cc : ctx.cube_copies) {
    std::vector<std::uint64_t> image;
    image.reserve(cc.size());
    bool hits_x = false;
    for (std::uint64_t mask : cc) {
      std::uint64_t e = map_cube_element(ctx, J, mask, low_corner);
      if (e == x) hits_x = true;
      image.push_back(e);
    }
    if (hits_x) continue;
    std::sort(image.begin(), image.end());
    SwapPair sp;
    sp.pivot = low_corner ? copy_max(image, ctx.q) : copy_min(image, ctx.q);
    sp.copy = std::move(image);
    return sp;
  }
  return std::nullopt;
}

inline std::vector<std::uint32_t> replace_in_copy(const std::vector<std::uint64_t>& copy,
                                                  std::uint64_t out, std::uint64_t in) {
  std::vector<std::uint32_t> r;
  r.reserve(copy.size());
  for (std::uint64_t e : copy)
    r.push_back(static_cast<std::uint32_t>(e == out ? in : e));
  std::sort(r.begin(), r.end());
  return r;
}

}  // namespace weights_detail

/// Witness that the indicator difference of {x} and the anchor is
/// realizable: one copy gets weight 1 and a parallel copy weight t-1, so
/// the weights are congruent to I_x - I_anchor mod t.
inline WeightFunction realize_point_difference(std::uint64_t x, const RealizabilityContext& ctx,
                                               int t) {
  using namespace weights_detail;
  if (t < 1) throw std::invalid_argument("modulus must be positive");
  WeightFunction w;
  w.host_dims = ctx.q.dims;
  if (x >= ctx.q.size()) throw std::invalid_argument("element outside the host");
  if (x == ctx.anchor) return w;  // zero difference

  std::vector<int> xc = ctx.q.coords(x);

  if (ctx.d == 1) {
    // Q = [4]: swap against any third element comparable to everything
    std::uint64_t z = 0;
    while (z == x || z == ctx.anchor) ++z;
    std::vector<std::uint64_t> a1{std::min(x, z), std::max(x, z)};
    std::vector<std::uint64_t> a2{std::min(ctx.anchor, z), std::max(ctx.anchor, z)};
    w.add(std::vector<std::uint32_t>(a1.begin(), a1.end()), 1);
    w.add(std::vector<std::uint32_t>(a2.begin(), a2.end()), static_cast<std::uint64_t>(t - 1));
    return w;
  }

  auto pick_indices = [&](auto pred) {
    std::vector<int> J;
    for (int j = 0; j < ctx.m && static_cast<int>(J.size()) < ctx.d; ++j)
      if (pred(xc[static_cast<size_t>(j)])) J.push_back(j);
    return J;
  };

  int ones = 0;
  for (int v : xc)
    if (v == 1) ++ones;

  std::optional<weights_detail::SwapPair> sp;
  bool low = ones <= ctx.d - 1;
  if (low) {
    std::vector<int> J = pick_indices([](int v) { return v >= 2; });
    if (static_cast<int>(J.size()) == ctx.d) sp = corner_copy(ctx, J, x, true);
  } else {
    std::vector<int> J = pick_indices([&](int v) { return v <= ctx.side - 1; });
    if (static_cast<int>(J.size()) == ctx.d) sp = corner_copy(ctx, J, x, false);
  }
  if (!sp) {
    // the preferred corner was blocked (x inside it, every copy through x):
    // the opposite corner always applies then
    low = !low;
    std::vector<int> J = low ? pick_indices([](int v) { return v >= 2; })
                             : pick_indices([&](int v) { return v <= ctx.side - 1; });
    if (static_cast<int>(J.size()) != ctx.d)
      throw std::logic_error("no corner admits the swap construction");
    sp = corner_copy(ctx, J, x, low);
    if (!sp) throw std::logic_error("no corner copy avoids the swap element");
  }

  // structural invariants of the swap: the pivot sits below (above) both
  // x and the anchor, so both replacements stay copies
  if (low) {
    if (!(ctx.q.leq(sp->pivot, x) && ctx.q.leq(sp->pivot, ctx.anchor)))
      throw std::logic_error("case-1 pivot not below x and anchor");
  } else {
    if (!(ctx.q.leq(x, sp->pivot) && ctx.q.leq(ctx.anchor, sp->pivot)))
      throw std::logic_error("case-2 pivot not above x and anchor");
  }

  w.add(weights_detail::replace_in_copy(sp->copy, sp->pivot, x), 1);
  w.add(weights_detail::replace_in_copy(sp->copy, sp->pivot, ctx.anchor),
        static_cast<std::uint64_t>(t - 1));
  return w;
}

/// Realize any integer function with total congruent to 0 mod t, as the
/// entrywise sum of point-difference witnesses.
inline WeightFunction realize_function(const std::vector<long long>& f,
                                       const RealizabilityContext& ctx, int t) {
  if (f.size() != ctx.q.size()) throw std::invalid_argument("function size does not match the host");
  long long total = 0;
  for (long long v : f) total += v;
  if (((total % t) + t) % t != 0)
    throw std::invalid_argument("function total is not congruent to 0 mod t");
  WeightFunction w;
  w.host_dims = ctx.q.dims;
  for (std::uint64_t x = 0; x < ctx.q.size(); ++x) {
    std::uint64_t coef = static_cast<std::uint64_t>(((f[x] % t) + t) % t);
    if (coef == 0 || x == ctx.anchor) continue;
    WeightFunction wit = realize_point_difference(x, ctx, t);
    w.add_scaled(wit, coef);
  }
  return w;
}

struct OneModTResult {
  RealizabilityContext ctx;
  WeightFunction weights;
  std::uint64_t s = 0;           // the constant t|Q|/|P|, always an integer
  std::uint64_t s_assembly = 0;  // weight actually placed on the base copy
};

namespace weights_detail {

// smallest nonnegative s with s*p ≡ q (mod t); solvable since gcd(p,t) | q
inline std::uint64_t solve_assembly_weight(std::uint64_t p, std::uint64_t q, std::uint64_t t) {
  // extended euclid on (p mod t, t): old_r = gcd, p*old_s ≡ gcd (mod t)
  long long old_r = static_cast<long long>(p % t), r = static_cast<long long>(t);
  long long old_s = 1, s = 0;
  while (r != 0) {
    long long quot = old_r / r;
    long long tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
  }
  long long g = old_r;
  std::uint64_t qm = q % t;
  if (qm % static_cast<std::uint64_t>(g) != 0)
    throw std::logic_error("assembly congruence unsolvable");
  long long tg = static_cast<long long>(t) / g;
  long long sol = (old_s % tg + tg) % tg;
  return static_cast<std::uint64_t>(
      (static_cast<unsigned long long>(sol) * (qm / static_cast<std::uint64_t>(g))) %
      static_cast<unsigned long long>(tg));
}

}  // namespace weights_detail

/// Weight function on Q = [2|P|]^(2d-1) whose every element weight is
/// congruent to 1 mod t.
inline OneModTResult one_mod_t_partition(const Poset& p, int t) {
  if (t < 1) throw std::invalid_argument("modulus must be positive");
  if (p.size() == 1) {
    OneModTResult res;
    res.ctx.target = p;
    res.ctx.d = 0;
    res.ctx.m = 1;
    res.ctx.side = 2;
    res.ctx.q = GridPoset({2});
    res.weights.host_dims = {2};
    res.weights.add({0}, 1);
    res.weights.add({1}, 1);
    res.s = static_cast<std::uint64_t>(2 * t);
    return res;
  }
  OneModTResult res;
  res.ctx = make_realizability_context(p);
  const auto& ctx = res.ctx;

  // a fixed copy of P in the low corner cube over the first d coordinates
  std::vector<int> J(static_cast<size_t>(ctx.d));
  for (int j = 0; j < ctx.d; ++j) J[static_cast<size_t>(j)] = j;
  std::vector<std::uint64_t> A;
  for (std::uint64_t mask : ctx.cube_copies.front())
    A.push_back(weights_detail::map_cube_element(ctx, J, mask, true));
  std::sort(A.begin(), A.end());

  std::uint64_t qsize = ctx.q.size();
  if ((static_cast<std::uint64_t>(t) * qsize) % static_cast<std::uint64_t>(p.size()) != 0)
    throw std::logic_error("constant s = t|Q|/|P| is not an integer");
  res.s = static_cast<std::uint64_t>(t) * qsize / static_cast<std::uint64_t>(p.size());

  // the base copy needs weight s' with s'|P| ≡ |Q| (mod t) so that the
  // residual function sums to 0 mod t; any multiple of t on top is free
  res.s_assembly = weights_detail::solve_assembly_weight(
      static_cast<std::uint64_t>(p.size()), qsize, static_cast<std::uint64_t>(t));

  std::vector<long long> f(qsize, 1);
  for (std::uint64_t e : A) f[e] -= static_cast<long long>(res.s_assembly);

  res.weights = realize_function(f, ctx, t);
  if (res.s_assembly > 0)
    res.weights.add(std::vector<std::uint32_t>(A.begin(), A.end()), res.s_assembly);
  res.weights.host_dims = ctx.q.dims;
  return res;
}

}  // namespace lattile
