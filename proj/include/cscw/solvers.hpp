#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cscw/error.hpp"
#include "cscw/space.hpp"

namespace cscw {

// Finite reflexive order window on positions [0,n).
struct OrderWindow {
  std::size_t n = 0;
  std::vector<bool> rel;  // rel[x*n+y] = x <= y

  bool leq(std::size_t x, std::size_t y) const { return rel[x * n + y]; }
  bool less(std::size_t x, std::size_t y) const { return x != y && leq(x, y); }
  bool comparable(std::size_t x, std::size_t y) const { return leq(x, y) || leq(y, x); }
};

inline OrderWindow make_order_window(std::size_t n,
                                     const std::function<bool(Point, Point)>& leq) {
  OrderWindow w;
  w.n = n;
  w.rel.resize(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) w.rel[x * n + y] = leq(x, y);
  return w;
}

inline void validate_poset(const OrderWindow& w) {
  for (std::size_t x = 0; x < w.n; ++x) {
    if (!w.leq(x, x)) fail(errc::invalid_order, "not reflexive at " + std::to_string(x));
    for (std::size_t y = 0; y < w.n; ++y) {
      if (x != y && w.leq(x, y) && w.leq(y, x))
        fail(errc::invalid_order,
             "not antisymmetric at " + std::to_string(x) + "," + std::to_string(y));
      for (std::size_t z = 0; z < w.n; ++z)
        if (w.leq(x, y) && w.leq(y, z) && !w.leq(x, z))
          fail(errc::invalid_order, "not transitive at " + std::to_string(x) + "," +
                                        std::to_string(y) + "," + std::to_string(z));
    }
  }
}

inline void validate_linear(const OrderWindow& w) {
  validate_poset(w);
  for (std::size_t x = 0; x < w.n; ++x)
    for (std::size_t y = x + 1; y < w.n; ++y)
      if (!w.comparable(x, y))
        fail(errc::invalid_order, "not total at " + std::to_string(x) + "," + std::to_string(y));
}

namespace detail {

constexpr std::size_t kSolverCap = 24;

inline void check_cap(std::size_t n, const char* who) {
  if (n > kSolverCap)
    throw std::invalid_argument(std::string(who) + ": window " + std::to_string(n) +
                                " exceeds the exhaustive-solver cap " +
                                std::to_string(kSolverCap));
}

// Lexicographically least k-subset of [0,n), listed ascending, on which
// `good` holds pairwise. Depth-first over ascending candidates: the first
// complete branch is the lex-least one.
inline bool pairwise_subset_dfs(std::size_t n, std::size_t k,
                                const std::function<bool(std::size_t, std::size_t)>& good,
                                std::vector<std::size_t>& acc, std::size_t start) {
  if (acc.size() == k) return true;
  for (std::size_t c = start; c + (k - acc.size()) <= n; ++c) {
    bool ok = true;
    for (auto p : acc)
      if (!good(p, c)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    acc.push_back(c);
    if (pairwise_subset_dfs(n, k, good, acc, c + 1)) return true;
    acc.pop_back();
  }
  return false;
}

inline std::optional<std::vector<std::size_t>> least_pairwise_subset(
    std::size_t n, std::size_t k, const std::function<bool(std::size_t, std::size_t)>& good) {
  std::vector<std::size_t> acc;
  if (k == 0) return acc;
  if (pairwise_subset_dfs(n, k, good, acc, 0)) return acc;
  return std::nullopt;
}

}  // namespace detail

// Homogeneous set of size k for a total pair coloring on [0,N), colors {0,1}.
// Exhaustive per color class, least-lexicographic; color 0 wins ties.
inline std::optional<std::vector<Point>> solve_rt22(
    const std::function<int(Point, Point)>& color, Point n, std::size_t k) {
  detail::check_cap(n, "solve_rt22");
  std::optional<std::vector<std::size_t>> best;
  for (int c = 0; c < 2; ++c) {
    auto found = detail::least_pairwise_subset(
        n, k, [&](std::size_t x, std::size_t y) { return color(x, y) == c; });
    if (found && (!best || *found < *best)) best = found;
  }
  if (!best) return std::nullopt;
  return std::vector<Point>(best->begin(), best->end());
}

struct CacResult {
  enum class Kind { chain, antichain } kind;
  std::vector<Point> points;  // ascending positions
};

// Chain or antichain of size k in a finite poset; chain attempted first,
// least-lexicographic within each kind.
inline std::optional<CacResult> solve_cac(const OrderWindow& w, std::size_t k) {
  detail::check_cap(w.n, "solve_cac");
  validate_poset(w);
  auto chain = detail::least_pairwise_subset(
      w.n, k, [&](std::size_t x, std::size_t y) { return w.comparable(x, y); });
  if (chain) return CacResult{CacResult::Kind::chain, {chain->begin(), chain->end()}};
  auto anti = detail::least_pairwise_subset(
      w.n, k, [&](std::size_t x, std::size_t y) { return !w.comparable(x, y); });
  if (anti) return CacResult{CacResult::Kind::antichain, {anti->begin(), anti->end()}};
  return std::nullopt;
}

struct AdsResult {
  enum class Kind { ascending, descending } kind;
  std::vector<Point> points;  // ascending positions
};

// Size-k subset of a finite linear order whose ascending-position listing is
// monotone under the order; ascending attempted first, least-lexicographic.
inline std::optional<AdsResult> solve_ads(const OrderWindow& w, std::size_t k) {
  detail::check_cap(w.n, "solve_ads");
  validate_linear(w);
  auto asc = detail::least_pairwise_subset(
      w.n, k, [&](std::size_t x, std::size_t y) { return x < y && w.less(x, y); });
  if (asc) return AdsResult{AdsResult::Kind::ascending, {asc->begin(), asc->end()}};
  auto desc = detail::least_pairwise_subset(
      w.n, k, [&](std::size_t x, std::size_t y) { return x < y && w.less(y, x); });
  if (desc) return AdsResult{AdsResult::Kind::descending, {desc->begin(), desc->end()}};
  return std::nullopt;
}

struct CohResult {
  std::vector<Point> points;   // the chosen cell, ascending
  std::vector<int> side;       // per set: 0 = cell inside R_n, 1 = inside complement
  std::vector<Point> bound;    // per set: from this point on, the side claim is exact (0: whole cell)
  std::uint64_t signature = 0;
};

// Largest Boolean-algebra cell over up to 64 sets on [0,N); ties broken by
// least signature, whose bit n is 0 exactly when the cell lies inside R_n.
inline CohResult solve_coh(const std::vector<Mask>& sets, Point n) {
  if (sets.size() > 64) throw std::invalid_argument("solve_coh: more than 64 sets");
  std::map<std::uint64_t, std::vector<Point>> cells;
  for (Point x = 0; x < n; ++x) {
    std::uint64_t sig = 0;
    for (std::size_t i = 0; i < sets.size(); ++i)
      if (!(x < sets[i].size && sets[i].test(x))) sig |= 1ull << i;
    cells[sig].push_back(x);
  }
  CohResult out;
  bool first = true;
  for (const auto& [sig, pts] : cells) {
    if (first || pts.size() > out.points.size()) {
      out.points = pts;
      out.signature = sig;
      first = false;
    }
  }
  out.side.resize(sets.size());
  out.bound.assign(sets.size(), 0);
  for (std::size_t i = 0; i < sets.size(); ++i) out.side[i] = (out.signature >> i) & 1;
  return out;
}

// Longest subsequence of positions 0..n-1, strictly increasing in position
// and strictly increasing under `less`; lexicographically least among the
// longest. Quadratic, no size cap: a pipeline building block.
inline std::vector<std::size_t> longest_monotone_positions(
    std::size_t n, const std::function<bool(std::size_t, std::size_t)>& less) {
  std::vector<std::size_t> len(n, 1);
  std::size_t best = 0;
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j)
      if (less(i, j) && len[j] + 1 > len[i]) len[i] = len[j] + 1;
    best = std::max(best, len[i]);
  }
  std::vector<std::size_t> out;
  if (n == 0) return out;
  std::size_t need = best;
  std::size_t from = 0;
  while (need > 0) {
    for (std::size_t i = from; i < n; ++i) {
      if (len[i] != need) continue;
      if (!out.empty() && !less(out.back(), i)) continue;
      out.push_back(i);
      from = i + 1;
      break;
    }
    --need;
  }
  return out;
}

// Maximum antichain in a finite poset on positions [0,n): Dilworth via
// bipartite matching on the strict comparability relation, antichain
// recovered from the minimum vertex cover. Deterministic, no size cap.
inline std::vector<std::size_t> max_antichain_positions(
    std::size_t n, const std::function<bool(std::size_t, std::size_t)>& less) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (less(x, y)) adj[x].push_back(y);
  std::vector<long> match_right(n, -1), match_left(n, -1);
  std::function<bool(std::size_t, std::vector<bool>&)> try_kuhn =
      [&](std::size_t u, std::vector<bool>& used) {
        for (auto v : adj[u]) {
          if (used[v]) continue;
          used[v] = true;
          if (match_right[v] < 0 || try_kuhn(static_cast<std::size_t>(match_right[v]), used)) {
            match_right[v] = static_cast<long>(u);
            match_left[u] = static_cast<long>(v);
            return true;
          }
        }
        return false;
      };
  for (std::size_t u = 0; u < n; ++u) {
    std::vector<bool> used(n, false);
    try_kuhn(u, used);
  }
  // Koenig: alternating reachability from unmatched left vertices.
  std::vector<bool> zl(n, false), zr(n, false);
  std::vector<std::size_t> queue;
  for (std::size_t u = 0; u < n; ++u)
    if (match_left[u] < 0) {
      zl[u] = true;
      queue.push_back(u);
    }
  while (!queue.empty()) {
    std::size_t u = queue.back();
    queue.pop_back();
    for (auto v : adj[u]) {
      if (zr[v]) continue;
      zr[v] = true;
      if (match_right[v] >= 0) {
        auto u2 = static_cast<std::size_t>(match_right[v]);
        if (!zl[u2]) {
          zl[u2] = true;
          queue.push_back(u2);
        }
      }
    }
  }
  // Cover = (L not reachable) + (R reachable); positions outside both sides
  // of the cover are pairwise incomparable.
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < n; ++x)
    if (zl[x] && !zr[x]) out.push_back(x);
  return out;
}

}  // namespace cscw
