#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cscw/certificate.hpp"
#include "cscw/classify.hpp"
#include "cscw/closure.hpp"
#include "cscw/solvers.hpp"
#include "cscw/space.hpp"

namespace cscw {

// Least basis-code pair (m,n) with x in U_m minus U_n, y in U_n minus U_m,
// and the two traces disjoint on [0, stage). Enumerates pair codes in
// increasing order along diagonals, so re-querying with growing stages
// exhibits the monotone stabilization of the answer.
inline Nat least_t2_pair(const CscSpace& s, Point x, Point y, Point stage,
                         std::uint64_t code_cap = 1 << 16) {
  if (x == y) fail(errc::bad_instance, "identical points have no separating pair");
  for (std::uint64_t d = 0;; ++d) {
    Nat base = Nat(d) * Nat(d + 1) / 2;
    if (base > Nat(code_cap)) fail(errc::not_found_within_range, "pair codes exhausted");
    for (std::uint64_t n = 0; n <= d; ++n) {
      Nat nm = Nat(d - n), nn = Nat(n);
      if (!s.basis_member(nm, x) || s.basis_member(nn, x)) continue;
      if (!s.basis_member(nn, y) || s.basis_member(nm, y)) continue;
      if (stage > 0 && s.basis_trace(nm, stage).intersects(s.basis_trace(nn, stage))) continue;
      return pair_code(nm, nn);
    }
  }
}

namespace detail {

inline constexpr std::uint64_t kBoundsCap = 256;

inline std::vector<Point> window_points(const CscSpace& s, Point window) {
  std::vector<Point> pts;
  for (Point x = 0; x < window; ++x)
    if (s.carrier(x)) pts.push_back(x);
  return pts;
}

// Principal traces of every window point, sharing one pass over the
// generator columns so the quadratic prechecks below stay affordable when
// both the window and the generator budget are large. Matches the numeric
// generator scan: a point no budgeted generator contains keeps the whole
// carrier window as its trace.
struct WindowTraces {
  std::vector<Point> pts;
  std::vector<Mask> traces;
};

inline WindowTraces window_traces(const CscSpace& s, const SearchBudget& b) {
  WindowTraces wt;
  wt.pts = window_points(s, b.window);
  Mask carwin(b.window);
  for (Point p : wt.pts) carwin.set(p);
  std::vector<Mask> cols;
  cols.reserve(b.gen_budget);
  for (std::uint64_t g = 0; g < b.gen_budget; ++g) {
    Mask c(b.window);
    for (Point p : wt.pts)
      if (s.generator_member(g, p)) c.set(p);
    cols.push_back(std::move(c));
  }
  wt.traces.reserve(wt.pts.size());
  for (Point p : wt.pts) {
    Mask acc = carwin;
    for (std::uint64_t g = 0; g < b.gen_budget; ++g)
      if (cols[g].test(p)) acc = acc & cols[g];
    wt.traces.push_back(std::move(acc));
  }
  return wt;
}

// Budgeted limit-point surrogate: no isolating witness at this budget, and
// enough cohabitants in the smallest visible neighborhood to feed the
// requested extraction.
inline std::optional<Point> find_limit_point(const CscSpace& s, std::size_t count,
                                             const SearchBudget& b) {
  for (Point p : window_points(s, b.window)) {
    std::optional<Nat> w;
    try {
      w = singleton_isolated(s, p, b);
    } catch (const error& e) {
      if (e.code() != errc::not_t1_on_window) throw;
    }
    if (!w && s.principal_trace(p, b).count() >= count + 1) return p;
  }
  return std::nullopt;
}

inline void t2_precheck(const CscSpace& s, const SearchBudget& b) {
  auto wt = window_traces(s, b);
  const auto& pts = wt.pts;
  const auto& pr = wt.traces;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (pr[i].intersects(pr[j]))
        fail(errc::not_hausdorff_on_window, "points " + std::to_string(pts[i]) + " and " +
                                                std::to_string(pts[j]) +
                                                " share every inspected neighborhood pair");
}

inline void attach_discrete_witnesses(const CscSpace& s, SubspaceCertificate& cert,
                                      const SearchBudget& b) {
  CscSpace sub = subspace_as_space(s, cert.points);
  cert.point_witness.clear();
  for (Point p : cert.points) {
    auto w = singleton_isolated(sub, p, b);
    if (!w)
      fail(errc::budget_exhausted,
           "no isolating witness for " + std::to_string(p) + " within budget");
    cert.point_witness.push_back(*w);
  }
}

}  // namespace detail

// Discrete extraction from a Hausdorff window. Without a limit point the
// window itself is the answer; with one, grow the point list inside the
// shrinking neighborhoods of the limit point obtained by joining the least
// separating pairs at each stage.
inline SubspaceCertificate hausdorff_discrete(const CscSpace& s, std::size_t count,
                                              const SearchBudget& b) {
  detail::t2_precheck(s, b);
  SubspaceCertificate cert;
  cert.tag = MinimalTag::discrete;
  cert.provenance = "hausdorff-discrete";
  auto limit = detail::find_limit_point(s, count, b);
  if (!limit) {
    for (Point p : detail::window_points(s, b.window)) {
      if (cert.points.size() == count) break;
      cert.points.push_back(p);
    }
    if (cert.points.size() < count)
      fail(errc::budget_exhausted, "window has fewer than the requested points");
    detail::attach_discrete_witnesses(s, cert, b);
    return cert;
  }
  const Point p = *limit;
  std::vector<Point> xs;
  for (Point w = 0; w < b.window && xs.empty(); ++w)
    if (s.carrier(w) && w != p) xs.push_back(w);
  if (xs.empty()) fail(errc::budget_exhausted, "no starting point beside the limit point");
  for (Point stage = 0; xs.size() < count; ++stage) {
    if (stage >= b.window) fail(errc::budget_exhausted, "stages exhausted");
    std::vector<Nat> ms;
    for (std::size_t i = 0; i < xs.size() && i <= stage; ++i)
      ms.push_back(unpair_code(least_t2_pair(s, p, xs[i], stage)).first);
    Nat m = s.kbar(p, ms);
    std::optional<Point> next;
    for (Point w = xs.back() + 1; w < b.window && !next; ++w)
      if (s.carrier(w) && w != p && s.basis_member(m, w)) next = w;
    if (next) xs.push_back(*next);
  }
  cert.points = xs;
  detail::attach_discrete_witnesses(s, cert, b);
  return cert;
}

// Effective variant: a caller-supplied witness map e(x,y) -> pair code (m,n)
// with x in U_m, y in U_n, U_m and U_n disjoint on the window. Produces the
// point list together with explicit basis indices n_i isolating each point
// among the others.
inline SubspaceCertificate eff_hausdorff_eff_discrete(
    const CscSpace& s, const std::function<Nat(Point, Point)>& e, std::size_t count,
    const SearchBudget& b) {
  auto limit = detail::find_limit_point(s, count, b);
  if (!limit) fail(errc::window_too_small, "no limit point detected on window");
  const Point p = *limit;
  auto witness = [&](Point y) {
    Nat code = e(p, y);
    auto [m, n] = unpair_code(code);
    if (!s.basis_member(m, p) || s.basis_member(n, p) || !s.basis_member(n, y) ||
        s.basis_member(m, y) || s.basis_trace(m, b.window).intersects(s.basis_trace(n, b.window)))
      fail(errc::witness_contract_violated,
           "pair map output for " + std::to_string(y) + " breaks the separation contract");
    return std::pair<Nat, Nat>(m, n);
  };
  std::vector<Point> xs;
  std::vector<Nat> ns;
  std::optional<Point> x0;
  for (Point w = 0; w < b.window && !x0; ++w)
    if (s.carrier(w) && w != p) x0 = w;
  if (!x0) fail(errc::budget_exhausted, "no starting point beside the limit point");
  xs.push_back(*x0);
  auto [m0, n0] = witness(xs[0]);
  std::vector<Nat> raw_ms{m0};
  ns.push_back(n0);
  Nat m_acc = s.kbar(p, raw_ms);
  while (xs.size() < count) {
    std::optional<Point> next;
    for (Point w = xs.back() + 1; w < b.window && !next; ++w)
      if (s.carrier(w) && w != p && s.basis_member(m_acc, w)) next = w;
    if (!next) fail(errc::budget_exhausted, "no next point inside the accumulated neighborhood");
    auto [m, n] = witness(*next);
    ns.push_back(s.k(*next, m_acc, n));
    raw_ms.push_back(m);
    m_acc = s.kbar(p, raw_ms);
    xs.push_back(*next);
  }
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j)
      if (s.basis_member(ns[i], xs[j]) != (i == j))
        fail(errc::witness_contract_violated,
             "index for " + std::to_string(xs[i]) + " does not isolate it among the points");
  SubspaceCertificate cert;
  cert.tag = MinimalTag::discrete;
  cert.provenance = "eff-hausdorff";
  cert.points = xs;
  cert.point_witness = ns;
  return cert;
}

// Cofinite extraction from a pure-T1 window: walk the nonempty basics in
// code order, keeping a running intersection and picking the least fresh
// point after each step; exception bounds per basic are recorded for the
// certificate. When the request equals the whole carrier window, the window
// itself is emitted directly.
inline SubspaceCertificate pure_t1_cofinite(const CscSpace& s, std::size_t count,
                                            const SearchBudget& b,
                                            std::uint64_t code_cap = 4096) {
  auto wt = detail::window_traces(s, b);
  const auto& pts = wt.pts;
  const auto& pr = wt.traces;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (!pr[i].intersects(pr[j]))
        fail(errc::t2_pair_found, "points " + std::to_string(pts[i]) + " and " +
                                      std::to_string(pts[j]) + " are separated on window");
  SubspaceCertificate cert;
  cert.tag = MinimalTag::cofinite;
  cert.provenance = "pure-t1";
  if (count == pts.size()) {
    cert.points = pts;
  } else {
    Mask inter(b.window);
    for (Point p : pts) inter.set(p);
    std::vector<Point> chosen;
    Mask used(b.window);
    for (std::uint64_t z = 1; chosen.size() < count; ++z) {
      if (z >= code_cap) fail(errc::budget_exhausted, "basic codes exhausted");
      Mask tr = s.basis_trace(Nat(z), b.window);
      if (tr.none()) continue;
      inter = inter & tr;
      if (inter.none())
        fail(errc::empty_intersection_within_window,
             "nonempty basics up to code " + std::to_string(z) + " meet emptily on window");
      std::optional<Point> fresh;
      for (Point w = 0; w < b.window && !fresh; ++w)
        if (inter.test(w) && !used.test(w)) fresh = w;
      if (!fresh) continue;
      chosen.push_back(*fresh);
      used.set(*fresh);
    }
    std::sort(chosen.begin(), chosen.end());
    cert.points = chosen;
  }
  // Exception bounds are recorded for the first kBoundsCap codes; callers
  // verifying against larger basis windows would need a larger cap.
  for (std::uint64_t z = 0; z < std::min(b.gen_budget, detail::kBoundsCap); ++z) {
    Mask tr = s.basis_trace(Nat(z), b.window);
    if (tr.none()) continue;
    Point bound = 0;
    for (Point p : cert.points)
      if (!tr.test(p)) bound = std::max(bound, p + 1);
    if (bound > 0) cert.basic_bounds[Nat(z)] = bound;
  }
  return cert;
}

// T1-window split per the two-color reading: color a pair 0 when separating
// disjoint basics are visible at the budget, 1 otherwise; a homogeneous
// block then feeds the Hausdorff-discrete or pure-T1-cofinite extraction.
inline SubspaceCertificate gst1_extract(const CscSpace& s, std::size_t k, const SearchBudget& b,
                                        std::size_t color_cap = detail::kSolverCap) {
  auto wt = detail::window_traces(s, b);
  const auto& pts = wt.pts;
  const auto& pr = wt.traces;
  const std::size_t n = std::min(pts.size(), color_cap);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && pr[i].test(pts[j]))
        fail(errc::not_t1_on_window, "point " + std::to_string(pts[j]) +
                                         " lies in every inspected neighborhood of " +
                                         std::to_string(pts[i]));
  auto color = [&](Point a, Point bb) { return pr[a].intersects(pr[bb]) ? 1 : 0; };
  auto H = solve_rt22(color, n, k);
  if (!H || H->size() < 2) fail(errc::window_too_small, "no homogeneous block of the needed size");
  int c = color((*H)[0], (*H)[1]);
  std::vector<std::size_t> block(H->begin(), H->end());
  if (c == 1) {
    // A color-1 block absorbs every later window point that keeps all pairs
    // color 1: the finite stand-in for the homogeneous set being infinite,
    // which is exactly what the cofinite extraction consumes.
    for (std::size_t w = n; w < pts.size(); ++w) {
      bool all = true;
      for (std::size_t h : block)
        if (!pr[w].intersects(pr[h])) {
          all = false;
          break;
        }
      if (all) block.push_back(w);
    }
  }
  std::vector<Point> hp;
  for (std::size_t i : block) hp.push_back(pts[i]);
  CscSpace sub = subspace_as_space(s, hp);
  SubspaceCertificate cert = c == 0 ? hausdorff_discrete(sub, k, b)
                                    : pure_t1_cofinite(sub, k, b);
  cert.provenance = "gst1";
  Truncation t(&sub, b.window, std::min<std::uint64_t>(b.gen_budget, 64));
  auto rep = verify_certificate(t, cert);
  if (!rep.ok) fail(errc::invariant_violated, "extracted certificate failed self-verification");
  return cert;
}

struct GsParams {
  Point n = 128;
  std::uint64_t m = 64;
  std::size_t k = 4;
};

// Verification scope convention: point-separated tags (discrete, cofinite)
// claim witnesses relative to the subspace the points span, so they are
// checked on the subspace truncation; the remaining tags claim how ambient
// basics slice the points and are checked on the full window.
inline VerifyReport verify_on_window(const CscSpace& s, const SubspaceCertificate& c, Point n,
                                     std::uint64_t m) {
  if (c.tag == MinimalTag::discrete || c.tag == MinimalTag::cofinite) {
    CscSpace sub = subspace_as_space(s, c.points);
    Truncation ts(&sub, n, m);
    return verify_certificate(ts, c);
  }
  Truncation t(&s, n, m);
  return verify_certificate(t, c);
}

// Full five-way split: indiscrete block via the closure quotient, segment
// subspaces via a monotone chain of the specialization order, and the T1
// antichain branch through gst1_extract. The returned certificate is
// re-verified against the run's own truncation.
inline SubspaceCertificate gs_pipeline(const CscSpace& s, const GsParams& params) {
  ClosureRelation cl = closure_relation(s, params.n, params.m);
  SimQuotient q = sim_quotient(cl);
  SubspaceCertificate cert;
  bool built = false;
  for (const auto& cls : q.classes) {
    if (cls.size() >= params.k) {
      cert.tag = MinimalTag::indiscrete;
      cert.provenance = "gs";
      cert.points.assign(cls.begin(), cls.begin() + params.k);
      built = true;
      break;
    }
  }
  if (!built) {
    std::vector<Point> reps = q.representatives;
    if (reps.size() > detail::kSolverCap) reps.resize(detail::kSolverCap);
    OrderWindow w = make_order_window(
        reps.size(), [&](Point a, Point bb) { return cl.leq(reps[a], reps[bb]); });
    auto cac = solve_cac(w, params.k);
    if (cac && cac->kind == CacResult::Kind::chain) {
      std::vector<Point> chain;
      for (Point i : cac->points) chain.push_back(reps[i]);
      OrderWindow lw = make_order_window(
          chain.size(), [&](Point a, Point bb) { return cl.leq(chain[a], chain[bb]); });
      auto ads = solve_ads(lw, params.k);
      if (!ads) fail(errc::window_too_small, "chain admits no monotone run of the needed size");
      std::vector<Point> seq;
      for (Point i : ads->points) seq.push_back(chain[i]);
      bool ascending = ads->kind == AdsResult::Kind::ascending;
      cert.tag = ascending ? MinimalTag::final_segment : MinimalTag::initial_segment;
      cert.provenance = "gs";
      std::vector<std::pair<Point, Nat>> staircase;
      for (std::size_t i = 0; i < seq.size(); ++i) {
        Nat level(0);
        if (ascending && i > 0) {
          const auto& g = cl.refutation(seq[i], seq[i - 1]);
          if (!g) fail(errc::invariant_violated, "missing strictness witness along the chain");
          level = *g;  // already a basis code
        } else if (!ascending && i + 1 < seq.size()) {
          const auto& g = cl.refutation(seq[i], seq[i + 1]);
          if (!g) fail(errc::invariant_violated, "missing strictness witness along the chain");
          level = *g;  // already a basis code
        }
        staircase.push_back({seq[i], level});
      }
      std::sort(staircase.begin(), staircase.end());
      for (auto& [p, lv] : staircase) {
        cert.points.push_back(p);
        cert.point_witness.push_back(lv);
      }
      built = true;
    } else if (cac && cac->kind == CacResult::Kind::antichain) {
      std::vector<Point> anti;
      for (Point i : cac->points) anti.push_back(reps[i]);
      SearchBudget b{std::max<std::uint64_t>(params.m, 64), params.n};
      // The full window keeps the tail points whose shared basics witness
      // cofinite behavior; the antichain subspace discards them, so try the
      // ambient space first and keep the antichain as the fallback when the
      // ambient window is not a T1 block.
      try {
        cert = gst1_extract(s, params.k, b);
      } catch (const error&) {
        cert = gst1_extract(subspace_as_space(s, anti), params.k, b);
      }
      cert.provenance = "gs";
      built = true;
    }
  }
  if (!built) fail(errc::window_too_small, "no branch yields the requested subspace size");
  auto rep = verify_on_window(s, cert, params.n, params.m);
  if (!rep.ok) fail(errc::invariant_violated, "pipeline certificate failed self-verification");
  return cert;
}

struct PointStability {
  Point x = 0;
  enum class Kind { isolated, cofinite_pattern, undetermined } kind = Kind::undetermined;
  std::optional<Nat> witness;
};

// Per-point stability ledger: isolated with a witness, or every inspected
// containing basic cofinite on the window, or undetermined at this budget.
inline std::vector<PointStability> stability_check(const CscSpace& s, Point n, std::uint64_t m) {
  SearchBudget b{m, n};
  std::vector<PointStability> out;
  auto pts = detail::window_points(s, n);
  for (Point x : pts) {
    PointStability ps;
    ps.x = x;
    std::optional<Nat> w;
    try {
      w = singleton_isolated(s, x, b);
    } catch (const error& e) {
      if (e.code() != errc::not_t1_on_window) throw;
    }
    if (w) {
      ps.kind = PointStability::Kind::isolated;
      ps.witness = w;
    } else {
      bool all_cofinite = true;
      for (std::uint64_t z = 0; z < m && all_cofinite; ++z) {
        Mask tr = s.basis_trace(Nat(z), n);
        if (!tr.test(x)) continue;
        std::size_t cnt = tr.count();
        all_cofinite = (pts.size() - cnt) * 2 <= pts.size();
      }
      ps.kind = all_cofinite ? PointStability::Kind::cofinite_pattern
                             : PointStability::Kind::undetermined;
    }
    out.push_back(ps);
  }
  return out;
}

// Cohesive thinning against the first m basics: the largest Boolean cell of
// the window, wrapped as a subspace.
inline Subspace cohesive_stabilize(const CscSpace& s, Point n, std::uint64_t m) {
  auto pts = detail::window_points(s, n);
  std::vector<Mask> sets;
  for (std::uint64_t z = 0; z < m; ++z) {
    Mask tr = s.basis_trace(Nat(z), n);
    Mask over(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (tr.test(pts[i])) over.set(i);
    sets.push_back(over);
  }
  CohResult cell = solve_coh(sets, pts.size());
  Subspace y;
  y.parent = &s;
  for (Point i : cell.points) y.points.push_back(pts[i]);
  return y;
}

// Window oracle for the jump-level questions of the three-branch extraction.
// Every answer is computed at the budget and once more at twice the budget;
// the tame flag records agreement.
class JumpOracle {
 public:
  JumpOracle(const CscSpace* s, Point budget) : s_(s), b_(budget) {}

  struct Answer {
    bool value = false;
    bool tame = true;
  };

  Point budget() const { return b_; }

  Answer empty(const Nat& n) const {
    bool v1 = s_->basis_trace(n, b_).none();
    bool v2 = s_->basis_trace(n, 2 * b_).none();
    return {v2, v1 == v2};
  }

  Answer disjoint(const Nat& m, const Nat& n) const {
    bool v1 = !s_->basis_trace(m, b_).intersects(s_->basis_trace(n, b_));
    bool v2 = !s_->basis_trace(m, 2 * b_).intersects(s_->basis_trace(n, 2 * b_));
    return {v2, v1 == v2};
  }

  Answer subset(const Nat& m, const Nat& n) const {
    bool v1 = s_->basis_trace(m, b_).subset_of(s_->basis_trace(n, b_));
    bool v2 = s_->basis_trace(m, 2 * b_).subset_of(s_->basis_trace(n, 2 * b_));
    return {v2, v1 == v2};
  }

  // Finiteness surrogate: the basic contributes nothing to [B, 2B); the
  // doubled pass asks the same of [2B, 4B).
  Answer finite(const Nat& n) const {
    auto tail_empty = [&](Point lo, Point hi) {
      Mask tr = s_->basis_trace(n, hi);
      for (Point x = lo; x < hi; ++x)
        if (tr.test(x)) return false;
      return true;
    };
    bool v1 = tail_empty(b_, 2 * b_);
    bool v2 = tail_empty(2 * b_, 4 * b_);
    return {v2, v1 == v2};
  }

 private:
  const CscSpace* s_;
  Point b_;
};

struct JumpQuery {
  enum class Kind { empty, disjoint, subset, finite } kind = Kind::empty;
  Nat m = 0, n = 0;
};

inline JumpOracle::Answer jump_query(const JumpOracle& o, const JumpQuery& q) {
  switch (q.kind) {
    case JumpQuery::Kind::empty: return o.empty(q.n);
    case JumpQuery::Kind::disjoint: return o.disjoint(q.m, q.n);
    case JumpQuery::Kind::subset: return o.subset(q.m, q.n);
    case JumpQuery::Kind::finite: return o.finite(q.n);
  }
  return {};
}

// Three-branch extraction for T1 windows guided by the jump oracle: (i) the
// finite-neighborhood points, (ii) a basic with no separated pair inside,
// (iii) the alternating shrink through separated pairs. Any oracle answer
// that flips under budget doubling aborts the run.
inline SubspaceCertificate delta2_extract(const CscSpace& s, const JumpOracle& oracle,
                                          std::size_t count, const SearchBudget& b) {
  auto pts = detail::window_points(s, b.window);
  std::vector<Mask> pr;
  pr.reserve(pts.size());
  std::vector<Nat> pcodes;
  for (Point p : pts) {
    pr.push_back(s.principal_trace(p, b));
    pcodes.push_back(s.principal_code(p, b));
  }
  // T1 precheck over the leading solver block only, as in gst1_extract: a
  // window point inside every inspected neighborhood of another is how a
  // shared cofinite tail looks at this budget, and branch (ii) exists to
  // catch exactly that.
  const std::size_t head = std::min(pts.size(), detail::kSolverCap);
  for (std::size_t i = 0; i < head; ++i)
    for (std::size_t j = 0; j < head; ++j)
      if (i != j && pr[i].test(pts[j]))
        fail(errc::not_t1_on_window, "point " + std::to_string(pts[j]) +
                                         " lies in every inspected neighborhood of " +
                                         std::to_string(pts[i]));
  auto used = [](const JumpOracle::Answer& a) {
    if (!a.tame) fail(errc::oracle_not_tame, "an answer flipped when the budget doubled");
    return a.value;
  };

  // (i) points with a finite-looking principal neighborhood
  std::vector<Point> finite_pts;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (used(oracle.finite(pcodes[i]))) finite_pts.push_back(pts[i]);
  if (finite_pts.size() >= count) {
    std::vector<Point> chosen;
    Mask excluded(b.window);
    for (std::size_t i = 0; i < finite_pts.size() && chosen.size() < count; ++i) {
      Point x = finite_pts[i];
      if (excluded.test(x)) continue;
      chosen.push_back(x);
      std::size_t idx = std::lower_bound(pts.begin(), pts.end(), x) - pts.begin();
      excluded = excluded | pr[idx];
    }
    if (chosen.size() == count) {
      SubspaceCertificate cert;
      cert.tag = MinimalTag::discrete;
      cert.provenance = "delta2-finite";
      cert.points = chosen;
      try {
        detail::attach_discrete_witnesses(s, cert, b);
        return cert;
      } catch (const error& e) {
        if (e.code() != errc::budget_exhausted) throw;
      }
    }
  }

  // (ii) a nonempty basic whose window points admit no separated pair
  for (std::uint64_t z = 1; z < std::min<std::uint64_t>(b.gen_budget, 64); ++z) {
    if (used(oracle.empty(Nat(z)))) continue;
    Mask tr = s.basis_trace(Nat(z), b.window);
    std::vector<Point> inside = tr.to_points();
    if (inside.size() < count) continue;
    try {
      SubspaceCertificate cert = pure_t1_cofinite(subspace_as_space(s, inside), count, b);
      cert.provenance = "delta2-basic";
      return cert;
    } catch (const error& e) {
      if (e.code() != errc::t2_pair_found && e.code() != errc::empty_intersection_within_window &&
          e.code() != errc::budget_exhausted)
        throw;
    }
  }

  // (iii) alternating shrink: inside the current basic find a separated
  // pair, keep one side as the output point and continue in the other.
  std::vector<Point> xs;
  std::vector<Nat> ws;
  Nat ncur(0);
  Point last_x = 0;
  bool have_last = false;
  while (xs.size() < count) {
    Mask tr = s.basis_trace(ncur, b.window);
    std::optional<std::pair<Point, Point>> found;
    std::vector<Point> inside = tr.to_points();
    for (std::size_t i = 0; i < inside.size() && !found; ++i) {
      if (have_last && inside[i] <= last_x) continue;
      for (std::size_t j = 0; j < inside.size() && !found; ++j) {
        if (inside[j] == inside[i]) continue;
        std::size_t pi = std::lower_bound(pts.begin(), pts.end(), inside[i]) - pts.begin();
        std::size_t pj = std::lower_bound(pts.begin(), pts.end(), inside[j]) - pts.begin();
        if (pi >= pts.size() || pj >= pts.size()) continue;
        if (used(oracle.disjoint(pcodes[pi], pcodes[pj]))) found = {inside[i], inside[j]};
      }
    }
    if (!found) fail(errc::window_too_small, "no separated pair inside the current basic");
    auto [x, y] = *found;
    std::size_t pi = std::lower_bound(pts.begin(), pts.end(), x) - pts.begin();
    std::size_t pj = std::lower_bound(pts.begin(), pts.end(), y) - pts.begin();
    Nat m_next = s.k(x, ncur, pcodes[pi]);
    ncur = s.k(y, ncur, pcodes[pj]);
    xs.push_back(x);
    ws.push_back(m_next);
    last_x = x;
    have_last = true;
  }
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j)
      if (s.basis_member(ws[i], xs[j]) != (i == j))
        fail(errc::invariant_violated, "shrink indices do not isolate the extracted points");
  SubspaceCertificate cert;
  cert.tag = MinimalTag::discrete;
  cert.provenance = "delta2-shrink";
  cert.points = xs;
  cert.point_witness = ws;
  return cert;
}

}  // namespace cscw
