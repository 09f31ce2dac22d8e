#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cscw/certificate.hpp"
#include "cscw/space.hpp"

namespace cscw {

enum class SepAxiom { T0, T1, T2 };

inline const char* sep_axiom_name(SepAxiom a) {
  switch (a) {
    case SepAxiom::T0: return "T0";
    case SepAxiom::T1: return "T1";
    case SepAxiom::T2: return "T2";
  }
  return "?";
}

struct PairWitness {
  Point x = 0, y = 0;
  Nat m = 0, n = 0;
};

struct SeparationVerdict {
  SepAxiom axiom = SepAxiom::T0;
  bool holds = true;  // window-relative
  std::vector<PairWitness> witnesses;
  std::optional<std::pair<Point, Point>> counterexample;
};

// Checks a separation axiom over the truncation: every relevant point pair
// must have witnesses among the inspected basis columns. Failure is
// exhaustive over the window and names the first failing pair.
inline SeparationVerdict check_separation(const Truncation& t, SepAxiom axiom) {
  SeparationVerdict v;
  v.axiom = axiom;
  const Mask& carrier = t.column(Nat(0));
  std::vector<Point> pts = carrier.to_points();
  const std::uint64_t m = t.basis_window();
  auto one_sided = [&](Point x, Point y) -> std::optional<std::uint64_t> {
    for (std::uint64_t n = 0; n < m; ++n) {
      const Mask& col = t.column(Nat(n));
      if (col.test(x) && !col.test(y)) return n;
    }
    return std::nullopt;
  };
  for (std::size_t i = 0; i < pts.size() && v.holds; ++i) {
    for (std::size_t j = 0; j < pts.size() && v.holds; ++j) {
      Point x = pts[i], y = pts[j];
      switch (axiom) {
        case SepAxiom::T0: {
          if (j <= i) continue;
          auto a = one_sided(x, y);
          auto b = a ? std::nullopt : one_sided(y, x);
          if (a)
            v.witnesses.push_back({x, y, Nat(*a), Nat(*a)});
          else if (b)
            v.witnesses.push_back({y, x, Nat(*b), Nat(*b)});
          else {
            v.holds = false;
            v.counterexample = {x, y};
          }
          break;
        }
        case SepAxiom::T1: {
          if (i == j) continue;
          if (auto a = one_sided(x, y))
            v.witnesses.push_back({x, y, Nat(*a), Nat(*a)});
          else {
            v.holds = false;
            v.counterexample = {x, y};
          }
          break;
        }
        case SepAxiom::T2: {
          if (j <= i) continue;
          bool found = false;
          for (std::uint64_t a = 0; a < m && !found; ++a) {
            const Mask& ca = t.column(Nat(a));
            if (!ca.test(x)) continue;
            for (std::uint64_t b = 0; b < m && !found; ++b) {
              const Mask& cb = t.column(Nat(b));
              if (!cb.test(y) || ca.intersects(cb)) continue;
              v.witnesses.push_back({x, y, Nat(a), Nat(b)});
              found = true;
            }
          }
          if (!found) {
            v.holds = false;
            v.counterexample = {x, y};
          }
          break;
        }
      }
    }
  }
  return v;
}

// Basis index isolating x on the window: collects, for every other window
// point, the least budgeted generator containing x but not it, and joins the
// collection through the selector. Returns nullopt when some point cannot be
// excluded at this budget. Throws when a pair is indistinguishable in both
// directions, which contradicts the T1 precondition.
inline std::optional<Nat> singleton_isolated(const CscSpace& s, Point x, const SearchBudget& b) {
  if (!s.carrier(x)) fail(errc::point_outside_carrier, std::to_string(x));
  auto gx = s.gens_containing(x, b);
  std::vector<std::uint64_t> excluding;
  bool missing = false;
  for (Point w = 0; w < b.window; ++w) {
    if (w == x || !s.carrier(w)) continue;
    std::optional<std::uint64_t> g;
    for (auto gg : gx)
      if (!s.generator_member(gg, w)) {
        g = gg;
        break;
      }
    if (g) {
      excluding.push_back(*g);
      continue;
    }
    bool reverse = false;
    for (auto gg : s.gens_containing(w, b))
      if (!s.generator_member(gg, x)) {
        reverse = true;
        break;
      }
    if (!reverse)
      fail(errc::not_t1_on_window,
           std::to_string(x) + " and " + std::to_string(w) + " are indistinguishable at budget " +
               std::to_string(b.gen_budget));
    missing = true;
  }
  if (missing) return std::nullopt;
  std::sort(excluding.begin(), excluding.end());
  excluding.erase(std::unique(excluding.begin(), excluding.end()), excluding.end());
  std::vector<Nat> codes;
  codes.reserve(excluding.size());
  for (auto g : excluding) codes.push_back(singleton_code(g));
  return s.kbar(x, codes);
}

struct EffectiveDiscreteWitness {
  bool ok = true;
  std::vector<Nat> d;  // aligned with the queried points while ok
  std::optional<Point> failure;
};

// Uniform isolating map for a finite point list; stops at the first point
// with no isolating index within budget.
inline EffectiveDiscreteWitness effectively_discrete_witness(const CscSpace& s,
                                                             const std::vector<Point>& pts,
                                                             const SearchBudget& b) {
  EffectiveDiscreteWitness out;
  for (Point x : pts) {
    std::optional<Nat> w;
    try {
      w = singleton_isolated(s, x, b);
    } catch (const error& e) {
      if (e.code() != errc::not_t1_on_window) throw;
    }
    if (!w) {
      out.ok = false;
      out.failure = x;
      return out;
    }
    out.d.push_back(*w);
  }
  return out;
}

enum class TagStatus { confirmed, consistent, refuted };

inline const char* tag_status_name(TagStatus s) {
  switch (s) {
    case TagStatus::confirmed: return "confirmed";
    case TagStatus::consistent: return "consistent";
    case TagStatus::refuted: return "refuted";
  }
  return "?";
}

struct TagVerdict {
  TagStatus status = TagStatus::consistent;
  std::string note;
};

struct MinimalReport {
  TagVerdict indiscrete, initial_segment, final_segment, discrete, cofinite;

  const TagVerdict& of(MinimalTag t) const {
    switch (t) {
      case MinimalTag::indiscrete: return indiscrete;
      case MinimalTag::initial_segment: return initial_segment;
      case MinimalTag::final_segment: return final_segment;
      case MinimalTag::discrete: return discrete;
      case MinimalTag::cofinite: return cofinite;
      default: return indiscrete;
    }
  }

  std::vector<MinimalTag> confirmed() const {
    std::vector<MinimalTag> out;
    for (MinimalTag t : {MinimalTag::indiscrete, MinimalTag::initial_segment,
                         MinimalTag::final_segment, MinimalTag::discrete, MinimalTag::cofinite})
      if (of(t).status == TagStatus::confirmed) out.push_back(t);
    return out;
  }
};

// Window classification against the five minimal topologies. Refutations
// carry a concrete violating basic or point; confirmations are bounded
// claims: the inspected columns realize the tag's characteristic shape.
// Initial/final confirmation reads the window's natural point order as the
// candidate homeomorphism order — the two tags are mirror images on finite
// data, and the increasing enumeration is the canonical orientation.
inline MinimalReport recognize_minimal(const Truncation& t) {
  MinimalReport rep;
  const Mask& carrier = t.column(Nat(0));
  std::vector<Point> pts = carrier.to_points();
  const std::size_t np = pts.size();
  if (np < 2) {
    std::string note = "fewer than two carrier points on window";
    rep.indiscrete.note = rep.initial_segment.note = rep.final_segment.note = rep.discrete.note =
        rep.cofinite.note = note;
    return rep;
  }
  struct Col {
    std::uint64_t idx;
    std::vector<bool> on;
    std::size_t cnt;
  };
  std::vector<Col> proper;
  std::vector<bool> has_singleton(np, false);
  for (std::uint64_t n = 0; n < t.basis_window(); ++n) {
    const Mask& col = t.column(Nat(n));
    Col c{n, std::vector<bool>(np, false), 0};
    for (std::size_t i = 0; i < np; ++i)
      if (col.test(pts[i])) {
        c.on[i] = true;
        ++c.cnt;
      }
    if (c.cnt == 1)
      for (std::size_t i = 0; i < np; ++i)
        if (c.on[i]) has_singleton[i] = true;
    if (c.cnt > 0 && c.cnt < np) proper.push_back(std::move(c));
  }
  auto is_prefix = [&](const Col& c) {
    for (std::size_t i = 0; i < c.cnt; ++i)
      if (!c.on[i]) return false;
    return true;
  };
  auto is_suffix = [&](const Col& c) {
    for (std::size_t i = np - c.cnt; i < np; ++i)
      if (!c.on[i]) return false;
    return true;
  };
  auto subset = [&](const Col& a, const Col& b) {
    for (std::size_t i = 0; i < np; ++i)
      if (a.on[i] && !b.on[i]) return false;
    return true;
  };
  auto meets = [&](const Col& a, const Col& b) {
    for (std::size_t i = 0; i < np; ++i)
      if (a.on[i] && b.on[i]) return true;
    return false;
  };

  // indiscrete
  if (proper.empty()) {
    rep.indiscrete = {TagStatus::confirmed, "no proper basic on window"};
  } else {
    rep.indiscrete = {TagStatus::refuted,
                      "basic " + std::to_string(proper.front().idx) + " is proper on window"};
  }

  // discrete
  {
    bool all = true;
    for (std::size_t i = 0; i < np && all; ++i)
      if (!has_singleton[i]) {
        rep.discrete = {TagStatus::refuted,
                        "no singleton column for point " + std::to_string(pts[i])};
        all = false;
      }
    if (all) rep.discrete = {TagStatus::confirmed, "singleton column present for every point"};
  }

  // initial-segment / final-segment
  for (int side = 0; side < 2; ++side) {
    TagVerdict& v = side == 0 ? rep.initial_segment : rep.final_segment;
    std::optional<std::uint64_t> bad;
    std::set<std::size_t> sizes;
    for (const Col& c : proper) {
      bool shaped = side == 0 ? is_prefix(c) : is_suffix(c);
      if (!shaped) {
        bad = c.idx;
        break;
      }
      sizes.insert(side == 0 ? c.cnt : np - c.cnt);
    }
    if (bad) {
      v = {TagStatus::refuted, "basic " + std::to_string(*bad) + " is not a natural " +
                                   (side == 0 ? "initial" : "final") + " segment of the window"};
      continue;
    }
    bool consecutive = !sizes.empty();
    std::size_t expect = 1;
    for (auto s : sizes) consecutive = consecutive && s == expect++;
    if (consecutive && sizes.size() >= 2)
      v = {TagStatus::confirmed,
           "nested levels of sizes 1.." + std::to_string(sizes.size()) + " realized"};
    else
      v = {TagStatus::consistent, "no refuting basic, characteristic levels not realized"};
  }

  // cofinite
  {
    std::optional<std::string> refute;
    for (std::size_t i = 0; i < np && !refute; ++i)
      if (has_singleton[i])
        refute = "point " + std::to_string(pts[i]) + " is isolated on window";
    for (std::size_t a = 0; a < proper.size() && !refute; ++a) {
      if ((np - proper[a].cnt) * 2 > np)
        refute = "basic " + std::to_string(proper[a].idx) + " is small on window";
      for (std::size_t b = a + 1; b < proper.size() && !refute; ++b)
        if (!meets(proper[a], proper[b]))
          refute = "basics " + std::to_string(proper[a].idx) + " and " +
                   std::to_string(proper[b].idx) + " are disjoint on window";
    }
    if (refute) {
      rep.cofinite = {TagStatus::refuted, *refute};
    } else {
      bool incomparable = false;
      for (std::size_t a = 0; a < proper.size() && !incomparable; ++a)
        for (std::size_t b = a + 1; b < proper.size() && !incomparable; ++b)
          incomparable = !subset(proper[a], proper[b]) && !subset(proper[b], proper[a]);
      if (incomparable)
        rep.cofinite = {TagStatus::confirmed,
                        "co-small pairwise-meeting incomparable basics with no isolated point"};
      else
        rep.cofinite = {TagStatus::consistent, "no incomparable co-small pair realized"};
    }
  }

  if (rep.confirmed().size() > 1)
    fail(errc::invariant_violated, "two minimal tags confirmed on one window");
  return rep;
}

enum class SegmentSide { initial, final };

struct WeakSegmentVerdict {
  bool holds = false;
  bool clause_a = true, clause_b = true, clause_c = true, clause_d = true;
  std::string note_a, note_b, note_c, note_d;
  std::size_t max_size = 0;  // largest realized level size (initial) or complement size (final)
  Point d_bound = 0;         // first window point not covered per clause (d), or the window end
};

// Clause-by-clause window check of the weak initial/final segment laws:
// (a) every basic finite-looking or full (final: cofinite-looking or empty);
// (b) basics pairwise nested; (c) realized level sizes form a consecutive
// run 1..max; (d) an initial stretch of the window is covered by the finite
// sides of the levels — membership for the initial reading, exclusion for
// the final one, since the least point of a final-segment space lies in no
// proper basic at all and is accounted for by falling outside one.
inline WeakSegmentVerdict check_weak_segment(const Truncation& t, SegmentSide side) {
  WeakSegmentVerdict v;
  const Mask& carrier = t.column(Nat(0));
  std::vector<Point> pts = carrier.to_points();
  const std::size_t np = pts.size();
  const std::uint64_t m = t.basis_window();
  std::vector<const Mask*> cols;
  for (std::uint64_t n = 0; n < m; ++n) cols.push_back(&t.column(Nat(n)));
  std::set<std::size_t> sizes;
  std::vector<bool> covered(np, false);
  for (std::uint64_t n = 0; n < m; ++n) {
    std::size_t cnt = 0;
    for (std::size_t i = 0; i < np; ++i) cnt += cols[n]->test(pts[i]);
    if (side == SegmentSide::initial) {
      bool finite_looking = cnt * 2 <= np;
      bool full = cnt == np;
      if (!finite_looking && !full && v.clause_a) {
        v.clause_a = false;
        v.note_a = "basic " + std::to_string(n) + " is neither finite-looking nor full";
      }
      if (finite_looking && cnt > 0) {
        sizes.insert(cnt);
        for (std::size_t i = 0; i < np; ++i)
          if (cols[n]->test(pts[i])) covered[i] = true;
      }
    } else {
      std::size_t comp = np - cnt;
      bool cofinite_looking = comp * 2 <= np;
      bool empty = cnt == 0;
      if (!cofinite_looking && !empty && v.clause_a) {
        v.clause_a = false;
        v.note_a = "basic " + std::to_string(n) + " is neither cofinite-looking nor empty";
      }
      if (cofinite_looking && comp > 0) {
        sizes.insert(comp);
        for (std::size_t i = 0; i < np; ++i)
          if (!cols[n]->test(pts[i])) covered[i] = true;
      }
    }
  }
  for (std::uint64_t a = 0; a < m && v.clause_b; ++a)
    for (std::uint64_t b = a + 1; b < m && v.clause_b; ++b)
      if (!cols[a]->subset_of(*cols[b]) && !cols[b]->subset_of(*cols[a])) {
        v.clause_b = false;
        v.note_b = "basics " + std::to_string(a) + " and " + std::to_string(b) +
                   " are incomparable on window";
      }
  v.max_size = sizes.empty() ? 0 : *sizes.rbegin();
  std::size_t expect = 1;
  for (auto s : sizes)
    if (s != expect++) {
      v.clause_c = false;
      v.note_c = "no level of size " + std::to_string(expect - 1) + " though size " +
                 std::to_string(v.max_size) + " is realized";
      break;
    }
  if (sizes.empty()) {
    v.clause_c = false;
    v.note_c = "no levels realized on window";
  }
  std::size_t covered_prefix = 0;
  while (covered_prefix < np && covered[covered_prefix]) ++covered_prefix;
  v.d_bound = covered_prefix < np ? pts[covered_prefix] : t.points();
  v.clause_d = covered_prefix >= v.max_size;
  if (!v.clause_d)
    v.note_d = "point " + std::to_string(v.d_bound) + " is not covered by realized levels";
  v.holds = v.clause_a && v.clause_b && v.clause_c && v.clause_d;
  return v;
}

// Builds a finite staircase subspace out of a weak initial/final segment
// window: repeatedly take the least budgeted generator strictly bigger than
// everything used so far, and pick the least fresh point it contributes.
// The certificate levels are aligned so that the i-th point lies in the j-th
// level exactly when i <= j (initial) or i >= j (final).
inline SubspaceCertificate weak_to_segment_subspace(const CscSpace& s, SegmentSide side,
                                                    std::size_t count, const SearchBudget& b) {
  std::vector<std::pair<Point, Nat>> staircase;  // (point, aligned level code)
  Mask used(b.window);
  std::size_t total = 0;
  std::vector<Nat> raw_levels;
  for (std::size_t j = 0; j < count; ++j) {
    std::optional<std::uint64_t> pick;
    Mask pick_trace(b.window);
    for (std::uint64_t g = 0; g < b.gen_budget && !pick; ++g) {
      Mask tr = s.basis_trace(singleton_code(g), b.window);
      if (side == SegmentSide::final) {
        Mask comp(b.window);
        for (Point w = 0; w < b.window; ++w)
          if (s.carrier(w) && !tr.test(w)) comp.set(w);
        tr = comp;
      }
      std::size_t cnt = tr.count();
      if (cnt * 2 <= b.window && cnt >= total + 1) {
        pick = g;
        pick_trace = tr;
      }
    }
    if (!pick)
      fail(errc::budget_exhausted, "no budgeted level of size at least " +
                                       std::to_string(total + 1) + " at step " +
                                       std::to_string(j));
    std::optional<Point> x;
    for (Point w = 0; w < b.window && !x; ++w)
      if (pick_trace.test(w) && !used.test(w)) x = w;
    if (!x) fail(errc::budget_exhausted, "no fresh point at step " + std::to_string(j));
    raw_levels.push_back(singleton_code(*pick));
    total += pick_trace.count();
    for (Point w = 0; w < b.window; ++w)
      if (pick_trace.test(w)) used.set(w);
    staircase.push_back({*x, Nat(0)});
  }
  for (std::size_t j = 0; j < count; ++j)
    staircase[j].second = side == SegmentSide::initial ? raw_levels[j]
                          : j == 0                     ? Nat(0)
                                                       : raw_levels[j - 1];
  std::sort(staircase.begin(), staircase.end());
  SubspaceCertificate cert;
  cert.tag =
      side == SegmentSide::initial ? MinimalTag::initial_segment : MinimalTag::final_segment;
  cert.provenance = "weak-to-segment";
  for (auto& [p, w] : staircase) {
    cert.points.push_back(p);
    cert.point_witness.push_back(w);
  }
  return cert;
}

}  // namespace cscw
