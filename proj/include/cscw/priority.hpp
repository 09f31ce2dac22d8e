#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cscw/functional_table.hpp"
#include "cscw/space.hpp"

namespace cscw {

// Requirement listing in order type omega: position 2x is D_x (keep some
// V_{2<x,y>+1} equal to {x}), position 2i+1 is R_i with (e,u) = unpair(i)
// (defeat the pair of functionals e: subset enumerator, u: witness-index
// map). Lower position = stronger.

struct PriorityAction {
  std::uint64_t stage = 0;
  std::string text;
};

struct ClaimSet {
  std::vector<std::uint64_t> indices;
  Point witness_x = 0;
  bool active = false;
};

struct PriorityState {
  FunctionalTable table;
  std::uint64_t x_bound = 8, y_bound = 8;  // seed materialization window
  std::uint64_t stage = 0;
  std::map<std::uint64_t, std::vector<Point>> enumerated;  // index -> stage points, ascending
  std::map<std::uint64_t, ClaimSet> claims;                // position -> current claim set
  bool any_claimed = false;
  std::uint64_t max_claim = 0;  // over all indices ever claimed, cancelled included
  std::set<std::uint64_t> d_unclaimed;                     // admitted D positions, no claim
  std::set<std::uint64_t> r_eligible;                      // admitted table-backed R, no claim
  std::set<std::uint64_t> backed_functionals;
  std::uint64_t frontier = 0;  // next position to admit
  std::vector<PriorityAction> log;
};

// Every generator carries one seed point from the start: index n = 2p or
// 2p+1 seeds the first component of unpair(p).
inline Point seed_point(std::uint64_t index) {
  return to_u64(unpair_code(Nat(index / 2)).first);
}

inline std::uint64_t dual_index(std::uint64_t even_index) {
  auto [x, y] = unpair_code(Nat(even_index / 2));
  return 2 * to_u64(pair_code(y, x));
}

inline bool v_member(const PriorityState& st, std::uint64_t index, Point w) {
  if (w == seed_point(index)) return true;
  auto it = st.enumerated.find(index);
  return it != st.enumerated.end() &&
         std::binary_search(it->second.begin(), it->second.end(), w);
}

inline PriorityState init_construction(const FunctionalTable& t, std::uint64_t x_bound = 8,
                                       std::uint64_t y_bound = 8) {
  auto rep = check_table_consistency(t);
  if (!rep.consistent)
    fail(errc::inconsistent_table,
         "axioms " + std::to_string(rep.first) + " and " + std::to_string(rep.second));
  PriorityState st;
  st.table = t;
  st.x_bound = x_bound;
  st.y_bound = y_bound;
  for (const Axiom& a : t.axioms) st.backed_functionals.insert(a.e);
  return st;
}

namespace detail {

inline bool r_backed(const PriorityState& st, std::uint64_t position) {
  auto [e, u] = unpair_code(Nat((position - 1) / 2));
  return st.backed_functionals.count(to_u64(e)) && st.backed_functionals.count(to_u64(u));
}

inline void admit_positions(PriorityState& st) {
  while (st.frontier < st.stage) {
    std::uint64_t p = st.frontier++;
    if (p % 2 == 0)
      st.d_unclaimed.insert(p);
    else if (r_backed(st, p))
      st.r_eligible.insert(p);
  }
}

// Indices an R claim may not touch: anything actively claimed by a strictly
// stronger requirement; for even indices also the dual claimed by a
// stronger R; and no two even indices of the set may be duals of each other.
inline bool r_claim_blocked(const PriorityState& st, std::uint64_t position,
                            const std::vector<std::uint64_t>& indices) {
  for (std::uint64_t n : indices) {
    std::optional<std::uint64_t> dual;
    if (n % 2 == 0 && dual_index(n) != n) dual = dual_index(n);
    for (const auto& [q, cs] : st.claims) {
      if (q >= position || !cs.active) continue;
      for (std::uint64_t m : cs.indices) {
        if (m == n) return true;
        if (dual && q % 2 == 1 && m == *dual) return true;
      }
    }
  }
  for (std::uint64_t a : indices)
    for (std::uint64_t b : indices)
      if (a != b && a % 2 == 0 && b % 2 == 0 && dual_index(b) == a) return true;
  return false;
}

struct RSetup {
  Point x = 0;
  std::vector<std::uint64_t> indices;
};

// Attention scan for R at the current stage: the least axiom-backed input x
// with a convergent enumerator hit, a convergent nonempty index set below
// the stage, and no blocking claim.
inline std::optional<RSetup> r_attention(const PriorityState& st, std::uint64_t position) {
  auto [eN, uN] = unpair_code(Nat((position - 1) / 2));
  std::uint64_t e = to_u64(eN), u = to_u64(uN);
  std::string oracle(st.stage, '0');
  std::set<std::uint64_t> candidates;
  for (const Axiom& a : st.table.axioms)
    if (a.e == e && a.x < st.stage) candidates.insert(a.x);
  for (std::uint64_t x : candidates) {
    auto hit = functional_apply(st.table, e, oracle, x, st.stage);
    if (!hit.converges || hit.y != Nat(1)) continue;
    auto idx = functional_apply(st.table, u, oracle, x, st.stage);
    if (!idx.converges || idx.y == 0 || idx.y >= Nat(st.stage)) continue;
    std::vector<std::uint64_t> indices = decode_finset(idx.y);
    if (r_claim_blocked(st, position, indices)) continue;
    return RSetup{x, indices};
  }
  return std::nullopt;
}

}  // namespace detail

// One stage: the strongest admitted requirement requiring attention acts
// (claim for D, cancel-weaker-and-claim for R), then the stage number is
// enumerated into every R-claimed generator whose dual does not already
// hold it, and the stage counter advances.
inline void run_stage(PriorityState& st) {
  detail::admit_positions(st);
  std::optional<std::uint64_t> act_d;
  if (!st.d_unclaimed.empty()) act_d = *st.d_unclaimed.begin();
  std::optional<std::uint64_t> act_r;
  std::optional<detail::RSetup> setup;
  for (std::uint64_t p : st.r_eligible) {
    if (act_d && p > *act_d) break;
    if (auto s = detail::r_attention(st, p)) {
      act_r = p;
      setup = s;
      break;
    }
  }
  if (setup && (!act_d || *act_r < *act_d)) {
    std::uint64_t p = *act_r;
    std::string cancelled;
    for (auto& [q, cs] : st.claims) {
      if (q <= p || !cs.active) continue;
      cs.active = false;
      cancelled += " " + std::to_string(q);
      if (q % 2 == 0)
        st.d_unclaimed.insert(q);
      else if (detail::r_backed(st, q))
        st.r_eligible.insert(q);
    }
    ClaimSet cs;
    cs.indices = setup->indices;
    cs.witness_x = setup->x;
    cs.active = true;
    st.claims[p] = cs;
    for (std::uint64_t n : cs.indices) {
      st.max_claim = st.any_claimed ? std::max(st.max_claim, n) : n;
      st.any_claimed = true;
    }
    st.r_eligible.erase(p);
    std::string idxs;
    for (std::uint64_t n : cs.indices) idxs += " " + std::to_string(n);
    st.log.push_back({st.stage, "R at " + std::to_string(p) + " claims" + idxs + " for x=" +
                                    std::to_string(setup->x) +
                                    (cancelled.empty() ? "" : ", cancels" + cancelled)});
  } else if (act_d) {
    std::uint64_t p = *act_d;
    Point x = p / 2;
    std::uint64_t y = 0;
    while (true) {
      std::uint64_t idx = 2 * to_u64(pair_code(Nat(x), Nat(y))) + 1;
      if (!st.any_claimed || idx > st.max_claim) {
        ClaimSet cs;
        cs.indices = {idx};
        cs.witness_x = x;
        cs.active = true;
        st.claims[p] = cs;
        st.max_claim = st.any_claimed ? std::max(st.max_claim, idx) : idx;
        st.any_claimed = true;
        st.d_unclaimed.erase(p);
        st.log.push_back(
            {st.stage, "D at " + std::to_string(p) + " claims " + std::to_string(idx)});
        break;
      }
      ++y;
    }
  }
  for (const auto& [q, cs] : st.claims) {
    if (!cs.active || q % 2 == 0) continue;
    for (std::uint64_t n : cs.indices) {
      if (n % 2 == 0 && dual_index(n) != n && v_member(st, dual_index(n), st.stage)) {
        st.log.push_back({st.stage, "guard skips " + std::to_string(st.stage) + " for V_" +
                                        std::to_string(n)});
        continue;
      }
      auto& pts = st.enumerated[n];
      if (pts.empty() || pts.back() != st.stage) {
        pts.push_back(st.stage);
        st.log.push_back(
            {st.stage, "enumerate " + std::to_string(st.stage) + " into V_" + std::to_string(n)});
      }
    }
  }
  ++st.stage;
}

struct PriorityAudit {
  std::uint64_t stages = 0;
  std::size_t actions = 0;
  std::size_t enumerations = 0;
  std::size_t guard_skips = 0;
};

namespace detail {

inline void audit_invariants(const PriorityState& st) {
  for (const auto& [n, pts] : st.enumerated) {
    if (n % 2 != 0) continue;
    std::uint64_t nb = dual_index(n);
    if (nb == n) continue;
    for (Point w : pts)
      if (v_member(st, nb, w))
        fail(errc::invariant_violated, "V_" + std::to_string(n) + " meets V_" +
                                           std::to_string(nb) + " at " + std::to_string(w));
    if (v_member(st, nb, seed_point(n)))
      fail(errc::invariant_violated, "seed of V_" + std::to_string(n) + " leaked into its dual");
  }
}

}  // namespace detail

// Batch driver with per-stage invariant audit: the pairwise-dual
// disjointness is asserted after every stage, and the action/enumeration
// discipline is recomputed from the log at the end.
inline PriorityAudit run_stages(PriorityState& st, std::uint64_t stages, bool audit = true) {
  PriorityAudit report;
  for (std::uint64_t i = 0; i < stages; ++i) {
    std::uint64_t before = st.stage;
    std::size_t log_mark = st.log.size();
    run_stage(st);
    std::size_t stage_actions = 0;
    for (std::size_t j = log_mark; j < st.log.size(); ++j) {
      const std::string& t = st.log[j].text;
      if (t.rfind("enumerate", 0) == 0) {
        ++report.enumerations;
        if (st.log[j].text.find(std::to_string(before)) == std::string::npos)
          fail(errc::invariant_violated, "a point entered a generator off its own stage");
      } else if (t.rfind("guard", 0) == 0) {
        ++report.guard_skips;
      } else {
        ++stage_actions;
      }
    }
    if (stage_actions > 1) fail(errc::invariant_violated, "two requirements acted in one stage");
    report.actions += stage_actions;
    if (audit) detail::audit_invariants(st);
  }
  report.stages = st.stage;
  return report;
}

struct PrioritySnapshot {
  CscSpace space;
  std::function<Nat(Point, Point)> e;  // pair of basis codes separating x from y
};

// Freeze the enumeration log into a generator family plus the effective
// Hausdorff witness: e(x,y) joins the codes of V_{2<x,y>} and V_{2<y,x>}.
inline PrioritySnapshot snapshot_space(const PriorityState& st) {
  auto enumerated = std::make_shared<std::map<std::uint64_t, std::vector<Point>>>(st.enumerated);
  GeneratorFamily fam;
  fam.rule = "priority-snapshot";
  fam.carrier = [](Point) { return true; };
  fam.member = [enumerated](std::uint64_t g, Point w) {
    if (w == seed_point(g)) return true;
    auto it = enumerated->find(g);
    return it != enumerated->end() && std::binary_search(it->second.begin(), it->second.end(), w);
  };
  PrioritySnapshot snap{CscSpace(std::move(fam)), nullptr};
  snap.e = [](Point x, Point y) {
    Nat m = singleton_code(2 * to_u64(pair_code(Nat(x), Nat(y))));
    Nat n = singleton_code(2 * to_u64(pair_code(Nat(y), Nat(x))));
    return pair_code(m, n);
  };
  return snap;
}

struct RequirementStatus {
  std::uint64_t position = 0;
  bool is_d = true;
  bool satisfied = false;
  std::string note;
};

// Window reading of the verification paragraphs: D_x is satisfied when its
// claimed generator still holds only the seed; R is satisfied when its
// claimed generators are cofinite over the stages run and their meet is not
// the singleton of the diagonalization witness.
inline std::vector<RequirementStatus> verify_requirements(const PriorityState& st,
                                                          std::uint64_t bound) {
  std::vector<RequirementStatus> out;
  const std::uint64_t w = st.stage;
  for (std::uint64_t p = 0; p < bound; ++p) {
    RequirementStatus rs;
    rs.position = p;
    rs.is_d = p % 2 == 0;
    auto it = st.claims.find(p);
    if (it == st.claims.end() || !it->second.active) {
      rs.note = "no active claim";
      out.push_back(rs);
      continue;
    }
    const ClaimSet& cs = it->second;
    if (rs.is_d) {
      std::uint64_t idx = cs.indices[0];
      auto en = st.enumerated.find(idx);
      bool clean = en == st.enumerated.end() || en->second.empty();
      rs.satisfied = clean && seed_point(idx) == cs.witness_x;
      rs.note = rs.satisfied ? "V_" + std::to_string(idx) + " is the singleton of its seed"
                             : "claimed generator picked up extra points";
    } else {
      bool ok = true;
      std::string why;
      std::vector<Point> meet;
      for (Point q = 0; q < w; ++q) meet.push_back(q);
      for (std::uint64_t n : cs.indices) {
        std::size_t misses = 0;
        std::vector<Point> kept;
        for (Point q : meet)
          if (v_member(st, n, q)) kept.push_back(q);
        for (Point q = 0; q < w; ++q)
          if (!v_member(st, n, q)) ++misses;
        meet = kept;
        if (misses * 2 > w) {
          ok = false;
          why = "V_" + std::to_string(n) + " is not cofinite over the run";
        }
      }
      bool nontrivial = false;
      for (Point q : meet)
        if (q != cs.witness_x) nontrivial = true;
      if (ok && !nontrivial) {
        ok = false;
        why = "claimed meet reduced to the witness singleton";
      }
      rs.satisfied = ok;
      rs.note = ok ? "claimed generators cofinite over the run with a fat meet" : why;
    }
    out.push_back(rs);
  }
  return out;
}

}  // namespace cscw
