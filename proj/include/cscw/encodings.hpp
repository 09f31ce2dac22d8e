#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cscw/certificate.hpp"
#include "cscw/closure.hpp"
#include "cscw/solvers.hpp"
#include "cscw/space.hpp"

namespace cscw {

// Range restriction of f below x at stage s: the values < x enumerated by
// arguments <= s, as a sorted list.
inline std::vector<std::uint64_t> fres(const std::function<std::uint64_t(std::uint64_t)>& f,
                                       std::uint64_t x, std::uint64_t s) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t y = 0; y <= s; ++y)
    if (f(y) < x) out.push_back(f(y));
  std::sort(out.begin(), out.end());
  return out;
}

// Up-set family of a poset on [0,n): generator p is V_p = {q : p <= q}.
inline CscSpace encode_poset(const OrderWindow& w) {
  validate_poset(w);
  GeneratorFamily fam;
  fam.rule = "poset-upsets";
  const OrderWindow order = w;
  fam.carrier = [order](Point x) { return x < order.n; };
  fam.member = [order](std::uint64_t g, Point q) {
    return g < order.n && q < order.n && order.leq(g, q);
  };
  return CscSpace(std::move(fam));
}

// Down-set family of a linear order on [0,n): V_{(x,x)} = {w : w <=_L x} and
// V_{(x,y)} = {w : w <=_L x} minus {y} for x != y.
inline CscSpace encode_linear(const OrderWindow& w) {
  validate_linear(w);
  GeneratorFamily fam;
  fam.rule = "linear-downsets";
  const OrderWindow order = w;
  fam.carrier = [order](Point p) { return p < order.n; };
  fam.member = [order](std::uint64_t g, Point p) {
    auto [xu, yu] = unpair_u64(g);
    if (xu >= order.n || yu >= order.n || p >= order.n) return false;
    if (!order.leq(p, xu)) return false;
    return xu == yu || p != yu;
  };
  return CscSpace(std::move(fam));
}

// V_{(x,y,s)} = {x} together with every w > max(x,s) at which the inner
// universal claim indexed by (x,y) has already failed: (exists z <= w) not
// theta(x,y,z). Each generator is {x} or cofinite depending on whether the
// universal claim holds.
inline CscSpace encode_sigma2(std::function<bool(std::uint64_t, std::uint64_t, std::uint64_t)> theta) {
  GeneratorFamily fam;
  fam.rule = "sigma2-subset";
  fam.carrier = [](Point) { return true; };
  fam.member = [theta = std::move(theta)](std::uint64_t g, Point w) {
    auto [xu, yu, su] = untriple_u64(g);
    if (w == xu) return true;
    if (w <= std::max(xu, su)) return false;
    for (std::uint64_t z = 0; z <= w; ++z)
      if (!theta(xu, yu, z)) return true;
    return false;
  };
  return CscSpace(std::move(fam));
}

// theta for a stable pair-coloring with declared limits: theta(x,y,z) holds
// iff the color of x at stage max(y,z) is 1. The declared limit of each
// column is checked against the coloring up to y_window first.
inline std::function<bool(std::uint64_t, std::uint64_t, std::uint64_t)> stable_coloring_to_sigma2(
    std::function<int(std::uint64_t, std::uint64_t)> c, const std::vector<int>& limit,
    const std::vector<std::uint64_t>& bound, std::uint64_t y_window) {
  if (limit.size() != bound.size()) fail(errc::bad_instance, "limit/bound length mismatch");
  for (std::uint64_t x = 0; x < limit.size(); ++x)
    for (std::uint64_t y = bound[x]; y < y_window; ++y)
      if (c(x, y) != limit[x])
        fail(errc::not_stable_on_window, "column " + std::to_string(x) + " flips at stage " +
                                             std::to_string(y) + " beyond its declared bound");
  return [c = std::move(c)](std::uint64_t x, std::uint64_t y, std::uint64_t z) {
    return c(x, std::max(y, z)) == 1;
  };
}

// V_{(x,s)} = {2x, 2x+1} while f has not enumerated x by stage s, and {2x}
// afterwards. Whether 2x+1 stays in the closure column of 2x records
// membership of x in ran(f).
inline CscSpace encode_injection_closure(std::function<std::uint64_t(std::uint64_t)> f) {
  GeneratorFamily fam;
  fam.rule = "injection-closure";
  fam.carrier = [](Point) { return true; };
  fam.member = [f = std::move(f)](std::uint64_t g, Point w) {
    auto [xu, su] = unpair_u64(g);
    if (w == 2 * xu) return true;
    if (w != 2 * xu + 1) return false;
    for (std::uint64_t y = 0; y <= su; ++y)
      if (f(y) == xu) return false;
    return true;
  };
  return CscSpace(std::move(fam));
}

// Reads x in ran(f) off a computed closure relation for the
// injection-closure family: refuting the entry (2x, 2x+1) is equivalent to f
// enumerating x. Values whose definitive generator lies beyond the
// relation's basis budget are undetermined and reported as nullopt.
inline std::optional<bool> range_via_closure(const ClosureRelation& cl, std::uint64_t domain_len,
                                             std::uint64_t x) {
  if (2 * x + 1 >= cl.points()) return std::nullopt;
  Nat definitive = pair_code(Nat(x), Nat(domain_len));
  if (definitive >= Nat(cl.basis_budget())) return std::nullopt;
  return !cl.in_closure(2 * x, 2 * x + 1);
}

// V_{(x,s)} = {x} plus each z > s at which the range of f below x has grown
// since stage s.
inline CscSpace encode_injection_discrete(std::function<std::uint64_t(std::uint64_t)> f) {
  GeneratorFamily fam;
  fam.rule = "injection-discrete";
  fam.carrier = [](Point) { return true; };
  fam.member = [f = std::move(f)](std::uint64_t g, Point w) {
    auto [xu, su] = unpair_u64(g);
    if (w == xu) return true;
    if (w <= su) return false;
    return fres(f, xu, su) != fres(f, xu, w);
  };
  return CscSpace(std::move(fam));
}

// V_{(x,s)} = {x} plus each w < x whose range restriction is already stable
// between stages x and x+s.
inline CscSpace encode_injection_wgs(std::function<std::uint64_t(std::uint64_t)> f) {
  GeneratorFamily fam;
  fam.rule = "injection-wgs";
  fam.carrier = [](Point) { return true; };
  fam.member = [f = std::move(f)](std::uint64_t g, Point w) {
    auto [xu, su] = unpair_u64(g);
    if (w == xu) return true;
    if (w >= xu) return false;
    return fres(f, w, xu) == fres(f, w, xu + su);
  };
  return CscSpace(std::move(fam));
}

// V_{(x,s)} = {x} plus each z > s sharing the color of x.
inline CscSpace encode_coloring_discrete(std::function<std::uint64_t(std::uint64_t)> c) {
  GeneratorFamily fam;
  fam.rule = "coloring-discrete";
  fam.carrier = [](Point) { return true; };
  fam.member = [c = std::move(c)](std::uint64_t g, Point z) {
    auto [xu, su] = unpair_u64(g);
    if (z == xu) return true;
    return z > su && c(z) == c(xu);
  };
  return CscSpace(std::move(fam));
}

enum class SolutionKind {
  descending_chain,
  ascending_chain,
  antichain,
  phi_side,
  not_phi_side,
  range_below
};

inline const char* solution_kind_name(SolutionKind k) {
  switch (k) {
    case SolutionKind::descending_chain: return "descending-chain";
    case SolutionKind::ascending_chain: return "ascending-chain";
    case SolutionKind::antichain: return "antichain";
    case SolutionKind::phi_side: return "phi-side";
    case SolutionKind::not_phi_side: return "not-phi-side";
    case SolutionKind::range_below: return "range-below";
  }
  return "?";
}

struct DecodedSolution {
  SolutionKind kind = SolutionKind::antichain;
  std::vector<Point> points;
  std::vector<bool> decisions;  // range-below: membership decisions for values < bound
  std::uint64_t bound = 0;      // range-below only
  bool validated = false;
  std::string provenance;
};

namespace detail {

// Staircase order of a segment certificate, recovered analytically: rank of
// a point is the number of aligned levels containing it under the given
// membership predicate. Ranks must be exactly 1..k.
inline std::vector<Point> staircase_order(const SubspaceCertificate& cert,
                                          const std::function<bool(const Nat&, Point)>& member,
                                          bool top_rank_first) {
  const std::size_t k = cert.points.size();
  if (cert.point_witness.size() != k)
    fail(errc::validation_failed, "certificate lacks aligned level witnesses");
  std::vector<std::pair<std::size_t, Point>> ranked;
  std::vector<bool> seen(k + 1, false);
  for (Point p : cert.points) {
    std::size_t h = 0;
    for (const Nat& w : cert.point_witness) h += member(w, p);
    if (h == 0 || h > k || seen[h])
      fail(errc::validation_failed, "level ranks of certificate points are not a staircase");
    seen[h] = true;
    ranked.push_back({h, p});
  }
  std::sort(ranked.begin(), ranked.end());
  std::vector<Point> out;
  for (auto& [h, p] : ranked) out.push_back(p);
  if (top_rank_first) std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Reads a certified subspace of the up-set space back as order-theoretic
// data: initial-segment certificates are descending sequences, final-segment
// ascending, and point-separated windows are antichains.
inline DecodedSolution decode_poset_solution(const OrderWindow& P,
                                             const SubspaceCertificate& cert) {
  DecodedSolution sol;
  sol.provenance = format_certificate(cert);
  for (Point p : cert.points)
    if (p >= P.n) fail(errc::validation_failed, "point " + std::to_string(p) + " outside order");
  auto member = [&P](const Nat& code, Point q) {
    for (auto g : decode_finset(code)) {
      if (g >= P.n || !P.leq(g, q)) return false;
    }
    return true;
  };
  switch (cert.tag) {
    case MinimalTag::initial_segment:
    case MinimalTag::final_segment: {
      bool initial = cert.tag == MinimalTag::initial_segment;
      sol.kind = initial ? SolutionKind::descending_chain : SolutionKind::ascending_chain;
      sol.points = detail::staircase_order(cert, member, initial);
      for (std::size_t i = 0; i + 1 < sol.points.size(); ++i) {
        Point a = sol.points[i], b = sol.points[i + 1];
        bool ok = initial ? P.less(b, a) : P.less(a, b);
        if (!ok)
          fail(errc::validation_failed, "points " + std::to_string(a) + " and " +
                                            std::to_string(b) + " break the decoded chain");
      }
      break;
    }
    case MinimalTag::discrete:
    case MinimalTag::cofinite:
    case MinimalTag::t1_only: {
      sol.kind = SolutionKind::antichain;
      sol.points = cert.points;
      for (std::size_t i = 0; i < sol.points.size(); ++i)
        for (std::size_t j = i + 1; j < sol.points.size(); ++j)
          if (P.comparable(sol.points[i], sol.points[j]))
            fail(errc::validation_failed, "points " + std::to_string(sol.points[i]) + " and " +
                                              std::to_string(sol.points[j]) + " are comparable");
      break;
    }
    default:
      fail(errc::validation_failed, "up-set spaces admit no indiscrete subspace of this size");
  }
  sol.validated = true;
  return sol;
}

// Reads a certified subspace of the down-set space back against the linear
// order: discrete certificates list each point with at most
// |witness-generators| many predecessors among the decoded points, so the
// decoded list ascends; cofinite certificates descend.
inline DecodedSolution decode_linear_solution(const OrderWindow& L,
                                              const SubspaceCertificate& cert) {
  DecodedSolution sol;
  sol.provenance = format_certificate(cert);
  for (Point p : cert.points)
    if (p >= L.n) fail(errc::validation_failed, "point " + std::to_string(p) + " outside order");
  sol.points = cert.points;
  switch (cert.tag) {
    case MinimalTag::discrete: {
      sol.kind = SolutionKind::ascending_chain;
      for (std::size_t i = 0; i < cert.points.size(); ++i) {
        std::size_t preds = 0;
        for (Point q : cert.points)
          if (q != cert.points[i] && L.less(q, cert.points[i])) ++preds;
        if (i < cert.point_witness.size() && preds > finset_size(cert.point_witness[i]))
          fail(errc::validation_failed,
               "point " + std::to_string(cert.points[i]) +
                   " has more predecessors than its isolating witness allows");
      }
      std::sort(sol.points.begin(), sol.points.end(),
                [&L](Point a, Point b) { return L.less(a, b); });
      break;
    }
    case MinimalTag::cofinite: {
      sol.kind = SolutionKind::descending_chain;
      std::sort(sol.points.begin(), sol.points.end(),
                [&L](Point a, Point b) { return L.less(b, a); });
      break;
    }
    default:
      fail(errc::validation_failed, "linear decoding expects a discrete or cofinite certificate");
  }
  for (std::size_t i = 0; i + 1 < sol.points.size(); ++i) {
    Point a = sol.points[i], b = sol.points[i + 1];
    bool ok = sol.kind == SolutionKind::ascending_chain ? L.less(a, b) : L.less(b, a);
    if (!ok)
      fail(errc::validation_failed,
           "points " + std::to_string(a) + " and " + std::to_string(b) + " are not ordered");
  }
  sol.validated = true;
  return sol;
}

// Reads a certified subspace of a sigma2 family as a side decision: a
// discrete subspace certifies the inner universal claim for each decoded
// point (checked over the given bounds), a cofinite subspace certifies its
// failure at every index.
inline DecodedSolution decode_sigma2_solution(
    const std::function<bool(std::uint64_t, std::uint64_t, std::uint64_t)>& theta,
    std::uint64_t y_bound, std::uint64_t z_bound, const SubspaceCertificate& cert) {
  DecodedSolution sol;
  sol.provenance = format_certificate(cert);
  sol.points = cert.points;
  auto phi = [&](std::uint64_t x) {
    for (std::uint64_t y = 0; y < y_bound; ++y) {
      bool all = true;
      for (std::uint64_t z = 0; z < z_bound && all; ++z) all = theta(x, y, z);
      if (all) return true;
    }
    return false;
  };
  switch (cert.tag) {
    case MinimalTag::discrete:
      sol.kind = SolutionKind::phi_side;
      for (Point p : cert.points)
        if (!phi(p))
          fail(errc::validation_failed,
               "point " + std::to_string(p) + " fails the claim its isolation certifies");
      break;
    case MinimalTag::cofinite:
      sol.kind = SolutionKind::not_phi_side;
      for (Point p : cert.points)
        if (phi(p))
          fail(errc::validation_failed,
               "point " + std::to_string(p) + " satisfies the claim its certificate refutes");
      break;
    default:
      fail(errc::validation_failed, "sigma2 decoding expects a discrete or cofinite certificate");
  }
  sol.validated = true;
  return sol;
}

// Reads ran(f) below w off an initial-segment certificate of the wgs family:
// any two certificate points z > x > w witness that the range below w is
// stable by stage z, so the stage-z restriction is the exact answer. The
// decisions are validated against f over the declared domain.
inline DecodedSolution decode_injection_range(const std::function<std::uint64_t(std::uint64_t)>& f,
                                              std::uint64_t domain_len, std::uint64_t w,
                                              const SubspaceCertificate& cert) {
  if (cert.tag != MinimalTag::initial_segment)
    fail(errc::validation_failed, "range decoding expects an initial-segment certificate");
  std::optional<std::uint64_t> x, z;
  for (Point p : cert.points) {
    if (p > w && !x)
      x = p;
    else if (x && p > *x && !z)
      z = p;
  }
  if (!z)
    fail(errc::decoder_window_insufficient,
         "certificate has no two points above " + std::to_string(w));
  DecodedSolution sol;
  sol.kind = SolutionKind::range_below;
  sol.provenance = format_certificate(cert);
  sol.bound = w;
  sol.decisions.assign(w, false);
  for (std::uint64_t y = 0; y <= *z; ++y)
    if (f(y) < w) sol.decisions[f(y)] = true;
  for (std::uint64_t v = 0; v < w; ++v) {
    bool truth = false;
    for (std::uint64_t y = 0; y < domain_len && !truth; ++y) truth = f(y) == v;
    if (truth != sol.decisions[v])
      fail(errc::validation_failed,
           "decoded range disagrees with f at value " + std::to_string(v));
  }
  sol.validated = true;
  return sol;
}

inline std::string format_decoded_solution(const DecodedSolution& s) {
  std::ostringstream os;
  os << "kind: " << solution_kind_name(s.kind) << "\n";
  if (!s.points.empty()) {
    os << "points:";
    for (Point p : s.points) os << ' ' << p;
    os << "\n";
  }
  if (s.kind == SolutionKind::range_below) {
    os << "bound: " << s.bound << "\nrange:";
    for (std::uint64_t v = 0; v < s.bound; ++v)
      if (s.decisions[v]) os << ' ' << v;
    os << "\n";
  }
  os << "validated: " << (s.validated ? "true" : "false") << "\n";
  return os.str();
}

}  // namespace cscw
