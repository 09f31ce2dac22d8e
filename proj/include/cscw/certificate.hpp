#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cscw/space.hpp"

namespace cscw {

enum class MinimalTag { indiscrete, initial_segment, final_segment, discrete, cofinite, t1_only };

inline const char* tag_name(MinimalTag t) {
  switch (t) {
    case MinimalTag::indiscrete: return "indiscrete";
    case MinimalTag::initial_segment: return "initial-segment";
    case MinimalTag::final_segment: return "final-segment";
    case MinimalTag::discrete: return "discrete";
    case MinimalTag::cofinite: return "cofinite";
    case MinimalTag::t1_only: return "t1-only";
  }
  return "?";
}

inline std::optional<MinimalTag> tag_from_name(const std::string& s) {
  for (MinimalTag t : {MinimalTag::indiscrete, MinimalTag::initial_segment,
                       MinimalTag::final_segment, MinimalTag::discrete, MinimalTag::cofinite,
                       MinimalTag::t1_only})
    if (s == tag_name(t)) return t;
  return std::nullopt;
}

// A finite subspace claim: the listed points, a shape tag, and tag-dependent
// witnesses checkable against the parent space.
//   discrete        point_witness[i] isolates points[i] among the points;
//   initial/final   point_witness[i] is the level aligned with points[i];
//   cofinite        basic_bounds maps basis codes to exception bounds;
//   t1_only         pair_witness[i][j] contains points[i] and avoids points[j];
//   indiscrete      no witnesses (every inspected basic meets the points in
//                   nothing or everything).
struct SubspaceCertificate {
  MinimalTag tag = MinimalTag::indiscrete;
  std::vector<Point> points;  // strictly increasing
  std::vector<Nat> point_witness;
  std::map<Nat, Point> basic_bounds;
  std::vector<std::vector<Nat>> pair_witness;
  std::string provenance;
};

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> failures;

  void flag(std::string msg) {
    ok = false;
    failures.push_back(std::move(msg));
  }
};

namespace detail {

// Incidence of aligned level codes on the certificate points, as ranks:
// h(q) = number of levels whose basic contains q. A valid staircase realizes
// every rank 1..k once, and each point's own level captures exactly the
// points of rank >= its own. The same invariant covers both nesting
// directions; the tag records which infinite-side reading the construction
// claims.
inline std::optional<std::vector<std::size_t>> staircase_ranks(const CscSpace& s,
                                                               const SubspaceCertificate& c,
                                                               VerifyReport& r) {
  const std::size_t k = c.points.size();
  if (c.point_witness.size() != k) {
    r.flag("level count " + std::to_string(c.point_witness.size()) + " != point count " +
           std::to_string(k));
    return std::nullopt;
  }
  std::vector<std::vector<bool>> inc(k, std::vector<bool>(k));  // inc[q][level i]
  for (std::size_t q = 0; q < k; ++q)
    for (std::size_t i = 0; i < k; ++i)
      inc[q][i] = s.basis_member(c.point_witness[i], c.points[q]);
  std::vector<std::size_t> h(k, 0);
  for (std::size_t q = 0; q < k; ++q)
    for (std::size_t i = 0; i < k; ++i)
      if (inc[q][i]) ++h[q];
  std::vector<bool> seen(k + 1, false);
  for (std::size_t q = 0; q < k; ++q) {
    if (h[q] < 1 || h[q] > k || seen[h[q]]) {
      r.flag("ranks are not a permutation of 1.." + std::to_string(k) + " at point " +
             std::to_string(c.points[q]));
      return std::nullopt;
    }
    seen[h[q]] = true;
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t q = 0; q < k; ++q)
      if (inc[q][i] != (h[q] >= h[i])) {
        r.flag("staircase breaks: point " + std::to_string(c.points[q]) + " vs level of " +
               std::to_string(c.points[i]));
        return std::nullopt;
      }
  return h;
}

}  // namespace detail

// Checks a certificate's witnesses against the parent space and scans the
// truncation's basis window for structure the tag forbids. All verdicts are
// window-relative where the property is not decidable from finite data.
inline VerifyReport verify_certificate(const Truncation& t, const SubspaceCertificate& c) {
  VerifyReport r;
  const CscSpace& s = t.space();
  const std::size_t k = c.points.size();
  if (k == 0) {
    r.flag("empty certificate");
    return r;
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (i + 1 < k && c.points[i] >= c.points[i + 1]) {
      r.flag("points not strictly increasing at position " + std::to_string(i));
      return r;
    }
    if (!s.carrier(c.points[i])) {
      r.flag("point " + std::to_string(c.points[i]) + " outside carrier");
      return r;
    }
  }
  auto on_points = [&](const Nat& code) {
    std::vector<bool> m(k);
    for (std::size_t i = 0; i < k; ++i) m[i] = s.basis_member(code, c.points[i]);
    return m;
  };
  switch (c.tag) {
    case MinimalTag::discrete: {
      if (c.point_witness.size() != k) {
        r.flag("witness count mismatch");
        break;
      }
      for (std::size_t i = 0; i < k; ++i) {
        auto m = on_points(c.point_witness[i]);
        for (std::size_t q = 0; q < k; ++q)
          if (m[q] != (q == i)) {
            r.flag("witness for " + std::to_string(c.points[i]) +
                   " does not isolate it among the points");
            break;
          }
      }
      break;
    }
    case MinimalTag::initial_segment:
    case MinimalTag::final_segment: {
      auto ranks = detail::staircase_ranks(s, c, r);
      if (!ranks) break;
      // No inspected basic may break the monotone nesting: each must trace to
      // a rank-upward-closed subset of the points.
      const std::vector<std::size_t>& h = *ranks;
      for (std::uint64_t n = 0; r.ok && n < t.basis_window(); ++n) {
        auto m = on_points(Nat(n));
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = 0; b < k; ++b)
            if (m[a] && h[b] >= h[a] && !m[b]) {
              r.flag("basic " + std::to_string(n) + " breaks nesting at points " +
                     std::to_string(c.points[a]) + "," + std::to_string(c.points[b]));
              n = t.basis_window();
              a = b = k;
            }
      }
      break;
    }
    case MinimalTag::cofinite: {
      for (std::uint64_t n = 0; n < t.basis_window(); ++n) {
        if (t.column(Nat(n)).none()) continue;
        auto it = c.basic_bounds.find(Nat(n));
        Point bound = it == c.basic_bounds.end() ? 0 : it->second;
        for (std::size_t q = 0; q < k; ++q)
          if (c.points[q] >= bound && !s.basis_member(Nat(n), c.points[q]))
            r.flag("basic " + std::to_string(n) + " misses point " +
                   std::to_string(c.points[q]) + " beyond its bound " + std::to_string(bound));
      }
      break;
    }
    case MinimalTag::indiscrete: {
      for (std::uint64_t n = 0; n < t.basis_window(); ++n) {
        auto m = on_points(Nat(n));
        std::size_t cnt = 0;
        for (std::size_t q = 0; q < k; ++q) cnt += m[q];
        if (cnt != 0 && cnt != k)
          r.flag("basic " + std::to_string(n) + " meets the points in a proper nonempty part");
      }
      break;
    }
    case MinimalTag::t1_only: {
      if (c.pair_witness.size() != k) {
        r.flag("pair witness matrix size mismatch");
        break;
      }
      for (std::size_t i = 0; i < k; ++i) {
        if (c.pair_witness[i].size() != k) {
          r.flag("pair witness row size mismatch");
          break;
        }
        for (std::size_t j = 0; j < k; ++j) {
          if (i == j) continue;
          const Nat& w = c.pair_witness[i][j];
          if (!s.basis_member(w, c.points[i]) || s.basis_member(w, c.points[j]))
            r.flag("t1 witness fails for pair " + std::to_string(c.points[i]) + "," +
                   std::to_string(c.points[j]));
        }
      }
      break;
    }
  }
  return r;
}

inline std::string format_certificate(const SubspaceCertificate& c) {
  std::string out;
  out += "tag: ";
  out += tag_name(c.tag);
  out += "\npoints:";
  for (Point p : c.points) out += " " + std::to_string(p);
  out += "\n";
  if (!c.point_witness.empty()) {
    out += "witnesses:";
    for (const Nat& w : c.point_witness) out += " " + w.str();
    out += "\n";
  }
  if (!c.basic_bounds.empty()) {
    out += "bounds:";
    for (const auto& [code, b] : c.basic_bounds) out += " " + code.str() + ":" + std::to_string(b);
    out += "\n";
  }
  if (!c.pair_witness.empty()) {
    out += "pair-witnesses:\n";
    for (std::size_t i = 0; i < c.pair_witness.size(); ++i) {
      out += " ";
      for (std::size_t j = 0; j < c.pair_witness[i].size(); ++j)
        out += " " + c.pair_witness[i][j].str();
      out += "\n";
    }
  }
  if (!c.provenance.empty()) out += "provenance: " + c.provenance + "\n";
  return out;
}

}  // namespace cscw
