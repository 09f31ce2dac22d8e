#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cscw/coding.hpp"
#include "cscw/error.hpp"

namespace cscw {

// Bitset over the point window [0, size).
struct Mask {
  std::size_t size = 0;
  std::vector<std::uint64_t> words;

  Mask() = default;
  explicit Mask(std::size_t n) : size(n), words((n + 63) / 64, 0) {}

  static Mask full(std::size_t n) {
    Mask m(n);
    for (auto& w : m.words) w = ~0ull;
    std::size_t extra = m.words.size() * 64 - n;
    if (!m.words.empty() && extra) m.words.back() >>= extra;
    return m;
  }

  bool test(std::size_t i) const { return (words[i / 64] >> (i % 64)) & 1; }
  void set(std::size_t i) { words[i / 64] |= 1ull << (i % 64); }
  void reset(std::size_t i) { words[i / 64] &= ~(1ull << (i % 64)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }
  bool none() const {
    for (auto w : words)
      if (w) return false;
    return true;
  }
  bool intersects(const Mask& o) const {
    for (std::size_t i = 0; i < words.size(); ++i)
      if (words[i] & o.words[i]) return true;
    return false;
  }
  bool subset_of(const Mask& o) const {
    for (std::size_t i = 0; i < words.size(); ++i)
      if (words[i] & ~o.words[i]) return false;
    return true;
  }
  Mask operator&(const Mask& o) const {
    Mask r(size);
    for (std::size_t i = 0; i < words.size(); ++i) r.words[i] = words[i] & o.words[i];
    return r;
  }
  Mask operator|(const Mask& o) const {
    Mask r(size);
    for (std::size_t i = 0; i < words.size(); ++i) r.words[i] = words[i] | o.words[i];
    return r;
  }
  bool operator==(const Mask& o) const { return size == o.size && words == o.words; }

  std::optional<std::size_t> first_set() const {
    for (std::size_t i = 0; i < words.size(); ++i)
      if (words[i]) return i * 64 + static_cast<std::size_t>(__builtin_ctzll(words[i]));
    return std::nullopt;
  }
  std::vector<Point> to_points() const {
    std::vector<Point> out;
    for (std::size_t i = 0; i < size; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }
};

// Bounds for generator-index scans and window-relative verdicts. gen_budget
// bounds which generator indices are enumerated, window bounds the point
// range evaluations see. Window-relative disjointness answers are reliable
// only when window comfortably exceeds the exclusions the enumerated
// generators can make; callers pick the margin.
struct SearchBudget {
  std::uint64_t gen_budget = 64;
  Point window = 128;
};

// A countable second-countable space presented by a countable generator
// family: the coded basis consists of finite intersections of generators,
// U_code = intersection of V_g over g in the bitmask finite set of code, with
// code 0 denoting the whole carrier.
struct GeneratorFamily {
  std::string rule;
  std::function<bool(Point)> carrier;                 // total
  std::function<bool(std::uint64_t, Point)> member;   // V_g contains x, total
  // Optional analytic hint: generator indices whose set contains x, complete
  // for indices < budget.gen_budget. Absent means numeric enumeration.
  std::function<std::vector<std::uint64_t>(Point, const SearchBudget&)> gens_containing;
};

class CscSpace {
 public:
  explicit CscSpace(GeneratorFamily fam) : fam_(std::move(fam)) {}

  const GeneratorFamily& family() const { return fam_; }
  const std::string& rule() const { return fam_.rule; }

  bool carrier(Point x) const { return fam_.carrier(x); }

  bool generator_member(std::uint64_t g, Point x) const {
    return fam_.carrier(x) && fam_.member(g, x);
  }

  // x in U_code: inside the carrier and in every generator of the code's set.
  bool basis_member(const Nat& code, Point x) const {
    if (!fam_.carrier(x)) return false;
    for (auto g : decode_finset(code))
      if (!fam_.member(g, x)) return false;
    return true;
  }

  // Selector: U_{k(x,m,n)} = U_m cap U_n via the union of the index sets.
  Nat k(Point x, const Nat& m, const Nat& n) const {
    if (!basis_member(m, x) || !basis_member(n, x))
      fail(errc::point_not_in_intersection, "k at point " + std::to_string(x));
    return m | n;
  }

  // Iterated selector over a finite set of basis indices; empty set gives 0.
  Nat kbar(Point x, const std::vector<Nat>& codes) const {
    Nat acc = 0;
    for (const Nat& c : codes) {
      if (!basis_member(c, x))
        fail(errc::point_not_in_intersection, "kbar at point " + std::to_string(x));
      acc |= c;
    }
    return acc;
  }

  Mask basis_trace(const Nat& code, Point window) const {
    Mask m(window);
    auto gens = decode_finset(code);
    for (Point x = 0; x < window; ++x) {
      if (!fam_.carrier(x)) continue;
      bool in = true;
      for (auto g : gens)
        if (!fam_.member(g, x)) {
          in = false;
          break;
        }
      if (in) m.set(x);
    }
    return m;
  }

  // Generator indices below the budget whose set contains x.
  std::vector<std::uint64_t> gens_containing(Point x, const SearchBudget& b) const {
    if (!fam_.carrier(x)) return {};
    if (fam_.gens_containing) {
      auto hinted = fam_.gens_containing(x, b);
      std::vector<std::uint64_t> out;
      for (auto g : hinted)
        if (g < b.gen_budget && fam_.member(g, x)) out.push_back(g);
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }
    std::vector<std::uint64_t> out;
    for (std::uint64_t g = 0; g < b.gen_budget; ++g)
      if (fam_.member(g, x)) out.push_back(g);
    return out;
  }

  // Trace on [0, window) of the intersection of every budgeted generator
  // containing x: the smallest basic neighborhood of x visible at the budget.
  Mask principal_trace(Point x, const SearchBudget& b) const {
    if (!fam_.carrier(x)) return Mask(b.window);
    Mask acc(b.window);
    for (Point w = 0; w < b.window; ++w)
      if (fam_.carrier(w)) acc.set(w);
    for (auto g : gens_containing(x, b)) {
      for (Point w = 0; w < b.window; ++w)
        if (acc.test(w) && !fam_.member(g, w)) acc.reset(w);
    }
    return acc;
  }

  // Basis index of the principal neighborhood used by principal_trace.
  Nat principal_code(Point x, const SearchBudget& b) const {
    return encode_finset(gens_containing(x, b));
  }

 private:
  GeneratorFamily fam_;
};

inline CscSpace make_generated_space(GeneratorFamily fam) { return CscSpace(std::move(fam)); }

// Finite point set inside a parent space, strictly increasing.
struct Subspace {
  const CscSpace* parent = nullptr;
  std::vector<Point> points;
};

inline Subspace restrict(const CscSpace& s, std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  for (Point p : pts)
    if (!s.carrier(p)) fail(errc::point_outside_carrier, std::to_string(p));
  return Subspace{&s, std::move(pts)};
}

// View a point set as a generated space in its own right: the parent's
// generators restricted to Y. Basic sets are exactly U_n ∩ Y and the selector
// is inherited unchanged, so every window-level operation applies verbatim.
inline CscSpace subspace_as_space(const CscSpace& s, std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  for (Point p : pts)
    if (!s.carrier(p)) fail(errc::point_outside_carrier, std::to_string(p));
  auto set = std::make_shared<std::vector<Point>>(std::move(pts));
  const GeneratorFamily& pf = s.family();
  GeneratorFamily fam;
  fam.rule = pf.rule + "|subspace";
  fam.carrier = [set, pc = pf.carrier](Point x) {
    return std::binary_search(set->begin(), set->end(), x) && pc(x);
  };
  fam.member = pf.member;
  fam.gens_containing = pf.gens_containing;
  return CscSpace(std::move(fam));
}

inline CscSpace subspace_as_space(const Subspace& y) {
  return subspace_as_space(*y.parent, y.points);
}

// Trace of a basis element on an explicit point list, as a mask over list
// positions.
inline Mask trace_on(const CscSpace& s, const std::vector<Point>& pts, const Nat& code) {
  Mask m(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (s.basis_member(code, pts[i])) m.set(i);
  return m;
}

// Finite incidence window: points [0,N), basis codes [0,M) eagerly, any other
// column on demand.
class Truncation {
 public:
  Truncation(const CscSpace* s, Point n, std::uint64_t m) : space_(s), n_(n), m_(m) {
    for (std::uint64_t c = 0; c < m_; ++c) columns_[Nat(c)] = s->basis_trace(Nat(c), n_);
  }

  const CscSpace& space() const { return *space_; }
  Point points() const { return n_; }
  std::uint64_t basis_window() const { return m_; }

  const Mask& column(const Nat& code) const {
    auto it = columns_.find(code);
    if (it == columns_.end())
      it = columns_.emplace(code, space_->basis_trace(code, n_)).first;
    return it->second;
  }

  bool incident(const Nat& code, Point x) const { return x < n_ && column(code).test(x); }

 private:
  const CscSpace* space_;
  Point n_;
  std::uint64_t m_;
  mutable std::map<Nat, Mask> columns_;
};

inline Truncation materialize(const CscSpace& s, Point n, std::uint64_t m) {
  return Truncation(&s, n, m);
}

// An open set presented as a union of basis elements: an explicit finite
// list, optionally extended by a total enumeration for lazily-given codes.
struct OpenCode {
  std::vector<Nat> parts;
  std::function<Nat(std::uint64_t)> enumerate;  // optional: i >= parts.size() -> code

  std::optional<Nat> part(std::uint64_t i) const {
    if (i < parts.size()) return parts[i];
    if (enumerate) return enumerate(i);
    return std::nullopt;
  }
};

// Membership of x in the union, scanning the first `budget` parts. Returns
// the witnessing basis index, or nullopt when no inspected part contains x.
inline std::optional<Nat> open_code_eval(const CscSpace& s, const OpenCode& u, Point x,
                                         std::uint64_t budget) {
  for (std::uint64_t i = 0; i < budget; ++i) {
    auto c = u.part(i);
    if (!c) break;
    if (s.basis_member(*c, x)) return *c;
  }
  return std::nullopt;
}

// Shape claims a normalization is performed against. For nested-basis spaces
// every finite union of basics is again basic (the largest part); for
// cofinite-type spaces every nonempty open is cofinite.
enum class SegmentTag { initial_segment, final_segment, almost_cofinite };

struct NormalizedOpen {
  enum class Form { empty, basic, cofinite_set } form = Form::empty;
  Nat basic_code = 0;             // form == basic
  std::vector<Point> exceptions;  // form == cofinite_set: carrier points < tail_bound outside
  Point tail_bound = 0;           // form == cofinite_set: all carrier points >= bound inside
};

// Window-relative normal form of a union of basics in a space carrying a
// shape tag. Nested tags collapse the union to the single largest part;
// the almost-cofinite tag yields an exception list plus tail bound. The
// verdict is exact on [0, budget.window) over the first gen_budget parts.
inline NormalizedOpen open_code_normalize(const CscSpace& s, SegmentTag tag, const OpenCode& u,
                                          const SearchBudget& budget) {
  std::vector<Nat> parts;
  for (std::uint64_t i = 0; i < budget.gen_budget; ++i) {
    auto c = u.part(i);
    if (!c) break;
    parts.push_back(*c);
  }
  const Point w = budget.window;
  Mask uni(w);
  std::vector<Mask> traces;
  traces.reserve(parts.size());
  for (const Nat& c : parts) {
    traces.push_back(s.basis_trace(c, w));
    uni = uni | traces.back();
  }
  NormalizedOpen out;
  if (uni.none()) return out;
  if (tag == SegmentTag::initial_segment || tag == SegmentTag::final_segment) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (traces[i] == uni) {
        out.form = NormalizedOpen::Form::basic;
        out.basic_code = parts[i];
        return out;
      }
    }
    fail(errc::tag_violated_on_window,
         "no single part equals the union on window " + std::to_string(w) +
             "; basics are not nested");
  }
  // almost_cofinite: the union must look cofinite, with a credible margin.
  Point bound = 0;
  for (Point x = 0; x < w; ++x)
    if (s.carrier(x) && !uni.test(x)) bound = x + 1;
  if (bound > w / 2)
    fail(errc::tag_violated_on_window,
         "nonempty union is not cofinite-looking on window " + std::to_string(w));
  out.form = NormalizedOpen::Form::cofinite_set;
  out.tail_bound = bound;
  for (Point x = 0; x < bound; ++x)
    if (s.carrier(x) && !uni.test(x)) out.exceptions.push_back(x);
  return out;
}

}  // namespace cscw
