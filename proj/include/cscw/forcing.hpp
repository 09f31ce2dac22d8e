#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cscw/functional_table.hpp"

namespace cscw {

// Join oracle with X on even bits and the characteristic function of F on
// odd bits; the usable length is twice the X prefix.
inline std::string join_oracle(const std::string& x_prefix, const std::vector<std::uint64_t>& f) {
  std::string out(2 * x_prefix.size(), '0');
  for (std::size_t i = 0; i < x_prefix.size(); ++i) {
    out[2 * i] = x_prefix[i];
    if (std::find(f.begin(), f.end(), i) != f.end()) out[2 * i + 1] = '1';
  }
  return out;
}

struct ConstraintTree {
  std::string x_prefix;
  std::vector<std::uint64_t> f;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> h;
  std::vector<std::uint64_t> j;
  std::uint64_t max_f = 0;
  std::vector<std::string> strings;  // sorted by length then lexicographically

  bool contains(const std::string& s) const {
    auto cmp = [](const std::string& a, const std::string& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    };
    return std::binary_search(strings.begin(), strings.end(), s, cmp);
  }
};

namespace detail {

inline bool string_qualifies(const FunctionalTable& t, const std::string& join,
                             const std::string& sigma,
                             const std::vector<std::pair<std::uint64_t, std::uint64_t>>& h,
                             const std::vector<std::uint64_t>& j) {
  for (std::uint64_t e = 0; e < sigma.size(); ++e) {
    auto r = functional_apply(t, e, join, e, sigma.size());
    if (r.converges && Nat(sigma[e] - '0') == r.y) return false;
  }
  for (auto [e, k] : h) {
    std::vector<std::uint64_t> hits;
    for (std::uint64_t x = k + 1; x <= sigma.size(); ++x) {
      auto r = functional_apply(t, e, sigma, x);
      if (r.converges && r.y == Nat(1)) hits.push_back(x);
    }
    if (hits.size() >= 2) return false;
  }
  for (std::uint64_t e : j) {
    auto r = functional_apply(t, e, sigma, e);
    if (r.converges) return false;
  }
  return true;
}

}  // namespace detail

// Exhaustive enumeration of the strings of length at most max F that pass
// the diagonal clause against the join oracle, the single-hit clause for
// each pair in H, and the divergence clause for each index in J.
inline ConstraintTree build_tree(const FunctionalTable& t, const std::string& x_prefix,
                                 const std::vector<std::uint64_t>& f,
                                 const std::vector<std::pair<std::uint64_t, std::uint64_t>>& h,
                                 const std::vector<std::uint64_t>& j) {
  auto rep = check_table_consistency(t);
  if (!rep.consistent)
    fail(errc::inconsistent_table,
         "axioms " + std::to_string(rep.first) + " and " + std::to_string(rep.second));
  if (f.empty()) fail(errc::bad_instance, "constraint set F must be nonempty");
  ConstraintTree tree;
  tree.x_prefix = x_prefix;
  tree.f = f;
  tree.h = h;
  tree.j = j;
  tree.max_f = *std::max_element(f.begin(), f.end());
  if (tree.max_f > 20) fail(errc::bad_instance, "max F too large for exhaustive enumeration");
  if (2 * x_prefix.size() < tree.max_f)
    fail(errc::bad_instance, "oracle prefix shorter than the uses max F allows");
  std::string join = join_oracle(x_prefix, f);
  for (std::uint64_t len = 0; len <= tree.max_f; ++len) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << len); ++bits) {
      std::string sigma(len, '0');
      for (std::uint64_t i = 0; i < len; ++i)
        if (bits & (std::uint64_t{1} << i)) sigma[i] = '1';
      if (detail::string_qualifies(t, join, sigma, h, j)) tree.strings.push_back(sigma);
    }
  }
  std::sort(tree.strings.begin(), tree.strings.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  for (const std::string& s : tree.strings)
    if (!s.empty() && !tree.contains(s.substr(0, s.size() - 1)))
      fail(errc::invariant_violated, "tree is not prefix-closed at " + s);
  return tree;
}

inline bool looks_extendible(const ConstraintTree& t) {
  for (const std::string& s : t.strings)
    if (s.size() == t.max_f) return true;
  return false;
}

struct StructuralCase {
  std::string x_prefix;
  std::vector<std::uint64_t> f0, f1;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> h0, h1;
  std::vector<std::uint64_t> j0, j1;
};

struct StructuralReport {
  std::size_t cases_checked = 0;
  bool prefix_closed = true;      // part (1)
  bool f_monotone = true;         // part (2)
  bool constraint_monotone = true;  // part (3)
};

namespace detail {

template <class T>
inline bool is_subset(const std::vector<T>& a, const std::vector<T>& b) {
  for (const T& x : a)
    if (std::find(b.begin(), b.end(), x) == b.end()) return false;
  return true;
}

inline void check_hypotheses(const StructuralCase& c) {
  if (c.f0.empty() || c.f1.empty()) fail(errc::hypothesis_violated, "empty constraint set F");
  if (!is_subset(c.f0, c.f1) || !is_subset(c.h0, c.h1) || !is_subset(c.j0, c.j1))
    fail(errc::hypothesis_violated, "case families are not inclusion chains");
  std::uint64_t max_f0 = *std::max_element(c.f0.begin(), c.f0.end());
  for (std::uint64_t v : c.f1)
    if (std::find(c.f0.begin(), c.f0.end(), v) == c.f0.end() && v <= max_f0)
      fail(errc::hypothesis_violated, "new F element does not exceed max of the old set");
}

}  // namespace detail

// Exhaustive check of the three finitary structural clauses over a case
// corpus: each built tree is a tree; growing F preserves the strings up to
// the old maximum; growing H or J shrinks the tree stringwise.
inline StructuralReport check_structural(const FunctionalTable& t,
                                         const std::vector<StructuralCase>& cases) {
  StructuralReport rep;
  for (const StructuralCase& c : cases) {
    detail::check_hypotheses(c);
    ConstraintTree t00 = build_tree(t, c.x_prefix, c.f0, c.h0, c.j0);
    ConstraintTree t10 = build_tree(t, c.x_prefix, c.f1, c.h0, c.j0);
    ConstraintTree t01 = build_tree(t, c.x_prefix, c.f0, c.h1, c.j1);
    ConstraintTree t11 = build_tree(t, c.x_prefix, c.f1, c.h1, c.j1);
    // (1) is asserted inside build_tree; reaching here means it held.
    std::uint64_t cut = t00.max_f;
    for (const std::string& s : t00.strings)
      if (!t10.contains(s)) rep.f_monotone = false;
    for (const std::string& s : t10.strings)
      if (s.size() <= cut && !t00.contains(s)) rep.f_monotone = false;
    for (const std::string& s : t01.strings)
      if (!t11.contains(s)) rep.f_monotone = false;
    for (const std::string& s : t11.strings)
      if (s.size() <= cut && !t01.contains(s)) rep.f_monotone = false;
    for (const std::string& s : t01.strings)
      if (!t00.contains(s)) rep.constraint_monotone = false;
    for (const std::string& s : t11.strings)
      if (!t10.contains(s)) rep.constraint_monotone = false;
    ++rep.cases_checked;
  }
  return rep;
}

struct ChainCase {
  std::string x_prefix;
  std::vector<std::vector<std::uint64_t>> fs;  // strictly growing constraint sets
  std::vector<std::pair<std::uint64_t, std::uint64_t>> h;
  std::vector<std::uint64_t> j;
};

// Finite surrogate of the infinitary clause: along a growing chain whose
// trees all look extendible, the cumulative string set grows strictly with
// each extension of max F.
inline bool check_chain_surrogate(const FunctionalTable& t, const ChainCase& c) {
  if (c.fs.size() < 2) fail(errc::hypothesis_violated, "chain needs at least two sets");
  for (std::size_t i = 0; i + 1 < c.fs.size(); ++i) {
    StructuralCase sc;
    sc.x_prefix = c.x_prefix;
    sc.f0 = c.fs[i];
    sc.f1 = c.fs[i + 1];
    sc.h0 = sc.h1 = c.h;
    sc.j0 = sc.j1 = c.j;
    detail::check_hypotheses(sc);
  }
  std::size_t prev = 0;
  for (std::size_t i = 0; i < c.fs.size(); ++i) {
    ConstraintTree tree = build_tree(t, c.x_prefix, c.fs[i], c.h, c.j);
    if (!looks_extendible(tree)) return false;
    if (i > 0 && tree.strings.size() <= prev) return false;
    prev = tree.strings.size();
  }
  return true;
}

}  // namespace cscw
