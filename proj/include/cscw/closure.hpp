#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cscw/space.hpp"

namespace cscw {

// Window view of the closure relation: <y,x> is in the closure iff every
// basic set containing y contains x. A refutation for (y,x) is a basis index
// whose set contains y but not x; scanning single generators is enough,
// because a basic excludes a point only if some constituent generator does.
class ClosureRelation {
 public:
  ClosureRelation(Point n, std::uint64_t m) : n_(n), m_(m), refutation_(n * n), carrier_(n, false) {}

  Point points() const { return n_; }
  std::uint64_t basis_budget() const { return m_; }
  bool in_carrier(Point x) const { return x < n_ && carrier_[x]; }

  // <y,x> unrefuted at this budget: every inspected basic containing y contains x.
  bool in_closure(Point y, Point x) const { return !refutation_[y * n_ + x].has_value(); }

  const std::optional<Nat>& refutation(Point y, Point x) const { return refutation_[y * n_ + x]; }

  // Specialization order on carrier points: x <= y iff x lies in the closure
  // of y, i.e. every basic containing x contains y. Reflexive and transitive
  // at any budget.
  bool leq(Point x, Point y) const { return in_closure(x, y); }

  friend ClosureRelation closure_relation(const CscSpace& s, Point n, std::uint64_t m);

 private:
  Point n_;
  std::uint64_t m_;
  std::vector<std::optional<Nat>> refutation_;  // indexed y * n_ + x
  std::vector<bool> carrier_;
};

inline ClosureRelation closure_relation(const CscSpace& s, Point n, std::uint64_t m) {
  ClosureRelation cl(n, m);
  SearchBudget b{m, n};
  for (Point y = 0; y < n; ++y) {
    if (!s.carrier(y)) continue;
    cl.carrier_[y] = true;
    for (auto g : s.gens_containing(y, b)) {
      Nat w = singleton_code(g);
      for (Point x = 0; x < n; ++x) {
        if (!s.carrier(x) || s.generator_member(g, x)) continue;
        auto& slot = cl.refutation_[y * n + x];
        if (!slot) slot = w;
      }
    }
  }
  return cl;
}

// Partition of the carrier window by equal closures: x ~ y iff cl(x) = cl(y),
// i.e. the same points lie in the closure of x as of y. Each class is listed
// ascending; classes are ordered by their least member, the representative.
struct SimQuotient {
  std::vector<std::vector<Point>> classes;
  std::vector<Point> representatives;

  std::size_t class_index_of(Point x) const {
    for (std::size_t i = 0; i < classes.size(); ++i)
      for (Point p : classes[i])
        if (p == x) return i;
    return classes.size();
  }
};

inline SimQuotient sim_quotient(const ClosureRelation& cl) {
  SimQuotient q;
  const Point n = cl.points();
  std::vector<bool> assigned(n, false);
  for (Point x = 0; x < n; ++x) {
    if (!cl.in_carrier(x) || assigned[x]) continue;
    std::vector<Point> cls{x};
    assigned[x] = true;
    for (Point y = x + 1; y < n; ++y) {
      if (!cl.in_carrier(y) || assigned[y]) continue;
      bool same = true;
      for (Point w = 0; w < n && same; ++w) {
        if (!cl.in_carrier(w)) continue;
        same = cl.in_closure(w, x) == cl.in_closure(w, y);
      }
      if (same) {
        cls.push_back(y);
        assigned[y] = true;
      }
    }
    q.representatives.push_back(x);
    q.classes.push_back(std::move(cls));
  }
  return q;
}

}  // namespace cscw
