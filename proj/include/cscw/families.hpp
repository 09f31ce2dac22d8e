#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "cscw/coding.hpp"
#include "cscw/error.hpp"
#include "cscw/space.hpp"

namespace cscw {

inline GeneratorFamily family_indiscrete() {
  GeneratorFamily f;
  f.rule = "indiscrete";
  f.carrier = [](Point) { return true; };
  f.member = [](std::uint64_t, Point) { return true; };
  return f;
}

// V_g = {g}: the discrete space with singleton generators.
inline GeneratorFamily family_singletons() {
  GeneratorFamily f;
  f.rule = "singletons";
  f.carrier = [](Point) { return true; };
  f.member = [](std::uint64_t g, Point x) { return x == g; };
  f.gens_containing = [](Point x, const SearchBudget& b) {
    std::vector<std::uint64_t> out;
    if (x < b.gen_budget) out.push_back(x);
    return out;
  };
  return f;
}

// V_g = [0, g].
inline GeneratorFamily family_initial_segments() {
  GeneratorFamily f;
  f.rule = "initial_segments";
  f.carrier = [](Point) { return true; };
  f.member = [](std::uint64_t g, Point x) { return x <= g; };
  f.gens_containing = [](Point x, const SearchBudget& b) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t g = x; g < b.gen_budget; ++g) out.push_back(g);
    return out;
  };
  return f;
}

// V_g = [g, inf).
inline GeneratorFamily family_final_segments() {
  GeneratorFamily f;
  f.rule = "final_segments";
  f.carrier = [](Point) { return true; };
  f.member = [](std::uint64_t g, Point x) { return x >= g; };
  f.gens_containing = [](Point x, const SearchBudget& b) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t g = 0; g < b.gen_budget && g <= x; ++g) out.push_back(g);
    return out;
  };
  return f;
}

// V_g = N minus {g}: generates the cofinite topology.
inline GeneratorFamily family_cofinite_complements() {
  GeneratorFamily f;
  f.rule = "cofinite_complements";
  f.carrier = [](Point) { return true; };
  f.member = [](std::uint64_t g, Point x) { return x != g; };
  return f;
}

// V_{2m} = {0} union [m, inf), V_{2m+1} = {m+1}: every positive point is
// isolated and 0 is a limit point with 2-point neighborhoods unavailable.
inline GeneratorFamily family_limit_point() {
  GeneratorFamily f;
  f.rule = "limit_point";
  f.carrier = [](Point) { return true; };
  f.member = [](std::uint64_t g, Point x) {
    if (g % 2 == 0) return x == 0 || x >= g / 2;
    return x == g / 2 + 1;
  };
  f.gens_containing = [](Point x, const SearchBudget& b) {
    std::vector<std::uint64_t> out;
    if (x == 0) {
      for (std::uint64_t g = 0; g < b.gen_budget; g += 2) out.push_back(g);
      return out;
    }
    for (std::uint64_t m = 0; m <= x && 2 * m < b.gen_budget; ++m) out.push_back(2 * m);
    if (2 * (x - 1) + 1 < b.gen_budget) out.push_back(2 * (x - 1) + 1);
    std::sort(out.begin(), out.end());
    return out;
  };
  return f;
}

// V_{<l,a>} = {w : w = a mod 2^l}, a < 2^l: every nonempty basic splits into
// two disjoint nonempty basics one level down.
inline GeneratorFamily family_dyadic_splitting() {
  GeneratorFamily f;
  f.rule = "dyadic_splitting";
  auto decode = [](std::uint64_t g) {
    return unpair_u64(g);
  };
  f.carrier = [](Point) { return true; };
  f.member = [decode](std::uint64_t g, Point x) {
    auto [l, a] = decode(g);
    if (l >= 63) return false;
    std::uint64_t mod = 1ull << l;
    if (a >= mod) return false;
    return x % mod == a;
  };
  f.gens_containing = [](Point x, const SearchBudget& b) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t l = 0; l < 63; ++l) {
      Nat g = pair_code(Nat(l), Nat(x % (1ull << l)));
      if (g >= b.gen_budget) break;
      out.push_back(to_u64(g));
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  return f;
}

// V_1 = [t, inf), everything else the full carrier. Its emptiness on a window
// flips as the window passes t; used to exercise oracle tameness checks.
inline GeneratorFamily family_threshold_tail(Point t) {
  GeneratorFamily f;
  f.rule = "threshold_tail";
  f.carrier = [](Point) { return true; };
  f.member = [t](std::uint64_t g, Point x) { return g != 1 || x >= t; };
  return f;
}

// V_g = multiples of g for g >= 1, V_0 the full carrier.
inline GeneratorFamily family_multiples() {
  GeneratorFamily f;
  f.rule = "multiples";
  f.carrier = [](Point) { return true; };
  f.member = [](std::uint64_t g, Point x) { return g == 0 || x % g == 0; };
  return f;
}

// Explicitly listed finite generators, optionally with a bounded carrier.
inline GeneratorFamily family_explicit(std::vector<std::vector<Point>> gens,
                                       std::optional<Point> carrier_bound = std::nullopt) {
  for (auto& g : gens) std::sort(g.begin(), g.end());
  GeneratorFamily f;
  f.rule = "explicit_generators";
  f.carrier = [carrier_bound](Point x) { return !carrier_bound || x < *carrier_bound; };
  f.member = [gens = std::move(gens)](std::uint64_t g, Point x) {
    if (g >= gens.size()) return false;
    return std::binary_search(gens[g].begin(), gens[g].end(), x);
  };
  return f;
}

}  // namespace cscw
