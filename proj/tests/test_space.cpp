#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "cscw/families.hpp"
#include "cscw/space.hpp"

using namespace cscw;

namespace {

template <class F>
errc code_of(F&& f) {
  try {
    f();
  } catch (const error& e) {
    return e.code();
  }
  FAIL("expected the operation to throw");
  return errc::parse_error;
}

std::vector<std::uint64_t> scan_gens(const CscSpace& s, Point x, const SearchBudget& b) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t g = 0; g < b.gen_budget; ++g)
    if (s.generator_member(g, x)) out.push_back(g);
  return out;
}

}  // namespace

TEST_CASE("builtin families match their point-level definitions") {
  CscSpace sing(family_singletons());
  CscSpace init(family_initial_segments());
  CscSpace fin(family_final_segments());
  CscSpace cof(family_cofinite_complements());
  CscSpace lim(family_limit_point());
  CscSpace dya(family_dyadic_splitting());
  CscSpace mul(family_multiples());
  CscSpace thr(family_threshold_tail(10));
  CscSpace ind(family_indiscrete());
  for (std::uint64_t g = 0; g < 24; ++g)
    for (Point x = 0; x < 24; ++x) {
      CAPTURE(g, x);
      CHECK(sing.generator_member(g, x) == (x == g));
      CHECK(init.generator_member(g, x) == (x <= g));
      CHECK(fin.generator_member(g, x) == (x >= g));
      CHECK(cof.generator_member(g, x) == (x != g));
      CHECK(mul.generator_member(g, x) == (g == 0 || x % g == 0));
      CHECK(thr.generator_member(g, x) == (g != 1 || x >= 10));
      CHECK(ind.generator_member(g, x));
      bool limit = g % 2 == 0 ? (x == 0 || x >= g / 2) : (x == g / 2 + 1);
      CHECK(lim.generator_member(g, x) == limit);
      auto [l, a] = unpair_u64(g);
      bool dyadic = a < (std::uint64_t{1} << l) && x % (std::uint64_t{1} << l) == a;
      CHECK(dya.generator_member(g, x) == dyadic);
    }
}

TEST_CASE("generator hints agree with the numeric scan") {
  std::vector<CscSpace> spaces;
  spaces.emplace_back(family_singletons());
  spaces.emplace_back(family_initial_segments());
  spaces.emplace_back(family_final_segments());
  spaces.emplace_back(family_limit_point());
  spaces.emplace_back(family_dyadic_splitting());
  for (const CscSpace& s : spaces)
    for (std::uint64_t budget : {1u, 5u, 16u, 64u})
      for (Point x = 0; x < 40; ++x) {
        SearchBudget b{budget, 64};
        CAPTURE(s.rule(), budget, x);
        CHECK(s.gens_containing(x, b) == scan_gens(s, x, b));
      }
}

TEST_CASE("explicit families respect listing and carrier bound") {
  CscSpace s(family_explicit({{1, 3, 5}, {0, 2}}, Point{6}));
  CHECK(s.carrier(5));
  CHECK_FALSE(s.carrier(6));
  CHECK(s.generator_member(0, 3));
  CHECK_FALSE(s.generator_member(0, 2));
  CHECK(s.generator_member(1, 0));
  CHECK_FALSE(s.generator_member(2, 0));  // out-of-range generator is empty
  CHECK(code_of([&] { restrict(s, {2, 9}); }) == errc::point_outside_carrier);
}

TEST_CASE("code 0 denotes the whole carrier and codes intersect traces") {
  CscSpace s(family_multiples());
  for (Point x = 0; x < 32; ++x) CHECK(s.basis_member(Nat(0), x));
  // code {2,3} = basic V_2 cap V_3 = multiples of 6
  Nat c = encode_finset({2, 3});
  for (Point x = 0; x < 60; ++x) CHECK(s.basis_member(c, x) == (x % 6 == 0));
  Mask tr = s.basis_trace(c, 60);
  for (Point x = 0; x < 60; ++x) CHECK(tr.test(x) == (x % 6 == 0));
}

TEST_CASE("the selector lands in the intersection and rejects outsiders") {
  CscSpace s(family_initial_segments());
  Nat m = encode_finset({4, 9});   // [0,4]
  Nat n = encode_finset({6});      // [0,6]
  Nat k = s.k(3, m, n);
  for (Point w = 0; w < 32; ++w)
    if (s.basis_member(k, w)) {
      CHECK(s.basis_member(m, w));
      CHECK(s.basis_member(n, w));
    }
  CHECK(s.basis_member(k, 3));
  CHECK(code_of([&] { s.k(5, m, n); }) == errc::point_not_in_intersection);
}

TEST_CASE("kbar folds a code list into a basic refinement") {
  std::mt19937_64 rng(424242);
  std::vector<CscSpace> spaces;
  spaces.emplace_back(family_initial_segments());
  spaces.emplace_back(family_multiples());
  spaces.emplace_back(family_cofinite_complements());
  for (const CscSpace& s : spaces) {
    for (int trial = 0; trial < 60; ++trial) {
      // Pick a point first, then codes that all contain it.
      Point x = rng() % 24;
      std::vector<Nat> codes;
      int want = 1 + static_cast<int>(rng() % 4);
      int guard = 0;
      while (static_cast<int>(codes.size()) < want && guard++ < 400) {
        Nat c = encode_finset({rng() % 16, rng() % 16});
        if (s.basis_member(c, x)) codes.push_back(c);
      }
      if (codes.empty()) continue;
      Nat k = s.kbar(x, codes);
      CHECK(s.basis_member(k, x));
      Mask expect = Mask::full(64);
      for (const Nat& c : codes) expect = expect & s.basis_trace(c, 64);
      CHECK(s.basis_trace(k, 64) == expect);
    }
    // Empty fold refines nothing: the full carrier.
    CHECK(s.kbar(7, {}) == Nat(0));
  }
  CscSpace init(family_initial_segments());
  CHECK(code_of([&] { init.kbar(3, {singleton_code(1), singleton_code(2)}); }) ==
        errc::point_not_in_intersection);
}

TEST_CASE("principal traces intersect the containing generators only") {
  SearchBudget b{16, 32};
  CscSpace sing(family_singletons());
  Mask t = sing.principal_trace(5, b);
  CHECK(t.count() == 1);
  CHECK(t.test(5));
  // Beyond the generator budget nothing contains the point, and the empty
  // intersection convention yields the whole carrier window.
  Mask far = sing.principal_trace(20, b);
  CHECK(far.count() == 32);

  CscSpace init(family_initial_segments());
  Mask seg = init.principal_trace(5, b);  // intersection of [0,g] for g in [5,16)
  for (Point w = 0; w < 32; ++w) CHECK(seg.test(w) == (w <= 5));

  CscSpace ind(family_indiscrete());
  CHECK(ind.principal_trace(3, b).count() == 32);
}

TEST_CASE("truncations materialize eager columns and fetch the rest lazily") {
  CscSpace s(family_final_segments());
  Truncation t = materialize(s, 16, 4);
  CHECK(t.points() == 16);
  CHECK(t.basis_window() == 4);
  for (std::uint64_t c = 0; c < 4; ++c)
    for (Point x = 0; x < 16; ++x) CHECK(t.incident(Nat(c), x) == s.basis_member(Nat(c), x));
  // A column far outside the eager window still answers.
  Nat big = encode_finset({3, 9});
  const Mask& col = t.column(big);
  for (Point x = 0; x < 16; ++x) CHECK(col.test(x) == (x >= 9));
  CHECK_FALSE(t.incident(Nat(0), 16));  // outside the point window
}

TEST_CASE("subspaces restrict the carrier and inherit generator meaning") {
  CscSpace s(family_initial_segments());
  CscSpace sub = subspace_as_space(s, {2, 5, 7});
  CHECK(sub.carrier(5));
  CHECK_FALSE(sub.carrier(3));
  CHECK(sub.generator_member(6, 5));
  Mask tr = sub.basis_trace(singleton_code(6), 10);  // [0,6] within {2,5,7}
  CHECK(tr.test(2));
  CHECK(tr.test(5));
  CHECK_FALSE(tr.test(7));
  CHECK_FALSE(tr.test(3));
  std::vector<Point> pts{7, 2, 5, 5};
  Mask on = trace_on(s, pts, singleton_code(6));
  // positions follow the given list order
  CHECK_FALSE(on.test(0));
  CHECK(on.test(1));
  CHECK(on.test(2));
  CHECK(on.test(3));
}

TEST_CASE("open codes evaluate a bounded prefix of their parts") {
  CscSpace s(family_singletons());
  OpenCode u;
  u.parts = {singleton_code(4)};
  u.enumerate = [](std::uint64_t i) { return singleton_code(2 * i); };
  auto hit = open_code_eval(s, u, 4, 8);
  REQUIRE(hit.has_value());
  CHECK(*hit == singleton_code(4));
  // 6 = 2*3 enters through the enumerated tail at index 3.
  hit = open_code_eval(s, u, 6, 8);
  REQUIRE(hit.has_value());
  CHECK(*hit == singleton_code(6));
  CHECK_FALSE(open_code_eval(s, u, 6, 3).has_value());  // budget cuts the tail
  CHECK_FALSE(open_code_eval(s, u, 5, 64).has_value());
  OpenCode finite;
  finite.parts = {singleton_code(1)};
  CHECK_FALSE(open_code_eval(s, finite, 9, 64).has_value());  // list exhausts early
}

TEST_CASE("normalization collapses nested unions to the largest part") {
  CscSpace s(family_initial_segments());
  OpenCode u;
  u.parts = {singleton_code(2), singleton_code(7), singleton_code(4)};
  SearchBudget b{8, 32};
  NormalizedOpen n = open_code_normalize(s, SegmentTag::initial_segment, u, b);
  REQUIRE(n.form == NormalizedOpen::Form::basic);
  CHECK(n.basic_code == singleton_code(7));

  OpenCode empty;
  CHECK(open_code_normalize(s, SegmentTag::initial_segment, empty, b).form ==
        NormalizedOpen::Form::empty);

  // Two incomparable basics in a non-nested space violate the tag.
  CscSpace sing(family_singletons());
  OpenCode bad;
  bad.parts = {singleton_code(1), singleton_code(2)};
  CHECK(code_of([&] { open_code_normalize(sing, SegmentTag::initial_segment, bad, b); }) ==
        errc::tag_violated_on_window);
}

TEST_CASE("normalization reads cofinite unions as exceptions plus a tail") {
  CscSpace s(family_cofinite_complements());
  OpenCode u;
  u.parts = {encode_finset({1, 3})};  // everything except {1,3}
  SearchBudget b{8, 32};
  NormalizedOpen n = open_code_normalize(s, SegmentTag::almost_cofinite, u, b);
  REQUIRE(n.form == NormalizedOpen::Form::cofinite_set);
  CHECK(n.exceptions == std::vector<Point>{1, 3});
  CHECK(n.tail_bound == 4);

  // A union whose complement fills half the window does not look cofinite.
  CscSpace fin(family_final_segments());
  OpenCode tail;
  tail.parts = {singleton_code(30)};
  CHECK(code_of([&] { open_code_normalize(fin, SegmentTag::almost_cofinite, tail, b); }) ==
        errc::tag_violated_on_window);
}
