#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <vector>

#include "cscw/closure.hpp"
#include "cscw/encodings.hpp"
#include "cscw/families.hpp"

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

}  // namespace

TEST_CASE("finite range restrictions are sorted stage snapshots") {
  auto f = [](std::uint64_t y) { return 7 - y; };  // 7,6,5,... injective on [0,8)
  CHECK(fres(f, 8, 3) == std::vector<std::uint64_t>{4, 5, 6, 7});
  CHECK(fres(f, 6, 3) == std::vector<std::uint64_t>{4, 5});
  CHECK(fres(f, 4, 0) == std::vector<std::uint64_t>{});
  CHECK(fres([](std::uint64_t y) { return 2 * y; }, 7, 10) ==
        std::vector<std::uint64_t>{0, 2, 4, 6});
}

TEST_CASE("up-set encoding reproduces the order as its closure relation") {
  // Divisibility on [1..12] shifted to positions [0,12).
  OrderWindow P = make_order_window(12, [](Point x, Point y) {
    return (y + 1) % (x + 1) == 0;
  });
  validate_poset(P);
  CscSpace enc = encode_poset(P);
  CHECK(enc.rule() == "poset-upsets");
  for (Point p = 0; p < 12; ++p)
    for (Point q = 0; q < 12; ++q) CHECK(enc.generator_member(p, q) == P.leq(p, q));
  CHECK_FALSE(enc.carrier(12));
  // Closure specializes exactly to the order.
  ClosureRelation cl = closure_relation(enc, 12, 12);
  for (Point p = 0; p < 12; ++p)
    for (Point q = 0; q < 12; ++q) CHECK(cl.leq(p, q) == P.leq(p, q));
  OrderWindow bad = make_order_window(3, [](Point, Point) { return true; });
  CHECK(code_of([&] { encode_poset(bad); }) == errc::invalid_order);
}

TEST_CASE("down-set encoding punctures single points to regain T1") {
  // Linear order 2 < 0 < 1 on positions {0,1,2}.
  std::vector<std::size_t> rank{1, 2, 0};
  OrderWindow L = make_order_window(3, [&](Point x, Point y) { return rank[x] <= rank[y]; });
  CscSpace enc = encode_linear(L);
  CHECK(enc.rule() == "linear-downsets");
  for (Point x = 0; x < 3; ++x)
    for (Point y = 0; y < 3; ++y)
      for (Point p = 0; p < 3; ++p) {
        bool expect = L.leq(p, x) && (x == y || p != y);
        CHECK(enc.generator_member(to_u64(pair_code(Nat(x), Nat(y))), p) == expect);
      }
  // The punctures refute every nontrivial closure pair within budget.
  ClosureRelation cl = closure_relation(enc, 3, 64);
  for (Point a = 0; a < 3; ++a)
    for (Point b = 0; b < 3; ++b) CHECK(cl.leq(a, b) == (a == b));
}

TEST_CASE("sigma2 generators are singletons or tails depending on the claim") {
  // theta(x,y,z) = x even or z <= y: the inner claim holds exactly for even x.
  auto theta = [](std::uint64_t x, std::uint64_t, std::uint64_t z) {
    return x % 2 == 0 || z <= 2;
  };
  CscSpace enc = encode_sigma2(theta);
  // Even x: V_(x,y,s) = {x}.
  std::uint64_t g = to_u64(triple_code(Nat(4), Nat(0), Nat(2)));
  for (Point w = 0; w < 24; ++w) CHECK(enc.generator_member(g, w) == (w == 4));
  // Odd x: {x} plus the tail beyond max(x, s) where some z <= w refutes.
  g = to_u64(triple_code(Nat(3), Nat(0), Nat(6)));
  for (Point w = 0; w < 24; ++w)
    CHECK(enc.generator_member(g, w) == (w == 3 || w >= 7));
  // The refuting z must itself be below the window point: tail starts only
  // once z = 3 is reachable.
  g = to_u64(triple_code(Nat(1), Nat(0), Nat(0)));
  for (Point w = 0; w < 24; ++w)
    CHECK(enc.generator_member(g, w) == (w == 1 || w >= 3));
}

TEST_CASE("stable colorings induce sigma2 claims and reject bad declarations") {
  // Column x stabilizes to x % 2 at stage x.
  auto c = [](std::uint64_t x, std::uint64_t y) {
    return y < x ? 1 - static_cast<int>(x % 2) : static_cast<int>(x % 2);
  };
  std::vector<int> limit{0, 1, 0, 1};
  std::vector<std::uint64_t> bound{0, 1, 2, 3};
  auto theta = stable_coloring_to_sigma2(c, limit, bound, 16);
  for (std::uint64_t x = 0; x < 4; ++x)
    for (std::uint64_t y = 0; y < 8; ++y)
      for (std::uint64_t z = 0; z < 8; ++z)
        CHECK(theta(x, y, z) == (c(x, std::max(y, z)) == 1));

  std::vector<int> wrong{1, 1, 0, 1};  // column 0 never settles on 1
  CHECK(code_of([&] { stable_coloring_to_sigma2(c, wrong, bound, 16); }) ==
        errc::not_stable_on_window);
  CHECK(code_of([&] { stable_coloring_to_sigma2(c, limit, {0, 1}, 16); }) == errc::bad_instance);
}

TEST_CASE("injection closure columns decide range membership") {
  auto f = [](std::uint64_t y) { return 2 * y; };  // range: the evens
  CscSpace enc = encode_injection_closure(f);
  // V_(x,s) always holds 2x; it keeps 2x+1 until f enumerates x by stage s.
  std::uint64_t g = to_u64(pair_code(Nat(3), Nat(0)));  // 3 = f(?) -- not yet at stage 0
  CHECK(enc.generator_member(g, 6));
  CHECK(enc.generator_member(g, 7));
  g = to_u64(pair_code(Nat(3), Nat(5)));  // odd, never enumerated: still both
  CHECK(enc.generator_member(g, 7));

  const std::uint64_t domain = 8;
  ClosureRelation cl = closure_relation(enc, 22, 4096);
  for (std::uint64_t v = 0; v < 6; ++v) {
    auto r = range_via_closure(cl, domain, v);
    if (to_u64(pair_code(Nat(v), Nat(domain))) < 4096 && 2 * v + 1 < 22) {
      REQUIRE(r.has_value());
      CHECK(*r == (v % 2 == 0));
    }
  }
  // Tight budgets refuse to answer instead of guessing.
  ClosureRelation tiny = closure_relation(enc, 4, 8);
  CHECK_FALSE(range_via_closure(tiny, domain, 9).has_value());
  CHECK_FALSE(range_via_closure(tiny, domain, 1).has_value());
}

TEST_CASE("injection and coloring point families mark stage growth") {
  auto f = [](std::uint64_t y) { return 3 * y; };
  CscSpace disc = encode_injection_discrete(f);
  // V_(x,s) = {x} plus stages z > s where ran(f) below x grew after s.
  std::uint64_t g = to_u64(pair_code(Nat(7), Nat(0)));
  // fres(7, 0) = {0}; it grows at stages 1 (adds 3) and 2 (adds 6), so any
  // z >= 1 differs from stage 0.
  CHECK(disc.generator_member(g, 7));
  CHECK_FALSE(disc.generator_member(g, 0));
  CHECK(disc.generator_member(g, 1));
  CHECK(disc.generator_member(g, 5));
  g = to_u64(pair_code(Nat(7), Nat(2)));  // by stage 2 the range below 7 is complete
  CHECK(disc.generator_member(g, 7));
  CHECK_FALSE(disc.generator_member(g, 9));

  CscSpace wgs = encode_injection_wgs(f);
  // V_(x,s) = {x} plus w < x whose restriction is stable between x and x+s.
  g = to_u64(pair_code(Nat(4), Nat(3)));
  // fres(w,4) vs fres(w,7): w=1: {0} vs {0} stable; w=2: {0} vs {0} stable.
  CHECK(wgs.generator_member(g, 4));
  CHECK(wgs.generator_member(g, 1));
  CHECK(wgs.generator_member(g, 2));
  CHECK_FALSE(wgs.generator_member(g, 5));  // only w <= x enter
  g = to_u64(pair_code(Nat(1), Nat(4)));
  // fres(0, 1) = {} = fres(0, 5): 0 qualifies below x=1.
  CHECK(wgs.generator_member(g, 0));

  CscSpace col = encode_coloring_discrete([](std::uint64_t z) { return z % 3; });
  g = to_u64(pair_code(Nat(2), Nat(4)));
  for (Point z = 0; z < 16; ++z)
    CHECK(col.generator_member(g, z) == (z == 2 || (z > 4 && z % 3 == 2)));
}

TEST_CASE("poset decoding turns staircases into chains and windows into antichains") {
  OrderWindow chain = make_order_window(5, [](Point x, Point y) { return x <= y; });
  SubspaceCertificate cert;
  cert.tag = MinimalTag::initial_segment;
  cert.points = {0, 1, 2};
  for (Point p : cert.points) cert.point_witness.push_back(singleton_code(p));
  DecodedSolution sol = decode_poset_solution(chain, cert);
  CHECK(sol.kind == SolutionKind::descending_chain);
  CHECK(sol.points == std::vector<Point>{2, 1, 0});
  CHECK(sol.validated);
  CHECK(format_decoded_solution(sol).find("descending-chain") != std::string::npos);

  cert.tag = MinimalTag::final_segment;
  sol = decode_poset_solution(chain, cert);
  CHECK(sol.kind == SolutionKind::ascending_chain);
  CHECK(sol.points == std::vector<Point>{0, 1, 2});

  // An antichain certificate must avoid comparabilities.
  OrderWindow flat = make_order_window(6, [](Point x, Point y) { return x == y; });
  SubspaceCertificate disc;
  disc.tag = MinimalTag::discrete;
  disc.points = {1, 3, 5};
  disc.point_witness = {Nat(1), Nat(1), Nat(1)};
  sol = decode_poset_solution(flat, disc);
  CHECK(sol.kind == SolutionKind::antichain);
  CHECK(sol.points == disc.points);
  CHECK(code_of([&] { decode_poset_solution(chain, disc); }) == errc::validation_failed);

  SubspaceCertificate out = disc;
  out.points = {1, 7};
  out.point_witness = {Nat(1), Nat(1)};
  CHECK(code_of([&] { decode_poset_solution(flat, out); }) == errc::validation_failed);

  SubspaceCertificate ind;
  ind.tag = MinimalTag::indiscrete;
  ind.points = {0, 1};
  CHECK(code_of([&] { decode_poset_solution(flat, ind); }) == errc::validation_failed);

  // A tampered staircase (rank collision) is caught before ordering.
  SubspaceCertificate broken;
  broken.tag = MinimalTag::initial_segment;
  broken.points = {0, 1, 2};
  broken.point_witness = {singleton_code(0), singleton_code(0), singleton_code(0)};
  CHECK(code_of([&] { decode_poset_solution(chain, broken); }) == errc::validation_failed);
}

TEST_CASE("linear decoding orients certificates along the order") {
  // 4 < 2 < 0 < 1 < 3 by rank.
  std::vector<std::size_t> rank{2, 3, 1, 4, 0};
  OrderWindow L = make_order_window(5, [&](Point x, Point y) { return rank[x] <= rank[y]; });
  SubspaceCertificate cert;
  cert.tag = MinimalTag::discrete;
  cert.points = {0, 2, 4};
  cert.point_witness = {encode_finset({0, 1}), encode_finset({2, 3}), encode_finset({4, 5})};
  DecodedSolution sol = decode_linear_solution(L, cert);
  CHECK(sol.kind == SolutionKind::ascending_chain);
  CHECK(sol.points == std::vector<Point>{4, 2, 0});

  cert.tag = MinimalTag::cofinite;
  cert.point_witness.clear();
  sol = decode_linear_solution(L, cert);
  CHECK(sol.kind == SolutionKind::descending_chain);
  CHECK(sol.points == std::vector<Point>{0, 2, 4});

  cert.tag = MinimalTag::indiscrete;
  CHECK(code_of([&] { decode_linear_solution(L, cert); }) == errc::validation_failed);

  // A discrete certificate whose witnesses are too small to explain the
  // decoded predecessors is rejected.
  SubspaceCertificate thin;
  thin.tag = MinimalTag::discrete;
  thin.points = {0, 1, 3};
  thin.point_witness = {singleton_code(0), singleton_code(1), singleton_code(2)};
  CHECK(code_of([&] { decode_linear_solution(L, thin); }) == errc::validation_failed);
}

TEST_CASE("sigma2 decoding checks the claimed side pointwise") {
  auto theta = [](std::uint64_t x, std::uint64_t y, std::uint64_t z) {
    return x % 2 == 0 || z <= y;
  };
  const std::uint64_t yb = 4, zb = 8;  // phi(x) holds exactly for even x
  SubspaceCertificate cert;
  cert.tag = MinimalTag::discrete;
  cert.points = {0, 2, 4, 6};
  cert.point_witness.assign(4, Nat(1));
  DecodedSolution sol = decode_sigma2_solution(theta, yb, zb, cert);
  CHECK(sol.kind == SolutionKind::phi_side);
  CHECK(sol.validated);

  cert.points = {0, 2, 5};
  cert.point_witness.assign(3, Nat(1));
  CHECK(code_of([&] { decode_sigma2_solution(theta, yb, zb, cert); }) == errc::validation_failed);

  cert.tag = MinimalTag::cofinite;
  cert.points = {1, 3, 5};
  sol = decode_sigma2_solution(theta, yb, zb, cert);
  CHECK(sol.kind == SolutionKind::not_phi_side);
  cert.points = {1, 4};
  CHECK(code_of([&] { decode_sigma2_solution(theta, yb, zb, cert); }) == errc::validation_failed);

  cert.tag = MinimalTag::t1_only;
  CHECK(code_of([&] { decode_sigma2_solution(theta, yb, zb, cert); }) == errc::validation_failed);
}

TEST_CASE("range decoding reads stable stages off a staircase") {
  auto f = [](std::uint64_t y) { return 3 * y; };
  SubspaceCertificate cert;
  cert.tag = MinimalTag::initial_segment;
  cert.points = {6, 9};
  DecodedSolution sol = decode_injection_range(f, 10, 5, cert);
  CHECK(sol.kind == SolutionKind::range_below);
  CHECK(sol.bound == 5);
  REQUIRE(sol.decisions.size() == 5);
  for (std::uint64_t v = 0; v < 5; ++v) CHECK(sol.decisions[v] == (v % 3 == 0));
  CHECK(format_decoded_solution(sol).find("range: 0 3") != std::string::npos);

  SubspaceCertificate low;
  low.tag = MinimalTag::initial_segment;
  low.points = {2, 6};
  CHECK(code_of([&] { decode_injection_range(f, 10, 5, low); }) ==
        errc::decoder_window_insufficient);

  SubspaceCertificate wrongtag;
  wrongtag.tag = MinimalTag::discrete;
  wrongtag.points = {6, 9};
  CHECK(code_of([&] { decode_injection_range(f, 10, 5, wrongtag); }) == errc::validation_failed);

  // A value enumerated only after the witnessed stage exposes the lie.
  std::vector<std::uint64_t> vals{7, 9, 10, 11, 12, 13, 14, 15, 1};
  auto late = [&vals](std::uint64_t y) { return y < vals.size() ? vals[y] : y + 100; };
  SubspaceCertificate early;
  early.tag = MinimalTag::initial_segment;
  early.points = {6, 7};  // z = 7: stages 0..7 miss the value 1 = f(8) below 5
  CHECK(code_of([&] { decode_injection_range(late, 9, 5, early); }) == errc::validation_failed);
}
