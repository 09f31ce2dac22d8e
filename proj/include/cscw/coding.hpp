#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

namespace cscw {

// Unbounded natural number. Basis indices are bitmask codes over generator
// indices, and encoded spaces use nested pair codes as generator indices, so
// basis codes routinely exceed any fixed machine width.
using Nat = boost::multiprecision::cpp_int;

// Points of a space are naturals; windows keep them small.
using Point = std::uint64_t;

// Cantor pairing <x,y> = (x+y)(x+y+1)/2 + y.
inline Nat pair_code(const Nat& x, const Nat& y) {
  Nat s = x + y;
  return s * (s + 1) / 2 + y;
}

inline std::pair<Nat, Nat> unpair_code(const Nat& z) {
  Nat d = 8 * z + 1;
  Nat w = (boost::multiprecision::sqrt(d) - 1) / 2;
  Nat t = w * (w + 1) / 2;
  Nat y = z - t;
  return {w - y, y};
}

// Machine-width unpairing for generator indices, which arrive as raw 64-bit
// values inside membership loops; the float seed is corrected exactly, with
// the triangular numbers widened so no intermediate overflows.
inline std::pair<std::uint64_t, std::uint64_t> unpair_u64(std::uint64_t z) {
  using u128 = unsigned __int128;
  auto tri = [](u128 n) { return n * (n + 1) / 2; };
  long double seed = (std::sqrt(8.0L * static_cast<long double>(z) + 1.0L) - 1.0L) / 2.0L;
  std::uint64_t w = seed < 0 ? 0 : static_cast<std::uint64_t>(seed);
  while (tri(w + 1) <= z) ++w;
  while (tri(w) > z) --w;
  std::uint64_t y = z - static_cast<std::uint64_t>(tri(w));
  return {w - y, y};
}

// Left-nested triple <x,y,s> = <<x,y>,s>.
inline Nat triple_code(const Nat& x, const Nat& y, const Nat& s) {
  return pair_code(pair_code(x, y), s);
}

inline std::tuple<Nat, Nat, Nat> untriple_code(const Nat& z) {
  auto [xy, s] = unpair_code(z);
  auto [x, y] = unpair_code(xy);
  return {x, y, s};
}

inline std::tuple<std::uint64_t, std::uint64_t, std::uint64_t> untriple_u64(std::uint64_t z) {
  auto [xy, s] = unpair_u64(z);
  auto [x, y] = unpair_u64(xy);
  return {x, y, s};
}

// Finite sets of naturals are coded by bitmasks: n codes { i : bit i of n }.
// Code 0 is the empty set.
inline Nat encode_finset(const std::vector<std::uint64_t>& elems) {
  Nat n = 0;
  for (auto e : elems) boost::multiprecision::bit_set(n, static_cast<unsigned>(e));
  return n;
}

inline std::vector<std::uint64_t> decode_finset(const Nat& n) {
  std::vector<std::uint64_t> out;
  if (n == 0) return out;
  unsigned top = boost::multiprecision::msb(n);
  for (unsigned i = 0; i <= top; ++i)
    if (boost::multiprecision::bit_test(n, i)) out.push_back(i);
  return out;
}

inline bool finset_contains(const Nat& code, std::uint64_t e) {
  if (code == 0) return false;
  unsigned top = boost::multiprecision::msb(code);
  if (e > top) return false;
  return boost::multiprecision::bit_test(code, static_cast<unsigned>(e));
}

inline Nat finset_union(const Nat& a, const Nat& b) { return a | b; }

inline bool finset_subset(const Nat& a, const Nat& b) { return (a & b) == a; }

inline std::size_t finset_size(const Nat& n) {
  std::size_t c = 0;
  if (n == 0) return 0;
  unsigned top = boost::multiprecision::msb(n);
  for (unsigned i = 0; i <= top; ++i)
    if (boost::multiprecision::bit_test(n, i)) ++c;
  return c;
}

inline Nat singleton_code(std::uint64_t e) {
  Nat n = 0;
  boost::multiprecision::bit_set(n, static_cast<unsigned>(e));
  return n;
}

inline std::uint64_t to_u64(const Nat& n) { return n.convert_to<std::uint64_t>(); }

}  // namespace cscw
