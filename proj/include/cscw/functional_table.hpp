#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cscw/coding.hpp"
#include "cscw/error.hpp"

namespace cscw {

// One axiom of an oracle machine: functional e on oracle string sigma maps
// input x to y. The axiom applies to any oracle extending sigma; the use of
// the computation is |sigma|. For unrelativized stage-indexed queries the
// convention is oracle = all zeros of length s, so |sigma| doubles as the
// stage at which the computation converges.
struct Axiom {
  std::uint64_t e = 0;
  std::string sigma;  // characters '0'/'1'
  std::uint64_t x = 0;
  Nat y;
};

struct FunctionalTable {
  std::vector<Axiom> axioms;
};

struct ApplyResult {
  bool converges = false;
  Nat y;
  std::size_t use = 0;
};

struct ConsistencyReport {
  bool consistent = true;
  // indices into axioms of an offending pair when inconsistent
  std::size_t first = 0;
  std::size_t second = 0;
};

inline bool is_prefix(const std::string& a, const std::string& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

// Oracle strings are compatible when one extends the other.
inline bool compatible(const std::string& a, const std::string& b) {
  return is_prefix(a, b) || is_prefix(b, a);
}

// Two axioms for the same functional and input with compatible oracle strings
// must agree on the output.
inline ConsistencyReport check_table_consistency(const FunctionalTable& t) {
  for (std::size_t i = 0; i < t.axioms.size(); ++i) {
    for (std::size_t j = i + 1; j < t.axioms.size(); ++j) {
      const Axiom& a = t.axioms[i];
      const Axiom& b = t.axioms[j];
      if (a.e == b.e && a.x == b.x && compatible(a.sigma, b.sigma) && a.y != b.y)
        return {false, i, j};
    }
  }
  return {true, 0, 0};
}

// Evaluate functional e on the given oracle at input x. Among applicable
// axioms the one with least use wins; consistency makes the output unique.
// stage, when given, additionally bounds the use (the [s] approximation).
inline ApplyResult functional_apply(const FunctionalTable& t, std::uint64_t e,
                                    const std::string& oracle, std::uint64_t x,
                                    std::optional<std::size_t> stage = std::nullopt) {
  ApplyResult best;
  for (const Axiom& a : t.axioms) {
    if (a.e != e || a.x != x) continue;
    if (!is_prefix(a.sigma, oracle)) continue;
    if (stage && a.sigma.size() > *stage) continue;
    if (!best.converges || a.sigma.size() < best.use ||
        (a.sigma.size() == best.use && a.y < best.y)) {
      best.converges = true;
      best.y = a.y;
      best.use = a.sigma.size();
    }
  }
  return best;
}

// Text format: one axiom per line, "e sigma x y", sigma a 0/1 word or "-" for
// the empty string; blank lines and lines starting with # are skipped.
inline FunctionalTable parse_functional_table(const std::string& text) {
  FunctionalTable t;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string trimmed = line;
    auto pos = trimmed.find_first_not_of(" \t");
    if (pos == std::string::npos) continue;
    if (trimmed[pos] == '#') continue;
    std::istringstream ls(line);
    Axiom a;
    std::string sigma, ystr;
    if (!(ls >> a.e >> sigma >> a.x >> ystr))
      fail(errc::malformed_table, "line " + std::to_string(lineno));
    std::string rest;
    if (ls >> rest) fail(errc::malformed_table, "trailing tokens on line " + std::to_string(lineno));
    if (sigma != "-") {
      for (char c : sigma)
        if (c != '0' && c != '1')
          fail(errc::malformed_table, "oracle string on line " + std::to_string(lineno));
      a.sigma = sigma;
    }
    try {
      a.y = Nat(ystr);
    } catch (const std::exception&) {
      fail(errc::malformed_table, "output on line " + std::to_string(lineno));
    }
    t.axioms.push_back(std::move(a));
  }
  return t;
}

inline std::string format_functional_table(const FunctionalTable& t) {
  std::ostringstream out;
  for (const Axiom& a : t.axioms) {
    out << a.e << ' ' << (a.sigma.empty() ? std::string("-") : a.sigma) << ' ' << a.x << ' '
        << a.y.str() << '\n';
  }
  return out.str();
}

}  // namespace cscw
