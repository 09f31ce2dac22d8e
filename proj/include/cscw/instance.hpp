#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cscw/encodings.hpp"
#include "cscw/families.hpp"
#include "cscw/solvers.hpp"
#include "cscw/space.hpp"

namespace cscw {

// Window of a ternary predicate theta(x,y,z). Inside the declared x/y range
// the final z column persists for all larger z; outside the range theta is
// the fixed default. This keeps the predicate total while the file stores a
// finite grid.
struct ThetaWindow {
  std::size_t xs = 0, ys = 0, zs = 0;
  std::vector<bool> grid;  // indexed x*ys*zs + y*zs + z
  bool fallback = false;

  bool operator()(std::uint64_t x, std::uint64_t y, std::uint64_t z) const {
    if (x >= xs || y >= ys) return fallback;
    std::uint64_t zz = z < zs ? z : zs - 1;
    return grid[(x * ys + y) * zs + zz];
  }
};

struct InstanceSpec {
  std::string kind;
  // poset / linear_order
  OrderWindow order;
  // coloring: window of point colors, extended by color 0
  std::vector<std::uint64_t> colors;
  // sigma2
  ThetaWindow theta;
  // injection: window of values, extended injectively above the window max
  std::vector<std::uint64_t> injection;
  std::string variant;  // closure | discrete | wgs
  // explicit_generators
  std::vector<std::vector<Point>> generators;
  std::optional<Point> carrier_bound;
  // family
  std::string family_name;
  std::uint64_t family_param = 0;
};

namespace detail {

inline void validate_poset_window(const OrderWindow& w, const std::string& origin) {
  for (std::size_t a = 0; a < w.n; ++a)
    for (std::size_t b = 0; b < w.n; ++b) {
      if (a != b && w.leq(a, b) && w.leq(b, a))
        fail(errc::invariant_error, origin + ": antisymmetry fails at pair (" +
                                        std::to_string(a) + "," + std::to_string(b) + ")");
      for (std::size_t c = 0; c < w.n; ++c)
        if (w.leq(a, b) && w.leq(b, c) && !w.leq(a, c))
          fail(errc::invariant_error,
               origin + ": transitivity fails at triple (" + std::to_string(a) + "," +
                   std::to_string(b) + "," + std::to_string(c) + ")");
    }
}

inline OrderWindow order_from_pairs(std::size_t n,
                                    const std::vector<std::pair<std::size_t, std::size_t>>& rel,
                                    const std::string& origin) {
  OrderWindow w;
  w.n = n;
  w.rel.assign(n * n, false);
  for (std::size_t i = 0; i < n; ++i) w.rel[i * n + i] = true;
  for (auto [a, b] : rel) {
    if (a >= n || b >= n)
      fail(errc::invariant_error, origin + ": relation pair (" + std::to_string(a) + "," +
                                      std::to_string(b) + ") outside window");
    w.rel[a * n + b] = true;
  }
  validate_poset_window(w, origin);
  return w;
}

inline OrderWindow order_from_ranking(const std::vector<std::size_t>& ranking,
                                      const std::string& origin) {
  std::size_t n = ranking.size();
  std::vector<std::size_t> pos(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (ranking[i] >= n || pos[ranking[i]] != n)
      fail(errc::invariant_error,
           origin + ": order list is not a permutation at entry " + std::to_string(i));
    pos[ranking[i]] = i;
  }
  OrderWindow w;
  w.n = n;
  w.rel.assign(n * n, false);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) w.rel[a * n + b] = pos[a] <= pos[b];
  return w;
}

}  // namespace detail

// Total injection extending the window values: points above the window map
// past the window maximum in order, so injectivity is preserved globally.
inline std::function<std::uint64_t(std::uint64_t)> extend_injection(
    std::vector<std::uint64_t> values) {
  std::uint64_t top = 0;
  for (std::uint64_t v : values) top = std::max(top, v + 1);
  return [values = std::move(values), top](std::uint64_t x) {
    if (x < values.size()) return values[x];
    return top + (x - values.size());
  };
}

inline std::function<std::uint64_t(std::uint64_t)> extend_coloring(
    std::vector<std::uint64_t> values) {
  return [values = std::move(values)](std::uint64_t x) {
    return x < values.size() ? values[x] : std::uint64_t{0};
  };
}

inline InstanceSpec parse_instance_text(const std::string& text, const std::string& origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(errc::parse_error, origin + ": " + e.what());
  }
  InstanceSpec spec;
  try {
    if (!doc.contains("kind")) fail(errc::parse_error, origin + ": missing kind tag");
    spec.kind = doc.at("kind").get<std::string>();
    if (spec.kind == "poset") {
      std::size_t n = doc.at("n").get<std::size_t>();
      std::vector<std::pair<std::size_t, std::size_t>> rel;
      for (const auto& p : doc.at("relation"))
        rel.emplace_back(p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>());
      spec.order = detail::order_from_pairs(n, rel, origin);
    } else if (spec.kind == "linear_order") {
      spec.order =
          detail::order_from_ranking(doc.at("order").get<std::vector<std::size_t>>(), origin);
    } else if (spec.kind == "coloring") {
      spec.colors = doc.at("colors").get<std::vector<std::uint64_t>>();
    } else if (spec.kind == "sigma2") {
      const auto& cube = doc.at("theta");
      spec.theta.xs = cube.size();
      if (doc.contains("fallback")) spec.theta.fallback = doc.at("fallback").get<bool>();
      for (const auto& plane : cube) {
        if (spec.theta.ys == 0) spec.theta.ys = plane.size();
        if (plane.size() != spec.theta.ys)
          fail(errc::invariant_error, origin + ": ragged theta grid");
        for (const auto& row : plane) {
          if (spec.theta.zs == 0) spec.theta.zs = row.size();
          if (row.size() != spec.theta.zs || spec.theta.zs == 0)
            fail(errc::invariant_error, origin + ": ragged theta grid");
          for (const auto& cell : row) spec.theta.grid.push_back(cell.get<bool>());
        }
      }
      if (spec.theta.xs == 0) fail(errc::invariant_error, origin + ": empty theta grid");
    } else if (spec.kind == "injection") {
      spec.injection = doc.at("values").get<std::vector<std::uint64_t>>();
      spec.variant = doc.value("variant", std::string("closure"));
      if (spec.variant != "closure" && spec.variant != "discrete" && spec.variant != "wgs")
        fail(errc::parse_error, origin + ": unknown injection variant " + spec.variant);
      for (std::size_t a = 0; a < spec.injection.size(); ++a)
        for (std::size_t b = a + 1; b < spec.injection.size(); ++b)
          if (spec.injection[a] == spec.injection[b])
            fail(errc::invariant_error, origin + ": injection collides at arguments " +
                                            std::to_string(a) + " and " + std::to_string(b));
    } else if (spec.kind == "explicit_generators") {
      for (const auto& g : doc.at("generators"))
        spec.generators.push_back(g.get<std::vector<Point>>());
      if (doc.contains("carrier_bound"))
        spec.carrier_bound = doc.at("carrier_bound").get<Point>();
    } else if (spec.kind == "family") {
      spec.family_name = doc.at("name").get<std::string>();
      spec.family_param = doc.value("param", std::uint64_t{0});
    } else {
      fail(errc::parse_error, origin + ": unknown kind tag " + spec.kind);
    }
  } catch (const nlohmann::json::exception& e) {
    fail(errc::parse_error, origin + ": " + e.what());
  }
  return spec;
}

inline InstanceSpec parse_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse_error, path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance_text(buf.str(), path);
}

inline CscSpace instance_space(const InstanceSpec& spec) {
  if (spec.kind == "poset") return encode_poset(spec.order);
  if (spec.kind == "linear_order") return encode_linear(spec.order);
  if (spec.kind == "coloring") return encode_coloring_discrete(extend_coloring(spec.colors));
  if (spec.kind == "sigma2") return encode_sigma2(spec.theta);
  if (spec.kind == "injection") {
    auto f = extend_injection(spec.injection);
    if (spec.variant == "discrete") return encode_injection_discrete(std::move(f));
    if (spec.variant == "wgs") return encode_injection_wgs(std::move(f));
    return encode_injection_closure(std::move(f));
  }
  if (spec.kind == "explicit_generators")
    return CscSpace(family_explicit(spec.generators, spec.carrier_bound));
  if (spec.kind == "family") {
    if (spec.family_name == "indiscrete") return CscSpace(family_indiscrete());
    if (spec.family_name == "singletons") return CscSpace(family_singletons());
    if (spec.family_name == "initial_segments") return CscSpace(family_initial_segments());
    if (spec.family_name == "final_segments") return CscSpace(family_final_segments());
    if (spec.family_name == "cofinite_complements") return CscSpace(family_cofinite_complements());
    if (spec.family_name == "limit_point") return CscSpace(family_limit_point());
    if (spec.family_name == "dyadic_splitting") return CscSpace(family_dyadic_splitting());
    if (spec.family_name == "threshold_tail") return CscSpace(family_threshold_tail(spec.family_param));
    if (spec.family_name == "multiples") return CscSpace(family_multiples());
    fail(errc::parse_error, "unknown family name " + spec.family_name);
  }
  fail(errc::parse_error, "unknown kind tag " + spec.kind);
}

}  // namespace cscw
