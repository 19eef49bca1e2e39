#pragma once

// Conversions between library values and the oracle's plain representations.

#include "oracle.hpp"
#include "soficlab/bisection.hpp"
#include "soficlab/groupoid.hpp"
#include "soficlab/partial_injection.hpp"

namespace bridge {

inline bool same(const oracle::Frac& f, const soficlab::Rational& r) {
  return f.n == r.numerator() && f.d == r.denominator();
}

inline oracle::Groupoid mirror(const soficlab::FiniteGroupoid& g) {
  std::vector<oracle::Comp> comps;
  for (auto const& c : g.components()) {
    comps.push_back({c.group.rows(), c.base_size, oracle::Frac(c.weight.numerator(), c.weight.denominator())});
  }
  return oracle::Groupoid(comps);
}

inline oracle::Mask to_mask(const oracle::Groupoid& o, const soficlab::Bisection& a) {
  oracle::Mask m = 0;
  for (auto const& x : a.arrows()) m |= oracle::Mask{1} << o.find({x.component, x.g, x.y_to, x.y_from});
  return m;
}

inline soficlab::Bisection from_mask(const oracle::Groupoid& o, oracle::Mask m, const soficlab::GroupoidPtr& g) {
  std::vector<soficlab::Arrow> arrows;
  for (std::size_t i = 0; i < o.arrows.size(); ++i) {
    if (!(m >> i & 1U)) continue;
    auto const [c, h, yt, yf] = o.arrows[i];
    arrows.push_back(soficlab::Arrow{c, h, yt, yf});
  }
  return soficlab::Bisection(g, std::move(arrows));
}

// A bisection of a full relation read as a partial map, arrow by arrow.
inline oracle::PMap to_pmap(const soficlab::Bisection& b) {
  oracle::PMap f(b.groupoid().unit_count(), -1);
  for (auto const& a : b.arrows()) f[a.y_from] = static_cast<int>(a.y_to);
  return f;
}

inline soficlab::Bisection from_pmap(const oracle::PMap& f, const soficlab::GroupoidPtr& g) {
  std::vector<soficlab::Arrow> arrows;
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (f[x] != -1) arrows.push_back(soficlab::Arrow{0, 0, static_cast<std::size_t>(f[x]), x});
  }
  return soficlab::Bisection(g, std::move(arrows));
}

}  // namespace bridge
