#include "soficlab/partial_injection.hpp"

#include <algorithm>
#include <numeric>

#include "soficlab/errors.hpp"

namespace soficlab {

PartialInjection::PartialInjection(std::size_t n, std::vector<std::optional<std::size_t>> map)
    : map_(std::move(map)) {
  if (n == 0) throw InputError("[[0]] is not a model; n must be positive");
  if (map_.size() != n) throw InputError("partial injection map has the wrong length");
  std::vector<bool> hit(n, false);
  for (auto const& y : map_) {
    if (!y) continue;
    if (*y >= n) throw InputError("partial injection image " + std::to_string(*y) + " out of range");
    if (hit[*y]) throw InputError("partial injection is not injective at image " + std::to_string(*y));
    hit[*y] = true;
  }
}

PartialInjection PartialInjection::identity(std::size_t n) {
  std::vector<std::optional<std::size_t>> map(n);
  for (std::size_t x = 0; x < n; ++x) map[x] = x;
  return PartialInjection(n, std::move(map));
}

PartialInjection PartialInjection::empty(std::size_t n) { return PartialInjection(n, std::vector<std::optional<std::size_t>>(n)); }

PartialInjection PartialInjection::partial_identity(std::size_t n, const std::vector<std::size_t>& domain) {
  std::vector<std::optional<std::size_t>> map(n);
  for (auto x : domain) map.at(x) = x;
  return PartialInjection(n, std::move(map));
}

PartialInjection PartialInjection::transposition(std::size_t n, std::size_t a, std::size_t b) {
  auto map = identity(n).map_;
  std::swap(map.at(a), map.at(b));
  return PartialInjection(n, std::move(map));
}

std::size_t PartialInjection::domain_size() const {
  return static_cast<std::size_t>(std::count_if(map_.begin(), map_.end(), [](auto const& y) { return y.has_value(); }));
}

PartialInjection compose(const PartialInjection& a, const PartialInjection& b) {
  if (a.n() != b.n()) throw InputError("composing partial injections of different degrees");
  std::vector<std::optional<std::size_t>> map(a.n());
  for (std::size_t x = 0; x < a.n(); ++x) {
    if (auto y = b(x)) map[x] = a(*y);
  }
  return PartialInjection(a.n(), std::move(map));
}

PartialInjection invert(const PartialInjection& a) {
  std::vector<std::optional<std::size_t>> map(a.n());
  for (std::size_t x = 0; x < a.n(); ++x) {
    if (auto y = a(x)) map[*y] = x;
  }
  return PartialInjection(a.n(), std::move(map));
}

Rational trace(const PartialInjection& a) {
  std::int64_t fixed = 0;
  for (std::size_t x = 0; x < a.n(); ++x) {
    if (a(x) == x) ++fixed;
  }
  return {fixed, static_cast<std::int64_t>(a.n())};
}

Rational distance(const PartialInjection& a, const PartialInjection& b) {
  if (a.n() != b.n()) throw InputError("distance between partial injections of different degrees");
  std::int64_t differ = 0;
  for (std::size_t x = 0; x < a.n(); ++x) {
    if (a(x) != b(x)) ++differ;
  }
  return {differ, static_cast<std::int64_t>(a.n())};
}

std::vector<PartialInjection> enumerate_partial_injections(std::size_t n) {
  std::vector<PartialInjection> out;
  std::vector<std::optional<std::size_t>> map(n);
  std::vector<bool> used(n, false);
  // Enumerate by domain size so that smaller elements come first.
  for (std::size_t k = 0; k <= n; ++k) {
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t x, std::size_t remaining) {
      if (remaining > n - x) return;
      if (x == n) {
        out.emplace_back(n, map);
        return;
      }
      if (remaining > 0) {
        for (std::size_t y = 0; y < n; ++y) {
          if (used[y]) continue;
          used[y] = true;
          map[x] = y;
          rec(x + 1, remaining - 1);
          map[x].reset();
          used[y] = false;
        }
      }
      rec(x + 1, remaining);
    };
    rec(0, k);
  }
  return out;
}

std::uint64_t symmetric_inverse_order(std::size_t n) {
  return predicted_count(FiniteGroupoid::full_relation(n), EnumerationKind::semigroup);
}

Bisection to_bisection(const PartialInjection& a, const GroupoidPtr& full_relation) {
  auto const& g = *full_relation;
  if (g.component_count() != 1 || g.component(0).group.order() != 1 || g.component(0).base_size != a.n()) {
    throw InputError("target groupoid is not the full relation on " + std::to_string(a.n()) + " points");
  }
  std::vector<Arrow> arrows;
  for (std::size_t x = 0; x < a.n(); ++x) {
    if (auto y = a(x)) arrows.push_back(Arrow{0, 0, *y, x});
  }
  return Bisection(full_relation, std::move(arrows));
}

PartialInjection to_partial_injection(const Bisection& alpha) {
  auto const& g = alpha.groupoid();
  if (g.component_count() != 1 || g.component(0).group.order() != 1) {
    throw InputError("bisection does not live in a full relation groupoid");
  }
  auto const n = g.component(0).base_size;
  std::vector<std::optional<std::size_t>> map(n);
  for (auto const& a : alpha.arrows()) map[a.y_from] = a.y_to;
  return PartialInjection(n, std::move(map));
}

PartialInjection embed_step(const PartialInjection& a) {
  auto map = a.map();
  map.emplace_back();
  return PartialInjection(a.n() + 1, std::move(map));
}

PartialInjection embed_multiple(const PartialInjection& a, std::size_t k) {
  if (k == 0) throw InputError("embed_multiple needs k >= 1");
  auto const n = a.n();
  std::vector<std::optional<std::size_t>> map(k * n);
  for (std::size_t q = 0; q < k; ++q) {
    for (std::size_t j = 0; j < n; ++j) {
      if (auto y = a(j)) map[q * n + j] = q * n + *y;
    }
  }
  return PartialInjection(k * n, std::move(map));
}

PartialInjection embed_general(const PartialInjection& a, std::size_t p) {
  auto const n = a.n();
  if (p < n) throw InputError("embed_general needs p >= n (p=" + std::to_string(p) + ", n=" + std::to_string(n) + ")");
  auto out = embed_multiple(a, p / n);
  for (std::size_t r = 0; r < p % n; ++r) out = embed_step(out);
  return out;
}

PartialInjection random_partial_injection(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> image(n);
  std::iota(image.begin(), image.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(image[i - 1], image[rng() % i]);
  std::vector<std::optional<std::size_t>> map(n);
  for (std::size_t x = 0; x < n; ++x) {
    if (rng() % 2 == 1) map[x] = image[x];
  }
  return PartialInjection(n, std::move(map));
}

std::vector<DistortionReport> ladder_profile(std::size_t n, const std::vector<std::size_t>& p_list,
                                             std::uint64_t pair_budget, std::uint64_t seed) {
  for (auto p : p_list) {
    if (p < n) throw InputError("ladder target p=" + std::to_string(p) + " is below n=" + std::to_string(n));
  }
  auto const order = symmetric_inverse_order(n);
  bool const exhaustive = order <= pair_budget / std::max<std::uint64_t>(order, 1);

  std::vector<DistortionReport> out;
  for (auto p : p_list) {
    DistortionReport report;
    report.n = n;
    report.p = p;
    report.exhaustive = exhaustive;
    report.seed = seed;
    if (p > n) report.bound = Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(p - n));

    auto record = [&](const PartialInjection& a, const PartialInjection& b, const PartialInjection& ia,
                      const PartialInjection& ib) {
      report.observed_sup = std::max(report.observed_sup, abs_diff(distance(ia, ib), distance(a, b)));
      ++report.pairs_tested;
    };
    auto record_trace = [&](const PartialInjection& a, const PartialInjection& ia) {
      report.observed_trace_sup = std::max(report.observed_trace_sup, abs_diff(trace(ia), trace(a)));
    };

    if (exhaustive) {
      auto const elements = enumerate_partial_injections(n);
      std::vector<PartialInjection> images;
      images.reserve(elements.size());
      for (auto const& a : elements) {
        images.push_back(embed_general(a, p));
        record_trace(a, images.back());
      }
      for (std::size_t i = 0; i < elements.size(); ++i) {
        for (std::size_t j = 0; j < elements.size(); ++j) record(elements[i], elements[j], images[i], images[j]);
      }
    } else {
      std::mt19937_64 rng(seed);
      for (std::uint64_t k = 0; k < pair_budget; ++k) {
        auto a = random_partial_injection(n, rng);
        auto b = random_partial_injection(n, rng);
        auto ia = embed_general(a, p);
        auto ib = embed_general(b, p);
        record_trace(a, ia);
        record(a, b, ia, ib);
      }
    }
    out.push_back(std::move(report));
  }
  return out;
}

}  // namespace soficlab
