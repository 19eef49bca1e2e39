// Acceptance run: one PASS/FAIL line per criterion, each timed against its
// limit. Every criterion runs the library and an independent brute-force
// route and passes only when both succeed.
//
//   acceptance                 all criteria
//   acceptance --criterion N   criterion N alone

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bridge.hpp"
#include "oracle.hpp"
#include "soficlab/cli.hpp"
#include "soficlab/constructions.hpp"
#include "soficlab/errors.hpp"
#include "soficlab/partial_injection.hpp"
#include "soficlab/verify.hpp"

using namespace soficlab;
using oracle::Frac;
using oracle::Mask;
using oracle::PMap;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void fail(const std::string& why) {
    pass = false;
    notes.push_back(why);
  }
  void note(const std::string& what) { notes.push_back(what); }
  void require(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<Outcome()> run;
};

GroupoidPtr pairs(std::size_t n) { return share(FiniteGroupoid::full_relation(n)); }
GroupoidPtr connected(const CayleyTable& t, std::size_t base) { return share(FiniteGroupoid::connected(t, base)); }
GroupoidPtr z2_square() { return connected(CayleyTable::cyclic(2), 2); }

std::string str(const Rational& r) { return to_string(r); }

void require_suite(Outcome& out, const std::string& name, const SuiteBudget& budget = SuiteBudget{}) {
  auto const r = run_suite(name, std::nullopt, budget);
  std::size_t failed = 0;
  for (auto const& c : r.checks) {
    if (!c.pass) {
      ++failed;
      out.fail("library suite " + name + ": " + c.name + " fails (" + c.detail + ")");
    }
  }
  if (failed == 0) out.note("suite " + name + ": " + std::to_string(r.checks.size()) + " checks pass");
}

// ---------------------------------------------------------------------------
// [[n]] tables for the oracle

struct Monoid {
  std::vector<PMap> elems;
  std::map<PMap, std::size_t> index;
  std::vector<std::vector<std::size_t>> mul;
  std::vector<std::size_t> inv;
  std::vector<std::vector<Frac>> dist;

  explicit Monoid(int n) : elems(oracle::all_partial_maps(n)) {
    auto const size = elems.size();
    for (std::size_t i = 0; i < size; ++i) index[elems[i]] = i;
    mul.assign(size, std::vector<std::size_t>(size));
    dist.assign(size, std::vector<Frac>(size));
    inv.resize(size);
    for (std::size_t i = 0; i < size; ++i) {
      inv[i] = index.at(oracle::pinverse(elems[i]));
      for (std::size_t j = 0; j < size; ++j) {
        mul[i][j] = index.at(oracle::pcompose(elems[i], elems[j]));
        dist[i][j] = oracle::pdistance(elems[i], elems[j]);
      }
    }
  }
  [[nodiscard]] bool idempotent(std::size_t i) const { return mul[i][i] == i; }
};

std::string show(const PMap& f) {
  std::string s = "{";
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (f[x] == -1) continue;
    if (s.size() > 1) s += ",";
    s += std::to_string(x) + "->" + std::to_string(f[x]);
  }
  return s + "}";
}

PMap domain_identity(const PMap& f) {
  PMap e(f.size(), -1);
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (f[x] != -1) e[x] = static_cast<int>(x);
  }
  return e;
}

// ---------------------------------------------------------------------------
// 1

Outcome criterion1() {
  Outcome out;
  require_suite(out, "inverse-monoid");
  require_suite(out, "metric-prop");

  for (int n : {2, 3}) {
    Monoid const m(n);
    auto const size = m.elems.size();
    std::uint64_t axiom_bad = 0, item1_bad = 0, item2_bad = 0, item3_bad = 0;
    std::string item1_witness;
    for (std::size_t a = 0; a < size; ++a) {
      axiom_bad += m.mul[m.mul[a][m.inv[a]]][a] != a;
      axiom_bad += m.mul[m.mul[m.inv[a]][a]][m.inv[a]] != m.inv[a];
      for (std::size_t b = 0; b < size; ++b) {
        axiom_bad += m.inv[m.mul[a][b]] != m.mul[m.inv[b]][m.inv[a]];
        if (m.idempotent(a) && m.idempotent(b)) axiom_bad += m.mul[a][b] != m.mul[b][a];
        for (std::size_t c = 0; c < size; ++c) axiom_bad += m.mul[m.mul[a][b]][c] != m.mul[a][m.mul[b][c]];

        if (!(m.dist[m.inv[a]][m.inv[b]] == m.dist[a][b])) {
          if (item1_bad++ == 0) {
            item1_witness = "a=" + show(m.elems[a]) + " b=" + show(m.elems[b]) + ": d(a,b)=" +
                            m.dist[a][b].str() + " d(a^-1,b^-1)=" + m.dist[m.inv[a]][m.inv[b]].str();
          }
        }
        auto const aba = m.mul[m.mul[a][b]][a];
        auto const bab = m.mul[m.mul[b][a]][b];
        item3_bad += !(m.dist[a][m.inv[b]] <= m.dist[a][aba] + m.dist[b][bab]);
      }
    }
    for (std::size_t a = 0; a < size; ++a) {
      for (std::size_t b = 0; b < size; ++b) {
        for (std::size_t c = 0; c < size; ++c) {
          for (std::size_t d = 0; d < size; ++d) {
            item2_bad += !(m.dist[m.mul[a][b]][m.mul[c][d]] <= m.dist[a][c] + m.dist[b][d]);
          }
        }
      }
    }
    std::string const tag = "oracle [[" + std::to_string(n) + "]]: ";
    out.require(axiom_bad == 0, tag + std::to_string(axiom_bad) + " inverse-monoid axiom failures");
    out.require(item2_bad == 0, tag + std::to_string(item2_bad) + " item 2 failures over " +
                                    std::to_string(size * size * size * size) + " quadruples");
    out.require(item3_bad == 0, tag + std::to_string(item3_bad) + " item 3 failures");
    out.require(item1_bad == 0, tag + "item 1 fails on " + std::to_string(item1_bad) + "/" +
                                    std::to_string(size * size) + " pairs, e.g. " + item1_witness);
  }
  return out;
}

// ---------------------------------------------------------------------------
// 2

Outcome criterion2() {
  Outcome out;
  auto const r = run_suite("trace-distance", std::nullopt, SuiteBudget{});
  for (auto const& c : r.checks) {
    out.require(c.pass, "library: " + c.name + " fails");
    out.require(c.exhaustive, "library: " + c.name + " was sampled");
  }
  out.require(r.checks.size() == 4 && r.checks[1].cases == 1156 && r.checks[3].cases == 289,
              "library: unexpected case counts");

  Monoid const m(3);
  auto const one = oracle::pidentity(3);
  std::uint64_t bad = 0;
  for (auto const& a : m.elems) {
    auto const sa = domain_identity(a);
    bad += !(oracle::ptrace(a) == Frac(1) - oracle::pdistance(sa, one) - oracle::pdistance(sa, a));
    for (auto const& b : m.elems) {
      auto const sb = domain_identity(b);
      auto const rhs = oracle::ptrace(sa) + oracle::ptrace(sb) - oracle::ptrace(oracle::pcompose(sa, sb)) -
                       oracle::ptrace(oracle::pcompose(oracle::pinverse(b), a));
      bad += !(oracle::pdistance(a, b) == rhs);
    }
  }
  out.require(bad == 0, "oracle [[3]]: " + std::to_string(bad) + " identity failures");

  auto const o = bridge::mirror(*z2_square());
  auto const elems = oracle::all_bisections_by_points(o);
  auto const one_o = oracle::identity(o);
  std::uint64_t bad2 = 0;
  for (auto a : elems) {
    auto const sa = oracle::units_of(o, oracle::sources(o, a));
    bad2 += !(oracle::trace(o, a) == Frac(1) - oracle::distance(o, sa, one_o) - oracle::distance(o, sa, a));
    for (auto b : elems) {
      auto const sb = oracle::units_of(o, oracle::sources(o, b));
      auto const rhs = oracle::trace(o, sa) + oracle::trace(o, sb) - oracle::trace(o, oracle::compose(o, sa, sb)) -
                       oracle::trace(o, oracle::compose(o, oracle::inverse(o, b), a));
      bad2 += !(oracle::distance(o, a, b) == rhs);
    }
  }
  out.require(elems.size() == 17, "oracle: Z2 x Y^2 should have 17 bisections");
  out.require(bad2 == 0, "oracle Z2 x Y^2: " + std::to_string(bad2) + " identity failures");
  out.note("1156 + 289 pairs, both identities exact on both routes");
  return out;
}

// ---------------------------------------------------------------------------
// 3

Outcome criterion3() {
  Outcome out;
  std::array<std::uint64_t, 3> const expected{7, 34, 209};
  for (std::size_t n = 2; n <= 4; ++n) {
    auto const brute = oracle::all_partial_maps(static_cast<int>(n)).size();
    auto const closed = oracle::symmetric_inverse_count(n);
    auto const lib = enumerate_bisections(pairs(n), EnumerationKind::semigroup, 1'000'000).size();
    auto const lib_pi = enumerate_partial_injections(n).size();
    auto const lib_closed = symmetric_inverse_order(n);
    auto const want = expected[n - 2];
    bool const ok = brute == want && closed == want && lib == want && lib_pi == want && lib_closed == want;
    out.require(ok, "[[" + std::to_string(n) + "]]: brute " + std::to_string(brute) + ", closed form " +
                        std::to_string(closed) + ", library " + std::to_string(lib) + "/" + std::to_string(lib_pi) +
                        "/" + std::to_string(lib_closed) + ", expected " + std::to_string(want));
  }
  if (out.pass) out.note("|[[2]]|=7, |[[3]]|=34, |[[4]]|=209 on every route");
  return out;
}

// ---------------------------------------------------------------------------
// 4

Outcome criterion4() {
  Outcome out;
  for (int n : {2, 3}) {
    std::vector<std::size_t> ps;
    for (int p = n + 1; p <= 12; ++p) ps.push_back(static_cast<std::size_t>(p));
    auto const reports = ladder_profile(static_cast<std::size_t>(n), ps, 1'000'000, 1);
    auto const maps = oracle::all_partial_maps(n);
    std::string sups;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      int const p = static_cast<int>(ps[i]);
      auto const& r = reports[i];
      Frac sup{0};
      for (auto const& f : maps) {
        for (auto const& h : maps) {
          auto const dev =
              (oracle::pdistance(oracle::pladder(f, p), oracle::pladder(h, p)) - oracle::pdistance(f, h)).abs();
          if (sup < dev) sup = dev;
        }
      }
      Frac const bound(n, p - n);
      std::string const tag = "n=" + std::to_string(n) + " p=" + std::to_string(p) + ": ";
      out.require(r.exhaustive && r.pairs_tested == maps.size() * maps.size(), tag + "library run not exhaustive");
      out.require(bridge::same(sup, r.observed_sup),
                  tag + "library sup " + str(r.observed_sup) + " vs oracle " + sup.str());
      out.require(r.bound && bridge::same(bound, *r.bound), tag + "bound mismatch");
      out.require(sup <= bound, tag + "sup " + sup.str() + " exceeds n/(p-n)");
      if (p % n == 0) out.require(sup == Frac(0), tag + "nonzero deviation although n divides p");
      sups += " " + std::to_string(p) + ":" + sup.str();
    }
    out.note("n=" + std::to_string(n) + " sups" + sups);
  }
  return out;
}

// ---------------------------------------------------------------------------
// 5

// (g, y, x) sends (h, x) to (gh, y); (h, x) sits at x|Gamma| + h.
PMap connected_image(const oracle::Groupoid& o, Mask m) {
  auto const k = o.comps[0].table.size();
  PMap f(k * o.comps[0].base, -1);
  for (std::size_t i = 0; i < o.arrows.size(); ++i) {
    if (!(m >> i & 1U)) continue;
    auto const [c, g, y, x] = o.arrows[i];
    for (std::size_t h = 0; h < k; ++h) f[x * k + h] = static_cast<int>(y * k + o.comps[0].table[g][h]);
  }
  return f;
}

Outcome criterion5() {
  Outcome out;
  SuiteBudget budget;
  budget.exhaustive_cap = 10'000;
  budget.sample_count = 10'000;
  budget.seed = 1;
  std::vector<std::pair<std::string, CayleyTable>> const groups{
      {"Z2", CayleyTable::cyclic(2)}, {"Z3", CayleyTable::cyclic(3)}, {"S3", CayleyTable::symmetric(3)}};
  for (auto const& [name, table] : groups) {
    for (std::size_t base : {1, 2}) {
      auto const g = connected(table, base);
      auto const pi = embed_connected(g);
      std::string const tag = name + " x Y^2 (|Y|=" + std::to_string(base) + "): ";
      auto const rep = check_embedding(pi, budget);
      out.require(rep.pass(), tag + "library check_embedding fails");

      auto const o = bridge::mirror(*g);
      auto const elems = oracle::all_bisections_by_points(o);
      std::map<Mask, std::size_t> index;
      std::vector<PMap> img;
      std::uint64_t mismatch = 0;
      for (std::size_t i = 0; i < elems.size(); ++i) {
        index[elems[i]] = i;
        img.push_back(connected_image(o, elems[i]));
        mismatch += bridge::to_pmap(pi(bridge::from_mask(o, elems[i], g))) != img.back();
      }
      out.require(mismatch == 0, tag + std::to_string(mismatch) + " images differ from the point formula");

      bool const exhaustive = elems.size() * elems.size() <= budget.exhaustive_cap;
      out.require(rep.exhaustive == exhaustive, tag + "library regime differs from the cap");
      std::uint64_t bad = 0;
      std::set<PMap> distinct(img.begin(), img.end());
      bad += distinct.size() != img.size();
      for (std::size_t a = 0; a < elems.size(); ++a) {
        bad += !(oracle::ptrace(img[a]) == oracle::trace(o, elems[a]));
        if (!exhaustive) continue;
        for (std::size_t b = 0; b < elems.size(); ++b) {
          auto const ab = index.at(oracle::compose(o, elems[a], elems[b]));
          bad += img[ab] != oracle::pcompose(img[a], img[b]);
          bad += !(oracle::pdistance(img[a], img[b]) == oracle::distance(o, elems[a], elems[b]));
        }
      }
      out.require(bad == 0, tag + std::to_string(bad) + " oracle failures");
      out.note(name + "/" + std::to_string(base) + ": " + std::to_string(elems.size()) + " elements, " +
               (exhaustive ? "exhaustive" : "sampled"));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// 6

Outcome criterion6() {
  Outcome out;
  auto const z2 = FiniteGroupoid::group(CayleyTable::cyclic(2));
  auto const z3 = FiniteGroupoid::group(CayleyTable::cyclic(3));
  auto const pt = FiniteGroupoid::point();
  std::vector<std::pair<std::string, GroupoidPtr>> const cases{
      {"1/2 Z2 + 1/2 pt", share(convex_combination({{Rational(1, 2), z2}, {Rational(1, 2), pt}}))},
      {"1/3 Z2 + 2/3 pt", share(convex_combination({{Rational(1, 3), z2}, {Rational(2, 3), pt}}))},
      {"1/3 [[2]] + 2/3 Z3",
       share(convex_combination({{Rational(1, 3), FiniteGroupoid::full_relation(2)}, {Rational(2, 3), z3}}))},
  };
  for (auto const& [name, g] : cases) {
    auto const phi = embed_convex(g);
    auto const rep = check_embedding(phi, SuiteBudget{});
    out.require(rep.pass() && rep.exhaustive, name + ": library check_embedding fails");

    auto const o = bridge::mirror(*g);
    auto const elems = oracle::all_bisections_by_points(o);
    std::vector<PMap> img;
    for (auto m : elems) img.push_back(bridge::to_pmap(phi(bridge::from_mask(o, m, g))));
    std::uint64_t bad = 0;
    for (std::size_t a = 0; a < elems.size(); ++a) {
      bad += !(oracle::ptrace(img[a]) == oracle::trace(o, elems[a]));
      for (std::size_t b = 0; b < elems.size(); ++b) {
        bad += !(oracle::pdistance(img[a], img[b]) == oracle::distance(o, elems[a], elems[b]));
      }
    }
    out.require(bad == 0, name + ": " + std::to_string(bad) + " oracle isometry failures");
    out.note(name + ": " + std::to_string(elems.size() * elems.size()) + " pairs isometric");
  }
  require_suite(out, "embed-convex");
  return out;
}

// ---------------------------------------------------------------------------
// 7

Outcome criterion7() {
  Outcome out;
  struct Case {
    std::string name;
    GroupoidPtr g;
    std::vector<Arrow> h;
  };
  auto const z4 = share(FiniteGroupoid::group(CayleyTable::cyclic(4)));
  auto const s3 = share(FiniteGroupoid::group(CayleyTable::symmetric(3)));
  auto const r2 = pairs(2);
  std::vector<Arrow> z3_in_s3;
  auto const& st = s3->component(0).group;
  for (auto const& a : s3->arrows()) {
    if (st.multiply(a.g, st.multiply(a.g, a.g)) == 0) z3_in_s3.push_back(a);
  }
  std::vector<Case> const cases{
      {"(Z4, Z2)", z4, {Arrow{0, 0, 0, 0}, Arrow{0, 2, 0, 0}}},
      {"(S3, Z3)", s3, z3_in_s3},
      {"([[2]], units)", r2, {Arrow{0, 0, 0, 0}, Arrow{0, 0, 1, 1}}},
  };

  for (auto const& c : cases) {
    try {
      auto const found = find_transversals(c.g, c.h);
      if (!found.system) {
        out.fail(c.name + ": no transversal system: " + found.failure);
        continue;
      }
      auto const& sys = *found.system;
      auto const n = sys.index();
      auto const xi = finite_index_lift(sys, identity_map(sys.sub_ptr));
      auto const all = enumerate_bisections(c.g, EnumerationKind::semigroup, 100000);

      // library route
      std::uint64_t bad = 0;
      std::vector<std::vector<std::vector<Bisection>>> blocks;
      for (auto const& a : all) blocks.push_back(block_components(a, sys));
      std::map<Bisection, std::size_t> where;
      for (std::size_t i = 0; i < all.size(); ++i) where[all[i]] = i;
      for (std::size_t a = 0; a < all.size(); ++a) {
        for (std::size_t i = 0; i < n; ++i) bad += trace(blocks[a][i][i]) != trace(all[a]);
        bad += trace(xi(all[a])) != trace(all[a]);
        for (std::size_t b = 0; b < all.size(); ++b) {
          auto const ab = where.at(all[a] * all[b]);
          bad += xi(all[ab]) != xi(all[a]) * xi(all[b]);
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t l = 0; l < n; ++l) {
              auto acc = Bisection::empty(sys.sub_ptr);
              for (std::size_t j = 0; j < n; ++j) acc = union_compatible(acc, blocks[a][i][j] * blocks[b][j][l]);
              bad += acc != blocks[ab][i][l];
            }
          }
        }
      }
      out.require(bad == 0, c.name + ": " + std::to_string(bad) + " library failures");

      // oracle route, from the transversals alone
      auto const o = bridge::mirror(*c.g);
      Mask hmask = 0;
      for (auto const& a : c.h) hmask |= Mask{1} << o.find({a.component, a.g, a.y_to, a.y_from});
      std::vector<Mask> psi;
      for (auto const& t : sys.transversals) psi.push_back(bridge::to_mask(o, t.bisection()));
      Mask cover = 0;
      bool disjoint = true;
      for (auto p : psi) {
        auto const coset = oracle::compose(o, p, hmask);
        disjoint &= (cover & coset) == 0;
        cover |= coset;
      }
      Mask const everything = o.arrows.size() == 64 ? ~Mask{0} : (Mask{1} << o.arrows.size()) - 1;
      out.require(disjoint && cover == everything, c.name + ": oracle finds the cosets do not partition G");

      auto oblock = [&](Mask a, std::size_t i, std::size_t j) {
        return oracle::compose(o, oracle::inverse(o, psi[i]), oracle::compose(o, a, psi[j])) & hmask;
      };
      std::uint64_t obad = 0;
      for (std::size_t a = 0; a < all.size(); ++a) {
        auto const ma = bridge::to_mask(o, all[a]);
        for (std::size_t i = 0; i < n; ++i) {
          obad += !(oracle::trace(o, oblock(ma, i, i)) == oracle::trace(o, ma));
          for (std::size_t j = 0; j < n; ++j) {
            Mask lifted = 0;
            for (auto const& x : blocks[a][i][j].arrows()) {
              auto const p = sys.sub.lift(x);
              lifted |= Mask{1} << o.find({p.component, p.g, p.y_to, p.y_from});
            }
            obad += lifted != oblock(ma, i, j);
          }
        }
        for (std::size_t b = 0; b < all.size(); ++b) {
          auto const mb = bridge::to_mask(o, all[b]);
          auto const mab = oracle::compose(o, ma, mb);
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t l = 0; l < n; ++l) {
              Mask acc = 0;
              for (std::size_t j = 0; j < n; ++j) acc |= oracle::compose(o, oblock(ma, i, j), oblock(mb, j, l));
              obad += acc != oblock(mab, i, l);
            }
          }
        }
      }
      out.require(obad == 0, c.name + ": " + std::to_string(obad) + " oracle failures");
      out.note(c.name + ": N=" + std::to_string(n) + ", " + std::to_string(all.size() * all.size()) + " pairs");
    } catch (const AssertionFailure& e) {
      out.fail(c.name + ": disjointness assertion fired: " + e.what());
    }
  }
  require_suite(out, "finite-index");
  return out;
}

// ---------------------------------------------------------------------------
// 8

Outcome criterion8() {
  Outcome out;
  for (auto const& [name, g] : std::vector<std::pair<std::string, GroupoidPtr>>{{"[[4]]", pairs(4)},
                                                                               {"Z2 x Y^2", z2_square()}}) {
    auto const o = bridge::mirror(*g);
    auto const elems = oracle::all_bisections_by_points(o);
    auto const lib = enumerate_bisections(g, EnumerationKind::semigroup, 100000);
    out.require(lib.size() == elems.size(), name + ": library and oracle counts differ");
    std::uint64_t bad = 0;
    for (auto m : elems) {
      try {
        auto const ext = extend_to_full_group(bridge::from_mask(o, m, g));
        auto const me = bridge::to_mask(o, ext.bisection());
        bad += (me & m) != m;
        bad += !oracle::is_full(o, me);
      } catch (const AssertionFailure& e) {
        ++bad;
        out.note(name + ": assertion fired: " + e.what());
      }
    }
    out.require(bad == 0, name + ": " + std::to_string(bad) + " failures");
    out.note(name + ": " + std::to_string(elems.size()) + " extensions checked");
  }
  require_suite(out, "extension");
  return out;
}

// ---------------------------------------------------------------------------
// 9

using Points = std::vector<std::pair<std::size_t, std::size_t>>;

Points sorted(Points p) {
  std::sort(p.begin(), p.end());
  return p;
}

Points minus(const Points& a, const Points& b) {
  Points out;
  for (auto const& x : a) {
    if (std::find(b.begin(), b.end(), x) == b.end()) out.push_back(x);
  }
  return sorted(out);
}

bool disjoint(const Points& a, const Points& b) { return minus(a, b).size() == a.size(); }

// alpha . A: range points of the arrows leaving A
Points act_on(const oracle::Groupoid& o, Mask a, const Points& pts) {
  Points out;
  for (std::size_t i = 0; i < o.arrows.size(); ++i) {
    if (!(a >> i & 1U)) continue;
    auto const [c, g, yt, yf] = o.arrows[i];
    if (std::find(pts.begin(), pts.end(), std::pair{c, yf}) != pts.end()) out.emplace_back(c, yt);
  }
  return sorted(out);
}

Outcome criterion9() {
  Outcome out;
  require_suite(out, "support");
  for (auto const& [name, g] : std::vector<std::pair<std::string, GroupoidPtr>>{{"[4]", pairs(4)},
                                                                               {"[Z2 x Y^2]", z2_square()}}) {
    auto const o = bridge::mirror(*g);
    std::vector<Mask> group;
    for (auto m : oracle::all_bisections_by_points(o)) {
      if (oracle::is_full(o, m)) group.push_back(m);
    }
    auto const one = oracle::identity(o);
    auto const all_points = sorted(oracle::sources(o, one));
    std::vector<Points> subsets;
    for (Mask s = 0; s < (Mask{1} << all_points.size()); ++s) {
      Points p;
      for (std::size_t i = 0; i < all_points.size(); ++i) {
        if (s >> i & 1U) p.push_back(all_points[i]);
      }
      subsets.push_back(p);
    }

    std::uint64_t bad = 0, quads = 0;
    for (auto a : group) {
      auto const sa = oracle::moved(o, a);
      auto const fa = minus(all_points, sa);
      for (auto b : group) {
        auto const sb = oracle::moved(o, b);
        auto const fb = minus(all_points, sb);
        auto const d = oracle::distance(o, a, b);
        bool const lhs1 = sa == fb;
        bool const rhs1 = d == Frac(1) && oracle::trace(o, a) + oracle::trace(o, b) == Frac(1);
        bad += lhs1 != rhs1;
        bool const lhs2 = disjoint(sa, sb);
        bool const rhs2 = d == oracle::distance(o, one, a) + oracle::distance(o, one, b);
        bad += lhs2 != rhs2;
        auto const conj = oracle::compose(o, oracle::compose(o, a, b), oracle::inverse(o, a));
        bad += oracle::moved(o, conj) != act_on(o, a, sb);

        for (auto const& A : subsets) {
          auto const ea = oracle::units_of(o, A);
          for (auto const& B : subsets) {
            auto const eb = oracle::units_of(o, B);
            auto const left = oracle::compose(o, oracle::compose(o, a, ea), oracle::compose(o, b, eb));
            auto const back = act_on(o, oracle::inverse(o, b), A);
            Points meet;
            for (auto const& x : B) {
              if (std::find(back.begin(), back.end(), x) != back.end()) meet.push_back(x);
            }
            auto const right = oracle::compose(o, oracle::compose(o, a, b), oracle::units_of(o, meet));
            bad += left != right;
            ++quads;
          }
        }
      }
    }
    out.require(bad == 0, name + ": " + std::to_string(bad) + " oracle failures");
    out.note(name + ": " + std::to_string(group.size() * group.size()) + " pairs, " + std::to_string(quads) +
             " corner quadruples");
  }
  return out;
}

// ---------------------------------------------------------------------------
// 10

Outcome criterion10() {
  Outcome out;
  require_suite(out, "product");
  auto const g = pairs(2);
  auto const space = ProductSpace::make(g, g);
  out.require(space.whole->component_count() == 1 && space.whole->unit_count() == 4,
              "[[2]] x [[2]] should be one component on 4 points");
  auto const phi = embed_convex(g);
  auto const cod = ProductSpace::make(phi.codomain, phi.codomain);

  // Point (x, y) of the product sits at 2x + y.
  auto rect = [](const PMap& a, const PMap& b) {
    PMap f(a.size() * b.size(), -1);
    for (std::size_t x = 0; x < a.size(); ++x) {
      for (std::size_t y = 0; y < b.size(); ++y) {
        if (a[x] != -1 && b[y] != -1) f[x * b.size() + y] = static_cast<int>(a[x] * b.size() + b[y]);
      }
    }
    return f;
  };
  auto meets = [](const PMap& a, const PMap& b, bool range) {
    auto const x = range ? oracle::pinverse(a) : a;
    auto const y = range ? oracle::pinverse(b) : b;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] != -1 && y[i] != -1) return true;
    }
    return false;
  };

  auto const all = enumerate_bisections(space.whole, EnumerationKind::semigroup, 100000);
  out.require(all.size() == oracle::all_partial_maps(4).size(), "[[2]] x [[2]] count differs from [[4]]");
  std::uint64_t bad = 0;
  for (auto const& x : all) {
    auto const target = bridge::to_pmap(x);
    std::vector<Bisection> images;
    for (auto order : {MergeOrder::forward, MergeOrder::reverse}) {
      auto const u = rectangle_decompose(space, x, order);
      PMap acc(4, -1);
      for (std::size_t i = 0; i < u.parts.size(); ++i) {
        auto const ai = bridge::to_pmap(u.parts[i].left);
        auto const bi = bridge::to_pmap(u.parts[i].right);
        for (std::size_t j = i + 1; j < u.parts.size(); ++j) {
          auto const aj = bridge::to_pmap(u.parts[j].left);
          auto const bj = bridge::to_pmap(u.parts[j].right);
          bad += meets(ai, aj, false) && meets(bi, bj, false);
          bad += meets(ai, aj, true) && meets(bi, bj, true);
        }
        auto const piece = rect(ai, bi);
        for (std::size_t p = 0; p < 4; ++p) {
          if (piece[p] == -1) continue;
          bad += acc[p] != -1;
          acc[p] = piece[p];
        }
      }
      bad += acc != target;
      images.push_back(product_embedding(phi, phi, cod, u));
    }
    bad += images[0] != images[1];
    bad += !(oracle::ptrace(bridge::to_pmap(images[0])) == oracle::ptrace(target));
  }
  std::uint64_t rect_bad = 0;
  auto const factors = enumerate_bisections(g, EnumerationKind::semigroup, 100);
  for (auto const& a : factors) {
    for (auto const& b : factors) {
      auto const img = product_embedding(phi, phi, cod, rectangle_decompose(space, space.rectangle(a, b)));
      auto const pa = bridge::to_pmap(a), pb = bridge::to_pmap(b);
      rect_bad += !(oracle::ptrace(bridge::to_pmap(img)) == oracle::ptrace(pa) * oracle::ptrace(pb));
      rect_bad += bridge::to_pmap(space.rectangle(a, b)) != rect(pa, pb);
    }
  }
  out.require(bad == 0, std::to_string(bad) + " decomposition failures over " + std::to_string(all.size()) +
                            " elements");
  out.require(rect_bad == 0, std::to_string(rect_bad) + " rectangle trace failures");
  out.note(std::to_string(all.size()) + " elements in both merge orders, 49 rectangles");
  return out;
}

// ---------------------------------------------------------------------------
// 11

Outcome criterion11() {
  Outcome out;
  require_suite(out, "restrict");
  struct Case {
    std::string name;
    SemigroupMap theta;
    MAlgElement units;
  };
  auto const r2 = pairs(2);
  auto const sq = z2_square();
  auto const mix = share(convex_combination(
      {{Rational(1, 2), FiniteGroupoid::group(CayleyTable::cyclic(2))}, {Rational(1, 2), FiniteGroupoid::point()}}));
  std::vector<Case> const cases{
      {"identity on [[2]], A={0}", identity_map(r2), MAlgElement({0})},
      {"identity on [[2]], A={0,1}", identity_map(r2), MAlgElement({0, 1})},
      {"embed_connected on Z2 x Y^2, A={0}", embed_connected(sq), MAlgElement({0})},
      {"embed_convex on 1/2 Z2 + 1/2 pt, A=component 0", embed_convex(mix), mix->component_units(0)},
  };
  for (auto const& c : cases) {
    auto const r = restrict_almost_morphism(c.theta, c.units);
    auto const rep = check_embedding(r.map, SuiteBudget{});
    out.require(rep.pass(), c.name + ": restricted map is not exact");

    auto const og = bridge::mirror(*c.theta.domain);
    auto const of = bridge::mirror(*c.theta.codomain);
    Frac mass_a{0};
    for (auto u : c.units.units()) {
      auto const [comp, y] = c.theta.domain->unit_at(u);
      mass_a = mass_a + og.mass(comp);
    }
    auto const e = bridge::to_mask(of, c.theta(Bisection::idempotent(c.theta.domain, c.units)));
    std::uint64_t bad = 0;
    for (auto const& a : enumerate_bisections(r.map.domain, EnumerationKind::semigroup, 100000)) {
      std::vector<Arrow> up;
      for (auto const& x : a.arrows()) up.push_back(r.domain.lift(x));
      auto const lifted = Bisection(c.theta.domain, up);
      auto const tr_h = oracle::trace(og, bridge::to_mask(og, lifted)) / mass_a;
      bad += !bridge::same(tr_h, trace(a));
      auto const cut = oracle::compose(of, e, oracle::compose(of, bridge::to_mask(of, c.theta(lifted)), e));
      auto const tr_f = oracle::trace(of, cut) / oracle::trace(of, e);
      bad += !bridge::same(tr_f, trace(r.map(a)));
    }
    out.require(bad == 0, c.name + ": " + std::to_string(bad) + " normalized trace mismatches");
  }
  auto const corner = restrict_almost_morphism(identity_map(r2), MAlgElement({0}));
  auto const v = trace(corner.map(Bisection::identity(corner.map.domain)));
  out.require(v == 1, "partial identity on {0}: normalized trace " + str(v) + ", expected 1");
  out.note("corner {0} of [[2]]: normalized trace (1/2)/(1/2) = " + str(v));
  return out;
}

// ---------------------------------------------------------------------------
// 12

std::pair<int, std::string> in_process(const std::vector<std::string>& args) {
  std::ostringstream o, e;
  int const code = run_cli(args, o, e);
  return {code, o.str()};
}

std::pair<int, std::string> spawned(const std::string& command) {
  std::string text;
  FILE* pipe = ::popen(command.c_str(), "r");
  if (pipe == nullptr) return {-1, text};
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) text.append(buf.data(), got);
  int const status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, text};
}

Outcome criterion12() {
  Outcome out;
  std::size_t sampled = 0;
  for (auto const& name : suite_names()) {
    std::vector<std::string> const args{"soficlab", "suite", "--name", name, "--seed", "7", "--budget", "64"};
    auto const a = in_process(args);
    auto const b = in_process(args);
    out.require(a == b, "suite " + name + ": repeated in-process runs differ");
    sampled += a.second.find("\"exhaustive\": false") != std::string::npos;
  }
  out.require(sampled > 0, "no suite exercised the sampled regime");
  for (std::string const name : {"trace-distance", "metric-prop", "ladder"}) {
    std::string const cmd = std::string(SOFICLAB_TOOL) + " suite --name " + name + " --seed 7 --budget 64 2>/dev/null";
    auto const a = spawned(cmd);
    auto const b = spawned(cmd);
    out.require(a == b && !a.second.empty(), "suite " + name + ": repeated process runs differ");
    auto const inner = in_process({"soficlab", "suite", "--name", name, "--seed", "7", "--budget", "64"});
    out.require(inner == a, "suite " + name + ": process and in-process reports differ");
  }
  out.note(std::to_string(suite_names().size()) + " suites byte-identical, " + std::to_string(sampled) +
           " of them sampled");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> const criteria{
      {1, "inverse-monoid and metric laws on [[2]], [[3]]", 5, criterion1},
      {2, "trace/distance identities on [[3]] and Z2 x Y^2", 5, criterion2},
      {3, "enumeration counts 7, 34, 209", 5, criterion3},
      {4, "ladder distortion within n/(p-n)", 30, criterion4},
      {5, "embed_connected exact on Z2, Z3, S3 with |Y| <= 2", 120, criterion5},
      {6, "embed_convex isometric on rational mixtures", 30, criterion6},
      {7, "finite-index block identity, diagonal traces, Xi", 60, criterion7},
      {8, "extension lemma on [[4]] and Z2 x Y^2", 10, criterion8},
      {9, "support lemmas, covariance, corner products", 60, criterion9},
      {10, "rectangle decompositions and product embedding", 30, criterion10},
      {11, "corner restriction exact with normalized traces", 10, criterion11},
      {12, "CLI suite reports byte-identical for a fixed seed", 10, criterion12},
  };

  int only = 0;
  for (int i = 1; i < argc; ++i) {
    std::string const arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::stoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }

  bool all_pass = true;
  bool ran = false;
  for (auto const& c : criteria) {
    if (only != 0 && c.id != only) continue;
    ran = true;
    auto const start = std::chrono::steady_clock::now();
    Outcome result;
    try {
      result = c.run();
    } catch (const std::exception& e) {
      result.fail(std::string("exception: ") + e.what());
    }
    double const seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.limit_seconds) result.fail("over the time limit");
    all_pass &= result.pass;

    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3fs / %.0fs", seconds, c.limit_seconds);
    std::cout << (result.pass ? "PASS" : "FAIL") << " criterion " << c.id << " [" << timing << "] " << c.title
              << "\n";
    for (auto const& n : result.notes) std::cout << "    " << n << "\n";
  }
  if (!ran) {
    std::cerr << "no criterion " << only << "\n";
    return 2;
  }
  return all_pass ? 0 : 1;
}
