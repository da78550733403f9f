#include <catch2/catch_amalgamated.hpp>

#include "dioph/oracle.hpp"
#include "dioph/product_lang.hpp"
#include "dioph/structures.hpp"
#include "helpers.hpp"

using namespace dioph;

TEST_CASE("shell enumeration is a bijection ordered by max coordinate") {
  for (int k : {2, 3}) {
    std::set<std::vector<std::uint64_t>> seen;
    std::uint64_t limit = k == 2 ? 49 : 64;
    for (std::uint64_t m = 0; m < limit; ++m) {
      auto t = detail::shell_tuple(m, k);
      CHECK(detail::shell_index(t) == m);
      seen.insert(t);
    }
    CHECK(seen.size() == limit);
    // the first n^k indices are exactly {0..n-1}^k
    for (auto& t : seen)
      for (auto c : t) CHECK(c < (k == 2 ? 7u : 4u));
  }
}

TEST_CASE("power structure: components and projections") {
  auto P = PowerLanguage::make(lang_rings(), 2);
  auto R2 = power_interp(P, make_int());
  CHECK(R2->width == 2);
  CHECK_FALSE(R2->integral_domain);  // (1,0)·(0,1) = 0

  // nth/index_of round trip
  for (std::uint64_t m = 0; m < 100; ++m) CHECK(R2->index_of(R2->nth(m)) == m);

  // base symbols read first components and embed with a zero tail; the
  // other coordinates are reached through the projections
  Elem a = R2->nth(7), b = R2->nth(12);
  Elem sum = R2->funcs.at("+")({a, b});
  CHECK(sum[0] == a[0] + b[0]);
  CHECK(sum[1] == 0);
  Elem p1 = R2->funcs.at(P.pi(1))({a});
  CHECK(p1[0] == a[0]);
  CHECK(p1[1] == 0);
  CHECK(R2->consts.at("1") == Elem(1, 0));
}

TEST_CASE("lift maps coordinates to projections") {
  auto P = PowerLanguage::make(lang_rings(), 2);
  auto R2 = power_interp(P, make_int());
  // {(x1,x2) | x1 = x2} over Z lifts to {X | pi1(X) = pi2(X)} over Z^2
  DiophDefinition diag;
  diag.lang = lang_rings();
  diag.free_count = 2;
  diag.atoms = {aeq(tvar(1), tvar(2))};
  auto up = lift(P, diag);
  CHECK(up.free_count == 1);
  auto pts = solution_set(up, Box{R2, 25, 0}).points;
  for (auto& t : pts) CHECK(t[0][0] == t[0][1]);
  CHECK(pts.size() == 5);  // (c,c) for c in the first 5 base elements
}

TEST_CASE("lower(lift) preserves solution sets") {
  auto Z = make_int();
  testgen::Rng rng(404);
  for (int k : {2, 3}) {
    auto P = PowerLanguage::make(lang_rings(), k);
    for (int i = 0; i < 5; ++i) {
      auto d = testgen::random_def(rng, k, 1, 2, 2);
      auto round = lower(P, lift(P, d), *Z);
      CHECK(round.free_count == d.free_count);
      auto rep = verify_set_equality(d, round, Box{Z, 5, 0});
      CHECK(rep.pass);
    }
  }
}

TEST_CASE("lower corresponds to the power structure's solutions") {
  auto Z = make_int();
  auto P = PowerLanguage::make(lang_rings(), 2);
  auto R2 = power_interp(P, make_int());
  DiophDefinition d;  // pi1(X) * pi2(X) = pi1(X) + pi2(X)
  d.lang = P.lang;
  d.free_count = 1;
  d.atoms = {aeq(tmul(tapp(P.pi(1), {tvar(1)}), tapp(P.pi(2), {tvar(1)})),
                 tadd(tapp(P.pi(1), {tvar(1)}), tapp(P.pi(2), {tvar(1)})))};
  auto low = lower(P, d, *Z);
  CHECK(low.free_count == 2);
  auto up_pts = solution_set(d, Box{R2, 25, 0}).points;    // first 5^2 pairs
  auto low_pts = solution_set(low, Box{Z, 5, 0}).points;   // the same box, split
  std::set<std::vector<Elem>> up_as_pairs;
  for (auto& t : up_pts) up_as_pairs.insert({Elem(t[0][0]), Elem(t[0][1])});
  CHECK(up_as_pairs == low_pts);
}

TEST_CASE("disjoint union: tagged operations act on one part") {
  auto U = disjoint_union_language(make_int(), make_zmod(6));
  CHECK(U.interp->width == 2);
  for (std::uint64_t m = 0; m < 60; ++m) CHECK(U.interp->index_of(U.interp->nth(m)) == m);

  auto& plus1 = U.interp->funcs.at("+.1");
  Elem a = Elem(3, 2), b = Elem(-1, 5);
  Elem s = plus1({a, b});
  CHECK(s[0] == 2);
  CHECK(s[1] == 0);  // the other part collapses to zero
}

TEST_CASE("product_def and split_def invert each other") {
  auto Z = make_int();
  auto Z7 = make_zmod(7);
  auto U = disjoint_union_language(Z, Z7);
  testgen::Rng rng(777);
  for (int i = 0; i < 5; ++i) {
    auto d1 = testgen::random_def(rng, 1, 1, 2, 2);
    auto d2 = testgen::random_def(rng, 1, 1, 2, 2);
    auto joined = product_def(U, d1, d2);
    CHECK(joined.free_count == 1);
    auto [back1, back2] = split_def(U, joined);
    CHECK(verify_set_equality(d1, back1, Box{Z, 7, 0}).pass);
    CHECK(verify_set_equality(d2, back2, Box{Z7, 7, 0}).pass);
    // solutions of the joined definition are exactly the pairs
    auto p1 = solution_set(d1, Box{Z, 5, 0}).points;
    auto p2 = solution_set(d2, Box{Z7, 5, 0}).points;
    auto pj = solution_set(joined, Box{U.interp, 25, 0}).points;
    std::set<std::vector<Elem>> want;
    for (auto& x : p1)
      for (auto& y : p2) want.insert({Elem(x[0][0], y[0][0])});
    CHECK(pj == want);
  }
}
