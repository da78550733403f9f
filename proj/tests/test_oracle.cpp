#include <catch2/catch_amalgamated.hpp>

#include "dioph/oracle.hpp"
#include "dioph/structures.hpp"
#include "helpers.hpp"

using namespace dioph;

namespace {
DiophDefinition four_squares_eq(long long n) {
  DiophDefinition d;
  d.lang = lang_rings();
  d.free_count = 0;
  d.exist_count = 4;
  Term lhs = tadd(tadd(tmul(tvar(1), tvar(1)), tmul(tvar(2), tvar(2))),
                  tadd(tmul(tvar(3), tvar(3)), tmul(tvar(4), tvar(4))));
  d.atoms = {aeq(lhs, tnumeral(n))};
  return d;
}
}  // namespace

TEST_CASE("solve_bounded finds the four-squares witness for 5") {
  auto res = solve_bounded(four_squares_eq(5), Box{make_int(), 7, 0});
  REQUIRE(res.found);
  std::multiset<long long> sq{res.witness[0][0], res.witness[1][0], res.witness[2][0],
                              res.witness[3][0]};
  long long sum = 0;
  for (auto v : sq) sum += v * v;
  CHECK(sum == 5);
  // deterministic: the first witness in enumeration order
  auto res2 = solve_bounded(four_squares_eq(5), Box{make_int(), 7, 0});
  CHECK(res2.witness == res.witness);
  CHECK(res2.examined == res.examined);
}

TEST_CASE("trivial solves") {
  DiophDefinition d;
  d.lang = lang_rings();
  d.free_count = 1;
  d.atoms = {aeq(tvar(1), tvar(1))};
  auto res = solve_bounded(d, Box{make_int(), 1, 0});
  REQUIRE(res.found);
  CHECK(res.witness == std::vector<Elem>{Elem(0)});

  DiophDefinition bad;
  bad.lang = lang_rings();
  bad.free_count = 0;
  bad.atoms = {aeq(tconst("0"), tconst("1"))};
  CHECK_FALSE(solve_bounded(bad, Box{make_int(), 9, 0}).found);
}

TEST_CASE("solution_set: evens within the size-9 integer box") {
  DiophDefinition d;
  d.lang = lang_rings();
  d.free_count = 1;
  d.exist_count = 1;
  d.atoms = {aeq(tvar(1), tadd(tvar(2), tvar(2)))};
  auto res = solution_set(d, Box{make_int(), 9, 0});
  std::set<std::vector<Elem>> want;
  for (long long v : {0, 2, -2, 4, -4}) want.insert({Elem(v)});
  CHECK(res.points == want);
  CHECK_FALSE(res.exact);  // infinite carrier + existential: frontier caveat
  CHECK(res.frontier_warnings == 9 - want.size());
}

TEST_CASE("solution_set is exact on finite carriers") {
  DiophDefinition d;
  d.lang = lang_rings();
  d.free_count = 1;
  d.atoms = {aeq(tadd(tvar(1), tvar(1)), tconst("0"))};
  auto res = solution_set(d, Box{make_zmod(6), 6, 0});
  std::set<std::vector<Elem>> want{{Elem(0)}, {Elem(3)}};
  CHECK(res.points == want);
  CHECK(res.exact);
  CHECK(res.frontier_warnings == 0);
}

TEST_CASE("quantifier-free definitions are exact") {
  DiophDefinition d;
  d.lang = lang_rings();
  d.free_count = 1;
  d.atoms = {aeq(tmul(tvar(1), tvar(1)), tnumeral(4))};
  auto res = solution_set(d, Box{make_int(), 9, 0});
  std::set<std::vector<Elem>> want{{Elem(2)}, {Elem(-2)}};
  CHECK(res.points == want);
  CHECK(res.exact);
}

TEST_CASE("separate existential bound") {
  // x = a^2 with a existential: 9 needs a = 3, outside a size-5 box.
  DiophDefinition d;
  d.lang = lang_rings();
  d.free_count = 1;
  d.exist_count = 1;
  d.atoms = {aeq(tvar(1), tmul(tvar(2), tvar(2)))};
  auto narrow = solution_set(d, Box{make_int(), 19, 5});
  CHECK_FALSE(narrow.points.count({Elem(9)}));
  auto wide = solution_set(d, Box{make_int(), 19, 7});
  CHECK(wide.points.count({Elem(9)}));
}

TEST_CASE("verify_set_equality reports the symmetric difference") {
  DiophDefinition evens, odds;
  evens.lang = odds.lang = lang_rings();
  evens.free_count = odds.free_count = 1;
  evens.exist_count = odds.exist_count = 1;
  evens.atoms = {aeq(tvar(1), tadd(tvar(2), tvar(2)))};
  odds.atoms = {aeq(tvar(1), tadd(tadd(tvar(2), tvar(2)), tconst("1")))};
  auto same = verify_set_equality(evens, evens, Box{make_int(), 9, 0});
  CHECK(same.pass);
  auto diff = verify_set_equality(evens, odds, Box{make_int(), 9, 0});
  CHECK_FALSE(diff.pass);
  CHECK(diff.counterexample.rfind("only-", 0) == 0);
  CHECK(diff.line().rfind("FAIL", 0) == 0);
}

TEST_CASE("oracle validates inputs") {
  DiophDefinition d;
  d.lang = lang_rings();
  d.free_count = 1;
  d.atoms = {aeq(tvar(1), tconst("0"))};
  CHECK_THROWS_AS(solve_bounded(d, Box{make_gaussint(), 5, 0}), Error);  // language mismatch
  Box zero{make_int(), 0, 0};
  CHECK_THROWS_AS(solve_bounded(d, zero), Error);  // box must be >= 1
}
