#include <catch2/catch_amalgamated.hpp>

#include "dioph/oracle.hpp"
#include "dioph/set_algebra.hpp"
#include "dioph/structures.hpp"
#include "helpers.hpp"

using namespace dioph;

namespace {
DiophDefinition const_eq(long long c) {  // {x | x = numeral c}
  DiophDefinition d;
  d.lang = lang_rings();
  d.free_count = 1;
  d.atoms = {aeq(tvar(1), tnumeral(c))};
  return d;
}
}  // namespace

TEST_CASE("intersect conjoins with shifted existentials") {
  DiophDefinition evens;
  evens.lang = lang_rings();
  evens.free_count = 1;
  evens.exist_count = 1;
  evens.atoms = {aeq(tvar(1), tadd(tvar(2), tvar(2)))};
  DiophDefinition sq = evens;
  sq.atoms = {aeq(tvar(1), tmul(tvar(2), tvar(2)))};

  auto both = intersect(evens, sq);
  CHECK(both.free_count == 1);
  CHECK(both.exist_count == 2);
  auto pts = solution_set(both, Box{make_int(), 11, 0}).points;
  std::set<std::vector<Elem>> want{{Elem(0)}, {Elem(4)}};  // even squares in box
  CHECK(pts == want);
}

TEST_CASE("union via the cross-product identity") {
  auto R = make_int();
  auto u = union_defs(const_eq(0), const_eq(1), *R);
  auto fs = finite_set(*R, {{Elem(0)}, {Elem(1)}});
  CHECK(verify_set_equality(u, fs, Box{R, 9, 0}).pass);

  // {2,5} -> x² + 10 = 7x (same solution set)
  DiophDefinition poly;
  poly.lang = lang_rings();
  poly.free_count = 1;
  poly.atoms = {aeq(tadd(tmul(tvar(1), tvar(1)), tnumeral(10)),
                    trepeat_add(tvar(1), 7))};
  CHECK(verify_set_equality(finite_set(*R, {{Elem(2)}, {Elem(5)}}), poly, Box{R, 13, 0}).pass);
}

TEST_CASE("union is correct on multi-atom inputs (distributivity)") {
  auto R = make_int();
  testgen::Rng rng(5150);
  for (int i = 0; i < 10; ++i) {
    auto d1 = testgen::random_def(rng, 1, 1, 2, 2);
    auto d2 = testgen::random_def(rng, 1, 1, 2, 2);
    auto u = union_defs(d1, d2, *R);
    Box box{R, 9, 0};
    auto p1 = solution_set(d1, box).points;
    auto p2 = solution_set(d2, box).points;
    auto pu = solution_set(u, box).points;
    std::set<std::vector<Elem>> want = p1;
    want.insert(p2.begin(), p2.end());
    CHECK(pu == want);
  }
}

TEST_CASE("union preconditions") {
  auto Z6 = make_zmod(6);
  CHECK_THROWS_AS(union_defs(const_eq(0), const_eq(1), *Z6), Error);  // 2·3 = 0
  CHECK_THROWS_AS(finite_set(*Z6, {{Elem(0)}, {Elem(3)}}), Error);
  CHECK_THROWS_AS(finite_set(*make_int(), {}), Error);  // empty set is structure-dependent
}

TEST_CASE("product and project") {
  auto R = make_int();
  auto p = product(const_eq(2), const_eq(3));
  CHECK(p.free_count == 2);
  auto pts = solution_set(p, Box{R, 9, 0}).points;
  CHECK(pts == std::set<std::vector<Elem>>{{Elem(2), Elem(3)}});

  auto back = project(p, 1);
  CHECK(back.free_count == 1);
  auto q = solution_set(back, Box{R, 9, 0});
  CHECK(q.points == std::set<std::vector<Elem>>{{Elem(2)}});

  // projection with out-of-box witnesses is flagged, not silently wrong
  DiophDefinition wide;
  wide.lang = lang_rings();
  wide.free_count = 2;
  wide.atoms = {aeq(tvar(2), tmul(tnumeral(5), tvar(1)))};
  auto pr = project(wide, 1);
  auto res = solution_set(pr, Box{R, 9, 0});
  CHECK_FALSE(res.exact);
  CHECK(res.frontier_warnings > 0);
}

namespace {
// (Z, {0,1,+,*,neg}): the ring language extended by a negation symbol.
InterpPtr make_int_with_neg() {
  auto R = std::make_shared<Interpretation>(*make_int());
  R->name = "int-neg";
  R->lang.funcs.emplace_back("neg", 1);
  R->funcs["neg"] = [](const std::vector<Elem>& a) { return Elem(-a[0][0]); };
  return R;
}
}  // namespace

TEST_CASE("negation term discovery") {
  CHECK_FALSE(negation_term(*make_int()).has_value());   // {0,1,+,*} cannot express -1
  CHECK_FALSE(negation_term(*make_zmod(6)).has_value()); // same language mod 6
  auto ZN = make_int_with_neg();
  auto neg = negation_term(*ZN);
  REQUIRE(neg.has_value());
  Term t = (*neg)(tvar(1));
  DiophDefinition d;
  d.lang = ZN->lang;
  d.free_count = 1;
  d.atoms = {aeq(tadd(t, tvar(1)), tconst("0"))};
  CHECK(solution_set(d, Box{ZN, 7, 0}).points.size() == 7);  // neg(x) + x = 0 everywhere
}

TEST_CASE("one-sided normalization") {
  auto ZN = make_int_with_neg();
  DiophDefinition d;
  d.lang = ZN->lang;
  d.free_count = 2;
  d.atoms = {aeq(tvar(1), tvar(2))};
  auto n = normalize_one_sided(d, *ZN);
  REQUIRE(n.atoms.size() == 1);
  CHECK(n.atoms[0].args[1].kind == Term::Kind::Const);
  CHECK(n.atoms[0].args[1].name == "0");
  CHECK(verify_set_equality(d, n, Box{ZN, 7, 0}).pass);

  // already one-sided stays unchanged even without negation
  DiophDefinition os = const_eq(0);
  os.atoms = {aeq(tmul(tvar(1), tvar(1)), tconst("0"))};
  auto kept = normalize_one_sided(os, *make_int());
  CHECK(kept.atoms.size() == 1);

  // two-sided over the bare ring language: not applicable
  CHECK_THROWS_AS(normalize_one_sided(d, *make_int()), Error);
}

TEST_CASE("poly_coeffs reads off univariate coefficients") {
  Term t = tadd(tconst("1"), tmul(tvar(1), tvar(1)));  // 1 + x²
  CHECK(poly_coeffs(t) == std::vector<long long>{1, 0, 1});
  CHECK(poly_coeffs(tvar(1)) == std::vector<long long>{0, 1});
  CHECK(poly_coeffs(tconst("0")) == std::vector<long long>{0});
}

TEST_CASE("combine_single folds a system into one equation") {
  auto R = make_int();
  DiophDefinition d;
  d.lang = lang_rings();
  d.free_count = 2;
  d.atoms = {aeq(tvar(1), tconst("0")), aeq(tvar(2), tconst("0"))};
  auto one = combine_single(d, *R);
  REQUIRE(one.atoms.size() == 1);
  CHECK(verify_set_equality(d, one, Box{R, 7, 0}).pass);

  DiophDefinition d3;
  d3.lang = lang_rings();
  d3.free_count = 3;
  d3.atoms = {aeq(tvar(1), tconst("0")), aeq(tvar(2), tconst("0")),
              aeq(tvar(3), tconst("0"))};
  auto one3 = combine_single(d3, *R);
  REQUIRE(one3.atoms.size() == 1);
  auto pts = solution_set(one3, Box{R, 5, 0}).points;
  CHECK(pts == std::set<std::vector<Elem>>{{Elem(0), Elem(0), Elem(0)}});

  // single atom returned unchanged
  auto same = combine_single(const_eq(1), *R);
  CHECK(same.atoms.size() == 1);

  CHECK_THROWS_AS(combine_single(d, *make_zmod(6)), Error);  // not an integral domain
}

TEST_CASE("fuse_equalities merges two-sided equations without negation") {
  auto R = make_int();
  DiophDefinition d;
  d.lang = lang_rings();
  d.free_count = 2;
  d.atoms = {aeq(tvar(1), tnumeral(2)), aeq(tvar(2), tnumeral(3))};
  auto fused = fuse_equalities(d, *R);
  REQUIRE(fused.atoms.size() == 1);
  CHECK(verify_set_equality(d, fused, Box{R, 9, 0}).pass);
  CHECK_THROWS_AS(fuse_equalities(d, *make_gaussint()), Error);  // i² + 1 = 0
}
