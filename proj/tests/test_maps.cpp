#include <catch2/catch_amalgamated.hpp>

#include "dioph/maps.hpp"
#include "dioph/textio.hpp"
#include "dioph/verify.hpp"
#include "helpers.hpp"

using namespace dioph;

namespace {
DiophDefinition sum_zero() {  // x + y = 0, two free variables
  DiophDefinition d;
  d.lang = lang_rings();
  d.free_count = 2;
  d.atoms = {aeq(tadd(tvar(1), tvar(2)), tconst("0"))};
  return d;
}
}  // namespace

TEST_CASE("every stdlib map validates") {
  for (auto& e : stdlib_map_list()) {
    std::string name = e.name;
    if (name == "shift:n") name = "shift:1";
    if (name == "equiv-automorphism-dk-dl:k:l") name = "equiv-automorphism-dk-dl:2:3";
    INFO(name);
    if (e.equiv) CHECK(validate_mapspec(stdlib_equiv_map(name)).empty());
    else CHECK(validate_mapspec(stdlib_map(name)).empty());
  }
  CHECK_THROWS_AS(stdlib_map("no-such-map"), Error);
  CHECK_THROWS_AS(stdlib_map("f2-sign-model"), Error);  // quotient entry point required
}

TEST_CASE("mapspec validation catches malformed components") {
  auto m = stdlib_map("shift:1");
  m.const_defs.erase("0");
  CHECK_FALSE(validate_mapspec(m).empty());

  auto m2 = stdlib_map("shift:1");
  m2.range_def.free_count = 2;
  CHECK_FALSE(validate_mapspec(m2).empty());

  auto m3 = stdlib_map("shift:1");
  m3.rel_image_defs["="] = m3.range_def;  // "=" is compiled structurally
  CHECK_FALSE(validate_mapspec(m3).empty());
}

TEST_CASE("shift map translates x+y=0 onto u+v=2") {
  auto Z = make_int();
  auto out = translate_system(stdlib_map("shift:1"), sum_zero());
  CHECK(out.free_count == 2);
  auto pts = solution_set(out, Box{Z, 17, 0}).points;
  std::set<std::vector<Elem>> want;
  for (long long u = -8; u <= 8; ++u) {
    long long v = 2 - u;
    if (v >= -8 && v <= 8) want.insert({Elem(u), Elem(v)});
  }
  CHECK(pts == want);
}

TEST_CASE("shift graphs contain the pointwise triples") {
  auto m = stdlib_map("shift:1");
  // d(1)=2, d(2)=3, 1+2=3 so (2,3,4) is in the graph of +
  auto g = m.func_graph_defs.at("+");
  auto pts = solution_set(g, Box{make_int(), 17, 0}).points;
  CHECK(pts.count({Elem(2), Elem(3), Elem(4)}));
  CHECK(pts.count({Elem(3), Elem(4), Elem(6)}));   // d(2)=3, d(3)=4, d(2+3)=6
  CHECK_FALSE(pts.count({Elem(2), Elem(3), Elem(5)}));  // 2+3 != 5+1
}

TEST_CASE("translate_term compiles a term's graph") {
  auto m = stdlib_map("shift:1");
  Term t = tadd(tvar(1), tconst("1"));  // x + 1
  auto d = translate_term(m, t, 1);
  CHECK(d.free_count == 2);
  auto pts = solution_set(d, Box{make_int(), 9, 0}).points;
  // (d(x), d(x+1)) = (x+1, x+2)
  for (auto& p : pts) CHECK(p[1][0] == p[0][0] + 1);
  CHECK(pts.count({Elem(1), Elem(2)}));
}

TEST_CASE("incl-nat-int: range is the nonnegatives") {
  auto m = stdlib_map("incl-nat-int");
  auto pts = solution_set(m.range_def, Box{make_int(), 33, 33}).points;
  std::set<std::vector<Elem>> want;
  for (long long v = 0; v <= 16; ++v) want.insert({Elem(v)});
  CHECK(pts == want);
  CHECK(m.pointwise(Elem(5)) == Elem(5));
}

TEST_CASE("verify_translation passes for stdlib maps and fails for corrupted ones") {
  auto m = stdlib_map("shift:1");
  auto Z = make_int();
  auto reps = verify_translation(m, sum_zero(), Box{Z, 17, 0}, Box{Z, 17, 0});
  REQUIRE(reps.size() == 2);
  CHECK(reps[0].pass);
  CHECK(reps[1].pass);
  CHECK(reps[0].line() == "PASS shift:1:condition-1");

  auto bad = m;  // range collapsed to {0}: images of solutions stop solving
  bad.range_def.atoms = {aeq(tvar(1), tconst("0"))};
  bad.range_def.exist_count = 0;
  auto breps = verify_translation(bad, sum_zero(), Box{Z, 17, 0}, Box{Z, 17, 0});
  CHECK_FALSE(breps[0].pass);
  CHECK_FALSE(breps[0].counterexample.empty());
}

TEST_CASE("z2-in-z6 decides through the embedding") {
  auto m = stdlib_map("z2-in-z6");
  auto dec = exhaustive_decider(make_zmod(6));
  DiophDefinition s;
  s.lang = lang_rings();
  s.free_count = 1;
  s.atoms = {aeq(tadd(tvar(1), tconst("1")), tconst("0"))};
  CHECK(decide_via_map(m, s, dec));
  // the translated solution is 3 = d(1)
  auto out = translate_system(m, s);
  auto pts = solution_set(out, Box{make_zmod(6), 6, 0}).points;
  CHECK(pts == std::set<std::vector<Elem>>{{Elem(3)}});

  DiophDefinition contra = s;
  contra.atoms = {aeq(tvar(1), tconst("0")), aeq(tvar(1), tconst("1"))};
  CHECK_FALSE(decide_via_map(m, contra, dec));
}

TEST_CASE("composition through two maps") {
  // shift 1 then shift -1 is the identity on solution sets
  auto out = compose_translators(stdlib_map("shift:1"), stdlib_map("shift:-1"), sum_zero());
  CHECK(verify_set_equality(sum_zero(), out, Box{make_int(), 9, 0}).pass);
  // target language of the first leg must be the source language of the second
  CHECK_THROWS_AS(
      compose_translators(stdlib_map("incl-int-gauss"), stdlib_map("shift:1"), sum_zero()),
      Error);
}

TEST_CASE("coded translation matches encode-translate-decode") {
  auto m = stdlib_map("shift:1");
  Numbering N1 = Numbering::of(*m.src), N2 = Numbering::of(*m.dst);
  auto codes = encode_system(N1, sum_zero());
  auto direct = translate_system_coded(m, codes, 2);
  auto expected = encode_system(N2, translate_system(m, decode_system(N1, codes, 2)));
  CHECK(direct == expected);
}

TEST_CASE("gauss-pack: expression over an injective base") {
  auto m = stdlib_map("gauss-pack");
  CHECK(m.src->width == 2);
  CHECK(m.dst->name == "gaussint-z");
  CHECK(validate_mapspec(m).empty());
  // pointwise: (a,b) -> a+bi
  CHECK(m.pointwise(Elem(3, -2)) == Elem(3, -2));
  // range covers the whole box (every Gaussian integer is a packed pair)
  auto G = m.dst;
  auto pts = solution_set(m.range_def, Box{G, 25, 0}).points;
  CHECK(pts.size() == 25);
}

TEST_CASE("equivalence maps: class membership and translation") {
  auto sign = stdlib_equiv_map("f2-sign-model");
  CHECK(sign.class_member(Elem(0), Elem(7)));    // class of 0 = nonnegatives
  CHECK_FALSE(sign.class_member(Elem(0), Elem(-7)));
  CHECK(sign.class_member(Elem(1), Elem(-1)));

  auto parity = stdlib_equiv_map("f2-parity-model");
  CHECK(parity.class_member(Elem(0), Elem(4)));
  CHECK(parity.class_member(Elem(1), Elem(-3)));
  CHECK_FALSE(parity.class_member(Elem(1), Elem(2)));

  // equivalence definition: 2 | x - y
  auto eq_pts = solution_set(parity.equiv_def, Box{make_int(), 9, 0}).points;
  for (auto& p : eq_pts) CHECK((p[0][0] - p[1][0]) % 2 == 0);
  CHECK(eq_pts.count({Elem(2), Elem(-4)}));
  CHECK_FALSE(eq_pts.count({Elem(2), Elem(-3)}));
}

TEST_CASE("piecewise maps carry verification pieces") {
  auto f = stdlib_map("f2-model-automorphism");
  REQUIRE(f.pieces.size() == 4);
  for (auto& pc : f.pieces) {
    CHECK(pc.case_def.free_count == 1);
    CHECK(pc.unary_graph.free_count == 2);
    REQUIRE(pc.member);
    REQUIRE(pc.branch);
  }
  // pointwise: even nonnegative -> identity; odd nonnegative -> -x-1 ...
  CHECK(f.pointwise(Elem(0)) == Elem(0));
  CHECK(f.pointwise(Elem(1)) == Elem(-2));
  CHECK(f.pointwise(Elem(-2)) == Elem(1));
  CHECK(f.pointwise(Elem(2)) == Elem(2));
}

TEST_CASE("automorphism verification") {
  auto Z = make_int();
  auto rep = verify_automorphism_bounded(stdlib_map("shift:1"), stdlib_map("shift:-1"),
                                         Box{Z, 17, 0});
  CHECK(rep.pass);
  auto bad = verify_automorphism_bounded(stdlib_map("shift:1"), stdlib_map("shift:1"),
                                         Box{Z, 17, 0});
  CHECK_FALSE(bad.pass);
  CHECK(bad.counterexample.find("0") != std::string::npos);
}

TEST_CASE("dk-dl automorphism carries multiples of k to multiples of l") {
  auto f = stdlib_map("equiv-automorphism-dk-dl:2:3");
  for (long long x = -10; x <= 10; ++x) {
    Elem y = f.pointwise(Elem(x));
    CHECK(((x % 2 == 0) == (y[0] % 3 == 0)));
  }
  auto g = stdlib_map("equiv-automorphism-dk-dl:3:2");
  for (long long x = -10; x <= 10; ++x) CHECK(g.pointwise(f.pointwise(Elem(x))) == Elem(x));
}

TEST_CASE("translator rejects non-effective input") {
  auto m = stdlib_map("shift:1");
  DiophDefinition d = sum_zero();
  d.atoms = {aeq(tvar(1), telem(Elem(3)))};
  CHECK_THROWS_AS(translate_system(m, d), Error);
  auto m2 = m;
  m2.injective = false;
  CHECK_THROWS_AS(translate_system(m2, sum_zero()), Error);
}
