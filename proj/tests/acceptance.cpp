// Acceptance gate: one PASS/FAIL line per criterion, exit code = number of
// failing criteria. Every workload is deterministic (fixed seeds, fixed
// boxes).

#include <chrono>
#include <iostream>

#include "dioph/maps.hpp"
#include "dioph/set_algebra.hpp"
#include "dioph/textio.hpp"
#include "dioph/verify.hpp"
#include "helpers.hpp"

using namespace dioph;
using testgen::Rng;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::set<std::vector<Elem>> pts(const DiophDefinition& d, const Box& b) {
  return solution_set(d, b).points;
}

DiophDefinition def1(std::vector<Atom> atoms, int free_k = 1, int exist_l = 0) {
  DiophDefinition d;
  d.lang = lang_rings();
  d.free_count = free_k;
  d.exist_count = exist_l;
  d.atoms = std::move(atoms);
  return d;
}

// --------------------------------------------------------------------------
// 1. numbering fidelity: decode∘encode = id and the substitution equation
// --------------------------------------------------------------------------
std::string crit1() {
  auto t0 = std::chrono::steady_clock::now();
  Numbering N = Numbering::of(*make_int());
  if (encode_term(N, tvar(1)) != 8) return "J(x1) != 8";
  if (encode_term(N, tadd(tvar(1), tconst("0"))) != 172800) return "J(+(x1,0)) != 172800";
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    Term t = testgen::random_term(rng, 4, 4);
    mpz_class code = encode_term(N, t);
    if (to_text(decode_term(N, code)) != to_text(t)) return "decode(encode) != id";
    int n = 1 + rng.upto(4);
    Elem a(rng.upto(9) - 4);
    if (ev(N, a, n, code) != encode_term(N, substitute(t, n, telem(a))))
      return "substitution equation failed on term " + std::to_string(i);
  }
  double dt = seconds_since(t0);
  if (dt >= 10.0) return "too slow: " + std::to_string(dt) + "s";
  return "";
}

// --------------------------------------------------------------------------
// 2. unpack(encode(f(t...))) = (sym(f), encode(t_1), ...)
// --------------------------------------------------------------------------
std::string crit2() {
  Numbering N = Numbering::of(*make_int());
  Rng rng(11);  // the same corpus as criterion 1
  for (int i = 0; i < 200; ++i) {
    Term t = testgen::random_term(rng, 4, 4);
    rng.upto(4);
    rng.upto(9);  // keep the stream aligned with criterion 1
    auto u = unpack(N, encode_term(N, t));
    if (t.kind == Term::Kind::Apply) {
      if (u.size() != t.args.size() + 1) return "wrong argument count";
      if (u[0] != detail::pow_ul(2, static_cast<unsigned long>(N.numL(t.name))))
        return "wrong head symbol";
      for (size_t q = 0; q < t.args.size(); ++q)
        if (u[q + 1] != encode_term(N, t.args[q])) return "wrong argument code";
    } else {
      if (u.size() != 1) return "leaf should unpack to its own symbol";
    }
  }
  return "";
}

// --------------------------------------------------------------------------
// 3. set algebra vs set theory, Z-boxes of 17 and exhaustive Z/6
// --------------------------------------------------------------------------
std::string crit3() {
  auto Z = make_int();
  auto Z6 = make_zmod(6);
  Box zbox{Z, 17, 0}, z6box{Z6, 6, 0};
  Rng rng(333);
  int pairs = 0;
  for (int i = 0; i < 50; ++i) {
    auto d1 = testgen::random_def(rng, 1, 1, 2, 2);
    auto d2 = testgen::random_def(rng, 1, 1, 2, 2);
    ++pairs;
    auto p1 = pts(d1, zbox), p2 = pts(d2, zbox);

    // intersect
    std::set<std::vector<Elem>> want;
    for (auto& t : p1)
      if (p2.count(t)) want.insert(t);
    if (pts(intersect(d1, d2), zbox) != want) return "intersect (Z) pair " + std::to_string(i);

    // union
    want = p1;
    want.insert(p2.begin(), p2.end());
    if (pts(union_defs(d1, d2, *Z), zbox) != want) return "union (Z) pair " + std::to_string(i);

    // product
    want.clear();
    for (auto& a : p1)
      for (auto& b : p2) want.insert({a[0], b[0]});
    if (pts(product(d1, d2), zbox) != want) return "product (Z) pair " + std::to_string(i);

    // project: drop the second free variable of d1 x d2
    auto prod = product(d1, d2);
    want.clear();
    for (auto& a : p1)
      if (!p2.empty()) want.insert({a[0]});
    if (pts(project(prod, 1), zbox) != want) return "project (Z) pair " + std::to_string(i);

    // exhaustive Z/6 (union/finite_set/combine_single need an integral domain)
    auto q1 = pts(d1, z6box), q2 = pts(d2, z6box);
    want.clear();
    for (auto& t : q1)
      if (q2.count(t)) want.insert(t);
    if (pts(intersect(d1, d2), z6box) != want) return "intersect (Z/6) pair " + std::to_string(i);
    want.clear();
    for (auto& a : q1)
      for (auto& b : q2) want.insert({a[0], b[0]});
    if (pts(product(d1, d2), z6box) != want) return "product (Z/6) pair " + std::to_string(i);
    want.clear();
    for (auto& a : q1)
      if (!q2.empty()) want.insert({a[0]});
    if (pts(project(prod, 1), z6box) != want) return "project (Z/6) pair " + std::to_string(i);

    // finite_set on points drawn from the box
    std::vector<std::vector<Elem>> fpts;
    std::set<std::vector<Elem>> fwant;
    for (int q = 0, nq = 1 + rng.upto(3); q < nq; ++q) {
      Elem e(rng.upto(17) - 8);
      fpts.push_back({e});
      fwant.insert({e});
    }
    if (pts(finite_set(*Z, fpts), zbox) != fwant) return "finite_set pair " + std::to_string(i);

    // combine_single on one-sided systems
    DiophDefinition os;
    os.lang = lang_rings();
    os.free_count = 1;
    os.exist_count = 1;
    for (int q = 0, nq = 1 + rng.upto(2); q < nq; ++q)
      os.atoms.push_back(aeq(testgen::random_term(rng, 2, 2), tconst("0")));
    auto single = combine_single(os, *Z);
    if (single.atoms.size() != 1) return "combine_single left multiple atoms";
    if (pts(single, zbox) != pts(os, zbox)) return "combine_single pair " + std::to_string(i);
  }
  if (pairs < 50) return "fewer than 50 pairs";
  return "";
}

// --------------------------------------------------------------------------
// 4. lower(lift(d)) = d for k = 2, 3 (quantifier-free, hence exact)
// --------------------------------------------------------------------------
std::string crit4() {
  auto Z = make_int();
  Rng rng(444);
  int defs = 0;
  for (int k : {2, 3}) {
    auto P = PowerLanguage::make(lang_rings(), k);
    auto Rk = power_interp(P, Z);
    for (int i = 0; i < 10; ++i) {
      auto d = testgen::random_def(rng, k, 0, 2, 2);
      ++defs;
      auto up = lift(P, d);
      auto round = lower(P, up, *Z);
      Box base{Z, 5, 0};
      auto a = solution_set(d, base);
      auto b = solution_set(round, base);
      if (!a.exact || !b.exact) return "round trip not exact";
      if (a.points != b.points) return "k=" + std::to_string(k) + " def " + std::to_string(i);
      // the lifted definition sees the same solutions through the power box
      auto upper = pts(up, Box{Rk, detail::ipow_ck(5, k), 0});
      std::set<std::vector<Elem>> upper_split;
      for (auto& t : upper) {
        std::vector<Elem> row;
        for (int c = 0; c < k; ++c) row.push_back(Elem(t[0][c]));
        upper_split.insert(row);
      }
      if (upper_split != a.points) return "power-box mismatch at k=" + std::to_string(k);
    }
  }
  if (defs < 20) return "fewer than 20 definitions";
  return "";
}

// --------------------------------------------------------------------------
// 5. effective-map contract on infinite structures (< 60 s)
// --------------------------------------------------------------------------
std::string crit5() {
  auto t0 = std::chrono::steady_clock::now();
  auto Z = make_int();
  auto N = make_nat();

  // shift 1: x + y = 0 translates onto u + v = 2
  auto sh = stdlib_map("shift:1");
  DiophDefinition sum0 = def1({aeq(tadd(tvar(1), tvar(2)), tconst("0"))}, 2);
  auto out = translate_system(sh, sum0);
  std::set<std::vector<Elem>> want;
  for (long long u = -8; u <= 8; ++u)
    if (2 - u >= -8 && 2 - u <= 8) want.insert({Elem(u), Elem(2 - u)});
  if (pts(out, Box{Z, 17, 0}) != want) return "shift image set wrong";
  for (auto& r : verify_translation(sh, sum0, Box{Z, 17, 0}, Box{Z, 17, 0}))
    if (!r.pass) return r.property + " " + r.counterexample;

  // four-squares inclusion: the full-N system lands on the nonnegatives
  auto incl = stdlib_map("incl-nat-int");
  DiophDefinition allnat = def1({aeq(tvar(1), tvar(1))}, 1);
  auto img = translate_system(incl, allnat);
  std::set<std::vector<Elem>> nonneg;
  for (long long v = 0; v <= 16; ++v) nonneg.insert({Elem(v)});
  if (pts(img, Box{Z, 33, 33}) != nonneg) return "four-squares image set wrong";
  for (auto& r : verify_translation(incl, allnat, Box{N, 17, 0}, Box{Z, 33, 33}))
    if (!r.pass) return r.property + " " + r.counterexample;

  double dt = seconds_since(t0);
  if (dt >= 60.0) return "too slow: " + std::to_string(dt) + "s";
  return "";
}

// --------------------------------------------------------------------------
// 6. decidability transfer through z2-in-z6 on >= 100 generated systems
// --------------------------------------------------------------------------
std::string crit6() {
  auto m = stdlib_map("z2-in-z6");
  auto F2 = make_f2();
  auto dec = exhaustive_decider(make_zmod(6));
  Rng rng(666);
  for (int i = 0; i < 120; ++i) {
    int free_k = rng.upto(3);     // 0..2
    int exist_l = rng.upto(3);    // 0..2
    if (free_k + exist_l == 0) free_k = 1;
    auto sys = testgen::random_def(rng, free_k, exist_l, 3, 2);
    bool direct = solve_bounded(sys, Box{F2, 2, 0}).found;
    bool via = decide_via_map(m, sys, dec);
    if (direct != via)
      return "disagreement on system " + std::to_string(i) + " (direct=" +
             std::to_string(direct) + ")";
  }
  return "";
}

// --------------------------------------------------------------------------
// 7. equivalence maps translate the four basic systems onto the four classes
// --------------------------------------------------------------------------
std::string crit7() {
  auto Z = make_int();
  Box tgt{Z, 33, 33};
  std::set<std::vector<Elem>> nonneg, neg, evens, odds, all, none;
  for (long long v = -16; v <= 16; ++v) {
    all.insert({Elem(v)});
    (v >= 0 ? nonneg : neg).insert({Elem(v)});
    (v % 2 == 0 ? evens : odds).insert({Elem(v)});
  }
  DiophDefinition x0 = def1({aeq(tvar(1), tconst("0"))});
  DiophDefinition x1 = def1({aeq(tvar(1), tconst("1"))});
  DiophDefinition xx = def1({aeq(tvar(1), tvar(1))});
  DiophDefinition clash = def1({aeq(tvar(1), tconst("0")), aeq(tvar(1), tconst("1"))});

  struct Case {
    const char* model;
    const DiophDefinition* sys;
    const std::set<std::vector<Elem>>* want;
  };
  std::vector<Case> table = {
      {"f2-sign-model", &x0, &nonneg}, {"f2-sign-model", &x1, &neg},
      {"f2-sign-model", &xx, &all},    {"f2-sign-model", &clash, &none},
      {"f2-parity-model", &x0, &evens}, {"f2-parity-model", &x1, &odds},
      {"f2-parity-model", &xx, &all},   {"f2-parity-model", &clash, &none},
  };
  for (auto& c : table) {
    auto spec = stdlib_equiv_map(c.model);
    auto out = translate_system_equiv(spec, *c.sys);
    if (pts(out, tgt) != *c.want) return std::string(c.model) + ": translated set mismatch";
  }
  return "";
}

// --------------------------------------------------------------------------
// 8. the piecewise model automorphism: involution + exact class exchange
// --------------------------------------------------------------------------
std::string crit8() {
  auto Z = make_int();
  auto f = stdlib_map("f2-model-automorphism");
  auto rep = verify_automorphism_bounded(f, f, Box{Z, 41, 0});
  if (!rep.pass) return rep.counterexample;
  std::set<long long> even_img, odd_img, nonneg, neg;
  for (std::uint64_t i = 0; i < 41; ++i) {
    long long x = Z->nth(i)[0];
    long long y = f.pointwise(Elem(x))[0];
    (x % 2 == 0 ? even_img : odd_img).insert(y);
    (x >= 0 ? nonneg : neg).insert(x);
  }
  if (even_img != nonneg) return "image of evens is not the nonnegatives";
  if (odd_img != neg) return "image of odds is not the negatives";
  return "";
}

// --------------------------------------------------------------------------
// 9. coded translation is bit-exact against encode∘translate∘decode
// --------------------------------------------------------------------------
std::string crit9() {
  auto m = stdlib_map("shift:1");
  Numbering N1 = Numbering::of(*m.src), N2 = Numbering::of(*m.dst);
  Rng rng(999);
  for (int i = 0; i < 50; ++i) {
    // small systems keep the translated variable count within the symbol bound
    auto sys = testgen::random_def(rng, 1, 1, 2, 1);
    auto codes = encode_system(N1, sys);
    auto direct = translate_system_coded(m, codes, sys.free_count);
    auto longhand = encode_system(N2, translate_system(m, decode_system(N1, codes, sys.free_count)));
    if (direct.size() != longhand.size()) return "length mismatch on system " + std::to_string(i);
    for (size_t q = 0; q < direct.size(); ++q)
      if (direct[q] != longhand[q]) return "code mismatch on system " + std::to_string(i);
  }
  return "";
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::string (*run)();
  };
  std::vector<Criterion> cs = {
      {"criterion-1 numbering-fidelity", crit1},
      {"criterion-2 unpack-correctness", crit2},
      {"criterion-3 set-algebra-oracle-equivalence", crit3},
      {"criterion-4 power-language-round-trip", crit4},
      {"criterion-5 effective-map-infinite", crit5},
      {"criterion-6 decidability-transfer-finite", crit6},
      {"criterion-7 equivalence-map-classes", crit7},
      {"criterion-8 model-automorphism", crit8},
      {"criterion-9 coded-translation", crit9},
  };
  int failures = 0;
  for (auto& c : cs) {
    std::string msg;
    try {
      msg = c.run();
    } catch (const std::exception& e) {
      msg = std::string("exception: ") + e.what();
    }
    if (msg.empty()) {
      std::cout << "PASS " << c.name << "\n";
    } else {
      std::cout << "FAIL " << c.name << " " << msg << "\n";
      ++failures;
    }
    std::cout.flush();
  }
  return failures;
}
