#pragma once

#include "dioph/structures.hpp"
#include "dioph/translate.hpp"

namespace dioph {

namespace detail {
inline Term square(const Term& t) { return tmul(t, t); }
inline Term sum_of_squares(const std::vector<int>& vars) {
  Term acc = square(tvar(vars[0]));
  for (size_t i = 1; i < vars.size(); ++i) acc = tadd(acc, square(tvar(vars[i])));
  return acc;
}
/// {z | z = v} over a ring language, subtraction-free: z = v-fold 1 for
/// v >= 0, z + |v|-fold 1 = 0 otherwise.
inline DiophDefinition integer_singleton(const Language& lang, long long v) {
  DiophDefinition d;
  d.lang = lang;
  d.free_count = 1;
  if (v >= 0) d.atoms.push_back(aeq(tvar(1), tnumeral(v)));
  else d.atoms.push_back(aeq(tadd(tvar(1), tnumeral(-v)), tconst("0")));
  return d;
}
inline long long floordiv(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
}  // namespace detail

/// d(x) = x + n on Z. Graphs are the shifted ring operations written
/// subtraction-free: x'+y' = z'+n and x'y' + n^2+n = z' + nx' + ny'
/// (negative-coefficient monomials cross to the other side for n < 0).
inline MapSpec make_shift(long long n) {
  auto Z = make_int();
  MapSpec m;
  m.name = "shift:" + std::to_string(n);
  m.src = m.dst = Z;
  m.const_defs["0"] = detail::integer_singleton(Z->lang, n);
  m.const_defs["1"] = detail::integer_singleton(Z->lang, n + 1);
  {
    DiophDefinition g;
    g.lang = Z->lang;
    g.free_count = 3;
    Term lhs = tadd(tvar(1), tvar(2)), rhs = tvar(3);
    if (n >= 0) rhs = tadd(rhs, tnumeral(n));
    else lhs = tadd(lhs, tnumeral(-n));
    g.atoms.push_back(aeq(lhs, rhs));
    m.func_graph_defs["+"] = g;
  }
  {
    DiophDefinition g;
    g.lang = Z->lang;
    g.free_count = 3;
    Term lhs = tmul(tvar(1), tvar(2));
    long long c = n * n + n;  // >= 0 for every integer n
    if (c > 0) lhs = tadd(lhs, tnumeral(c));
    Term rhs = tvar(3);
    if (n > 0) rhs = tadd(rhs, tadd(trepeat_add(tvar(1), n), trepeat_add(tvar(2), n)));
    else if (n < 0) lhs = tadd(lhs, tadd(trepeat_add(tvar(1), -n), trepeat_add(tvar(2), -n)));
    g.atoms.push_back(aeq(lhs, rhs));
    m.func_graph_defs["*"] = g;
  }
  m.range_def.lang = Z->lang;
  m.range_def.free_count = 1;
  m.range_def.atoms.push_back(aeq(tvar(1), tvar(1)));
  m.injective = true;
  m.pointwise = [n](const Elem& x) { return Elem(add_ck(x[0], n)); };
  return m;
}

/// The inclusion N -> Z; the range is the nonnegative integers by the
/// four-squares characterization.
inline MapSpec make_incl_nat_int() {
  MapSpec m;
  m.name = "incl-nat-int";
  m.src = make_nat();
  m.dst = make_int();
  const Language& L = m.dst->lang;
  m.const_defs["0"] = detail::integer_singleton(L, 0);
  m.const_defs["1"] = detail::integer_singleton(L, 1);
  m.range_def.lang = L;
  m.range_def.free_count = 1;
  m.range_def.exist_count = 4;
  m.range_def.atoms.push_back(aeq(detail::sum_of_squares({2, 3, 4, 5}), tvar(1)));
  auto graph = [&](const Term& op) {
    DiophDefinition g;
    g.lang = L;
    g.free_count = 3;
    g.exist_count = 8;
    g.atoms.push_back(aeq(op, tvar(3)));
    g.atoms.push_back(aeq(detail::sum_of_squares({4, 5, 6, 7}), tvar(1)));
    g.atoms.push_back(aeq(detail::sum_of_squares({8, 9, 10, 11}), tvar(2)));
    return g;
  };
  m.func_graph_defs["+"] = graph(tadd(tvar(1), tvar(2)));
  m.func_graph_defs["*"] = graph(tmul(tvar(1), tvar(2)));
  m.injective = true;
  m.pointwise = [](const Elem& x) { return x; };
  return m;
}

/// d(x) = 3x: Z/2 -> Z/6. The range {y | y+y = 0} = {0, 3} and the target
/// operations restricted to it realize the source operations.
inline MapSpec make_z2_in_z6() {
  MapSpec m;
  m.name = "z2-in-z6";
  m.src = make_zmod(2);
  m.dst = make_zmod(6);
  const Language& L = m.dst->lang;
  m.const_defs["0"] = detail::integer_singleton(L, 0);
  m.const_defs["1"] = detail::integer_singleton(L, 3);
  m.range_def.lang = L;
  m.range_def.free_count = 1;
  m.range_def.atoms.push_back(aeq(tadd(tvar(1), tvar(1)), tconst("0")));
  auto graph = [&](const Term& op) {
    DiophDefinition g;
    g.lang = L;
    g.free_count = 3;
    g.atoms.push_back(aeq(op, tvar(3)));
    g.atoms.push_back(aeq(tadd(tvar(1), tvar(1)), tconst("0")));
    g.atoms.push_back(aeq(tadd(tvar(2), tvar(2)), tconst("0")));
    return g;
  };
  m.func_graph_defs["+"] = graph(tadd(tvar(1), tvar(2)));
  m.func_graph_defs["*"] = graph(tmul(tvar(1), tvar(2)));
  m.injective = true;
  m.pointwise = [](const Elem& x) { return Elem((3 * x[0]) % 6); };
  return m;
}

/// The inclusion Z -> Z[i], whose range is carved out by the "int" relation.
inline MapSpec make_incl_int_gauss() {
  MapSpec m;
  m.name = "incl-int-gauss";
  m.src = make_int();
  m.dst = make_gaussint(/*with_int_relation=*/true);
  const Language& L = m.dst->lang;
  m.const_defs["0"] = detail::integer_singleton(L, 0);
  m.const_defs["1"] = detail::integer_singleton(L, 1);
  m.range_def.lang = L;
  m.range_def.free_count = 1;
  m.range_def.atoms.push_back(Atom{"int", {tvar(1)}});
  auto graph = [&](const Term& op) {
    DiophDefinition g;
    g.lang = L;
    g.free_count = 3;
    g.atoms.push_back(aeq(op, tvar(3)));
    g.atoms.push_back(Atom{"int", {tvar(1)}});
    g.atoms.push_back(Atom{"int", {tvar(2)}});
    return g;
  };
  m.func_graph_defs["+"] = graph(tadd(tvar(1), tvar(2)));
  m.func_graph_defs["*"] = graph(tmul(tvar(1), tvar(2)));
  m.injective = true;
  m.pointwise = [](const Elem& x) { return Elem(x[0], 0); };
  return m;
}

/// (r0, r1) -> r0 + i*r1: Z^2 -> Z[i], derived from the inclusion Z -> Z[i]
/// by the expression z = u1 + i*u2.
inline MapSpec make_gauss_pack() {
  ExpressionSpec e;
  e.input_count = 2;
  e.atoms.push_back(aeq(tvar(3), tadd(tvar(1), tmul(tconst("i"), tvar(2)))));
  MapSpec m = expression_to_mapspec(make_incl_int_gauss(), e, "gauss-pack",
                                    [](const Elem& x) { return Elem(x[0], x[1]); });
  return m;
}

namespace detail {
/// Class-bit block for the sign model: gamma in {0,1} with gamma = 1 exactly
/// when x < 0, pinned by x = gamma*(2x+1) + (sum of four squares); witnesses
/// are bounded by |x|.
inline DiophDefinition sign_bit_block(const Language& L) {
  DiophDefinition d;
  d.lang = L;
  d.free_count = 2;  // (x, gamma)
  d.exist_count = 4;
  d.atoms.push_back(aeq(tmul(tvar(2), tvar(2)), tvar(2)));
  Term twox1 = tadd(tadd(tvar(1), tvar(1)), tconst("1"));
  d.atoms.push_back(aeq(tvar(1), tadd(tmul(tvar(2), twox1), sum_of_squares({3, 4, 5, 6}))));
  return d;
}
/// Parity-bit block: gamma in {0,1}, x = gamma + 2s.
inline DiophDefinition parity_bit_block(const Language& L) {
  DiophDefinition d;
  d.lang = L;
  d.free_count = 2;
  d.exist_count = 1;
  d.atoms.push_back(aeq(tmul(tvar(2), tvar(2)), tvar(2)));
  d.atoms.push_back(aeq(tvar(1), tadd(tvar(2), tadd(tvar(3), tvar(3)))));
  return d;
}
/// Assemble the operation graphs of an F2 model from a bit block: the bits
/// of the inputs and output satisfy the field operation.
inline void f2_graphs(EquivMapSpec& m, const DiophDefinition& bit) {
  const Language& L = m.dst->lang;
  {
    DefBuilder b(4);
    int g1 = b.fresh(), g2 = b.fresh(), g3 = b.fresh(), delta = b.fresh();
    b.instantiate(bit, std::vector<int>{1, g1});
    b.instantiate(bit, std::vector<int>{2, g2});
    b.instantiate(bit, std::vector<int>{3, g3});
    b.atoms.push_back(aeq(tmul(tvar(delta), tvar(delta)), tvar(delta)));
    b.atoms.push_back(
        aeq(tadd(tvar(g1), tvar(g2)), tadd(tvar(g3), tadd(tvar(delta), tvar(delta)))));
    DiophDefinition g;
    g.lang = L;
    g.free_count = 3;
    g.exist_count = b.counter - 4;
    g.atoms = std::move(b.atoms);
    m.func_graph_defs["+"] = g;
  }
  {
    DefBuilder b(4);
    int g1 = b.fresh(), g2 = b.fresh(), g3 = b.fresh();
    b.instantiate(bit, std::vector<int>{1, g1});
    b.instantiate(bit, std::vector<int>{2, g2});
    b.instantiate(bit, std::vector<int>{3, g3});
    b.atoms.push_back(aeq(tvar(g3), tmul(tvar(g1), tvar(g2))));
    DiophDefinition g;
    g.lang = L;
    g.free_count = 3;
    g.exist_count = b.counter - 4;
    g.atoms = std::move(b.atoms);
    m.func_graph_defs["*"] = g;
  }
}
inline DiophDefinition full_range(const Language& L) {
  DiophDefinition d;
  d.lang = L;
  d.free_count = 1;
  d.atoms.push_back(aeq(tvar(1), tvar(1)));
  return d;
}
}  // namespace detail

/// F2 modeled in Z by sign: class of 0 = nonnegatives (four squares), class
/// of 1 = negatives.
inline EquivMapSpec make_f2_sign_model() {
  EquivMapSpec m;
  m.name = "f2-sign-model";
  m.src = make_f2();
  m.dst = make_int();
  const Language& L = m.dst->lang;
  {
    DiophDefinition d;
    d.lang = L;
    d.free_count = 1;
    d.exist_count = 4;
    d.atoms.push_back(aeq(detail::sum_of_squares({2, 3, 4, 5}), tvar(1)));
    m.const_defs["0"] = d;
  }
  {
    DiophDefinition d;
    d.lang = L;
    d.free_count = 1;
    d.exist_count = 4;
    d.atoms.push_back(aeq(
        tadd(tadd(tvar(1), detail::sum_of_squares({2, 3, 4, 5})), tconst("1")), tconst("0")));
    m.const_defs["1"] = d;
  }
  m.range_def = detail::full_range(L);
  DiophDefinition bit = detail::sign_bit_block(L);
  detail::f2_graphs(m, bit);
  {
    detail::DefBuilder b(3);
    int g1 = b.fresh(), g2 = b.fresh();
    b.instantiate(bit, std::vector<int>{1, g1});
    b.instantiate(bit, std::vector<int>{2, g2});
    b.atoms.push_back(aeq(tvar(g1), tvar(g2)));
    m.equiv_def.lang = L;
    m.equiv_def.free_count = 2;
    m.equiv_def.exist_count = b.counter - 3;
    m.equiv_def.atoms = std::move(b.atoms);
  }
  m.equiv_restricted = false;
  m.injective = true;
  m.pointwise = [](const Elem& x) { return Elem(x[0] == 0 ? 0 : -1); };
  m.class_member = [](const Elem& bitv, const Elem& z) {
    return bitv[0] == 0 ? z[0] >= 0 : z[0] < 0;
  };
  return m;
}

/// F2 modeled in Z by parity: class of 0 = evens, class of 1 = odds.
inline EquivMapSpec make_f2_parity_model() {
  EquivMapSpec m;
  m.name = "f2-parity-model";
  m.src = make_f2();
  auto Z = make_int();
  m.dst = Z;
  const Language& L = Z->lang;
  {
    DiophDefinition d;
    d.lang = L;
    d.free_count = 1;
    d.exist_count = 1;
    d.atoms.push_back(aeq(tadd(tvar(2), tvar(2)), tvar(1)));
    m.const_defs["0"] = d;
  }
  {
    DiophDefinition d;
    d.lang = L;
    d.free_count = 1;
    d.exist_count = 1;
    d.atoms.push_back(aeq(tadd(tadd(tvar(2), tvar(2)), tconst("1")), tvar(1)));
    m.const_defs["1"] = d;
  }
  m.range_def = detail::full_range(L);
  DiophDefinition bit = detail::parity_bit_block(L);
  detail::f2_graphs(m, bit);
  {
    // x ~ y iff 2 | x - y: union of the two shift witnesses
    DiophDefinition a, b2;
    a.lang = b2.lang = L;
    a.free_count = b2.free_count = 2;
    a.exist_count = b2.exist_count = 1;
    a.atoms.push_back(aeq(tvar(1), tadd(tvar(2), tadd(tvar(3), tvar(3)))));
    b2.atoms.push_back(aeq(tvar(2), tadd(tvar(1), tadd(tvar(3), tvar(3)))));
    m.equiv_def = union_defs(a, b2, *Z);
  }
  m.equiv_restricted = false;
  m.injective = true;
  m.pointwise = [](const Elem& x) { return Elem(x[0]); };
  m.class_member = [](const Elem& bitv, const Elem& z) {
    return ((z[0] % 2) + 2) % 2 == bitv[0];
  };
  return m;
}

/// The Diophantine automorphism of Z carrying multiples of k onto multiples
/// of l: kq -> lq, and kq+r -> lq'+r' through the rank bijections of the
/// non-multiples (inequalities written with four squares). Its inverse is
/// the same construction with k and l swapped.
inline MapSpec make_dk_dl_automorphism(long long k = 2, long long l = 3) {
  if (k < 2 || l < 2) fail(ErrKind::Usage, "moduli must be >= 2");
  auto Z = make_int();
  const Language& L = Z->lang;
  using detail::sum_of_squares;

  PiecewiseCase divisible;
  {
    DiophDefinition d;
    d.lang = L;
    d.free_count = 1;
    d.exist_count = 1;
    d.atoms.push_back(aeq(tvar(1), trepeat_add(tvar(2), k)));
    divisible.case_def = d;
  }
  divisible.expr.input_count = 1;
  divisible.expr.aux_count = 1;  // q
  divisible.expr.atoms.push_back(aeq(tvar(1), trepeat_add(tvar(3), k)));
  divisible.expr.atoms.push_back(aeq(tvar(2), trepeat_add(tvar(3), l)));
  divisible.member = [k](const Elem& x) { return ((x[0] % k) + k) % k == 0; };
  divisible.branch = [k, l](const Elem& x) { return Elem(mul_ck(x[0] / k, l)); };

  PiecewiseCase rest;
  {
    // k does not divide x  <=>  k divides (x+1)(x+2)...(x+k-1)
    DiophDefinition d;
    d.lang = L;
    d.free_count = 1;
    d.exist_count = 1;
    Term prod = tadd(tvar(1), tconst("1"));
    for (long long i = 2; i < k; ++i) prod = tmul(prod, tadd(tvar(1), tnumeral(i)));
    d.atoms.push_back(aeq(prod, trepeat_add(tvar(2), k)));
    rest.case_def = d;
  }
  {
    // vars: 1 x, 2 z, aux: 3 q, 4 r, 5 q', 6 r', 7..22 square witnesses
    ExpressionSpec& e = rest.expr;
    e.input_count = 1;
    e.aux_count = 20;
    int q = 3, r = 4, qp = 5, rp = 6;
    e.atoms.push_back(aeq(tvar(1), tadd(trepeat_add(tvar(q), k), tvar(r))));
    e.atoms.push_back(aeq(tvar(r), tadd(tconst("1"), sum_of_squares({7, 8, 9, 10}))));
    e.atoms.push_back(aeq(tadd(tvar(r), sum_of_squares({11, 12, 13, 14})), tnumeral(k - 1)));
    e.atoms.push_back(aeq(tadd(trepeat_add(tvar(q), k - 1), tvar(r)),
                          tadd(trepeat_add(tvar(qp), l - 1), tvar(rp))));
    e.atoms.push_back(aeq(tvar(rp), tadd(tconst("1"), sum_of_squares({15, 16, 17, 18}))));
    e.atoms.push_back(aeq(tadd(tvar(rp), sum_of_squares({19, 20, 21, 22})), tnumeral(l - 1)));
    e.atoms.push_back(aeq(tvar(2), tadd(trepeat_add(tvar(qp), l), tvar(rp))));
  }
  rest.member = [k](const Elem& x) { return ((x[0] % k) + k) % k != 0; };
  rest.branch = [k, l](const Elem& x) {
    long long q = detail::floordiv(x[0], k), r = x[0] - k * q;  // 1 <= r <= k-1
    long long w = (k - 1) * q + r - 1;
    long long qp = detail::floordiv(w, l - 1), rp = w - (l - 1) * qp + 1;
    return Elem(add_ck(mul_ck(l, qp), rp));
  };

  MapSpec m = piecewise_mapspec(Z, {divisible, rest},
                                "equiv-automorphism-dk-dl:" + std::to_string(k) + ":" +
                                    std::to_string(l));
  return m;
}

/// The self-inverse automorphism of Z that carries the parity classes onto
/// the sign classes: identity on nonnegative evens and negative odds,
/// x -> -x-1 elsewhere.
inline MapSpec make_f2_model_automorphism() {
  auto Z = make_int();
  const Language& L = Z->lang;
  using detail::sum_of_squares;

  auto even_case = [&](bool nonneg) {
    DiophDefinition d;
    d.lang = L;
    d.free_count = 1;
    d.exist_count = 5;  // q + four squares
    d.atoms.push_back(aeq(tvar(1), tadd(tvar(2), tvar(2))));
    if (nonneg) d.atoms.push_back(aeq(tvar(1), sum_of_squares({3, 4, 5, 6})));
    else
      d.atoms.push_back(aeq(tadd(tadd(tvar(1), sum_of_squares({3, 4, 5, 6})), tconst("1")),
                            tconst("0")));
    return d;
  };
  auto odd_case = [&](bool nonneg) {
    DiophDefinition d;
    d.lang = L;
    d.free_count = 1;
    d.exist_count = 5;
    d.atoms.push_back(aeq(tvar(1), tadd(tadd(tvar(2), tvar(2)), tconst("1"))));
    if (nonneg) d.atoms.push_back(aeq(tvar(1), sum_of_squares({3, 4, 5, 6})));
    else
      d.atoms.push_back(aeq(tadd(tadd(tvar(1), sum_of_squares({3, 4, 5, 6})), tconst("1")),
                            tconst("0")));
    return d;
  };
  ExpressionSpec ident;
  ident.input_count = 1;
  ident.atoms.push_back(aeq(tvar(2), tvar(1)));
  ExpressionSpec negate;  // z = -x-1, i.e. x + z + 1 = 0
  negate.input_count = 1;
  negate.atoms.push_back(aeq(tadd(tadd(tvar(1), tvar(2)), tconst("1")), tconst("0")));

  auto id_fn = [](const Elem& x) { return x; };
  auto neg_fn = [](const Elem& x) { return Elem(-x[0] - 1); };
  std::vector<PiecewiseCase> cases{
      {even_case(true), ident,
       [](const Elem& x) { return x[0] % 2 == 0 && x[0] >= 0; }, id_fn},
      {even_case(false), negate,
       [](const Elem& x) { return x[0] % 2 == 0 && x[0] < 0; }, neg_fn},
      {odd_case(true), negate,
       [](const Elem& x) { return ((x[0] % 2) + 2) % 2 == 1 && x[0] >= 0; }, neg_fn},
      {odd_case(false), ident,
       [](const Elem& x) { return ((x[0] % 2) + 2) % 2 == 1 && x[0] < 0; }, id_fn},
  };
  return piecewise_mapspec(Z, cases, "f2-model-automorphism");
}

// ---------------------------------------------------------------------------

struct StdlibMapEntry {
  std::string name;
  std::string description;
  bool equiv;
};

inline std::vector<StdlibMapEntry> stdlib_map_list() {
  return {
      {"shift:n", "x -> x+n on the integers", false},
      {"incl-nat-int", "inclusion of the naturals into the integers (four-squares range)",
       false},
      {"z2-in-z6", "x -> 3x embedding Z/2 into Z/6", false},
      {"incl-int-gauss", "inclusion of Z into the Gaussian integers (int relation)", false},
      {"gauss-pack", "(a,b) -> a+bi packing integer pairs into the Gaussian integers", false},
      {"equiv-automorphism-dk-dl:k:l",
       "automorphism of Z carrying multiples of k onto multiples of l (default 2:3)", false},
      {"f2-model-automorphism",
       "self-inverse automorphism of Z exchanging parity classes with sign classes", false},
      {"f2-sign-model", "F2 into Z/~ by sign: class of 0 = nonnegatives, class of 1 = negatives",
       true},
      {"f2-parity-model", "F2 into Z/~ by parity: class of 0 = evens, class of 1 = odds", true},
  };
}

inline bool stdlib_map_is_equiv(const std::string& name) {
  return name == "f2-sign-model" || name == "f2-parity-model";
}

inline EquivMapSpec stdlib_equiv_map(const std::string& name) {
  if (name == "f2-sign-model") return make_f2_sign_model();
  if (name == "f2-parity-model") return make_f2_parity_model();
  fail(ErrKind::Usage, "unknown quotient map: " + name);
}

inline MapSpec stdlib_map(const std::string& name) {
  if (name == "incl-nat-int") return make_incl_nat_int();
  if (name == "z2-in-z6") return make_z2_in_z6();
  if (name == "incl-int-gauss") return make_incl_int_gauss();
  if (name == "gauss-pack") return make_gauss_pack();
  if (name == "f2-model-automorphism") return make_f2_model_automorphism();
  auto num = [&](const std::string& s) {
    try {
      size_t used = 0;
      long long v = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      fail(ErrKind::Usage, "bad parameter in map name: " + s);
    }
  };
  if (name.rfind("shift:", 0) == 0) return make_shift(num(name.substr(6)));
  const std::string dk = "equiv-automorphism-dk-dl";
  if (name == dk) return make_dk_dl_automorphism();
  if (name.rfind(dk + ":", 0) == 0) {
    std::string rest = name.substr(dk.size() + 1);
    auto colon = rest.find(':');
    if (colon == std::string::npos) fail(ErrKind::Usage, "expected " + dk + ":k:l");
    return make_dk_dl_automorphism(num(rest.substr(0, colon)), num(rest.substr(colon + 1)));
  }
  if (stdlib_map_is_equiv(name))
    fail(ErrKind::Usage, name + " is a quotient map; use the quotient-map entry point");
  fail(ErrKind::Usage, "unknown map: " + name);
}

}  // namespace dioph
