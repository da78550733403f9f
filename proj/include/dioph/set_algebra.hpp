#pragma once

#include <optional>

#include "dioph/interp.hpp"

namespace dioph {

namespace detail {
inline void require_same_lang(const DiophDefinition& a, const DiophDefinition& b) {
  if (!(a.lang == b.lang)) fail(ErrKind::Usage, "language mismatch");
}
inline void require_equality_only(const DiophDefinition& d) {
  for (auto& a : d.atoms)
    if (a.rel != "=") fail(ErrKind::NotApplicable, "operation requires equality-only atoms");
}
inline void require_ring_syms(const Language& l) {
  if (!l.func_arity("+") || !l.func_arity("*"))
    fail(ErrKind::NotApplicable, "operation requires + and * in the language");
}
inline bool is_zero_term(const Term& t) { return t.kind == Term::Kind::Const && t.name == "0"; }
}  // namespace detail

/// S1 ∩ S2: concatenate atoms, shifting d2's existentials above d1's.
inline DiophDefinition intersect(const DiophDefinition& d1, const DiophDefinition& d2) {
  detail::require_same_lang(d1, d2);
  if (d1.free_count != d2.free_count) fail(ErrKind::Usage, "free arity mismatch");
  int k = d1.free_count, l1 = d1.exist_count;
  DiophDefinition out = d1;
  out.exist_count = l1 + d2.exist_count;
  for (auto& a : d2.atoms)
    out.atoms.push_back(rename_vars(a, [&](int v) { return v <= k ? v : v + l1; }));
  return out;
}

/// S1 ∪ S2 by the subtraction-free cross-product identity
/// t1·s1 + t2·s2 = t1·s2 + t2·s1 (commutative integral domain, equality atoms).
inline DiophDefinition union_defs(const DiophDefinition& d1, const DiophDefinition& d2,
                                  const Interpretation& R) {
  detail::require_same_lang(d1, d2);
  if (d1.free_count != d2.free_count) fail(ErrKind::Usage, "free arity mismatch");
  if (!R.commutative || !R.integral_domain)
    fail(ErrKind::NotApplicable, "union requires a commutative integral domain");
  detail::require_equality_only(d1);
  detail::require_equality_only(d2);
  detail::require_ring_syms(d1.lang);
  int k = d1.free_count, l1 = d1.exist_count;
  DiophDefinition out;
  out.lang = d1.lang;
  out.free_count = k;
  out.exist_count = l1 + d2.exist_count;
  for (auto& a : d1.atoms) {
    const Term& t1 = a.args[0];
    const Term& t2 = a.args[1];
    for (auto& b : d2.atoms) {
      Term s1 = rename_vars(b.args[0], [&](int v) { return v <= k ? v : v + l1; });
      Term s2 = rename_vars(b.args[1], [&](int v) { return v <= k ? v : v + l1; });
      out.atoms.push_back(
          aeq(tadd(tmul(t1, s1), tmul(t2, s2)), tadd(tmul(t1, s2), tmul(t2, s1))));
    }
  }
  return out;
}

/// S1 × S2 ⊂ R^{k+k'}.
inline DiophDefinition product(const DiophDefinition& d1, const DiophDefinition& d2) {
  detail::require_same_lang(d1, d2);
  int k1 = d1.free_count, k2 = d2.free_count, l1 = d1.exist_count;
  DiophDefinition out;
  out.lang = d1.lang;
  out.free_count = k1 + k2;
  out.exist_count = l1 + d2.exist_count;
  for (auto& a : d1.atoms)
    out.atoms.push_back(rename_vars(a, [&](int v) { return v <= k1 ? v : v + k2; }));
  for (auto& a : d2.atoms)
    out.atoms.push_back(rename_vars(a, [&](int v) { return v <= k2 ? v + k1 : v + k1 + l1; }));
  return out;
}

/// Coordinate projection onto the first `keep` free variables: dropped free
/// variables become existential. Variable indices are layout-stable.
inline DiophDefinition project(const DiophDefinition& d, int keep) {
  if (keep < 0 || keep > d.free_count) fail(ErrKind::Usage, "keep out of range");
  DiophDefinition out = d;
  out.free_count = keep;
  out.exist_count = d.exist_count + (d.free_count - keep);
  return out;
}

/// Find a way to express negation over the language: a unary function g with
/// g(x) + x = 0, or a constant c with c + 1 = 0 (then neg(t) = c*t).
inline std::optional<std::function<Term(const Term&)>> negation_term(const Interpretation& R) {
  std::uint64_t samples = R.finite ? std::min<std::uint64_t>(R.carrier_size, 8) : 8;
  auto plus = R.funcs.find("+");
  if (plus == R.funcs.end()) return std::nullopt;
  Elem zero = R.zero();
  for (auto& [name, ar] : R.lang.funcs) {
    if (ar != 1) continue;
    auto& g = R.funcs.at(name);
    bool ok = true;
    for (std::uint64_t i = 0; i < samples && ok; ++i) {
      Elem x = R.nth(i);
      ok = plus->second({g({x}), x}) == zero;
    }
    if (ok) {
      std::string n = name;
      return std::function<Term(const Term&)>([n](const Term& t) { return tapp(n, {t}); });
    }
  }
  if (R.lang.func_arity("*")) {
    auto one = R.consts.find("1");
    for (auto& cname : R.lang.consts) {
      Elem c = R.consts.at(cname);
      if (one != R.consts.end() && plus->second({c, one->second}) == zero) {
        std::string n = cname;
        return std::function<Term(const Term&)>(
            [n](const Term& t) { return tmul(tconst(n), t); });
      }
    }
  }
  return std::nullopt;
}

/// Rewrite every atom t1 = t2 into t = 0 form. Requires additive inverses and
/// an expressible negation; otherwise signals not-applicable.
inline DiophDefinition normalize_one_sided(const DiophDefinition& d, const Interpretation& R) {
  detail::require_equality_only(d);
  DiophDefinition out = d;
  // Atoms already one-sided need no negation.
  bool all_one_sided = true;
  for (auto& a : d.atoms)
    if (!detail::is_zero_term(a.args[0]) && !detail::is_zero_term(a.args[1]))
      all_one_sided = false;
  std::optional<std::function<Term(const Term&)>> neg;
  if (!all_one_sided) {
    if (!R.has_additive_inverses || !R.lang.func_arity("+"))
      fail(ErrKind::NotApplicable, "one-sided normalization needs additive inverses and +");
    neg = negation_term(R);
    if (!neg) fail(ErrKind::NotApplicable, "no negation expressible over this language");
  }
  for (auto& a : out.atoms) {
    if (detail::is_zero_term(a.args[1])) continue;
    if (detail::is_zero_term(a.args[0])) {
      std::swap(a.args[0], a.args[1]);
      continue;
    }
    a.args[0] = tadd(a.args[0], (*neg)(a.args[1]));
    a.args[1] = tconst("0");
  }
  return out;
}

/// Extract integer coefficients of a univariate (x1) polynomial term built
/// from 0, 1, +, * and Elem scalars (width-1 codec values).
inline std::vector<long long> poly_coeffs(const Term& t) {
  using Poly = std::vector<long long>;
  std::function<Poly(const Term&)> go = [&](const Term& u) -> Poly {
    switch (u.kind) {
      case Term::Kind::Var:
        if (u.var != 1) fail(ErrKind::Usage, "witness polynomial must use x1 only");
        return {0, 1};
      case Term::Kind::Const:
        if (u.name == "0") return {0};
        if (u.name == "1") return {1};
        fail(ErrKind::Usage, "witness polynomial constants must be 0/1");
      case Term::Kind::Elem:
        if (u.elem.width() != 1) fail(ErrKind::Usage, "scalar coefficient expected");
        return {u.elem[0]};
      case Term::Kind::Apply: {
        if (u.name == "+") {
          Poly a = go(u.args[0]), b = go(u.args[1]);
          if (b.size() > a.size()) std::swap(a, b);
          for (size_t i = 0; i < b.size(); ++i) a[i] = add_ck(a[i], b[i]);
          return a;
        }
        if (u.name == "*") {
          Poly a = go(u.args[0]), b = go(u.args[1]);
          Poly c(a.size() + b.size() - 1, 0);
          for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j)
              c[i + j] = add_ck(c[i + j], mul_ck(a[i], b[j]));
          return c;
        }
        fail(ErrKind::Usage, "witness polynomial must use only + and *");
      }
    }
    fail(ErrKind::Usage, "corrupt term");
  };
  Poly p = go(t);
  while (p.size() > 1 && p.back() == 0) p.pop_back();
  return p;
}

namespace detail {
inline Term tpow(const Term& t, long long e) {
  if (e <= 0) return tconst("1");
  Term acc = t;
  for (long long i = 1; i < e; ++i) acc = tmul(acc, t);
  return acc;
}
}  // namespace detail

/// Replace the conjunction P1=0 ∧ ... ∧ Pr=0 by a single equation, folding
/// pairs through the homogenization h(X,Y) = Σ a_i X^i Y^{deg-i} of a
/// polynomial f = Σ a_i X^i with no root in the fraction field (caller
/// capability). Default witness f = X² + 1.
inline DiophDefinition combine_single(const DiophDefinition& d, const Interpretation& R,
                                      std::vector<long long> coeffs = {1, 0, 1}) {
  if (!R.integral_domain)
    fail(ErrKind::NotApplicable, "combine_single requires an integral domain");
  detail::require_ring_syms(d.lang);
  if (d.atoms.empty()) fail(ErrKind::Usage, "empty atom list");
  if (d.atoms.size() == 1) return d;
  while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
  long long deg = static_cast<long long>(coeffs.size()) - 1;
  if (deg < 1) fail(ErrKind::Usage, "witness polynomial must have degree >= 1");

  DiophDefinition one_sided = normalize_one_sided(d, R);
  std::vector<Term> polys;
  for (auto& a : one_sided.atoms) polys.push_back(a.args[0]);

  auto neg = negation_term(R);  // only needed when coefficients are mixed-sign
  auto fold = [&](const Term& P, const Term& Q) -> Term {
    std::optional<Term> pos, negp;
    for (long long i = deg; i >= 0; --i) {
      long long a = coeffs[static_cast<size_t>(i)];
      if (a == 0) continue;
      Term mono = tmul(detail::tpow(P, i), detail::tpow(Q, deg - i));
      Term scaled = trepeat_add(mono, std::llabs(a));
      auto& slot = a > 0 ? pos : negp;
      slot = slot ? tadd(*slot, scaled) : scaled;
    }
    if (!pos) fail(ErrKind::Usage, "witness polynomial has no positive part");
    if (!negp) return *pos;
    if (!neg) fail(ErrKind::NotApplicable, "mixed-sign witness polynomial needs negation");
    return tadd(*pos, (*neg)(*negp));
  };

  Term acc = polys[0];
  for (size_t i = 1; i < polys.size(); ++i) acc = fold(acc, polys[i]);
  DiophDefinition out = one_sided;
  out.atoms = {aeq(acc, tconst("0"))};
  return out;
}

/// Fuse two equality atoms into one without negation, using
/// t1²+t2²+s1²+s2² = 2t1t2 + 2s1s2  ⟺  (t1−t2)² + (s1−s2)² = 0,
/// valid when a sum of two squares vanishes only if both do.
inline DiophDefinition fuse_equalities(const DiophDefinition& d, const Interpretation& R) {
  if (!R.squares_anisotropic)
    fail(ErrKind::NotApplicable, "fusing requires X²+1 without roots (flag)");
  detail::require_equality_only(d);
  detail::require_ring_syms(d.lang);
  if (d.atoms.empty()) fail(ErrKind::Usage, "empty atom list");
  auto sq = [](const Term& t) { return tmul(t, t); };
  DiophDefinition out = d;
  while (out.atoms.size() > 1) {
    Atom a = out.atoms[out.atoms.size() - 2];
    Atom b = out.atoms.back();
    out.atoms.pop_back();
    out.atoms.pop_back();
    const Term &t1 = a.args[0], &t2 = a.args[1], &s1 = b.args[0], &s2 = b.args[1];
    Term lhs = tadd(tadd(sq(t1), sq(t2)), tadd(sq(s1), sq(s2)));
    Term cross1 = tmul(t1, t2), cross2 = tmul(s1, s2);
    Term rhs = tadd(tadd(cross1, cross1), tadd(cross2, cross2));
    out.atoms.push_back(aeq(lhs, rhs));
  }
  return out;
}

/// A finite set of codec-domain tuples as a definition: singleton conjunction
/// of coordinate equations, iterated union beyond that.
inline DiophDefinition finite_set(const Interpretation& R,
                                  const std::vector<std::vector<Elem>>& points) {
  if (points.empty())
    fail(ErrKind::Usage, "finite_set rejects the empty list (structure-dependent)");
  if (!R.commutative || !R.integral_domain)
    fail(ErrKind::NotApplicable, "finite_set requires a commutative integral domain");
  size_t k = points[0].size();
  auto value_term = [&](const Elem& e) -> Term {
    for (auto& [name, val] : R.consts)
      if (val == e) return tconst(name);
    if (!R.code_of || !R.code_of(e))
      fail(ErrKind::Usage, "point outside the codec's domain: " + to_string(e));
    return telem(e);
  };
  auto singleton = [&](const std::vector<Elem>& pt) {
    DiophDefinition s;
    s.lang = R.lang;
    s.free_count = static_cast<int>(k);
    for (size_t i = 0; i < k; ++i)
      s.atoms.push_back(aeq(tvar(static_cast<int>(i + 1)), value_term(pt[i])));
    return s;
  };
  DiophDefinition acc = singleton(points[0]);
  for (size_t p = 1; p < points.size(); ++p) {
    if (points[p].size() != k) fail(ErrKind::Usage, "point arity mismatch");
    acc = union_defs(acc, singleton(points[p]), R);
  }
  return acc;
}

}  // namespace dioph
