#pragma once

#include <unordered_map>

#include "dioph/set_algebra.hpp"

namespace dioph {

namespace detail {

// Shell enumeration of k-tuples of indices: tuples ordered by their maximum
// coordinate, lexicographically within a shell. The first m^k entries are
// exactly the k-fold product of the first m entries of the base enumeration.
inline std::uint64_t ipow_ck(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (b != 0 && r > UINT64_MAX / b) fail(ErrKind::Overflow, "enumeration index overflow");
    r *= b;
  }
  return r;
}

inline std::vector<std::uint64_t> shell_tuple(std::uint64_t m, int k) {
  // shell s: tuples with max == s; there are (s+1)^k - s^k of them.
  std::uint64_t s = 0;
  while (ipow_ck(s + 1, k) <= m) ++s;
  std::uint64_t rank = m - ipow_ck(s, k);
  // Decode rank among lex-ordered tuples with all coords <= s, at least one == s.
  std::vector<std::uint64_t> out(static_cast<size_t>(k));
  bool have_s = false;
  for (int p = 0; p < k; ++p) {
    int rem = k - p - 1;
    for (std::uint64_t d = 0; d <= s; ++d) {
      std::uint64_t cnt = (have_s || d == s)
                              ? ipow_ck(s + 1, rem)
                              : ipow_ck(s + 1, rem) - ipow_ck(s, rem);
      if (rank < cnt) {
        out[static_cast<size_t>(p)] = d;
        if (d == s) have_s = true;
        break;
      }
      rank -= cnt;
    }
  }
  return out;
}

inline std::uint64_t shell_index(const std::vector<std::uint64_t>& t) {
  int k = static_cast<int>(t.size());
  std::uint64_t s = 0;
  for (auto x : t) s = std::max(s, x);
  std::uint64_t rank = 0;
  bool have_s = false;
  for (int p = 0; p < k; ++p) {
    int rem = k - p - 1;
    for (std::uint64_t d = 0; d < t[static_cast<size_t>(p)]; ++d)
      rank += (have_s || d == s) ? ipow_ck(s + 1, rem)
                                 : ipow_ck(s + 1, rem) - ipow_ck(s, rem);
    if (t[static_cast<size_t>(p)] == s) have_s = true;
  }
  return ipow_ck(s, k) + rank;
}

// Cantor pairing on N^2 and its inverse, for product codecs.
inline long long cantor_pair(long long a, long long b) {
  long long s = add_ck(a, b);
  return add_ck(mul_ck(s, add_ck(s, 1)) / 2, b);
}
inline std::pair<long long, long long> cantor_unpair(long long z) {
  long long s = 0;
  while (mul_ck(s + 1, s + 2) / 2 <= z) ++s;
  long long b = z - s * (s + 1) / 2;
  return {s - b, b};
}

}  // namespace detail

/// The k-th power language L^(k): L's symbols plus coordinate projections
/// pi1..pik (unary), interpreted over the product structure R^k.
struct PowerLanguage {
  int k = 1;
  Language base;  // L
  Language lang;  // L^(k)

  static PowerLanguage make(const Language& L, int k) {
    if (k < 1 || k > Elem::kMaxWidth) fail(ErrKind::Usage, "power out of range");
    PowerLanguage p;
    p.k = k;
    p.base = L;
    p.lang = L;
    for (int i = 1; i <= k; ++i) {
      std::string name = "pi" + std::to_string(i);
      if (L.func_arity(name)) fail(ErrKind::Usage, "projection name collides: " + name);
      p.lang.funcs.emplace_back(name, 1);
    }
    return p;
  }

  std::string pi(int i) const { return "pi" + std::to_string(i); }
};

/// R^k as a structure for L^(k). Components are laid out contiguously:
/// component i of a tuple occupies slots [i*w, (i+1)*w) of the Elem.
inline InterpPtr power_interp(const PowerLanguage& P, InterpPtr baseR) {
  if (!(baseR->lang == P.base)) fail(ErrKind::Usage, "base language mismatch");
  int k = P.k, w = baseR->width;
  if (k * w > Elem::kMaxWidth) fail(ErrKind::Usage, "product width exceeds element capacity");

  auto R = std::make_shared<Interpretation>();
  R->name = baseR->name + "^" + std::to_string(k);
  R->lang = P.lang;
  R->width = k * w;
  R->finite = baseR->finite;
  if (baseR->finite) R->carrier_size = detail::ipow_ck(baseR->carrier_size, k);

  auto comp = [k, w](const Elem& e, int i) {
    Elem c;
    c.n = static_cast<std::uint8_t>(w);
    for (int j = 0; j < w; ++j) c[j] = e[i * w + j];
    return c;
  };
  auto pack = [k, w](const std::vector<Elem>& comps) {
    Elem e;
    e.n = static_cast<std::uint8_t>(k * w);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < w; ++j) e[i * w + j] = comps[static_cast<size_t>(i)][j];
    return e;
  };
  auto embed = [k, w, pack](const Elem& a, const Elem& zero) {
    std::vector<Elem> cs(static_cast<size_t>(k), zero);
    cs[0] = a;
    return pack(cs);
  };

  Elem bzero = baseR->zero();

  R->nth = [baseR, k, pack](std::uint64_t m) {
    auto idx = detail::shell_tuple(m, k);
    std::vector<Elem> cs;
    cs.reserve(static_cast<size_t>(k));
    for (auto i : idx) cs.push_back(baseR->nth(i));
    return pack(cs);
  };
  R->index_of = [baseR, k, comp](const Elem& e) -> std::optional<std::uint64_t> {
    std::vector<std::uint64_t> idx(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
      auto bi = baseR->index_of(comp(e, i));
      if (!bi) return std::nullopt;
      idx[static_cast<size_t>(i)] = *bi;
    }
    return detail::shell_index(idx);
  };

  for (auto& [name, val] : baseR->consts) R->consts[name] = embed(val, bzero);
  for (auto& [name, fn] : baseR->funcs) {
    auto f = fn;
    R->funcs[name] = [f, k, comp, embed, bzero](const std::vector<Elem>& args) {
      std::vector<Elem> firsts;
      firsts.reserve(args.size());
      for (auto& a : args) firsts.push_back(comp(a, 0));
      return embed(f(firsts), bzero);
    };
  }
  for (int i = 1; i <= k; ++i) {
    R->funcs[P.pi(i)] = [i, comp, embed, bzero](const std::vector<Elem>& args) {
      return embed(comp(args[0], i - 1), bzero);
    };
  }
  for (auto& [name, rl] : baseR->rels) {
    auto r = rl;
    R->rels[name] = [r, k, comp, bzero](const std::vector<Elem>& args) {
      std::vector<Elem> firsts;
      firsts.reserve(args.size());
      for (auto& a : args) {
        for (int i = 1; i < k; ++i)
          if (comp(a, i) != bzero) return false;
        firsts.push_back(comp(a, 0));
      }
      return r(firsts);
    };
  }

  if (baseR->code_of && baseR->elem_of) {
    R->code_of = [baseR, k, comp](const Elem& e) -> std::optional<long long> {
      long long acc = 0;
      for (int i = 0; i < k; ++i) {
        auto c = baseR->code_of(comp(e, i));
        if (!c) return std::nullopt;
        acc = i == 0 ? *c : detail::cantor_pair(acc, *c);
      }
      return acc;
    };
    R->elem_of = [baseR, k, pack](long long z) -> std::optional<Elem> {
      std::vector<long long> codes(static_cast<size_t>(k));
      for (int i = k - 1; i >= 1; --i) {
        auto [a, b] = detail::cantor_unpair(z);
        codes[static_cast<size_t>(i)] = b;
        z = a;
      }
      codes[0] = z;
      std::vector<Elem> cs;
      for (auto c : codes) {
        auto e = baseR->elem_of(c);
        if (!e) return std::nullopt;
        cs.push_back(*e);
      }
      return pack(cs);
    };
  }

  R->commutative = baseR->commutative;
  // R^k has zero divisors and no sensible domain structure for k >= 2.
  R->integral_domain = k == 1 && baseR->integral_domain;
  R->has_additive_inverses = false;
  R->squares_anisotropic = false;
  return R;
}

/// Rewrite a definition of S ⊂ R^{k·l} (free arity k·l, grouped as l blocks of
/// k coordinates) into a definition of the corresponding subset of (R^k)^l
/// over L^(k). Variable x_{(j-1)k+i} becomes pi_i(X_j).
inline DiophDefinition lift(const PowerLanguage& P, const DiophDefinition& d) {
  int k = P.k;
  if (d.free_count % k != 0) fail(ErrKind::Usage, "free arity must be a multiple of k");
  int l = d.free_count / k, kl = d.free_count;
  std::function<Term(const Term&)> map_term = [&](const Term& u) -> Term {
    {
      if (u.kind == Term::Kind::Var) {
        if (u.var <= kl) {
          int j = (u.var - 1) / k + 1, i = (u.var - 1) % k + 1;
          return tapp(P.pi(i), {tvar(j)});
        }
        return tapp(P.pi(1), {tvar(l + (u.var - kl))});
      }
      if (u.kind == Term::Kind::Elem) {
        // widen to the product layout: base value in component 1, zero tail
        Elem e;
        int w = u.elem.width();
        if (k * w > Elem::kMaxWidth) fail(ErrKind::Usage, "element too wide to lift");
        e.n = static_cast<std::uint8_t>(k * w);
        for (int j = 0; j < w; ++j) e[j] = u.elem[j];
        return telem(e);
      }
      Term out = u;
      for (auto& a : out.args) a = map_term(a);
      return out;
    }
  };
  DiophDefinition out;
  out.lang = P.lang;
  out.free_count = l;
  out.exist_count = d.exist_count;
  for (auto& a : d.atoms) {
    Atom na = a;
    for (auto& t : na.args) t = map_term(t);
    out.atoms.push_back(std::move(na));
  }
  return out;
}

/// Inverse direction: a definition over L^(k) with free arity l becomes one
/// over L with free arity k·l, by splitting every variable into k coordinates.
inline DiophDefinition lower(const PowerLanguage& P, const DiophDefinition& d,
                             const Interpretation& baseR) {
  int k = P.k, l = d.free_count, kl = k * l;
  int base_w = baseR.width;
  auto coordvar = [&](int m, int i) {  // i is 1-based coordinate
    if (m <= l) return (m - 1) * k + i;
    return kl + (m - l - 1) * k + i;
  };
  // coords(t): the k base-language terms whose values are t's coordinates.
  std::function<std::vector<Term>(const Term&)> coords = [&](const Term& t) -> std::vector<Term> {
    std::vector<Term> out(static_cast<size_t>(k), tconst("0"));
    switch (t.kind) {
      case Term::Kind::Var:
        for (int i = 1; i <= k; ++i) out[static_cast<size_t>(i - 1)] = tvar(coordvar(t.var, i));
        return out;
      case Term::Kind::Const:
        out[0] = tconst(t.name);
        return out;
      case Term::Kind::Elem: {
        if (t.elem.width() != k * base_w) fail(ErrKind::Usage, "element width mismatch");
        for (int i = 0; i < k; ++i) {
          Elem c;
          c.n = static_cast<std::uint8_t>(base_w);
          for (int j = 0; j < base_w; ++j) c[j] = t.elem[i * base_w + j];
          out[static_cast<size_t>(i)] = telem(c);
        }
        return out;
      }
      case Term::Kind::Apply: {
        for (int i = 1; i <= k; ++i)
          if (t.name == P.pi(i)) {
            out[0] = coords(t.args[0])[static_cast<size_t>(i - 1)];
            return out;
          }
        std::vector<Term> firsts;
        firsts.reserve(t.args.size());
        for (auto& a : t.args) firsts.push_back(coords(a)[0]);
        out[0] = tapp(t.name, std::move(firsts));
        return out;
      }
    }
    fail(ErrKind::Validation, "corrupt term");
  };

  DiophDefinition out;
  out.lang = P.base;
  out.free_count = kl;
  out.exist_count = k * d.exist_count;
  auto zero_c = tconst("0");
  for (auto& a : d.atoms) {
    if (a.rel == "=") {
      auto cl = coords(a.args[0]), cr = coords(a.args[1]);
      for (int i = 0; i < k; ++i)
        out.atoms.push_back(aeq(cl[static_cast<size_t>(i)], cr[static_cast<size_t>(i)]));
    } else {
      Atom na;
      na.rel = a.rel;
      for (auto& t : a.args) {
        auto ct = coords(t);
        na.args.push_back(ct[0]);
        for (int i = 1; i < k; ++i)
          if (!(ct[static_cast<size_t>(i)] == zero_c))
            out.atoms.push_back(aeq(ct[static_cast<size_t>(i)], zero_c));
      }
      out.atoms.push_back(std::move(na));
    }
  }
  if (out.atoms.empty()) out.atoms.push_back(aeq(zero_c, zero_c));
  return out;
}

// ---------------------------------------------------------------------------
// Disjoint union of two structures: carrier R1 × R2, with each language's
// symbols acting on its own coordinate (the other is pinned to 0).
// ---------------------------------------------------------------------------

struct DisjointUnion {
  Language lang;        // tagged union signature
  Language lang1, lang2;
  InterpPtr interp;
  InterpPtr r1, r2;

  std::string tag(const std::string& name, int which) const {
    return name + (which == 1 ? ".1" : ".2");
  }
};

inline DisjointUnion disjoint_union_language(InterpPtr R1, InterpPtr R2) {
  DisjointUnion U;
  U.lang1 = R1->lang;
  U.lang2 = R2->lang;
  U.r1 = R1;
  U.r2 = R2;
  int w1 = R1->width, w2 = R2->width;
  if (w1 + w2 > Elem::kMaxWidth) fail(ErrKind::Usage, "union width exceeds element capacity");

  Language L;
  L.consts = {"0"};
  for (int which = 1; which <= 2; ++which) {
    const Language& S = which == 1 ? U.lang1 : U.lang2;
    for (auto& c : S.consts) L.consts.push_back(U.tag(c, which));
    for (auto& [f, a] : S.funcs) L.funcs.emplace_back(U.tag(f, which), a);
    for (auto& [r, a] : S.rels) L.rels.emplace_back(U.tag(r, which), a);
  }
  U.lang = L;

  auto R = std::make_shared<Interpretation>();
  R->name = R1->name + "+" + R2->name;
  R->lang = L;
  R->width = w1 + w2;
  R->finite = R1->finite && R2->finite;
  if (R->finite) {
    if (R2->carrier_size != 0 && R1->carrier_size > UINT64_MAX / R2->carrier_size)
      fail(ErrKind::Overflow, "carrier size overflow");
    R->carrier_size = R1->carrier_size * R2->carrier_size;
  }

  auto part = [w1, w2](const Elem& e, int which) {
    Elem c;
    c.n = static_cast<std::uint8_t>(which == 1 ? w1 : w2);
    int off = which == 1 ? 0 : w1;
    for (int j = 0; j < c.n; ++j) c[j] = e[off + j];
    return c;
  };
  auto pack = [w1, w2](const Elem& a, const Elem& b) {
    Elem e;
    e.n = static_cast<std::uint8_t>(w1 + w2);
    for (int j = 0; j < w1; ++j) e[j] = a[j];
    for (int j = 0; j < w2; ++j) e[w1 + j] = b[j];
    return e;
  };

  Elem z1 = R1->zero(), z2 = R2->zero();
  R->consts["0"] = pack(z1, z2);

  // Diagonal shell enumeration of the pair carrier, capped per side when finite.
  R->nth = [R1, R2, pack](std::uint64_t m) {
    std::uint64_t s = 0, seen = 0;
    for (;; ++s) {
      std::uint64_t c1 = R1->finite ? std::min<std::uint64_t>(s + 1, R1->carrier_size) : s + 1;
      std::uint64_t c2 = R2->finite ? std::min<std::uint64_t>(s + 1, R2->carrier_size) : s + 1;
      std::uint64_t p1 = R1->finite ? std::min<std::uint64_t>(s, R1->carrier_size) : s;
      std::uint64_t p2 = R2->finite ? std::min<std::uint64_t>(s, R2->carrier_size) : s;
      std::uint64_t shell = c1 * c2 - p1 * p2;
      if (m - seen < shell) {
        std::uint64_t rank = m - seen;
        // lex over (i,j) with i < c1, j < c2, max-layer membership
        for (std::uint64_t i = 0; i < c1; ++i) {
          std::uint64_t row = (i >= p1) ? c2 : c2 - p2;
          if (rank < row) {
            std::uint64_t j = (i >= p1) ? rank : p2 + rank;
            return pack(R1->nth(i), R2->nth(j));
          }
          rank -= row;
        }
        fail(ErrKind::Validation, "enumeration invariant broken");
      }
      seen += shell;
      if (shell == 0) fail(ErrKind::Usage, "index beyond finite carrier");
    }
  };
  R->index_of = [R1, R2, part](const Elem& e) -> std::optional<std::uint64_t> {
    auto i = R1->index_of(part(e, 1));
    auto j = R2->index_of(part(e, 2));
    if (!i || !j) return std::nullopt;
    std::uint64_t s = std::max(*i, *j), seen = 0;
    for (std::uint64_t t = 0; t < s; ++t) {
      std::uint64_t c1 = R1->finite ? std::min<std::uint64_t>(t + 1, R1->carrier_size) : t + 1;
      std::uint64_t c2 = R2->finite ? std::min<std::uint64_t>(t + 1, R2->carrier_size) : t + 1;
      std::uint64_t p1 = R1->finite ? std::min<std::uint64_t>(t, R1->carrier_size) : t;
      std::uint64_t p2 = R2->finite ? std::min<std::uint64_t>(t, R2->carrier_size) : t;
      seen += c1 * c2 - p1 * p2;
    }
    std::uint64_t c2 = R2->finite ? std::min<std::uint64_t>(s + 1, R2->carrier_size) : s + 1;
    std::uint64_t p1 = R1->finite ? std::min<std::uint64_t>(s, R1->carrier_size) : s;
    std::uint64_t p2 = R2->finite ? std::min<std::uint64_t>(s, R2->carrier_size) : s;
    std::uint64_t rank = 0;
    for (std::uint64_t t = 0; t < *i; ++t) rank += (t >= p1) ? c2 : c2 - p2;
    rank += (*i >= p1) ? *j : *j - p2;
    return seen + rank;
  };

  for (int which = 1; which <= 2; ++which) {
    const auto& S = which == 1 ? R1 : R2;
    const Elem& oz = which == 1 ? z2 : z1;
    for (auto& [name, val] : S->consts) {
      Elem v = val;
      R->consts[U.tag(name, which)] =
          which == 1 ? pack(v, oz) : pack(oz, v);
    }
    for (auto& [name, fn] : S->funcs) {
      auto f = fn;
      R->funcs[U.tag(name, which)] = [f, which, part, pack, oz](const std::vector<Elem>& args) {
        std::vector<Elem> mine;
        mine.reserve(args.size());
        for (auto& a : args) mine.push_back(part(a, which));
        Elem r = f(mine);
        return which == 1 ? pack(r, oz) : pack(oz, r);
      };
    }
    for (auto& [name, rl] : S->rels) {
      auto r = rl;
      const Elem& ozc = which == 1 ? z2 : z1;
      R->rels[U.tag(name, which)] = [r, which, part, ozc](const std::vector<Elem>& args) {
        std::vector<Elem> mine;
        mine.reserve(args.size());
        for (auto& a : args) {
          if (part(a, which == 1 ? 2 : 1) != ozc) return false;
          mine.push_back(part(a, which));
        }
        return r(mine);
      };
    }
  }

  R->commutative = false;
  R->integral_domain = false;
  R->has_additive_inverses = false;
  R->squares_anisotropic = false;
  U.interp = R;
  return U;
}

namespace detail {
/// Tag a component definition's symbols and pin the other coordinate of bare
/// top-level variables via (+.i v 0) so equality reads coordinatewise.
inline Atom tag_atom(const DisjointUnion& U, const Atom& a, int which, int k, int shift,
                     int other_w) {
  const Language& S = which == 1 ? U.lang1 : U.lang2;
  if (!S.func_arity("+"))
    fail(ErrKind::NotApplicable, "component language needs + to pin the other coordinate");
  std::function<Term(const Term&)> map = [&](const Term& t) -> Term {
    switch (t.kind) {
      case Term::Kind::Var:
        return tvar(t.var <= k ? t.var : t.var + shift);
      case Term::Kind::Const:
        return tconst(U.tag(t.name, which));
      case Term::Kind::Elem: {
        Elem e;
        e.n = static_cast<std::uint8_t>(t.elem.width() + other_w);
        int off = which == 1 ? 0 : other_w;
        for (int j = 0; j < t.elem.width(); ++j) e[off + j] = t.elem[j];
        return telem(e);
      }
      case Term::Kind::Apply: {
        std::vector<Term> args;
        args.reserve(t.args.size());
        for (auto& x : t.args) args.push_back(map(x));
        return tapp(U.tag(t.name, which), std::move(args));
      }
    }
    fail(ErrKind::Validation, "corrupt term");
  };
  Atom out;
  out.rel = a.rel == "=" ? "=" : U.tag(a.rel, which);
  for (auto& t : a.args) {
    Term m = map(t);
    if (a.rel == "=" && m.kind == Term::Kind::Var)
      m = tapp(U.tag("+", which), {m, tconst("0")});
    out.args.push_back(std::move(m));
  }
  return out;
}
}  // namespace detail

/// Given S1 ⊂ R1^k and S2 ⊂ R2^k, define S1 × S2 ⊂ (R1 ⊔ R2)^k, matching
/// coordinates pointwise: (x_i, y_i) ∈ carrier with x ∈ S1, y ∈ S2.
inline DiophDefinition product_def(const DisjointUnion& U, const DiophDefinition& d1,
                                   const DiophDefinition& d2) {
  if (!(d1.lang == U.lang1) || !(d2.lang == U.lang2))
    fail(ErrKind::Usage, "definition language does not match the union's components");
  if (d1.free_count != d2.free_count) fail(ErrKind::Usage, "free arity mismatch");
  int k = d1.free_count, l1 = d1.exist_count;
  DiophDefinition out;
  out.lang = U.lang;
  out.free_count = k;
  out.exist_count = l1 + d2.exist_count;
  for (auto& a : d1.atoms)
    out.atoms.push_back(detail::tag_atom(U, a, 1, k, 0, U.r2->width));
  for (auto& a : d2.atoms)
    out.atoms.push_back(detail::tag_atom(U, a, 2, k, l1, U.r1->width));
  return out;
}

/// Inverse of product_def for definitions whose atoms each touch one
/// component's symbols only (tag-neutral atoms are copied into both parts).
inline std::pair<DiophDefinition, DiophDefinition> split_def(const DisjointUnion& U,
                                                             const DiophDefinition& d) {
  auto suffix_tag = [](const std::string& name) -> int {
    if (name.size() > 2 && name.ends_with(".1")) return 1;
    if (name.size() > 2 && name.ends_with(".2")) return 2;
    return 0;
  };
  auto strip = [](const std::string& name) { return name.substr(0, name.size() - 2); };
  int w1 = U.r1->width;

  std::function<Term(const Term&, int)> untag_term = [&](const Term& u, int which) -> Term {
    {
      switch (u.kind) {
        case Term::Kind::Var:
          return u;
        case Term::Kind::Const: {
          int tg = suffix_tag(u.name);
          if (tg == 0) return u;  // shared "0"
          if (tg != which) fail(ErrKind::Usage, "atom mixes both components");
          return tconst(strip(u.name));
        }
        case Term::Kind::Elem: {
          Elem e;
          int w = which == 1 ? w1 : u.elem.width() - w1;
          int off = which == 1 ? 0 : w1;
          e.n = static_cast<std::uint8_t>(w);
          for (int j = 0; j < w; ++j) e[j] = u.elem[off + j];
          return telem(e);
        }
        case Term::Kind::Apply: {
          int tg = suffix_tag(u.name);
          if (tg != which) fail(ErrKind::Usage, "atom mixes both components");
          std::vector<Term> args;
          for (auto& x : u.args) args.push_back(untag_term(x, which));
          return tapp(strip(u.name), std::move(args));
        }
      }
      fail(ErrKind::Validation, "corrupt term");
    }
  };

  auto atom_tags = [&](const Atom& a) {
    std::set<int> tags;
    std::function<void(const Term&)> walk = [&](const Term& t) {
      if (t.kind == Term::Kind::Const || t.kind == Term::Kind::Apply) {
        int tg = suffix_tag(t.name);
        if (tg) tags.insert(tg);
      }
      for (auto& x : t.args) walk(x);
    };
    if (a.rel != "=") {
      int tg = suffix_tag(a.rel);
      if (tg) tags.insert(tg);
    }
    for (auto& t : a.args) walk(t);
    return tags;
  };

  DiophDefinition p1, p2;
  p1.lang = U.lang1;
  p2.lang = U.lang2;
  p1.free_count = p2.free_count = d.free_count;
  p1.exist_count = p2.exist_count = d.exist_count;
  for (auto& a : d.atoms) {
    auto tags = atom_tags(a);
    if (tags.size() > 1) fail(ErrKind::Usage, "atom mixes both components: " + a.rel);
    bool to1 = tags.empty() || tags.count(1);
    bool to2 = tags.empty() || tags.count(2);
    auto emit = [&](DiophDefinition& p, int which) {
      Atom na;
      na.rel = a.rel == "=" ? "=" : strip(a.rel);
      for (auto& t : a.args) na.args.push_back(untag_term(t, which));
      p.atoms.push_back(std::move(na));
    };
    if (to1) emit(p1, 1);
    if (to2) emit(p2, 2);
  }
  auto triv = aeq(tconst("0"), tconst("0"));
  if (p1.atoms.empty()) p1.atoms.push_back(triv);
  if (p2.atoms.empty()) p2.atoms.push_back(triv);
  return {p1, p2};
}

}  // namespace dioph
