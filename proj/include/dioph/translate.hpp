#pragma once

#include "dioph/mapspec.hpp"
#include "dioph/product_lang.hpp"

namespace dioph {

namespace detail {

/// Shared core of the plain and quotient translators. Equality of images is
/// either target equality or the equivalence definition, per mode.
struct Translator {
  const MapSpec& spec;
  const DiophDefinition* equiv;  // nullptr = plain mode
  DefBuilder b;

  Translator(const MapSpec& s, const DiophDefinition* e, int first_fresh)
      : spec(s), equiv(e), b(first_fresh) {}

  void range(int v) { b.instantiate(spec.range_def, std::vector<int>{v}); }

  void image_equal(int a, int u) {
    if (equiv) b.instantiate(*equiv, std::vector<int>{a, u});
    else b.atoms.push_back(aeq(tvar(a), tvar(u)));
  }

  /// Constrain variable `target` to be the image of t's value, where
  /// variable x_i of the source term is imaged by variable i (the u/v
  /// variables of the output definition share source indices).
  void term_block(const Term& t, int target) {
    switch (t.kind) {
      case Term::Kind::Var:
        image_equal(target, t.var);
        range(target);
        break;
      case Term::Kind::Const: {
        auto it = spec.const_defs.find(t.name);
        if (it == spec.const_defs.end())
          fail(ErrKind::Validation, "no image definition for constant " + t.name);
        b.instantiate(it->second, std::vector<int>{target});
        break;
      }
      case Term::Kind::Elem:
        fail(ErrKind::Validation, "coefficient leaves cannot be compiled (effectiveness)");
      case Term::Kind::Apply: {
        auto it = spec.func_graph_defs.find(t.name);
        if (it == spec.func_graph_defs.end())
          fail(ErrKind::Validation, "no graph definition for function " + t.name);
        std::vector<int> zs;
        zs.reserve(t.args.size() + 1);
        for (size_t i = 0; i < t.args.size(); ++i) zs.push_back(b.fresh());
        for (size_t i = 0; i < t.args.size(); ++i) term_block(t.args[i], zs[i]);
        zs.push_back(target);
        b.instantiate(it->second, zs);
        break;
      }
    }
  }
};

inline DiophDefinition translate_system_impl(const MapSpec& spec, const DiophDefinition* equiv,
                                             const DiophDefinition& sys) {
  {
    auto diags = validate_mapspec(spec, equiv);
    if (!diags.empty()) fail(ErrKind::Validation, spec.name + ": " + diags.front());
  }
  if (!spec.injective) fail(ErrKind::Validation, spec.name + ": injectivity not asserted");
  if (!(sys.lang == spec.src->lang))
    fail(ErrKind::Validation, "system language is not the map's source language");
  require_valid(sys, /*effectiveness=*/true);

  int k = sys.free_count, l = sys.exist_count;
  // Images u_1..u_k of the free variables, then v_1..v_l of the source
  // existentials; source variable i is imaged by output variable i.
  Translator tr(spec, equiv, k + l + 1);
  for (int i = 1; i <= k + l; ++i) tr.range(i);
  for (auto& a : sys.atoms) {
    std::vector<int> zs;
    zs.reserve(a.args.size());
    for (size_t q = 0; q < a.args.size(); ++q) zs.push_back(tr.b.fresh());
    for (int z : zs) tr.range(z);
    for (size_t q = 0; q < a.args.size(); ++q) tr.term_block(a.args[q], zs[q]);
    if (a.rel == "=") {
      tr.image_equal(zs[0], zs[1]);
    } else {
      auto it = spec.rel_image_defs.find(a.rel);
      if (it == spec.rel_image_defs.end())
        fail(ErrKind::Validation, "no image definition for relation " + a.rel);
      tr.b.instantiate(it->second, zs);
    }
  }
  DiophDefinition out;
  out.lang = spec.dst->lang;
  out.free_count = k;
  out.exist_count = tr.b.counter - 1 - k;
  out.atoms = std::move(tr.b.atoms);
  return out;
}

}  // namespace detail

/// Compile a source term t with k variables into a definition over the
/// target language whose solutions, projected to the first k+1 coordinates,
/// are {(d(x_1..x_k), d(t(x)))}.
inline DiophDefinition translate_term(const MapSpec& spec, const Term& t, int k) {
  {
    auto diags = validate_mapspec(spec);
    if (!diags.empty()) fail(ErrKind::Validation, spec.name + ": " + diags.front());
  }
  if (max_var(t) > k) fail(ErrKind::Validation, "term uses variables beyond x_k");
  detail::Translator tr(spec, nullptr, k + 2);
  for (int i = 1; i <= k; ++i) tr.range(i);
  tr.term_block(t, k + 1);
  tr.range(k + 1);
  DiophDefinition out;
  out.lang = spec.dst->lang;
  out.free_count = k + 1;
  out.exist_count = tr.b.counter - 1 - (k + 1);
  out.atoms = std::move(tr.b.atoms);
  return out;
}

/// D: compile a whole system. Source solutions map onto target solutions
/// (restricted to the leading k coordinates) and vice versa.
inline DiophDefinition translate_system(const MapSpec& spec, const DiophDefinition& sys) {
  return detail::translate_system_impl(spec, nullptr, sys);
}

/// Quotient-map variant: image equality is replaced by the equivalence
/// definition throughout.
inline DiophDefinition translate_system_equiv(const EquivMapSpec& spec,
                                              const DiophDefinition& sys) {
  return detail::translate_system_impl(spec, &spec.equiv_def, sys);
}

/// R1 --a--> R2 --b--> R3.
inline DiophDefinition compose_translators(const MapSpec& a, const MapSpec& b,
                                           const DiophDefinition& sys) {
  if (!(a.dst->lang == b.src->lang))
    fail(ErrKind::Validation, "composition mismatch: " + a.name + " target vs " + b.name +
                                  " source language");
  return translate_system(b, translate_system(a, sys));
}

/// The translator as a function on code sequences: decode over the source
/// numbering, compile, re-encode over the target numbering. The free arity
/// is not part of a system code and rides along.
inline std::vector<mpz_class> translate_system_coded(const MapSpec& spec,
                                                     const std::vector<mpz_class>& codes,
                                                     int free_k) {
  Numbering n1 = Numbering::of(*spec.src);
  Numbering n2 = Numbering::of(*spec.dst);
  return encode_system(n2, translate_system(spec, decode_system(n1, codes, free_k)));
}

// ---------------------------------------------------------------------------
// Derived maps
// ---------------------------------------------------------------------------

namespace detail {
/// Balanced pairwise union, keeping atom/term growth logarithmic.
inline DiophDefinition union_many(std::vector<DiophDefinition> ds, const Interpretation& R) {
  if (ds.empty()) fail(ErrKind::Usage, "empty union");
  while (ds.size() > 1) {
    std::vector<DiophDefinition> next;
    for (size_t i = 0; i + 1 < ds.size(); i += 2)
      next.push_back(union_defs(ds[i], ds[i + 1], R));
    if (ds.size() % 2) next.push_back(ds.back());
    ds = std::move(next);
  }
  return ds[0];
}
}  // namespace detail

/// Lift a map given by a Diophantine expression over an injective base map
/// d1 to a full MapSpec. Source is base.src for one input coordinate, the
/// k-th power structure otherwise.
inline MapSpec expression_to_mapspec(const MapSpec& base, const ExpressionSpec& expr,
                                     const std::string& name,
                                     std::function<Elem(const Elem&)> pointwise = {}) {
  {
    auto diags = validate_mapspec(base);
    if (!diags.empty()) fail(ErrKind::Validation, base.name + ": " + diags.front());
  }
  if (!base.injective) fail(ErrKind::Validation, "expression base must be injective");
  int k = expr.input_count;
  if (k < 1) fail(ErrKind::Usage, "expression needs at least one input coordinate");

  MapSpec m;
  m.name = name;
  m.dst = base.dst;
  std::optional<PowerLanguage> P;
  if (k == 1) {
    m.src = base.src;
  } else {
    P = PowerLanguage::make(base.src->lang, k);
    m.src = power_interp(*P, base.src);
  }
  m.injective = true;  // caller assertion, spot-checked by the verifier
  m.pointwise = std::move(pointwise);

  const Language& L2 = base.dst->lang;
  DiophDefinition expr_def = expr.as_definition(L2);
  auto expr_block = [&](detail::DefBuilder& b, const std::vector<int>& us, int z) {
    std::vector<int> args = us;
    args.push_back(z);
    b.instantiate(expr_def, args);
  };
  // k base-image variables of one source element, each constrained to the
  // base range.
  auto fresh_images = [&](detail::DefBuilder& b) {
    std::vector<int> us(static_cast<size_t>(k));
    for (auto& u : us) u = b.fresh();
    for (int u : us) b.instantiate(base.range_def, std::vector<int>{u});
    return us;
  };
  auto finish = [&](detail::DefBuilder& b, int free) {
    DiophDefinition d;
    d.lang = L2;
    d.free_count = free;
    d.exist_count = b.counter - 1 - free;
    d.atoms = std::move(b.atoms);
    return d;
  };

  // range: z is the expression value of some k base images.
  {
    detail::DefBuilder b(2);
    auto us = fresh_images(b);
    expr_block(b, us, 1);
    m.range_def = finish(b, 1);
  }
  // constants: component i of c's interpretation is c for i = 1 and 0 after.
  for (auto& c : m.src->lang.consts) {
    detail::DefBuilder b(2);
    std::vector<int> us(static_cast<size_t>(k));
    for (auto& u : us) u = b.fresh();
    b.instantiate(base.const_defs.at(c), std::vector<int>{us[0]});
    for (int i = 1; i < k; ++i)
      b.instantiate(base.const_defs.at("0"), std::vector<int>{us[static_cast<size_t>(i)]});
    expr_block(b, us, 1);
    m.const_defs[c] = finish(b, 1);
  }
  // functions, including the coordinate projections of a power source.
  for (auto& [f, r] : m.src->lang.funcs) {
    detail::DefBuilder b(r + 2);
    int proj = 0;
    if (P)
      for (int i = 1; i <= k; ++i)
        if (f == P->pi(i)) proj = i;
    std::vector<std::vector<int>> arg_us;
    for (int q = 0; q < r; ++q) {
      auto us = fresh_images(b);
      expr_block(b, us, q + 1);
      arg_us.push_back(std::move(us));
    }
    std::vector<int> out_us(static_cast<size_t>(k));
    if (proj) {
      // pi_i(x) = (x_i, 0, ..., 0)
      out_us[0] = arg_us[0][static_cast<size_t>(proj - 1)];
      for (int i = 1; i < k; ++i) {
        out_us[static_cast<size_t>(i)] = b.fresh();
        b.instantiate(base.const_defs.at("0"),
                      std::vector<int>{out_us[static_cast<size_t>(i)]});
      }
    } else {
      // f acts on first coordinates; tails are zero (trivially so for k=1).
      out_us[0] = b.fresh();
      std::vector<int> graph_args;
      for (auto& us : arg_us) graph_args.push_back(us[0]);
      graph_args.push_back(out_us[0]);
      b.instantiate(base.func_graph_defs.at(f), graph_args);
      for (int i = 1; i < k; ++i) {
        out_us[static_cast<size_t>(i)] = b.fresh();
        b.instantiate(base.const_defs.at("0"),
                      std::vector<int>{out_us[static_cast<size_t>(i)]});
      }
    }
    expr_block(b, out_us, r + 1);
    m.func_graph_defs[f] = finish(b, r + 1);
  }
  // relations: hold on first coordinates with zero tails.
  for (auto& [s, r] : m.src->lang.rels) {
    detail::DefBuilder b(r + 1);
    std::vector<int> firsts;
    std::vector<std::vector<int>> arg_us;
    for (int q = 0; q < r; ++q) {
      auto us = fresh_images(b);
      expr_block(b, us, q + 1);
      firsts.push_back(us[0]);
      arg_us.push_back(std::move(us));
    }
    b.instantiate(base.rel_image_defs.at(s), firsts);
    for (auto& us : arg_us)
      for (int i = 1; i < k; ++i)
        b.instantiate(base.const_defs.at("0"), std::vector<int>{us[static_cast<size_t>(i)]});
    m.rel_image_defs[s] = finish(b, r);
  }
  return m;
}

/// One branch of a map defined by cases on its own structure R: the branch's
/// domain (one free variable over R's language), the branch map as an
/// expression over R (identity base), and pointwise data for verification.
struct PiecewiseCase {
  DiophDefinition case_def;
  ExpressionSpec expr;  // input_count 1, atoms over R's language
  std::function<bool(const Elem&)> member;
  std::function<Elem(const Elem&)> branch;
};

/// Assemble a map R -> R defined by cases. All components factor through one
/// unary graph definition P(x, z) = union over cases of (case ∧ branch
/// graph); function graphs share the source points between coordinates, so
/// mixed-case argument tuples are handled exactly.
inline MapSpec piecewise_mapspec(InterpPtr R, const std::vector<PiecewiseCase>& cases,
                                 const std::string& name) {
  if (cases.empty()) fail(ErrKind::Usage, "piecewise map needs at least one case");
  if (!R->commutative || !R->integral_domain)
    fail(ErrKind::NotApplicable, "piecewise assembly requires union (commutative domain)");

  MapSpec m;
  m.name = name;
  m.src = m.dst = R;
  m.injective = true;  // caller assertion

  std::vector<DiophDefinition> graphs;
  for (auto& c : cases) {
    if (c.case_def.free_count != 1 || !(c.case_def.lang == R->lang))
      fail(ErrKind::Usage, "case domain must have one free variable over R's language");
    if (c.expr.input_count != 1) fail(ErrKind::Usage, "case branch must be unary");
    detail::DefBuilder b(3);
    b.instantiate(c.case_def, std::vector<int>{1});
    b.instantiate(c.expr.as_definition(R->lang), std::vector<int>{1, 2});
    DiophDefinition g;
    g.lang = R->lang;
    g.free_count = 2;
    g.exist_count = b.counter - 3;
    g.atoms = std::move(b.atoms);
    graphs.push_back(g);
    m.pieces.push_back(CasePiece{c.case_def, g, c.member, c.branch});
  }
  DiophDefinition P = detail::union_many(graphs, *R);

  auto build = [&](int free, const std::function<void(detail::DefBuilder&)>& body) {
    detail::DefBuilder b(free + 1);
    body(b);
    DiophDefinition d;
    d.lang = R->lang;
    d.free_count = free;
    d.exist_count = b.counter - 1 - free;
    d.atoms = std::move(b.atoms);
    return d;
  };

  for (auto& c : R->lang.consts)
    m.const_defs[c] =
        build(1, [&](detail::DefBuilder& b) { b.instantiate(P, {tconst(c), tvar(1)}); });
  m.range_def = build(1, [&](detail::DefBuilder& b) {
    int x = b.fresh();
    b.instantiate(P, std::vector<int>{x, 1});
  });
  for (auto& [f, r] : R->lang.funcs) {
    int arity = r;
    std::string fname = f;
    m.func_graph_defs[f] = build(arity + 1, [&](detail::DefBuilder& b) {
      std::vector<int> xs(static_cast<size_t>(arity));
      for (auto& x : xs) x = b.fresh();
      for (int q = 0; q < arity; ++q)
        b.instantiate(P, std::vector<int>{xs[static_cast<size_t>(q)], q + 1});
      std::vector<Term> fargs;
      for (int x : xs) fargs.push_back(tvar(x));
      b.instantiate(P, {tapp(fname, fargs), tvar(arity + 1)});
    });
  }
  for (auto& [s, r] : R->lang.rels) {
    int arity = r;
    std::string sname = s;
    m.rel_image_defs[s] = build(arity, [&](detail::DefBuilder& b) {
      std::vector<int> xs(static_cast<size_t>(arity));
      for (auto& x : xs) x = b.fresh();
      Atom a;
      a.rel = sname;
      for (int x : xs) a.args.push_back(tvar(x));
      b.atoms.push_back(std::move(a));
      for (int q = 0; q < arity; ++q)
        b.instantiate(P, std::vector<int>{xs[static_cast<size_t>(q)], q + 1});
    });
  }

  std::vector<PiecewiseCase> cc = cases;
  m.pointwise = [cc](const Elem& x) -> Elem {
    for (auto& c : cc)
      if (c.member(x)) return c.branch(x);
    fail(ErrKind::Validation, "element outside every case: " + to_string(x));
  };
  return m;
}

}  // namespace dioph
