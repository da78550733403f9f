#pragma once

#include "dioph/godel.hpp"
#include "dioph/set_algebra.hpp"

namespace dioph {

/// One branch of a piecewise map, kept for verification: the branch's
/// domain, its restricted graph {(x, f(x)) | x in the branch}, and a
/// pointwise membership test.
struct CasePiece {
  DiophDefinition case_def;
  DiophDefinition unary_graph;
  std::function<bool(const Elem&)> member;
  std::function<Elem(const Elem&)> branch;
};

/// All data of a Diophantine map d: R1 -> R2 needed to compile systems:
/// definitions over L2 of each constant's image {d(c)}, each function's
/// graph {(d(x_1..x_r), d(f(x)))}, each relation's image d(S), and the
/// range d(R1). The pointwise function, when present, is used by the
/// verifier only — compilation is pure syntax.
struct MapSpec {
  std::string name;
  InterpPtr src, dst;
  std::map<std::string, DiophDefinition> const_defs;       // 1 free variable
  std::map<std::string, DiophDefinition> func_graph_defs;  // arity+1 free
  std::map<std::string, DiophDefinition> rel_image_defs;   // arity free
  DiophDefinition range_def;                               // 1 free
  bool injective = false;

  std::function<Elem(const Elem&)> pointwise;  // verification only
  std::vector<CasePiece> pieces;               // piecewise provenance, verification only
};

/// Map into a quotient R2/~: components describe unions of classes, and
/// equiv_def defines ~ itself (either on all of R2 or restricted to the
/// image, flagged which).
struct EquivMapSpec : MapSpec {
  DiophDefinition equiv_def;  // 2 free variables
  bool equiv_restricted = false;
  // does target element y lie in the class d(x)?  (verification only)
  std::function<bool(const Elem&, const Elem&)> class_member;
};

/// A map R1^k -> R2 expressed through an injective base map d1: its value z
/// is pinned by atoms over L2 relating the base images u_1..u_k of the
/// input's coordinates (variables 1..k), the output z (variable k+1), and
/// auxiliaries (variables k+2 ...).
struct ExpressionSpec {
  int input_count = 1;
  int aux_count = 0;
  std::vector<Atom> atoms;

  DiophDefinition as_definition(const Language& lang) const {
    DiophDefinition d;
    d.lang = lang;
    d.free_count = input_count + 1;
    d.exist_count = aux_count;
    d.atoms = atoms;
    return d;
  }
};

namespace detail {
inline void check_component(const MapSpec& m, const DiophDefinition& d, int want_free,
                            const std::string& what, std::vector<std::string>& out) {
  if (!(d.lang == m.dst->lang)) out.push_back(what + ": language is not the target language");
  if (d.free_count != want_free)
    out.push_back(what + ": expected " + std::to_string(want_free) + " free variables, got " +
                  std::to_string(d.free_count));
  for (auto& diag : validate(d, /*effectiveness=*/true)) out.push_back(what + ": " + diag);
}
}  // namespace detail

inline std::vector<std::string> validate_mapspec(const MapSpec& m,
                                                 const DiophDefinition* equiv = nullptr) {
  std::vector<std::string> out;
  if (!m.src || !m.dst) {
    out.push_back("map lacks source or target structure");
    return out;
  }
  for (auto& c : m.src->lang.consts) {
    auto it = m.const_defs.find(c);
    if (it == m.const_defs.end()) out.push_back("missing image definition for constant " + c);
    else detail::check_component(m, it->second, 1, "image of constant " + c, out);
  }
  for (auto& [f, r] : m.src->lang.funcs) {
    auto it = m.func_graph_defs.find(f);
    if (it == m.func_graph_defs.end()) out.push_back("missing graph definition for function " + f);
    else detail::check_component(m, it->second, r + 1, "graph of " + f, out);
  }
  for (auto& [s, r] : m.src->lang.rels) {
    auto it = m.rel_image_defs.find(s);
    if (it == m.rel_image_defs.end()) out.push_back("missing image definition for relation " + s);
    else detail::check_component(m, it->second, r, "image of relation " + s, out);
  }
  if (m.rel_image_defs.count("="))
    out.push_back("\"=\" may not carry an image definition (compiled structurally)");
  detail::check_component(m, m.range_def, 1, "range definition", out);
  if (equiv) detail::check_component(m, *equiv, 2, "equivalence definition", out);
  return out;
}
inline std::vector<std::string> validate_mapspec(const EquivMapSpec& m) {
  return validate_mapspec(m, &m.equiv_def);
}
inline void require_valid(const MapSpec& m) {
  auto diags = validate_mapspec(m);
  if (!diags.empty()) fail(ErrKind::Validation, m.name + ": " + diags.front());
}
inline void require_valid(const EquivMapSpec& m) {
  auto diags = validate_mapspec(m);
  if (!diags.empty()) fail(ErrKind::Validation, m.name + ": " + diags.front());
}

namespace detail {

/// Accumulates atoms of a definition under construction; existential
/// variables are drawn from a monotone counter, so identical inputs
/// always produce syntactically identical outputs.
struct DefBuilder {
  int counter;  // next fresh variable index
  std::vector<Atom> atoms;

  explicit DefBuilder(int first_fresh) : counter(first_fresh) {}
  int fresh() { return counter++; }

  /// Splice `comp` in: its free variables become the given terms, its
  /// existentials become fresh variables.
  void instantiate(const DiophDefinition& comp, const std::vector<Term>& args) {
    if (args.size() != static_cast<size_t>(comp.free_count))
      fail(ErrKind::Validation, "component arity mismatch");
    std::vector<int> em(static_cast<size_t>(comp.exist_count));
    for (auto& e : em) e = fresh();
    std::function<Term(const Term&)> remap = [&](const Term& u) -> Term {
      if (u.kind == Term::Kind::Var) {
        if (u.var <= comp.free_count) return args[static_cast<size_t>(u.var - 1)];
        return tvar(em[static_cast<size_t>(u.var - comp.free_count - 1)]);
      }
      Term o = u;
      for (auto& x : o.args) x = remap(x);
      return o;
    };
    for (auto& a : comp.atoms) {
      Atom na = a;
      for (auto& t : na.args) t = remap(t);
      atoms.push_back(std::move(na));
    }
  }
  void instantiate(const DiophDefinition& comp, const std::vector<int>& vars) {
    std::vector<Term> ts;
    ts.reserve(vars.size());
    for (int v : vars) ts.push_back(tvar(v));
    instantiate(comp, ts);
  }
};

}  // namespace detail

}  // namespace dioph
