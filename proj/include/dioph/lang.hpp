#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dioph/core.hpp"

namespace dioph {

/// A first-order signature. Equality "=" (arity 2) is implicitly present and
/// may not be redeclared; the constant "0" is mandatory.
struct Language {
  std::vector<std::string> consts;
  std::vector<std::pair<std::string, int>> funcs;
  std::vector<std::pair<std::string, int>> rels;  // excluding "="

  bool has_const(const std::string& name) const {
    return std::find(consts.begin(), consts.end(), name) != consts.end();
  }
  std::optional<int> func_arity(const std::string& name) const {
    for (auto& [n, a] : funcs)
      if (n == name) return a;
    return std::nullopt;
  }
  std::optional<int> rel_arity(const std::string& name) const {
    if (name == "=") return 2;
    for (auto& [n, a] : rels)
      if (n == name) return a;
    return std::nullopt;
  }

  /// Structural well-formedness of the signature itself.
  std::vector<std::string> check() const {
    std::vector<std::string> out;
    std::set<std::string> seen;
    auto add = [&](const std::string& n) {
      if (!seen.insert(n).second) out.push_back("duplicate symbol name: " + n);
    };
    for (auto& c : consts) add(c);
    for (auto& [n, a] : funcs) {
      add(n);
      if (a < 1) out.push_back("function arity must be positive: " + n);
    }
    for (auto& [n, a] : rels) {
      add(n);
      if (a < 1) out.push_back("relation arity must be positive: " + n);
      if (n == "=") out.push_back("\"=\" is reserved and may not be redeclared");
    }
    if (!has_const("0")) out.push_back("constant \"0\" is required");
    return out;
  }

  friend bool operator==(const Language& a, const Language& b) {
    return a.consts == b.consts && a.funcs == b.funcs && a.rels == b.rels;
  }
};

/// The language of rings {0, 1, +, *}.
inline Language lang_rings() {
  Language l;
  l.consts = {"0", "1"};
  l.funcs = {{"+", 2}, {"*", 2}};
  return l;
}

struct Term {
  enum class Kind { Var, Const, Elem, Apply };
  Kind kind = Kind::Var;
  int var = 0;            // Var: 1-based index
  std::string name;       // Const / Apply
  dioph::Elem elem;       // Elem: a coefficient from S_c'
  std::vector<Term> args; // Apply

  friend bool operator==(const Term& a, const Term& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case Kind::Var: return a.var == b.var;
      case Kind::Const: return a.name == b.name;
      case Kind::Elem: return a.elem == b.elem;
      case Kind::Apply: return a.name == b.name && a.args == b.args;
    }
    return false;
  }
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
};

inline Term tvar(int n) {
  Term t;
  t.kind = Term::Kind::Var;
  t.var = n;
  return t;
}
inline Term tconst(std::string name) {
  Term t;
  t.kind = Term::Kind::Const;
  t.name = std::move(name);
  return t;
}
inline Term telem(Elem e) {
  Term t;
  t.kind = Term::Kind::Elem;
  t.elem = e;
  return t;
}
inline Term tapp(std::string f, std::vector<Term> args) {
  Term t;
  t.kind = Term::Kind::Apply;
  t.name = std::move(f);
  t.args = std::move(args);
  return t;
}
inline Term tadd(Term a, Term b) { return tapp("+", {std::move(a), std::move(b)}); }
inline Term tmul(Term a, Term b) { return tapp("*", {std::move(a), std::move(b)}); }

/// n-fold sum t + t + ... + t (n >= 1); n = 0 yields Const 0.
inline Term trepeat_add(const Term& t, long long n) {
  if (n <= 0) return tconst("0");
  Term acc = t;
  for (long long i = 1; i < n; ++i) acc = tadd(acc, t);
  return acc;
}
/// The numeral n >= 0 as 1 + 1 + ... + 1 over {0,1,+}.
inline Term tnumeral(long long n) { return trepeat_add(tconst("1"), n); }

struct Atom {
  std::string rel;  // "=" or a declared relation
  std::vector<Term> args;
};
inline Atom aeq(Term a, Term b) { return Atom{"=", {std::move(a), std::move(b)}}; }

/// Free variables are x_1..x_k, existentials x_{k+1}..x_{k+l}; the atom list
/// is a nonempty conjunction.
struct DiophDefinition {
  Language lang;
  int free_count = 0;
  int exist_count = 0;
  std::vector<Atom> atoms;

  int var_count() const { return free_count + exist_count; }
};

// ---------- traversal helpers ----------

template <typename F>
void for_each_var(const Term& t, F&& f) {
  if (t.kind == Term::Kind::Var) f(t.var);
  for (auto& a : t.args) for_each_var(a, f);
}

inline int max_var(const Term& t) {
  int m = 0;
  for_each_var(t, [&](int v) { m = std::max(m, v); });
  return m;
}
inline int max_var(const DiophDefinition& d) {
  int m = 0;
  for (auto& a : d.atoms)
    for (auto& t : a.args) m = std::max(m, max_var(t));
  return m;
}

/// Rename every variable index through `f` (must be a total remapping).
template <typename F>
Term rename_vars(const Term& t, F&& f) {
  Term out = t;
  if (t.kind == Term::Kind::Var) out.var = f(t.var);
  for (auto& a : out.args) a = rename_vars(a, f);
  return out;
}
template <typename F>
Atom rename_vars(const Atom& a, F&& f) {
  Atom out = a;
  for (auto& t : out.args) t = rename_vars(t, f);
  return out;
}

/// t[x_n / y]: replace each occurrence of variable n by the term y.
inline Term substitute(const Term& t, int n, const Term& y) {
  if (t.kind == Term::Kind::Var) return t.var == n ? y : t;
  Term out = t;
  for (auto& a : out.args) a = substitute(a, n, y);
  return out;
}

inline bool has_elem_leaf(const Term& t) {
  if (t.kind == Term::Kind::Elem) return true;
  for (auto& a : t.args)
    if (has_elem_leaf(a)) return true;
  return false;
}

// ---------- validation ----------

inline void validate_term(const Language& lang, const Term& t, int max_index,
                          bool effectiveness, std::vector<std::string>& out) {
  switch (t.kind) {
    case Term::Kind::Var:
      if (t.var < 1) out.push_back("variable index must be >= 1");
      else if (t.var > max_index)
        out.push_back("variable x" + std::to_string(t.var) + " out of range (max " +
                      std::to_string(max_index) + ")");
      break;
    case Term::Kind::Const:
      if (!lang.has_const(t.name)) out.push_back("unknown constant: " + t.name);
      break;
    case Term::Kind::Elem:
      if (effectiveness) out.push_back("S_c' coefficient used (Elem leaf) in effectiveness mode");
      break;
    case Term::Kind::Apply: {
      auto ar = lang.func_arity(t.name);
      if (!ar) out.push_back("unknown function: " + t.name);
      else if (static_cast<size_t>(*ar) != t.args.size())
        out.push_back("arity mismatch: " + t.name + " expects " + std::to_string(*ar) +
                      " arguments, got " + std::to_string(t.args.size()));
      for (auto& a : t.args) validate_term(lang, a, max_index, effectiveness, out);
      break;
    }
  }
}

/// Diagnostics for a definition; empty result means well-formed.
inline std::vector<std::string> validate(const DiophDefinition& d, bool effectiveness = false) {
  std::vector<std::string> out = d.lang.check();
  if (d.free_count < 0 || d.exist_count < 0) out.push_back("negative variable count");
  if (d.atoms.empty()) out.push_back("atom list must be nonempty (truth is 0=0)");
  for (auto& a : d.atoms) {
    auto ar = d.lang.rel_arity(a.rel);
    if (!ar) {
      out.push_back("unknown relation: " + a.rel);
      continue;
    }
    if (static_cast<size_t>(*ar) != a.args.size())
      out.push_back("arity mismatch: relation " + a.rel + " expects " + std::to_string(*ar) +
                    " arguments, got " + std::to_string(a.args.size()));
    for (auto& t : a.args) validate_term(d.lang, t, d.var_count(), effectiveness, out);
  }
  return out;
}

inline void require_valid(const DiophDefinition& d, bool effectiveness = false) {
  auto diags = validate(d, effectiveness);
  if (!diags.empty()) fail(ErrKind::Validation, diags.front());
}

}  // namespace dioph
