#pragma once

#include <sstream>

#include "dioph/lang.hpp"

namespace dioph {

inline constexpr const char* kTextHeader = ";; diophc v1";

/// Minimal S-expression tree: an atom token or a list.
struct Sexp {
  bool is_atom = false;
  std::string atom;
  std::vector<Sexp> items;

  static Sexp leaf(std::string s) {
    Sexp e;
    e.is_atom = true;
    e.atom = std::move(s);
    return e;
  }
  static Sexp list(std::vector<Sexp> xs) {
    Sexp e;
    e.items = std::move(xs);
    return e;
  }
  const Sexp& at(size_t i) const {
    if (is_atom || i >= items.size()) fail(ErrKind::Validation, "malformed expression: " + print());
    return items[i];
  }
  const std::string& head() const {
    if (is_atom || items.empty() || !items[0].is_atom)
      fail(ErrKind::Validation, "expected a tagged list");
    return items[0].atom;
  }
  std::string print() const {
    if (is_atom) return atom;
    std::string s = "(";
    for (size_t i = 0; i < items.size(); ++i) {
      if (i) s += " ";
      s += items[i].print();
    }
    return s + ")";
  }
};

namespace detail {
inline void skip_ws(const std::string& s, size_t& i) {
  for (;;) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r')) ++i;
    if (i < s.size() && s[i] == ';') {
      while (i < s.size() && s[i] != '\n') ++i;
      continue;
    }
    return;
  }
}
inline Sexp parse_sexp_at(const std::string& s, size_t& i) {
  skip_ws(s, i);
  if (i >= s.size()) fail(ErrKind::Validation, "unexpected end of input");
  if (s[i] == '(') {
    ++i;
    Sexp e;
    for (;;) {
      skip_ws(s, i);
      if (i >= s.size()) fail(ErrKind::Validation, "unbalanced parenthesis");
      if (s[i] == ')') {
        ++i;
        return e;
      }
      e.items.push_back(parse_sexp_at(s, i));
    }
  }
  if (s[i] == ')') fail(ErrKind::Validation, "stray ')'");
  size_t start = i;
  while (i < s.size() && s[i] != '(' && s[i] != ')' && s[i] != ';' && !isspace((unsigned char)s[i]))
    ++i;
  return Sexp::leaf(s.substr(start, i - start));
}
inline long long parse_ll(const Sexp& e, const char* what) {
  if (!e.is_atom) fail(ErrKind::Validation, std::string("expected a number for ") + what);
  try {
    size_t used = 0;
    long long v = std::stoll(e.atom, &used);
    if (used != e.atom.size()) throw std::invalid_argument(e.atom);
    return v;
  } catch (const std::exception&) {
    fail(ErrKind::Validation, std::string("bad number for ") + what + ": " + e.atom);
  }
}
}  // namespace detail

/// Parse all top-level S-expressions in `text` (comments with ';' skipped).
inline std::vector<Sexp> parse_sexps(const std::string& text) {
  std::vector<Sexp> out;
  size_t i = 0;
  for (;;) {
    detail::skip_ws(text, i);
    if (i >= text.size()) return out;
    out.push_back(detail::parse_sexp_at(text, i));
  }
}
inline Sexp parse_sexp(const std::string& text) {
  auto v = parse_sexps(text);
  if (v.size() != 1) fail(ErrKind::Validation, "expected exactly one expression");
  return v[0];
}

// ---------- terms ----------

inline Term term_from_sexp(const Sexp& e) {
  if (e.is_atom) {
    if (e.atom.size() >= 2 && e.atom[0] == 'x' &&
        std::all_of(e.atom.begin() + 1, e.atom.end(), [](char c) { return isdigit((unsigned char)c); }))
      return tvar(static_cast<int>(detail::parse_ll(Sexp::leaf(e.atom.substr(1)), "variable index")));
    return tconst(e.atom);
  }
  const std::string& h = e.head();
  if (h == "elem") {
    std::vector<long long> xs;
    for (size_t i = 1; i < e.items.size(); ++i) xs.push_back(detail::parse_ll(e.at(i), "element"));
    return telem(Elem::tuple(xs));
  }
  std::vector<Term> args;
  for (size_t i = 1; i < e.items.size(); ++i) args.push_back(term_from_sexp(e.at(i)));
  if (args.empty()) fail(ErrKind::Validation, "application without arguments: " + h);
  return tapp(h, std::move(args));
}

inline Sexp term_to_sexp(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var:
      return Sexp::leaf("x" + std::to_string(t.var));
    case Term::Kind::Const:
      return Sexp::leaf(t.name);
    case Term::Kind::Elem: {
      std::vector<Sexp> xs{Sexp::leaf("elem")};
      for (int i = 0; i < t.elem.width(); ++i) xs.push_back(Sexp::leaf(std::to_string(t.elem[i])));
      return Sexp::list(std::move(xs));
    }
    case Term::Kind::Apply: {
      std::vector<Sexp> xs{Sexp::leaf(t.name)};
      for (auto& a : t.args) xs.push_back(term_to_sexp(a));
      return Sexp::list(std::move(xs));
    }
  }
  fail(ErrKind::Validation, "corrupt term");
}

// ---------- language ----------

inline Language language_from_sexp(const Sexp& e) {
  if (e.head() != "language") fail(ErrKind::Validation, "expected (language ...)");
  Language l;
  for (size_t i = 1; i < e.items.size(); ++i) {
    const Sexp& sec = e.at(i);
    const std::string& h = sec.head();
    if (h == "consts") {
      for (size_t q = 1; q < sec.items.size(); ++q) {
        if (!sec.at(q).is_atom) fail(ErrKind::Validation, "constant must be a token");
        l.consts.push_back(sec.at(q).atom);
      }
    } else if (h == "funcs" || h == "rels") {
      for (size_t q = 1; q < sec.items.size(); ++q) {
        const Sexp& p = sec.at(q);
        if (p.is_atom || p.items.size() != 2)
          fail(ErrKind::Validation, "expected (name arity) in " + h);
        auto& dst = h == "funcs" ? l.funcs : l.rels;
        dst.emplace_back(p.at(0).atom, static_cast<int>(detail::parse_ll(p.at(1), "arity")));
      }
    } else {
      fail(ErrKind::Validation, "unknown language section: " + h);
    }
  }
  return l;
}

inline Sexp language_to_sexp(const Language& l) {
  std::vector<Sexp> consts{Sexp::leaf("consts")};
  for (auto& c : l.consts) consts.push_back(Sexp::leaf(c));
  std::vector<Sexp> funcs{Sexp::leaf("funcs")};
  for (auto& [n, a] : l.funcs)
    funcs.push_back(Sexp::list({Sexp::leaf(n), Sexp::leaf(std::to_string(a))}));
  std::vector<Sexp> rels{Sexp::leaf("rels")};
  for (auto& [n, a] : l.rels)
    rels.push_back(Sexp::list({Sexp::leaf(n), Sexp::leaf(std::to_string(a))}));
  return Sexp::list({Sexp::leaf("language"), Sexp::list(std::move(consts)),
                     Sexp::list(std::move(funcs)), Sexp::list(std::move(rels))});
}

// ---------- definitions / systems ----------

inline Atom atom_from_sexp(const Sexp& e) {
  Atom a;
  a.rel = e.head();
  for (size_t i = 1; i < e.items.size(); ++i) a.args.push_back(term_from_sexp(e.at(i)));
  return a;
}
inline Sexp atom_to_sexp(const Atom& a) {
  std::vector<Sexp> xs{Sexp::leaf(a.rel)};
  for (auto& t : a.args) xs.push_back(term_to_sexp(t));
  return Sexp::list(std::move(xs));
}

/// (system (language ...) (free k) (exist l) (atoms atom...)); the language
/// section may be omitted when a caller supplies one.
inline DiophDefinition system_from_sexp(const Sexp& e,
                                        const std::optional<Language>& fallback = std::nullopt) {
  if (e.head() != "system" && e.head() != "def")
    fail(ErrKind::Validation, "expected (system ...)");
  DiophDefinition d;
  bool have_lang = false;
  for (size_t i = 1; i < e.items.size(); ++i) {
    const Sexp& sec = e.at(i);
    const std::string& h = sec.head();
    if (h == "language") {
      d.lang = language_from_sexp(sec);
      have_lang = true;
    } else if (h == "free") {
      d.free_count = static_cast<int>(detail::parse_ll(sec.at(1), "free count"));
    } else if (h == "exist") {
      d.exist_count = static_cast<int>(detail::parse_ll(sec.at(1), "exist count"));
    } else if (h == "atoms") {
      for (size_t q = 1; q < sec.items.size(); ++q) d.atoms.push_back(atom_from_sexp(sec.at(q)));
    } else {
      fail(ErrKind::Validation, "unknown system section: " + h);
    }
  }
  if (!have_lang) {
    if (!fallback) fail(ErrKind::Validation, "system lacks a language section");
    d.lang = *fallback;
  }
  return d;
}

inline Sexp system_to_sexp(const DiophDefinition& d, bool with_lang = true) {
  std::vector<Sexp> xs{Sexp::leaf("system")};
  if (with_lang) xs.push_back(language_to_sexp(d.lang));
  xs.push_back(Sexp::list({Sexp::leaf("free"), Sexp::leaf(std::to_string(d.free_count))}));
  xs.push_back(Sexp::list({Sexp::leaf("exist"), Sexp::leaf(std::to_string(d.exist_count))}));
  std::vector<Sexp> atoms{Sexp::leaf("atoms")};
  for (auto& a : d.atoms) atoms.push_back(atom_to_sexp(a));
  xs.push_back(Sexp::list(std::move(atoms)));
  return Sexp::list(std::move(xs));
}

/// Pretty multi-section document with the version header.
inline std::string render_document(const Sexp& e) {
  std::string out = kTextHeader;
  out += "\n";
  if (!e.is_atom && !e.items.empty() && e.items[0].is_atom && e.items[0].atom == "system") {
    out += "(system";
    for (size_t i = 1; i < e.items.size(); ++i) out += "\n  " + e.items[i].print();
    out += ")\n";
  } else {
    out += e.print() + "\n";
  }
  return out;
}

inline std::string to_text(const DiophDefinition& d, bool with_lang = true) {
  return render_document(system_to_sexp(d, with_lang));
}
inline std::string to_text(const Term& t) { return term_to_sexp(t).print(); }

inline DiophDefinition system_from_text(const std::string& text,
                                        const std::optional<Language>& fallback = std::nullopt) {
  return system_from_sexp(parse_sexp(text), fallback);
}

}  // namespace dioph
