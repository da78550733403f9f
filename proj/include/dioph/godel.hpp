#pragma once

#include <gmpxx.h>

#include "dioph/interp.hpp"

namespace dioph {

/// Cached 1-based prime table: prime(1) = 2.
class PrimeToolkit {
 public:
  static unsigned long prime(size_t i) {
    auto& ps = table();
    while (ps.size() < i) {
      unsigned long c = ps.back() + 1;
      for (;; ++c) {
        bool comp = false;
        for (auto p : ps) {
          if (p * p > c) break;
          if (c % p == 0) {
            comp = true;
            break;
          }
        }
        if (!comp) break;
      }
      ps.push_back(c);
    }
    return ps[i - 1];
  }

 private:
  static std::vector<unsigned long>& table() {
    static std::vector<unsigned long> ps{2, 3};
    return ps;
  }
};

/// Symbol numbering for one language plus the coefficient codec. Language
/// symbols (constants then functions, declaration order) get numbers 1..;
/// sym(l) = 2^numL(l), sym(x_n) = 3^n, sym(coefficient r) = 5^{j(r)}.
struct Numbering {
  Language lang;
  std::function<std::optional<long long>(const Elem&)> code_of;  // j
  std::function<std::optional<Elem>(long long)> elem_of;         // j^{-1}

  // Symbol numbers stay below this bound so codes stay desk-sized.
  static constexpr unsigned long kMaxSym = 1ul << 25;

  static Numbering make(const Language& l,
                        std::function<std::optional<long long>(const Elem&)> j = {},
                        std::function<std::optional<Elem>(long long)> jinv = {}) {
    Numbering n;
    n.lang = l;
    n.code_of = std::move(j);
    n.elem_of = std::move(jinv);
    return n;
  }
  static Numbering of(const Interpretation& R) {
    return make(R.lang, R.code_of, R.elem_of);
  }

  int numL(const std::string& name) const {
    int i = 1;
    for (auto& c : lang.consts) {
      if (c == name) return i;
      ++i;
    }
    for (auto& [f, a] : lang.funcs) {
      if (f == name) return i;
      ++i;
    }
    fail(ErrKind::Validation, "symbol not in language: " + name);
  }
  /// Inverse of numL plus the arity oracle F: (name, arity) with arity 0 for
  /// constants; nullopt when the number is unassigned.
  std::optional<std::pair<std::string, int>> symbol_of(unsigned long num) const {
    unsigned long i = 1;
    for (auto& c : lang.consts) {
      if (i == num) return std::make_pair(c, 0);
      ++i;
    }
    for (auto& [f, a] : lang.funcs) {
      if (i == num) return std::make_pair(f, a);
      ++i;
    }
    return std::nullopt;
  }

  int rel_index(const std::string& name) const {
    if (name == "=") return 0;
    int i = 1;
    for (auto& [r, a] : lang.rels) {
      if (r == name) return i;
      ++i;
    }
    fail(ErrKind::Validation, "relation not in language: " + name);
  }
  std::string rel_of(unsigned long idx) const {
    if (idx == 0) return "=";
    if (idx > lang.rels.size()) fail(ErrKind::MalformedCode, "relation index out of range");
    return lang.rels[idx - 1].first;
  }
};

namespace detail {
inline unsigned long pow_ul(unsigned long b, unsigned long e) {
  unsigned long r = 1;
  for (unsigned long i = 0; i < e; ++i) {
    if (b != 0 && r > Numbering::kMaxSym / b)
      fail(ErrKind::Budget, "symbol number exceeds the size guard");
    r *= b;
  }
  return r;
}
}  // namespace detail

inline unsigned long sym(const Numbering& N, const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var:
      if (t.var < 1) fail(ErrKind::Validation, "bad variable index");
      return detail::pow_ul(3, static_cast<unsigned long>(t.var));
    case Term::Kind::Const:
      return detail::pow_ul(2, static_cast<unsigned long>(N.numL(t.name)));
    case Term::Kind::Apply:
      return detail::pow_ul(2, static_cast<unsigned long>(N.numL(t.name)));
    case Term::Kind::Elem: {
      if (!N.code_of) fail(ErrKind::Validation, "no coefficient codec for this numbering");
      auto j = N.code_of(t.elem);
      if (!j || *j < 0) fail(ErrKind::Validation, "coefficient outside codec domain");
      return detail::pow_ul(5, static_cast<unsigned long>(*j));
    }
  }
  fail(ErrKind::Validation, "corrupt term");
}

namespace detail {
inline void prefix_syms(const Numbering& N, const Term& t, std::vector<unsigned long>& out) {
  out.push_back(sym(N, t));
  for (auto& a : t.args) prefix_syms(N, a, out);
}
inline mpz_class code_from_exponents(const std::vector<unsigned long>& exps) {
  mpz_class c = 1, pk;
  for (size_t i = 0; i < exps.size(); ++i) {
    mpz_ui_pow_ui(pk.get_mpz_t(), PrimeToolkit::prime(i + 1), exps[i]);
    c *= pk;
  }
  return c;
}
/// Factor a code into its contiguous prime-exponent list; faults on gaps,
/// leftovers, or exponents too large to be symbol numbers.
inline std::vector<unsigned long> exponents_of(const mpz_class& code) {
  if (code <= 0) fail(ErrKind::MalformedCode, "code must be positive");
  mpz_class rest = code;
  std::vector<unsigned long> exps;
  for (size_t i = 1; rest != 1; ++i) {
    mpz_class p = PrimeToolkit::prime(i);
    mp_bitcnt_t e = mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
    if (e == 0)
      fail(ErrKind::MalformedCode,
           "prime gap at position " + std::to_string(i) + " (not a term code)");
    if (e > Numbering::kMaxSym) fail(ErrKind::MalformedCode, "exponent exceeds symbol bound");
    exps.push_back(static_cast<unsigned long>(e));
  }
  if (exps.empty()) fail(ErrKind::MalformedCode, "1 is not a term code");
  return exps;
}
/// Classify a symbol number: returns the decoded leaf/head as a Term shell.
/// For language symbols the arity is returned alongside.
inline std::pair<Term, int> classify_sym(const Numbering& N, unsigned long e, size_t pos) {
  auto as_power = [](unsigned long v, unsigned long b) -> std::optional<unsigned long> {
    unsigned long k = 0;
    while (v % b == 0) {
      v /= b;
      ++k;
    }
    return v == 1 ? std::optional<unsigned long>(k) : std::nullopt;
  };
  std::string at = " at position " + std::to_string(pos + 1);
  if (e == 1) {
    if (!N.elem_of) fail(ErrKind::MalformedCode, "coefficient symbol without codec" + at);
    auto el = N.elem_of(0);
    if (!el) fail(ErrKind::MalformedCode, "coefficient 0 outside codec" + at);
    return {telem(*el), 0};
  }
  if (auto v = as_power(e, 2)) {
    auto s = N.symbol_of(*v);
    if (!s) fail(ErrKind::MalformedCode, "unassigned symbol number" + at);
    if (s->second == 0) return {tconst(s->first), 0};
    Term t;
    t.kind = Term::Kind::Apply;
    t.name = s->first;
    return {t, s->second};
  }
  if (auto v = as_power(e, 3)) return {tvar(static_cast<int>(*v)), 0};
  if (auto v = as_power(e, 5)) {
    if (!N.elem_of) fail(ErrKind::MalformedCode, "coefficient symbol without codec" + at);
    auto el = N.elem_of(static_cast<long long>(*v));
    if (!el) fail(ErrKind::MalformedCode, "coefficient outside codec" + at);
    return {telem(*el), 0};
  }
  fail(ErrKind::MalformedCode, "exponent " + std::to_string(e) + " is no symbol number" + at);
}
}  // namespace detail

/// J: prefix-serialize t and return ∏ p_i^{sym(s_i)}.
inline mpz_class encode_term(const Numbering& N, const Term& t) {
  std::vector<unsigned long> syms;
  detail::prefix_syms(N, t, syms);
  return detail::code_from_exponents(syms);
}

inline Term decode_term(const Numbering& N, const mpz_class& code) {
  auto exps = detail::exponents_of(code);
  size_t pos = 0;
  std::function<Term()> parse = [&]() -> Term {
    if (pos >= exps.size())
      fail(ErrKind::MalformedCode,
           "term ends early at position " + std::to_string(pos + 1));
    auto [t, arity] = detail::classify_sym(N, exps[pos], pos);
    ++pos;
    for (int i = 0; i < arity; ++i) t.args.push_back(parse());
    return t;
  };
  Term t = parse();
  if (pos != exps.size())
    fail(ErrKind::MalformedCode,
         "trailing symbols after position " + std::to_string(pos));
  return t;
}

/// ev(a, n, J(t)) = J(t[x_n / a]): every exponent 3^n becomes 5^{j(a)}.
inline mpz_class ev(const Numbering& N, const Elem& a, int n, const mpz_class& code) {
  if (!N.code_of) fail(ErrKind::Validation, "no coefficient codec for this numbering");
  auto j = N.code_of(a);
  if (!j || *j < 0) fail(ErrKind::Validation, "value outside codec domain");
  unsigned long var_sym = detail::pow_ul(3, static_cast<unsigned long>(n));
  unsigned long elem_sym = detail::pow_ul(5, static_cast<unsigned long>(*j));
  auto exps = detail::exponents_of(code);
  for (auto& e : exps)
    if (e == var_sym) e = elem_sym;
  return detail::code_from_exponents(exps);
}

/// Iterated ev over x_1..x_k.
inline mpz_class ev_k(const Numbering& N, const std::vector<Elem>& as, const mpz_class& code) {
  mpz_class c = code;
  for (size_t i = 0; i < as.size(); ++i) c = ev(N, as[i], static_cast<int>(i + 1), c);
  return c;
}

/// u(J(f(t_1..t_r))) = (sym(f), J(t_1), ..., J(t_r)); leaves give (sym) alone.
/// Right-to-left stack pass over the exponent list.
inline std::vector<mpz_class> unpack(const Numbering& N, const mpz_class& code) {
  auto exps = detail::exponents_of(code);
  if (exps.size() == 1) return {mpz_class(exps[0])};
  std::vector<std::vector<unsigned long>> stack;
  for (size_t i = exps.size(); i >= 2; --i) {
    unsigned long e = exps[i - 1];
    auto [shell, arity] = detail::classify_sym(N, e, i - 1);
    (void)shell;
    if (arity == 0) {
      stack.push_back({e});
      continue;
    }
    if (static_cast<size_t>(arity) > stack.size())
      fail(ErrKind::MalformedCode, "argument underflow at position " + std::to_string(i));
    std::vector<unsigned long> merged{e};
    for (int q = 0; q < arity; ++q) {
      auto& top = stack.back();
      merged.insert(merged.end(), top.begin(), top.end());
      stack.pop_back();
    }
    stack.push_back(std::move(merged));
  }
  auto [head, head_arity] = detail::classify_sym(N, exps[0], 0);
  (void)head;
  if (static_cast<size_t>(head_arity) != stack.size())
    fail(ErrKind::MalformedCode, "head arity does not match argument count");
  std::vector<mpz_class> out{mpz_class(exps[0])};
  for (size_t q = stack.size(); q >= 1; --q)
    out.push_back(detail::code_from_exponents(stack[q - 1]));
  return out;
}

/// A system's code sequence: (number of atoms, then per atom its relation
/// index followed by the J-codes of its argument terms). Free arity is not
/// part of the code and must accompany it out of band.
inline std::vector<mpz_class> encode_system(const Numbering& N, const DiophDefinition& d) {
  if (d.atoms.empty()) fail(ErrKind::Validation, "atom list must be nonempty");
  std::vector<mpz_class> out{mpz_class(static_cast<unsigned long>(d.atoms.size()))};
  for (auto& a : d.atoms) {
    out.push_back(mpz_class(static_cast<unsigned long>(N.rel_index(a.rel))));
    for (auto& t : a.args) out.push_back(encode_term(N, t));
  }
  return out;
}

inline DiophDefinition decode_system(const Numbering& N, const std::vector<mpz_class>& seq,
                                     int free_k) {
  if (seq.empty() || seq[0] <= 0 || !seq[0].fits_ulong_p())
    fail(ErrKind::MalformedCode, "bad atom count");
  unsigned long l = seq[0].get_ui();
  DiophDefinition d;
  d.lang = N.lang;
  d.free_count = free_k;
  size_t pos = 1;
  for (unsigned long i = 0; i < l; ++i) {
    if (pos >= seq.size() || seq[pos] < 0 || !seq[pos].fits_ulong_p())
      fail(ErrKind::MalformedCode, "bad relation index in atom " + std::to_string(i + 1));
    std::string rel = N.rel_of(seq[pos].get_ui());
    ++pos;
    int arity = *N.lang.rel_arity(rel);
    Atom a;
    a.rel = rel;
    for (int q = 0; q < arity; ++q) {
      if (pos >= seq.size())
        fail(ErrKind::MalformedCode, "sequence ends inside atom " + std::to_string(i + 1));
      a.args.push_back(decode_term(N, seq[pos]));
      ++pos;
    }
    d.atoms.push_back(std::move(a));
  }
  if (pos != seq.size()) fail(ErrKind::MalformedCode, "trailing entries after last atom");
  d.exist_count = std::max(0, max_var(d) - free_k);
  return d;
}

}  // namespace dioph
