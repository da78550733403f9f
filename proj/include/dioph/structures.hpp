#pragma once

#include "dioph/product_lang.hpp"

namespace dioph {

namespace detail {
inline bool is_prime_u(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}
// Enumeration of Z as 0, 1, -1, 2, -2, ...
inline long long int_nth(std::uint64_t m) {
  if (m == 0) return 0;
  return m % 2 ? static_cast<long long>((m + 1) / 2) : -static_cast<long long>(m / 2);
}
inline std::uint64_t int_index(long long x) {
  if (x == 0) return 0;
  return x > 0 ? static_cast<std::uint64_t>(2 * x - 1) : static_cast<std::uint64_t>(-2 * x);
}
}  // namespace detail

/// The ring of integers over {0, 1, +, *}.
inline InterpPtr make_int() {
  auto R = std::make_shared<Interpretation>();
  R->name = "int";
  R->lang = lang_rings();
  R->nth = [](std::uint64_t m) { return Elem(detail::int_nth(m)); };
  R->index_of = [](const Elem& e) -> std::optional<std::uint64_t> {
    return e.width() == 1 ? std::optional<std::uint64_t>(detail::int_index(e[0])) : std::nullopt;
  };
  R->consts = {{"0", Elem(0)}, {"1", Elem(1)}};
  R->funcs["+"] = [](const std::vector<Elem>& a) { return Elem(add_ck(a[0][0], a[1][0])); };
  R->funcs["*"] = [](const std::vector<Elem>& a) { return Elem(mul_ck(a[0][0], a[1][0])); };
  R->code_of = [](const Elem& e) -> std::optional<long long> {
    if (e.width() != 1) return std::nullopt;
    long long x = e[0];
    return x >= 0 ? mul_ck(2, x) : sub_ck(mul_ck(-2, x), 1);
  };
  R->elem_of = [](long long j) -> std::optional<Elem> {
    if (j < 0) return std::nullopt;
    return Elem(j % 2 == 0 ? j / 2 : -(j + 1) / 2);
  };
  R->commutative = R->integral_domain = R->has_additive_inverses = true;
  R->squares_anisotropic = true;
  return R;
}

/// The semiring of natural numbers over {0, 1, +, *}.
inline InterpPtr make_nat() {
  auto R = std::make_shared<Interpretation>();
  R->name = "nat";
  R->lang = lang_rings();
  R->nth = [](std::uint64_t m) { return Elem(static_cast<long long>(m)); };
  R->index_of = [](const Elem& e) -> std::optional<std::uint64_t> {
    if (e.width() != 1 || e[0] < 0) return std::nullopt;
    return static_cast<std::uint64_t>(e[0]);
  };
  R->consts = {{"0", Elem(0)}, {"1", Elem(1)}};
  R->funcs["+"] = [](const std::vector<Elem>& a) { return Elem(add_ck(a[0][0], a[1][0])); };
  R->funcs["*"] = [](const std::vector<Elem>& a) { return Elem(mul_ck(a[0][0], a[1][0])); };
  R->code_of = [](const Elem& e) -> std::optional<long long> {
    if (e.width() != 1 || e[0] < 0) return std::nullopt;
    return e[0];
  };
  R->elem_of = [](long long j) -> std::optional<Elem> {
    if (j < 0) return std::nullopt;
    return Elem(j);
  };
  R->commutative = R->integral_domain = true;
  R->has_additive_inverses = false;
  R->squares_anisotropic = true;
  return R;
}

/// Z/n over {0, 1, +, *}; a field (hence an integral domain) iff n is prime.
inline InterpPtr make_zmod(std::uint64_t n, std::string name = "") {
  if (n < 2) fail(ErrKind::Usage, "modulus must be >= 2");
  auto R = std::make_shared<Interpretation>();
  R->name = name.empty() ? "zmod:" + std::to_string(n) : std::move(name);
  R->lang = lang_rings();
  R->finite = true;
  R->carrier_size = n;
  long long m = static_cast<long long>(n);
  R->nth = [](std::uint64_t i) { return Elem(static_cast<long long>(i)); };
  R->index_of = [m](const Elem& e) -> std::optional<std::uint64_t> {
    if (e.width() != 1 || e[0] < 0 || e[0] >= m) return std::nullopt;
    return static_cast<std::uint64_t>(e[0]);
  };
  R->consts = {{"0", Elem(0)}, {"1", Elem(1 % m)}};
  R->funcs["+"] = [m](const std::vector<Elem>& a) { return Elem((a[0][0] + a[1][0]) % m); };
  R->funcs["*"] = [m](const std::vector<Elem>& a) { return Elem((a[0][0] * a[1][0]) % m); };
  R->code_of = [m](const Elem& e) -> std::optional<long long> {
    if (e.width() != 1 || e[0] < 0 || e[0] >= m) return std::nullopt;
    return e[0];
  };
  R->elem_of = [m](long long j) -> std::optional<Elem> {
    if (j < 0 || j >= m) return std::nullopt;
    return Elem(j);
  };
  R->commutative = true;
  R->has_additive_inverses = true;
  R->integral_domain = detail::is_prime_u(n);
  R->squares_anisotropic = R->integral_domain && n % 4 == 3;
  return R;
}

/// The two-element field.
inline InterpPtr make_f2() { return make_zmod(2, "f2"); }

/// The Gaussian integers Z[i] over {0, 1, i, +, *}; elements are (re, im).
inline InterpPtr make_gaussint(bool with_int_relation = false) {
  auto R = std::make_shared<Interpretation>();
  R->name = with_int_relation ? "gaussint-z" : "gaussint";
  R->lang.consts = {"0", "1", "i"};
  R->lang.funcs = {{"+", 2}, {"*", 2}};
  if (with_int_relation) R->lang.rels = {{"int", 1}};
  R->width = 2;
  R->nth = [](std::uint64_t m) {
    auto ij = detail::shell_tuple(m, 2);
    return Elem(detail::int_nth(ij[0]), detail::int_nth(ij[1]));
  };
  R->index_of = [](const Elem& e) -> std::optional<std::uint64_t> {
    if (e.width() != 2) return std::nullopt;
    return detail::shell_index({detail::int_index(e[0]), detail::int_index(e[1])});
  };
  R->consts = {{"0", Elem(0, 0)}, {"1", Elem(1, 0)}, {"i", Elem(0, 1)}};
  R->funcs["+"] = [](const std::vector<Elem>& a) {
    return Elem(add_ck(a[0][0], a[1][0]), add_ck(a[0][1], a[1][1]));
  };
  R->funcs["*"] = [](const std::vector<Elem>& a) {
    long long ac = mul_ck(a[0][0], a[1][0]), bd = mul_ck(a[0][1], a[1][1]);
    long long ad = mul_ck(a[0][0], a[1][1]), bc = mul_ck(a[0][1], a[1][0]);
    return Elem(sub_ck(ac, bd), add_ck(ad, bc));
  };
  if (with_int_relation)
    R->rels["int"] = [](const std::vector<Elem>& a) { return a[0][1] == 0; };
  R->code_of = [](const Elem& e) -> std::optional<long long> {
    if (e.width() != 2) return std::nullopt;
    auto j = [](long long x) { return x >= 0 ? 2 * x : -2 * x - 1; };
    return detail::cantor_pair(j(e[0]), j(e[1]));
  };
  R->elem_of = [](long long c) -> std::optional<Elem> {
    if (c < 0) return std::nullopt;
    auto [a, b] = detail::cantor_unpair(c);
    auto ji = [](long long j) { return j % 2 == 0 ? j / 2 : -(j + 1) / 2; };
    return Elem(ji(a), ji(b));
  };
  R->commutative = R->integral_domain = R->has_additive_inverses = true;
  R->squares_anisotropic = false;  // i^2 + 1 = 0
  return R;
}

/// Z^2 over the squared ring language with projections pi1, pi2.
inline InterpPtr make_intpair() {
  auto P = PowerLanguage::make(lang_rings(), 2);
  auto R = power_interp(P, make_int());
  auto copy = std::make_shared<Interpretation>(*R);
  copy->name = "intpair";
  return copy;
}

struct StdlibEntry {
  std::string name;
  std::string description;
};

inline std::vector<StdlibEntry> stdlib_interp_list() {
  return {
      {"int", "ring of integers over {0,1,+,*}"},
      {"nat", "natural numbers over {0,1,+,*}"},
      {"zmod:n", "integers modulo n over {0,1,+,*} (field iff n prime)"},
      {"f2", "the two-element field"},
      {"intpair", "pairs of integers with coordinate projections pi1, pi2"},
      {"gaussint", "Gaussian integers over {0,1,i,+,*}"},
      {"gaussint-z", "Gaussian integers with a unary relation picking out Z"},
  };
}

/// Name lookup with parameter syntax "zmod:n".
inline InterpPtr stdlib_interp(const std::string& name) {
  if (name == "int") return make_int();
  if (name == "nat") return make_nat();
  if (name == "f2") return make_f2();
  if (name == "intpair") return make_intpair();
  if (name == "gaussint") return make_gaussint(false);
  if (name == "gaussint-z") return make_gaussint(true);
  if (name.rfind("zmod:", 0) == 0) {
    try {
      return make_zmod(std::stoull(name.substr(5)));
    } catch (const std::exception&) {
      fail(ErrKind::Usage, "bad modulus in " + name);
    }
  }
  fail(ErrKind::Usage, "unknown structure: " + name);
}

}  // namespace dioph
