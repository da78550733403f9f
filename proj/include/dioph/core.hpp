#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dioph {

/// Error taxonomy shared by every module. The `kind` tag lets callers (CLI,
/// tests) distinguish "this input is malformed" from "this operation does not
/// apply to this structure".
enum class ErrKind {
  Validation,     // ill-formed syntax, arity mismatch, unknown symbol
  NotApplicable,  // operation's structural precondition not met (flags, negation, ...)
  MalformedCode,  // a Code outside J's image / bad system sequence
  Budget,         // bounded search exceeded its work budget
  Overflow,       // machine-integer overflow in carrier arithmetic
  Usage,          // bad arguments at the API/CLI boundary
};

class Error : public std::runtime_error {
 public:
  Error(ErrKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
  ErrKind kind;
};

[[noreturn]] inline void fail(ErrKind k, const std::string& msg) { throw Error(k, msg); }

/// A carrier element: a short tuple of machine integers. Width 1 covers the
/// scalar structures (Z, N, Z/n, F2); pairs/triples cover Z^k, Z[i] and
/// disjoint unions. Fixed inline storage keeps the brute-force oracle free of
/// heap traffic.
struct Elem {
  static constexpr int kMaxWidth = 6;
  std::array<long long, kMaxWidth> v{};
  std::uint8_t n = 1;

  Elem() = default;
  explicit Elem(long long a) : n(1) { v[0] = a; }
  Elem(long long a, long long b) : n(2) {
    v[0] = a;
    v[1] = b;
  }
  static Elem tuple(const std::vector<long long>& xs) {
    if (xs.empty() || xs.size() > kMaxWidth) fail(ErrKind::Validation, "bad element width");
    Elem e;
    e.n = static_cast<std::uint8_t>(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) e.v[i] = xs[i];
    return e;
  }
  int width() const { return n; }
  long long& operator[](int i) { return v[static_cast<size_t>(i)]; }
  long long operator[](int i) const { return v[static_cast<size_t>(i)]; }

  friend bool operator==(const Elem& a, const Elem& b) {
    if (a.n != b.n) return false;
    for (int i = 0; i < a.n; ++i)
      if (a.v[static_cast<size_t>(i)] != b.v[static_cast<size_t>(i)]) return false;
    return true;
  }
  friend bool operator!=(const Elem& a, const Elem& b) { return !(a == b); }
  friend bool operator<(const Elem& a, const Elem& b) {
    if (a.n != b.n) return a.n < b.n;
    for (int i = 0; i < a.n; ++i) {
      long long x = a.v[static_cast<size_t>(i)], y = b.v[static_cast<size_t>(i)];
      if (x != y) return x < y;
    }
    return false;
  }
};

struct ElemHash {
  size_t operator()(const Elem& e) const {
    std::uint64_t h = 1469598103934665603ull;
    for (int i = 0; i < e.n; ++i) {
      h ^= static_cast<std::uint64_t>(e.v[static_cast<size_t>(i)]);
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h ^ e.n);
  }
};

inline std::string to_string(const Elem& e) {
  std::string s;
  if (e.n == 1) return std::to_string(e.v[0]);
  s = "(";
  for (int i = 0; i < e.n; ++i) {
    if (i) s += ",";
    s += std::to_string(e.v[static_cast<size_t>(i)]);
  }
  s += ")";
  return s;
}

}  // namespace dioph
