#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "dioph/lang.hpp"

namespace dioph {

// Overflow-checked machine arithmetic. Carrier operations must stay exact;
// we fail loudly rather than wrap.
inline long long add_ck(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrKind::Overflow, "integer overflow in +");
  return r;
}
inline long long sub_ck(long long a, long long b) {
  long long r;
  if (__builtin_sub_overflow(a, b, &r)) fail(ErrKind::Overflow, "integer overflow in -");
  return r;
}
inline long long mul_ck(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrKind::Overflow, "integer overflow in *");
  return r;
}

/// A structure: carrier + interpretation of the language's symbols.
/// The carrier is either finite (explicit size) or enumerable through `nth`.
/// All callbacks must be pure and total on the carrier.
struct Interpretation {
  std::string name;
  Language lang;
  int width = 1;

  bool finite = false;
  std::uint64_t carrier_size = 0;  // meaningful iff finite
  std::function<Elem(std::uint64_t)> nth;
  std::function<std::optional<std::uint64_t>(const Elem&)> index_of;

  std::map<std::string, Elem> consts;
  std::map<std::string, std::function<Elem(const std::vector<Elem>&)>> funcs;
  std::map<std::string, std::function<bool(const std::vector<Elem>&)>> rels;

  // Coefficient codec j: partial injection carrier -> N covering R0.
  std::function<std::optional<long long>(const Elem&)> code_of;
  std::function<std::optional<Elem>(long long)> elem_of;

  // Caller-asserted capability flags; never inferred.
  bool commutative = false;
  bool integral_domain = false;
  bool has_additive_inverses = false;
  // sum of two squares vanishes only when both do (X^2+1 has no root in the
  // fraction field); used by the single-equation combiner.
  bool squares_anisotropic = false;

  Elem zero() const {
    auto it = consts.find("0");
    if (it == consts.end()) fail(ErrKind::Validation, "interpretation lacks 0");
    return it->second;
  }
};

using InterpPtr = std::shared_ptr<const Interpretation>;

inline Elem eval_term(const Interpretation& R, const Term& t, const std::vector<Elem>& assignment) {
  switch (t.kind) {
    case Term::Kind::Var: {
      if (t.var < 1 || static_cast<size_t>(t.var) > assignment.size())
        fail(ErrKind::Validation, "missing variable x" + std::to_string(t.var));
      return assignment[static_cast<size_t>(t.var - 1)];
    }
    case Term::Kind::Const: {
      auto it = R.consts.find(t.name);
      if (it == R.consts.end()) fail(ErrKind::Validation, "unknown constant: " + t.name);
      return it->second;
    }
    case Term::Kind::Elem:
      return t.elem;
    case Term::Kind::Apply: {
      auto it = R.funcs.find(t.name);
      if (it == R.funcs.end()) fail(ErrKind::Validation, "unknown function: " + t.name);
      std::vector<Elem> vals;
      vals.reserve(t.args.size());
      for (auto& a : t.args) vals.push_back(eval_term(R, a, assignment));
      return it->second(vals);
    }
  }
  fail(ErrKind::Validation, "corrupt term");
}

inline bool atom_holds(const Interpretation& R, const Atom& a, const std::vector<Elem>& assignment) {
  if (a.rel == "=") {
    return eval_term(R, a.args[0], assignment) == eval_term(R, a.args[1], assignment);
  }
  auto it = R.rels.find(a.rel);
  if (it == R.rels.end()) fail(ErrKind::Validation, "unknown relation: " + a.rel);
  std::vector<Elem> vals;
  vals.reserve(a.args.size());
  for (auto& t : a.args) vals.push_back(eval_term(R, t, assignment));
  return it->second(vals);
}

/// witness covers all k+l variables.
inline bool holds(const Interpretation& R, const DiophDefinition& d, const std::vector<Elem>& witness) {
  if (witness.size() != static_cast<size_t>(d.var_count()))
    fail(ErrKind::Validation, "witness length must be k+l");
  for (auto& a : d.atoms)
    if (!atom_holds(R, a, witness)) return false;
  return true;
}

}  // namespace dioph
