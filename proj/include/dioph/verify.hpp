#pragma once

#include "dioph/oracle.hpp"
#include "dioph/translate.hpp"

namespace dioph {

namespace detail {

inline std::string tuple_str(const std::vector<Elem>& t) {
  std::string s = "(";
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += to_string(t[i]);
  }
  return s + ")";
}

inline bool in_box(const Interpretation& R, const Elem& e, std::uint64_t n) {
  auto idx = R.index_of(e);
  return idx && *idx < n;
}

/// Does the translated system accept this fixed tuple of target elements as
/// its free part?  The free variables are replaced by literal elements and
/// the remaining existentials searched within the target box.
inline bool accepts_pinned(const DiophDefinition& translated, const std::vector<Elem>& img,
                           const Box& tgt_box) {
  DiophDefinition pinned;
  pinned.lang = translated.lang;
  pinned.free_count = 0;
  pinned.exist_count = translated.exist_count;
  int k = translated.free_count;
  std::function<Term(const Term&)> remap = [&](const Term& t) -> Term {
    if (t.kind == Term::Kind::Var)
      return t.var <= k ? telem(img[static_cast<size_t>(t.var - 1)]) : tvar(t.var - k);
    Term o = t;
    for (auto& a : o.args) a = remap(a);
    return o;
  };
  for (auto& a : translated.atoms) {
    Atom na = a;
    for (auto& t : na.args) t = remap(t);
    pinned.atoms.push_back(std::move(na));
  }
  Box b = tgt_box;
  b.size = tgt_box.esize();
  return solve_bounded(pinned, b).found;
}

}  // namespace detail

/// The two halves of the effective-map contract, checked on boxes:
///   (1) soundness  — the image of every bounded source solution solves the
///       translated system;
///   (2) completeness — every bounded translated solution is the image (or
///       image class) of some bounded source solution.
/// In quotient mode a target tuple matches a source tuple when every
/// coordinate lies in the class of the corresponding source coordinate.
inline std::vector<VerificationReport> verify_translation(
    const MapSpec& spec, const DiophDefinition& sys, const Box& src_box, const Box& tgt_box,
    const EquivMapSpec* equiv = nullptr) {
  if (!spec.pointwise) fail(ErrKind::Usage, spec.name + ": no pointwise function to verify with");
  if (equiv && !equiv->class_member)
    fail(ErrKind::Usage, spec.name + ": no class membership test to verify with");

  DiophDefinition translated =
      equiv ? translate_system_equiv(*equiv, sys) : translate_system(spec, sys);
  auto src = solution_set(sys, src_box);
  auto tgt = solution_set(translated, tgt_box);

  VerificationReport c1, c2;
  c1.property = spec.name + ":condition-1";
  c2.property = spec.name + ":condition-2";
  c1.examined = c2.examined = src.examined + tgt.examined;

  const Interpretation& T = *spec.dst;
  size_t k = static_cast<size_t>(sys.free_count);

  for (auto& s : src.points) {
    std::vector<Elem> img;
    img.reserve(k);
    bool inside = true;
    for (auto& e : s) {
      img.push_back(spec.pointwise(e));
      inside = inside && detail::in_box(T, img.back(), tgt_box.size);
    }
    if (!inside) continue;  // image escapes the target box: cannot refute here
    if (tgt.points.count(img)) continue;
    if (detail::accepts_pinned(translated, img, tgt_box)) continue;
    c1.pass = false;
    c1.counterexample = "source:" + detail::tuple_str(s) + "->image:" + detail::tuple_str(img);
    break;
  }

  auto matches = [&](const std::vector<Elem>& s, const std::vector<Elem>& t) {
    for (size_t i = 0; i < k; ++i) {
      if (equiv) {
        if (!equiv->class_member(s[i], t[i])) return false;
      } else if (!(spec.pointwise(s[i]) == t[i])) {
        return false;
      }
    }
    return true;
  };
  for (auto& t : tgt.points) {
    bool hit = false;
    for (auto& s : src.points)
      if (matches(s, t)) {
        hit = true;
        break;
      }
    if (!hit) {
      c2.pass = false;
      c2.counterexample = "target:" + detail::tuple_str(t);
      break;
    }
  }
  return {c1, c2};
}

inline std::vector<VerificationReport> verify_translation(const EquivMapSpec& spec,
                                                          const DiophDefinition& sys,
                                                          const Box& src_box, const Box& tgt_box) {
  return verify_translation(spec, sys, src_box, tgt_box, &spec);
}

/// Exhaustive satisfiability decision for a finite carrier.
inline std::function<bool(const DiophDefinition&)> exhaustive_decider(InterpPtr R) {
  if (!R->finite) fail(ErrKind::Usage, "exhaustive decision needs a finite carrier");
  return [R](const DiophDefinition& d) {
    return solve_bounded(d, Box{R, R->carrier_size, 0}).found;
  };
}

/// Decide satisfiability of a source system by compiling it and asking a
/// decider for the target structure.
inline bool decide_via_map(const MapSpec& spec, const DiophDefinition& sys,
                           const std::function<bool(const DiophDefinition&)>& target_decider) {
  return target_decider(translate_system(spec, sys));
}

/// Check that f and f_inv are mutually inverse pointwise on the box, and
/// that the graph data of f agrees with its pointwise values. Piecewise maps
/// are checked branch by branch against their restricted graphs (the
/// assembled component definitions are too wide to enumerate directly);
/// other maps are checked through their constant and function graph
/// definitions.
inline VerificationReport verify_automorphism_bounded(const MapSpec& f, const MapSpec& f_inv,
                                                      const Box& box) {
  if (!f.pointwise || !f_inv.pointwise)
    fail(ErrKind::Usage, "automorphism check needs pointwise functions on both maps");
  VerificationReport rep;
  rep.property = f.name + ":automorphism";
  const Interpretation& R = *box.interp;
  std::uint64_t n = box.size;
  if (R.finite && n > R.carrier_size) n = R.carrier_size;

  auto fail_with = [&](std::string cex) {
    rep.pass = false;
    rep.counterexample = std::move(cex);
  };

  // f_inv ∘ f = id and f ∘ f_inv = id on the box.
  for (std::uint64_t i = 0; i < n; ++i) {
    rep.examined++;
    Elem x = R.nth(i);
    Elem y = f.pointwise(x);
    if (!(f_inv.pointwise(y) == x))
      return fail_with("inv(f(" + to_string(x) + "))=" + to_string(f_inv.pointwise(y))), rep;
    Elem z = f_inv.pointwise(x);
    if (!(f.pointwise(z) == x))
      return fail_with("f(inv(" + to_string(x) + "))=" + to_string(f.pointwise(z))), rep;
  }

  if (!f.pieces.empty()) {
    // Branch graphs: bounded solutions must equal {(x, branch(x)) | x in the
    // branch} exactly (within the box).
    for (size_t pi = 0; pi < f.pieces.size(); ++pi) {
      const CasePiece& pc = f.pieces[pi];
      auto pts = solution_set(pc.unary_graph, box);
      rep.examined += pts.examined;
      std::set<std::vector<Elem>> expected;
      for (std::uint64_t i = 0; i < n; ++i) {
        Elem x = R.nth(i);
        if (!pc.member(x)) continue;
        Elem y = pc.branch(x);
        if (detail::in_box(R, y, n)) expected.insert({x, y});
      }
      if (pts.points != expected) {
        std::string where = "branch-" + std::to_string(pi + 1) + ":";
        for (auto& t : pts.points)
          if (!expected.count(t)) return fail_with(where + "extra:" + detail::tuple_str(t)), rep;
        for (auto& t : expected)
          if (!pts.points.count(t)) return fail_with(where + "missing:" + detail::tuple_str(t)), rep;
      }
    }
    return rep;
  }

  // Constant images.
  for (auto& c : f.src->lang.consts) {
    auto pts = solution_set(f.const_defs.at(c), box);
    rep.examined += pts.examined;
    Elem want = f.pointwise(f.src->consts.at(c));
    std::set<std::vector<Elem>> expected;
    if (detail::in_box(R, want, n)) expected.insert({want});
    if (pts.points != expected) return fail_with("const-" + c), rep;
  }
  // Function graphs: sound against preimages through f_inv, complete for
  // in-box argument images.
  for (auto& [g, r] : f.src->lang.funcs) {
    auto& op = R.funcs.at(g);
    auto pts = solution_set(f.func_graph_defs.at(g), box);
    rep.examined += pts.examined;
    for (auto& t : pts.points) {
      std::vector<Elem> pre;
      for (int q = 0; q < r; ++q) pre.push_back(f_inv.pointwise(t[static_cast<size_t>(q)]));
      if (!(f.pointwise(op(pre)) == t[static_cast<size_t>(r)]))
        return fail_with("graph-" + g + ":extra:" + detail::tuple_str(t)), rep;
    }
    std::vector<std::uint64_t> od(static_cast<size_t>(r), 0);
    bool done = false;
    while (!done) {
      rep.examined++;
      std::vector<Elem> xs;
      for (auto i : od) xs.push_back(R.nth(i));
      std::vector<Elem> t;
      bool inside = true;
      for (auto& x : xs) {
        t.push_back(f.pointwise(x));
        inside = inside && detail::in_box(R, t.back(), n);
      }
      t.push_back(f.pointwise(op(xs)));
      inside = inside && detail::in_box(R, t.back(), n);
      if (inside && !pts.points.count(t))
        return fail_with("graph-" + g + ":missing:" + detail::tuple_str(t)), rep;
      size_t i = od.size();
      if (od.empty()) break;
      while (i > 0) {
        --i;
        if (++od[i] < n) break;
        od[i] = 0;
        if (i == 0) done = true;
      }
    }
  }
  return rep;
}

}  // namespace dioph
