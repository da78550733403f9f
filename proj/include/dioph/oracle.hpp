#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <unordered_set>
#include <vector>

#include "dioph/interp.hpp"

namespace dioph {

/// The first N enumerated elements of the carrier, per variable. Existential
/// variables share the free bound unless `exist_size` is set — witnesses can
/// legitimately need more room than solutions (four squares of a box value).
struct Box {
  InterpPtr interp;
  std::uint64_t size = 1;
  std::uint64_t exist_size = 0;  // 0 => same as size

  std::uint64_t esize() const { return exist_size ? exist_size : size; }
};

struct SolveResult {
  bool found = false;
  std::vector<Elem> witness;  // length k+l when found
  std::uint64_t examined = 0;
};

struct PointsResult {
  std::set<std::vector<Elem>> points;
  /// Conservative upper bound on tuples that might be missing only because
  /// their witnesses lie outside the box (0 for finite carriers or
  /// quantifier-free definitions).
  std::uint64_t frontier_warnings = 0;
  bool exact = false;
  std::uint64_t examined = 0;
};

namespace detail {

inline std::vector<Elem> box_prefix(const Interpretation& R, std::uint64_t n) {
  if (n < 1) fail(ErrKind::Usage, "box size must be >= 1");
  if (R.finite && n > R.carrier_size) n = R.carrier_size;
  std::vector<Elem> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(R.nth(i));
  return out;
}

struct VecU32Hash {
  size_t operator()(const std::vector<std::uint32_t>& v) const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

/// Bounded solver for one definition over one box. Strategy: for every atom,
/// precompute the relation of admissible assignments over the atom's *shared*
/// variables (variables private to a single equality side are collapsed into
/// achievable-value sets), then backtrack over the shared variables checking
/// those relations. Fully deterministic.
class Solver {
 public:
  Solver(const DiophDefinition& d, const Box& box, std::uint64_t budget = 400000000ull)
      : d_(d), R_(*box.interp), budget_(budget) {
    require_valid(d);
    if (!(box.interp->lang == d.lang))
      fail(ErrKind::Validation, "definition language does not match box interpretation");
    free_dom_ = box_prefix(R_, box.size);
    exist_dom_ = box_prefix(R_, box.esize());
    k_ = d.free_count;
    n_vars_ = d.var_count();
    collect_vars();
    build_constraints();
  }

  SolveResult solve() {
    SolveResult res;
    if (unsat_) {
      res.examined = examined_;
      return res;
    }
    bool stop = false;
    std::vector<std::uint32_t> idx(search_vars_.size(), 0);
    dfs(0, idx, [&](const std::vector<std::uint32_t>& full) {
      res.found = true;
      res.witness = extract_witness(full);
      stop = true;
      return true;  // stop search
    });
    (void)stop;
    res.examined = examined_;
    return res;
  }

  PointsResult points() {
    PointsResult res;
    if (!unsat_) {
      std::vector<std::uint32_t> idx(search_vars_.size(), 0);
      dfs(0, idx, [&](const std::vector<std::uint32_t>& full) {
        std::vector<Elem> tup;
        tup.reserve(static_cast<size_t>(k_));
        for (int i = 0; i < k_; ++i) tup.push_back(domain(i + 1)[full[static_cast<size_t>(i)]]);
        res.points.insert(std::move(tup));
        return false;  // prune back to the free prefix, keep enumerating
      });
    }
    std::uint64_t total = 1;
    for (int v = 1; v <= k_; ++v) {
      total *= domain(v).size();
      if (total > (1ull << 40)) break;
    }
    bool can_miss = d_.exist_count > 0 && !R_.finite;
    res.frontier_warnings = can_miss ? total - res.points.size() : 0;
    res.exact = !can_miss;
    res.examined = examined_;
    return res;
  }

 private:
  const DiophDefinition& d_;
  const Interpretation& R_;
  std::uint64_t budget_;
  std::uint64_t examined_ = 0;
  std::vector<Elem> free_dom_, exist_dom_;
  int k_ = 0, n_vars_ = 0;
  bool unsat_ = false;

  std::vector<std::vector<int>> atom_vars_;   // per atom, sorted unique
  std::vector<int> incidence_;                // per var (1-based)
  std::vector<bool> ext_;                     // per var (1-based)
  std::vector<int> search_vars_;              // ext vars ascending
  std::vector<int> search_pos_;               // var -> position in search_vars_ (or -1)

  struct Constraint {
    std::vector<int> evars;  // sorted ext vars of the atom
    std::unordered_set<std::vector<std::uint32_t>, VecU32Hash> allowed;
    int atom = 0;
  };
  std::vector<Constraint> constraints_;
  std::vector<std::vector<int>> triggers_;  // search position -> constraint ids

  const std::vector<Elem>& domain(int var) const {
    return var <= k_ ? free_dom_ : exist_dom_;
  }

  void charge(std::uint64_t units) {
    examined_ += units;
    if (examined_ > budget_)
      fail(ErrKind::Budget, "bounded search exceeded its work budget");
  }

  static void term_vars(const Term& t, std::set<int>& out) {
    for_each_var(t, [&](int v) { out.insert(v); });
  }

  void collect_vars() {
    incidence_.assign(static_cast<size_t>(n_vars_ + 1), 0);
    for (auto& a : d_.atoms) {
      std::set<int> vs;
      for (auto& t : a.args) term_vars(t, vs);
      atom_vars_.emplace_back(vs.begin(), vs.end());
      for (int v : vs) incidence_[static_cast<size_t>(v)]++;
    }
    ext_.assign(static_cast<size_t>(n_vars_ + 1), false);
    for (int v = 1; v <= n_vars_; ++v)
      ext_[static_cast<size_t>(v)] = v <= k_ || incidence_[static_cast<size_t>(v)] >= 2;
    search_pos_.assign(static_cast<size_t>(n_vars_ + 1), -1);
    for (int v = 1; v <= n_vars_; ++v)
      if (ext_[static_cast<size_t>(v)]) {
        search_pos_[static_cast<size_t>(v)] = static_cast<int>(search_vars_.size());
        search_vars_.push_back(v);
      }
  }

  // ----- value sets -----

  // Sorted unique values a term can take, given assigned variables in `asg`
  // (mask says which are assigned). Unassigned variables range over their
  // domains and are existentially collapsed.
  using ValueSet = std::vector<Elem>;

  std::map<const Term*, ValueSet> pure_cache_;  // terms with no assigned vars

  static void sort_unique(ValueSet& s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }

  ValueSet value_set(const Term& t, const std::vector<Elem>& asg, const std::vector<bool>& mask) {
    std::set<int> vs;
    term_vars(t, vs);
    std::vector<int> unassigned;
    bool touches_assigned = false;
    for (int v : vs) {
      if (mask[static_cast<size_t>(v)]) touches_assigned = true;
      else unassigned.push_back(v);
    }
    if (unassigned.empty()) {
      charge(1);
      return {eval_term(R_, t, asg)};
    }
    bool cacheable = !touches_assigned;
    if (cacheable) {
      auto it = pure_cache_.find(&t);
      if (it != pure_cache_.end()) return it->second;
    }
    ValueSet out = value_set_inner(t, asg, mask, unassigned);
    if (cacheable) pure_cache_.emplace(&t, out);
    return out;
  }

  ValueSet value_set_inner(const Term& t, const std::vector<Elem>& asg,
                           const std::vector<bool>& mask, const std::vector<int>& unassigned) {
    if (t.kind == Term::Kind::Var) {
      ValueSet s = domain(t.var);
      sort_unique(s);
      return s;
    }
    if (t.kind == Term::Kind::Apply) {
      // If children touch pairwise disjoint unassigned variables, combine
      // their value sets instead of enumerating the joint space.
      std::vector<std::set<int>> cvs(t.args.size());
      bool disjoint = true;
      std::set<int> seen;
      for (size_t i = 0; i < t.args.size() && disjoint; ++i) {
        term_vars(t.args[i], cvs[i]);
        for (int v : cvs[i]) {
          if (mask[static_cast<size_t>(v)]) continue;
          if (!seen.insert(v).second) disjoint = false;
        }
      }
      if (disjoint && t.args.size() >= 1) {
        std::vector<ValueSet> sets;
        sets.reserve(t.args.size());
        std::uint64_t prod = 1;
        for (auto& a : t.args) {
          sets.push_back(value_set(a, asg, mask));
          prod *= sets.back().size();
        }
        if (prod <= 2000000ull) {
          auto fit = R_.funcs.find(t.name);
          if (fit == R_.funcs.end()) fail(ErrKind::Validation, "unknown function: " + t.name);
          charge(prod);
          ValueSet out;
          out.reserve(static_cast<size_t>(prod));
          std::vector<size_t> od(sets.size(), 0);
          std::vector<Elem> argv(sets.size());
          while (true) {
            for (size_t i = 0; i < sets.size(); ++i) argv[i] = sets[i][od[i]];
            out.push_back(fit->second(argv));
            size_t i = sets.size();
            while (i > 0) {
              --i;
              if (++od[i] < sets[i].size()) break;
              od[i] = 0;
              if (i == 0) {
                sort_unique(out);
                return out;
              }
            }
          }
        }
      }
    }
    // Fallback: enumerate the unassigned variables jointly.
    std::uint64_t prod = 1;
    for (int v : unassigned) {
      prod *= domain(v).size();
      if (prod > 100000000ull) fail(ErrKind::Budget, "value-set enumeration too large");
    }
    charge(prod);
    std::vector<Elem> asg2 = asg;
    ValueSet out;
    std::vector<size_t> od(unassigned.size(), 0);
    while (true) {
      for (size_t i = 0; i < unassigned.size(); ++i)
        asg2[static_cast<size_t>(unassigned[i] - 1)] = domain(unassigned[i])[od[i]];
      out.push_back(eval_term(R_, t, asg2));
      size_t i = unassigned.size();
      while (i > 0) {
        --i;
        if (++od[i] < domain(unassigned[i]).size()) break;
        od[i] = 0;
        if (i == 0) {
          sort_unique(out);
          return out;
        }
      }
    }
  }

  static bool intersects(const ValueSet& a, const ValueSet& b) {
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] == b[j]) return true;
      if (a[i] < b[j]) ++i;
      else ++j;
    }
    return false;
  }

  // ----- constraint relations -----

  void build_constraints() {
    for (size_t ai = 0; ai < d_.atoms.size(); ++ai) {
      const Atom& a = d_.atoms[ai];
      Constraint c;
      c.atom = static_cast<int>(ai);
      for (int v : atom_vars_[ai])
        if (ext_[static_cast<size_t>(v)]) c.evars.push_back(v);

      // Variables we must enumerate while building the relation: the external
      // ones, plus (for equalities) variables occurring on both sides, plus
      // (for other relations) everything.
      std::set<int> key(c.evars.begin(), c.evars.end());
      if (a.rel == "=") {
        std::set<int> lv, rv;
        term_vars(a.args[0], lv);
        term_vars(a.args[1], rv);
        for (int v : lv)
          if (rv.count(v)) key.insert(v);
      } else {
        for (int v : atom_vars_[ai]) key.insert(v);
      }
      std::vector<int> keyv(key.begin(), key.end());

      std::uint64_t prod = 1;
      for (int v : keyv) {
        prod *= domain(v).size();
        if (prod > budget_) fail(ErrKind::Budget, "atom relation too large to enumerate");
      }

      std::vector<Elem> asg(static_cast<size_t>(n_vars_));
      std::vector<bool> mask(static_cast<size_t>(n_vars_ + 1), false);
      for (int v : keyv) mask[static_cast<size_t>(v)] = true;

      std::vector<size_t> od(keyv.size(), 0);
      bool done = false;
      while (true) {
        for (size_t i = 0; i < keyv.size(); ++i)
          asg[static_cast<size_t>(keyv[i] - 1)] = domain(keyv[i])[od[i]];
        charge(1);
        bool ok;
        if (a.rel == "=") {
          ValueSet l = value_set(a.args[0], asg, mask);
          ValueSet r = value_set(a.args[1], asg, mask);
          ok = intersects(l, r);
        } else {
          // Relation atoms: argument terms may still hide private variables;
          // collapse each argument to its value set and test the predicate on
          // the (capped) product.
          ok = rel_atom_sat(a, asg, mask);
        }
        if (ok) {
          std::vector<std::uint32_t> proj;
          proj.reserve(c.evars.size());
          for (int v : c.evars) {
            size_t pos = static_cast<size_t>(
                std::find(keyv.begin(), keyv.end(), v) - keyv.begin());
            proj.push_back(static_cast<std::uint32_t>(od[pos]));
          }
          c.allowed.insert(std::move(proj));
        }
        if (keyv.empty()) break;
        size_t i = keyv.size();
        while (i > 0) {
          --i;
          if (++od[i] < domain(keyv[i]).size()) break;
          od[i] = 0;
          if (i == 0) done = true;
        }
        if (done) break;
      }
      if (c.allowed.empty()) unsat_ = true;
      constraints_.push_back(std::move(c));
      pure_cache_.clear();
    }

    // Trigger each constraint when its last external variable is assigned.
    triggers_.assign(search_vars_.size(), {});
    for (size_t ci = 0; ci < constraints_.size(); ++ci) {
      auto& c = constraints_[ci];
      if (c.evars.empty()) {
        if (c.allowed.empty()) unsat_ = true;
        continue;
      }
      int last = c.evars.back();  // evars sorted ascending
      triggers_[static_cast<size_t>(search_pos_[static_cast<size_t>(last)])].push_back(
          static_cast<int>(ci));
    }
  }

  bool rel_atom_sat(const Atom& a, const std::vector<Elem>& asg, const std::vector<bool>& mask) {
    auto rit = R_.rels.find(a.rel);
    if (rit == R_.rels.end()) fail(ErrKind::Validation, "unknown relation: " + a.rel);
    std::vector<ValueSet> sets;
    std::uint64_t prod = 1;
    for (auto& t : a.args) {
      sets.push_back(value_set(t, asg, mask));
      prod *= sets.back().size();
      if (prod > 2000000ull) fail(ErrKind::Budget, "relation atom value space too large");
    }
    charge(prod);
    std::vector<size_t> od(sets.size(), 0);
    std::vector<Elem> argv(sets.size());
    while (true) {
      for (size_t i = 0; i < sets.size(); ++i) argv[i] = sets[i][od[i]];
      if (rit->second(argv)) return true;
      size_t i = sets.size();
      while (i > 0) {
        --i;
        if (++od[i] < sets[i].size()) break;
        od[i] = 0;
        if (i == 0) return false;
      }
    }
  }

  // ----- join -----

  // DFS over search_vars_; `sink` is called with the index vector when all
  // external variables are assigned. Sink returning true stops the whole
  // search. Sink returning false prunes back to the free prefix, so each
  // free tuple is reported exactly once.
  // Return codes: 0 = subtree exhausted, 1 = stop everything, 2 = unwind to
  // the deepest free variable.
  template <typename Sink>
  int dfs(size_t depth, std::vector<std::uint32_t>& idx, Sink&& sink) {
    if (depth == search_vars_.size()) return sink(idx) ? 1 : 2;
    int var = search_vars_[depth];
    const auto& dom = domain(var);
    for (std::uint32_t i = 0; i < dom.size(); ++i) {
      idx[depth] = i;
      charge(1);
      bool ok = true;
      for (int ci : triggers_[depth]) {
        const auto& c = constraints_[static_cast<size_t>(ci)];
        std::vector<std::uint32_t> key;
        key.reserve(c.evars.size());
        for (int v : c.evars)
          key.push_back(idx[static_cast<size_t>(search_pos_[static_cast<size_t>(v)])]);
        if (!c.allowed.count(key)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      int r = dfs(depth + 1, idx, sink);
      if (r == 1) return 1;
      if (r == 2 && depth >= static_cast<size_t>(k_)) return 2;
      // r == 2 at a free depth: advance to the next free value.
    }
    return 0;
  }

  std::vector<Elem> extract_witness(const std::vector<std::uint32_t>& idx) {
    std::vector<Elem> w(static_cast<size_t>(n_vars_));
    std::vector<bool> fixed(static_cast<size_t>(n_vars_ + 1), false);
    for (size_t p = 0; p < search_vars_.size(); ++p) {
      int v = search_vars_[p];
      w[static_cast<size_t>(v - 1)] = domain(v)[idx[p]];
      fixed[static_cast<size_t>(v)] = true;
    }
    // Default for untouched variables.
    for (int v = 1; v <= n_vars_; ++v)
      if (!fixed[static_cast<size_t>(v)]) w[static_cast<size_t>(v - 1)] = domain(v)[0];
    // Complete each atom's private variables by first-match search.
    for (size_t ai = 0; ai < d_.atoms.size(); ++ai) {
      std::vector<int> priv;
      for (int v : atom_vars_[ai])
        if (!ext_[static_cast<size_t>(v)]) priv.push_back(v);
      if (priv.empty()) continue;
      std::vector<size_t> od(priv.size(), 0);
      bool found = false, done = false;
      while (!done) {
        for (size_t i = 0; i < priv.size(); ++i)
          w[static_cast<size_t>(priv[i] - 1)] = domain(priv[i])[od[i]];
        charge(1);
        if (atom_holds(R_, d_.atoms[ai], w)) {
          found = true;
          break;
        }
        size_t i = priv.size();
        while (i > 0) {
          --i;
          if (++od[i] < domain(priv[i]).size()) break;
          od[i] = 0;
          if (i == 0) done = true;
        }
      }
      if (!found) fail(ErrKind::Budget, "internal: witness completion failed");
    }
    return w;
  }
};

}  // namespace detail

/// First witness in (deterministic) search order, or exhausted.
inline SolveResult solve_bounded(const DiophDefinition& d, const Box& box) {
  detail::Solver s(d, box);
  return s.solve();
}

/// All free-variable tuples in the box extendable to in-box witnesses.
inline PointsResult solution_set(const DiophDefinition& d, const Box& box) {
  detail::Solver s(d, box);
  return s.points();
}

struct VerificationReport {
  std::string property;
  bool pass = true;
  std::string counterexample;  // empty when pass
  std::uint64_t examined = 0;

  std::string line() const {
    std::string s = pass ? "PASS " : "FAIL ";
    s += property;
    if (!pass && !counterexample.empty()) s += " " + counterexample;
    return s;
  }
};

/// Master test for the set-algebra lemmas: same bounded solution sets.
inline VerificationReport verify_set_equality(const DiophDefinition& d1,
                                              const DiophDefinition& d2, const Box& box,
                                              const std::string& property = "set-equality") {
  VerificationReport rep;
  rep.property = property;
  if (d1.free_count != d2.free_count) fail(ErrKind::Usage, "free arity mismatch");
  auto p1 = solution_set(d1, box);
  auto p2 = solution_set(d2, box);
  rep.examined = p1.examined + p2.examined;
  for (auto& t : p1.points)
    if (!p2.points.count(t)) {
      rep.pass = false;
      rep.counterexample = "only-lhs:";
      for (auto& e : t) rep.counterexample += " " + to_string(e);
      return rep;
    }
  for (auto& t : p2.points)
    if (!p1.points.count(t)) {
      rep.pass = false;
      rep.counterexample = "only-rhs:";
      for (auto& e : t) rep.counterexample += " " + to_string(e);
      return rep;
    }
  return rep;
}

}  // namespace dioph
