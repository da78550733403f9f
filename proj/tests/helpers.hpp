#pragma once

// Deterministic generators shared by the unit and acceptance tests. All
// randomness flows through a seeded mt19937_64, so every run sees the same
// corpus.

#include <random>

#include "dioph/lang.hpp"

namespace dioph::testgen {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  int upto(int n) {  // uniform in [0, n)
    return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(eng));
  }
};

/// Random term over {0,1,+,*} using variables x1..xk, depth <= depth.
inline Term random_term(Rng& rng, int k, int depth) {
  int leaf_kinds = 2 + (k > 0 ? 1 : 0);
  if (depth == 0 || rng.upto(3) == 0) {
    int c = rng.upto(leaf_kinds);
    if (c == 0) return tconst("0");
    if (c == 1) return tconst("1");
    return tvar(1 + rng.upto(k));
  }
  Term a = random_term(rng, k, depth - 1);
  Term b = random_term(rng, k, depth - 1);
  return rng.upto(2) ? tadd(a, b) : tmul(a, b);
}

/// Random equality-only definition over {0,1,+,*}.
inline DiophDefinition random_def(Rng& rng, int free_k, int exist_l, int max_atoms, int depth) {
  DiophDefinition d;
  d.lang = lang_rings();
  d.free_count = free_k;
  d.exist_count = exist_l;
  int n = 1 + rng.upto(max_atoms);
  for (int i = 0; i < n; ++i) {
    Term a = random_term(rng, free_k + exist_l, depth);
    Term b = random_term(rng, free_k + exist_l, depth);
    d.atoms.push_back(aeq(a, b));
  }
  return d;
}

}  // namespace dioph::testgen
