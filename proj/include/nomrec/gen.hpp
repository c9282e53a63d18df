#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "nomrec/perm.hpp"
#include "nomrec/term.hpp"
#include "nomrec/var.hpp"

namespace nomrec {

// Draws one random term from a small variable pool (so collisions between
// binders and free occurrences actually happen), spending at most max_size
// nodes. Kind weights are Vr:Ap:Lm = 2:2:1.
inline Term sample_term(std::mt19937_64& rng, int pool = 6, int max_size = 12) {
  struct Rec {
    std::mt19937_64& rng;
    int pool;
    Term go(int& budget) {
      auto pick = [&] {
        return var(std::uniform_int_distribution<std::uint64_t>(
            0, pool - 1)(rng));
      };
      --budget;
      if (budget <= 0) return Term::Vr(pick());
      int r = std::uniform_int_distribution<int>(0, 4)(rng);
      if (r < 2) return Term::Vr(pick());
      if (r < 4) {
        Term f = go(budget);
        Term a = go(budget);
        return Term::Ap(f, a);
      }
      Var b = pick();
      return Term::Lm(b, go(budget));
    }
  } rec{rng, pool};
  int budget = max_size;
  return rec.go(budget);
}

// Seeded sampling used by property-style tests and by the CLI.
class Gen {
 public:
  explicit Gen(std::uint64_t seed, int pool = 6, int max_size = 12)
      : rng_(seed), pool_(pool), max_size_(max_size) {}

  std::mt19937_64& rng() { return rng_; }

  Var pick_var() {
    return var(std::uniform_int_distribution<std::uint64_t>(0, pool_ - 1)(rng_));
  }

  // Variable drawn from a slightly wider range, so "outside the pool" cases
  // occur too.
  Var pick_var_wide() {
    return var(
        std::uniform_int_distribution<std::uint64_t>(0, pool_ + 2)(rng_));
  }

  Perm pick_perm(int max_swaps = 4) {
    int k = std::uniform_int_distribution<int>(0, max_swaps)(rng_);
    Perm p;
    for (int i = 0; i < k; ++i) {
      Var a = pick_var(), b = pick_var();
      if (a == b) continue;
      p = Perm::compose(Perm::transposition(a, b), p);
    }
    return p;
  }

  Term pick_term() { return sample_term(rng_, pool_, max_size_); }

  std::vector<Term> pick_terms(std::size_t n) {
    std::vector<Term> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(pick_term());
    return out;
  }

 private:
  std::mt19937_64 rng_;
  int pool_;
  int max_size_;
};

}  // namespace nomrec
