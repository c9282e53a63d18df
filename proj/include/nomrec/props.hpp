#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace nomrec {

// Operation and relation symbols a model can interpret.
enum class Sym { vr, ap, lm, pm, sw, sb, ren, fv, fr };

using Signature = std::set<Sym>;

std::string sym_name(Sym s);

// The signature used by recursor i (1..9). Throws on out-of-range ids.
Signature sigma_of(int i);

// The law suite underlying recursor i, in pinned order. Throws on
// out-of-range ids.
std::vector<std::string> props_of(int i);

// Ops a law id needs, e.g. SwCg reads {sw, fr, lm}. Constructor symbols are
// included. Unknown ids throw.
Signature prop_requires(const std::string& prop);

struct PropLine {
  std::string name;
  bool pass = true;
  int n = 0;         // instances evaluated
  int hits = 0;      // instances where the side condition held
  bool heuristic = false;
  std::string cex;   // serialized first failing instance, empty if none

  std::string to_string() const;
};

struct PropReport {
  std::vector<PropLine> lines;

  bool all_pass() const;
  std::string to_string() const;
  const PropLine* find(const std::string& name) const;
};

// Knobs for the sampling checker. Everything that affects results is here so
// runs are reproducible.
struct CheckConfig {
  std::uint64_t seed = 1;
  int n = 300;            // samples per property
  int min_hits = 20;      // required non-vacuous instances for guarded laws
  int probes = 3;         // outside-probes for finiteness-flavoured laws
  int fcb_candidates = 8; // candidate variables for the FCB existential
  int pool = 6;           // variable pool width for sampled vars
  int depth = 12;         // term/sample size budget
};

}  // namespace nomrec
