#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nomrec/model.hpp"
#include "nomrec/perm.hpp"
#include "nomrec/props.hpp"
#include "nomrec/term.hpp"
#include "nomrec/var.hpp"

namespace nomrec {

// An infinite sequence of variables with decidable equality: an explicit
// finite prefix followed by the affine tail j |-> var(stride*j + start),
// stride >= 1. The representation is canonical: construction absorbs patches
// into the prefix and then folds prefix entries that already agree with the
// tail back into it, so operator== coincides with extensional equality of
// the sequences. The value set is always infinite.
class VarStream {
 public:
  VarStream() = default;  // v0, v1, v2, ...

  static VarStream affine(std::uint64_t stride, std::uint64_t start);
  // Sequence: prefix, then the affine tail. patches override single positions
  // (indices into the whole sequence); they are absorbed at construction.
  // Throws std::invalid_argument when stride == 0.
  static VarStream make(std::vector<Var> prefix, std::uint64_t stride,
                        std::uint64_t start,
                        const std::map<std::size_t, Var>& patches = {});

  Var at(std::size_t i) const;
  const std::vector<Var>& prefix() const { return prefix_; }
  std::uint64_t stride() const { return a_; }
  std::uint64_t start() const { return b_; }  // first tail value index

  VarSet vars() const;  // set of values, symbolic

  bool operator==(const VarStream&) const = default;

  // "[v1, v0 | v(1*i+2)]"; empty prefix prints "[| v(1*i+0)]".
  std::string to_string() const;

 private:
  std::vector<Var> prefix_;
  std::uint64_t a_ = 1, b_ = 0;
  void shrink_();
};

// Pointwise application of sigma, renormalized. Only finitely many tail
// positions move (sigma has finite support), so the result stays in shape.
VarStream stream_map(const Perm& sigma, const VarStream& xs);

// Deletes every position whose value is y, order preserved, renormalized.
// The value set of the result is vars(xs) minus {y}.
VarStream stream_rem(Var y, const VarStream& xs);

// The distinguished closed term family: ti(i) nests i+1 binders over a
// variable bound by the innermost one. Members are mutually non
// alpha-equivalent and ground.
Term ti(std::size_t i);
// Recognizes ti members up to alpha: a pure binder spine whose body is the
// innermost binder. Returns the family index, or nullopt.
std::optional<std::size_t> ti_index(const Term& t);

// Carrier: terms extended with variable streams. Streams absorb application
// and bind by deletion; the ti family is the only way an application ever
// reads stream content back out as a term.
using StreamCarrier = std::variant<Term, VarStream>;

// Permutation-and-free-variable model over StreamCarrier:
//   Vr x        = term Vr x
//   Ap xs ti    = Vr (xs at i),   Ap xs m = t0 otherwise,  Ap s xs = t0
//   Lm y xs     = delete y from xs
//   xs[sigma]   = pointwise map
//   FV xs       = value set (symbolic)
// Term arguments fall through to the ordinary term operations. The model has
// no finite support oracle: stream support is infinite by construction.
Model<StreamCarrier> stream_model();

// Carrier: terms extended with one extra point. The point acts like Vr v0
// under the constructors, and swapping degrades it to that term outright.
struct AdjoinA {
  friend bool operator==(const AdjoinA&, const AdjoinA&) { return true; }
};
using AdjoinCarrier = std::variant<Term, AdjoinA>;

// Swapping-and-free-variable model over AdjoinCarrier:
//   Ap a a = Ap (Vr v0) (Vr v0),  Ap a t = Ap (Vr v0) t,  Ap t a = Ap t (Vr v0)
//   Lm y a = Lm y (Vr v0)
//   a[z1 ^ z2] = Vr (v0 with z1, z2 exchanged)    (a term, always)
//   FV a = every variable
Model<AdjoinCarrier> adjoin_model();

// Sampled walkthrough of why stream_model admits no permutation-style
// extension with first-class freshness: the map action is forced pointwise,
// forcing every variable of a stream free, and then no binder candidate is
// fresh for its own abstraction. The first lines PASS (the forcing steps);
// the last line FAILs for each of the candidate binders. Deterministic under
// a fixed seed.
PropReport obstruction_r1(int n = 300, std::uint64_t seed = 1);

// Same idea for adjoin_model against a permutation action: any candidate
// extends the standard one on terms and is bijective, so it fixes the extra
// point; the application table then pins a term equal to a nontrivial
// renaming of itself. Forcing lines PASS, the last line FAILs with the
// explicit witness.
PropReport obstruction_r2(int n = 300, std::uint64_t seed = 1);

// True when the report has the intended shape: every forcing line passed and
// the final line (the impossible extension) failed.
bool separation_witnessed(const PropReport& rep);

}  // namespace nomrec
