#include "nomrec/counterexamples.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "nomrec/gen.hpp"

namespace nomrec {

void VarStream::shrink_() {
  while (!prefix_.empty() && b_ >= a_ && prefix_.back() == var(b_ - a_)) {
    prefix_.pop_back();
    b_ -= a_;
  }
}

VarStream VarStream::affine(std::uint64_t stride, std::uint64_t start) {
  return make({}, stride, start);
}

VarStream VarStream::make(std::vector<Var> prefix, std::uint64_t stride,
                          std::uint64_t start,
                          const std::map<std::size_t, Var>& patches) {
  if (stride == 0)
    throw std::invalid_argument("VarStream::make: stride must be positive");
  VarStream s;
  s.prefix_ = std::move(prefix);
  s.a_ = stride;
  s.b_ = start;
  if (!patches.empty()) {
    // Unfold the tail far enough to make every patched position explicit.
    std::size_t top = patches.rbegin()->first;
    while (s.prefix_.size() <= top) {
      s.prefix_.push_back(var(s.b_));
      s.b_ += s.a_;
    }
    for (const auto& [pos, v] : patches) s.prefix_[pos] = v;
  }
  s.shrink_();
  return s;
}

Var VarStream::at(std::size_t i) const {
  if (i < prefix_.size()) return prefix_[i];
  return var(a_ * (i - prefix_.size()) + b_);
}

VarSet VarStream::vars() const {
  VarSet s = VarSet::symbolic(a_, b_);
  for (Var v : prefix_) s.insert(v);
  return s;
}

std::string VarStream::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < prefix_.size(); ++i) {
    if (i) os << ", ";
    os << default_name(prefix_[i]);
  }
  if (!prefix_.empty()) os << " ";
  os << "| v(" << a_ << "*i+" << b_ << ")]";
  return os.str();
}

VarStream stream_map(const Perm& sigma, const VarStream& xs) {
  if (sigma.is_identity()) return xs;
  std::vector<Var> pre;
  pre.reserve(xs.prefix().size());
  for (Var v : xs.prefix()) pre.push_back(sigma.apply(v));
  // Tail positions move only where the value sits in sigma's support; unfold
  // up to the last such position and keep the rest affine.
  std::uint64_t a = xs.stride(), b = xs.start();
  std::optional<std::uint64_t> last;
  for (Var v : sigma.support()) {
    if (v.index >= b && (v.index - b) % a == 0) {
      std::uint64_t j = (v.index - b) / a;
      if (!last || j > *last) last = j;
    }
  }
  if (last) {
    for (std::uint64_t j = 0; j <= *last; ++j)
      pre.push_back(sigma.apply(var(a * j + b)));
    b += a * (*last + 1);
  }
  return VarStream::make(std::move(pre), a, b);
}

VarStream stream_rem(Var y, const VarStream& xs) {
  std::vector<Var> pre;
  pre.reserve(xs.prefix().size());
  for (Var v : xs.prefix())
    if (v != y) pre.push_back(v);
  std::uint64_t a = xs.stride(), b = xs.start();
  if (y.index >= b && (y.index - b) % a == 0) {
    std::uint64_t k = (y.index - b) / a;
    for (std::uint64_t j = 0; j < k; ++j) pre.push_back(var(a * j + b));
    b += a * (k + 1);
  }
  return VarStream::make(std::move(pre), a, b);
}

Term ti(std::size_t i) {
  Term t = Term::Vr(var(0));
  for (std::size_t k = 0; k <= i; ++k) t = Term::Lm(var(0), t);
  return t;
}

std::optional<std::size_t> ti_index(const Term& t) {
  if (!t.valid()) return std::nullopt;
  Term cur = t;
  std::size_t k = 0;
  Var inner = var(0);
  while (cur.kind() == Term::Kind::Lm) {
    inner = cur.lm_binder();
    cur = cur.lm_body();
    ++k;
  }
  if (k == 0 || cur.kind() != Term::Kind::Vr || cur.vr_var() != inner)
    return std::nullopt;
  return k - 1;
}

namespace {

const Term& t0() {
  static const Term t = ti(0);
  return t;
}

bool is_term(const StreamCarrier& c) { return std::holds_alternative<Term>(c); }

VarStream sample_varstream(std::mt19937_64& rng) {
  // Stride 1 throughout: value sets of any two samples then sit in one
  // affine family, so set unions stay representable.
  std::uniform_int_distribution<int> len(0, 3), pv(0, 5), st(0, 7);
  std::vector<Var> pre;
  int n = len(rng);
  for (int i = 0; i < n; ++i) pre.push_back(var(pv(rng)));
  return VarStream::make(std::move(pre), 1, 100 + st(rng));
}

Var exchanged(Var v, Var z1, Var z2) {
  return v == z1 ? z2 : v == z2 ? z1 : v;
}

}  // namespace

Model<StreamCarrier> stream_model() {
  Model<StreamCarrier> m;
  m.sig = sigma_of(2);
  m.eq = [](const StreamCarrier& a, const StreamCarrier& b) {
    if (is_term(a) != is_term(b)) return false;
    if (is_term(a)) return alpha_eq(std::get<Term>(a), std::get<Term>(b));
    return std::get<VarStream>(a) == std::get<VarStream>(b);
  };
  m.show = [](const StreamCarrier& c) {
    if (is_term(c)) return print_term(std::get<Term>(c));
    return std::get<VarStream>(c).to_string();
  };
  m.sample = [](std::mt19937_64& rng) -> StreamCarrier {
    if (std::uniform_int_distribution<int>(0, 3)(rng) < 2)
      return sample_term(rng, 6);
    return sample_varstream(rng);
  };
  m.VrD = [](Var x) -> StreamCarrier { return Term::Vr(x); };
  m.ApD = [](const StreamCarrier& f, const StreamCarrier& a) -> StreamCarrier {
    if (!is_term(f)) {
      const VarStream& xs = std::get<VarStream>(f);
      if (is_term(a))
        if (auto i = ti_index(std::get<Term>(a)))
          return Term::Vr(xs.at(*i));
      return t0();
    }
    if (!is_term(a)) return t0();
    return Term::Ap(std::get<Term>(f), std::get<Term>(a));
  };
  m.LmD = [](Var y, const StreamCarrier& c) -> StreamCarrier {
    if (is_term(c)) return Term::Lm(y, std::get<Term>(c));
    return stream_rem(y, std::get<VarStream>(c));
  };
  m.permD = [](const StreamCarrier& c, const Perm& p) -> StreamCarrier {
    if (is_term(c)) return permute(std::get<Term>(c), p);
    return stream_map(p, std::get<VarStream>(c));
  };
  m.fvD = [](const StreamCarrier& c) {
    if (is_term(c)) return fv_set(std::get<Term>(c));
    return std::get<VarStream>(c).vars();
  };
  return m;
}

Model<AdjoinCarrier> adjoin_model() {
  const Var x = var(0);
  Model<AdjoinCarrier> m;
  m.sig = sigma_of(4);
  m.eq = [](const AdjoinCarrier& a, const AdjoinCarrier& b) {
    bool ta = std::holds_alternative<Term>(a);
    if (ta != std::holds_alternative<Term>(b)) return false;
    if (!ta) return true;
    return alpha_eq(std::get<Term>(a), std::get<Term>(b));
  };
  m.show = [](const AdjoinCarrier& c) -> std::string {
    if (std::holds_alternative<Term>(c)) return print_term(std::get<Term>(c));
    return "a";
  };
  m.sample = [](std::mt19937_64& rng) -> AdjoinCarrier {
    if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) return AdjoinA{};
    return sample_term(rng, 6);
  };
  auto lower = [x](const AdjoinCarrier& c) {
    if (std::holds_alternative<Term>(c)) return std::get<Term>(c);
    return Term::Vr(x);
  };
  m.VrD = [](Var v) -> AdjoinCarrier { return Term::Vr(v); };
  m.ApD = [lower](const AdjoinCarrier& f, const AdjoinCarrier& a) -> AdjoinCarrier {
    return Term::Ap(lower(f), lower(a));
  };
  m.LmD = [lower](Var y, const AdjoinCarrier& c) -> AdjoinCarrier {
    return Term::Lm(y, lower(c));
  };
  m.swapD = [x](const AdjoinCarrier& c, Var z1, Var z2) -> AdjoinCarrier {
    if (std::holds_alternative<Term>(c))
      return swap(std::get<Term>(c), z1, z2);
    return Term::Vr(exchanged(x, z1, z2));
  };
  m.fvD = [](const AdjoinCarrier& c) {
    if (std::holds_alternative<Term>(c)) return fv_set(std::get<Term>(c));
    return VarSet::all();
  };
  return m;
}

namespace {

std::string show_stream_inst(const VarStream& xs, const Perm& sigma,
                             std::size_t i) {
  std::ostringstream os;
  os << "(xs=" << xs.to_string() << ", sigma=" << sigma.to_string()
     << ", i=" << i << ")";
  return os.str();
}

// First position in xs, scanning the prefix and the first ten tail slots,
// whose value differs from y. Affine tails are injective, so at most one
// tail slot can miss.
Var witness_value(const VarStream& xs, Var y) {
  for (std::size_t i = 0; i < xs.prefix().size() + 10; ++i)
    if (xs.at(i) != y) return xs.at(i);
  return var(y.index + 1);  // unreachable
}

}  // namespace

PropReport obstruction_r1(int n, std::uint64_t seed) {
  PropReport rep;
  std::mt19937_64 rng(seed ^ 0x7c6d5e4f3a2b1908ull);
  std::uniform_int_distribution<int> pos(0, 9), pv(0, 5), coin(0, 2);

  // Step 1: on streams, any map action obeying the application law is forced
  // pointwise, because position i can be read off as Ap xs ti.
  {
    PropLine L;
    L.name = "PmApForcesMap";
    for (int r = 0; r < n; ++r) {
      VarStream xs = sample_varstream(rng);
      Var z = xs.at(pos(rng));
      Var w = coin(rng) ? var(pv(rng)) : xs.at(pos(rng));
      Perm sigma = Perm::transposition(z, w);
      std::size_t i = pos(rng);
      ++L.n;
      ++L.hits;
      if (stream_map(sigma, xs).at(i) != sigma.apply(xs.at(i))) {
        L.pass = false;
        if (L.cex.empty())
          L.cex = "PmApForcesMap" + show_stream_inst(xs, sigma, i);
      }
    }
    rep.lines.push_back(std::move(L));
  }

  // Step 2: with the map forced, every candidate variable y is free in every
  // stream: exchanging y with a value z the stream does carry moves it.
  {
    PropLine L;
    L.name = "FvDPmForcesAllVars";
    for (int r = 0; r < n; ++r) {
      VarStream xs = sample_varstream(rng);
      Var y = (r % 3 == 0) ? xs.at(pos(rng)) : var(pv(rng) + (r % 2 ? 0 : 40));
      Var z = witness_value(xs, y);
      ++L.n;
      ++L.hits;
      if (stream_map(Perm::transposition(z, y), xs) == xs) {
        L.pass = false;
        if (L.cex.empty())
          L.cex = "FvDPmForcesAllVars(xs=" + xs.to_string() +
                  ", y=" + default_name(y) + ", z=" + default_name(z) + ")";
      }
    }
    rep.lines.push_back(std::move(L));
  }

  // Step 3: the freshness side of the binder condition now has no candidate:
  // x stays free in Lm x xs, witnessed by a value exchange that moves the
  // abstraction image. Every candidate is refuted, so the line fails.
  {
    PropLine L;
    L.name = "FCB";
    L.heuristic = true;
    for (int k = 0; k < 8; ++k) {
      Var x = var(7 + k);
      VarStream xs = sample_varstream(rng);
      VarStream m = stream_rem(x, xs);
      Var z = witness_value(m, x);
      ++L.n;
      ++L.hits;
      bool moved = !(stream_map(Perm::transposition(x, z), m) == m);
      if (moved) {
        // x in FV'(Lm x xs): the candidate fails the freshness requirement.
        L.pass = false;
        if (L.cex.empty())
          L.cex = "FCB(x=" + default_name(x) + " still free in Lm x " +
                  xs.to_string() + "; exchange with " + default_name(z) +
                  " moves it)";
      }
    }
    rep.lines.push_back(std::move(L));
  }
  return rep;
}

PropReport obstruction_r2(int n, std::uint64_t seed) {
  PropReport rep;
  const Var x = var(0);
  std::mt19937_64 rng(seed ^ 0x2f8e7d6c5b4a3918ull);
  std::uniform_int_distribution<std::uint64_t> pv(0, 5);

  // Step 1: on plain terms the constructor laws pin any candidate action to
  // the standard one, clause by clause.
  {
    PropLine L;
    L.name = "PmExtendsTermPerm";
    for (int r = 0; r < n; ++r) {
      Perm sigma = Perm::transposition(var(pv(rng)), var(pv(rng)));
      Var v = var(pv(rng));
      Term t1 = sample_term(rng, 6), t2 = sample_term(rng, 6);
      Var y = var(pv(rng));
      bool ok =
          alpha_eq(permute(Term::Vr(v), sigma), Term::Vr(sigma.apply(v))) &&
          alpha_eq(permute(Term::Ap(t1, t2), sigma),
                   Term::Ap(permute(t1, sigma), permute(t2, sigma))) &&
          alpha_eq(permute(Term::Lm(y, t1), sigma),
                   Term::Lm(sigma.apply(y), permute(t1, sigma)));
      ++L.n;
      ++L.hits;
      if (!ok) {
        L.pass = false;
        if (L.cex.empty())
          L.cex = "PmExtendsTermPerm(sigma=" + sigma.to_string() +
                  ", t=" + print_term(t1) + ")";
      }
    }
    rep.lines.push_back(std::move(L));
  }

  // Step 2: the standard action is invertible on terms. A candidate action
  // on terms-plus-point is a bijection whose term part is already a
  // bijection, so the extra point must map to itself.
  {
    PropLine L;
    L.name = "PermBijectiveOnTerms";
    for (int r = 0; r < n; ++r) {
      Term t = sample_term(rng, 6);
      Perm sigma = Perm::from_transpositions_lr(
          {{var(pv(rng)), var(pv(rng))}, {var(pv(rng)), var(pv(rng))}});
      ++L.n;
      ++L.hits;
      if (!alpha_eq(permute(permute(t, sigma), sigma.inverse()), t)) {
        L.pass = false;
        if (L.cex.empty())
          L.cex = "PermBijectiveOnTerms(sigma=" + sigma.to_string() +
                  ", t=" + print_term(t) + ")";
      }
    }
    rep.lines.push_back(std::move(L));
  }

  // Step 3: the point is fixed, so the application law forces Ap a a to be
  // its own image under every action. Its value Ap (Vr v0) (Vr v0) moves
  // whenever v0 does: contradiction.
  {
    PropLine L;
    L.name = "ApContradictionAtA";
    const Term apaa = Term::Ap(Term::Vr(x), Term::Vr(x));
    for (int r = 0; r < n; ++r) {
      Perm sigma = r == 0 ? Perm::transposition(var(0), var(1))
                          : Perm::transposition(var(pv(rng)), var(pv(rng)));
      ++L.n;
      if (sigma.apply(x) == x) continue;
      ++L.hits;
      Term moved = permute(apaa, sigma);
      if (!alpha_eq(moved, apaa)) {
        L.pass = false;
        if (L.cex.empty())
          L.cex = "ApContradictionAtA(forced " + print_term(apaa) +
                  "[" + sigma.to_string() + "] = " + print_term(apaa) +
                  ", actual " + print_term(moved) + ")";
      }
    }
    rep.lines.push_back(std::move(L));
  }
  return rep;
}

bool separation_witnessed(const PropReport& rep) {
  if (rep.lines.size() < 2) return false;
  for (std::size_t i = 0; i + 1 < rep.lines.size(); ++i)
    if (!rep.lines[i].pass) return false;
  return !rep.lines.back().pass;
}

}  // namespace nomrec
