#include "nomrec/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nomrec {

struct Term::Node {
  Kind kind;
  Var x;       // Vr variable or Lm binder
  Term a, b;   // Ap children; Lm body lives in a
  mutable std::string canon;
  mutable bool canon_ready = false;
};

Term Term::Vr(Var x) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Vr;
  n->x = x;
  return Term(std::move(n));
}

Term Term::Ap(Term fn, Term arg) {
  if (!fn.valid() || !arg.valid()) throw std::invalid_argument("Ap: empty term");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Ap;
  n->a = std::move(fn);
  n->b = std::move(arg);
  return Term(std::move(n));
}

Term Term::Lm(Var binder, Term body) {
  if (!body.valid()) throw std::invalid_argument("Lm: empty term");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Lm;
  n->x = binder;
  n->a = std::move(body);
  return Term(std::move(n));
}

Term::Kind Term::kind() const { return node_->kind; }
Var Term::vr_var() const {
  if (kind() != Kind::Vr) throw std::logic_error("vr_var on non-variable");
  return node_->x;
}
const Term& Term::ap_fn() const {
  if (kind() != Kind::Ap) throw std::logic_error("ap_fn on non-application");
  return node_->a;
}
const Term& Term::ap_arg() const {
  if (kind() != Kind::Ap) throw std::logic_error("ap_arg on non-application");
  return node_->b;
}
Var Term::lm_binder() const {
  if (kind() != Kind::Lm) throw std::logic_error("lm_binder on non-abstraction");
  return node_->x;
}
const Term& Term::lm_body() const {
  if (kind() != Kind::Lm) throw std::logic_error("lm_body on non-abstraction");
  return node_->a;
}

namespace {

void canon_into(const Term& t, std::vector<Var>& binders, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Vr: {
      Var v = t.vr_var();
      for (std::size_t i = binders.size(); i-- > 0;) {
        if (binders[i] == v) {
          out += 'b';
          out += std::to_string(binders.size() - 1 - i);
          out += ';';
          return;
        }
      }
      out += 'f';
      out += std::to_string(v.index);
      out += ';';
      return;
    }
    case Term::Kind::Ap:
      out += '(';
      canon_into(t.ap_fn(), binders, out);
      canon_into(t.ap_arg(), binders, out);
      out += ')';
      return;
    case Term::Kind::Lm:
      out += 'L';
      binders.push_back(t.lm_binder());
      canon_into(t.lm_body(), binders, out);
      binders.pop_back();
      return;
  }
}

}  // namespace

const std::string& Term::canon() const {
  if (!node_->canon_ready) {
    std::vector<Var> binders;
    std::string out;
    canon_into(*this, binders, out);
    node_->canon = std::move(out);
    node_->canon_ready = true;
  }
  return node_->canon;
}

std::size_t Term::hash() const { return std::hash<std::string>{}(canon()); }

namespace {

bool aeq(const Term& a, const Term& b, std::vector<Var>& ea,
         std::vector<Var>& eb) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Vr: {
      Var va = a.vr_var(), vb = b.vr_var();
      for (std::size_t i = ea.size(); i-- > 0;) {
        bool ha = ea[i] == va, hb = eb[i] == vb;
        if (ha || hb) return ha && hb;  // must hit the same binder level
      }
      return va == vb;  // both free
    }
    case Term::Kind::Ap:
      return aeq(a.ap_fn(), b.ap_fn(), ea, eb) &&
             aeq(a.ap_arg(), b.ap_arg(), ea, eb);
    case Term::Kind::Lm: {
      ea.push_back(a.lm_binder());
      eb.push_back(b.lm_binder());
      bool r = aeq(a.lm_body(), b.lm_body(), ea, eb);
      ea.pop_back();
      eb.pop_back();
      return r;
    }
  }
  return false;
}

}  // namespace

bool alpha_eq(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  std::vector<Var> ea, eb;
  return aeq(a, b, ea, eb);
}

namespace {

Var vswap(Var v, Var x, Var y) { return v == x ? y : v == y ? x : v; }

}  // namespace

Term swap(const Term& t, Var x, Var y) {
  if (x == y) return t;
  switch (t.kind()) {
    case Term::Kind::Vr:
      return Term::Vr(vswap(t.vr_var(), x, y));
    case Term::Kind::Ap:
      return Term::Ap(swap(t.ap_fn(), x, y), swap(t.ap_arg(), x, y));
    case Term::Kind::Lm:
      return Term::Lm(vswap(t.lm_binder(), x, y), swap(t.lm_body(), x, y));
  }
  throw std::logic_error("swap: bad kind");
}

Term permute(const Term& t, const Perm& sigma) {
  if (sigma.is_identity()) return t;
  switch (t.kind()) {
    case Term::Kind::Vr:
      return Term::Vr(sigma.apply(t.vr_var()));
    case Term::Kind::Ap:
      return Term::Ap(permute(t.ap_fn(), sigma), permute(t.ap_arg(), sigma));
    case Term::Kind::Lm:
      return Term::Lm(sigma.apply(t.lm_binder()), permute(t.lm_body(), sigma));
  }
  throw std::logic_error("permute: bad kind");
}

namespace {

void fv_into(const Term& t, std::vector<Var>& bound, std::set<Var>& out) {
  switch (t.kind()) {
    case Term::Kind::Vr: {
      Var v = t.vr_var();
      if (std::find(bound.begin(), bound.end(), v) == bound.end())
        out.insert(v);
      return;
    }
    case Term::Kind::Ap:
      fv_into(t.ap_fn(), bound, out);
      fv_into(t.ap_arg(), bound, out);
      return;
    case Term::Kind::Lm:
      bound.push_back(t.lm_binder());
      fv_into(t.lm_body(), bound, out);
      bound.pop_back();
      return;
  }
}

}  // namespace

std::set<Var> fv(const Term& t) {
  std::set<Var> out;
  std::vector<Var> bound;
  fv_into(t, bound, out);
  return out;
}

VarSet fv_set(const Term& t) { return VarSet::finite(fv(t)); }

bool fresh(Var x, const Term& t) { return fv(t).count(x) == 0; }

Term subst(const Term& t, const Term& s, Var y) {
  switch (t.kind()) {
    case Term::Kind::Vr:
      return t.vr_var() == y ? s : t;
    case Term::Kind::Ap:
      return Term::Ap(subst(t.ap_fn(), s, y), subst(t.ap_arg(), s, y));
    case Term::Kind::Lm: {
      Var b = t.lm_binder();
      if (b == y) return t;  // y shadowed, nothing free below
      const Term& body = t.lm_body();
      if (!fresh(y, body) && !fresh(b, s)) {
        // binder would capture a free variable of s: pick a representative
        // outside everything in play and swap it in
        std::set<Var> avoid = fv(body);
        for (Var v : fv(s)) avoid.insert(v);
        avoid.insert(y);
        avoid.insert(b);
        Var b2 = fresh_var(avoid);
        return Term::Lm(b2, subst(swap(body, b2, b), s, y));
      }
      if (fresh(y, body)) return t;
      return Term::Lm(b, subst(body, s, y));
    }
  }
  throw std::logic_error("subst: bad kind");
}

Term rename(const Term& t, Var x, Var y) { return subst(t, Term::Vr(x), y); }

std::pair<Var, Term> DestL::extract(const VarSet& avoid) const {
  Var b = lm_.lm_binder();
  const Term& body = lm_.lm_body();
  if (!avoid.contains(b)) return {b, body};
  VarSet full = avoid;
  for (Var v : fv(body)) full.insert(v);
  full.insert(b);
  Var b2 = fresh_var(full);
  return {b2, swap(body, b2, b)};
}

DestView dest(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Vr:
      return DestV{t.vr_var()};
    case Term::Kind::Ap:
      return DestA{t.ap_fn(), t.ap_arg()};
    case Term::Kind::Lm:
      return DestL{t};
  }
  throw std::logic_error("dest: bad kind");
}

namespace {

struct Lexer {
  std::string_view s;
  std::size_t i = 0;

  void ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    ws();
    return i >= s.size();
  }
  char peek() {
    ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool eat(char c) {
    ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }
  std::optional<std::string> ident() {
    ws();
    if (i >= s.size() || !ident_start(s[i])) return std::nullopt;
    std::size_t j = i;
    while (j < s.size() && ident_char(s[j])) ++j;
    std::string out(s.substr(i, j - i));
    i = j;
    return out;
  }
  // Peeks an identifier without consuming it.
  std::optional<std::string> peek_ident() {
    std::size_t save = i;
    auto r = ident();
    i = save;
    return r;
  }
};

struct Parser {
  Lexer lx;
  NameTable& names;
  std::string err;

  bool fail(const std::string& m) {
    if (err.empty()) err = m + " at offset " + std::to_string(lx.i);
    return false;
  }

  bool at_lambda() {
    if (lx.peek() == '\\') return true;
    auto id = lx.peek_ident();
    return id && *id == "lam";
  }

  std::optional<Term> lambda() {
    if (!lx.eat('\\')) {
      auto kw = lx.ident();
      if (!kw || *kw != "lam") {
        fail("expected lambda");
        return std::nullopt;
      }
    }
    auto id = lx.ident();
    if (!id) {
      fail("expected binder name");
      return std::nullopt;
    }
    if (*id == "lam") {
      fail("'lam' is reserved");
      return std::nullopt;
    }
    if (!lx.eat('.')) {
      fail("expected '.' after binder");
      return std::nullopt;
    }
    auto body = term();
    if (!body) return std::nullopt;
    return Term::Lm(names.intern(*id), *body);
  }

  std::optional<Term> atom() {
    if (lx.eat('(')) {
      auto t = term();
      if (!t) return std::nullopt;
      if (!lx.eat(')')) {
        fail("expected ')'");
        return std::nullopt;
      }
      return t;
    }
    auto id = lx.ident();
    if (!id) {
      fail("expected term");
      return std::nullopt;
    }
    if (*id == "lam") {
      fail("'lam' is reserved");
      return std::nullopt;
    }
    return Term::Vr(names.intern(*id));
  }

  std::optional<Term> term() {
    if (at_lambda()) return lambda();
    auto head = atom();
    if (!head) return std::nullopt;
    for (;;) {
      char c = lx.peek();
      if (c == '\0' || c == ')') break;
      if (at_lambda()) {
        // trailing abstraction binds the rest: f \x. x  ==  f (\x. x)
        auto lm = lambda();
        if (!lm) return std::nullopt;
        head = Term::Ap(*head, *lm);
        break;
      }
      auto arg = atom();
      if (!arg) return std::nullopt;
      head = Term::Ap(*head, *arg);
    }
    return head;
  }
};

}  // namespace

std::optional<Term> parse_term(const std::string& text, NameTable& names,
                               std::string* error) {
  Parser p{Lexer{text}, names, {}};
  auto t = p.term();
  if (t && !p.lx.done()) {
    p.fail("trailing input");
    t = std::nullopt;
  }
  if (!t && error) *error = p.err.empty() ? "parse error" : p.err;
  return t;
}

namespace {

void print_into(const Term& t, const NameTable* names, std::string& out) {
  auto nm = [&](Var v) {
    return names ? names->name_of(v) : default_name(v);
  };
  switch (t.kind()) {
    case Term::Kind::Vr:
      out += nm(t.vr_var());
      return;
    case Term::Kind::Ap: {
      const Term& f = t.ap_fn();
      const Term& a = t.ap_arg();
      bool pf = f.kind() == Term::Kind::Lm;
      bool pa = a.kind() != Term::Kind::Vr;
      if (pf) out += '(';
      print_into(f, names, out);
      if (pf) out += ')';
      out += ' ';
      if (pa) out += '(';
      print_into(a, names, out);
      if (pa) out += ')';
      return;
    }
    case Term::Kind::Lm:
      out += '\\';
      out += nm(t.lm_binder());
      out += ". ";
      print_into(t.lm_body(), names, out);
      return;
  }
}

}  // namespace

std::string print_term(const Term& t, const NameTable* names) {
  std::string out;
  print_into(t, names, out);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Term& t) {
  return os << print_term(t);
}

namespace {

Var vren(Var v, Var y, Var z) { return v == z ? y : v; }

struct PropArgs {
  const std::vector<Term>& ts;
  const std::vector<Var>& xs;
  const std::vector<Perm>& ps;
  const std::string& name;

  const Term& T(std::size_t i) const {
    if (i >= ts.size())
      throw std::invalid_argument(name + ": needs " + std::to_string(i + 1) +
                                  " term argument(s)");
    return ts[i];
  }
  Var X(std::size_t i) const {
    if (i >= xs.size())
      throw std::invalid_argument(name + ": needs " + std::to_string(i + 1) +
                                  " variable argument(s)");
    return xs[i];
  }
  const Perm& P(std::size_t i) const {
    if (i >= ps.size())
      throw std::invalid_argument(name + ": needs " + std::to_string(i + 1) +
                                  " permutation argument(s)");
    return ps[i];
  }
};

// Evaluates one law instance. Returns {guard satisfied, conclusion holds};
// the conclusion slot is meaningful only when the guard holds.
std::pair<bool, bool> eval_term_prop(const PropArgs& a) {
  const std::string& n = a.name;
  auto Vr = [](Var v) { return Term::Vr(v); };
  auto Lm = [](Var v, const Term& b) { return Term::Lm(v, b); };
  auto Ap = [](const Term& f, const Term& g) { return Term::Ap(f, g); };

  // swap laws
  if (n == "SwVr") {
    Var x = a.X(0), z1 = a.X(1), z2 = a.X(2);
    return {true, swap(Vr(x), z1, z2) == Vr(vswap(x, z1, z2))};
  }
  if (n == "SwAp") {
    Var z1 = a.X(0), z2 = a.X(1);
    const Term &s = a.T(0), &t = a.T(1);
    return {true, swap(Ap(s, t), z1, z2) ==
                      Ap(swap(s, z1, z2), swap(t, z1, z2))};
  }
  if (n == "SwLm") {
    Var x = a.X(0), z1 = a.X(1), z2 = a.X(2);
    const Term& t = a.T(0);
    return {true, swap(Lm(x, t), z1, z2) ==
                      Lm(vswap(x, z1, z2), swap(t, z1, z2))};
  }
  if (n == "SwId") {
    Var z = a.X(0);
    return {true, swap(a.T(0), z, z) == a.T(0)};
  }
  if (n == "SwCp") {
    Var x = a.X(0), y = a.X(1), z1 = a.X(2), z2 = a.X(3);
    const Term& t = a.T(0);
    return {true, swap(swap(t, x, y), z1, z2) ==
                      swap(swap(t, z1, z2), vswap(x, z1, z2), vswap(y, z1, z2))};
  }
  if (n == "SwIv") {
    Var x = a.X(0), y = a.X(1);
    return {true, swap(swap(a.T(0), x, y), x, y) == a.T(0)};
  }
  if (n == "SwFr") {
    Var x = a.X(0), y = a.X(1);
    const Term& t = a.T(0);
    bool g = fresh(x, t) && fresh(y, t);
    return {g, !g || swap(t, x, y) == t};
  }
  if (n == "FrSw") {
    Var z = a.X(0), x = a.X(1), y = a.X(2);
    const Term& t = a.T(0);
    return {true, fresh(z, swap(t, x, y)) == fresh(vswap(z, x, y), t)};
  }
  if (n == "SwFv") {
    Var x = a.X(0), y = a.X(1);
    const Term& t = a.T(0);
    auto f = fv(t);
    bool g = !f.count(x) && !f.count(y);
    return {g, !g || swap(t, x, y) == t};
  }
  if (n == "FvSw") {
    Var z = a.X(0), x = a.X(1), y = a.X(2);
    const Term& t = a.T(0);
    return {true, (fv(swap(t, x, y)).count(z) != 0) ==
                      (fv(t).count(vswap(z, x, y)) != 0)};
  }
  if (n == "SwCg") {
    Var z = a.X(0), x1 = a.X(1), x2 = a.X(2);
    const Term &t1 = a.T(0), &t2 = a.T(1);
    bool g = z != x1 && z != x2 && fresh(z, t1) && fresh(z, t2) &&
             swap(t1, z, x1) == swap(t2, z, x2);
    return {g, !g || Lm(x1, t1) == Lm(x2, t2)};
  }
  if (n == "SwBvr") {
    Var x = a.X(0), x2 = a.X(1);
    const Term& t = a.T(0);
    bool g = x2 != x && fresh(x2, t);
    return {g, !g || Lm(x, t) == Lm(x2, swap(t, x2, x))};
  }

  // permutation laws
  if (n == "PmVr") {
    Var x = a.X(0);
    return {true, permute(Vr(x), a.P(0)) == Vr(a.P(0).apply(x))};
  }
  if (n == "PmAp") {
    const Term &s = a.T(0), &t = a.T(1);
    const Perm& p = a.P(0);
    return {true, permute(Ap(s, t), p) == Ap(permute(s, p), permute(t, p))};
  }
  if (n == "PmLm") {
    Var x = a.X(0);
    const Term& t = a.T(0);
    const Perm& p = a.P(0);
    return {true, permute(Lm(x, t), p) == Lm(p.apply(x), permute(t, p))};
  }
  if (n == "PmId") return {true, permute(a.T(0), Perm()) == a.T(0)};
  if (n == "PmCp") {
    const Term& t = a.T(0);
    const Perm &sg = a.P(0), &ta = a.P(1);
    return {true,
            permute(permute(t, sg), ta) == permute(t, Perm::compose(ta, sg))};
  }
  if (n == "PmFv") {
    const Term& t = a.T(0);
    const Perm& p = a.P(0);
    auto f = fv(t);
    bool g = true;
    for (Var v : p.support())
      if (f.count(v)) {
        g = false;
        break;
      }
    return {g, !g || permute(t, p) == t};
  }
  if (n == "FvPm") {
    Var z = a.X(0);
    const Term& t = a.T(0);
    const Perm& p = a.P(0);
    return {true, (fv(permute(t, p)).count(z) == 0) ==
                      (fv(t).count(p.inverse().apply(z)) == 0)};
  }
  if (n == "PmBvr") {
    Var x = a.X(0), x2 = a.X(1);
    const Term& t = a.T(0);
    bool g = x2 != x && fv(t).count(x2) == 0;
    return {g, !g || Lm(x, t) ==
                         Lm(x2, permute(t, Perm::transposition(x2, x)))};
  }

  // substitution laws
  if (n == "SbVr") {
    Var x = a.X(0), z = a.X(1);
    const Term& s = a.T(0);
    return {true, subst(Vr(x), s, z) == (x == z ? s : Vr(x))};
  }
  if (n == "SbAp") {
    Var z = a.X(0);
    const Term &t1 = a.T(0), &t2 = a.T(1), &s = a.T(2);
    return {true,
            subst(Ap(t1, t2), s, z) == Ap(subst(t1, s, z), subst(t2, s, z))};
  }
  if (n == "SbLm") {
    Var x = a.X(0), z = a.X(1);
    const Term &t = a.T(0), &s = a.T(1);
    bool g = x != z && fresh(x, s);
    return {g, !g || subst(Lm(x, t), s, z) == Lm(x, subst(t, s, z))};
  }
  if (n == "SbCg") {
    Var z = a.X(0), x1 = a.X(1), x2 = a.X(2);
    const Term &t1 = a.T(0), &t2 = a.T(1);
    bool g = z != x1 && z != x2 && fresh(z, t1) && fresh(z, t2) &&
             subst(t1, Vr(z), x1) == subst(t2, Vr(z), x2);
    return {g, !g || Lm(x1, t1) == Lm(x2, t2)};
  }
  if (n == "SbBvr") {
    Var x = a.X(0), x2 = a.X(1);
    const Term& t = a.T(0);
    bool g = x2 != x && fresh(x2, t);
    return {g, !g || Lm(x, t) == Lm(x2, subst(t, Vr(x2), x))};
  }
  if (n == "SbId") {
    Var z = a.X(0);
    return {true, subst(a.T(0), Vr(z), z) == a.T(0)};
  }
  if (n == "SbIm") {
    Var x1 = a.X(0), y = a.X(1);
    const Term &t = a.T(0), &s = a.T(1);
    bool g = x1 != y;
    return {g, !g || subst(subst(t, Vr(x1), y), s, y) == subst(t, Vr(x1), y)};
  }
  if (n == "SbCh") {
    Var y = a.X(0), x1 = a.X(1), x2 = a.X(2);
    const Term &t = a.T(0), &s = a.T(1);
    bool g = y != x2;
    Term u = subst(t, Vr(y), x2);
    return {g, !g || subst(subst(u, Vr(x2), x1), s, x2) == subst(u, s, x1)};
  }
  if (n == "SbCm") {
    Var x = a.X(0), y = a.X(1);
    const Term &t = a.T(0), &s = a.T(1), &s2 = a.T(2);
    bool g = x != y && fresh(y, s) && fresh(x, s2);
    return {g, !g || subst(subst(t, s, x), s2, y) ==
                         subst(subst(t, s2, y), s, x)};
  }
  if (n == "SbFr") {
    Var y = a.X(0);
    const Term &t = a.T(0), &s = a.T(1);
    bool g = fresh(y, t);
    return {g, !g || subst(t, s, y) == t};
  }
  if (n == "FrSb") {
    Var z = a.X(0), y = a.X(1);
    const Term &t = a.T(0), &s = a.T(1);
    bool lhs = fresh(z, subst(t, s, y));
    bool rhs = (z == y || fresh(z, t)) && (fresh(y, t) || fresh(z, s));
    return {true, lhs == rhs};
  }
  if (n == "SbChFr") {
    Var x1 = a.X(0), x2 = a.X(1);
    const Term &t = a.T(0), &s = a.T(1);
    bool g = fresh(x2, t);
    return {g, !g || subst(subst(t, Vr(x2), x1), s, x2) == subst(t, s, x1)};
  }

  // renaming laws
  if (n == "RnVr") {
    Var x = a.X(0), y = a.X(1), z = a.X(2);
    return {true, rename(Vr(x), y, z) == Vr(vren(x, y, z))};
  }
  if (n == "RnAp") {
    Var y = a.X(0), z = a.X(1);
    const Term &t1 = a.T(0), &t2 = a.T(1);
    return {true,
            rename(Ap(t1, t2), y, z) == Ap(rename(t1, y, z), rename(t2, y, z))};
  }
  if (n == "RnLm1") {
    Var x = a.X(0), y = a.X(1), z = a.X(2);
    const Term& t = a.T(0);
    bool g = x != y && x != z;
    return {g, !g || rename(Lm(x, t), y, z) == Lm(x, rename(t, y, z))};
  }
  if (n == "RnLm2") {
    Var x = a.X(0), z = a.X(1);
    const Term& t = a.T(0);
    return {true, rename(Lm(x, t), z, x) == Lm(x, t)};
  }
  if (n == "RnCg") {
    Var z = a.X(0), x1 = a.X(1), x2 = a.X(2);
    const Term &t1 = a.T(0), &t2 = a.T(1);
    bool g = z != x1 && z != x2 && fresh(z, t1) && fresh(z, t2) &&
             rename(t1, z, x1) == rename(t2, z, x2);
    return {g, !g || Lm(x1, t1) == Lm(x2, t2)};
  }
  if (n == "RnBvr") {
    Var x = a.X(0), x2 = a.X(1);
    const Term& t = a.T(0);
    bool g = x2 != x && fresh(x2, t);
    return {g, !g || Lm(x, t) == Lm(x2, rename(t, x2, x))};
  }
  if (n == "RnBvr2") {
    Var x = a.X(0), x2 = a.X(1), y = a.X(2);
    const Term& t = a.T(0);
    bool g = y != x2;
    Term u = rename(t, y, x2);
    return {g, !g || Lm(x, u) == Lm(x2, rename(u, x2, x))};
  }
  if (n == "RnId") {
    Var z = a.X(0);
    return {true, rename(a.T(0), z, z) == a.T(0)};
  }
  if (n == "RnIm") {
    Var x1 = a.X(0), x2 = a.X(1), y = a.X(2);
    const Term& t = a.T(0);
    bool g = x1 != y;
    return {g,
            !g || rename(rename(t, x1, y), x2, y) == rename(t, x1, y)};
  }
  if (n == "RnCh") {
    Var y = a.X(0), x1 = a.X(1), x2 = a.X(2), x3 = a.X(3);
    const Term& t = a.T(0);
    bool g = y != x2;
    Term u = rename(t, y, x2);
    return {g, !g || rename(rename(u, x2, x1), x3, x2) == rename(u, x3, x1)};
  }
  if (n == "RnCm") {
    Var x1 = a.X(0), x2 = a.X(1), y1 = a.X(2), y2 = a.X(3);
    const Term& t = a.T(0);
    bool g = x2 != y1 && y1 != x1 && x1 != y2;
    return {g, !g || rename(rename(t, x2, x1), y2, y1) ==
                         rename(rename(t, y2, y1), x2, x1)};
  }
  if (n == "RnFr") {
    Var x = a.X(0), y = a.X(1);
    const Term& t = a.T(0);
    bool g = fresh(y, t);
    return {g, !g || rename(t, x, y) == t};
  }
  if (n == "FrRn") {
    Var z = a.X(0), x = a.X(1), y = a.X(2);
    const Term& t = a.T(0);
    bool lhs = fresh(z, rename(t, x, y));
    bool rhs = (z == y || fresh(z, t)) && (fresh(y, t) || x != z);
    return {true, lhs == rhs};
  }
  if (n == "FrRn2") {
    Var z = a.X(0), x = a.X(1), y = a.X(2);
    const Term& t = a.T(0);
    bool g = fresh(vren(z, x, y), rename(t, x, y));
    return {g, !g || fresh(z, t)};
  }
  if (n == "RnChFr") {
    Var x1 = a.X(0), x2 = a.X(1), x3 = a.X(2);
    const Term& t = a.T(0);
    bool g = fresh(x2, t);
    return {g, !g || rename(rename(t, x2, x1), x3, x2) == rename(t, x3, x1)};
  }

  // freshness and free-variable structure
  if (n == "FrVr") {
    Var z = a.X(0), x = a.X(1);
    bool g = z != x;
    return {g, !g || fresh(z, Vr(x))};
  }
  if (n == "FrAp") {
    Var z = a.X(0);
    const Term &t1 = a.T(0), &t2 = a.T(1);
    bool g = fresh(z, t1) && fresh(z, t2);
    return {g, !g || fresh(z, Ap(t1, t2))};
  }
  if (n == "FrLm") {
    Var z = a.X(0), x = a.X(1);
    const Term& t = a.T(0);
    bool g = z == x || fresh(z, t);
    return {g, !g || fresh(z, Lm(x, t))};
  }
  if (n == "FvVr") {
    Var x = a.X(0);
    auto f = fv(Vr(x));
    bool ok = true;
    for (Var v : f) ok = ok && v == x;
    return {true, ok};
  }
  if (n == "FvAp") {
    const Term &t1 = a.T(0), &t2 = a.T(1);
    auto f1 = fv(t1), f2 = fv(t2);
    bool ok = true;
    for (Var v : fv(Ap(t1, t2))) ok = ok && (f1.count(v) || f2.count(v));
    return {true, ok};
  }
  if (n == "FvLm") {
    Var x = a.X(0);
    const Term& t = a.T(0);
    auto f = fv(t);
    bool ok = true;
    for (Var v : fv(Lm(x, t))) ok = ok && v != x && f.count(v);
    return {true, ok};
  }

  // finiteness-flavoured laws, decided exactly via the finite fv set
  if (n == "FSupFv") {
    return {true, fv_set(a.T(0)).is_finite()};
  }
  if (n == "FvDPm") {
    Var x = a.X(0);
    const Term& t = a.T(0);
    std::set<Var> av = fv(t);
    av.insert(x);
    Var y0 = fresh_var(av);
    bool moved = permute(t, Perm::transposition(x, y0)) != t;
    return {true, (fv(t).count(x) != 0) == moved};
  }
  if (n == "FvDSw") {
    Var x = a.X(0);
    const Term& t = a.T(0);
    std::set<Var> av = fv(t);
    av.insert(x);
    Var y0 = fresh_var(av);
    bool moved = swap(t, x, y0) != t;
    return {true, (fv(t).count(x) != 0) == moved};
  }
  if (n == "FCB") {
    Var x = a.X(0);
    const Term& t = a.T(0);
    return {true, fv(Term::Lm(x, t)).count(x) == 0};
  }
  if (n == "FSupFr") {
    // the non-fresh variables of a term are exactly its free variables
    return {true, fv_set(a.T(0)).is_finite()};
  }
  if (n == "FrDSw") {
    Var x = a.X(0);
    const Term& t = a.T(0);
    std::set<Var> av = fv(t);
    av.insert(x);
    Var y0 = fresh_var(av);
    bool stable = swap(t, x, y0) == t;
    return {true, fresh(x, t) == stable};
  }
  if (n == "FrDRn") {
    Var x = a.X(0);
    const Term& t = a.T(0);
    std::set<Var> av = fv(t);
    av.insert(x);
    Var y0 = fresh_var(av);
    bool stable = rename(t, y0, x) == t;
    return {true, fresh(x, t) == stable};
  }

  throw std::invalid_argument("unknown term property: " + n);
}

}  // namespace

bool check_term_property(const std::string& name, const std::vector<Term>& ts,
                         const std::vector<Var>& xs,
                         const std::vector<Perm>& ps) {
  auto [g, ok] = eval_term_prop(PropArgs{ts, xs, ps, name});
  return !g || ok;
}

bool term_property_guard(const std::string& name, const std::vector<Term>& ts,
                         const std::vector<Var>& xs,
                         const std::vector<Perm>& ps) {
  return eval_term_prop(PropArgs{ts, xs, ps, name}).first;
}

}  // namespace nomrec
