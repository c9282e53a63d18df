#include "nomrec/coterm.hpp"

#include <algorithm>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace nomrec {
namespace {

constexpr std::size_t kStateCap = 131072;

Var exch(Var v, Var z1, Var z2) {
  if (v == z1) return z2;
  if (v == z2) return z1;
  return v;
}

// Matched-binder stack for alpha-bisimulation. An entry is kept only while
// it is the latest binding for its left name or for its right name; dead
// entries are dropped so the set of stacks reachable over two finite
// alphabets is finite. Position in the pruned stack is the canonical name.
using BindStack = std::vector<std::pair<Var, Var>>;

BindStack push_prune(BindStack env, Var x1, Var x2) {
  env.emplace_back(x1, x2);
  BindStack out;
  const std::size_t n = env.size();
  for (std::size_t j = 0; j < n; ++j) {
    bool last_l = true, last_r = true;
    for (std::size_t k = j + 1; k < n; ++k) {
      if (env[k].first == env[j].first) last_l = false;
      if (env[k].second == env[j].second) last_r = false;
    }
    if (last_l || last_r) out.push_back(env[j]);
  }
  return out;
}

bool leaf_match(const BindStack& env, Var x, Var y) {
  std::optional<std::size_t> pl, pr;
  for (std::size_t j = env.size(); j-- > 0;) {
    if (!pl && env[j].first == x) pl = j;
    if (!pr && env[j].second == y) pr = j;
  }
  if (pl && pr) return *pl == *pr;
  if (!pl && !pr) return x == y;
  return false;
}

std::string ser_env(const BindStack& env) {
  std::string out;
  for (const auto& [l, r] : env) {
    out += std::to_string(l.index);
    out += ':';
    out += std::to_string(r.index);
    out += ';';
  }
  return out;
}

std::set<Var> names_upto(const CoTerm& t, int depth) {
  std::set<Var> out;
  std::set<std::pair<CoState, int>> seen;
  std::vector<std::pair<CoState, int>> work{{t.root(), depth}};
  while (!work.empty()) {
    auto [s, d] = work.back();
    work.pop_back();
    if (d <= 0 || !seen.insert({s, d}).second) continue;
    CoStep st = t.step(s);
    if (auto* v = std::get_if<CoV>(&st)) {
      out.insert(v->x);
    } else if (auto* ap = std::get_if<CoA>(&st)) {
      work.push_back({ap->fn, d - 1});
      work.push_back({ap->arg, d - 1});
    } else {
      const auto& l = std::get<CoL>(st);
      out.insert(l.binder);
      work.push_back({l.body, d - 1});
    }
  }
  return out;
}

}  // namespace

CoTerm CoTerm::from_table(std::vector<CoStep> table, CoState root) {
  const std::size_t n = table.size();
  auto check = [n](CoState s, const char* what) {
    if (s >= n)
      throw std::invalid_argument(std::string("CoTerm::from_table: ") + what +
                                  " references state " + std::to_string(s) +
                                  " outside the table");
  };
  for (const CoStep& st : table) {
    if (const auto* ap = std::get_if<CoA>(&st)) {
      check(ap->fn, "an application");
      check(ap->arg, "an application");
    } else if (const auto* l = std::get_if<CoL>(&st)) {
      check(l->body, "an abstraction");
    }
  }
  check(root, "the root");
  auto shared = std::make_shared<std::vector<CoStep>>(std::move(table));
  return from_fn([shared](CoState s) { return shared->at(s); }, root, true);
}

CoTerm CoTerm::from_fn(std::function<CoStep(CoState)> dest, CoState root,
                       bool regular) {
  if (!dest) throw std::invalid_argument("CoTerm::from_fn: empty destructor");
  CoTerm t;
  t.dest_ = std::move(dest);
  t.root_ = root;
  t.regular_ = regular;
  return t;
}

CoTerm CoTerm::at(CoState s) const {
  CoTerm t(*this);
  t.root_ = s;
  return t;
}

std::map<CoState, CoStep> CoTerm::reachable() const {
  if (!regular_)
    throw std::invalid_argument(
        "CoTerm::reachable: exact traversal needs a regular coterm");
  std::map<CoState, CoStep> out;
  std::vector<CoState> work{root_};
  while (!work.empty()) {
    CoState s = work.back();
    work.pop_back();
    if (out.count(s)) continue;
    CoStep st = dest_(s);
    if (out.size() >= kStateCap)
      throw std::logic_error(
          "CoTerm::reachable: state walk exceeded the regular cap");
    if (const auto* ap = std::get_if<CoA>(&st)) {
      work.push_back(ap->fn);
      work.push_back(ap->arg);
    } else if (const auto* l = std::get_if<CoL>(&st)) {
      work.push_back(l->body);
    }
    out.emplace(s, std::move(st));
  }
  return out;
}

std::set<Var> CoTerm::mentioned() const {
  std::set<Var> out;
  for (const auto& [s, st] : reachable()) {
    (void)s;
    if (const auto* v = std::get_if<CoV>(&st))
      out.insert(v->x);
    else if (const auto* l = std::get_if<CoL>(&st))
      out.insert(l->binder);
  }
  return out;
}

CoTerm embed(const Term& t) {
  std::vector<CoStep> table;
  std::function<CoState(const Term&)> go = [&](const Term& u) -> CoState {
    switch (u.kind()) {
      case Term::Kind::Vr:
        table.push_back(CoV{u.vr_var()});
        break;
      case Term::Kind::Ap: {
        CoState f = go(u.ap_fn());
        CoState a = go(u.ap_arg());
        table.push_back(CoA{f, a});
        break;
      }
      case Term::Kind::Lm: {
        CoState b = go(u.lm_body());
        table.push_back(CoL{u.lm_binder(), b});
        break;
      }
    }
    return static_cast<CoState>(table.size() - 1);
  };
  CoState r = go(t);
  return CoTerm::from_table(std::move(table), r);
}

namespace {

// Copies t's reachable table onto the end of out, remapping state ids.
// Returns the new id of t's root.
CoState append_table(std::vector<CoStep>& out, const CoTerm& t) {
  std::map<CoState, CoStep> reach = t.reachable();
  std::map<CoState, CoState> remap;
  CoState next = out.size();
  for (const auto& [s, st] : reach) remap[s] = next++;
  for (const auto& [s, st] : reach) {
    (void)s;
    if (const auto* v = std::get_if<CoV>(&st)) {
      out.push_back(*v);
    } else if (const auto* a = std::get_if<CoA>(&st)) {
      out.push_back(CoA{remap.at(a->fn), remap.at(a->arg)});
    } else {
      const auto& l = std::get<CoL>(st);
      out.push_back(CoL{l.binder, remap.at(l.body)});
    }
  }
  return remap.at(t.root());
}

// Lazy pairing: id 0 is the new root; ids 2k+1 mirror a's state k and ids
// 2k+2 mirror b's state k.
CoStep pair_step(const CoTerm& side, CoState s, bool left) {
  auto wrap = [left](CoState c) { return left ? 2 * c + 1 : 2 * c + 2; };
  CoStep st = side.step(s);
  if (const auto* v = std::get_if<CoV>(&st)) return *v;
  if (const auto* a = std::get_if<CoA>(&st))
    return CoA{wrap(a->fn), wrap(a->arg)};
  const auto& l = std::get<CoL>(st);
  return CoL{l.binder, wrap(l.body)};
}

}  // namespace

CoTerm co_app(const CoTerm& fn, const CoTerm& arg) {
  if (fn.regular() && arg.regular()) {
    std::vector<CoStep> table{CoA{0, 0}};
    CoState f = append_table(table, fn);
    CoState a = append_table(table, arg);
    table[0] = CoA{f, a};
    return CoTerm::from_table(std::move(table), 0);
  }
  CoTerm l = fn, r = arg;
  return CoTerm::from_fn(
      [l, r](CoState c) -> CoStep {
        if (c == 0) return CoA{2 * l.root() + 1, 2 * r.root() + 2};
        if (c % 2 == 1) return pair_step(l, (c - 1) / 2, true);
        return pair_step(r, (c - 2) / 2, false);
      },
      0, false);
}

CoTerm co_lam(Var binder, const CoTerm& body) {
  if (body.regular()) {
    std::vector<CoStep> table{CoL{binder, 0}};
    CoState b = append_table(table, body);
    table[0] = CoL{binder, b};
    return CoTerm::from_table(std::move(table), 0);
  }
  CoTerm inner = body;
  return CoTerm::from_fn(
      [binder, inner](CoState c) -> CoStep {
        if (c == 0) return CoL{binder, inner.root() + 1};
        CoStep st = inner.step(c - 1);
        if (const auto* v = std::get_if<CoV>(&st)) return *v;
        if (const auto* a = std::get_if<CoA>(&st))
          return CoA{a->fn + 1, a->arg + 1};
        const auto& l = std::get<CoL>(st);
        return CoL{l.binder, l.body + 1};
      },
      0, false);
}

std::string co_key(const CoTerm& t) {
  std::map<CoState, CoStep> reach = t.reachable();  // validates regularity
  std::map<CoState, CoState> order;
  std::vector<CoState> queue{t.root()};
  order[t.root()] = 0;
  auto visit = [&](CoState s) {
    if (order.emplace(s, order.size()).second) queue.push_back(s);
  };
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const CoStep& st = reach.at(queue[i]);
    if (const auto* a = std::get_if<CoA>(&st)) {
      visit(a->fn);
      visit(a->arg);
    } else if (const auto* l = std::get_if<CoL>(&st)) {
      visit(l->body);
    }
  }
  std::string out;
  for (CoState s : queue) {
    const CoStep& st = reach.at(s);
    if (const auto* v = std::get_if<CoV>(&st)) {
      out += "V" + std::to_string(v->x.index) + ";";
    } else if (const auto* a = std::get_if<CoA>(&st)) {
      out += "A" + std::to_string(order.at(a->fn)) + "," +
             std::to_string(order.at(a->arg)) + ";";
    } else {
      const auto& l = std::get<CoL>(st);
      out += "L" + std::to_string(l.binder.index) + ":" +
             std::to_string(order.at(l.body)) + ";";
    }
  }
  return out;
}

std::string truncate(const CoTerm& t, int depth, const NameTable* names) {
  auto nm = [&](Var v) { return names ? names->name_of(v) : default_name(v); };
  std::function<std::string(CoState, int)> go = [&](CoState s,
                                                    int d) -> std::string {
    if (d <= 0) return "...";
    CoStep st = t.step(s);
    if (const auto* v = std::get_if<CoV>(&st)) return nm(v->x);
    if (const auto* ap = std::get_if<CoA>(&st)) {
      // Abstractions directly under an application get their own parens,
      // otherwise the lambda body would swallow the other operand.
      auto wrap = [&](CoState c) {
        std::string out = go(c, d - 1);
        if (d - 1 > 0 && std::holds_alternative<CoL>(t.step(c)))
          out = "(" + out + ")";
        return out;
      };
      return "(" + wrap(ap->fn) + " " + wrap(ap->arg) + ")";
    }
    const auto& l = std::get<CoL>(st);
    return "\\" + nm(l.binder) + ". " + go(l.body, d - 1);
  };
  return go(t.root(), depth);
}

CoTerm parse_coterm_spec(const std::string& text, NameTable& names,
                         std::map<std::string, CoState>* states_out) {
  struct Line {
    std::string name, form, a, b;
  };
  std::vector<Line> defs;
  std::string root_name;
  bool have_root = false;

  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    std::istringstream ls(raw);
    std::string head;
    if (!(ls >> head) || head[0] == '#') continue;
    if (head == "root") {
      std::string nm, extra;
      if (!(ls >> nm) || (ls >> extra))
        throw std::invalid_argument("coterm spec: bad root line: " + raw);
      if (have_root)
        throw std::invalid_argument("coterm spec: duplicate root line");
      root_name = nm;
      have_root = true;
      continue;
    }
    if (head != "state")
      throw std::invalid_argument("coterm spec: bad line: " + raw);
    Line ln;
    std::string eq;
    if (!(ls >> ln.name >> eq >> ln.form) || eq != "=")
      throw std::invalid_argument("coterm spec: bad line: " + raw);
    std::string extra;
    if (ln.form == "V") {
      if (!(ls >> ln.a) || (ls >> extra))
        throw std::invalid_argument("coterm spec: bad line: " + raw);
    } else if (ln.form == "A" || ln.form == "L") {
      if (!(ls >> ln.a >> ln.b) || (ls >> extra))
        throw std::invalid_argument("coterm spec: bad line: " + raw);
    } else {
      throw std::invalid_argument("coterm spec: bad line: " + raw);
    }
    defs.push_back(std::move(ln));
  }

  std::map<std::string, CoState> ids;
  for (const Line& ln : defs) {
    if (!ids.emplace(ln.name, static_cast<CoState>(ids.size())).second)
      throw std::invalid_argument("coterm spec: duplicate state " + ln.name);
  }
  auto resolve = [&](const std::string& nm) -> CoState {
    auto f = ids.find(nm);
    if (f == ids.end())
      throw std::invalid_argument("coterm spec: unknown state " + nm);
    return f->second;
  };

  std::vector<CoStep> table;
  table.reserve(defs.size());
  for (const Line& ln : defs) {
    if (ln.form == "V")
      table.push_back(CoV{names.intern(ln.a)});
    else if (ln.form == "A")
      table.push_back(CoA{resolve(ln.a), resolve(ln.b)});
    else
      table.push_back(CoL{names.intern(ln.a), resolve(ln.b)});
  }
  if (!have_root) throw std::invalid_argument("coterm spec: missing root");
  CoState root = resolve(root_name);
  if (states_out) *states_out = ids;
  return CoTerm::from_table(std::move(table), root);
}

CoDestView co_dest(const CoTerm& t) {
  CoStep st = t.step();
  if (const auto* v = std::get_if<CoV>(&st)) return CoDestV{v->x};
  if (const auto* ap = std::get_if<CoA>(&st))
    return CoDestA{t.at(ap->fn), t.at(ap->arg)};
  const auto& l = std::get<CoL>(st);
  return CoDestL(l.binder, t.at(l.body));
}

std::pair<Var, CoTerm> CoDestL::extract(const VarSet& avoid) const {
  if (!avoid.is_finite())
    throw std::invalid_argument("CoDestL::extract: avoid set must be finite");
  if (!avoid.contains(x_)) return {x_, body_};
  std::set<Var> used = avoid.finite_elems();
  used.insert(x_);
  std::set<Var> body_names =
      body_.regular() ? body_.mentioned() : names_upto(body_, 48);
  used.insert(body_names.begin(), body_names.end());
  Var fresh = fresh_var(used);
  return {fresh, co_swap(body_, fresh, x_)};
}

CoTerm co_perm(const CoTerm& t, const Perm& sigma) {
  if (sigma.is_identity()) return t;
  CoTerm base = t;
  return CoTerm::from_fn(
      [base, sigma](CoState s) -> CoStep {
        CoStep st = base.step(s);
        if (const auto* v = std::get_if<CoV>(&st))
          return CoV{sigma.apply(v->x)};
        if (const auto* ap = std::get_if<CoA>(&st)) return *ap;
        const auto& l = std::get<CoL>(st);
        return CoL{sigma.apply(l.binder), l.body};
      },
      t.root(), t.regular());
}

CoTerm co_swap(const CoTerm& t, Var z1, Var z2) {
  return co_perm(t, Perm::transposition(z1, z2));
}

bool co_alpha_eq(const CoTerm& a, const CoTerm& b) {
  if (!a.regular() || !b.regular())
    throw std::invalid_argument(
        "co_alpha_eq: exact bisimulation needs regular coterms");
  struct Item {
    CoState s1, s2;
    BindStack env;
  };
  struct Node {
    bool ok = true;
    std::vector<std::size_t> succs;
  };
  std::map<std::string, std::size_t> seen;
  std::vector<Node> nodes;
  std::vector<Item> items;
  auto intern = [&](Item it) -> std::size_t {
    std::string k = std::to_string(it.s1) + "|" + std::to_string(it.s2) + "|" +
                    ser_env(it.env);
    auto f = seen.find(k);
    if (f != seen.end()) return f->second;
    std::size_t id = nodes.size();
    seen.emplace(std::move(k), id);
    nodes.emplace_back();
    items.push_back(std::move(it));
    return id;
  };
  intern(Item{a.root(), b.root(), {}});
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Item it = items[i];
    CoStep s1 = a.step(it.s1);
    CoStep s2 = b.step(it.s2);
    if (s1.index() != s2.index()) {
      nodes[i].ok = false;
      continue;
    }
    if (const auto* v1 = std::get_if<CoV>(&s1)) {
      nodes[i].ok = leaf_match(it.env, v1->x, std::get<CoV>(s2).x);
    } else if (const auto* a1 = std::get_if<CoA>(&s1)) {
      const auto& a2 = std::get<CoA>(s2);
      std::size_t l = intern(Item{a1->fn, a2.fn, it.env});
      std::size_t r = intern(Item{a1->arg, a2.arg, it.env});
      nodes[i].succs = {l, r};
    } else {
      const auto& l1 = std::get<CoL>(s1);
      const auto& l2 = std::get<CoL>(s2);
      std::size_t c = intern(
          Item{l1.body, l2.body, push_prune(it.env, l1.binder, l2.binder)});
      nodes[i].succs = {c};
    }
  }
  std::vector<char> refuted(nodes.size(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (refuted[i]) continue;
      bool bad = !nodes[i].ok;
      for (std::size_t s : nodes[i].succs) bad = bad || refuted[s];
      if (bad) {
        refuted[i] = 1;
        changed = true;
      }
    }
  }
  return !refuted[0];
}

bool co_alpha_eq_upto(const CoTerm& a, const CoTerm& b, int depth) {
  std::map<std::string, bool> memo;
  std::function<bool(CoState, CoState, const BindStack&, int)> go =
      [&](CoState s1, CoState s2, const BindStack& env, int d) -> bool {
    if (d <= 0) return true;
    std::string k = std::to_string(s1) + "|" + std::to_string(s2) + "|" +
                    std::to_string(d) + "|" + ser_env(env);
    auto f = memo.find(k);
    if (f != memo.end()) return f->second;
    CoStep t1 = a.step(s1);
    CoStep t2 = b.step(s2);
    bool r;
    if (t1.index() != t2.index()) {
      r = false;
    } else if (const auto* v1 = std::get_if<CoV>(&t1)) {
      r = leaf_match(env, v1->x, std::get<CoV>(t2).x);
    } else if (const auto* a1 = std::get_if<CoA>(&t1)) {
      const auto& a2 = std::get<CoA>(t2);
      r = go(a1->fn, a2.fn, env, d - 1) && go(a1->arg, a2.arg, env, d - 1);
    } else {
      const auto& l1 = std::get<CoL>(t1);
      const auto& l2 = std::get<CoL>(t2);
      r = go(l1.body, l2.body, push_prune(env, l1.binder, l2.binder), d - 1);
    }
    memo.emplace(std::move(k), r);
    return r;
  };
  return go(a.root(), b.root(), {}, depth);
}

bool co_fresh(Var x, const CoTerm& t) {
  auto table = t.reachable();
  std::map<CoState, bool> fr;
  for (const auto& [s, st] : table) {
    (void)st;
    fr[s] = true;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [s, st] : table) {
      if (!fr[s]) continue;
      bool ok = true;
      if (const auto* v = std::get_if<CoV>(&st))
        ok = !(v->x == x);
      else if (const auto* ap = std::get_if<CoA>(&st))
        ok = fr[ap->fn] && fr[ap->arg];
      else {
        const auto& l = std::get<CoL>(st);
        ok = l.binder == x || fr[l.body];
      }
      if (!ok) {
        fr[s] = false;
        changed = true;
      }
    }
  }
  return fr[t.root()];
}

bool co_fresh_upto(Var x, const CoTerm& t, int depth) {
  std::map<std::pair<CoState, int>, bool> memo;
  std::function<bool(CoState, int)> go = [&](CoState s, int d) -> bool {
    if (d <= 0) return true;
    auto key = std::make_pair(s, d);
    auto f = memo.find(key);
    if (f != memo.end()) return f->second;
    CoStep st = t.step(s);
    bool r;
    if (const auto* v = std::get_if<CoV>(&st))
      r = !(v->x == x);
    else if (const auto* ap = std::get_if<CoA>(&st))
      r = go(ap->fn, d - 1) && go(ap->arg, d - 1);
    else {
      const auto& l = std::get<CoL>(st);
      r = l.binder == x || go(l.body, d - 1);
    }
    memo.emplace(key, r);
    return r;
  };
  return go(t.root(), depth);
}

VarSet co_fv(const CoTerm& t) {
  std::set<Var> out;
  for (Var v : t.mentioned())
    if (!co_fresh(v, t)) out.insert(v);
  return VarSet::finite(std::move(out));
}

Env& Env::set(Var x, CoTerm image) {
  if (!image.valid()) throw std::invalid_argument("Env::set: empty image");
  mod_[x] = std::move(image);
  return *this;
}

CoTerm Env::get(Var x) const {
  auto f = mod_.find(x);
  if (f != mod_.end()) return f->second;
  return embed(Term::Vr(x));
}

VarSet Env::supp() const {
  std::set<Var> out;
  for (const auto& [x, img] : mod_) {
    if (!img.regular())
      throw std::invalid_argument("Env::supp: image for " + default_name(x) +
                                  " is not regular");
    CoStep st = img.step();
    if (const auto* v = std::get_if<CoV>(&st); v && v->x == x) continue;
    out.insert(x);
    VarSet fvs = co_fv(img);
    for (Var fv : fvs.finite_elems()) out.insert(fv);
  }
  return VarSet::finite(std::move(out));
}

Env Env::swapped(Var z1, Var z2) const {
  Env out;
  for (const auto& [x, img] : mod_)
    out.set(exch(x, z1, z2), co_swap(img, z1, z2));
  return out;
}

namespace {

// Corecursive state space for psubst. A P state is a source state plus the
// pending permutation accumulated from binder refreshes; an E state replays
// an environment image verbatim. For regular sources the permutation is
// keyed by its restriction to the source alphabet, which the destructor
// provably depends on, so the minted space stays finite.
struct PsCtx {
  CoTerm src;
  bool src_regular = false;
  std::set<Var> src_names;
  std::vector<std::pair<Var, CoTerm>> images;
  std::map<Var, std::size_t> image_of;
  std::set<Var> supp;
  std::vector<Var> pool;
  std::uint64_t watermark = 0;

  std::map<std::string, CoState> ids;
  struct Rec {
    bool exit = false;
    CoState s = 0;
    Perm pi;
    std::size_t img = 0;
  };
  std::vector<Rec> recs;
  std::map<std::pair<std::uint64_t, CoState>, bool> fresh_memo;

  std::string key_p(CoState s, const Perm& pi) const {
    std::string k = "P|" + std::to_string(s) + "|";
    if (src_regular) {
      for (Var v : src_names) {
        Var w = pi.apply(v);
        if (!(w == v))
          k += std::to_string(v.index) + ">" + std::to_string(w.index) + ",";
      }
    } else {
      k += pi.to_string();
    }
    return k;
  }

  CoState mint_p(CoState s, const Perm& pi) {
    std::string k = key_p(s, pi);
    auto f = ids.find(k);
    if (f != ids.end()) return f->second;
    CoState id = recs.size();
    ids.emplace(std::move(k), id);
    recs.push_back(Rec{false, s, pi, 0});
    return id;
  }

  CoState mint_e(std::size_t img, CoState s) {
    std::string k = "E|" + std::to_string(img) + "|" + std::to_string(s);
    auto f = ids.find(k);
    if (f != ids.end()) return f->second;
    CoState id = recs.size();
    ids.emplace(std::move(k), id);
    Rec r;
    r.exit = true;
    r.s = s;
    r.img = img;
    recs.push_back(std::move(r));
    return id;
  }

  bool body_fresh(Var w, CoState body) {
    if (!src_names.count(w)) return true;  // unmentioned, trivially fresh
    auto key = std::make_pair(w.index, body);
    auto f = fresh_memo.find(key);
    if (f != fresh_memo.end()) return f->second;
    bool r = co_fresh(w, src.at(body));
    fresh_memo.emplace(key, r);
    return r;
  }

  CoStep image_step(std::size_t img, CoState s) {
    CoStep st = images[img].second.at(s).step();
    if (const auto* v = std::get_if<CoV>(&st)) return CoV{v->x};
    if (const auto* ap = std::get_if<CoA>(&st))
      return CoA{mint_e(img, ap->fn), mint_e(img, ap->arg)};
    const auto& l = std::get<CoL>(st);
    return CoL{l.binder, mint_e(img, l.body)};
  }

  CoStep dest(CoState id) {
    Rec r = recs.at(id);
    if (r.exit) return image_step(r.img, r.s);
    CoStep st = src.step(r.s);
    if (const auto* v = std::get_if<CoV>(&st)) {
      Var y = r.pi.apply(v->x);
      auto f = image_of.find(y);
      if (f != image_of.end())
        return image_step(f->second, images[f->second].second.root());
      return CoV{y};
    }
    if (const auto* ap = std::get_if<CoA>(&st))
      return CoA{mint_p(ap->fn, r.pi), mint_p(ap->arg, r.pi)};
    const auto& l = std::get<CoL>(st);
    Var y = r.pi.apply(l.binder);
    if (!supp.count(y)) return CoL{y, mint_p(l.body, r.pi)};
    Var z = pick_binder(r.pi, l.body);
    Perm pi2 = Perm::compose(Perm::transposition(z, y), r.pi);
    return CoL{z, mint_p(l.body, pi2)};
  }

  Var pick_binder(const Perm& pi, CoState body) {
    if (src_regular) {
      Perm inv = pi.inverse();
      for (Var z : pool)
        if (body_fresh(inv.apply(z), body)) return z;
      throw std::logic_error("psubst: fresh pool exhausted");
    }
    // Non-regular source: mint a new name above everything seen so far.
    // Freshness here is best effort; depth-bounded semantics apply anyway.
    return var(watermark++);
  }
};

}  // namespace

CoTerm psubst(const CoTerm& t, const Env& rho) {
  if (!t.valid()) throw std::invalid_argument("psubst: empty coterm");
  if (rho.modified().empty()) return t;

  auto cx = std::make_shared<PsCtx>();
  cx->src = t;
  cx->src_regular = t.regular();
  for (const auto& [x, img] : rho.modified()) {
    cx->image_of.emplace(x, cx->images.size());
    cx->images.emplace_back(x, img);
  }
  cx->supp = rho.supp().finite_elems();
  if (cx->src_regular) cx->src_names = t.mentioned();

  std::uint64_t base = 0;
  for (Var v : cx->src_names) base = std::max(base, v.index + 1);
  for (Var v : cx->supp) base = std::max(base, v.index + 1);
  for (const auto& [x, img] : cx->images) {
    base = std::max(base, x.index + 1);
    for (Var v : img.mentioned()) base = std::max(base, v.index + 1);
  }
  if (cx->src_regular) {
    for (std::size_t j = 0; j <= cx->src_names.size() + 1; ++j)
      cx->pool.push_back(var(base + j));
  } else {
    cx->watermark = base + 1048576;
  }

  bool reg = t.regular();
  for (const auto& [x, img] : cx->images) {
    (void)x;
    reg = reg && img.regular();
  }
  CoState root = cx->mint_p(t.root(), Perm());
  return CoTerm::from_fn([cx](CoState s) { return cx->dest(s); }, root, reg);
}

CoTerm co_subst(const CoTerm& t, const CoTerm& s, Var z) {
  Env rho;
  rho.set(z, s);
  return psubst(t, rho);
}

CoTerm co_rename(const CoTerm& t, Var x, Var y) {
  if (x == y) return t;
  return co_subst(t, embed(Term::Vr(x)), y);
}

bool co_K_member(const CoTerm& t, Var y, const CoTerm& u, int depth) {
  CoStep st = t.step();
  const auto* l = std::get_if<CoL>(&st);
  if (!l) return false;
  CoTerm body = t.at(l->body);
  bool fresh_ok =
      y == l->binder || (body.regular() ? co_fresh(y, body)
                                        : co_fresh_upto(y, body, depth));
  if (!fresh_ok) return false;
  CoTerm swapped = co_swap(body, y, l->binder);
  if (u.regular() && swapped.regular()) return co_alpha_eq(u, swapped);
  return co_alpha_eq_upto(u, swapped, depth);
}

namespace {

const CoTerm& cp_t(const std::vector<CoTerm>& ts, std::size_t i,
                   const std::string& name) {
  if (i >= ts.size())
    throw std::invalid_argument("check_coterm_property: " + name +
                                " needs coterm argument " + std::to_string(i));
  return ts[i];
}

Var cp_x(const std::vector<Var>& xs, std::size_t i, const std::string& name) {
  if (i >= xs.size())
    throw std::invalid_argument("check_coterm_property: " + name +
                                " needs variable argument " +
                                std::to_string(i));
  return xs[i];
}

const Perm& cp_p(const std::vector<Perm>& ps, std::size_t i,
                 const std::string& name) {
  if (i >= ps.size())
    throw std::invalid_argument("check_coterm_property: " + name +
                                " needs permutation argument " +
                                std::to_string(i));
  return ps[i];
}

}  // namespace

CoPropResult check_coterm_property(const std::string& name,
                                   const std::vector<CoTerm>& ts,
                                   const std::vector<Var>& xs,
                                   const std::vector<Perm>& ps, int depth) {
  CoPropResult res;
  res.holds = true;
  bool exact = true;

  auto ceq = [&](const CoTerm& a, const CoTerm& b) {
    if (a.regular() && b.regular()) return co_alpha_eq(a, b);
    exact = false;
    return co_alpha_eq_upto(a, b, depth);
  };
  auto cfr = [&](Var v, const CoTerm& u) {
    if (u.regular()) return co_fresh(v, u);
    exact = false;
    return co_fresh_upto(v, u, depth);
  };
  auto cfv = [&](const CoTerm& u) {
    if (!u.regular())
      throw std::invalid_argument("check_coterm_property: " + name +
                                  " needs a regular coterm");
    return co_fv(u);
  };
  auto kmem = [&](const CoTerm& w, Var y, const CoTerm& u) {
    CoStep st = w.step();
    const auto* l = std::get_if<CoL>(&st);
    if (!l) return false;
    CoTerm body = w.at(l->body);
    bool c1 = y == l->binder || cfr(y, body);
    return c1 && ceq(u, co_swap(body, y, l->binder));
  };
  auto avoid_set = [&](std::initializer_list<Var> extra) {
    std::set<Var> s(xs.begin(), xs.end());
    for (Var v : extra) s.insert(v);
    return VarSet::finite(std::move(s));
  };
  // Probe names above everything either coterm or argument mentions.
  auto probes = [&](const CoTerm& u, Var x0) {
    std::uint64_t b = x0.index + 1;
    for (Var v : u.mentioned()) b = std::max(b, v.index + 1);
    for (Var v : xs) b = std::max(b, v.index + 1);
    return std::vector<Var>{var(b), var(b + 1), var(b + 2)};
  };

  const CoTerm& t = cp_t(ts, 0, name);
  CoStep st = t.step();
  const auto* sv = std::get_if<CoV>(&st);
  const auto* sa = std::get_if<CoA>(&st);
  const auto* sl = std::get_if<CoL>(&st);

  if (name == "SwVrInf" || name == "PmVrInf" || name == "RnVrInf") {
    if (sv) {
      CoTerm u;
      Var want{};
      if (name == "SwVrInf") {
        Var z1 = cp_x(xs, 0, name), z2 = cp_x(xs, 1, name);
        u = co_swap(t, z1, z2);
        want = exch(sv->x, z1, z2);
      } else if (name == "PmVrInf") {
        const Perm& sg = cp_p(ps, 0, name);
        u = co_perm(t, sg);
        want = sg.apply(sv->x);
      } else {
        Var y = cp_x(xs, 0, name), z = cp_x(xs, 1, name);
        u = co_rename(t, y, z);
        want = sv->x == z ? y : sv->x;
      }
      CoStep us = u.step();
      const auto* uv = std::get_if<CoV>(&us);
      res.holds = uv && uv->x == want;
    }
  } else if (name == "SwApInf" || name == "PmApInf" || name == "RnApInf" ||
             name == "SbApInf") {
    if (sa) {
      std::function<CoTerm(const CoTerm&)> op;
      if (name == "SwApInf") {
        Var z1 = cp_x(xs, 0, name), z2 = cp_x(xs, 1, name);
        op = [z1, z2](const CoTerm& w) { return co_swap(w, z1, z2); };
      } else if (name == "PmApInf") {
        Perm sg = cp_p(ps, 0, name);
        op = [sg](const CoTerm& w) { return co_perm(w, sg); };
      } else if (name == "RnApInf") {
        Var y = cp_x(xs, 0, name), z = cp_x(xs, 1, name);
        op = [y, z](const CoTerm& w) { return co_rename(w, y, z); };
      } else {
        CoTerm s2 = cp_t(ts, 1, name);
        Var z = cp_x(xs, 0, name);
        op = [s2, z](const CoTerm& w) { return co_subst(w, s2, z); };
      }
      CoTerm u = op(t);
      CoStep us = u.step();
      const auto* ua = std::get_if<CoA>(&us);
      res.holds = ua && ceq(u.at(ua->fn), op(t.at(sa->fn))) &&
                  ceq(u.at(ua->arg), op(t.at(sa->arg)));
    }
  } else if (name == "SwLmInf" || name == "PmLmInf") {
    if (sl) {
      CoTerm body = t.at(sl->body);
      if (name == "SwLmInf") {
        Var z1 = cp_x(xs, 0, name), z2 = cp_x(xs, 1, name);
        res.holds = kmem(co_swap(t, z1, z2), exch(sl->binder, z1, z2),
                         co_swap(body, z1, z2));
      } else {
        const Perm& sg = cp_p(ps, 0, name);
        res.holds =
            kmem(co_perm(t, sg), sg.apply(sl->binder), co_perm(body, sg));
      }
    }
  } else if (name == "RnLm1Inf") {
    Var y = cp_x(xs, 0, name), z = cp_x(xs, 1, name);
    if (sl) {
      Var x = sl->binder;
      CoTerm body = t.at(sl->body);
      if (x == y || x == z) {
        auto [x2, b2] = CoDestL(x, body).extract(
            VarSet::finite({x, y, z}));
        x = x2;
        body = b2;
      }
      res.holds = x != y && x != z &&
                  kmem(co_rename(t, y, z), x, co_rename(body, y, z));
    }
  } else if (name == "RnLm2Inf") {
    Var z = cp_x(xs, 0, name);
    if (sl) res.holds = ceq(co_rename(t, z, sl->binder), t);
  } else if (name == "SwCgInf" || name == "RnCgInf") {
    if (sl) {
      Var x1 = sl->binder;
      CoTerm t1 = t.at(sl->body);
      auto [x2, t2] = CoDestL(x1, t1).extract(avoid_set({x1}));
      std::uint64_t b = std::max(x1.index, x2.index) + 1;
      for (Var v : t.mentioned()) b = std::max(b, v.index + 1);
      Var z = var(b);
      if (name == "SwCgInf")
        res.holds = ceq(co_swap(t1, z, x1), co_swap(t2, z, x2));
      else
        res.holds = ceq(co_rename(t1, z, x1), co_rename(t2, z, x2));
    }
  } else if (name == "SwBvrInf" || name == "RnBvrInf" || name == "SbBvrInf" ||
             name == "PmBvrInf" || name == "SwBvrInf2") {
    if (sl) {
      Var x = sl->binder;
      CoTerm body = t.at(sl->body);
      auto [x2, t2] = CoDestL(x, body).extract(avoid_set({x}));
      bool side;
      if (name == "SwBvrInf2")
        side = x2 == x || !cfv(body).contains(x2);
      else if (name == "PmBvrInf")
        side = x2 == x || !cfv(body).contains(x2);
      else
        side = x2 == x || cfr(x2, body);
      CoTerm expect = (name == "RnBvrInf" || name == "SbBvrInf")
                          ? co_rename(body, x2, x)
                          : co_swap(body, x2, x);
      res.holds = side && ceq(t2, expect);
    }
  } else if (name == "RnBvrPInf" || name == "SbBvrPInf" ||
             name == "PmBvrPInf") {
    Var x2 = cp_x(xs, 0, name);
    if (sl) {
      CoTerm body = t.at(sl->body);
      if (cfr(x2, body)) {
        CoTerm moved = name == "PmBvrPInf" ? co_swap(body, x2, sl->binder)
                                           : co_rename(body, x2, sl->binder);
        res.holds = kmem(t, x2, moved);
      }
    }
  } else if (name == "FrVrInf") {
    Var z = cp_x(xs, 0, name);
    if (sv && cfr(z, t)) res.holds = !(z == sv->x);
  } else if (name == "FrApInf") {
    Var z = cp_x(xs, 0, name);
    if (sa && cfr(z, t))
      res.holds = cfr(z, t.at(sa->fn)) && cfr(z, t.at(sa->arg));
  } else if (name == "FrLmInf") {
    Var z = cp_x(xs, 0, name);
    if (sl && cfr(z, t))
      res.holds = z == sl->binder || cfr(z, t.at(sl->body));
  } else if (name == "FvVrInf") {
    if (sv) res.holds = cfv(t).contains(sv->x);
  } else if (name == "FvApInf") {
    if (sa) {
      VarSet lhs =
          VarSet::unite(cfv(t.at(sa->fn)), cfv(t.at(sa->arg)));
      res.holds = lhs.subset_of(cfv(t));
    }
  } else if (name == "FvLmInf") {
    if (sl) {
      CoTerm body = t.at(sl->body);
      VarSet whole = cfv(t);
      bool canon = cfv(body).without(sl->binder).subset_of(whole);
      auto [x2, t2] = CoDestL(sl->binder, body).extract(avoid_set({sl->binder}));
      res.holds = canon && cfv(t2).without(x2).subset_of(whole);
    }
  } else if (name == "SbVrInf") {
    const CoTerm& s2 = cp_t(ts, 1, name);
    Var z = cp_x(xs, 0, name);
    if (sv) {
      CoTerm u = co_subst(t, s2, z);
      if (sv->x == z) {
        res.holds = ceq(u, s2);
      } else {
        CoStep us = u.step();
        const auto* uv = std::get_if<CoV>(&us);
        res.holds = uv && uv->x == sv->x;
      }
    }
  } else if (name == "SbLmInf") {
    const CoTerm& s2 = cp_t(ts, 1, name);
    Var z = cp_x(xs, 0, name);
    if (sl) {
      Var x = sl->binder;
      CoTerm body = t.at(sl->body);
      if (x == z || !cfr(x, s2)) {
        std::set<Var> av = cfv(s2).finite_elems();
        av.insert(z);
        av.insert(x);
        auto [x2, b2] = CoDestL(x, body).extract(VarSet::finite(av));
        x = x2;
        body = b2;
      }
      res.holds = kmem(co_subst(t, s2, z), x, co_subst(body, s2, z));
    }
  } else if (name == "FSupFvInf" || name == "FSupFrInf") {
    if (t.regular())
      res.holds = cfv(t).is_finite();
    else
      exact = false;  // countable support holds by construction
  } else if (name == "FvDPmInf" || name == "FvDSwInf" || name == "FrDSwInf" ||
             name == "FrDRnInf") {
    Var x = cp_x(xs, 0, name);
    bool moved = false;
    for (Var z : probes(t, x)) {
      CoTerm u = name == "FrDRnInf" ? co_rename(t, z, x) : co_swap(t, x, z);
      if (!ceq(u, t)) moved = true;
    }
    if (name == "FrDSwInf" || name == "FrDRnInf")
      res.holds = cfr(x, t) == !moved;
    else
      res.holds = cfv(t).contains(x) == moved;
  } else if (name == "VrInv") {
    Var x = cp_x(xs, 0, name);
    bool dir1 = !sv || ceq(t, embed(Term::Vr(sv->x)));
    bool dir2 = true;
    if (ceq(t, embed(Term::Vr(x)))) dir2 = sv && sv->x == x;
    res.holds = dir1 && dir2;
  } else {
    throw std::invalid_argument("check_coterm_property: unknown property " +
                                name);
  }

  res.exact = exact;
  return res;
}

}  // namespace nomrec
