#include "nomrec/perm.hpp"

#include <cctype>

namespace nomrec {

Perm Perm::transposition(Var x, Var y) {
  Perm p;
  if (x == y) return p;
  p.map_[x] = y;
  p.map_[y] = x;
  return p;
}

std::optional<Perm> Perm::from_mapping(const std::map<Var, Var>& m) {
  Perm p;
  std::set<Var> image;
  for (auto [k, v] : m) {
    if (k == v) continue;
    p.map_[k] = v;
    if (!image.insert(v).second) return std::nullopt;  // not injective
  }
  for (auto [k, v] : p.map_)
    if (!p.map_.count(v)) return std::nullopt;  // image escapes the domain
  return p;
}

Perm Perm::from_transpositions_lr(const std::vector<std::pair<Var, Var>>& ts) {
  Perm acc;
  for (auto [x, y] : ts) acc = compose(transposition(x, y), acc);
  return acc;
}

Var Perm::apply(Var v) const {
  auto it = map_.find(v);
  return it == map_.end() ? v : it->second;
}

std::set<Var> Perm::support() const {
  std::set<Var> s;
  for (auto [k, v] : map_) s.insert(k);
  return s;
}

Perm Perm::inverse() const {
  Perm p;
  for (auto [k, v] : map_) p.map_[v] = k;
  return p;
}

Perm Perm::compose(const Perm& sigma, const Perm& tau) {
  Perm p;
  std::set<Var> domain;
  for (auto [k, v] : sigma.map_) domain.insert(k);
  for (auto [k, v] : tau.map_) domain.insert(k);
  for (Var v : domain) {
    Var w = sigma.apply(tau.apply(v));
    if (w != v) p.map_[v] = w;
  }
  return p;
}

std::vector<std::pair<Var, Var>> Perm::decompose() const {
  std::vector<std::pair<Var, Var>> out;
  std::set<Var> seen;
  for (auto [start, unused] : map_) {
    (void)unused;
    if (seen.count(start)) continue;
    // Walk the cycle from its least element (map_ iterates ascending, so the
    // first unseen element of a cycle is its least).
    std::vector<Var> cycle;
    Var v = start;
    do {
      cycle.push_back(v);
      seen.insert(v);
      v = apply(v);
    } while (v != start);
    for (std::size_t i = cycle.size() - 1; i >= 1; --i)
      out.emplace_back(cycle[i - 1], cycle[i]);
  }
  return out;
}

std::string Perm::to_string(const NameTable* names) const {
  auto nm = [&](Var v) { return names ? names->name_of(v) : default_name(v); };
  std::string out = "{";
  bool first = true;
  for (auto [k, v] : map_) {
    if (!first) out += ", ";
    out += nm(k) + "->" + nm(v);
    first = false;
  }
  return out + "}";
}

std::string Perm::to_cycles(const NameTable* names) const {
  auto nm = [&](Var v) { return names ? names->name_of(v) : default_name(v); };
  if (map_.empty()) return "()";
  std::string out;
  std::set<Var> seen;
  for (auto [start, unused] : map_) {
    (void)unused;
    if (seen.count(start)) continue;
    out += "(";
    Var v = start;
    bool first = true;
    do {
      if (!first) out += " ";
      out += nm(v);
      seen.insert(v);
      v = apply(v);
      first = false;
    } while (v != start);
    out += ")";
  }
  return out;
}

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;
  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  bool peek(char c) {
    skip_ws();
    return i < s.size() && s[i] == c;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  std::optional<std::string> ident() {
    skip_ws();
    std::size_t start = i;
    while (i < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' ||
            s[i] == '\''))
      ++i;
    if (i == start) return std::nullopt;
    return s.substr(start, i - start);
  }
};

}  // namespace

std::optional<Perm> Perm::parse(const std::string& text, NameTable& names) {
  Cursor c{text};
  c.skip_ws();
  if (c.peek('{')) {
    c.eat('{');
    std::map<Var, Var> m;
    if (!c.peek('}')) {
      while (true) {
        auto from = c.ident();
        if (!from) return std::nullopt;
        if (!c.eat('-') || !c.eat('>')) return std::nullopt;
        auto to = c.ident();
        if (!to) return std::nullopt;
        Var k = names.intern(*from);
        if (m.count(k)) return std::nullopt;
        m[k] = names.intern(*to);
        if (!c.eat(',')) break;
      }
    }
    if (!c.eat('}') || !c.done()) return std::nullopt;
    return from_mapping(m);
  }
  // Cycle form: a sequence of parenthesized cycles, rightmost applied first.
  std::vector<std::vector<Var>> cycles;
  while (c.peek('(')) {
    c.eat('(');
    std::vector<Var> cyc;
    while (!c.peek(')')) {
      auto id = c.ident();
      if (!id) return std::nullopt;
      cyc.push_back(names.intern(*id));
    }
    c.eat(')');
    cycles.push_back(std::move(cyc));
  }
  if (cycles.empty() || !c.done()) return std::nullopt;
  Perm acc;
  for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
    const auto& cyc = *it;
    std::map<Var, Var> m;
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      Var from = cyc[i];
      Var to = cyc[(i + 1) % cyc.size()];
      if (from != to && m.count(from)) return std::nullopt;  // repeated entry
      if (from != to) m[from] = to;
    }
    auto cp = from_mapping(m);
    if (!cp) return std::nullopt;
    acc = compose(*cp, acc);
  }
  return acc;
}

}  // namespace nomrec
