// Command-line front door: term operators, law suites, recursors and
// corecursors, obstruction runs, worked examples and coterm queries. Every
// invocation with the same argv and environment prints byte-identical output.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "nomrec/comodel.hpp"
#include "nomrec/coterm.hpp"
#include "nomrec/counterexamples.hpp"
#include "nomrec/enhanced.hpp"
#include "nomrec/examples.hpp"
#include "nomrec/model.hpp"
#include "nomrec/recursors.hpp"
#include "nomrec/term.hpp"

namespace {

using namespace nomrec;

// Reproducibility knobs. All positive; echoed at the top of every report.
struct Config {
  std::uint64_t seed = 1;
  int samples = 300;
  int depth = 30;
  int fcb_candidates = 8;
  int probes = 3;
  bool checked = false;
};

std::string config_line(const Config& c) {
  std::ostringstream os;
  os << "CONFIG seed=" << c.seed << " samples=" << c.samples
     << " depth=" << c.depth << " fcb_candidates=" << c.fcb_candidates
     << " probes=" << c.probes;
  return os.str();
}

CheckConfig to_check(const Config& c) {
  CheckConfig cc;
  cc.seed = c.seed;
  cc.n = c.samples;
  cc.probes = c.probes;
  cc.fcb_candidates = c.fcb_candidates;
  return cc;
}

// Usage problems (bad arity, unknown names, unparseable input) throw this;
// main maps it to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Term parse_or_throw(const std::string& text, NameTable& names) {
  std::string err;
  auto t = parse_term(text, names, &err);
  if (!t) throw UsageError("cannot parse term '" + text + "': " + err);
  return *t;
}

Var var_or_throw(const std::string& text, NameTable& names) {
  // single identifier, interned like the parser would
  std::string err;
  auto t = parse_term(text, names, &err);
  if (!t || t->kind() != Term::Kind::Vr)
    throw UsageError("expected a variable, got '" + text + "'");
  return t->vr_var();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void need(bool cond, const std::string& usage) {
  if (!cond) throw UsageError("usage: " + usage);
}

int suite_id(const std::string& text) {
  if (text.size() == 1 && text[0] >= '1' && text[0] <= '9')
    return text[0] - '0';
  throw UsageError("suite id must be 1..9, got '" + text + "'");
}

std::string yesno(bool b) { return b ? "true" : "false"; }

int report_exit(const PropReport& rep) { return rep.all_pass() ? 0 : 1; }

// op <subst|swap|perm|rename|fv|fresh|alpha-eq> <args...>
int run_op(const Config&, const std::vector<std::string>& a) {
  need(!a.empty(),
       "op <subst|swap|perm|rename|fv|fresh|alpha-eq> <args...>");
  NameTable names;
  const std::string& which = a[0];
  if (which == "subst") {
    need(a.size() == 4, "op subst <term> <image> <var>   (term[image/var])");
    Term t = parse_or_throw(a[1], names);
    Term s = parse_or_throw(a[2], names);
    Var y = var_or_throw(a[3], names);
    std::cout << print_term(subst(t, s, y), &names) << "\n";
    return 0;
  }
  if (which == "swap") {
    need(a.size() == 4, "op swap <term> <var> <var>");
    Term t = parse_or_throw(a[1], names);
    Var x = var_or_throw(a[2], names);
    Var y = var_or_throw(a[3], names);
    std::cout << print_term(swap(t, x, y), &names) << "\n";
    return 0;
  }
  if (which == "perm") {
    need(a.size() == 3, "op perm <term> <perm>   (cycles or {x->y} mapping)");
    Term t = parse_or_throw(a[1], names);
    auto sigma = Perm::parse(a[2], names);
    if (!sigma) throw UsageError("cannot parse permutation '" + a[2] + "'");
    std::cout << print_term(permute(t, *sigma), &names) << "\n";
    return 0;
  }
  if (which == "rename") {
    need(a.size() == 4, "op rename <term> <new> <old>   (term[new/old])");
    Term t = parse_or_throw(a[1], names);
    Var x = var_or_throw(a[2], names);
    Var y = var_or_throw(a[3], names);
    std::cout << print_term(rename(t, x, y), &names) << "\n";
    return 0;
  }
  if (which == "fv") {
    need(a.size() == 2, "op fv <term>");
    Term t = parse_or_throw(a[1], names);
    std::cout << fv_set(t).to_string(&names) << "\n";
    return 0;
  }
  if (which == "fresh") {
    need(a.size() == 3, "op fresh <var> <term>");
    Var x = var_or_throw(a[1], names);
    Term t = parse_or_throw(a[2], names);
    std::cout << yesno(fresh(x, t)) << "\n";
    return 0;
  }
  if (which == "alpha-eq") {
    need(a.size() == 3, "op alpha-eq <term> <term>");
    Term t = parse_or_throw(a[1], names);
    Term u = parse_or_throw(a[2], names);
    std::cout << yesno(alpha_eq(t, u)) << "\n";
    return 0;
  }
  throw UsageError("unknown operator '" + which + "'");
}

// laws <model-name> <suite-id>. Registry holds the term model, the worked
// example models and the two separation carriers; the suite runs whenever
// the model's signature supports every law in it.
int run_laws(const Config& c, const std::vector<std::string>& a) {
  need(a.size() == 2, "laws <term|model-name> <suite-id>");
  const std::string& name = a[0];
  int i = suite_id(a[1]);
  CheckConfig cc = to_check(c);
  PropReport rep;
  if (name == "term") {
    rep = check_props(term_model(i), i, cc);
  } else if (name == "noccs") {
    rep = check_props(noccs_model(), i, cc);
  } else if (name == "size") {
    rep = check_props(size_model(), i, cc);
  } else if (name == "hoas") {
    rep = check_props(hoas_model(), i, cc);
  } else if (name == "sem") {
    rep = check_props(sem_model(), i, cc);
  } else if (name == "pitts") {
    rep = check_props(pitts_submodel(sem_model()), i, cc);
  } else if (name == "stream") {
    rep = check_props(stream_model(), i, cc);
  } else if (name == "adjoin") {
    rep = check_props(adjoin_model(), i, cc);
  } else if (name == "enf") {
    rep = check_enhanced_props(enf_model(), i, cc);
  } else if (name == "coterm") {
    cc.depth = c.depth;
    rep = check_coprops(coterm_comodel(i), i, cc);
  } else if (name == "psubst") {
    need(i == 5, "laws psubst 5   (the environment comodel is swap/freshness)");
    cc.depth = c.depth;
    rep = check_coprops(psubst_comodel(), i, cc);
  } else {
    // a term literal is a frequent slip here; say so instead of "unknown"
    NameTable names;
    std::string err;
    if (parse_term(name, names, &err))
      throw UsageError("'" + name +
                       "' parses as a term, not a model name; the term model "
                       "is spelled 'term'");
    throw UsageError(
        "unknown model '" + name +
        "' (known: term noccs size enf hoas sem pitts stream adjoin coterm "
        "psubst)");
  }
  std::cout << config_line(c) << "\n" << rep.to_string();
  return report_exit(rep);
}

// recursor <i> <model-name> <term>: runs rec(i, model) and prints the value.
int run_recursor(const Config& c, const std::vector<std::string>& a) {
  need(a.size() == 3, "recursor <i> <model-name> <term>");
  int i = suite_id(a[0]);
  const std::string& name = a[1];
  NameTable names;
  Term t = parse_or_throw(a[2], names);
  if (name == "term") {
    auto r = rec(i, term_model(i), c.checked);
    std::cout << print_term(r.g(t), &names) << "\n";
    return 0;
  }
  if (name == "hoas") {
    auto m = hoas_model();
    auto r = rec(i, m, c.checked);
    std::cout << print_ext(r.g(t), &names) << "\n";
    return 0;
  }
  if (name == "enf") {
    auto r = rec_enhanced(i, enf_model(), c.checked);
    std::cout << yesno(r.g(t)) << "\n";
    return 0;
  }
  auto show_run = [&](const auto& m) {
    auto r = rec(i, m, c.checked);
    std::cout << m.show(r.g(t)) << "\n";
    return 0;
  };
  if (name == "noccs") return show_run(noccs_model());
  if (name == "size") return show_run(size_model());
  if (name == "sem") return show_run(sem_model());
  if (name == "pitts") return show_run(pitts_submodel(sem_model()));
  if (name == "stream") return show_run(stream_model());
  if (name == "adjoin") return show_run(adjoin_model());
  throw UsageError("unknown model '" + name +
                   "' (known: term noccs size enf hoas sem pitts stream "
                   "adjoin)");
}

// corecursor <i> <spec-file> <state>: interprets the file's coalgebra as a
// comodel of coterms and prints the state's unfolding, truncated.
int run_corecursor(const Config& c, const std::vector<std::string>& a) {
  need(a.size() == 3, "corecursor <i> <spec-file> <state>");
  int i = suite_id(a[0]);
  NameTable names;
  std::map<std::string, CoState> states;
  CoTerm spec = parse_coterm_spec(read_file(a[1]), names, &states);
  auto it = states.find(a[2]);
  if (it == states.end())
    throw UsageError("state '" + a[2] + "' is not defined in " + a[1]);
  Corecursion<CoTerm> r = corec(i, coterm_comodel(i));
  CoTerm out = r.g(spec.at(it->second));
  std::cout << truncate(out, c.depth, &names) << "\n";
  return 0;
}

// counterexample <r1|r2>: the obstruction suite; exit 0 when the separation
// shape comes out (forcing lines PASS, the impossible extension FAILs).
int run_counterexample(const Config& c, const std::vector<std::string>& a) {
  need(a.size() == 1, "counterexample <r1|r2>");
  PropReport rep;
  if (a[0] == "r1")
    rep = obstruction_r1(c.samples, c.seed);
  else if (a[0] == "r2")
    rep = obstruction_r2(c.samples, c.seed);
  else
    throw UsageError("unknown obstruction '" + a[0] + "' (known: r1 r2)");
  std::cout << config_line(c) << "\n" << rep.to_string();
  bool ok = separation_witnessed(rep);
  if (ok) std::cout << "SEPARATION WITNESSED\n";
  return ok ? 0 : 1;
}

std::string show_counts(const NoccsMap& m, const NameTable& names) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, k] : m) {
    if (!first) out += ", ";
    first = false;
    out += names.name_of(v) + ": " + std::to_string(k);
  }
  return out + "}";
}

// example <noccs|size|enf|hoas|sem|subst|selftest> <args...>
int run_example(const Config& c, const std::vector<std::string>& a) {
  need(!a.empty(), "example <noccs|size|enf|hoas|sem|subst|selftest> ...");
  const std::string& which = a[0];
  NameTable names;
  if (which == "noccs") {
    need(a.size() == 2 || a.size() == 3, "example noccs <term> [<var>]");
    Term t = parse_or_throw(a[1], names);
    if (a.size() == 3)
      std::cout << noccs(t, var_or_throw(a[2], names)) << "\n";
    else
      std::cout << show_counts(noccs_all(t), names) << "\n";
    return 0;
  }
  if (which == "size") {
    need(a.size() == 2, "example size <term>");
    std::cout << size_of(parse_or_throw(a[1], names)) << "\n";
    return 0;
  }
  if (which == "enf") {
    need(a.size() == 2, "example enf <term>");
    std::cout << yesno(enf(parse_or_throw(a[1], names))) << "\n";
    return 0;
  }
  if (which == "hoas") {
    need(a.size() == 2, "example hoas <term>");
    std::cout << print_ext(hoas_encode(parse_or_throw(a[1], names)), &names)
              << "\n";
    return 0;
  }
  if (which == "sem") {
    need(a.size() == 2 || a.size() == 3,
         "example sem <term> [<base 0..7>]");
    Term t = parse_or_throw(a[1], names);
    std::uint64_t base = 0;
    if (a.size() == 3) {
      if (a[2].size() != 1 || a[2][0] < '0' || a[2][0] > '7')
        throw UsageError("base environment index must be 0..7");
      base = static_cast<std::uint64_t>(a[2][0] - '0');
    }
    std::cout << sem(t, sem_env(base)) << "\n";
    return 0;
  }
  if (which == "subst") {
    need(a.size() == 4, "example subst <term> <image> <var>");
    Term t = parse_or_throw(a[1], names);
    Term s = parse_or_throw(a[2], names);
    Var y = var_or_throw(a[3], names);
    std::cout << print_term(subst_via_r1(t, s, y), &names) << "\n";
    return 0;
  }
  if (which == "selftest") {
    need(a.size() == 1, "example selftest");
    CheckConfig cc = to_check(c);
    std::cout << config_line(c) << "\n";
    bool all = true;
    for (const auto& chk : examples_self_test(cc)) {
      std::cout << "MODEL " << chk.model << "\n" << chk.report.to_string();
      all = all && chk.report.all_pass();
    }
    return all ? 0 : 1;
  }
  throw UsageError("unknown example '" + which +
                   "' (known: noccs size enf hoas sem subst selftest)");
}

// coterm <alpha-eq|fresh|fv|psubst> <spec files...>. Spec files always read
// back as regular coterms, so the exact algorithms apply throughout.
int run_coterm(const Config& c, const std::vector<std::string>& a) {
  need(!a.empty(), "coterm <alpha-eq|fresh|fv|psubst> ...");
  const std::string& which = a[0];
  NameTable names;
  if (which == "alpha-eq") {
    need(a.size() == 3, "coterm alpha-eq <spec-file> <spec-file>");
    CoTerm x = parse_coterm_spec(read_file(a[1]), names);
    CoTerm y = parse_coterm_spec(read_file(a[2]), names);
    std::cout << yesno(co_alpha_eq(x, y)) << "\n";
    return 0;
  }
  if (which == "fresh") {
    need(a.size() == 3, "coterm fresh <var> <spec-file>");
    Var x = names.intern(a[1]);
    CoTerm t = parse_coterm_spec(read_file(a[2]), names);
    std::cout << yesno(co_fresh(x, t)) << "\n";
    return 0;
  }
  if (which == "fv") {
    need(a.size() == 2, "coterm fv <spec-file>");
    CoTerm t = parse_coterm_spec(read_file(a[1]), names);
    std::cout << co_fv(t).to_string(&names) << "\n";
    return 0;
  }
  if (which == "psubst") {
    need(a.size() >= 4 && a.size() % 2 == 0,
         "coterm psubst <spec-file> <var> <image-spec-file> [<var> <file>]...");
    CoTerm t = parse_coterm_spec(read_file(a[1]), names);
    Env rho;
    for (std::size_t k = 2; k + 1 < a.size(); k += 2) {
      Var x = names.intern(a[k]);
      rho.set(x, parse_coterm_spec(read_file(a[k + 1]), names));
    }
    std::cout << truncate(psubst(t, rho), c.depth, &names) << "\n";
    return 0;
  }
  throw UsageError("unknown coterm query '" + which +
                   "' (known: alpha-eq fresh fv psubst)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "binding-aware term toolkit: operators, law suites, recursors, "
      "corecursors, obstructions, examples"};
  app.require_subcommand(1);

  Config cfg;
  app.add_option("--seed", cfg.seed, "sampling seed")->envname("NOMREC_SEED");
  app.add_option("--samples", cfg.samples, "samples per property")
      ->envname("NOMREC_SAMPLES")
      ->check(CLI::PositiveNumber);
  app.add_option("--depth", cfg.depth,
                 "print/unrolling depth for infinitary output")
      ->envname("NOMREC_DEPTH")
      ->check(CLI::PositiveNumber);
  app.add_option("--fcb-candidates", cfg.fcb_candidates,
                 "candidate variables for the freshness existential")
      ->envname("NOMREC_FCB_CANDIDATES")
      ->check(CLI::PositiveNumber);
  app.add_option("--probes", cfg.probes,
                 "outside probes for finiteness-flavoured laws")
      ->envname("NOMREC_PROBES")
      ->check(CLI::PositiveNumber);
  app.add_flag("--checked", cfg.checked,
               "verify alpha-stability of every recursor call");

  std::map<std::string, std::vector<std::string>> rest;
  for (const char* name : {"op", "laws", "recursor", "corecursor",
                           "counterexample", "example", "coterm"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->fallthrough();
    sub->add_option("args", rest[name], "positional arguments");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  using Handler =
      int (*)(const Config&, const std::vector<std::string>&);
  std::map<std::string, Handler> dispatch{
      {"op", run_op},           {"laws", run_laws},
      {"recursor", run_recursor}, {"corecursor", run_corecursor},
      {"counterexample", run_counterexample},
      {"example", run_example}, {"coterm", run_coterm}};
  try {
    for (auto& [name, handler] : dispatch)
      if (app.got_subcommand(name)) return handler(cfg, rest[name]);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
