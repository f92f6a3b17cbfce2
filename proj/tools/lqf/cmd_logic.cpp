#include <memory>
#include <ostream>

#include "commands.hpp"
#include "lqf/calculus.hpp"
#include "lqf/error.hpp"
#include "lqf/model_search.hpp"

namespace lqf::cli {

namespace {

struct Args {
  std::string text;
  std::string lattice;
  std::string valuation;
  std::vector<std::string> scope;
};

Model model_of(const LoadedStructure& s) {
  if (s.expanded) return Model(*s.expanded);
  return Model(s.lattice);
}

void add_proof_commands(CLI::App& app, Action& action) {
  auto* proof = app.add_subcommand("proof", "Proof checking, macro expansion and derived rules");
  proof->require_subcommand(1);

  auto file = std::make_shared<std::string>();
  auto strict = std::make_shared<bool>(false);
  auto* check = proof->add_subcommand("check", "Check a proof JSON file");
  check->add_option("proof", *file)->required();
  check->add_flag("--strict", *strict, "Reject deduction-theorem steps");
  bind(check, action, [file, strict](const Options& o, std::ostream& out, std::ostream& err) {
    const Proof p = load_proof(*file);
    const Verdict v = check_proof(p, *strict);
    Report r("proof check");
    r.data()["ok"] = v.ok;
    r.data()["strict"] = *strict;
    r.data()["steps"] = p.steps.size();
    if (!p.steps.empty()) r.data()["conclusion"] = print(p.steps.back().term);
    if (v.ok) {
      r.line("ok: " + std::to_string(p.steps.size()) + " steps" +
             (p.steps.empty() ? "" : ", proves " + print(p.steps.back().term)));
      return r.emit(o, kAffirmative, out, err);
    }
    r.data()["first_bad_step"] = *v.first_bad_step;
    r.data()["reason"] = std::string(to_string(*v.reason));
    r.data()["message"] = v.message;
    r.line("rejected");
    r.error_line("step " + std::to_string(*v.first_bad_step) + ": " + v.message);
    return r.emit(o, kNegative, out, err);
  });

  auto* expand = proof->add_subcommand("expand", "Inline every macro step and print the primitive proof");
  expand->add_option("proof", *file)->required();
  bind(expand, action, [file](const Options& o, std::ostream& out, std::ostream& err) {
    const Proof p = expand_macros(load_proof(*file));
    const std::string text = proof_to_json(p);
    Report r("proof expand");
    r.data()["proof"] = json::parse(text);
    r.line(text.substr(0, text.size() - 1));
    return r.emit(o, kAffirmative, out, err);
  });

  auto rule = std::make_shared<std::string>();
  auto inputs = std::make_shared<std::vector<std::string>>();
  auto params = std::make_shared<std::vector<std::string>>();
  auto* derive = proof->add_subcommand("derive", "Print the primitive fragment of a derived rule as a proof");
  derive->add_option("rule", *rule, "COR-1 .. COR-6, COR-8 .. COR-11")->required();
  derive->add_option("--input", *inputs, "Input step terms, in order (they become the theory)");
  derive->add_option("--param", *params, "Rule parameters as name=term");
  bind(derive, action, [rule, inputs, params](const Options& o, std::ostream& out, std::ostream& err) {
    std::vector<Term> in;
    for (const auto& t : *inputs) in.push_back(parse_term(t));
    Substitution ps;
    for (const auto& p : *params) {
      auto eq = p.find('=');
      if (eq == std::string::npos) throw InputError("parameters look like name=term, got '" + p + "'");
      ps.emplace(p.substr(0, eq), parse_term(p.substr(eq + 1)));
    }
    const Fragment f = derived_rule(*rule, in, ps);
    Proof p;
    p.theory = in;
    for (std::size_t i = 0; i < in.size(); ++i) p.steps.push_back({in[i], Justification::hyp(i + 1)});
    for (const auto& s : f.steps) p.steps.push_back(s);
    const Verdict v = check_proof(p, true);
    const std::string text = proof_to_json(p);
    Report r("proof derive");
    r.data()["proof"] = json::parse(text);
    r.data()["ok"] = v.ok;
    r.line(text.substr(0, text.size() - 1));
    if (!v.ok) r.error_line("defect: derived fragment rejected at step " + std::to_string(*v.first_bad_step));
    return r.emit(o, v.ok ? kAffirmative : kNegative, out, err);
  });
}

}  // namespace

void add_logic_commands(CLI::App& app, Action& action) {
  auto args = std::make_shared<Args>();

  auto* ev = app.add_subcommand("eval", "Evaluate a term in a lattice or expanded structure");
  ev->add_option("term", args->text)->required();
  ev->add_option("-L,--lattice", args->lattice, "File, catalog name or build spec")->required();
  ev->add_option("-v,--valuation", args->valuation, "x=a,y=b with element names");
  bind(ev, action, [args](const Options& o, std::ostream& out, std::ostream& err) {
    const Term t = parse_term(args->text);
    const auto s = resolve_structure(args->lattice);
    const Element v = eval(t, model_of(s), parse_valuation(s.lattice, args->valuation));
    Report r("eval");
    r.data()["term"] = print(t);
    r.data()["value"] = s.lattice.name(v);
    r.line(s.lattice.name(v));
    return r.emit(o, kAffirmative, out, err);
  });

  auto* ho = app.add_subcommand("holds", "Check an equation under all valuations");
  ho->add_option("equation", args->text, "t = s, or a bare term t meaning t = 1")->required();
  ho->add_option("-L,--lattice", args->lattice, "File, catalog name or build spec")->required();
  bind(ho, action, [args](const Options& o, std::ostream& out, std::ostream& err) {
    const Equation eq = parse_equation(args->text);
    const auto s = resolve_structure(args->lattice);
    const auto h = holds(model_of(s), eq);
    Report r("holds");
    r.data()["equation"] = print(eq);
    r.data()["holds"] = h.holds;
    if (h.holds) {
      r.line("holds");
      return r.emit(o, kAffirmative, out, err);
    }
    r.data()["counterexample"] = valuation_json(*h.counterexample, s.lattice);
    r.line("fails at " + format_valuation(*h.counterexample, s.lattice));
    return r.emit(o, kNegative, out, err);
  });

  auto* cm = app.add_subcommand("countermodel", "Search the catalog for a counterexample");
  cm->add_option("equation", args->text)->required();
  cm->add_option("--scope", args->scope, "Catalog names to search, in catalog order")->delimiter(',');
  bind(cm, action, [args](const Options& o, std::ostream& out, std::ostream& err) {
    const Equation eq = parse_equation(args->text);
    const auto c = countermodel(eq, args->scope);
    Report r("countermodel");
    r.data()["equation"] = print(eq);
    r.data()["found"] = c.has_value();
    if (!c) {
      r.line("no countermodel in the catalog");
      return r.emit(o, kAffirmative, out, err);
    }
    const FiniteOml& l = find_catalog(c->lattice)->lattice;
    r.data()["lattice"] = c->lattice;
    r.data()["valuation"] = valuation_json(c->valuation, l);
    r.line("countermodel " + c->lattice + " at " + format_valuation(c->valuation, l));
    return r.emit(o, kNegative, out, err);
  });

  auto* d2 = app.add_subcommand("decide2", "Decide a two-variable OML equation in the free algebra");
  d2->add_option("equation", args->text)->required();
  bind(d2, action, [args](const Options& o, std::ostream& out, std::ostream& err) {
    const Equation eq = parse_equation(args->text);
    const auto d = decide2(eq);
    const auto& f = free_algebra2();
    Report r("decide2");
    r.data()["equation"] = print(eq);
    r.data()["valid"] = d.valid;
    r.data()["free_algebra_size"] = f.algebra.size();
    r.data()["generators_agree"] = d.generators_agree;
    if (d.valid) {
      r.line("valid in the " + std::to_string(f.algebra.size()) + "-element free algebra");
      return r.emit(o, kAffirmative, out, err);
    }
    r.data()["counterexample"] = valuation_json(*d.counterexample, f.algebra);
    r.line("invalid: fails at " + format_valuation(*d.counterexample, f.algebra));
    return r.emit(o, kNegative, out, err);
  });

  add_proof_commands(app, action);
}

}  // namespace lqf::cli
