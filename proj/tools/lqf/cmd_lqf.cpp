#include <memory>
#include <ostream>

#include "commands.hpp"
#include "lqf/error.hpp"
#include "lqf/model_search.hpp"

namespace lqf::cli {

namespace {

ExpandedStructure load_expanded(const std::string& arg) {
  auto s = resolve_structure(arg);
  if (!s.expanded) throw InputError(arg + ": structure needs \"w\" and \"wstar\" tables");
  return std::move(*s.expanded);
}

json condition_json(const ConditionReport& c, const FiniteOml& l) {
  json j = {{"pass", c.pass}};
  if (!c.pass) {
    j["failing"] = c.failing;
    j["failing_number"] = c.failing_number;
    j["failing_equation"] = c.failing_equation;
    if (c.witness) j["witness"] = valuation_json(*c.witness, l);
  }
  return j;
}

std::string condition_line(const ConditionReport& c, const FiniteOml& l, const std::string& what) {
  if (c.pass) return what + ": pass";
  std::string s = what + ": " + c.failing + " fails";
  if (c.witness) s += " at " + format_valuation(*c.witness, l);
  return s;
}

}  // namespace

void add_lqf_commands(CLI::App& app, Action& action) {
  auto arg = std::make_shared<std::string>();

  auto* re = app.add_subcommand("refute", "Show that no LQF tables exist on a finite lattice");
  re->add_option("lattice", *arg)->required();
  bind(re, action, [arg](const Options& o, std::ostream& out, std::ostream& err) {
    const FiniteOml l = resolve_lattice(*arg);
    const auto t = refute_finite_lqf(l);
    Report r("refute");
    json entries = json::array();
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
      entries.push_back({{"conclusion", t.entries[i].conclusion}, {"reason", t.entries[i].reason}});
      r.line(std::to_string(i + 1) + ". " + t.entries[i].conclusion + "  [" + t.entries[i].reason + "]");
    }
    r.data()["trace"] = std::move(entries);
    r.data()["contradiction"] = t.contradiction;
    r.data()["factor"] = t.factor;
    r.data()["factor_size"] = t.factor_size;
    return r.emit(o, t.contradiction ? kAffirmative : kNegative, out, err);
  });

  auto* cl = app.add_subcommand("check-lqf", "Check LQF1..LQF12 on an expanded structure");
  cl->add_option("structure", *arg)->required();
  bind(cl, action, [arg](const Options& o, std::ostream& out, std::ostream& err) {
    const ExpandedStructure s = load_expanded(*arg);
    const auto c = check_lqf_axioms(s);
    Report r("check-lqf");
    r.data()["lqf"] = condition_json(c, s.base());
    r.line(condition_line(c, s.base(), "LQF axioms"));
    return r.emit(o, c.pass ? kAffirmative : kNegative, out, err);
  });

  auto* ci = app.add_subcommand("check-iii", "Check III1..III10 and the restriction laws");
  ci->add_option("structure", *arg)->required();
  bind(ci, action, [arg](const Options& o, std::ostream& out, std::ostream& err) {
    const ExpandedStructure s = load_expanded(*arg);
    const auto c = check_iii_conditions(s);
    Report r("check-iii");
    r.data()["conditions"] = condition_json(c.conditions, s.base());
    r.data()["companions"] = condition_json(c.companions, s.base());
    r.line(condition_line(c.conditions, s.base(), "III conditions"));
    r.line(condition_line(c.companions, s.base(), "restriction laws"));
    return r.emit(o, c.conditions.pass && c.companions.pass ? kAffirmative : kNegative, out, err);
  });

  auto exhaustive = std::make_shared<bool>(false);
  auto propagate = std::make_shared<bool>(false);
  auto* w0 = app.add_subcommand("w0-unique", "Unique w0 table on a directly indecomposable lattice");
  w0->add_option("lattice", *arg)->required();
  auto* ex = w0->add_flag("--exhaustive", *exhaustive, "Enumerate all |L|^|L| tables");
  w0->add_flag("--propagate", *propagate, "Constraint propagation")->excludes(ex);
  bind(w0, action, [arg, exhaustive, propagate](const Options& o, std::ostream& out, std::ostream& err) {
    const FiniteOml l = resolve_lattice(*arg);
    std::optional<bool> mode;
    if (*exhaustive) mode = true;
    if (*propagate) mode = false;
    const auto rep = w0_uniqueness(l, mode);
    const auto laws = internal_dimension_laws(l, indicator(l));
    Report r("w0-unique");
    r.data()["exhaustive"] = rep.exhaustive;
    r.data()["tables_examined"] = rep.tables_examined;
    r.data()["passing"] = rep.passing;
    r.data()["is_indicator"] = rep.is_indicator;
    r.data()["dimension_laws"] = laws.all();
    r.line(std::string(rep.exhaustive ? "exhaustive" : "propagation") + ": " +
           std::to_string(rep.tables_examined) + " tables examined, " + std::to_string(rep.passing) +
           " passing");
    r.line(std::string("unique solution is the indicator: ") + (rep.passing == 1 && rep.is_indicator ? "yes" : "no"));
    r.line(std::string("dimension laws for the indicator: ") + (laws.all() ? "hold" : "fail"));
    const bool ok = rep.passing == 1 && rep.is_indicator && laws.all();
    return r.emit(o, ok ? kAffirmative : kNegative, out, err);
  });

  auto* di = app.add_subcommand("discriminator", "Exhaustive discriminator-term check");
  di->add_option("lattice", *arg)->required();
  bind(di, action, [arg](const Options& o, std::ostream& out, std::ostream& err) {
    const FiniteOml l = resolve_lattice(*arg);
    const auto rep = discriminator_check(l);
    Report r("discriminator");
    r.data()["triples"] = rep.triples;
    r.data()["failures"] = rep.failures;
    r.line(std::to_string(rep.triples) + " triples, " + std::to_string(rep.failures) + " failures");
    if (rep.first_failure) {
      const auto& f = *rep.first_failure;
      r.data()["first_failure"] = names_json(l, {f[0], f[1], f[2]});
      r.line("first failure (x, y, z): " + join_names(l, {f[0], f[1], f[2]}));
    }
    return r.emit(o, rep.ok() ? kAffirmative : kNegative, out, err);
  });

  auto samples = std::make_shared<std::size_t>(100);
  auto seed = std::make_shared<std::uint64_t>(1);
  auto* al = app.add_subcommand("align", "Compare LQF and III verdicts on seeded random structures");
  al->add_option("--samples", *samples)->capture_default_str();
  al->add_option("--seed", *seed)->capture_default_str();
  bind(al, action, [samples, seed](const Options& o, std::ostream& out, std::ostream& err) {
    const auto run = alignment_run(*samples, *seed);
    Report r("align");
    std::size_t agree = 0;
    json rows = json::array();
    for (const auto& s : run) {
      agree += s.agree;
      rows.push_back({{"base", s.base}, {"lqf_first", s.lqf_first}, {"iii_first", s.iii_first}, {"agree", s.agree}});
    }
    r.data()["samples"] = std::move(rows);
    r.data()["agree"] = agree;
    r.line(std::to_string(agree) + " of " + std::to_string(run.size()) + " samples agree");
    return r.emit(o, agree == run.size() ? kAffirmative : kNegative, out, err);
  });
}

}  // namespace lqf::cli
