#include <memory>
#include <ostream>

#include "commands.hpp"
#include "lqf/error.hpp"
#include "lqf/filters.hpp"

namespace lqf::cli {

namespace {

struct FilterArgs {
  std::string lattice;
  bool enumerate = false;
  std::string generate;
  std::string classify;
  std::string cep;
};

int enumerate(const FiniteOml& l, Report& r) {
  json filters = json::array();
  for (const auto& f : lqf_filters(l)) {
    filters.push_back(names_json(l, members(f)));
    r.line("filter " + join_names(l, members(f)));
  }
  const auto fc = filter_congruence_maps(l);
  const auto cc = center_correspondence(l);
  const auto disc = closure_discrepancies(l);
  r.data()["filters"] = std::move(filters);
  r.data()["congruences"] = fc.congruences;
  r.data()["filter_congruence_bijection"] = fc.ok();
  r.data()["center_correspondence"] = cc.ok();
  json d = json::array();
  for (const auto& x : disc) d.push_back(l.name(x.bottom));
  r.data()["closure_discrepancies"] = std::move(d);
  r.line(std::to_string(fc.filters) + " LQF-filters, " + std::to_string(fc.congruences) + " ed-congruences");
  r.line(std::string("filter/congruence correspondence: ") + (fc.ok() ? "verified" : "FAILED"));
  r.line(std::string("center correspondence: ") + (cc.ok() ? "verified" : "FAILED"));
  for (const auto& x : disc)
    r.line("[" + l.name(x.bottom) + ",1] is ed-closed but not perspective-closed");
  return fc.ok() && cc.ok() ? kAffirmative : kNegative;
}

}  // namespace

void add_filter_commands(CLI::App& app, Action& action) {
  auto a = std::make_shared<FilterArgs>();
  auto* f = app.add_subcommand("filters", "LQF-filters with ed as the dual central cover");
  f->add_option("lattice", a->lattice)->required();
  auto* en = f->add_flag("--enumerate", a->enumerate, "All LQF-filters and both correspondences");
  auto* ge = f->add_option("--generate", a->generate, "Filter generated by e1,e2,...");
  auto* cl = f->add_option("--classify", a->classify, "Flags of the subset e1,e2,...");
  auto* ce = f->add_option("--cep", a->cep, "Congruence-extension probe on the sub-OML e1,e2,...");
  en->excludes(ge)->excludes(cl)->excludes(ce);
  ge->excludes(cl)->excludes(ce);
  cl->excludes(ce);
  f->require_option(1);
  bind(f, action, [a](const Options& o, std::ostream& out, std::ostream& err) {
    const FiniteOml l = resolve_lattice(a->lattice);
    Report r("filters");
    if (a->enumerate) return r.emit(o, enumerate(l, r), out, err);
    if (!a->cep.empty()) {
      const auto rep = cep_probe(l, elements(l, a->cep));
      r.data()["subalgebra"] = rep.subalgebra_ok;
      r.data()["filters_checked"] = rep.filters_checked;
      r.data()["violations"] = rep.violations;
      if (!rep.subalgebra_ok) {
        r.line("not a sub-OML closed under ed");
        return r.emit(o, kNegative, out, err);
      }
      r.line(std::to_string(rep.filters_checked) + " ed-closed filters checked, " +
             std::to_string(rep.violations) + " violations");
      return r.emit(o, rep.violations == 0 ? kAffirmative : kNegative, out, err);
    }
    if (a->classify.empty()) {
      const Subset s = generate_filter(l, elements(l, a->generate));
      r.data()["filter"] = names_json(l, members(s));
      r.line(join_names(l, members(s)));
      return r.emit(o, kAffirmative, out, err);
    }
    const auto fl = classify_filter(l, make_subset(l, elements(l, a->classify)));
    const std::vector<std::pair<const char*, bool>> flags = {
        {"contains_top", fl.contains_top},   {"increasing", fl.increasing},
        {"meet_closed", fl.meet_closed},     {"perspective_closed", fl.perspective_closed},
        {"ed_closed", fl.ed_closed},         {"proper", fl.proper},
        {"oml_filter", fl.oml_filter()},     {"lqf_filter", fl.lqf_filter()},
        {"maximal", fl.maximal},             {"maximal_by_inclusion", fl.maximal_by_inclusion}};
    for (const auto& [k, v] : flags) {
      r.data()[k] = v;
      r.line(std::string(k) + ": " + (v ? "yes" : "no"));
    }
    if (fl.maximal != fl.maximal_by_inclusion) r.error_line("defect: maximality criteria disagree");
    return r.emit(o, fl.lqf_filter() ? kAffirmative : kNegative, out, err);
  });
}

}  // namespace lqf::cli
