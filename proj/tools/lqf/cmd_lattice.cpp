#include <algorithm>
#include <filesystem>
#include <memory>
#include <ostream>

#include "commands.hpp"
#include "lqf/error.hpp"
#include "lqf/model_search.hpp"

namespace lqf::cli {

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

int run_check(const std::string& arg, const Options& o, std::ostream& out, std::ostream& err) {
  Report r("check");
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    const OmlTables t = parse_tables(read_file(arg), arg);
    const auto v = verify_oml(t);
    if (!v.ok) {
      const std::string law(to_string(*v.law));
      r.data()["valid"] = false;
      r.data()["law"] = law;
      r.data()["witness"] = {t.names[v.x], t.names[v.y], t.names[v.z]};
      r.data()["message"] = v.message;
      r.line("not an orthomodular lattice: " + v.message);
      return r.emit(o, kNegative, out, err);
    }
  }
  const FiniteOml l = resolve_lattice(arg);
  const auto c = center(l);
  const auto m = modularity_suite(l);
  const auto a = atoms(l);
  r.data()["valid"] = true;
  r.data()["size"] = l.size();
  r.data()["atoms"] = names_json(l, a);
  r.data()["center"] = names_json(l, c.elements);
  r.data()["boolean"] = c.elements.size() == l.size();
  r.data()["modular"] = m.is_modular;
  r.data()["directly_indecomposable"] = directly_indecomposable(l);
  r.line("orthomodular lattice with " + std::to_string(l.size()) + " elements");
  r.line("atoms: " + join_names(l, a));
  r.line("center: " + join_names(l, c.elements));
  r.line("boolean: " + yes_no(c.elements.size() == l.size()));
  r.line("modular: " + yes_no(m.is_modular));
  r.line("directly indecomposable: " + yes_no(directly_indecomposable(l)));
  return r.emit(o, kAffirmative, out, err);
}

void add_lattice_ops(CLI::App& app, Action& action) {
  auto* lat = app.add_subcommand("lattice", "Lattice operations on a file, catalog name or build spec");
  lat->require_subcommand(1);
  auto L = std::make_shared<std::string>();
  auto a = std::make_shared<std::string>();
  auto b = std::make_shared<std::string>();

  auto* c = lat->add_subcommand("center", "Center and its Boolean-subalgebra check");
  c->add_option("lattice", *L)->required();
  bind(c, action, [L](const Options& o, std::ostream& out, std::ostream& err) {
    const FiniteOml l = resolve_lattice(*L);
    const auto rep = center(l);
    Report r("lattice center");
    r.data()["center"] = names_json(l, rep.elements);
    r.data()["boolean_subalgebra"] = rep.boolean_subalgebra;
    r.line("center: " + join_names(l, rep.elements));
    r.line("boolean subalgebra: " + yes_no(rep.boolean_subalgebra));
    return r.emit(o, rep.boolean_subalgebra ? kAffirmative : kNegative, out, err);
  });

  auto* at = lat->add_subcommand("atoms", "Atoms");
  at->add_option("lattice", *L)->required();
  bind(at, action, [L](const Options& o, std::ostream& out, std::ostream& err) {
    const FiniteOml l = resolve_lattice(*L);
    Report r("lattice atoms");
    r.data()["atoms"] = names_json(l, atoms(l));
    r.line(join_names(l, atoms(l)));
    return r.emit(o, kAffirmative, out, err);
  });

  auto* sa = lat->add_subcommand("sasaki", "Sasaki projection mu_a(x) = a & (~a | x)");
  sa->add_option("lattice", *L)->required();
  sa->add_option("a", *a)->required();
  sa->add_option("x", *b)->required();
  bind(sa, action, [L, a, b](const Options& o, std::ostream& out, std::ostream& err) {
    const FiniteOml l = resolve_lattice(*L);
    const Element v = sasaki(l, l.element(*a), l.element(*b));
    Report r("lattice sasaki");
    r.data()["value"] = l.name(v);
    r.line(l.name(v));
    return r.emit(o, kAffirmative, out, err);
  });

  auto* cm = lat->add_subcommand("commutes", "a = (a | b) & (a | ~b)");
  cm->add_option("lattice", *L)->required();
  cm->add_option("a", *a)->required();
  cm->add_option("b", *b)->required();
  bind(cm, action, [L, a, b](const Options& o, std::ostream& out, std::ostream& err) {
    const FiniteOml l = resolve_lattice(*L);
    const bool v = commutes(l, l.element(*a), l.element(*b));
    Report r("lattice commutes");
    r.data()["commutes"] = v;
    r.line(*a + (v ? " commutes with " : " does not commute with ") + *b);
    return r.emit(o, v ? kAffirmative : kNegative, out, err);
  });

  auto* pe = lat->add_subcommand("perspective", "Common complement of a and b");
  pe->add_option("lattice", *L)->required();
  pe->add_option("a", *a)->required();
  pe->add_option("b", *b)->required();
  bind(pe, action, [L, a, b](const Options& o, std::ostream& out, std::ostream& err) {
    const FiniteOml l = resolve_lattice(*L);
    const auto rep = perspective(l, l.element(*a), l.element(*b));
    Report r("lattice perspective");
    r.data()["perspective"] = rep.perspective();
    r.data()["criteria_agree"] = rep.agree();
    if (rep.common_complement) {
      r.data()["common_complement"] = l.name(*rep.common_complement);
      r.line("perspective, common complement " + l.name(*rep.common_complement));
    } else {
      r.line("not perspective");
    }
    if (!rep.agree()) r.error_line("defect: common-complement and join/meet criteria disagree");
    return r.emit(o, rep.perspective() && rep.agree() ? kAffirmative : kNegative, out, err);
  });

  auto* co = lat->add_subcommand("complements", "Image of c_a, which is the set of complements of a");
  co->add_option("lattice", *L)->required();
  co->add_option("a", *a)->required();
  bind(co, action, [L, a](const Options& o, std::ostream& out, std::ostream& err) {
    const FiniteOml l = resolve_lattice(*L);
    const Element e = l.element(*a);
    std::vector<Element> image;
    for (Element x = 0; x < l.size(); ++x) image.push_back(complement_via_c(l, e, x));
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    Report r("lattice complements");
    r.data()["complements"] = names_json(l, image);
    r.line(join_names(l, image));
    return r.emit(o, kAffirmative, out, err);
  });

  auto* cv = lat->add_subcommand("cover", "Central cover e(a) and dual central cover ed(a)");
  cv->add_option("lattice", *L)->required();
  cv->add_option("a", *a)->required();
  bind(cv, action, [L, a](const Options& o, std::ostream& out, std::ostream& err) {
    const FiniteOml l = resolve_lattice(*L);
    const Element e = l.element(*a);
    Report r("lattice cover");
    r.data()["central_cover"] = l.name(l.central_cover(e));
    r.data()["dual_central_cover"] = l.name(l.dual_central_cover(e));
    r.line("e(" + *a + ") = " + l.name(l.central_cover(e)));
    r.line("ed(" + *a + ") = " + l.name(l.dual_central_cover(e)));
    return r.emit(o, kAffirmative, out, err);
  });

  auto* fa = lat->add_subcommand("factor", "Factor decomposition at a central element z");
  fa->add_option("lattice", *L)->required();
  fa->add_option("z", *a)->required();
  bind(fa, action, [L, a](const Options& o, std::ostream& out, std::ostream& err) {
    const FiniteOml l = resolve_lattice(*L);
    const auto d = factor_decompose(l, l.element(*a));
    Report r("lattice factor");
    const bool ok = d.theta_is_congruence && d.quotient_isomorphism && d.product_embedding;
    r.data()["blocks"] = d.theta.block_count;
    r.data()["factor_size"] = d.factor.size();
    r.data()["cofactor_size"] = d.cofactor.size();
    r.data()["theta_is_congruence"] = d.theta_is_congruence;
    r.data()["quotient_isomorphism"] = d.quotient_isomorphism;
    r.data()["product_embedding"] = d.product_embedding;
    r.line("theta_z has " + std::to_string(d.theta.block_count) + " blocks");
    r.line("[0,z] has " + std::to_string(d.factor.size()) + " elements, [0,~z] has " +
           std::to_string(d.cofactor.size()));
    r.line("congruence: " + yes_no(d.theta_is_congruence) + ", quotient isomorphism: " +
           yes_no(d.quotient_isomorphism) + ", product embedding: " + yes_no(d.product_embedding));
    return r.emit(o, ok ? kAffirmative : kNegative, out, err);
  });

  auto* mo = lat->add_subcommand("modularity", "Modularity with the three detectors");
  mo->add_option("lattice", *L)->required();
  bind(mo, action, [L](const Options& o, std::ostream& out, std::ostream& err) {
    const FiniteOml l = resolve_lattice(*L);
    const auto m = modularity_suite(l);
    Report r("lattice modularity");
    r.data()["modular"] = m.is_modular;
    r.data()["consistent"] = m.consistent();
    r.line(m.is_modular ? "modular" : "not modular");
    if (m.witness) {
      const auto& w = *m.witness;
      r.data()["witness"] = names_json(l, {w[0], w[1], w[2]});
      r.line("modular-pair witness (a, b, x): " + join_names(l, {w[0], w[1], w[2]}));
    }
    if (m.n5) {
      const auto& w = *m.n5;
      r.data()["n5"] = names_json(l, {w.begin(), w.end()});
      r.line("N5 sublattice: " + join_names(l, {w.begin(), w.end()}));
    }
    if (m.perspective_pair) {
      const auto& w = *m.perspective_pair;
      r.data()["perspective_pair"] = names_json(l, {w[0], w[1]});
      r.line("comparable perspective pair: " + join_names(l, {w[0], w[1]}));
    }
    if (!m.consistent()) r.error_line("defect: modularity detectors disagree");
    return r.emit(o, m.is_modular && m.consistent() ? kAffirmative : kNegative, out, err);
  });

  auto* bu = lat->add_subcommand("build", "Print the lattice JSON of a build spec or catalog entry");
  bu->add_option("spec", *L)->required();
  bind(bu, action, [L](const Options& o, std::ostream& out, std::ostream& err) {
    const FiniteOml l = resolve_lattice(*L);
    Report r("lattice build");
    r.data()["lattice"] = json::parse(structure_to_json(l));
    r.line(structure_to_json(l).substr(0, structure_to_json(l).size() - 1));
    return r.emit(o, kAffirmative, out, err);
  });
}

}  // namespace

void add_lattice_commands(CLI::App& app, Action& action) {
  auto arg = std::make_shared<std::string>();
  auto* check = app.add_subcommand("check", "Validate a lattice file, catalog name or build spec");
  check->add_option("lattice", *arg)->required();
  bind(check, action, [arg](const Options& o, std::ostream& out, std::ostream& err) {
    return run_check(*arg, o, out, err);
  });

  auto* cat = app.add_subcommand("catalog", "The fixed lattice catalog");
  cat->require_subcommand(1);
  auto* list = cat->add_subcommand("list", "List catalog entries in order");
  bind(list, action, [](const Options& o, std::ostream& out, std::ostream& err) {
    Report r("catalog list");
    json entries = json::array();
    for (const auto& e : catalog()) {
      entries.push_back({{"name", e.name},
                         {"spec", e.spec},
                         {"size", e.lattice.size()},
                         {"boolean", e.boolean},
                         {"modular", e.modular},
                         {"directly_indecomposable", e.directly_indecomposable}});
      std::string flags;
      if (e.boolean) flags += " boolean";
      if (!e.modular) flags += " non-modular";
      if (e.directly_indecomposable) flags += " indecomposable";
      r.line(e.name + "  size " + std::to_string(e.lattice.size()) + "  " + e.spec + flags);
    }
    r.data()["entries"] = std::move(entries);
    return r.emit(o, kAffirmative, out, err);
  });
  auto name = std::make_shared<std::string>();
  auto* show = cat->add_subcommand("show", "Print one catalog entry as lattice JSON");
  show->add_option("name", *name)->required();
  bind(show, action, [name](const Options& o, std::ostream& out, std::ostream& err) {
    const CatalogEntry* e = find_catalog(*name);
    if (!e) throw InputError(*name + ": not in the catalog");
    Report r("catalog show");
    const std::string text = structure_to_json(e->lattice);
    r.data()["name"] = e->name;
    r.data()["lattice"] = json::parse(text);
    r.line(text.substr(0, text.size() - 1));
    return r.emit(o, kAffirmative, out, err);
  });

  add_lattice_ops(app, action);
}

}  // namespace lqf::cli
