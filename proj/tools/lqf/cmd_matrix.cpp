#include <memory>
#include <ostream>

#include "commands.hpp"
#include "lqf/error.hpp"
#include "lqf/matrix.hpp"

namespace lqf::cli {

namespace {

json matrix_json(const RationalMatrix& m) { return json::parse(matrix_to_json(m)); }

std::string flat(const RationalMatrix& m) { return to_string(m); }

}  // namespace

void add_matrix_commands(CLI::App& app, Action& action) {
  auto* m = app.add_subcommand("matrix", "Exact rational matrix checks");
  m->require_subcommand(1);
  auto p = std::make_shared<std::string>();
  auto q = std::make_shared<std::string>();

  auto* pi = m->add_subcommand("isometry", "Five equivalent partial-isometry tests");
  pi->add_option("matrix", *p)->required();
  bind(pi, action, [p](const Options& o, std::ostream& out, std::ostream& err) {
    const auto rep = is_partial_isometry(load_matrix(*p));
    Report r("matrix isometry");
    const std::vector<std::pair<const char*, bool>> items = {
        {"image_projector", rep.image_projector}, {"cokernel_projector", rep.cokernel_projector},
        {"wwtw", rep.wwtw},                       {"wtwwt", rep.wtwwt},
        {"adjoint_isometric", rep.adjoint_isometric}};
    for (const auto& [k, v] : items) {
      r.data()[k] = v;
      r.line(std::string(k) + ": " + (v ? "yes" : "no"));
    }
    r.data()["agree"] = rep.agree();
    r.data()["partial_isometry"] = rep.verdict();
    r.line(rep.verdict() ? "partial isometry" : "not a partial isometry");
    if (!rep.agree()) r.error_line("defect: the equivalent characterizations disagree");
    return r.emit(o, rep.verdict() ? kAffirmative : kNegative, out, err);
  });

  auto* mv = m->add_subcommand("mvn", "Murray-von Neumann equivalence of two projectors");
  mv->add_option("P", *p)->required();
  mv->add_option("Q", *q)->required();
  bind(mv, action, [p, q](const Options& o, std::ostream& out, std::ostream& err) {
    const auto res = mvn_equivalent(load_matrix(*p), load_matrix(*q));
    Report r("matrix mvn");
    r.data()["equivalent"] = res.equivalent;
    r.data()["rank_p"] = res.rank_p;
    r.data()["rank_q"] = res.rank_q;
    r.line(std::string(res.equivalent ? "equivalent" : "not equivalent") + " (ranks " +
           std::to_string(res.rank_p) + " and " + std::to_string(res.rank_q) + ")");
    if (res.witness) {
      r.data()["witness"] = matrix_json(*res.witness);
      r.data()["witness_valid"] = res.witness_valid;
      r.line("witness W = " + flat(*res.witness) + (res.witness_valid ? " (validated)" : " (INVALID)"));
    }
    return r.emit(o, res.equivalent ? kAffirmative : kNegative, out, err);
  });

  auto* dm = m->add_subcommand("dimension", "Rank dimension D(P) of a projector");
  dm->add_option("P", *p)->required();
  bind(dm, action, [p](const Options& o, std::ostream& out, std::ostream& err) {
    const std::size_t d = rank_dimension(load_matrix(*p));
    Report r("matrix dimension");
    r.data()["dimension"] = d;
    r.line("D(P) = " + std::to_string(d));
    return r.emit(o, kAffirmative, out, err);
  });

  auto n = std::make_shared<std::size_t>(4);
  auto* au = m->add_subcommand("audit", "Dimension-function axioms on the coordinate projectors of Q^n");
  au->add_option("n", *n)->capture_default_str()->check(CLI::Range(1, 6));
  bind(au, action, [n](const Options& o, std::ostream& out, std::ostream& err) {
    const auto a = dimension_audit(coordinate_projectors(*n));
    Report r("matrix audit");
    r.data()["projectors"] = a.projectors;
    r.data()["pairs"] = a.pairs;
    r.data()["orthogonal_pairs"] = a.orthogonal_pairs;
    r.data()["zero_iff_zero"] = a.zero_iff_zero;
    r.data()["rank_iff_mvn"] = a.rank_iff_mvn;
    r.data()["additive"] = a.additive;
    r.line(std::to_string(a.projectors) + " projectors, " + std::to_string(a.orthogonal_pairs) +
           " orthogonal pairs");
    r.line(std::string("D(P) = 0 iff P = 0: ") + (a.zero_iff_zero ? "yes" : "no"));
    r.line(std::string("equal dimension iff equivalent: ") + (a.rank_iff_mvn ? "yes" : "no"));
    r.line(std::string("additive on orthogonal pairs: ") + (a.additive ? "yes" : "no"));
    return r.emit(o, a.ok() ? kAffirmative : kNegative, out, err);
  });

  auto* bo = m->add_subcommand("borchers", "Certificate that M_n violates the Borchers condition");
  bo->add_option("n", *n)->required()->check(CLI::Range(1, 6));
  bind(bo, action, [n](const Options& o, std::ostream& out, std::ostream& err) {
    const auto c = borchers_fails(*n);
    Report r("matrix borchers");
    json entries = json::array();
    for (const auto& e : c.entries) {
      entries.push_back({{"rank", e.rank}, {"dimension", e.dimension}, {"equivalent_to_identity", e.equivalent_to_identity}});
      r.line("rank " + std::to_string(e.rank) + ": D(P) = " + std::to_string(e.dimension) + " != " +
             std::to_string(c.identity_dimension) + " = D(I)");
    }
    if (c.vacuous()) r.line("vacuous: no projector strictly between 0 and I");
    r.data()["n"] = c.n;
    r.data()["entries"] = std::move(entries);
    r.data()["valid"] = c.valid();
    r.line(c.valid() ? "no intermediate projector is equivalent to I" : "certificate INVALID");
    return r.emit(o, c.valid() ? kAffirmative : kNegative, out, err);
  });

  auto lines = std::make_shared<std::vector<std::string>>();
  auto* de = m->add_subcommand("demo", "Perspectivity versus unitary equivalence for lines of Q^2");
  de->add_option("--line", *lines, "Direction vector p/q,p/q (repeatable)")->required();
  bind(de, action, [lines](const Options& o, std::ostream& out, std::ostream& err) {
    std::vector<std::vector<Rational>> vs;
    for (const auto& l : *lines) {
      std::vector<Rational> v;
      for (const auto& c : split(l, ',')) v.push_back(parse_rational(c));
      vs.push_back(std::move(v));
    }
    const auto d = unitary_vs_perspective_demo(vs);
    Report r("matrix demo");
    bool ok = d.lattice_ok;
    json pairs = json::array();
    for (const auto& pr : d.pairs) {
      ok = ok && pr.complement_valid && pr.mvn && (!pr.unitary || pr.unitary_valid);
      json j = {{"first", pr.first + 1},
                {"second", pr.second + 1},
                {"identical", pr.identical},
                {"perspective_in_generated", pr.perspective_in_generated},
                {"common_complement", pr.complement_source},
                {"complement_valid", pr.complement_valid},
                {"mvn", pr.mvn}};
      std::string head = "L" + std::to_string(pr.first + 1) + ", L" + std::to_string(pr.second + 1) + ": ";
      r.line(head + "common complement " + pr.complement_source + " " + flat(*pr.common_complement) +
             (pr.perspective_in_generated ? "" : " (auxiliary line, added to the lattice)"));
      if (pr.unitary) {
        j["unitary"] = matrix_json(*pr.unitary);
        j["unitary_valid"] = pr.unitary_valid;
        r.line(head + "unitary " + flat(*pr.unitary) + (pr.unitary_valid ? " (validated)" : " (INVALID)"));
      } else {
        r.line(head + "no rational rotation exists");
      }
      r.line(head + "MvN equivalent: " + (pr.mvn ? "yes" : "no"));
      pairs.push_back(std::move(j));
    }
    r.data()["pairs"] = std::move(pairs);
    r.data()["lattice_size"] = d.elements.size();
    r.data()["lattice_ok"] = d.lattice_ok;
    r.data()["note"] = d.note;
    r.line("generated lattice: " + std::to_string(d.elements.size()) + " elements, " +
           (d.lattice_ok ? "orthomodular" : "NOT orthomodular"));
    r.line("note: " + d.note);
    return r.emit(o, ok ? kAffirmative : kNegative, out, err);
  });
}

}  // namespace lqf::cli
