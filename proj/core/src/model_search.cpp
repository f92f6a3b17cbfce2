#include "lqf/model_search.hpp"

#include <algorithm>

#include "lqf/error.hpp"

namespace lqf {

// --- catalog -------------------------------------------------------------------

namespace {

CatalogEntry make_entry(std::string name, std::string spec) {
  FiniteOml l = build(spec).with_label(name);
  const auto c = center(l);
  const bool is_boolean = c.elements.size() == l.size();
  const bool modular = modularity_suite(l).is_modular;
  const bool di = directly_indecomposable(l);
  return CatalogEntry{std::move(name), std::move(spec), std::move(l), is_boolean, modular, di};
}

std::vector<CatalogEntry> build_catalog() {
  const std::vector<std::pair<const char*, const char*>> specs = {
      {"B1", "boolean(1)"},
      {"B2", "boolean(2)"},
      {"B3", "boolean(3)"},
      {"B4", "boolean(4)"},
      {"MO1", "mo(1)"},
      {"MO2", "mo(2)"},
      {"MO3", "mo(3)"},
      {"MO4", "mo(4)"},
      {"B1xMO2", "product(boolean(1),mo(2))"},
      {"hsum(B2,B3)", "hsum(boolean(2),boolean(3))"},
      {"hsum(MO2,B3)", "hsum(mo(2),boolean(3))"},
      {"hsum(B3,B3)", "hsum(boolean(3),boolean(3))"},
      {"B1xMO3", "product(boolean(1),mo(3))"},
      {"B1xhsum(B2,B3)", "product(boolean(1),hsum(boolean(2),boolean(3)))"},
      {"B2xMO2", "product(boolean(2),mo(2))"},
  };
  std::vector<CatalogEntry> out;
  for (const auto& [name, spec] : specs) out.push_back(make_entry(name, spec));
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry* find_catalog(std::string_view name) {
  for (const auto& e : catalog())
    if (e.name == name || e.spec == name) return &e;
  return nullptr;
}

// --- countermodels -------------------------------------------------------------------

std::optional<Countermodel> countermodel(const Equation& eq, const std::vector<std::string>& scope) {
  if (eq.lhs.uses_w() || eq.rhs.uses_w())
    throw SignatureError("countermodel search covers the lattice signature only");
  for (const auto& name : scope)
    if (!find_catalog(name)) throw PreconditionError("unknown catalog lattice '" + name + "'");
  for (const auto& entry : catalog()) {
    if (!scope.empty() && std::find(scope.begin(), scope.end(), entry.name) == scope.end() &&
        std::find(scope.begin(), scope.end(), entry.spec) == scope.end())
      continue;
    auto r = holds(entry.lattice, eq);
    if (!r.holds) return Countermodel{entry.name, *r.counterexample};
  }
  return std::nullopt;
}

namespace {

FreeAlgebra2 compute_free_algebra2() {
  FiniteOml ambient = product(boolean(4), mo(2));
  const std::size_t n = ambient.size();
  std::vector<Element> best;
  Element b1 = 0, b2 = 0;
  std::uint64_t tried = 0;
  for (Element a = 0; a < n && best.size() < n; ++a)
    for (Element b = a + 1; b < n; ++b) {
      ++tried;
      auto c = closure(ambient, {a, b});
      if (c.size() > best.size()) {
        best = std::move(c);
        b1 = a;
        b2 = b;
        if (best.size() == n) break;
      }
    }
  FiniteOml algebra = subalgebra(ambient, best).with_label("F2");
  const auto pos = [&](Element e) {
    return static_cast<Element>(std::lower_bound(best.begin(), best.end(), e) - best.begin());
  };
  const Element gen1 = pos(b1);
  const Element gen2 = pos(b2);
  return FreeAlgebra2{std::move(ambient), std::move(best), b1, b2, std::move(algebra),
                      gen1, gen2, tried};
}

}  // namespace

const FreeAlgebra2& free_algebra2() {
  static const FreeAlgebra2 f = compute_free_algebra2();
  return f;
}

Decide2Result decide2(const Equation& eq) {
  if (eq.lhs.uses_w() || eq.rhs.uses_w())
    throw PreconditionError("unsupported query: decide2 covers the lattice signature only");
  std::vector<std::string> vars = eq.lhs.variables();
  for (auto& v : eq.rhs.variables()) vars.push_back(v);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  if (vars.size() > 2)
    throw PreconditionError("unsupported query: decide2 handles at most 2 variables, got " +
                            std::to_string(vars.size()));

  const auto& f = free_algebra2();
  Decide2Result result;
  auto r = holds(f.algebra, eq);
  result.valid = r.holds;
  result.counterexample = r.counterexample;

  Valuation gens;
  if (!vars.empty()) gens[vars[0]] = f.gen1;
  if (vars.size() > 1) gens[vars[1]] = f.gen2;
  const bool at_generators = eval(eq.lhs, f.algebra, gens) == eval(eq.rhs, f.algebra, gens);
  result.generators_agree = at_generators == result.valid;
  return result;
}

// --- condition systems ---------------------------------------------------------------------

namespace {

Condition condition(std::string id, std::vector<std::string> text) {
  Condition c{std::move(id), std::move(text), {}};
  for (const auto& t : c.text) c.equations.push_back(parse_equation(t));
  return c;
}

std::vector<Condition> shared_conditions(bool lqf) {
  const char* prefix = lqf ? "LQF" : "III";
  auto id = [&](int k) { return std::string(prefix) + std::to_string(k); };
  return {
      condition(id(1), {"w0(0) = 0"}),
      condition(id(2), {"x = x & w0(x)"}),
      condition(id(3), {"y = (y & w0(x)) | (y & ~w0(x))"}),
      condition(id(4), {lqf ? "w(z, x & y) = w(z, x & y) & w(z, y)"
                            : "w(z, x & y) = w(z, x & y) & w(z, x)"}),
      condition(id(5), {"w0(z) & w*(z, x & y) = (w0(z) & w*(z, x & y)) & w*(z, x)"}),
      condition(id(6), {"w0*(z) & z = w0*(z) & w*(z, z)",
                        "w0*(z) & w*(z, z) = (~w0(~z) & w0*(z)) | (w0(~z) & w0(w0*(z) & z))"}),
      condition(id(7), {"w0*(z) | z = w0*(z) | w*(z, z)",
                        "w0*(z) | w*(z, z) = w0(w0*(z) | z)"}),
      condition(id(8), {"w0(z) = w0(z) & R(w(z, w*(z, x)), x)"}),
      condition(id(9), {"w0(z) = w0(z) & R(w*(z, w(z, x)), mu(z, x))"}),
      condition(id(10), {"w0(w0*(1)) = w0(~w0*(1))"}),
  };
}

std::vector<Condition> restriction_laws(const std::string& a, const std::string& b) {
  return {
      condition(a, {"w(x, y & w0(z)) = w(x & w0(z), y & w0(z))",
                    "w(x & w0(z), y & w0(z)) = w(x, y) & w0(z)"}),
      condition(b, {"w*(x, y & w0(z)) = w*(x & w0(z), y & w0(z))",
                    "w*(x & w0(z), y & w0(z)) = w*(x, y) & w0(z)"}),
  };
}

}  // namespace

const std::vector<Condition>& lqf_conditions() {
  static const std::vector<Condition> list = [] {
    auto l = shared_conditions(true);
    for (auto& c : restriction_laws("LQF11", "LQF12")) l.push_back(std::move(c));
    return l;
  }();
  return list;
}

const std::vector<Condition>& iii_conditions() {
  static const std::vector<Condition> list = shared_conditions(false);
  return list;
}

const std::vector<Condition>& iii_companion_conditions() {
  static const std::vector<Condition> list = restriction_laws("W-restriction", "W*-restriction");
  return list;
}

ConditionReport check_conditions(const ExpandedStructure& s, const std::vector<Condition>& list) {
  ConditionReport report;
  for (std::size_t i = 0; i < list.size(); ++i) {
    auto r = holds_all(s, list[i].equations);
    if (!r.holds) {
      report.pass = false;
      report.failing = list[i].id;
      report.failing_number = i + 1;
      report.failing_equation = r.failing_equation;
      report.witness = std::move(r.counterexample);
      return report;
    }
  }
  return report;
}

ConditionReport check_lqf_axioms(const ExpandedStructure& s) {
  return check_conditions(s, lqf_conditions());
}

IiiReport check_iii_conditions(const ExpandedStructure& s) {
  return {check_conditions(s, iii_conditions()), check_conditions(s, iii_companion_conditions())};
}

// --- w0 uniqueness -------------------------------------------------------------------------

UnaryTable indicator(const FiniteOml& l) {
  UnaryTable t(l.size(), l.top());
  t[l.bottom()] = l.bottom();
  return t;
}

W0UniquenessReport w0_uniqueness(const FiniteOml& l, std::optional<bool> exhaustive) {
  if (!directly_indecomposable(l))
    throw PreconditionError("w0 uniqueness needs a directly indecomposable lattice (center {0,1})");
  const std::size_t n = l.size();
  // allowed[x][v]: v = w(x) is compatible with w(0)=0, x <= w(x), and w(x) central.
  std::vector<std::vector<char>> allowed(n, std::vector<char>(n, 0));
  for (Element x = 0; x < n; ++x)
    for (Element v = 0; v < n; ++v) {
      bool ok = x != l.bottom() || v == l.bottom();
      ok = ok && l.leq(x, v);
      for (Element y = 0; y < n && ok; ++y)
        ok = y == l.join(l.meet(y, v), l.meet(y, l.neg(v)));
      allowed[x][v] = ok ? 1 : 0;
    }

  W0UniquenessReport report;
  report.exhaustive = exhaustive.value_or(n <= 8);
  if (report.exhaustive) {
    if (n > 9) throw PreconditionError("exhaustive w0 search is limited to 9 elements");
    UnaryTable table(n, 0);
    while (true) {
      ++report.tables_examined;
      bool ok = true;
      for (Element x = 0; x < n && ok; ++x) ok = allowed[x][table[x]] != 0;
      if (ok) {
        ++report.passing;
        report.table = table;
      }
      std::size_t i = n;
      bool done = true;
      while (i > 0) {
        --i;
        if (++table[i] < n) {
          done = false;
          break;
        }
        table[i] = 0;
      }
      if (done) break;
    }
  } else {
    std::uint64_t count = 1;
    UnaryTable table(n, 0);
    for (Element x = 0; x < n; ++x) {
      std::uint64_t k = 0;
      for (Element v = 0; v < n; ++v)
        if (allowed[x][v]) {
          if (k == 0) table[x] = v;
          ++k;
        }
      count *= k;
      report.tables_examined += n;
    }
    report.passing = count;
    if (count > 0) report.table = table;
  }
  report.is_indicator = report.passing == 1 && report.table == indicator(l);
  return report;
}

// --- refutation ----------------------------------------------------------------------------

RefutationTrace refute_finite_lqf(const FiniteOml& l) {
  if (l.size() < 2)
    throw PreconditionError("trivial algebra: the one-element lattice satisfies every equation");
  RefutationTrace trace;
  auto add = [&](std::string conclusion, std::string reason) {
    trace.entries.push_back({std::move(conclusion), std::move(reason)});
  };

  const auto z = center(l);
  std::vector<Element> central_atoms;
  for (Element c : z.elements) {
    if (c == l.bottom()) continue;
    bool atom = true;
    for (Element d : z.elements)
      if (d != l.bottom() && d != c && l.leq(d, c)) atom = false;
    if (atom) central_atoms.push_back(c);
  }
  add("Z(L) has " + std::to_string(z.elements.size()) + " elements and " +
          std::to_string(central_atoms.size()) + " atom(s)",
      "center membership test");

  Element c = l.top();
  if (central_atoms.size() > 1) {
    c = central_atoms.front();
    auto dec = factor_decompose(l, c);
    if (!dec.product_embedding)
      throw Error("internal: factor decomposition at central atom failed");
    add("L is isomorphic to [0," + l.name(c) + "] x [0," + l.name(l.neg(c)) +
            "] via x -> (x & c, x & ~c)",
        "factor congruence of a central element");
    add("w0 is the central cover, so " + l.name(c) + " = w0(" + l.name(c) +
            ") and the quotient by its factor congruence is an LQF-algebra on [0," + l.name(c) + "]",
        "LQF2, LQF3, LQF11, LQF12");
  } else {
    add("L is directly indecomposable", "center is {0,1}");
  }

  FiniteOml f = c == l.top() ? l : interval(l, c);
  trace.factor = l.name(c);
  trace.factor_size = f.size();
  if (!directly_indecomposable(f)) throw Error("internal: factor is not indecomposable");
  add("F = [0," + l.name(c) + "] has " + std::to_string(f.size()) + " elements and center {0,1}",
      "central atom");

  auto w0 = w0_uniqueness(f, false);
  if (!w0.is_indicator) throw Error("internal: w0 is not forced to the indicator");
  add("w0 on F is forced to the indicator: w0(0) = 0 and w0(x) = 1 for x != 0",
      "LQF1, LQF2, LQF3 on an indecomposable lattice");

  if (f.size() == 2) {
    add("LQF10 requires w0(w0*(1)) = w0(~w0*(1)); with w0*(1) in {0,1} the two sides are 0 and 1",
        "LQF10");
    add("contradiction: F = {0,1} has no element strictly between 0 and 1", "LQF10");
    trace.contradiction = true;
    return trace;
  }

  add("LQF10 forces 0 < w0*(1) < 1", "LQF10");
  const auto fa = atoms(f);
  const Element a = fa.front();
  trace.atom = a;
  add("call the atom " + f.name(a) + " of F a; then w0(a) = 1", "finite lattice; indicator");
  add("w_a* is order preserving", "LQF5 with w0(a) = 1");
  add("w_a(w_a*(x)) = x and w_a*(w_a(x)) = mu_a(x) for all x", "LQF8, LQF9 with w0(a) = 1");
  add("w_a* is an order isomorphism F -> [0,a], so 0 < w_a*(a) < a",
      "order-preserving maps with w w* = id and w* w = mu_a");
  const auto below = interval(f, a);
  add("contradiction: [0,a] = {0," + f.name(a) + "} has " + std::to_string(below.size()) +
          " elements, F has " + std::to_string(f.size()) + ", and nothing lies strictly between 0 and a",
      "a is an atom");
  trace.contradiction = true;
  return trace;
}

// --- surrogate checks -------------------------------------------------------------------------

DiscriminatorReport discriminator_check(const FiniteOml& l) {
  const auto s = central_cover_surrogate(l);
  const Term t = parse_term("(x & ~ed(R(x,y))) | (z & ed(R(x,y)))");
  const CompiledTerm code(t, {"x", "y", "z"});
  DiscriminatorReport report;
  std::vector<Element> scratch;
  for_each_valuation(3, l.size(), [&](const Element* v) {
    ++report.triples;
    const Element expect = v[0] == v[1] ? v[2] : v[0];
    if (code.run(s, v, scratch) != expect) {
      if (!report.first_failure) report.first_failure = std::array<Element, 3>{v[0], v[1], v[2]};
      ++report.failures;
    }
    return true;
  });
  return report;
}

DimensionLawsReport internal_dimension_laws(const FiniteOml& l, const UnaryTable& w0) {
  if (w0.size() != l.size()) throw PreconditionError("w0 table must cover the carrier");
  DimensionLawsReport r;
  const Element zero = l.bottom();
  for (Element x = 0; x < l.size(); ++x) {
    r.zero_iff_bottom = r.zero_iff_bottom && ((w0[x] == zero) == (x == zero));
    r.idempotent = r.idempotent && w0[w0[x]] == w0[x];
    for (Element y = 0; y < l.size(); ++y) {
      r.equality_is_indicator =
          r.equality_is_indicator && ((w0[x] == w0[y]) == ((x == zero) == (y == zero)));
      r.join = r.join && w0[l.join(x, y)] == l.join(w0[x], w0[y]);
      r.meet = r.meet && w0[l.meet(x, w0[y])] == l.meet(w0[x], w0[y]);
    }
  }
  return r;
}

// --- random structures ----------------------------------------------------------------------------

ExpandedStructure random_structure(const FiniteOml& base, std::mt19937_64& rng) {
  const std::size_t n = base.size();
  auto pick = [&](std::size_t k) { return static_cast<Element>(rng() % k); };
  std::vector<Element> w(n * n), ws(n * n);
  const auto ind = indicator(base);

  const int w0_mode = static_cast<int>(rng() % 4);
  for (Element x = 0; x < n; ++x) {
    switch (w0_mode) {
      case 0: w[x] = ind[x]; break;
      case 1: w[x] = base.central_cover(x); break;
      case 2: w[x] = rng() % 3 == 0 ? pick(n) : ind[x]; break;
      default: w[x] = pick(n); break;
    }
  }
  const int w_mode = static_cast<int>(rng() % 3);
  for (Element z = 1; z < n; ++z)
    for (Element x = 0; x < n; ++x) {
      Element v = pick(n);
      if (w_mode == 0) v = x;
      if (w_mode == 1 && rng() % 4 != 0) v = x;
      w[z * n + x] = v;
    }
  const int ws_mode = static_cast<int>(rng() % 3);
  for (Element z = 0; z < n; ++z)
    for (Element x = 0; x < n; ++x) {
      Element v = pick(n);
      if (ws_mode == 0) v = sasaki(base, z, x);
      if (ws_mode == 1 && rng() % 4 != 0) v = base.meet(z, x);
      ws[z * n + x] = v;
    }
  // Occasionally make w*(0,-) a complement row so LQF6/LQF7 are reached.
  if (rng() % 2 == 0)
    for (Element x = 0; x < n; ++x) ws[x] = base.neg(x);
  return ExpandedStructure(base, std::move(w), std::move(ws));
}

std::vector<AlignmentSample> alignment_run(std::size_t samples, std::uint64_t seed,
                                           std::size_t max_base_size) {
  std::vector<const CatalogEntry*> bases;
  for (const auto& e : catalog())
    if (e.lattice.size() <= max_base_size) bases.push_back(&e);
  if (bases.empty()) throw PreconditionError("no catalog lattice within the size bound");

  const std::vector<Condition> lqf(lqf_conditions().begin(), lqf_conditions().begin() + 10);
  const auto& iii = iii_conditions();
  std::mt19937_64 rng(seed);
  std::vector<AlignmentSample> out;
  for (std::size_t i = 0; i < samples; ++i) {
    const CatalogEntry& e = *bases[rng() % bases.size()];
    const auto s = random_structure(e.lattice, rng);
    AlignmentSample sample;
    sample.base = e.name;
    sample.lqf_first = check_conditions(s, lqf).failing_number;
    sample.iii_first = check_conditions(s, iii).failing_number;
    sample.agree = sample.lqf_first == sample.iii_first;
    out.push_back(std::move(sample));
  }
  return out;
}

}  // namespace lqf
