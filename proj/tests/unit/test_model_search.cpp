#include <gtest/gtest.h>

#include <random>

#include "lqf/error.hpp"
#include "lqf/json_io.hpp"
#include "lqf/model_search.hpp"
#include "oracles.hpp"

using namespace lqf;

namespace {

Equation E(const char* s) { return parse_equation(s); }

ExpandedStructure constant_tables(const FiniteOml& l, Element v) {
  const std::vector<Element> t(l.size() * l.size(), v);
  return ExpandedStructure(l, t, t);
}

}  // namespace

TEST(Catalog, ShapeAndFlags) {
  const auto& c = catalog();
  EXPECT_GE(c.size(), 8u);
  for (const auto& e : c) {
    EXPECT_GE(e.lattice.size(), 2u);
    EXPECT_LE(e.lattice.size(), 32u);
    EXPECT_EQ(e.boolean, center(e.lattice).elements.size() == e.lattice.size()) << e.name;
    EXPECT_EQ(e.modular, modularity_suite(e.lattice).is_modular) << e.name;
    EXPECT_EQ(e.directly_indecomposable, directly_indecomposable(e.lattice)) << e.name;
    EXPECT_EQ(find_catalog(e.name), &e);
    EXPECT_EQ(find_catalog(e.spec), &e);
  }
  EXPECT_EQ(find_catalog("nope"), nullptr);
}

TEST(Countermodel, Distributivity) {
  const auto c = countermodel(E("x&(y|z)=(x&y)|(x&z)"));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->lattice, "MO2");
  const auto& l = find_catalog("MO2")->lattice;
  const Equation e = E("x&(y|z)=(x&y)|(x&z)");
  EXPECT_NE(eval(e.lhs, l, c->valuation), eval(e.rhs, l, c->valuation));
}

TEST(Countermodel, OrthomodularLawHasNone) {
  EXPECT_FALSE(countermodel(E("x | (~x & (x | y)) = x | y")));
}

TEST(Countermodel, ModularLawMatchesModularityFlags) {
  const Equation mod = E("(x & y) | (z & y) = ((x & y) | z) & y");
  for (const auto& e : catalog()) {
    const auto c = countermodel(mod, {e.name});
    EXPECT_EQ(c.has_value(), !e.modular) << e.name;
  }
}

TEST(Countermodel, Errors) {
  EXPECT_THROW(countermodel(E("w0(x) = x")), SignatureError);
  EXPECT_THROW(countermodel(E("x = x"), {"nope"}), PreconditionError);
}

TEST(Decide2, Examples) {
  EXPECT_TRUE(decide2(E("x = ~~x")).valid);
  EXPECT_THROW(decide2(E("x&(y|z)=(x&y)|(x&z)")), PreconditionError);
  const auto d = decide2(E("x&(y|~y) = x"));
  EXPECT_TRUE(d.valid);
  for (const auto& e : catalog()) EXPECT_TRUE(holds(e.lattice, E("x&(y|~y) = x")).holds);
  const auto bad = decide2(E("x & (y | ~x) = x & y"));  // fails for non-commuting x, y
  EXPECT_FALSE(bad.valid);
  EXPECT_TRUE(bad.counterexample);
  EXPECT_TRUE(bad.generators_agree);
}

TEST(Decide2, FreeAlgebraPinned) {
  const auto& f = free_algebra2();
  EXPECT_EQ(f.algebra.size(), 96u);
  EXPECT_EQ(f.carrier.size(), 96u);
  EXPECT_EQ(f.ambient.size(), 16u * 6u);
  // Oracle: closure of the generators computed with naive lattice operations.
  const oracle::Naive nv(f.ambient);
  std::set<Element> seen = {nv.bot, nv.top, f.g1, f.g2};
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<Element> cur(seen.begin(), seen.end());
    for (Element a : cur) {
      grew |= seen.insert(nv.neg(a)).second;
      for (Element b : cur) {
        grew |= seen.insert(nv.meet(a, b)).second;
        grew |= seen.insert(nv.join(a, b)).second;
      }
    }
  }
  EXPECT_EQ(std::vector<Element>(seen.begin(), seen.end()), f.carrier);
}

TEST(Conditions, ListsHaveExpectedIds) {
  ASSERT_EQ(lqf_conditions().size(), 12u);
  ASSERT_EQ(iii_conditions().size(), 10u);
  EXPECT_EQ(lqf_conditions().front().id, "LQF1");
  EXPECT_EQ(iii_conditions().back().id, "III10");
  EXPECT_EQ(iii_companion_conditions().size(), 2u);
}

TEST(Conditions, OneElementAlgebraPasses) {
  const auto s = constant_tables(boolean(0), 0);
  EXPECT_TRUE(check_lqf_axioms(s).pass);
  const auto r = check_iii_conditions(s);
  EXPECT_TRUE(r.conditions.pass);
  EXPECT_TRUE(r.companions.pass);
}

TEST(Conditions, TwoElementFailsForAllTables) {
  const auto l = boolean(1);
  for (unsigned code = 0; code < 256; ++code) {
    std::vector<Element> w(4), ws(4);
    for (int i = 0; i < 4; ++i) {
      w[i] = (code >> i) & 1;
      ws[i] = (code >> (4 + i)) & 1;
    }
    const ExpandedStructure s(l, w, ws);
    EXPECT_FALSE(check_lqf_axioms(s).pass) << code;
    EXPECT_FALSE(check_iii_conditions(s).conditions.pass) << code;
  }
}

TEST(Conditions, Mo2ConstantZeroFailsAtLqf2) {
  const auto sf = load_structure(LQF_FIXTURES "/structures/mo2_zero.json");
  ASSERT_TRUE(sf.expanded);
  const auto r = check_lqf_axioms(*sf.expanded);
  ASSERT_FALSE(r.pass);
  EXPECT_EQ(r.failing, "LQF2");
  EXPECT_EQ(r.failing_number, 2u);
  ASSERT_TRUE(r.witness);
  // Every nonzero x is a witness since w0(x) = 0; x = 1 among them.
  const auto& l = sf.lattice;
  const Element x = r.witness->at("x");
  EXPECT_NE(x, l.bottom());
  const Condition& c = lqf_conditions()[1];
  EXPECT_FALSE(holds(*sf.expanded, c.equations[r.failing_equation]).holds);
  const Valuation top{{"x", l.top()}};
  EXPECT_NE(eval(c.equations[0].lhs, *sf.expanded, top), eval(c.equations[0].rhs, *sf.expanded, top));
}

TEST(Conditions, LqfPassImpliesSharedIiiPass) {
  // No finite nontrivial structure passes, so compare on the shared prefix:
  // whenever LQF1..k pass, III1..k pass too.
  std::mt19937_64 rng(8);
  const std::vector<Condition> lqf(lqf_conditions().begin(), lqf_conditions().begin() + 10);
  for (int i = 0; i < 200; ++i) {
    const auto& base = catalog()[rng() % 8].lattice;
    const auto s = random_structure(base, rng);
    const auto a = check_conditions(s, lqf), b = check_conditions(s, iii_conditions());
    EXPECT_EQ(a.failing_number, b.failing_number);
  }
}

TEST(Refute, TwoElement) {
  const auto t = refute_finite_lqf(boolean(1));
  EXPECT_TRUE(t.contradiction);
  EXPECT_EQ(t.factor_size, 2u);
  bool mentions_lqf10 = false;
  for (const auto& e : t.entries) mentions_lqf10 |= e.reason.find("LQF10") != std::string::npos;
  EXPECT_TRUE(mentions_lqf10);
}

TEST(Refute, Mo2EndsAtAnAtom) {
  const auto l = mo(2);
  const auto t = refute_finite_lqf(l);
  EXPECT_TRUE(t.contradiction);
  ASSERT_TRUE(t.atom);
  EXPECT_EQ(interval(l, *t.atom).size(), 2u);
  EXPECT_NE(t.entries.back().conclusion.find("contradiction"), std::string::npos);
}

TEST(Refute, Mo2RandomSamplingFindsNoModel) {
  const auto l = mo(2);
  std::mt19937_64 rng(12);
  for (int i = 0; i < 2000; ++i) EXPECT_FALSE(check_lqf_axioms(random_structure(l, rng)).pass);
}

TEST(Refute, TrivialAlgebraRejected) {
  try {
    refute_finite_lqf(boolean(0));
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("trivial algebra"), std::string::npos);
  }
}

TEST(Refute, DecomposableLatticesUseAFactor) {
  for (const auto& e : catalog()) {
    const auto t = refute_finite_lqf(e.lattice);
    EXPECT_TRUE(t.contradiction) << e.name;
    EXPECT_GE(t.factor_size, 2u);
    EXPECT_LE(t.factor_size, e.lattice.size());
  }
}

TEST(W0, Examples) {
  const auto b = w0_uniqueness(boolean(1), true);
  EXPECT_EQ(b.tables_examined, 4u);
  EXPECT_EQ(b.passing, 1u);
  EXPECT_TRUE(b.is_indicator);
  const auto m = w0_uniqueness(mo(2), true);
  EXPECT_EQ(m.tables_examined, 46656u);
  EXPECT_EQ(m.passing, 1u);
  EXPECT_TRUE(m.is_indicator);
  EXPECT_THROW(w0_uniqueness(boolean(2)), PreconditionError);
}

TEST(W0, PropagationAgreesWithExhaustive) {
  for (const auto& e : catalog()) {
    if (!e.directly_indecomposable) continue;
    const auto p = w0_uniqueness(e.lattice, false);
    EXPECT_EQ(p.passing, 1u) << e.name;
    EXPECT_TRUE(p.is_indicator) << e.name;
    if (e.lattice.size() <= 8) EXPECT_EQ(w0_uniqueness(e.lattice, true).passing, 1u) << e.name;
  }
}

TEST(W0, DimensionLaws) {
  for (const auto& e : catalog()) {
    if (!e.directly_indecomposable) continue;
    EXPECT_TRUE(internal_dimension_laws(e.lattice, indicator(e.lattice)).all()) << e.name;
  }
  UnaryTable id(6);
  for (Element x = 0; x < 6; ++x) id[x] = x;
  EXPECT_FALSE(internal_dimension_laws(mo(2), id).all());
}

TEST(Discriminator, IndecomposableLatticesPass) {
  for (const auto& e : catalog()) {
    const auto r = discriminator_check(e.lattice);
    EXPECT_EQ(r.triples, e.lattice.size() * e.lattice.size() * e.lattice.size());
    EXPECT_EQ(r.ok(), e.directly_indecomposable) << e.name;
  }
}

TEST(Alignment, Deterministic) {
  const auto a = alignment_run(30, 4), b = alignment_run(30, 4);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].base, b[i].base);
    EXPECT_EQ(a[i].lqf_first, b[i].lqf_first);
    EXPECT_TRUE(a[i].agree);
  }
}

// Property: check_conditions reports exactly the first failing equation found
// by the naive evaluator, in list order.
TEST(Property, ConditionReportMatchesOracle) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 60; ++i) {
    const auto& base = catalog()[rng() % 7].lattice;
    const auto s = random_structure(base, rng);
    const oracle::Naive nv(base);
    std::size_t expected = 0;
    for (std::size_t c = 0; c < lqf_conditions().size() && !expected; ++c)
      for (const auto& eq : lqf_conditions()[c].equations) {
        std::set<std::string> vs;
        for (const auto& v : eq.lhs.variables()) vs.insert(v);
        for (const auto& v : eq.rhs.variables()) vs.insert(v);
        if (!oracle::holds(eq, nv, {vs.begin(), vs.end()}, &s)) {
          expected = c + 1;
          break;
        }
      }
    EXPECT_EQ(check_lqf_axioms(s).failing_number, expected);
  }
}
