#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "lqf/error.hpp"
#include "lqf/json_io.hpp"
#include "lqf/model_search.hpp"
#include "lqf/oml.hpp"
#include "oracles.hpp"

using namespace lqf;

namespace {

OmlTables chain2() {
  OmlTables t;
  t.names = {"0", "1"};
  t.leq = {{true, true}, {false, true}};
  t.neg = {1, 0};
  t.bottom = 0;
  t.top = 1;
  return t;
}

OmlTables o6() { return parse_tables(read_file(LQF_FIXTURES "/lattices/o6.json"), "o6"); }

std::vector<FiniteOml> small_catalog(std::size_t max) {
  std::vector<FiniteOml> out;
  for (const auto& e : catalog())
    if (e.lattice.size() <= max) out.push_back(e.lattice);
  return out;
}

}  // namespace

TEST(VerifyOml, ChainOfTwoPasses) {
  const auto r = verify_oml(chain2());
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.message, "ok");
}

TEST(VerifyOml, BenzeneFailsOrthomodularity) {
  const OmlTables t = o6();
  const auto r = verify_oml(t);
  ASSERT_FALSE(r.ok);
  EXPECT_EQ(*r.law, OmlLaw::Orthomodular);
  // Smallest failing pair: a <= b but a | (~a & b) = a | 0 = a.
  EXPECT_EQ(t.names[r.x], "a");
  EXPECT_EQ(t.names[r.y], "b");
  EXPECT_THROW(FiniteOml::from_tables(t), PreconditionError);
}

TEST(VerifyOml, BenzeneWitnessAgreesWithBruteForce) {
  const OmlTables t = o6();
  const std::size_t n = t.names.size();
  auto meet = [&](Element a, Element b) {
    Element best = t.bottom;
    for (Element c = 0; c < n; ++c)
      if (t.leq[c][a] && t.leq[c][b] && t.leq[best][c]) best = c;
    return best;
  };
  auto join = [&](Element a, Element b) {
    Element best = t.top;
    for (Element c = 0; c < n; ++c)
      if (t.leq[a][c] && t.leq[b][c] && t.leq[c][best]) best = c;
    return best;
  };
  std::vector<std::pair<Element, Element>> fails;
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      if (join(x, meet(t.neg[x], join(x, y))) != join(x, y)) fails.emplace_back(x, y);
  ASSERT_FALSE(fails.empty());
  const auto r = verify_oml(t);
  EXPECT_EQ(std::make_pair(r.x, r.y), fails.front());
  // (a, c) is not a failing pair: a | c = 1 and a | (d & 1) = 1.
  EXPECT_EQ(std::count(fails.begin(), fails.end(), std::make_pair(Element{1}, Element{3})), 0);
}

TEST(VerifyOml, Mo2FixturePasses) {
  const auto t = parse_tables(read_file(LQF_FIXTURES "/lattices/mo2.json"), "mo2");
  EXPECT_TRUE(verify_oml(t).ok);
}

TEST(VerifyOml, ReportsFirstLawInOrder) {
  OmlTables t = chain2();
  t.neg = {0, 1};
  auto r = verify_oml(t);
  ASSERT_FALSE(r.ok);
  EXPECT_EQ(*r.law, OmlLaw::OrderReversal);

  t = parse_tables(read_file(LQF_FIXTURES "/lattices/chain3_bad.json"), "bad");
  r = verify_oml(t);
  ASSERT_FALSE(r.ok);
  EXPECT_EQ(*r.law, OmlLaw::Involution);
}

TEST(VerifyOml, MalformedTablesThrow) {
  OmlTables t = chain2();
  t.neg = {1};
  EXPECT_THROW(verify_oml(t), StructuralError);
  t = chain2();
  t.neg = {1, 7};
  EXPECT_THROW(verify_oml(t), StructuralError);
}

TEST(Constructions, Sizes) {
  EXPECT_EQ(boolean(0).size(), 1u);
  EXPECT_EQ(boolean(2).size(), 4u);
  const auto m = mo(2);
  EXPECT_EQ(m.size(), 6u);
  EXPECT_EQ(atoms(m).size(), 4u);
  EXPECT_TRUE(verify_oml(m.tables()).ok);
  const auto iv = interval(m, m.element("a"));
  EXPECT_EQ(iv.size(), 2u);
  EXPECT_EQ(product(boolean(1), mo(2)).size(), 12u);
  EXPECT_EQ(horizontal_sum(boolean(2), boolean(3)).size(), 10u);
}

TEST(Constructions, BuildSpecsMatchDirectConstruction) {
  EXPECT_EQ(build("product(boolean(1),mo(2))").tables().leq, product(boolean(1), mo(2)).tables().leq);
  EXPECT_EQ(build("interval(mo(2),a)").size(), 2u);
  EXPECT_THROW(build("mo("), Error);
  EXPECT_THROW(build("frobnicate(2)"), Error);
}

TEST(Constructions, EveryCatalogLatticeIsAnOml) {
  for (const auto& e : catalog()) {
    EXPECT_TRUE(verify_oml(e.lattice.tables()).ok) << e.name;
    EXPECT_EQ(build(e.spec).size(), e.lattice.size()) << e.name;
  }
}

TEST(Constructions, MeetAndJoinMatchNaiveOracle) {
  for (const auto& l : small_catalog(24)) {
    const oracle::Naive nv(l);
    for (Element a = 0; a < l.size(); ++a)
      for (Element b = 0; b < l.size(); ++b) {
        ASSERT_EQ(l.meet(a, b), nv.meet(a, b));
        ASSERT_EQ(l.join(a, b), nv.join(a, b));
      }
  }
}

TEST(Sasaki, Examples) {
  for (const auto& l : small_catalog(16)) {
    for (Element a = 0; a < l.size(); ++a) {
      EXPECT_EQ(sasaki(l, a, l.neg(a)), l.bottom());
      for (Element x = 0; x < l.size(); ++x) {
        if (l.leq(x, a)) EXPECT_EQ(sasaki(l, a, x), x);
        EXPECT_TRUE(l.leq(sasaki(l, a, x), a));
      }
    }
    for (Element x = 0; x < l.size(); ++x) EXPECT_EQ(sasaki(l, l.top(), x), x);
  }
}

TEST(Commutes, Examples) {
  const auto m = mo(2);
  for (Element a = 0; a < m.size(); ++a) {
    EXPECT_TRUE(commutes(m, a, a));
    EXPECT_TRUE(commutes(m, m.bottom(), a));
  }
  EXPECT_FALSE(commutes(m, m.element("a"), m.element("b")));
  EXPECT_TRUE(commutes(m, m.element("a"), m.element("a'")));
}

TEST(Center, Examples) {
  for (unsigned k = 0; k <= 3; ++k) EXPECT_EQ(center(boolean(k)).elements.size(), boolean(k).size());
  const auto m = mo(2);
  const auto c = center(m);
  EXPECT_EQ(c.elements, (std::vector<Element>{m.bottom(), m.top()}));
  EXPECT_TRUE(directly_indecomposable(m));
  EXPECT_FALSE(directly_indecomposable(boolean(2)));
  const auto p = product(m, m);
  for (const char* name : {"(0,0)", "(1,0)", "(0,1)", "(1,1)"})
    EXPECT_TRUE(p.is_central(p.element(name))) << name;
}

TEST(Center, MatchesNaiveOracleAndIsBoolean) {
  for (const auto& l : small_catalog(24)) {
    const oracle::Naive nv(l);
    const auto c = center(l);
    EXPECT_EQ(c.elements, nv.center()) << l.label();
    EXPECT_TRUE(c.boolean_subalgebra);
  }
}

TEST(CentralCover, Examples) {
  for (const auto& l : small_catalog(24)) {
    const oracle::Naive nv(l);
    const bool di = directly_indecomposable(l);
    for (Element a = 0; a < l.size(); ++a) {
      if (l.is_central(a)) EXPECT_EQ(l.central_cover(a), a);
      if (di && a != l.bottom()) EXPECT_EQ(l.central_cover(a), l.top());
      EXPECT_EQ(l.dual_central_cover(a), l.neg(l.central_cover(l.neg(a))));
      EXPECT_EQ(l.dual_central_cover(a), nv.dual_cover(a));
    }
  }
}

TEST(Complements, ViaC) {
  const auto m = mo(2);
  for (Element a = 0; a < m.size(); ++a) {
    EXPECT_EQ(complement_via_c(m, a, m.bottom()), m.neg(a));
    EXPECT_EQ(complement_via_c(m, a, m.top()), m.neg(a));
  }
  const Element a = m.element("a");
  std::set<Element> image, brute;
  for (Element x = 0; x < m.size(); ++x) image.insert(complement_via_c(m, a, x));
  for (Element c = 0; c < m.size(); ++c)
    if (is_complement(m, a, c)) brute.insert(c);
  EXPECT_EQ(image, brute);
  EXPECT_EQ(image, (std::set<Element>{m.element("a'"), m.element("b"), m.element("b'")}));
}

TEST(Complements, ViaCIsAlwaysAComplement) {
  for (const auto& l : small_catalog(24))
    for (Element a = 0; a < l.size(); ++a)
      for (Element x = 0; x < l.size(); ++x) ASSERT_TRUE(is_complement(l, a, complement_via_c(l, a, x)));
}

TEST(Perspective, Examples) {
  const auto m = mo(2);
  for (Element a = 0; a < m.size(); ++a) EXPECT_TRUE(perspective(m, a, a).perspective());
  const auto r = perspective(m, m.element("a"), m.element("b"));
  ASSERT_TRUE(r.perspective());
  EXPECT_EQ(*r.common_complement, m.element("a'"));
  for (unsigned k = 1; k <= 4; ++k) {
    const auto b = boolean(k);
    for (Element x = 0; x < b.size(); ++x)
      for (Element y = 0; y < b.size(); ++y) EXPECT_EQ(perspective(b, x, y).perspective(), x == y);
  }
}

TEST(Perspective, CriterionAgreesWithNaiveOracle) {
  for (const auto& l : small_catalog(16)) {
    const oracle::Naive nv(l);
    for (Element a = 0; a < l.size(); ++a)
      for (Element b = 0; b < l.size(); ++b) {
        const auto r = perspective(l, a, b);
        EXPECT_TRUE(r.agree());
        EXPECT_EQ(r.perspective(), nv.perspective(a, b));
      }
  }
}

TEST(Factor, TrivialCongruences) {
  const auto l = product(boolean(1), mo(2));
  const auto top = factor_congruence(l, l.top());
  EXPECT_EQ(top.block_count, l.size());
  const auto bot = factor_congruence(l, l.bottom());
  EXPECT_EQ(bot.block_count, 1u);
}

TEST(Factor, ProductDecomposition) {
  const auto l = product(boolean(1), mo(2));
  const auto d = factor_decompose(l, l.element("(1,0)"));
  EXPECT_TRUE(d.theta_is_congruence);
  EXPECT_TRUE(d.quotient_isomorphism);
  EXPECT_TRUE(d.product_embedding);
  EXPECT_EQ(d.factor.size(), 2u);
  EXPECT_EQ(d.cofactor.size(), 6u);
  // The cofactor is MO2: four atoms, center {0,1}.
  EXPECT_EQ(atoms(d.cofactor).size(), 4u);
  EXPECT_TRUE(directly_indecomposable(d.cofactor));
  EXPECT_THROW(factor_decompose(l, l.element("(0,a)")), PreconditionError);
}

TEST(Factor, EveryCentralElementDecomposes) {
  for (const auto& l : small_catalog(24))
    for (Element z : center(l).elements) {
      const auto d = factor_decompose(l, z);
      EXPECT_TRUE(d.theta_is_congruence && d.quotient_isomorphism && d.product_embedding) << l.label();
      EXPECT_EQ(d.factor.size() * d.cofactor.size(), l.size());
    }
}

TEST(Modularity, Examples) {
  for (unsigned k = 0; k <= 3; ++k) {
    const auto r = modularity_suite(boolean(k));
    EXPECT_TRUE(r.is_modular);
    EXPECT_FALSE(r.witness || r.n5 || r.perspective_pair);
  }
  EXPECT_TRUE(modularity_suite(mo(2)).is_modular);
  for (const auto& e : catalog()) {
    const auto r = modularity_suite(e.lattice);
    EXPECT_EQ(r.is_modular, e.modular) << e.name;
    EXPECT_TRUE(r.consistent()) << e.name;
  }
}

TEST(Modularity, WitnessesAreGenuine) {
  for (const auto& e : catalog()) {
    const auto r = modularity_suite(e.lattice);
    if (r.is_modular) continue;
    const auto& l = e.lattice;
    const auto [a, b, x] = *r.witness;
    EXPECT_NE(l.join(l.meet(x, b), l.meet(a, b)), l.meet(l.join(l.meet(x, b), a), b));
    const auto [lo, p, q, s, hi] = *r.n5;
    EXPECT_TRUE(l.leq(p, q) && p != q);
    EXPECT_EQ(l.meet(p, s), lo);
    EXPECT_EQ(l.meet(q, s), lo);
    EXPECT_EQ(l.join(p, s), hi);
    EXPECT_EQ(l.join(q, s), hi);
    const auto [u, v] = *r.perspective_pair;
    EXPECT_TRUE(l.leq(u, v) && u != v);
    EXPECT_TRUE(perspective(l, u, v).perspective());
  }
}

TEST(MapDiagnostics, IdentityOnTop) {
  const auto l = mo(2);
  UnaryTable id(l.size());
  for (Element x = 0; x < l.size(); ++x) id[x] = x;
  const auto d = map_diagnostics(l, l.top(), id, id, true);
  EXPECT_TRUE(*d.hypotheses_hold);
  EXPECT_TRUE(*d.wstar_onto_interval_iso);
  EXPECT_TRUE(*d.w_restricted_iso);
  EXPECT_TRUE(*d.wstar_fixes_a);
  EXPECT_TRUE(*d.fixpoint_iff_top);
  EXPECT_TRUE(*d.relcomp_equivalent);
}

TEST(MapDiagnostics, ProperElementNeverFixed) {
  // In a finite lattice w* would embed L into the smaller [0,a], so for a != 1
  // no table pair meets the hypotheses; whenever one does, w*(a) != a.
  const auto l = boolean(2);
  const Element a = l.element("a1");
  std::size_t satisfying = 0;
  for (std::uint32_t code = 0; code < 256 * 256; ++code) {
    UnaryTable w(4), ws(4);
    for (int i = 0; i < 4; ++i) {
      w[i] = (code >> (2 * i)) & 3;
      ws[i] = (code >> (8 + 2 * i)) & 3;
    }
    const auto d = map_diagnostics(l, a, w, ws);
    if (*d.hypotheses_hold) {
      ++satisfying;
      EXPECT_FALSE(*d.wstar_fixes_a);
      EXPECT_TRUE(*d.fixpoint_iff_top);
    }
  }
  EXPECT_EQ(satisfying, 0u);
}

TEST(MapDiagnostics, RejectsNonOrderPreservingTables) {
  const auto l = mo(2);
  std::mt19937_64 rng(7);
  std::size_t rejected = 0;
  for (int i = 0; i < 200; ++i) {
    UnaryTable w(l.size());
    for (auto& v : w) v = static_cast<Element>(rng() % l.size());
    if (order_preserving(l, w)) continue;
    EXPECT_THROW(map_diagnostics(l, l.element("a"), w, w, true), PreconditionError);
    ++rejected;
  }
  EXPECT_GT(rejected, 100u);
  EXPECT_THROW(map_diagnostics(l, l.bottom(), std::nullopt, std::nullopt), PreconditionError);
}

TEST(Closure, GeneratesSubalgebra) {
  const auto m = mo(2);
  const auto c = closure(m, {m.element("a")});
  EXPECT_EQ(c.size(), 4u);
  const auto sub = subalgebra(m, c);
  EXPECT_EQ(sub.size(), 4u);
  EXPECT_EQ(closure(m, {m.element("a"), m.element("b")}).size(), 6u);
}

// Property: on random products and horizontal sums of small catalog pieces the
// structural invariants hold and meet/join agree with the naive oracle.
TEST(Property, RandomConstructions) {
  const std::vector<FiniteOml> pieces = {boolean(1), boolean(2), mo(2), mo(3)};
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 30; ++i) {
    const auto& a = pieces[rng() % pieces.size()];
    const auto& b = pieces[rng() % pieces.size()];
    const FiniteOml l = rng() % 2 ? product(a, b) : horizontal_sum(a, b);
    ASSERT_TRUE(verify_oml(l.tables()).ok);
    const oracle::Naive nv(l);
    for (int k = 0; k < 200; ++k) {
      const Element x = rng() % l.size(), y = rng() % l.size();
      ASSERT_EQ(l.meet(x, y), nv.meet(x, y));
      ASSERT_EQ(l.join(x, y), nv.join(x, y));
      ASSERT_EQ(l.neg(l.neg(x)), x);
      ASSERT_EQ(l.meet(x, l.neg(x)), l.bottom());
    }
  }
}
