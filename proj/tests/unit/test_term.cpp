#include <gtest/gtest.h>

#include <random>

#include "lqf/error.hpp"
#include "lqf/model_search.hpp"
#include "lqf/term.hpp"
#include "oracles.hpp"

using namespace lqf;

TEST(Parse, RelExpands) {
  const Term x = Term::var("x"), y = Term::var("y");
  EXPECT_EQ(parse_term("R(x,y)"),
            Term::join(Term::meet(x, y), Term::meet(Term::neg(x), Term::neg(y))));
}

TEST(Parse, EdExpands) {
  const Term t = Term::var("t");
  EXPECT_EQ(parse_term("ed(t)"), Term::neg(Term::w(Term::zero(), Term::neg(t))));
}

TEST(Parse, OtherMacros) {
  const Term x = Term::var("x"), z = Term::var("z");
  EXPECT_EQ(parse_term("w0(x)"), Term::w(Term::zero(), x));
  EXPECT_EQ(parse_term("w0*(x)"), Term::wstar(Term::zero(), x));
  EXPECT_EQ(parse_term("mu(z,x)"), Term::meet(z, Term::join(Term::neg(z), x)));
  EXPECT_EQ(parse_term("w*(z,x)"), Term::wstar(z, x));
}

TEST(Parse, Precedence) {
  const Term x = Term::var("x"), y = Term::var("y"), z = Term::var("z");
  EXPECT_EQ(parse_term("x | y & z"), Term::join(x, Term::meet(y, z)));
  EXPECT_EQ(parse_term("~x & y"), Term::meet(Term::neg(x), y));
  EXPECT_EQ(parse_term("~~x"), Term::neg(Term::neg(x)));
}

TEST(Parse, UnmatchedParenthesis) {
  try {
    parse_term("x & (y");
    FAIL() << "expected a syntax error";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position(), 4u);  // the unmatched "("
  }
  EXPECT_THROW(parse_term("x &"), SyntaxError);
  EXPECT_THROW(parse_term("R(x)"), SyntaxError);
  EXPECT_THROW(parse_term("x y"), SyntaxError);
  EXPECT_THROW(parse_equation("x = y = z"), SyntaxError);
}

TEST(Parse, BareTermIsEquationWithOne) {
  const auto e = parse_equation("x | ~x");
  EXPECT_EQ(e.rhs, Term::one());
}

TEST(Print, Resugars) {
  EXPECT_EQ(print(parse_term("R(x,y)")), "R(x,y)");
  EXPECT_EQ(print(parse_term("ed(x)")), "ed(x)");
  EXPECT_EQ(print(parse_term("w(0,x)")), "w0(x)");
  EXPECT_EQ(print(parse_term("w*(0,x)")), "w0*(x)");
}

TEST(Substitute, Examples) {
  const Term ab = parse_term("a & b");
  const Term r = substitute(parse_term("R(t,s)"), {{"t", ab}, {"s", ab}});
  EXPECT_EQ(r, Term::rel(ab, ab));
  EXPECT_EQ(substitute(parse_term("x"), {}), Term::var("x"));
  const Term w = substitute(parse_term("w(z,x)"), {{"z", Term::zero()}});
  EXPECT_EQ(w, Term::w(Term::zero(), Term::var("x")));
  EXPECT_EQ(print(w), "w0(x)");
}

TEST(Eval, Examples) {
  for (const auto& e : catalog()) {
    const auto& l = e.lattice;
    for (Element a = 0; a < l.size(); ++a) {
      EXPECT_EQ(eval(parse_term("x | ~x"), l, {{"x", a}}), l.top());
      EXPECT_EQ(eval(parse_term("R(x,x)"), l, {{"x", a}}), l.top());
      EXPECT_EQ(eval(parse_term("mu(a, ~a)"), l, {{"a", a}}), l.bottom());
    }
  }
}

TEST(Eval, Errors) {
  const auto l = mo(2);
  EXPECT_THROW(eval(parse_term("x & y"), l, {{"x", 0}}), ValuationError);
  EXPECT_THROW(eval(parse_term("w0(x)"), l, {{"x", 0}}), SignatureError);
}

TEST(Holds, Examples) {
  const Equation dist = parse_equation("x&(y|z) = (x&y)|(x&z)");
  EXPECT_TRUE(holds(boolean(2), dist).holds);
  const auto m = mo(2);
  const auto h = holds(m, dist);
  ASSERT_FALSE(h.holds);
  ASSERT_TRUE(h.counterexample);
  // Witness uses atoms, and really is a counterexample.
  const auto& v = *h.counterexample;
  for (const auto& [name, e] : v) EXPECT_TRUE(e != m.bottom() && e != m.top()) << name;
  EXPECT_NE(eval(dist.lhs, m, v), eval(dist.rhs, m, v));
  for (const auto& e : catalog()) EXPECT_TRUE(holds(e.lattice, parse_equation("x & (y | ~y) = x")).holds);
}

TEST(Holds, CounterexampleIsLexicographicallyFirst) {
  const auto m = mo(2);
  const Equation dist = parse_equation("x&(y|z) = (x&y)|(x&z)");
  const oracle::Naive nv(m);
  std::optional<Valuation> first;
  for (Element x = 0; x < m.size() && !first; ++x)
    for (Element y = 0; y < m.size() && !first; ++y)
      for (Element z = 0; z < m.size() && !first; ++z) {
        Valuation v{{"x", x}, {"y", y}, {"z", z}};
        if (oracle::eval(dist.lhs, nv, v) != oracle::eval(dist.rhs, nv, v)) first = v;
      }
  EXPECT_EQ(*holds(m, dist).counterexample, *first);
}

TEST(Structures, SurrogateRealizesDualCover) {
  for (const auto& e : catalog()) {
    const auto s = central_cover_surrogate(e.lattice);
    for (Element a = 0; a < e.lattice.size(); ++a)
      EXPECT_EQ(eval(parse_term("ed(x)"), s, {{"x", a}}), e.lattice.dual_central_cover(a));
  }
}

// Property: parse(print(t)) == t and compiled evaluation matches the
// recursive oracle on random terms, lattices and valuations.
TEST(Property, RoundTripAndEvaluation) {
  std::mt19937_64 rng(99);
  const std::vector<std::string> vars = {"x", "y", "z"};
  std::vector<const CatalogEntry*> pool;
  for (const auto& e : catalog()) pool.push_back(&e);
  for (int i = 0; i < 2000; ++i) {
    const bool with_w = i % 2 == 1;
    const Term t = oracle::random_term(rng, vars, 4, with_w);
    ASSERT_EQ(parse_term(print(t)), t) << print(t);
    const auto& l = pool[rng() % pool.size()]->lattice;
    const oracle::Naive nv(l);
    Valuation v;
    for (const auto& x : vars) v[x] = static_cast<Element>(rng() % l.size());
    if (with_w) {
      std::vector<Element> w(l.size() * l.size()), ws(w.size());
      for (auto& e : w) e = static_cast<Element>(rng() % l.size());
      for (auto& e : ws) e = static_cast<Element>(rng() % l.size());
      const ExpandedStructure s(l, w, ws);
      ASSERT_EQ(eval(t, s, v), oracle::eval(t, nv, v, &s)) << print(t);
    } else {
      ASSERT_EQ(eval(t, l, v), oracle::eval(t, nv, v)) << print(t);
    }
  }
}

TEST(Property, HoldsMatchesOracle) {
  std::mt19937_64 rng(5);
  const std::vector<std::string> vars = {"x", "y"};
  const auto m = mo(2);
  const oracle::Naive nv(m);
  std::size_t valid = 0;
  for (int i = 0; i < 500; ++i) {
    const Equation e{oracle::random_term(rng, vars, 3), oracle::random_term(rng, vars, 3)};
    const bool expected = oracle::holds(e, nv, {"x", "y"});
    ASSERT_EQ(holds(m, e).holds, expected) << print(e);
    valid += expected;
  }
  EXPECT_GT(valid, 0u);
}

TEST(Property, SubstitutionCommutesWithEvaluation) {
  std::mt19937_64 rng(11);
  const auto l = product(boolean(1), mo(2));
  for (int i = 0; i < 300; ++i) {
    const Term t = oracle::random_term(rng, {"x", "y"}, 3);
    const Term sx = oracle::random_term(rng, {"u"}, 2), sy = oracle::random_term(rng, {"u"}, 2);
    const Element u = static_cast<Element>(rng() % l.size());
    const Element lhs = eval(substitute(t, {{"x", sx}, {"y", sy}}), l, {{"u", u}});
    const Element rhs = eval(t, l, {{"x", eval(sx, l, {{"u", u}})}, {"y", eval(sy, l, {{"u", u}})}});
    ASSERT_EQ(lhs, rhs);
  }
}
