#include <gtest/gtest.h>

#include <random>

#include "lqf/calculus.hpp"
#include "lqf/error.hpp"
#include "lqf/json_io.hpp"
#include "lqf/model_search.hpp"
#include "mutations.hpp"
#include "oracles.hpp"

using namespace lqf;

namespace {

Term T(const char* s) { return parse_term(s); }

Proof fixture(const std::string& name) { return load_proof(LQF_FIXTURES "/proofs/" + name + ".proof.json"); }

const std::vector<std::string> kFixtures = {"cor1", "cor2", "cor3", "cor4",  "cor5",
                                            "cor6", "cor8", "cor9", "cor10", "cor11"};

}  // namespace

TEST(Axioms, SchemaListIsComplete) {
  const auto& all = axiom_schemas();
  EXPECT_EQ(all.size(), 35u);  // A0a, A0b, A1 .. A33
  EXPECT_NE(find_axiom("A0a"), nullptr);
  EXPECT_NE(find_axiom("A33"), nullptr);
  EXPECT_EQ(find_axiom("A34"), nullptr);
}

TEST(Axioms, InstantiateExamples) {
  EXPECT_EQ(instantiate_axiom("A1", {{"t", T("a")}}), T("R(a,a)"));
  EXPECT_EQ(instantiate_axiom("A14", {}), T("R(w0(0), 0)"));
  EXPECT_EQ(instantiate_axiom("A30", {{"t", T("a")}, {"s", T("b")}, {"r", T("c")}}),
            T("~ed(R(a,b)) | R(w(c,a), w(c,b))"));
  EXPECT_THROW(instantiate_axiom("A1", {}), PreconditionError);
  EXPECT_THROW(instantiate_axiom("A99", {}), PreconditionError);
}

TEST(Axioms, MatchRecoversSubstitution) {
  const Substitution sub = {{"t", T("a & b")}, {"s", T("~c")}};
  const Term inst = instantiate_axiom("A13", sub);
  const auto m = match_axiom(*find_axiom("A13"), inst);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->at("t"), sub.at("t"));
  EXPECT_EQ(m->at("s"), sub.at("s"));
  EXPECT_FALSE(match_axiom(*find_axiom("A1"), T("R(a,b)")));
}

TEST(Axioms, OmlAxiomsHoldInEveryCatalogLattice) {
  for (const auto& ax : axiom_schemas()) {
    if (ax.pattern.uses_w()) continue;
    for (const auto& e : catalog())
      EXPECT_TRUE(holds(e.lattice, {ax.pattern, Term::one()}).holds) << ax.id << " in " << e.name;
  }
}

TEST(Checker, Cor2Passes) {
  const Proof p = fixture("cor2");
  EXPECT_EQ(p.steps.size(), 5u);
  const Verdict v = check_proof(p, true);
  EXPECT_TRUE(v.ok) << v.message;
  EXPECT_EQ(p.steps.back().term, Term::one());
}

TEST(Checker, Cor3Passes) {
  const Proof p = fixture("cor3");
  EXPECT_TRUE(check_proof(p, true).ok);
  EXPECT_EQ(p.steps.back().term, T("R(b,a)"));
}

TEST(Checker, DeletedStepFailsAtFormerStepFive) {
  const Proof p = fixture("cor2_step4_deleted");
  const Verdict v = check_proof(p, true);
  ASSERT_FALSE(v.ok);
  EXPECT_EQ(*v.first_bad_step, 4u);
  EXPECT_EQ(*v.reason, FailureReason::DsShapeMismatch);
}

TEST(Checker, AllFixturesPassStrict) {
  for (const auto& name : kFixtures) {
    const Verdict v = check_proof(fixture(name), true);
    EXPECT_TRUE(v.ok) << name << ": " << v.message;
  }
}

TEST(Checker, FailureReasons) {
  Proof p;
  p.steps.push_back({T("R(a,b)"), Justification::axiom("A1")});
  auto v = check_proof(p, true);
  EXPECT_EQ(*v.reason, FailureReason::NotAnAxiomInstance);
  p.steps[0].just = Justification::axiom("A77");
  EXPECT_EQ(*check_proof(p, true).reason, FailureReason::UnknownAxiom);
  p.steps[0].just = Justification::hyp(1);
  EXPECT_EQ(*check_proof(p, true).reason, FailureReason::HypothesisMismatch);
  p.steps[0].just = Justification::n(1);
  EXPECT_EQ(*check_proof(p, true).reason, FailureReason::ForwardReference);

  Proof q;
  q.theory = {T("a")};
  q.steps.push_back({T("a"), Justification::hyp(1)});
  q.steps.push_back({T("b"), Justification::n(1)});
  EXPECT_EQ(*check_proof(q, true).reason, FailureReason::NShapeMismatch);
  EXPECT_EQ(*check_proof(q, true).first_bad_step, 2u);
}

TEST(Checker, MutationsRejectedAtTheirIndex) {
  std::size_t count = 0;
  for (const auto& name : kFixtures)
    for (const auto& c : mutation::single_step_mutations(name, fixture(name))) {
      const Verdict v = check_proof(c.proof, true);
      ASSERT_FALSE(v.ok) << c.label;
      EXPECT_EQ(*v.first_bad_step, c.expected) << c.label << ": " << v.message;
      ++count;
    }
  EXPECT_GE(count, 20u);
}

TEST(DerivedRules, Cor8Shape) {
  const Fragment f = derived_rule("COR-8", {T("R(a,b)")}, {{"r", T("c")}});
  ASSERT_EQ(f.steps.size(), 3u);
  EXPECT_EQ(f.steps[0].just.kind, Justification::Kind::N);
  EXPECT_EQ(f.steps[1].just.kind, Justification::Kind::Axiom);
  EXPECT_EQ(f.steps[1].just.id, "A30");
  EXPECT_EQ(f.steps[2].just.kind, Justification::Kind::DS);
  EXPECT_EQ(f.conclusion(), T("R(w(c,a), w(c,b))"));
  EXPECT_TRUE(check_fragment(f, {T("R(a,b)")}).ok);
}

TEST(DerivedRules, Cor3Conclusion) {
  const Fragment f = derived_rule("COR-3", {T("R(a,b)")});
  EXPECT_EQ(f.conclusion(), T("R(b,a)"));
}

TEST(DerivedRules, ShapeMismatch) {
  EXPECT_THROW(derived_rule("COR-8", {T("a & b")}, {{"r", T("c")}}), PreconditionError);
  EXPECT_THROW(derived_rule("COR-8", {T("R(a,b)")}), PreconditionError);
  EXPECT_THROW(derived_rule("COR-4", {T("R(a,b)"), T("R(c,d)")}), PreconditionError);
  EXPECT_THROW(derived_rule("COR-7", {}), PreconditionError);
  EXPECT_THROW(derived_rule("COR-12", {}), PreconditionError);
}

TEST(DerivedRules, Conclusions) {
  const Substitution r = {{"r", T("c")}};
  EXPECT_EQ(derived_rule("COR-1", {}, {{"t", T("a")}}).conclusion(), T("a | ~a"));
  EXPECT_EQ(derived_rule("COR-2", {}, {{"t", T("a")}}).conclusion(), Term::one());
  EXPECT_EQ(derived_rule("COR-4", {T("R(a,b)"), T("R(b,c)")}).conclusion(), T("R(a,c)"));
  EXPECT_EQ(derived_rule("COR-5", {T("R(a,b)")}).conclusion(), T("R(~a,~b)"));
  EXPECT_EQ(derived_rule("COR-6", {T("R(a,b)"), T("a & c")}).conclusion(), T("b & c"));
  EXPECT_EQ(derived_rule("COR-9", {T("R(a,b)")}, r).conclusion(), T("R(w(a,c), w(b,c))"));
  EXPECT_EQ(derived_rule("COR-10", {T("R(a,b)")}, r).conclusion(), T("R(w*(c,a), w*(c,b))"));
  EXPECT_EQ(derived_rule("COR-11", {T("R(a,b)")}, r).conclusion(), T("R(w*(a,c), w*(b,c))"));
}

TEST(Macros, ExpansionOfCor2ChecksAndIsPrimitive) {
  const Proof p = expand_macros(fixture("cor2"));
  EXPECT_TRUE(check_proof(p, true).ok);
  for (const auto& s : p.steps) EXPECT_NE(s.just.kind, Justification::Kind::Macro);
  EXPECT_EQ(p.steps.size(), 15u + 4u);
  EXPECT_EQ(p.steps.back().term, Term::one());
}

TEST(Macros, WrongMacroConclusionRejected) {
  Proof p = fixture("cor2");
  p.steps[0].term = T("a | ~b");
  const Verdict v = check_proof(p, true);
  EXPECT_EQ(*v.first_bad_step, 1u);
  EXPECT_EQ(*v.reason, FailureReason::MacroMismatch);
}

TEST(Deduction, HypothesisCase) {
  Proof p;
  p.theory = {T("a")};
  p.steps.push_back({T("a"), Justification::hyp(1)});
  const Step s = deduction_step({}, T("a"), p);
  EXPECT_EQ(s.term, T("~ed(a) | a"));
}

TEST(Deduction, ProofOfOne) {
  Proof p = fixture("cor2");
  p.theory = {T("a")};
  const Step s = deduction_step({}, T("a"), p);
  EXPECT_EQ(s.term, T("~ed(a) | 1"));
}

TEST(Deduction, StrictModeRejectsDt) {
  Proof inner;
  inner.theory = {T("a")};
  inner.steps.push_back({T("a"), Justification::hyp(1)});
  Proof outer;
  outer.steps.push_back(deduction_step({}, T("a"), inner));
  EXPECT_TRUE(check_proof(outer, false).ok);
  const Verdict v = check_proof(outer, true);
  ASSERT_FALSE(v.ok);
  EXPECT_EQ(*v.reason, FailureReason::DtInStrictMode);

  Proof bad = outer;
  bad.steps[0].term = T("~ed(b) | a");
  EXPECT_EQ(*check_proof(bad, false).reason, FailureReason::DtInvalid);
  EXPECT_THROW(deduction_step({T("b")}, T("a"), inner), PreconditionError);
}

// The ed-surrogate interprets ed as the dual central cover; DT conclusions
// from an empty theory must evaluate to 1 there.
TEST(Deduction, ConclusionsSemanticallyValid) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const Term s = oracle::random_term(rng, {"a", "b"}, 2);
    Proof p;
    p.theory = {s};
    p.steps.push_back({s, Justification::hyp(1)});
    const Step d = deduction_step({}, s, p);
    for (const auto& e : catalog()) {
      if (e.lattice.size() > 12) continue;
      const auto m = central_cover_surrogate(e.lattice);
      EXPECT_TRUE(holds(m, {d.term, Term::one()}).holds) << print(d.term) << " in " << e.name;
    }
  }
}

// Property: random rule inputs of the right shape produce fragments that check,
// and for the w-free rules every step is 1 wherever the inputs are 1.
TEST(Property, RandomFragmentsCheckAndAreSound) {
  std::mt19937_64 rng(17);
  const std::vector<std::string> vars = {"a", "b"};
  const auto l = mo(2);
  const auto s = central_cover_surrogate(l);
  for (int i = 0; i < 200; ++i) {
    const Term t = oracle::random_term(rng, vars, 2), u = oracle::random_term(rng, vars, 2);
    const Term r = oracle::random_term(rng, vars, 2);
    const std::vector<std::pair<std::string, std::vector<Term>>> cases = {
        {"COR-3", {Term::rel(t, u)}},
        {"COR-4", {Term::rel(t, u), Term::rel(u, r)}},
        {"COR-5", {Term::rel(t, u)}},
        {"COR-6", {Term::rel(t, u), Term::meet(t, r)}},
        {"COR-8", {Term::rel(t, u)}},
        {"COR-11", {Term::rel(t, u)}},
    };
    for (const auto& [rule, inputs] : cases) {
      const Fragment f = derived_rule(rule, inputs, {{"r", r}});
      ASSERT_TRUE(check_fragment(f, inputs).ok) << rule;
      if (f.conclusion().uses_w()) continue;
      for (Element x = 0; x < l.size(); ++x)
        for (Element y = 0; y < l.size(); ++y) {
          const Valuation v{{"a", x}, {"b", y}};
          bool premises = true;
          for (const auto& in : inputs) premises = premises && eval(in, s, v) == l.top();
          if (!premises) continue;
          for (const auto& st : f.steps) ASSERT_EQ(eval(st.term, s, v), l.top()) << rule << " " << print(st.term);
        }
    }
  }
}

TEST(Property, ProofJsonRoundTrip) {
  for (const auto& name : kFixtures) {
    const Proof p = fixture(name);
    const Proof q = parse_proof(proof_to_json(p));
    ASSERT_EQ(q.steps.size(), p.steps.size());
    for (std::size_t i = 0; i < p.steps.size(); ++i) EXPECT_EQ(q.steps[i].term, p.steps[i].term);
    EXPECT_TRUE(check_proof(q, true).ok);
  }
}
