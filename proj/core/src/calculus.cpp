#include "lqf/calculus.hpp"

#include <algorithm>
#include <set>

#include "lqf/error.hpp"

namespace lqf {

namespace {

const std::set<std::string>& metavariable_names() {
  static const std::set<std::string> names{"t", "s", "r", "x", "y", "z"};
  return names;
}

std::vector<AxiomSchema> build_schemas() {
  const std::vector<std::pair<const char*, const char*>> table = {
      {"A0a", "R(t | ~t, 1)"},
      {"A0b", "R(t & ~t, 0)"},
      {"A1", "R(t, t)"},
      {"A2", "~R(t,s) | (~R(s,r) | R(t,r))"},
      {"A3", "~R(t,s) | R(~t, ~s)"},
      {"A4", "~R(t,s) | R(t & r, s & r)"},
      {"A5", "R(t & s, s & t)"},
      {"A6", "R(t & (s & r), (t & s) & r)"},
      {"A7", "R(t & (t | s), t)"},
      {"A8", "R(~t & t, (~t & t) & s)"},
      {"A9", "R(t, ~~t)"},
      {"A10", "R(~(t | s), ~t & ~s)"},
      {"A11", "R(t | (~t & (t | s)), t | s)"},
      {"A12", "R(R(t,s), R(s,t))"},
      {"A13", "~R(t,s) | (~t | s)"},
      {"A14", "R(w0(0), 0)"},
      {"A15", "R(x, x & w0(x))"},
      {"A16", "R(y, (y & w0(x)) | (y & ~w0(x)))"},
      {"A17", "R(w(z, x & y) | w(z, y), w(z, y))"},
      {"A18", "R((w0(z) & w*(z, x & y)) | w*(z, y), w*(z, y))"},
      {"A19", "R(w0*(z) & z, w0*(z) & w*(z, z))"},
      {"A20", "R(w0*(z) & z, (~w0(~z) & w0*(z)) | (w0(~z) & w0(w0*(z) & z)))"},
      {"A21", "R(w0*(z) | z, w0*(z) | w*(z, z))"},
      {"A22", "R(w0*(z) | z, w0(w0*(z) | z))"},
      {"A23", "R(w0(z), w0(z) & R(w(z, w*(z, x)), x))"},
      {"A24", "R(w0(z), w0(z) & R(w*(z, w(z, x)), mu(z, x)))"},
      {"A25", "R(w0(w0*(1)), w0(~w0*(1)))"},
      {"A26", "R(w(x, y & w0(z)), w(x & w0(z), y & w0(z)))"},
      {"A27", "R(w(x, y & w0(z)), w(x, y) & w0(z))"},
      {"A28", "R(w*(x, y & w0(z)), w*(x & w0(z), y & w0(z)))"},
      {"A29", "R(w*(x, y & w0(z)), w*(x, y) & w0(z))"},
      {"A30", "~ed(R(t,s)) | R(w(r, t), w(r, s))"},
      {"A31", "~ed(R(t,s)) | R(w(t, r), w(s, r))"},
      {"A32", "~ed(R(t,s)) | R(w*(r, t), w*(r, s))"},
      {"A33", "~ed(R(t,s)) | R(w*(t, r), w*(s, r))"},
  };
  std::vector<AxiomSchema> out;
  for (const auto& [id, text] : table) {
    Term pattern = parse_term(text);
    out.push_back({id, text, pattern, pattern.variables()});
  }
  return out;
}

bool match_into(const Term& pattern, const Term& term, Substitution& bindings) {
  if (pattern.op() == Op::Var && metavariable_names().count(pattern.name())) {
    auto [it, inserted] = bindings.emplace(pattern.name(), term);
    return inserted || it->second == term;
  }
  if (pattern.op() != term.op()) return false;
  switch (pattern.op()) {
    case Op::Zero:
    case Op::One: return true;
    case Op::Var: return pattern.name() == term.name();
    case Op::Neg: return match_into(pattern.lhs(), term.lhs(), bindings);
    default:
      return match_into(pattern.lhs(), term.lhs(), bindings) &&
             match_into(pattern.rhs(), term.rhs(), bindings);
  }
}

}  // namespace

const std::vector<AxiomSchema>& axiom_schemas() {
  static const std::vector<AxiomSchema> schemas = build_schemas();
  return schemas;
}

const AxiomSchema* find_axiom(std::string_view id) {
  for (const auto& s : axiom_schemas())
    if (s.id == id) return &s;
  return nullptr;
}

Term instantiate_axiom(std::string_view id, const Substitution& subst) {
  const AxiomSchema* schema = find_axiom(id);
  if (!schema) throw PreconditionError("unknown axiom '" + std::string(id) + "'");
  for (const auto& mv : schema->metavariables)
    if (!subst.count(mv))
      throw PreconditionError("axiom " + schema->id + " needs a binding for '" + mv + "'");
  return substitute(schema->pattern, subst);
}

std::optional<Substitution> match_axiom(const AxiomSchema& schema, const Term& term) {
  Substitution bindings;
  if (!match_into(schema.pattern, term, bindings)) return std::nullopt;
  return bindings;
}

std::optional<std::pair<Term, Term>> as_rel(const Term& t) {
  if (t.op() != Op::Join) return std::nullopt;
  const Term& l = t.lhs();
  const Term& r = t.rhs();
  if (l.op() != Op::Meet || r.op() != Op::Meet || r.lhs().op() != Op::Neg ||
      r.rhs().op() != Op::Neg)
    return std::nullopt;
  if (r.lhs().lhs() != l.lhs() || r.rhs().lhs() != l.rhs()) return std::nullopt;
  return std::make_pair(l.lhs(), l.rhs());
}

// --- justifications -----------------------------------------------------------

Justification Justification::axiom(std::string id, Substitution subst) {
  Justification j;
  j.kind = Kind::Axiom;
  j.id = std::move(id);
  j.subst = std::move(subst);
  return j;
}
Justification Justification::hyp(std::size_t index) {
  Justification j;
  j.kind = Kind::Hyp;
  j.index = index;
  return j;
}
Justification Justification::ds(std::size_t minor, std::size_t major) {
  Justification j;
  j.kind = Kind::DS;
  j.minor = minor;
  j.major = major;
  return j;
}
Justification Justification::n(std::size_t premise) {
  Justification j;
  j.kind = Kind::N;
  j.index = premise;
  return j;
}
Justification Justification::macro(std::string rule, std::vector<std::size_t> inputs,
                                   Substitution params) {
  Justification j;
  j.kind = Kind::Macro;
  j.id = std::move(rule);
  j.inputs = std::move(inputs);
  j.subst = std::move(params);
  return j;
}
Justification Justification::dt(Term hypothesis, Proof proof) {
  Justification j;
  j.kind = Kind::DT;
  j.dt_hypothesis = std::move(hypothesis);
  j.dt_proof = std::make_shared<const Proof>(std::move(proof));
  return j;
}

std::string_view to_string(FailureReason reason) {
  switch (reason) {
    case FailureReason::NotAnAxiomInstance: return "not-an-axiom-instance";
    case FailureReason::UnknownAxiom: return "unknown-axiom";
    case FailureReason::HypothesisMismatch: return "hypothesis-mismatch";
    case FailureReason::DsShapeMismatch: return "ds-shape-mismatch";
    case FailureReason::NShapeMismatch: return "n-shape-mismatch";
    case FailureReason::ForwardReference: return "forward-reference";
    case FailureReason::DtInStrictMode: return "dt-in-strict-mode";
    case FailureReason::MacroMismatch: return "macro-mismatch";
    case FailureReason::DtInvalid: return "dt-invalid";
  }
  return "unknown";
}

// --- checking -------------------------------------------------------------------

namespace {

struct StepFailure {
  FailureReason reason;
  std::string message;
};

bool same_terms(const std::vector<Term>& a, const std::vector<Term>& b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

std::optional<StepFailure> check_one(const std::vector<Term>& theory,
                                     const std::vector<Term>& prior, const Step& step,
                                     bool strict) {
  const std::size_t here = prior.size() + 1;
  auto ref_ok = [&](std::size_t i) { return i >= 1 && i < here; };
  auto forward = [&](std::size_t i) {
    return StepFailure{FailureReason::ForwardReference,
                       "step " + std::to_string(here) + " cites step " + std::to_string(i)};
  };
  const Justification& j = step.just;

  switch (j.kind) {
    case Justification::Kind::Axiom: {
      const AxiomSchema* schema = find_axiom(j.id);
      if (!schema) return StepFailure{FailureReason::UnknownAxiom, "unknown axiom '" + j.id + "'"};
      auto bindings = match_axiom(*schema, step.term);
      if (!bindings)
        return StepFailure{FailureReason::NotAnAxiomInstance,
                           "term is not an instance of " + schema->id + ": " + schema->source};
      for (const auto& [mv, value] : j.subst) {
        auto it = bindings->find(mv);
        if (it == bindings->end() || it->second != value)
          return StepFailure{FailureReason::NotAnAxiomInstance,
                             "binding for '" + mv + "' disagrees with the term"};
      }
      return std::nullopt;
    }
    case Justification::Kind::Hyp:
      if (j.index < 1 || j.index > theory.size())
        return StepFailure{FailureReason::HypothesisMismatch,
                           "theory has no member " + std::to_string(j.index)};
      if (theory[j.index - 1] != step.term)
        return StepFailure{FailureReason::HypothesisMismatch,
                           "term differs from theory member " + std::to_string(j.index)};
      return std::nullopt;
    case Justification::Kind::DS: {
      if (!ref_ok(j.minor)) return forward(j.minor);
      if (!ref_ok(j.major)) return forward(j.major);
      const Term& minor = prior[j.minor - 1];
      const Term& major = prior[j.major - 1];
      if (major.op() != Op::Join || major.lhs().op() != Op::Neg || major.lhs().lhs() != minor)
        return StepFailure{FailureReason::DsShapeMismatch,
                           "step " + std::to_string(j.major) + " is not ~(step " +
                               std::to_string(j.minor) + ") | s"};
      if (major.rhs() != step.term)
        return StepFailure{FailureReason::DsShapeMismatch,
                           "term is not the right disjunct of step " + std::to_string(j.major)};
      return std::nullopt;
    }
    case Justification::Kind::N:
      if (!ref_ok(j.index)) return forward(j.index);
      if (step.term != Term::ed(prior[j.index - 1]))
        return StepFailure{FailureReason::NShapeMismatch,
                           "term is not ed(step " + std::to_string(j.index) + ")"};
      return std::nullopt;
    case Justification::Kind::Macro: {
      for (std::size_t i : j.inputs)
        if (!ref_ok(i)) return forward(i);
      std::vector<Term> inputs;
      for (std::size_t i : j.inputs) inputs.push_back(prior[i - 1]);
      Fragment fragment;
      try {
        fragment = derived_rule(j.id, inputs, j.subst);
      } catch (const Error& e) {
        return StepFailure{FailureReason::MacroMismatch, e.what()};
      }
      Verdict v = check_fragment(fragment, inputs);
      if (!v.ok)
        return StepFailure{FailureReason::MacroMismatch,
                           j.id + " expansion fails at fragment step " +
                               std::to_string(*v.first_bad_step) + ": " + v.message};
      if (fragment.conclusion() != step.term)
        return StepFailure{FailureReason::MacroMismatch,
                           j.id + " concludes " + print(fragment.conclusion())};
      return std::nullopt;
    }
    case Justification::Kind::DT: {
      if (strict)
        return StepFailure{FailureReason::DtInStrictMode, "deduction steps are not primitive"};
      if (!j.dt_hypothesis || !j.dt_proof || j.dt_proof->steps.empty())
        return StepFailure{FailureReason::DtInvalid, "deduction step needs a hypothesis and a proof"};
      std::vector<Term> extended = theory;
      extended.push_back(*j.dt_hypothesis);
      if (!same_terms(j.dt_proof->theory, extended))
        return StepFailure{FailureReason::DtInvalid,
                           "nested proof must use the theory extended by the hypothesis"};
      Verdict nested = check_proof(*j.dt_proof, false);
      if (!nested.ok)
        return StepFailure{FailureReason::DtInvalid,
                           "nested proof fails at step " + std::to_string(*nested.first_bad_step) +
                               ": " + nested.message};
      const Term expected =
          Term::join(Term::neg(Term::ed(*j.dt_hypothesis)), j.dt_proof->steps.back().term);
      if (step.term != expected)
        return StepFailure{FailureReason::DtInvalid, "term must be " + print(expected)};
      return std::nullopt;
    }
  }
  return std::nullopt;
}

Verdict run_checker(const std::vector<Term>& theory, std::vector<Term> prior,
                    const std::vector<Step>& steps, bool strict) {
  Verdict v;
  for (const Step& step : steps) {
    if (auto failure = check_one(theory, prior, step, strict)) {
      v.ok = false;
      v.first_bad_step = prior.size() + 1;
      v.reason = failure->reason;
      v.message = std::string(to_string(failure->reason)) + ": " + failure->message;
      return v;
    }
    prior.push_back(step.term);
  }
  return v;
}

}  // namespace

Verdict check_proof(const Proof& proof, bool strict) {
  return run_checker(proof.theory, {}, proof.steps, strict);
}

Verdict check_fragment(const Fragment& fragment, const std::vector<Term>& inputs) {
  if (inputs.size() != fragment.input_count) {
    Verdict v;
    v.ok = false;
    v.first_bad_step = 1;
    v.reason = FailureReason::MacroMismatch;
    v.message = "fragment expects " + std::to_string(fragment.input_count) + " inputs";
    return v;
  }
  for (const Step& s : fragment.steps) {
    const auto k = s.just.kind;
    if (k != Justification::Kind::Axiom && k != Justification::Kind::DS &&
        k != Justification::Kind::N && k != Justification::Kind::Macro)
      throw PreconditionError("fragments contain only axiom, DS, N and macro steps");
  }
  // Inputs occupy virtual steps 1..m; numbering of the failure is virtual.
  return run_checker({}, inputs, fragment.steps, true);
}

// --- derived rules ------------------------------------------------------------------

namespace {

Term rel(const Term& a, const Term& b) { return Term::rel(a, b); }
Term neg(const Term& a) { return Term::neg(a); }
Term join(const Term& a, const Term& b) { return Term::join(a, b); }
Term meet(const Term& a, const Term& b) { return Term::meet(a, b); }

class FragmentBuilder {
 public:
  explicit FragmentBuilder(std::vector<Term> inputs) : terms_(std::move(inputs)) {
    frag_.input_count = terms_.size();
  }
  const Term& term(std::size_t virtual_index) const { return terms_.at(virtual_index - 1); }
  std::size_t axiom(const char* id, Substitution subst) {
    Term t = instantiate_axiom(id, subst);
    return push(std::move(t), Justification::axiom(id, std::move(subst)));
  }
  std::size_t ds(std::size_t minor, std::size_t major) {
    const Term& m = term(major);
    if (m.op() != Op::Join) throw PreconditionError("internal: DS major is not a join");
    return push(m.rhs(), Justification::ds(minor, major));
  }
  std::size_t n(std::size_t premise) {
    return push(Term::ed(term(premise)), Justification::n(premise));
  }
  std::size_t last() const { return terms_.size(); }
  Fragment done() { return std::move(frag_); }

 private:
  std::size_t push(Term t, Justification j) {
    frag_.steps.push_back({t, std::move(j)});
    terms_.push_back(std::move(t));
    return terms_.size();
  }
  std::vector<Term> terms_;
  Fragment frag_;
};

// |- u | ~u
void emit_cor1(FragmentBuilder& b, const Term& u) {
  const Term nu = neg(u);
  const Term nnu = neg(nu);
  const Term one = Term::one();
  const Term lem = join(u, nu);
  const std::size_t s1 = b.axiom("A9", {{"t", u}});
  const std::size_t s2 = b.axiom("A13", {{"t", u}, {"s", nnu}});
  const std::size_t s3 = b.ds(s1, s2);  // ~u | ~~u
  const std::size_t s4 = b.axiom("A0a", {{"t", nu}});
  const std::size_t s5 = b.axiom("A13", {{"t", join(nu, nnu)}, {"s", one}});
  const std::size_t s6 = b.ds(s4, s5);
  const std::size_t s7 = b.ds(s3, s6);  // 1
  const std::size_t s8 = b.axiom("A0a", {{"t", u}});
  const std::size_t s9 = b.axiom("A12", {{"t", lem}, {"s", one}});
  const std::size_t s10 = b.axiom("A13", {{"t", rel(lem, one)}, {"s", rel(one, lem)}});
  const std::size_t s11 = b.ds(s9, s10);
  const std::size_t s12 = b.ds(s8, s11);  // R(1, u|~u)
  const std::size_t s13 = b.axiom("A13", {{"t", one}, {"s", lem}});
  const std::size_t s14 = b.ds(s12, s13);
  b.ds(s7, s14);
}

const Term& param(const Substitution& params, const char* name, std::string_view rule) {
  auto it = params.find(name);
  if (it == params.end())
    throw PreconditionError(std::string(rule) + " needs the parameter '" + name + "'");
  return it->second;
}

std::pair<Term, Term> rel_input(const std::vector<Term>& inputs, std::size_t i,
                                std::string_view rule) {
  auto r = as_rel(inputs[i]);
  if (!r)
    throw PreconditionError(std::string(rule) + ": input " + std::to_string(i + 1) +
                            " must have the shape R(t,s), got " + print(inputs[i]));
  return *r;
}

void arity(const std::vector<Term>& inputs, std::size_t n, std::string_view rule) {
  if (inputs.size() != n)
    throw PreconditionError(std::string(rule) + " takes " + std::to_string(n) + " input step(s)");
}

}  // namespace

std::vector<std::string> derived_rule_ids() {
  return {"COR-1", "COR-2", "COR-3", "COR-4", "COR-5", "COR-6",
          "COR-8", "COR-9", "COR-10", "COR-11"};
}

Fragment derived_rule(std::string_view rule, const std::vector<Term>& inputs,
                      const Substitution& params) {
  FragmentBuilder b(inputs);
  if (rule == "COR-1") {
    arity(inputs, 0, rule);
    emit_cor1(b, param(params, "t", rule));
  } else if (rule == "COR-2") {
    arity(inputs, 0, rule);
    const Term& u = param(params, "t", rule);
    emit_cor1(b, u);
    const std::size_t lem = b.last();
    const Term lemt = join(u, neg(u));
    const std::size_t s2 = b.axiom("A0a", {{"t", u}});
    const std::size_t s3 = b.axiom("A13", {{"t", lemt}, {"s", Term::one()}});
    const std::size_t s4 = b.ds(s2, s3);
    b.ds(lem, s4);
  } else if (rule == "COR-3") {
    arity(inputs, 1, rule);
    auto [t, s] = rel_input(inputs, 0, rule);
    const std::size_t a12 = b.axiom("A12", {{"t", t}, {"s", s}});
    const std::size_t a13 = b.axiom("A13", {{"t", rel(t, s)}, {"s", rel(s, t)}});
    const std::size_t d = b.ds(a12, a13);
    b.ds(1, d);
  } else if (rule == "COR-4") {
    arity(inputs, 2, rule);
    auto [t, s] = rel_input(inputs, 0, rule);
    auto [s2, r] = rel_input(inputs, 1, rule);
    if (s2 != s)
      throw PreconditionError("COR-4: inputs must be R(t,s) and R(s,r) with the same s");
    const std::size_t a2 = b.axiom("A2", {{"t", t}, {"s", s}, {"r", r}});
    const std::size_t d = b.ds(1, a2);
    b.ds(2, d);
  } else if (rule == "COR-5") {
    arity(inputs, 1, rule);
    auto [t, s] = rel_input(inputs, 0, rule);
    const std::size_t a3 = b.axiom("A3", {{"t", t}, {"s", s}});
    b.ds(1, a3);
  } else if (rule == "COR-6") {
    arity(inputs, 2, rule);
    auto [t, s] = rel_input(inputs, 0, rule);
    const Term& conj = inputs[1];
    if (conj.op() != Op::Meet || conj.lhs() != t)
      throw PreconditionError("COR-6: second input must have the shape t & r, got " + print(conj));
    const Term r = conj.rhs();
    const std::size_t a4 = b.axiom("A4", {{"t", t}, {"s", s}, {"r", r}});
    const std::size_t d1 = b.ds(1, a4);
    const std::size_t a13 = b.axiom("A13", {{"t", meet(t, r)}, {"s", meet(s, r)}});
    const std::size_t d2 = b.ds(d1, a13);
    b.ds(2, d2);
  } else if (rule == "COR-8" || rule == "COR-9" || rule == "COR-10" || rule == "COR-11") {
    arity(inputs, 1, rule);
    auto [t, s] = rel_input(inputs, 0, rule);
    const Term& r = param(params, "r", rule);
    const char* axiom = rule == "COR-8" ? "A30" : rule == "COR-9" ? "A31" : rule == "COR-10" ? "A32" : "A33";
    const std::size_t nec = b.n(1);
    const std::size_t ax = b.axiom(axiom, {{"t", t}, {"s", s}, {"r", r}});
    b.ds(nec, ax);
  } else if (rule == "COR-7") {
    throw PreconditionError("COR-7 is not implemented: its statement is ambiguous");
  } else {
    throw PreconditionError("unknown derived rule '" + std::string(rule) + "'");
  }
  return b.done();
}

// --- expansion -----------------------------------------------------------------------

Proof expand_macros(const Proof& proof) {
  Proof out;
  out.theory = proof.theory;
  std::vector<std::size_t> where;  // old 1-based index -> new 1-based index
  // Out-of-range references become 0 so they still fail as forward references.
  auto remap = [&](std::size_t i) -> std::size_t { return i >= 1 && i <= where.size() ? where[i - 1] : 0; };

  for (const Step& step : proof.steps) {
    const Justification& j = step.just;
    if (j.kind == Justification::Kind::Macro) {
      bool refs_ok = true;
      std::vector<Term> inputs;
      for (std::size_t i : j.inputs) {
        if (i < 1 || i > where.size()) {
          refs_ok = false;
          break;
        }
        inputs.push_back(out.steps[where[i - 1] - 1].term);
      }
      std::optional<Fragment> frag;
      if (refs_ok) {
        try {
          frag = derived_rule(j.id, inputs, j.subst);
        } catch (const Error&) {
        }
      }
      if (frag) {
        const std::size_t m = frag->input_count;
        const std::size_t base = out.steps.size();
        auto vmap = [&](std::size_t v) { return v <= m ? where[j.inputs[v - 1] - 1] : base + (v - m); };
        for (Step s : frag->steps) {
          if (s.just.kind == Justification::Kind::DS) {
            s.just.minor = vmap(s.just.minor);
            s.just.major = vmap(s.just.major);
          } else if (s.just.kind == Justification::Kind::N) {
            s.just.index = vmap(s.just.index);
          }
          out.steps.push_back(std::move(s));
        }
        // The macro's own term is kept so that a wrong conclusion still fails.
        if (frag->conclusion() != step.term) out.steps.back().term = step.term;
        where.push_back(out.steps.size());
        continue;
      }
      Step copy = step;
      for (auto& i : copy.just.inputs) i = remap(i);
      out.steps.push_back(std::move(copy));
      where.push_back(out.steps.size());
      continue;
    }
    Step copy = step;
    switch (j.kind) {
      case Justification::Kind::DS:
        copy.just.minor = remap(j.minor);
        copy.just.major = remap(j.major);
        break;
      case Justification::Kind::N: copy.just.index = remap(j.index); break;
      case Justification::Kind::DT:
        if (j.dt_proof) copy.just.dt_proof = std::make_shared<const Proof>(expand_macros(*j.dt_proof));
        break;
      default: break;
    }
    out.steps.push_back(std::move(copy));
    where.push_back(out.steps.size());
  }
  return out;
}

Step deduction_step(const std::vector<Term>& theory, const Term& s, const Proof& proof) {
  std::vector<Term> extended = theory;
  extended.push_back(s);
  if (!same_terms(proof.theory, extended))
    throw PreconditionError("deduction step: proof theory must be the theory extended by the hypothesis");
  if (proof.steps.empty()) throw PreconditionError("deduction step: empty proof");
  Verdict v = check_proof(proof, false);
  if (!v.ok)
    throw PreconditionError("deduction step: supplied proof fails at step " +
                            std::to_string(*v.first_bad_step) + ": " + v.message);
  Term t = proof.steps.back().term;
  return {Term::join(Term::neg(Term::ed(s)), t), Justification::dt(s, proof)};
}

}  // namespace lqf
