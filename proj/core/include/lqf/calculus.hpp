#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lqf/term.hpp"

namespace lqf {

using Substitution = std::map<std::string, Term>;

struct AxiomSchema {
  std::string id;           // "A0a", "A0b", "A1" ... "A33"
  std::string source;       // pattern as written, macros unexpanded
  Term pattern;             // over metavariables t, s, r, x, y, z
  std::vector<std::string> metavariables;
};

const std::vector<AxiomSchema>& axiom_schemas();
/// nullptr for unknown ids.
const AxiomSchema* find_axiom(std::string_view id);

/// Throws PreconditionError for unknown ids or missing bindings.
Term instantiate_axiom(std::string_view id, const Substitution& subst);
/// Recovers the substitution making `term` an instance of the schema.
std::optional<Substitution> match_axiom(const AxiomSchema& schema, const Term& term);

struct Proof;

struct Justification {
  enum class Kind { Axiom, Hyp, DS, N, Macro, DT };
  Kind kind = Kind::Axiom;
  std::string id;                    // axiom id or derived-rule id
  Substitution subst;                // optional axiom bindings, or rule parameters
  std::size_t index = 0;             // Hyp: theory index; N: premise step (1-based)
  std::size_t minor = 0, major = 0;  // DS
  std::vector<std::size_t> inputs;   // Macro
  std::optional<Term> dt_hypothesis;
  std::shared_ptr<const Proof> dt_proof;

  static Justification axiom(std::string id, Substitution subst = {});
  static Justification hyp(std::size_t index);
  static Justification ds(std::size_t minor, std::size_t major);
  static Justification n(std::size_t premise);
  static Justification macro(std::string rule, std::vector<std::size_t> inputs,
                             Substitution params = {});
  static Justification dt(Term hypothesis, Proof proof);
};

struct Step {
  Term term;
  Justification just;
};

struct Proof {
  std::vector<Term> theory;
  std::vector<Step> steps;
};

enum class FailureReason {
  NotAnAxiomInstance,
  UnknownAxiom,
  HypothesisMismatch,
  DsShapeMismatch,
  NShapeMismatch,
  ForwardReference,
  DtInStrictMode,
  MacroMismatch,
  DtInvalid,
};

std::string_view to_string(FailureReason reason);

struct Verdict {
  bool ok = true;
  /// 1-based index of the first bad step.
  std::optional<std::size_t> first_bad_step;
  std::optional<FailureReason> reason;
  std::string message;
};

Verdict check_proof(const Proof& proof, bool strict);

/// A primitive fragment. Virtual step numbers 1..input_count denote the
/// inputs; fragment step k has virtual number input_count + k.
struct Fragment {
  std::size_t input_count = 0;
  std::vector<Step> steps;
  Term conclusion() const { return steps.back().term; }
};

/// Derived rules COR-1 .. COR-6 and COR-8 .. COR-11. COR-1 and COR-2 take the
/// parameter "t", COR-8 .. COR-11 the parameter "r". Throws PreconditionError
/// on unknown rules, missing parameters or input shape mismatch.
Fragment derived_rule(std::string_view rule, const std::vector<Term>& inputs,
                      const Substitution& params = {});
std::vector<std::string> derived_rule_ids();

/// Checks a fragment against its inputs (which are taken as given).
Verdict check_fragment(const Fragment& fragment, const std::vector<Term>& inputs);

/// Inlines every Macro step; DT steps keep their (recursively expanded) nested proof.
Proof expand_macros(const Proof& proof);

/// Given a checked proof of t from theory + [s], returns the step ~ed(s) | t.
/// Throws PreconditionError if the proof does not check or has the wrong theory.
Step deduction_step(const std::vector<Term>& theory, const Term& s, const Proof& proof);

/// Decomposes R(t,s) = (t&s)|(~t&~s).
std::optional<std::pair<Term, Term>> as_rel(const Term& t);

}  // namespace lqf
