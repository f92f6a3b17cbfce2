#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "lqf/oml.hpp"
#include "lqf/term.hpp"

namespace lqf {

// --- catalog -------------------------------------------------------------------

struct CatalogEntry {
  std::string name;  // short name, e.g. "MO2", "B1xMO2", "hsum(B2,B3)"
  std::string spec;  // build() input that reproduces the lattice
  FiniteOml lattice;
  bool boolean = false;
  bool modular = true;
  bool directly_indecomposable = false;
};

/// Fixed, ordered test universe (sizes 2..32).
const std::vector<CatalogEntry>& catalog();
/// By short name or spec; nullptr if absent.
const CatalogEntry* find_catalog(std::string_view name);

// --- countermodels and the two-variable decision procedure --------------------------

struct Countermodel {
  std::string lattice;
  Valuation valuation;
};

/// First counterexample in catalog order (restricted to `scope` names when
/// non-empty). Throws SignatureError for w-terms and PreconditionError for
/// unknown scope names.
std::optional<Countermodel> countermodel(const Equation& eq,
                                         const std::vector<std::string>& scope = {});

struct FreeAlgebra2 {
  FiniteOml ambient;             // product(boolean(4), mo(2))
  std::vector<Element> carrier;  // ambient indices, sorted
  Element g1 = 0, g2 = 0;        // generators (ambient indices)
  FiniteOml algebra;             // the generated subalgebra
  Element gen1 = 0, gen2 = 0;    // generators as indices of `algebra`
  std::uint64_t pairs_tried = 0;
};

/// The generator pair is the first one, in lexicographic order, whose closure
/// reaches the largest size found by the sweep. Computed once.
const FreeAlgebra2& free_algebra2();

struct Decide2Result {
  bool valid = true;
  bool generators_agree = true;  // verdict at the generator pair matches the full check
  std::optional<Valuation> counterexample;  // in free_algebra2().algebra
};

/// Throws PreconditionError for more than two variables or for w-terms.
Decide2Result decide2(const Equation& eq);

// --- LQF and type III condition systems ------------------------------------------------

struct Condition {
  std::string id;                // "LQF1" ... / "III1" ...
  std::vector<std::string> text;  // one entry per normalized equation
  std::vector<Equation> equations;
};

/// Inequalities u <= v are stored as u = u & v; chains a = b = c as two equations.
const std::vector<Condition>& lqf_conditions();
const std::vector<Condition>& iii_conditions();
/// The two restriction laws that accompany the III list.
const std::vector<Condition>& iii_companion_conditions();

struct ConditionReport {
  bool pass = true;
  std::string failing;                 // condition id
  std::size_t failing_number = 0;      // 1-based position in the list
  std::size_t failing_equation = 0;    // 0-based within the condition
  std::optional<Valuation> witness;
};

ConditionReport check_conditions(const ExpandedStructure& s, const std::vector<Condition>& list);
ConditionReport check_lqf_axioms(const ExpandedStructure& s);

struct IiiReport {
  ConditionReport conditions;
  ConditionReport companions;
};
IiiReport check_iii_conditions(const ExpandedStructure& s);

// --- refutation ------------------------------------------------------------------------

struct TraceEntry {
  std::string conclusion;
  std::string reason;  // axiom or lemma used
};

struct RefutationTrace {
  std::vector<TraceEntry> entries;
  bool contradiction = false;
  std::string factor;       // the indecomposable factor used, as an element of L
  std::size_t factor_size = 0;
  std::optional<Element> atom;  // atom used in the final step (in the factor)
};

/// Throws PreconditionError for the one-element lattice.
RefutationTrace refute_finite_lqf(const FiniteOml& lattice);

// --- w0 uniqueness on indecomposable lattices ---------------------------------------------

struct W0UniquenessReport {
  bool exhaustive = false;
  std::uint64_t tables_examined = 0;
  std::uint64_t passing = 0;
  UnaryTable table;        // the unique solution (if any)
  bool is_indicator = false;
};

/// Exhaustive over all |L|^|L| tables for |L| <= 8, propagation otherwise.
/// Throws PreconditionError if L is not directly indecomposable.
W0UniquenessReport w0_uniqueness(const FiniteOml& lattice, std::optional<bool> exhaustive = {});

/// 0 at bottom, 1 elsewhere.
UnaryTable indicator(const FiniteOml& lattice);

// --- surrogate checks ------------------------------------------------------------------------

struct DiscriminatorReport {
  std::uint64_t triples = 0;
  std::uint64_t failures = 0;
  std::optional<std::array<Element, 3>> first_failure;
  bool ok() const { return failures == 0; }
};

/// (x & ~ed(R(x,y))) | (z & ed(R(x,y))) with ed the dual central cover.
DiscriminatorReport discriminator_check(const FiniteOml& lattice);

struct DimensionLawsReport {
  bool zero_iff_bottom = true;       // w0(x) = 0 iff x = 0
  bool equality_is_indicator = true;  // w0(x) = w0(y) iff (x = 0 iff y = 0)
  bool join = true;                  // w0(x | y) = w0(x) | w0(y)
  bool idempotent = true;            // w0(w0(x)) = w0(x)
  bool meet = true;                  // w0(x & w0(y)) = w0(x) & w0(y)
  bool all() const { return zero_iff_bottom && equality_is_indicator && join && idempotent && meet; }
};
DimensionLawsReport internal_dimension_laws(const FiniteOml& lattice, const UnaryTable& w0);

// --- random structures ----------------------------------------------------------------------

/// Seeded structure over `base`. The w(0,-) row is the indicator, the central
/// cover or uniform noise, and the w*(0,-) row is sometimes chosen to satisfy
/// the LQF6/LQF7 shapes, so failures spread over several conditions.
ExpandedStructure random_structure(const FiniteOml& base, std::mt19937_64& rng);

struct AlignmentSample {
  std::string base;
  std::size_t lqf_first = 0;  // 0 = passes
  std::size_t iii_first = 0;
  bool agree = true;
};

/// Compares the first failing shared condition (1..10) of both systems.
std::vector<AlignmentSample> alignment_run(std::size_t samples, std::uint64_t seed,
                                           std::size_t max_base_size = 12);

}  // namespace lqf
