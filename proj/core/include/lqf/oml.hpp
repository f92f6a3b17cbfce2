#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lqf {

/// Dense index of a lattice element.
using Element = std::uint32_t;

/// Raw description of a candidate lattice: order relation plus orthocomplement.
struct OmlTables {
  std::vector<std::string> names;
  std::vector<std::vector<bool>> leq;
  std::vector<Element> neg;
  Element bottom = 0;
  Element top = 0;
};

/// Laws in the order verify_oml checks them.
enum class OmlLaw {
  Reflexivity,
  Antisymmetry,
  Transitivity,
  Bounds,
  Lattice,
  Involution,
  OrderReversal,
  DeMorgan,
  Noncontradiction,
  Orthomodular,
};

std::string_view to_string(OmlLaw law);

struct ValidationReport {
  bool ok = true;
  std::optional<OmlLaw> law;
  // Lexicographically smallest witness; unused coordinates are 0.
  Element x = 0;
  Element y = 0;
  Element z = 0;
  std::string message;
};

/// Checks the ortholattice + orthomodular laws on raw tables and reports the
/// first failing law. Throws StructuralError for malformed tables.
ValidationReport verify_oml(const OmlTables& tables);

/// A finite orthomodular lattice with precomputed meet/join tables and center.
/// Immutable after construction.
class FiniteOml {
 public:
  /// Throws StructuralError on malformed tables and PreconditionError when a
  /// law fails.
  static FiniteOml from_tables(OmlTables tables, std::string label = {});

  std::size_t size() const noexcept { return n_; }
  Element bottom() const noexcept { return bottom_; }
  Element top() const noexcept { return top_; }

  bool leq(Element a, Element b) const { return leq_[a * n_ + b] != 0; }
  Element meet(Element a, Element b) const { return meet_[a * n_ + b]; }
  Element join(Element a, Element b) const { return join_[a * n_ + b]; }
  Element neg(Element a) const { return neg_[a]; }

  bool is_central(Element z) const { return central_[z] != 0; }
  /// Least central element above a.
  Element central_cover(Element a) const { return cover_[a]; }
  /// Greatest central element below a, i.e. ~e(~a).
  Element dual_central_cover(Element a) const { return neg_[cover_[neg_[a]]]; }

  const std::string& name(Element a) const { return names_[a]; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<Element> find(std::string_view name) const;
  /// Like find() but throws PreconditionError for unknown names.
  Element element(std::string_view name) const;

  const std::string& label() const noexcept { return label_; }
  FiniteOml with_label(std::string label) const;

  OmlTables tables() const;
  bool contains(Element a) const noexcept { return a < n_; }

 private:
  FiniteOml() = default;

  std::size_t n_ = 0;
  Element bottom_ = 0;
  Element top_ = 0;
  std::vector<std::string> names_;
  std::vector<char> leq_;
  std::vector<Element> meet_;
  std::vector<Element> join_;
  std::vector<Element> neg_;
  std::vector<char> central_;
  std::vector<Element> cover_;
  std::string label_;
};

// --- constructions -------------------------------------------------------

FiniteOml boolean(unsigned k);
/// 0, 1 and n pairs of complementary atoms.
FiniteOml mo(unsigned n);
FiniteOml product(const FiniteOml& left, const FiniteOml& right);
/// Identifies the bounds of both summands; all other elements are
/// incomparable across summands.
FiniteOml horizontal_sum(const FiniteOml& left, const FiniteOml& right);
/// [0,a] with relative complement ~x & a.
FiniteOml interval(const FiniteOml& lattice, Element a);
/// Restriction to a subset closed under meet, join and complement.
FiniteOml subalgebra(const FiniteOml& lattice, const std::vector<Element>& elements);

/// Smallest subset containing `generators`, 0 and 1 that is closed under
/// meet, join, complement and (optionally) the dual central cover.
std::vector<Element> closure(const FiniteOml& lattice, const std::vector<Element>& generators,
                             bool close_under_dual_cover = false);

/// Parses "boolean(2)", "mo(3)", "product(A,B)", "hsum(A,B)",
/// "interval(A,elem)" recursively.
FiniteOml build(std::string_view spec);

// --- operations -----------------------------------------------------------

/// a & (~a | x)
Element sasaki(const FiniteOml& lattice, Element a, Element x);

/// a = (a | b) & (a | ~b)
bool commutes(const FiniteOml& lattice, Element a, Element b);

struct CenterReport {
  std::vector<Element> elements;
  bool boolean_subalgebra = false;
};

CenterReport center(const FiniteOml& lattice);
bool directly_indecomposable(const FiniteOml& lattice);
std::vector<Element> atoms(const FiniteOml& lattice);

bool is_complement(const FiniteOml& lattice, Element a, Element b);
/// (x & ~(x & a)) | ~(x | a); always a complement of a.
Element complement_via_c(const FiniteOml& lattice, Element a, Element x);

struct PerspectivityReport {
  /// Smallest common complement of a and b.
  std::optional<Element> common_complement;
  /// Smallest x with a|x = b|x and a&x = b&x.
  std::optional<Element> criterion_witness;
  bool agree() const { return common_complement.has_value() == criterion_witness.has_value(); }
  bool perspective() const { return common_complement.has_value(); }
};

PerspectivityReport perspective(const FiniteOml& lattice, Element a, Element b);

struct CongruencePartition {
  std::vector<std::size_t> block_of;
  std::size_t block_count = 0;

  bool related(Element a, Element b) const { return block_of[a] == block_of[b]; }
  bool operator==(const CongruencePartition&) const = default;
};

/// Renumbers blocks in order of first occurrence.
CongruencePartition normalize(std::vector<std::size_t> block_of);

/// Compatibility with meet, join, complement and, if requested, the dual
/// central cover.
bool is_congruence(const FiniteOml& lattice, const CongruencePartition& partition,
                   bool with_dual_cover = false);

/// theta_z: a ~ b iff a & z = b & z.
CongruencePartition factor_congruence(const FiniteOml& lattice, Element z);

struct FactorDecomposition {
  CongruencePartition theta;
  FiniteOml factor;  // [0,z]
  FiniteOml cofactor;  // [0,~z]
  /// Block index -> element of `factor` (the image x & z of the block).
  std::vector<Element> block_image;
  bool theta_is_congruence = false;
  bool quotient_isomorphism = false;  // block -> x & z is a bijective homomorphism
  bool product_embedding = false;     // x -> (x & z, x & ~z) is a bijective homomorphism
};

/// Throws PreconditionError if z is not central.
FactorDecomposition factor_decompose(const FiniteOml& lattice, Element z);

struct ModularityReport {
  bool is_modular = true;
  /// (a, b, x) with (x & b) | (a & b) != ((x & b) | a) & b.
  std::optional<std::array<Element, 3>> witness;
  /// (bottom, x, y, z, top) of an N5 sublattice with x < y.
  std::optional<std::array<Element, 5>> n5;
  /// x < y with x and y perspective.
  std::optional<std::array<Element, 2>> perspective_pair;
  bool consistent() const {
    return witness.has_value() == !is_modular && n5.has_value() == !is_modular &&
           perspective_pair.has_value() == !is_modular;
  }
};

ModularityReport modularity_suite(const FiniteOml& lattice);

/// Unary map given as a full table on the carrier.
using UnaryTable = std::vector<Element>;

struct MapDiagnostics {
  // Relative-complement preservation of w on [0,a], both formulations.
  std::optional<bool> relcomp_global;  // w(mu_a(~x)) = ~w(x & a) for all x
  std::optional<bool> relcomp_local;   // w(~x & a) = ~w(x) for x <= a
  std::optional<bool> relcomp_equivalent;

  // Hypotheses and conclusions for a pair w, w* with w w* = id, w* w = mu_a.
  std::optional<bool> hypotheses_hold;
  std::optional<bool> wstar_onto_interval_iso;
  std::optional<bool> w_restricted_iso;
  std::optional<bool> wstar_fixes_a;  // w*(a) = a
  std::optional<bool> fixpoint_iff_top;  // (w*(a) = a) <=> (a = 1)
};

bool order_preserving(const FiniteOml& lattice, const UnaryTable& map);

/// a must be nonzero. When `claim_hypotheses` is set and a supplied map is not
/// order preserving, throws PreconditionError.
MapDiagnostics map_diagnostics(const FiniteOml& lattice, Element a,
                               const std::optional<UnaryTable>& w,
                               const std::optional<UnaryTable>& wstar,
                               bool claim_hypotheses = false);

}  // namespace lqf
