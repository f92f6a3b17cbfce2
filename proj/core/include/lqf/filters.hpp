#pragma once

#include <cstddef>
#include <vector>

#include "lqf/oml.hpp"

namespace lqf {

/// Element subset as a membership mask over the carrier.
using Subset = std::vector<char>;

Subset make_subset(const FiniteOml& lattice, const std::vector<Element>& elements);
std::vector<Element> members(const Subset& s);
/// [a, 1]
Subset principal_filter(const FiniteOml& lattice, Element a);

struct FilterFlags {
  bool increasing = false;
  bool meet_closed = false;
  bool perspective_closed = false;
  bool ed_closed = false;
  bool proper = false;
  bool contains_top = false;
  /// x in S or ~ed(x) in S for every x, on a proper LQF-filter.
  bool maximal = false;
  /// Inclusion-maximal among proper LQF-filters.
  bool maximal_by_inclusion = false;

  bool oml_filter() const { return contains_top && increasing && meet_closed && perspective_closed; }
  bool lqf_filter() const { return oml_filter() && ed_closed; }
};

FilterFlags classify_filter(const FiniteOml& lattice, const Subset& s);

/// [ed(meet of M), 1]; the empty meet is 1.
Subset generate_filter(const FiniteOml& lattice, const std::vector<Element>& m);

/// All LQF-filters, as [z, 1] for central z, in index order of z.
std::vector<Subset> lqf_filters(const FiniteOml& lattice);

/// Congruences compatible with meet, join, complement and ed, in a canonical order.
std::vector<CongruencePartition> ed_congruences(const FiniteOml& lattice);
/// Smallest ed-compatible congruence relating a and b.
CongruencePartition principal_congruence(const FiniteOml& lattice, Element a, Element b);

Subset filter_of(const FiniteOml& lattice, const CongruencePartition& theta);  // {x : x ~ 1}
CongruencePartition congruence_of(const FiniteOml& lattice, const Subset& filter);  // R(x,y) in F

struct FilterCongruenceReport {
  std::size_t congruences = 0;
  std::size_t filters = 0;
  bool filter_images_are_lqf_filters = true;
  bool congruence_images_are_congruences = true;
  bool mutually_inverse = true;
  bool order_isomorphism = true;
  bool ok() const {
    return congruences == filters && filter_images_are_lqf_filters &&
           congruence_images_are_congruences && mutually_inverse && order_isomorphism;
  }
};
FilterCongruenceReport filter_congruence_maps(const FiniteOml& lattice);

struct CenterCorrespondenceReport {
  std::size_t boolean_filters = 0;  // filters of the center
  std::size_t lqf_filters = 0;
  bool bijective = true;
  bool preserves_inclusion = true;  // both directions
  bool recovers_filters = true;     // F = F_LQF(F & Z) for every LQF-filter F
  bool ok() const { return boolean_filters == lqf_filters && bijective && preserves_inclusion && recovers_filters; }
};
CenterCorrespondenceReport center_correspondence(const FiniteOml& lattice);

/// Filters of the Boolean algebra Z(L), as subsets of L (all principal).
std::vector<Subset> center_filters(const FiniteOml& lattice);

struct CepReport {
  bool subalgebra_ok = false;  // closed under the OML operations and ed
  std::size_t filters_checked = 0;
  std::size_t violations = 0;
};
/// For every ed-closed filter F of the sub-OML `sub`: F = sub & generate_filter(F).
CepReport cep_probe(const FiniteOml& lattice, const std::vector<Element>& sub);

struct ClosureDiscrepancy {
  Element bottom;  // the filter is [bottom, 1]
  bool ed_closed;
  bool perspective_closed;
};
/// Principal filters [a,1] where ed-closure holds but perspectivity-closure fails.
std::vector<ClosureDiscrepancy> closure_discrepancies(const FiniteOml& lattice);

}  // namespace lqf
