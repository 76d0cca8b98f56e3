#pragma once

#include <string>
#include <vector>

#include "handlebody/diagram.hpp"
#include "handlebody/exact.hpp"
#include "handlebody/invariants.hpp"
#include "handlebody/moves.hpp"

namespace handlebody {

// Classification data of the contact open book with the given page and
// identity monodromy.
struct FiveManifoldDescriptor {
  std::string page;
  AbelianGroupSNF h2;
  bool spin = false;
  std::string diffeo_label;
  std::vector<Int> contact_label;  // multiset of |rot|, ascending
  std::string provenance;
  std::string contact_label_string() const;
};

// H2 of the open book over a reduced simply-connected page: free of rank the
// number of 2-handles.
AbelianGroupSNF h2_of_total(const FrontDiagram& d);

// First Chern class of the supported contact structure, evaluated in
// handle-basis coordinates (the boundary restriction is the identity there).
Int c1_xi(const FrontDiagram& d, const HomologyClass& cls);

// Simply connected, free H2 of the given rank: spin gives a connected sum of
// rank copies of S2xS3, non-spin trades one for the twisted bundle.
std::string classify_barden_free(int rank, bool spin);

// Full classification of a split reduced page: every component a crossingless
// unknot with zigzags.
FiveManifoldDescriptor classify_contact(const FrontDiagram& d);

// Rows for p = 1..p_max, each produced by generating X_p, replaying its
// classification script and classifying the final page.  Also asserts the
// pairwise relations: equal diffeo label iff equal parity, equal contact
// label iff equal p.
std::vector<FiveManifoldDescriptor> classify_family(int p_max);

}  // namespace handlebody
