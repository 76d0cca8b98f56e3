#pragma once

#include <vector>

#include "handlebody/diagram.hpp"
#include "handlebody/exact.hpp"

namespace handlebody {

// Integer vector indexed by 2-handle components of a diagram.
struct HomologyClass {
  std::vector<Int> coefficients;
};

// Framed linking form of a handle-free diagram (Stein framings on the
// diagonal).  Throws PreconditionError when 1-handles are present.
IntegerSymmetricForm intersection_form(const FrontDiagram& d);

// Cokernel of the framed linking matrix; trivial iff |det| = 1.
AbelianGroupSNF boundary_first_homology(const FrontDiagram& d);

// <c1, cls> = sum of cls[i] * rot(component i).
Int c1_evaluation(const FrontDiagram& d, const HomologyClass& cls);

enum class Pi1Verdict { trivial, unknown };

// Free-reduction heuristic on the presentation <1-handles | incidence words>.
// Sound but incomplete: "unknown" never means nontrivial.
Pi1Verdict fundamental_group_trivial(const FrontDiagram& d);

}  // namespace handlebody
