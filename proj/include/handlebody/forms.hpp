#pragma once

#include <string>

#include "handlebody/diagram.hpp"
#include "handlebody/exact.hpp"

namespace handlebody {

// Canonical label of an indefinite unimodular symmetric form from its
// (rank, signature, parity).  Odd forms: "a⟨+1⟩ ⊕ b⟨−1⟩"; even forms of
// signature zero: "k·H" ("H" when k = 1).  Even forms with nonzero signature
// are outside the implemented range.
std::string classify_indefinite_unimodular(const IntegerSymmetricForm& f);

// Boyer/Freedman predicate for two reduced fillings: equal (rank, signature,
// parity).  Refuses (never guesses) when its preconditions fail.
bool homeomorphic_fillings(const FrontDiagram& d1, const FrontDiagram& d2);

}  // namespace handlebody
