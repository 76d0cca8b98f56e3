#include "handlebody/forms.hpp"

#include <sstream>

#include "handlebody/invariants.hpp"

namespace handlebody {

std::string classify_indefinite_unimodular(const IntegerSymmetricForm& f) {
  using boost::multiprecision::abs;
  if (f.rank != f.matrix.rows())
    throw PreconditionError("form is degenerate, not unimodular");
  if (abs(f.det) != 1) throw PreconditionError("form is not unimodular");
  if (std::abs(f.signature) == f.rank && f.rank > 0)
    throw PreconditionError("form is definite, outside the indefinite classification");
  if (f.parity == Parity::odd) {
    int a = (f.rank + f.signature) / 2;
    int b = (f.rank - f.signature) / 2;
    std::ostringstream os;
    auto coeff = [](int k) { return k == 1 ? std::string() : std::to_string(k); };
    if (a > 0) os << coeff(a) << "⟨+1⟩";
    if (a > 0 && b > 0) os << " ⊕ ";
    if (b > 0) os << coeff(b) << "⟨−1⟩";
    return os.str();
  }
  if (f.signature != 0)
    throw PreconditionError("outside implemented classification: even with nonzero signature");
  int k = f.rank / 2;
  if (k == 1) return "H";
  return std::to_string(k) + "·H";
}

bool homeomorphic_fillings(const FrontDiagram& d1, const FrontDiagram& d2) {
  for (const FrontDiagram* d : {&d1, &d2}) {
    if (d->one_handles > 0)
      throw PreconditionError("predicate inapplicable: diagram not reduced");
    if (fundamental_group_trivial(*d) != Pi1Verdict::trivial)
      throw PreconditionError("predicate inapplicable: fundamental group unknown");
    if (!boundary_first_homology(*d).trivial())
      throw PreconditionError("predicate inapplicable: boundary is not a homology sphere");
  }
  IntegerSymmetricForm f1 = intersection_form(d1);
  IntegerSymmetricForm f2 = intersection_form(d2);
  return f1.rank == f2.rank && f1.signature == f2.signature && f1.parity == f2.parity;
}

}  // namespace handlebody
