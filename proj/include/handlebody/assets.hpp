#pragma once

#include "handlebody/diagram.hpp"
#include "handlebody/invariants.hpp"
#include "handlebody/moves.hpp"

namespace handlebody {

// The parametric family X_p: one 1-handle, components beta (single pass),
// alpha (p passes, rot -1) and gamma (clasping alpha, rot 0).
FrontDiagram generate_Xp(int p);

// The untwisted sibling X: two clasped twisted unknots, no 1-handles, even
// intersection form H.
FrontDiagram generate_X();

FrontDiagram generate_unknot();
FrontDiagram generate_hopf();

// Smooth reduction: handle subtractions, pass retractions, cancellation.
// Ends with two 2-handles and a fully defined linking matrix.
MoveScript reduction_script(int p);

// Contact reduction: additionally unlinks and unknots everything with moves
// I/II; ends in a split diagram of crossingless unknots with zigzags.
MoveScript classification_script(int p);

// Homology classes of the X_p family in handle-basis coordinates.
HomologyClass class_T(const FrontDiagram& xp);
HomologyClass class_S(const FrontDiagram& xp, int p);
HomologyClass class_R(const FrontDiagram& xp, int p);

// Asset directory resolution: HANDLEBODY_ASSET_DIR or "assets".
std::string asset_dir();
std::string read_file(const std::string& path);
FrontDiagram load_diagram(const std::string& path);
MoveScript load_script(const std::string& path);

}  // namespace handlebody
