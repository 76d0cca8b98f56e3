#pragma once

#include <string>

#include "handlebody/diagram.hpp"

namespace handlebody {

// Deterministic SVG projection: events at uniform x-spacing, strands at
// integer levels, cusps as arcs, a visual gap on the under strand, handle
// walls as paired boxes.
std::string render_svg(const FrontDiagram& d);

}  // namespace handlebody
