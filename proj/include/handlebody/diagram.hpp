#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "handlebody/errors.hpp"

namespace handlebody {

using Int = long long;

enum class EventKind { birth, death, crossing, handle_in, handle_out };

// One event of a front word, read left to right.  pos is the 1-based index of
// the bottom strand the event acts on.  Births insert strands at pos, pos+1;
// deaths remove pos, pos+1; crossings swap pos, pos+1; handle events insert or
// remove a single strand at pos.
struct Event {
  EventKind kind{};
  int pos = 0;
  bool lower_over = false;  // crossings only: true = strand at pos on top
  int handle = 0;           // handle events only, 1-based
  int port = 0;             // handle events only, 1-based
  bool operator==(const Event&) const = default;
};

Event birth(int pos);
Event death(int pos);
Event crossing(int pos, bool lower_over);
Event handle_in(int pos, int handle, int port);
Event handle_out(int pos, int handle, int port);

struct FrontDiagram {
  std::string name;
  int one_handles = 0;
  std::vector<Event> events;
  std::vector<std::string> component_labels;  // index = component id - 1
  std::vector<bool> component_orient;         // true = '+'
  bool operator==(const FrontDiagram&) const = default;

  int component_count() const { return static_cast<int>(component_labels.size()); }
  int component_id(const std::string& label) const;  // 1-based, 0 if unknown
};

struct Violation {
  std::string invariant;
  int event_index = 0;  // 1-based, 0 = diagram level
  std::string message;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
  std::string to_string() const;
};

// A strand is a maximal arc between two events (crossings do not cut strands).
// end_* describe how each end of the strand attaches to the rest of the
// diagram; handle ends attach through the tube of their (handle, port) pair.
struct Strand {
  int component = 0;   // 1-based
  bool rightward = true;  // traversal direction of the owning component
  int born_event = -1;    // event index creating the strand (-1 impossible)
  int died_event = -1;    // event index ending the strand
};

// Full left-to-right resolution of a diagram: per-gap stacks of strand ids,
// per-event participants, components, directions.  Gap g is the position
// before event g (0-based), so gap 0 and gap events.size() are empty.
struct Trace {
  int n_components = 0;
  std::vector<Strand> strands;
  std::vector<std::vector<int>> stacks;             // stacks[g] = strand ids bottom..top
  std::vector<std::array<int, 2>> event_strands;    // participants per event; [1]=-1 if unary
  std::vector<std::vector<int>> component_strands;  // per component, in discovery order

  int strand_at(int gap, int pos1) const { return stacks[gap][pos1 - 1]; }
};

// Builds the trace; throws ValidationError on structural inconsistency.
Trace trace(const FrontDiagram& d);

// Checks every diagram invariant and reports all violations.
ValidationReport validate(const FrontDiagram& d);

FrontDiagram parse_diagram(const std::string& text);
std::string serialize(const FrontDiagram& d);

// Per-component algebraic projection of a diagram.  Linking entries and
// framings are undefined for components that run over a 1-handle.
struct AlgebraicHandleData {
  int n = 0;
  std::vector<Int> writhe;
  std::vector<Int> tb;   // meaningful only when uses_handle is false
  std::vector<Int> rot;
  std::vector<bool> uses_handle;
  std::vector<std::vector<std::optional<Int>>> linking;  // diag = tb - 1
  std::vector<std::vector<std::pair<int, int>>> incidence;  // (handle, sign)
};

AlgebraicHandleData to_algebraic(const FrontDiagram& d);

Int writhe(const FrontDiagram& d, int comp);
Int thurston_bennequin(const FrontDiagram& d, int comp);  // throws if comp uses ports
Int rotation(const FrontDiagram& d, int comp);

std::vector<std::vector<std::optional<Int>>> linking_matrix(const FrontDiagram& d);

// Crossing sign from the explicit flag and the two strand directions.
int crossing_sign(bool lower_over, bool lower_rightward, bool upper_rightward);

}  // namespace handlebody
