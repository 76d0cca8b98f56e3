#pragma once

#include <optional>
#include <string>
#include <vector>

#include "handlebody/diagram.hpp"

namespace handlebody {

enum class MoveId {
  lr1,        // cancel a positive curl (loop with one up and one down turn)
  lr2,        // cancel a reducible crossing pair of the same two strands
  lr3,        // triangle slide (braid relation), non-cyclic flags only
  lr4,        // slide a crossing through the 1-handle
  lr5,        // retract a pass pair through adjacent ports (V patterns)
  lr6,        // carry a zigzag through the 1-handle
  exchange,   // commute two adjacent independent events
  stab_up,    // zigzag insertion, rot +1, tb -1
  stab_down,  // zigzag insertion, rot -1, tb -1
  move_i,     // rot-preserving double stabilization, tb -2
  move_i_inv,
  move_ii,    // crossing change
  slide_add,  // handle addition:  [i] <- [i] + [j]
  slide_sub,  // handle subtraction: [i] <- [i] - [j]
  cancel_12,  // cancel a 1-handle against a 2-handle passing over it once
};

std::string move_id_name(MoveId id);

// Locations: e1/e2 are 1-based event indices; gap counts events to the left
// (0..events); height is a 1-based strand position at that gap.
struct Move {
  MoveId id{};
  int e1 = 0, e2 = 0;
  int gap = 0;
  int height = 0;
  std::string comp_i, comp_j;  // slides: i slides over j; cancel: j
  int handle = 0;
  bool operator==(const Move&) const = default;
};

FrontDiagram apply_move(const FrontDiagram& d, const Move& m);

struct MoveScript {
  std::string name;
  std::string base;
  std::vector<Move> moves;
};

MoveScript parse_script(const std::string& text);
std::string serialize(const MoveScript& s);

struct ComponentSnapshot {
  std::vector<std::string> labels;
  std::vector<Int> rot;
  std::vector<std::optional<Int>> tb;
  std::vector<std::vector<std::optional<Int>>> linking;
};

ComponentSnapshot snapshot(const FrontDiagram& d);

struct MoveStep {
  Move move;
  ComponentSnapshot before, after;
  std::string delta_note;
};

struct MoveTrace {
  std::string script_name;
  FrontDiagram initial, final_diagram;
  std::vector<MoveStep> steps;
  std::string to_string() const;
};

// Applies each move, records snapshots and asserts every delta contract;
// throws MoveError naming the offending step.
MoveTrace verify_script(const FrontDiagram& d0, const MoveScript& s);

// Bounded breadth-first search for a move script carrying d1 to d2 up to
// component relabeling.  Sound and incomplete.
std::optional<MoveScript> search_equivalence(const FrontDiagram& d1,
                                             const FrontDiagram& d2, int depth);

// Canonical key used by the search: serialization with components renamed in
// traced order.
std::string canonical_key(const FrontDiagram& d);

// 1-based event index of a bare birth whose strands dive into adjacent ports
// of the handle (the pass pair left behind by a slide), or -1.
int find_retractable_pass_pair(const FrontDiagram& d, int handle);

}  // namespace handlebody
