#include "handlebody/assets.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace handlebody {

FrontDiagram generate_Xp(int p) {
  if (p < 1) throw PreconditionError("p must be at least 1");
  FrontDiagram d;
  d.name = "X_" + std::to_string(p);
  d.one_handles = 1;
  d.component_labels = {"beta", "alpha", "gamma"};
  d.component_orient = {true, true, true};
  auto& ev = d.events;
  // exit block: beta at port 1, the p arcs of alpha at ports 2..p+1
  for (int q = 1; q <= p + 1; ++q) ev.push_back(handle_out(q, 1, q));
  // beta zigzag (rot +1) below the whole stack
  ev.push_back(birth(1));
  ev.push_back(death(2));
  // alpha zigzag (rot -1) on its first arc, at height 2
  ev.push_back(birth(3));
  ev.push_back(death(2));
  // gamma: double positive twist (tb +1), clasp over alpha's top arc, closed
  ev.push_back(birth(p + 2));
  ev.push_back(crossing(p + 2, true));
  ev.push_back(crossing(p + 2, true));
  ev.push_back(crossing(p + 1, false));
  ev.push_back(crossing(p + 1, false));
  ev.push_back(death(p + 2));
  // cyclic braid: the top arc descends to sit just above beta, so the entry
  // block pairs arcs with ports in first-in-first-out order
  for (int k = p; k >= 2; --k) ev.push_back(crossing(k, false));
  // entry block
  for (int q = 1; q <= p + 1; ++q) ev.push_back(handle_in(1, 1, q));
  return d;
}

FrontDiagram generate_X() {
  FrontDiagram d;
  d.name = "X";
  d.one_handles = 0;
  d.component_labels = {"k1", "k2"};
  d.component_orient = {true, true};
  auto& ev = d.events;
  ev.push_back(birth(1));
  ev.push_back(crossing(1, true));
  ev.push_back(crossing(1, true));
  ev.push_back(birth(3));
  ev.push_back(crossing(3, true));
  ev.push_back(crossing(3, true));
  ev.push_back(crossing(2, true));
  ev.push_back(crossing(2, true));
  ev.push_back(death(3));
  ev.push_back(death(1));
  return d;
}

FrontDiagram generate_unknot() {
  FrontDiagram d;
  d.name = "unknot";
  d.one_handles = 0;
  d.component_labels = {"k"};
  d.component_orient = {true};
  d.events = {birth(1), death(1)};
  return d;
}

FrontDiagram generate_hopf() {
  FrontDiagram d;
  d.name = "hopf";
  d.one_handles = 0;
  d.component_labels = {"a", "b"};
  d.component_orient = {true, true};
  d.events = {birth(1),          birth(3),          crossing(2, true),
              crossing(2, true), death(3),          death(1)};
  return d;
}

namespace {

int first_entry_event(const FrontDiagram& d, int h) {
  for (size_t e = 0; e < d.events.size(); ++e)
    if (d.events[e].kind == EventKind::handle_in && d.events[e].handle == h)
      return static_cast<int>(e);
  return -1;
}

// 1-based indices of crossings between the named components (self pairs when
// the names agree)
std::vector<int> crossings_of_pair(const FrontDiagram& d, const std::string& n1,
                                   const std::string& n2) {
  Trace t = trace(d);
  int c1 = d.component_id(n1), c2 = d.component_id(n2);
  std::vector<int> out;
  for (size_t e = 0; e < d.events.size(); ++e) {
    if (d.events[e].kind != EventKind::crossing) continue;
    int a = t.strands[t.event_strands[e][0]].component;
    int b = t.strands[t.event_strands[e][1]].component;
    if ((a == c1 && b == c2) || (a == c2 && b == c1)) out.push_back(static_cast<int>(e) + 1);
  }
  return out;
}

struct ScriptBuilder {
  FrontDiagram d;
  MoveScript s;
  void push(Move m) {
    d = apply_move(d, m);
    s.moves.push_back(m);
  }
  void remove_crossing_pair(const std::string& n1, const std::string& n2) {
    // flip the second crossing of the pair, then cancel the bigon
    auto xs = crossings_of_pair(d, n1, n2);
    if (xs.size() < 2) throw InternalError("expected a crossing pair to remove");
    Move flip;
    flip.id = MoveId::move_ii;
    flip.e1 = xs[1];
    push(flip);
    Move rm;
    rm.id = MoveId::lr2;
    rm.e1 = xs[0];
    rm.e2 = xs[1];
    push(rm);
  }
  void slide_and_retract(const std::string& over) {
    Move slide;
    slide.id = MoveId::slide_sub;
    slide.gap = first_entry_event(d, 1);
    slide.height = 1;
    slide.comp_i = "alpha";
    slide.comp_j = over;
    push(slide);
    int v = find_retractable_pass_pair(d, 1);
    if (v < 0) throw InternalError("no retractable pass pair after slide");
    Move retract;
    retract.id = MoveId::lr5;
    retract.e1 = v;
    push(retract);
  }
};

}  // namespace

MoveScript reduction_script(int p) {
  ScriptBuilder b;
  b.d = generate_Xp(p);
  b.s.name = "reduce_X_" + std::to_string(p);
  b.s.base = b.d.name;
  for (int k = 0; k < p; ++k) b.slide_and_retract("beta");
  Move cancel;
  cancel.id = MoveId::cancel_12;
  cancel.handle = 1;
  cancel.comp_j = "beta";
  b.push(cancel);
  return b.s;
}

MoveScript classification_script(int p) {
  ScriptBuilder b;
  b.d = generate_Xp(p);
  b.s.name = "classify_X_" + std::to_string(p);
  b.s.base = b.d.name;
  // free gamma: its double twist, then the clasp with alpha
  b.remove_crossing_pair("gamma", "gamma");
  b.remove_crossing_pair("alpha", "gamma");
  // walk alpha off the handle, clearing the framing twists as they appear
  for (int k = 0; k < p; ++k) {
    b.slide_and_retract("beta");
    b.remove_crossing_pair("alpha", "beta");
    b.remove_crossing_pair("alpha", "beta");
  }
  Move cancel;
  cancel.id = MoveId::cancel_12;
  cancel.handle = 1;
  cancel.comp_j = "beta";
  b.push(cancel);
  // the leftover push-off zigzags are nested; serialize them so every curl
  // disk is clear
  for (bool progress = true; progress;) {
    progress = false;
    Trace t = trace(b.d);
    for (size_t e = 0; e + 1 < b.d.events.size() && !progress; ++e) {
      if (b.d.events[e].kind != EventKind::birth ||
          b.d.events[e + 1].kind != EventKind::death)
        continue;
      auto bs = t.event_strands[e];
      auto ds = t.event_strands[e + 1];
      if (ds[0] == bs[0] || ds[0] == bs[1] || ds[1] == bs[0] || ds[1] == bs[1])
        continue;
      // only pull an older flap's death past a younger birth
      int born = std::max(t.strands[ds[0]].born_event, t.strands[ds[1]].born_event);
      if (born >= static_cast<int>(e)) continue;
      Move ex;
      ex.id = MoveId::exchange;
      ex.e1 = static_cast<int>(e) + 1;
      try {
        b.push(ex);
        progress = true;
      } catch (const MoveError&) {
      }
    }
  }
  // unwind the spiral: cancel curls innermost first
  for (int guard = 0; guard < 4 * p + 8; ++guard) {
    bool any_crossing = false;
    int done = -1;
    for (size_t e = 0; e < b.d.events.size() && done < 0; ++e) {
      if (b.d.events[e].kind != EventKind::crossing) continue;
      any_crossing = true;
      Move curl;
      curl.id = MoveId::lr1;
      curl.e1 = static_cast<int>(e) + 1;
      try {
        b.push(curl);
        done = curl.e1;
      } catch (const MoveError&) {
      }
    }
    if (!any_crossing) break;
    if (done < 0) throw InternalError("spiral unwinding is stuck");
  }
  return b.s;
}

HomologyClass class_T(const FrontDiagram& xp) {
  HomologyClass c;
  c.coefficients.assign(xp.component_count(), 0);
  c.coefficients[xp.component_id("gamma") - 1] = 1;
  return c;
}

HomologyClass class_R(const FrontDiagram& xp, int p) {
  HomologyClass c;
  c.coefficients.assign(xp.component_count(), 0);
  c.coefficients[xp.component_id("alpha") - 1] = 1;
  c.coefficients[xp.component_id("beta") - 1] = -p;
  return c;
}

HomologyClass class_S(const FrontDiagram& xp, int p) {
  // R_p plus (p^2 - q + 1) T_p with q = (p + 1) / 2 for odd p and p / 2 for
  // even p
  Int q = p % 2 == 1 ? (p + 1) / 2 : p / 2;
  Int tcoef = Int(p) * p - q + 1;
  HomologyClass c = class_R(xp, p);
  c.coefficients[xp.component_id("gamma") - 1] = tcoef;
  return c;
}

std::string asset_dir() {
  const char* env = std::getenv("HANDLEBODY_ASSET_DIR");
  if (env && *env) return env;
  return "assets";
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

FrontDiagram load_diagram(const std::string& path) {
  return parse_diagram(read_file(path));
}

MoveScript load_script(const std::string& path) { return parse_script(read_file(path)); }

}  // namespace handlebody
