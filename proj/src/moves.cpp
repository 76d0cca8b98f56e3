#include "handlebody/moves.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace handlebody {

std::string move_id_name(MoveId id) {
  switch (id) {
    case MoveId::lr1: return "lr1";
    case MoveId::lr2: return "lr2";
    case MoveId::lr3: return "lr3";
    case MoveId::lr4: return "lr4";
    case MoveId::lr5: return "lr5";
    case MoveId::lr6: return "lr6";
    case MoveId::exchange: return "exchange";
    case MoveId::stab_up: return "stab_up";
    case MoveId::stab_down: return "stab_down";
    case MoveId::move_i: return "move_i";
    case MoveId::move_i_inv: return "move_i_inv";
    case MoveId::move_ii: return "move_ii";
    case MoveId::slide_add: return "slide_add";
    case MoveId::slide_sub: return "slide_sub";
    case MoveId::cancel_12: return "cancel_12";
  }
  return "?";
}

namespace {

[[noreturn]] void illegal(const std::string& why) {
  throw MoveError("move illegal here: " + why);
}

// ---------------------------------------------------------------------------
// rebuilder: replays a word deleting events and strands, recomputing every
// position from present-slot ranks.  Strand segments removed by a splice keep
// their slot but lose presence; a spliced crossing hands presence across.

struct Slot {
  int strand;
  bool present;
};

struct Sim {
  std::vector<Slot> slots;
  std::vector<Event> out;

  int rank_below(int idx) const {
    int r = 0;
    for (int i = 0; i < idx; ++i)
      if (slots[i].present) ++r;
    return r;
  }
  int slot_of(int strand) const {
    for (size_t i = 0; i < slots.size(); ++i)
      if (slots[i].strand == strand) return static_cast<int>(i);
    return -1;
  }
};

struct RebuildResult {
  std::vector<Event> events;
  std::map<int, int> old_to_new;  // 0-based old event -> 0-based new event
};

struct Rebuild {
  const FrontDiagram& d;
  const Trace& t;
  std::set<int> deleted_events;
  std::set<int> born_absent;
  std::set<int> splice_crossings;  // deleted crossings where presence stays put
  std::multimap<int, std::function<void(Sim&)>> hooks;  // after k old events

  Rebuild(const FrontDiagram& d_, const Trace& t_) : d(d_), t(t_) {}

  RebuildResult run() const {
    Sim sim;
    RebuildResult res;
    for (int e = 0; e <= static_cast<int>(d.events.size()); ++e) {
      auto range = hooks.equal_range(e);
      for (auto it = range.first; it != range.second; ++it) it->second(sim);
      if (e == static_cast<int>(d.events.size())) break;
      const Event& ev = d.events[e];
      bool del = deleted_events.count(e) > 0;
      const auto& es = t.event_strands[e];
      switch (ev.kind) {
        case EventKind::birth:
        case EventKind::handle_out: {
          int idx;
          if (ev.pos == 1) {
            idx = 0;
          } else {
            int below = t.stacks[e][ev.pos - 2];
            int bi = sim.slot_of(below);
            if (bi < 0) throw InternalError("rebuild lost an anchor strand");
            idx = bi + 1;
          }
          bool p0 = !del && !born_absent.count(es[0]);
          if (ev.kind == EventKind::birth) {
            bool p1 = !del && !born_absent.count(es[1]);
            if (p0 != p1) throw InternalError("rebuild: half-present birth");
            if (p0) {
              Event ne = ev;
              ne.pos = sim.rank_below(idx) + 1;
              res.old_to_new[e] = static_cast<int>(sim.out.size());
              sim.out.push_back(ne);
            }
            sim.slots.insert(sim.slots.begin() + idx,
                             {Slot{es[0], p0}, Slot{es[1], p1}});
          } else {
            if (p0) {
              Event ne = ev;
              ne.pos = sim.rank_below(idx) + 1;
              res.old_to_new[e] = static_cast<int>(sim.out.size());
              sim.out.push_back(ne);
            }
            sim.slots.insert(sim.slots.begin() + idx, Slot{es[0], p0});
          }
          break;
        }
        case EventKind::death:
        case EventKind::handle_in: {
          int n = ev.kind == EventKind::death ? 2 : 1;
          int idx = sim.slot_of(es[0]);
          if (idx < 0) {
            if (!del) throw InternalError("rebuild: kept event lost its strands");
            break;  // consumed by a hook
          }
          if (del) {
            for (int k = 0; k < n; ++k) {
              if (sim.slots[idx].present)
                throw InternalError("rebuild: deleting event of live strands");
              sim.slots.erase(sim.slots.begin() + idx);
            }
          } else {
            Event ne = ev;
            ne.pos = sim.rank_below(idx) + 1;
            for (int k = 0; k < n; ++k) {
              if (!sim.slots[idx].present)
                throw InternalError("rebuild: kept event on absent strand");
              sim.slots.erase(sim.slots.begin() + idx);
            }
            res.old_to_new[e] = static_cast<int>(sim.out.size());
            sim.out.push_back(ne);
          }
          break;
        }
        case EventKind::crossing: {
          int idx = sim.slot_of(es[0]);
          if (idx < 0 || idx + 1 >= static_cast<int>(sim.slots.size()) ||
              sim.slots[idx + 1].strand != es[1])
            throw InternalError("rebuild: crossing strands not adjacent");
          if (del) {
            if (splice_crossings.count(e))
              std::swap(sim.slots[idx].strand, sim.slots[idx + 1].strand);
            else
              std::swap(sim.slots[idx], sim.slots[idx + 1]);
          } else {
            if (!sim.slots[idx].present || !sim.slots[idx + 1].present)
              throw InternalError("rebuild: kept crossing on absent strand");
            Event ne = ev;
            ne.pos = sim.rank_below(idx) + 1;
            res.old_to_new[e] = static_cast<int>(sim.out.size());
            sim.out.push_back(ne);
            std::swap(sim.slots[idx], sim.slots[idx + 1]);
          }
          break;
        }
      }
    }
    if (!sim.slots.empty()) throw InternalError("rebuild left open strands");
    res.events = std::move(sim.out);
    return res;
  }
};

// Renumber each handle's ports contiguously in order of exit events.
void normalize_ports(std::vector<Event>& events) {
  std::map<int, std::map<int, int>> remap;
  for (const Event& ev : events)
    if (ev.kind == EventKind::handle_out) {
      auto& m = remap[ev.handle];
      int next = static_cast<int>(m.size()) + 1;
      m.emplace(ev.port, next);
    }
  for (Event& ev : events)
    if (ev.kind == EventKind::handle_in || ev.kind == EventKind::handle_out) {
      auto it = remap[ev.handle].find(ev.port);
      if (it == remap[ev.handle].end())
        throw InternalError("entry event without exit event");
      ev.port = it->second;
    }
}

// Assign labels and orientation bits of a rewritten diagram so that witness
// strands keep their component names and traversal directions.
struct Witness {
  int new_event;  // 0-based event creating the witness strand
  int old_component;
  bool old_rightward;
};

void relabel_by_witnesses(FrontDiagram& out, const FrontDiagram& old,
                          const std::vector<Witness>& ws) {
  out.component_labels.clear();
  out.component_orient.clear();
  Trace t = trace(out);
  out.component_labels.assign(t.n_components, "");
  out.component_orient.assign(t.n_components, true);
  std::vector<bool> seen(t.n_components, false);
  for (const Witness& w : ws) {
    int sid = t.event_strands[w.new_event][0];
    const Strand& s = t.strands[sid];
    int c = s.component - 1;
    if (seen[c]) continue;
    seen[c] = true;
    out.component_labels[c] = old.component_labels[w.old_component - 1];
    out.component_orient[c] = (s.rightward == w.old_rightward);
  }
  for (int c = 0; c < t.n_components; ++c)
    if (!seen[c]) throw InternalError("component lost its witness");
}

// witness list from a rebuild: one surviving creating event per component
std::vector<Witness> witnesses_from(const FrontDiagram&, const Trace& t,
                                    const Rebuild& rb, const RebuildResult& rr,
                                    int skip_component = 0) {
  std::vector<Witness> ws;
  for (int c = 0; c < t.n_components; ++c) {
    if (c + 1 == skip_component) continue;
    for (int s : t.component_strands[c]) {
      int be = t.strands[s].born_event;
      if (rb.deleted_events.count(be) || rb.born_absent.count(s)) continue;
      auto it = rr.old_to_new.find(be);
      if (it == rr.old_to_new.end()) continue;
      ws.push_back({it->second, c + 1, t.strands[s].rightward});
      break;
    }
  }
  return ws;
}

// relabel a positionally rewritten diagram through an old-to-new event map
FrontDiagram relabeled(FrontDiagram out, const FrontDiagram& old, const Trace& told,
                       const std::function<int(int)>& emap) {
  std::vector<Witness> ws;
  for (int c = 0; c < told.n_components; ++c)
    for (int s : told.component_strands[c]) {
      int ne = emap(told.strands[s].born_event);
      if (ne < 0) continue;
      ws.push_back({ne, c + 1, told.strands[s].rightward});
      break;
    }
  relabel_by_witnesses(out, old, ws);
  return out;
}

int event_delta(const Event& ev) {
  switch (ev.kind) {
    case EventKind::birth: return +2;
    case EventKind::death: return -2;
    case EventKind::handle_out: return +1;
    case EventKind::handle_in: return -1;
    case EventKind::crossing: return 0;
  }
  return 0;
}

// occupied ranges in doubled middle-gap coordinates, for exchange legality
std::pair<int, int> range_first(const Event& a) {
  switch (a.kind) {
    case EventKind::birth:
    case EventKind::crossing: return {2 * a.pos, 2 * a.pos + 2};
    case EventKind::death:
    case EventKind::handle_in: return {2 * a.pos - 1, 2 * a.pos - 1};
    case EventKind::handle_out: return {2 * a.pos, 2 * a.pos};
  }
  return {0, 0};
}
std::pair<int, int> range_second(const Event& b) {
  switch (b.kind) {
    case EventKind::death:
    case EventKind::crossing: return {2 * b.pos, 2 * b.pos + 2};
    case EventKind::birth:
    case EventKind::handle_out: return {2 * b.pos - 1, 2 * b.pos - 1};
    case EventKind::handle_in: return {2 * b.pos, 2 * b.pos};
  }
  return {0, 0};
}

FrontDiagram do_exchange(const FrontDiagram& d, int e1) {
  if (e1 < 1 || e1 + 1 > static_cast<int>(d.events.size()))
    illegal("exchange needs two adjacent events");
  FrontDiagram out = d;
  Event a = out.events[e1 - 1];
  Event b = out.events[e1];
  auto ra = range_first(a);
  auto rb = range_second(b);
  if (rb.second < ra.first) {
    a.pos += event_delta(b);
  } else if (rb.first > ra.second) {
    b.pos -= event_delta(a);
  } else {
    illegal("events are not independent");
  }
  out.events[e1 - 1] = b;
  out.events[e1] = a;
  Trace t = trace(d);
  return relabeled(std::move(out), d, t, [&](int e) {
    if (e == e1 - 1) return e1;
    if (e == e1) return e1 - 1;
    return e;
  });
}

FrontDiagram do_move_ii(const FrontDiagram& d, int e1) {
  if (e1 < 1 || e1 > static_cast<int>(d.events.size())) illegal("no such event");
  FrontDiagram out = d;
  Event& ev = out.events[e1 - 1];
  if (ev.kind != EventKind::crossing) illegal("move II needs a crossing");
  ev.lower_over = !ev.lower_over;
  return out;
}

// zigzag on the strand at height y: [b y, d y+1] makes two down cusps on a
// rightward strand, [b y+1, d y] two up cusps; on a leftward strand the
// contributions swap.
std::vector<Event> stab_events(int y, bool rightward, bool up) {
  if (up == rightward) return {birth(y), death(y + 1)};
  return {birth(y + 1), death(y)};
}

FrontDiagram do_stab(const FrontDiagram& d, int gap, int height, bool up) {
  Trace t = trace(d);
  if (gap < 0 || gap > static_cast<int>(d.events.size())) illegal("gap out of range");
  const auto& st = t.stacks[gap];
  if (height < 1 || height > static_cast<int>(st.size())) illegal("height out of range");
  bool rightward = t.strands[st[height - 1]].rightward;
  std::vector<Event> ins = stab_events(height, rightward, up);
  FrontDiagram out = d;
  out.events.insert(out.events.begin() + gap, ins.begin(), ins.end());
  return relabeled(std::move(out), d, t,
                   [&](int e) { return e < gap ? e : e + 2; });
}

FrontDiagram do_move_i(const FrontDiagram& d, int gap, int height) {
  Trace t = trace(d);
  if (gap < 0 || gap > static_cast<int>(d.events.size())) illegal("gap out of range");
  const auto& st = t.stacks[gap];
  if (height < 1 || height > static_cast<int>(st.size())) illegal("height out of range");
  bool rightward = t.strands[st[height - 1]].rightward;
  std::vector<Event> ins = stab_events(height, rightward, true);
  std::vector<Event> dn = stab_events(height, rightward, false);
  ins.insert(ins.end(), dn.begin(), dn.end());
  FrontDiagram out = d;
  out.events.insert(out.events.begin() + gap, ins.begin(), ins.end());
  return relabeled(std::move(out), d, t,
                   [&](int e) { return e < gap ? e : e + 4; });
}

bool is_move_i_block(const FrontDiagram& d, int e0) {
  if (e0 < 0 || e0 + 3 >= static_cast<int>(d.events.size())) return false;
  const Event &a = d.events[e0], &b = d.events[e0 + 1], &c = d.events[e0 + 2],
              &e = d.events[e0 + 3];
  auto pat = [](const Event& x, EventKind k, int p) {
    return x.kind == k && x.pos == p;
  };
  int y = a.pos;
  bool first = pat(a, EventKind::birth, y) && pat(b, EventKind::death, y + 1) &&
               pat(c, EventKind::birth, y + 1) && pat(e, EventKind::death, y);
  bool second = y >= 2 && pat(a, EventKind::birth, y) &&
                pat(b, EventKind::death, y - 1) && pat(c, EventKind::birth, y - 1) &&
                pat(e, EventKind::death, y);
  return first || second;
}

FrontDiagram do_move_i_inv(const FrontDiagram& d, int e1) {
  int e0 = e1 - 1;
  if (!is_move_i_block(d, e0))
    illegal("no removable double zigzag at this event");
  Trace t = trace(d);
  // the host strand sits at the bottom height of the first zigzag
  int y = std::min(d.events[e0].pos, d.events[e0 + 1].pos);
  const auto& pre = t.stacks[e0];
  const auto& post = t.stacks[e0 + 4];
  if (y > static_cast<int>(pre.size()) || y > static_cast<int>(post.size()))
    illegal("double zigzag pattern broken");
  if (t.strands[pre[y - 1]].component != t.strands[post[y - 1]].component)
    illegal("double zigzag pattern broken");
  FrontDiagram out = d;
  out.events.erase(out.events.begin() + e0, out.events.begin() + e0 + 4);
  return relabeled(std::move(out), d, t, [&](int e) {
    if (e < e0) return e;
    if (e < e0 + 4) return -1;
    return e - 4;
  });
}

FrontDiagram do_lr2(const FrontDiagram& d, int e1, int e2) {
  if (e1 > e2) std::swap(e1, e2);
  if (e1 < 1 || e2 > static_cast<int>(d.events.size()) || e1 == e2)
    illegal("lr2 needs two crossing events");
  const Event &a = d.events[e1 - 1], &b = d.events[e2 - 1];
  if (a.kind != EventKind::crossing || b.kind != EventKind::crossing)
    illegal("lr2 needs crossings");
  if (a.lower_over == b.lower_over) illegal("crossings form a clasp, not a bigon");
  Trace t = trace(d);
  auto sa = t.event_strands[e1 - 1];
  auto sb = t.event_strands[e2 - 1];
  if (std::set<int>{sa[0], sa[1]} != std::set<int>{sb[0], sb[1]})
    illegal("crossings involve different strands");
  for (int e = e1; e < e2 - 1; ++e) {
    auto es = t.event_strands[e];
    if (es[0] == sa[0] || es[0] == sa[1] || es[1] == sa[0] || es[1] == sa[1])
      illegal("strands are touched between the crossings");
  }
  for (int g = e1; g < e2; ++g) {
    int pa = -1, pb = -1;
    const auto& st = t.stacks[g];
    for (size_t i = 0; i < st.size(); ++i) {
      if (st[i] == sa[0]) pa = static_cast<int>(i);
      if (st[i] == sa[1]) pb = static_cast<int>(i);
    }
    if (pa < 0 || pb < 0 || std::abs(pa - pb) != 1)
      illegal("strands do not stay adjacent between the crossings");
  }
  FrontDiagram out = d;
  out.events.erase(out.events.begin() + e2 - 1);
  out.events.erase(out.events.begin() + e1 - 1);
  return relabeled(std::move(out), d, t, [&](int e) {
    if (e == e1 - 1 || e == e2 - 1) return -1;
    int shift = (e > e1 - 1) + (e > e2 - 1);
    return e - shift;
  });
}

FrontDiagram do_lr3(const FrontDiagram& d, int e1) {
  int e0 = e1 - 1;
  if (e0 < 0 || e0 + 2 >= static_cast<int>(d.events.size()))
    illegal("lr3 needs three consecutive crossings");
  Event a = d.events[e0], b = d.events[e0 + 1], c = d.events[e0 + 2];
  if (a.kind != EventKind::crossing || b.kind != EventKind::crossing ||
      c.kind != EventKind::crossing)
    illegal("lr3 needs three crossings");
  int p = a.pos;
  if (c.pos != p || std::abs(b.pos - p) != 1) illegal("events do not form a triangle");
  Trace t = trace(d);
  std::set<int> ids;
  for (int e = e0; e < e0 + 3; ++e) {
    ids.insert(t.event_strands[e][0]);
    ids.insert(t.event_strands[e][1]);
  }
  if (ids.size() != 3) illegal("triangle needs three strands");
  // reject a cyclic over pattern: it is not a slide
  std::map<std::pair<int, int>, bool> over;
  for (int e = e0; e < e0 + 3; ++e) {
    auto es = t.event_strands[e];
    over[{es[0], es[1]}] = d.events[e].lower_over;
    over[{es[1], es[0]}] = !d.events[e].lower_over;
  }
  {
    std::vector<int> v(ids.begin(), ids.end());
    bool c1 = over[{v[0], v[1]}], c2 = over[{v[1], v[2]}], c3 = over[{v[2], v[0]}];
    if (c1 == c2 && c2 == c3) illegal("cyclic over pattern cannot slide");
  }
  FrontDiagram out = d;
  out.events[e0] = crossing(b.pos, c.lower_over);
  out.events[e0 + 1] = crossing(p, b.lower_over);
  out.events[e0 + 2] = crossing(b.pos, a.lower_over);
  return out;
}

std::map<std::pair<int, int>, std::pair<int, int>> port_events(
    const FrontDiagram& d) {
  // (handle, port) -> (hout event, hin event), 0-based
  std::map<std::pair<int, int>, std::pair<int, int>> m;
  for (size_t e = 0; e < d.events.size(); ++e) {
    const Event& ev = d.events[e];
    if (ev.kind == EventKind::handle_out)
      m[{ev.handle, ev.port}].first = static_cast<int>(e);
    if (ev.kind == EventKind::handle_in)
      m[{ev.handle, ev.port}].second = static_cast<int>(e);
  }
  return m;
}

bool strand_bare_except(const FrontDiagram& d, const Trace& t, int s,
                        const std::set<int>& allowed) {
  for (size_t e = 0; e < d.events.size(); ++e) {
    if (allowed.count(static_cast<int>(e))) continue;
    auto es = t.event_strands[e];
    if (es[0] == s || es[1] == s) return false;
  }
  return true;
}

FrontDiagram do_lr5(const FrontDiagram& d, int e1) {
  Trace t = trace(d);
  int e0 = e1 - 1;
  if (e0 < 0 || e0 >= static_cast<int>(d.events.size())) illegal("no such event");
  const Event& ev = d.events[e0];
  auto ports = port_events(d);

  if (ev.kind == EventKind::birth) {
    int lo = t.event_strands[e0][0], hi = t.event_strands[e0][1];
    const Strand &slo = t.strands[lo], &shi = t.strands[hi];
    const Event &dlo = d.events[slo.died_event], &dhi = d.events[shi.died_event];
    if (dlo.kind != EventKind::handle_in || dhi.kind != EventKind::handle_in ||
        dlo.handle != dhi.handle || std::abs(dlo.port - dhi.port) != 1)
      illegal("born strands do not dive into adjacent ports");
    if (!strand_bare_except(d, t, lo, {e0, slo.died_event}) ||
        !strand_bare_except(d, t, hi, {e0, shi.died_event}))
      illegal("pass pair strands are not bare");
    int h = dlo.handle;
    int qa = std::min(dlo.port, dhi.port);
    int ha = ports[{h, qa}].first, hb = ports[{h, qa + 1}].first;
    if (std::abs(ha - hb) != 1) illegal("partner exit events are not adjacent");
    int lower_partner = t.event_strands[std::min(ha, hb)][0];
    int upper_partner = t.event_strands[std::max(ha, hb)][0];
    int block_end = ha;
    for (size_t e = 0; e < d.events.size(); ++e)
      if (d.events[e].kind == EventKind::handle_out && d.events[e].handle == h)
        block_end = std::max(block_end, static_cast<int>(e));
    Rebuild rb(d, t);
    rb.deleted_events = {e0, slo.died_event, shi.died_event, ha, hb};
    rb.born_absent = {lo, hi, lower_partner, upper_partner};
    rb.hooks.emplace(block_end + 1, [=](Sim& sim) {
      int ka = sim.slot_of(lower_partner), kb = sim.slot_of(upper_partner);
      if (ka < 0 || kb != ka + 1) throw InternalError("lr5 partner slots misplaced");
      sim.slots[ka].present = sim.slots[kb].present = true;
      sim.out.push_back(birth(sim.rank_below(ka) + 1));
    });
    RebuildResult rr = rb.run();
    // the hook's birth recreates the partner strands; give them a witness via
    // the birth event itself
    FrontDiagram out;
    out.name = d.name;
    out.one_handles = d.one_handles;
    out.events = rr.events;
    normalize_ports(out.events);
    std::vector<Witness> ws = witnesses_from(d, t, rb, rr);
    // component of the partner strands may lack a witness if all its creating
    // events were the two deleted exits; use the inserted birth
    {
      int birth_index = -1;
      // the inserted birth is the first new event after the last kept event of
      // the exit block
      int last_block_new = -1;
      for (int e = 0; e <= block_end; ++e)
        if (rr.old_to_new.count(e))
          last_block_new = std::max(last_block_new, rr.old_to_new.at(e));
      birth_index = last_block_new + 1;
      ws.push_back({birth_index, t.strands[lower_partner].component,
                    t.strands[lower_partner].rightward});
    }
    relabel_by_witnesses(out, d, ws);
    return out;
  }

  if (ev.kind == EventKind::death) {
    int lo = t.event_strands[e0][0], hi = t.event_strands[e0][1];
    const Strand &slo = t.strands[lo], &shi = t.strands[hi];
    const Event &blo = d.events[slo.born_event], &bhi = d.events[shi.born_event];
    if (blo.kind != EventKind::handle_out || bhi.kind != EventKind::handle_out ||
        blo.handle != bhi.handle || std::abs(blo.port - bhi.port) != 1)
      illegal("dying strands were not born at adjacent ports");
    if (!strand_bare_except(d, t, lo, {e0, slo.born_event}) ||
        !strand_bare_except(d, t, hi, {e0, shi.born_event}))
      illegal("pass pair strands are not bare");
    int h = blo.handle;
    int qa = std::min(blo.port, bhi.port);
    int ia = ports[{h, qa}].second, ib = ports[{h, qa + 1}].second;
    if (std::abs(ia - ib) != 1) illegal("partner entry events are not adjacent");
    int ua = t.event_strands[ia][0], ub = t.event_strands[ib][0];
    int block_start = ia;
    for (size_t e = 0; e < d.events.size(); ++e)
      if (d.events[e].kind == EventKind::handle_in && d.events[e].handle == h)
        block_start = std::min(block_start, static_cast<int>(e));
    Rebuild rb(d, t);
    rb.deleted_events = {e0, slo.born_event, shi.born_event, ia, ib};
    rb.born_absent = {lo, hi};
    rb.hooks.emplace(block_start, [=](Sim& sim) {
      int ka = sim.slot_of(ua), kb = sim.slot_of(ub);
      if (ka < 0 || kb < 0) throw InternalError("lr5 partners missing");
      if (ka > kb) std::swap(ka, kb);
      if (kb != ka + 1) throw InternalError("lr5 partners not adjacent");
      sim.out.push_back(death(sim.rank_below(ka) + 1));
      sim.slots.erase(sim.slots.begin() + ka, sim.slots.begin() + kb + 1);
    });
    RebuildResult rr = rb.run();
    FrontDiagram out;
    out.name = d.name;
    out.one_handles = d.one_handles;
    out.events = rr.events;
    normalize_ports(out.events);
    std::vector<Witness> ws = witnesses_from(d, t, rb, rr);
    relabel_by_witnesses(out, d, ws);
    return out;
  }
  illegal("lr5 expects the birth or death of a pass pair");
}

// Sliding a crossing through the tube leaves every other position alone: the
// two arcs swap their visible heights at the far wall instead.
FrontDiagram do_lr4(const FrontDiagram& d, int e1) {
  Trace t = trace(d);
  int e0 = e1 - 1;
  if (e0 < 0 || e0 >= static_cast<int>(d.events.size()) ||
      d.events[e0].kind != EventKind::crossing)
    illegal("lr4 needs a crossing");
  int a = t.event_strands[e0][0], b = t.event_strands[e0][1];
  const Strand &sa = t.strands[a], &sb = t.strands[b];
  const Event &da = d.events[sa.died_event], &db = d.events[sb.died_event];
  if (da.kind != EventKind::handle_in || db.kind != EventKind::handle_in ||
      da.handle != db.handle || std::abs(da.port - db.port) != 1)
    illegal("crossing strands do not dive into adjacent ports");
  int h = da.handle;
  for (int e = e0 + 1; e < std::max(sa.died_event, sb.died_event); ++e)
    if (d.events[e].kind != EventKind::handle_in || d.events[e].handle != h)
      illegal("crossing is not flush against the entry block");
  auto ports = port_events(d);
  int q = std::min(da.port, db.port);
  int hq = ports[{h, q}].first;
  int block_end = hq;
  for (size_t e = 0; e < d.events.size(); ++e)
    if (d.events[e].kind == EventKind::handle_out && d.events[e].handle == h)
      block_end = std::max(block_end, static_cast<int>(e));
  if (block_end >= e0) illegal("entry and exit walls are interleaved");
  int at = -1;
  {
    const auto& st = t.stacks[block_end + 1];
    int pa = t.event_strands[hq][0];
    for (size_t i = 0; i < st.size(); ++i)
      if (st[i] == pa) at = static_cast<int>(i) + 1;
  }
  if (at < 0) throw InternalError("lr4 partner strand missing");
  FrontDiagram out = d;
  bool flag = d.events[e0].lower_over;
  out.events.erase(out.events.begin() + e0);
  out.events.insert(out.events.begin() + block_end + 1, crossing(at, flag));
  return relabeled(std::move(out), d, t, [&](int e) {
    if (e == e0) return -1;
    if (e > block_end && e < e0) return e + 1;
    return e;
  });
}

FrontDiagram do_lr6(const FrontDiagram& d, int e1) {
  Trace t = trace(d);
  int e0 = e1 - 1;
  if (e0 < 0 || e0 + 1 >= static_cast<int>(d.events.size()))
    illegal("lr6 needs a zigzag pair");
  const Event &a = d.events[e0], &b = d.events[e0 + 1];
  if (a.kind != EventKind::birth || b.kind != EventKind::death ||
      std::abs(a.pos - b.pos) != 1)
    illegal("lr6 expects a zigzag pair");
  int blo = t.event_strands[e0][0], bhi = t.event_strands[e0][1];
  int dlo = t.event_strands[e0 + 1][0], dhi = t.event_strands[e0 + 1][1];
  int host = (dlo == blo || dlo == bhi) ? dhi : dlo;        // dies at the pair
  int cont = (blo == dlo || blo == dhi) ? bhi : blo;        // continues after
  if (host == blo || host == bhi) illegal("zigzag does not sit on a strand");
  // rot contribution of the pair
  Int contrib = (t.strands[t.event_strands[e0][0]].rightward ? 1 : -1) +
                (!t.strands[t.event_strands[e0 + 1][0]].rightward ? 1 : -1);
  contrib /= 2;
  auto ports = port_events(d);
  const Strand& cs = t.strands[cont];
  const Strand& hs = t.strands[host];

  // case 1: continuation dives into a handle, all events in between are the
  // entry block; carry the zigzag to just after the exit block
  if (cs.died_event > e0 + 1 &&
      d.events[cs.died_event].kind == EventKind::handle_in) {
    int h = d.events[cs.died_event].handle;
    bool flush = true;
    for (int e = e0 + 2; e < cs.died_event; ++e)
      if (d.events[e].kind != EventKind::handle_in || d.events[e].handle != h)
        flush = false;
    if (flush && strand_bare_except(d, t, cont, {e0, e0 + 1, cs.died_event})) {
      int q = d.events[cs.died_event].port;
      int hout_ev = ports[{h, q}].first;
      int partner = t.event_strands[hout_ev][0];
      int block_end = hout_ev;
      for (size_t e = 0; e < d.events.size(); ++e)
        if (d.events[e].kind == EventKind::handle_out && d.events[e].handle == h)
          block_end = std::max(block_end, static_cast<int>(e));
      // partner position right after the exit block
      int ppos = -1;
      {
        const auto& st = t.stacks[block_end + 1];
        for (size_t i = 0; i < st.size(); ++i)
          if (st[i] == partner) ppos = static_cast<int>(i) + 1;
      }
      if (ppos < 0) throw InternalError("lr6 partner missing");
      bool pright = t.strands[partner].rightward;
      std::vector<Event> ins = stab_events(ppos, pright, contrib > 0);
      FrontDiagram out = d;
      out.events.erase(out.events.begin() + e0, out.events.begin() + e0 + 2);
      int at = block_end + 1 - (e0 < block_end ? 2 : 0);
      out.events.insert(out.events.begin() + at, ins.begin(), ins.end());
      return relabeled(std::move(out), d, t, [&](int e) {
        if (e == e0 || e == e0 + 1) return -1;
        int ne = e - (e > e0 ? 2 : 0);
        if (ne >= at) ne += 2;
        return ne;
      });
    }
  }
  // case 2: host was born from a handle, all events in between are exits;
  // carry the zigzag to just before the entry block
  if (d.events[hs.born_event].kind == EventKind::handle_out) {
    int h = d.events[hs.born_event].handle;
    bool flush = true;
    for (int e = hs.born_event + 1; e < e0; ++e)
      if (d.events[e].kind != EventKind::handle_out || d.events[e].handle != h)
        flush = false;
    if (flush && strand_bare_except(d, t, host, {e0, e0 + 1, hs.born_event})) {
      int q = d.events[hs.born_event].port;
      int hin_ev = ports[{h, q}].second;
      int partner = t.event_strands[hin_ev][0];
      int block_start = hin_ev;
      for (size_t e = 0; e < d.events.size(); ++e)
        if (d.events[e].kind == EventKind::handle_in && d.events[e].handle == h)
          block_start = std::min(block_start, static_cast<int>(e));
      int ppos = -1;
      {
        const auto& st = t.stacks[block_start];
        for (size_t i = 0; i < st.size(); ++i)
          if (st[i] == partner) ppos = static_cast<int>(i) + 1;
      }
      if (ppos < 0) throw InternalError("lr6 partner missing");
      bool pright = t.strands[partner].rightward;
      std::vector<Event> ins = stab_events(ppos, pright, contrib > 0);
      FrontDiagram out = d;
      out.events.erase(out.events.begin() + e0, out.events.begin() + e0 + 2);
      int at = block_start - (e0 < block_start ? 2 : 0);
      out.events.insert(out.events.begin() + at, ins.begin(), ins.end());
      return relabeled(std::move(out), d, t, [&](int e) {
        if (e == e0 || e == e0 + 1) return -1;
        int ne = e - (e > e0 ? 2 : 0);
        if (ne >= at) ne += 2;
        return ne;
      });
    }
  }
  illegal("zigzag is not flush against a handle");
}

// ---------------------------------------------------------------------------
// lr1: positive curl cancellation

struct CurlPlan {
  std::set<int> deleted_events;
  std::set<int> dead_strands;
  int up_flaps = 0;    // zigzags reinserted on the through strand
  int down_flaps = 0;
  int begin_strand = -1;  // loop leaves the crossing along this strand
  int end_strand = -1;
  int through_left = -1;  // strand alive before the crossing
};

std::optional<CurlPlan> plan_curl(const FrontDiagram& d, const Trace& t, int e0) {
  const Event& ev = d.events[e0];
  if (ev.kind != EventKind::crossing) return std::nullopt;
  int a = t.event_strands[e0][0], b = t.event_strands[e0][1];
  if (t.strands[a].component != t.strands[b].component) return std::nullopt;
  if (t.strands[a].rightward != t.strands[b].rightward) return std::nullopt;
  if (crossing_sign(ev.lower_over, t.strands[a].rightward, t.strands[b].rightward) !=
      +1)
    return std::nullopt;

  const auto& cyc = t.component_strands[t.strands[a].component - 1];
  auto idx_of = [&](int s) {
    for (size_t i = 0; i < cyc.size(); ++i)
      if (cyc[i] == s) return static_cast<int>(i);
    return -1;
  };
  int ia = idx_of(a), ib = idx_of(b);
  if (ia < 0 || ib < 0) return std::nullopt;

  for (int pass = 0; pass < 2; ++pass) {
    int begin = pass == 0 ? a : b;
    int end = pass == 0 ? b : a;
    int from = pass == 0 ? ia : ib;
    int to = pass == 0 ? ib : ia;
    std::vector<int> interior;
    int n = static_cast<int>(cyc.size());
    for (int k = (from + 1) % n; k != to; k = (k + 1) % n) interior.push_back(cyc[k]);

    bool bad = false;
    std::vector<int> connectors;
    auto on_loop_side = [&](int s, int e) {
      bool after = e > e0;
      bool loop_after = t.strands[s].rightward;  // exit side of begin
      if (s == begin) return after == loop_after;
      // end's loop part is its flow-entry side
      return after != t.strands[s].rightward;
    };
    auto scan = [&](int s, bool whole) {
      for (size_t e = 0; e < d.events.size() && !bad; ++e) {
        if (static_cast<int>(e) == e0) continue;
        auto es = t.event_strands[e];
        if (es[0] != s && es[1] != s) continue;
        if (!whole && !on_loop_side(s, static_cast<int>(e))) continue;
        const Event& x = d.events[e];
        if (x.kind == EventKind::crossing || x.kind == EventKind::handle_in ||
            x.kind == EventKind::handle_out) {
          bad = true;
          return;
        }
        connectors.push_back(static_cast<int>(e));
      }
    };
    scan(begin, false);
    scan(end, false);
    for (int s : interior) scan(s, true);
    if (bad) continue;
    std::sort(connectors.begin(), connectors.end());
    connectors.erase(std::unique(connectors.begin(), connectors.end()),
                     connectors.end());

    // the loop collapses through one up-down turning pair; every remaining
    // cusp pair survives as a zigzag on the through strand
    int down = 0, up = 0, births = 0;
    for (int e : connectors) {
      const Strand& lower = t.strands[t.event_strands[e][0]];
      bool is_birth = d.events[e].kind == EventKind::birth;
      births += is_birth;
      bool is_down = is_birth ? lower.rightward : !lower.rightward;
      (is_down ? down : up) += 1;
    }
    if (down % 2 == 0 || up % 2 == 0) continue;
    if (2 * births != static_cast<int>(connectors.size())) continue;

    CurlPlan plan;
    plan.deleted_events.insert(e0);
    for (int e : connectors) plan.deleted_events.insert(e);
    for (int s : interior) plan.dead_strands.insert(s);
    for (int e : connectors) {
      auto es = t.event_strands[e];
      for (int s : {es[0], es[1]})
        if (s >= 0 && s != begin && s != end) plan.dead_strands.insert(s);
    }
    plan.up_flaps = (up - 1) / 2;
    plan.down_flaps = (down - 1) / 2;
    plan.begin_strand = begin;
    plan.end_strand = end;
    plan.through_left = t.strands[begin].rightward ? begin : end;

    // clearance: nothing alive strictly between the loop strands
    int span_lo = e0, span_hi = e0;
    for (int e : plan.deleted_events) {
      span_lo = std::min(span_lo, e);
      span_hi = std::max(span_hi, e);
    }
    bool blocked = false;
    for (int g = span_lo + 1; g <= span_hi && !blocked; ++g) {
      const auto& st = t.stacks[g];
      int lo = -1, hi = -1;
      auto is_loop = [&](int s) {
        if (plan.dead_strands.count(s)) return true;
        if (s == begin || s == end) {
          bool after = g > e0;
          if (s == begin) return after == t.strands[s].rightward;
          return after != t.strands[s].rightward;
        }
        return false;
      };
      for (size_t i = 0; i < st.size(); ++i)
        if (is_loop(st[i])) {
          if (lo < 0) lo = static_cast<int>(i);
          hi = static_cast<int>(i);
        }
      for (int i = lo + 1; i < hi && lo >= 0; ++i)
        if (!is_loop(st[i])) {
          blocked = true;
          break;
        }
    }
    if (blocked) continue;
    return plan;
  }
  return std::nullopt;
}

FrontDiagram do_lr1(const FrontDiagram& d, int e1) {
  Trace t = trace(d);
  int e0 = e1 - 1;
  if (e0 < 0 || e0 >= static_cast<int>(d.events.size())) illegal("no such event");
  auto plan = plan_curl(d, t, e0);
  if (!plan) illegal("no clean positive curl at this crossing");

  int left = plan->through_left;
  int right = left == plan->begin_strand ? plan->end_strand : plan->begin_strand;
  Rebuild rb(d, t);
  rb.deleted_events = plan->deleted_events;
  rb.splice_crossings = {e0};
  rb.born_absent = plan->dead_strands;
  rb.born_absent.insert(right);
  int up_flaps = plan->up_flaps, down_flaps = plan->down_flaps;
  bool through_right = t.strands[left].rightward;
  rb.hooks.emplace(e0 + 1, [=](Sim& sim) {
    int idx = sim.slot_of(right);  // carries presence after the splice
    if (idx < 0 || !sim.slots[idx].present) idx = sim.slot_of(left);
    if (idx < 0 || !sim.slots[idx].present)
      throw InternalError("curl through strand missing");
    int y = sim.rank_below(idx) + 1;
    // a down-cusp pair raises rot by one, an up-cusp pair lowers it
    for (int k = 0; k < down_flaps; ++k)
      for (const Event& ev : stab_events(y, through_right, true)) sim.out.push_back(ev);
    for (int k = 0; k < up_flaps; ++k)
      for (const Event& ev : stab_events(y, through_right, false)) sim.out.push_back(ev);
  });
  RebuildResult rr = rb.run();
  FrontDiagram out;
  out.name = d.name;
  out.one_handles = d.one_handles;
  out.events = rr.events;
  normalize_ports(out.events);
  std::vector<Witness> ws = witnesses_from(d, t, rb, rr);
  relabel_by_witnesses(out, d, ws);
  return out;
}

// ---------------------------------------------------------------------------
// slides

struct SlideBuild {
  std::vector<Event> events;
  std::vector<int> old_to_new;  // per old event
  int band_birth = -1;          // 0-based new index
};

SlideBuild build_slide(const FrontDiagram& d, const Trace& t, int gap, int height,
                       int twist_pairs, bool twist_flag, int comp_i, int comp_j) {
  const auto& gst = t.stacks[gap];
  if (height < 1 || height + 1 > static_cast<int>(gst.size()))
    illegal("band needs two adjacent strands");
  int sj = gst[height - 1], si = gst[height];
  if (t.strands[sj].component != comp_j || t.strands[si].component != comp_i)
    illegal("components do not match the band location");
  if (comp_i == comp_j) illegal("cannot slide a component over itself");
  if (!t.strands[sj].rightward)
    illegal("band site must sit above a rightward strand of the slid-over component");

  std::set<int> jstr(t.component_strands[comp_j - 1].begin(),
                     t.component_strands[comp_j - 1].end());
  auto side_above = [&](int s) { return t.strands[s].rightward; };

  struct CSlot {
    int strand;
    bool is_copy;
    int of = -1;
  };
  std::vector<CSlot> slots;
  std::vector<Event> out;
  std::vector<int> old_to_new(d.events.size(), -1);
  int band_birth = -1;

  auto index_of_strand = [&](int s) {
    for (size_t i = 0; i < slots.size(); ++i)
      if (!slots[i].is_copy && slots[i].strand == s) return static_cast<int>(i);
    return -1;
  };
  auto index_of_copy = [&](int s) {
    for (size_t i = 0; i < slots.size(); ++i)
      if (slots[i].is_copy && slots[i].of == s) return static_cast<int>(i);
    return -1;
  };
  auto insert_index = [&](int e, int pos) {
    if (pos == 1) return 0;
    int below = t.stacks[e][pos - 2];
    int bi = index_of_strand(below);
    if (bi < 0) throw InternalError("slide lost an anchor strand");
    int idx = bi + 1;
    if (idx < static_cast<int>(slots.size()) && slots[idx].is_copy &&
        slots[idx].of == below)
      ++idx;  // insertions go outside the ribbon
    return idx;
  };

  std::map<std::pair<int, int>, int> copy_port;  // (handle, old port) -> temp
  int tmp_port = 1 << 20;

  bool band_done = false;
  for (int e = 0; e <= static_cast<int>(d.events.size()); ++e) {
    if (e == gap && !band_done) {
      band_done = true;
      int ij = index_of_strand(sj);
      int ic = index_of_copy(sj);
      int ii = index_of_strand(si);
      if (ij < 0 || ic < 0 || ii < 0) throw InternalError("band strands missing");
      if (ic != ij + 1 || ii != ic + 1)
        illegal("band site is not adjacent to the push-off");
      for (int k = 0; k < 2 * twist_pairs; ++k) {
        out.push_back(crossing(ij + 1, twist_flag));
        std::swap(slots[ij], slots[ij + 1]);
      }
      out.push_back(death(ic + 1));
      CSlot copy_cont = slots[ic], i_cont = slots[ii];
      slots.erase(slots.begin() + ic, slots.begin() + ii + 1);
      band_birth = static_cast<int>(out.size());
      out.push_back(birth(ic + 1));
      slots.insert(slots.begin() + ic, {copy_cont, i_cont});
    }
    if (e == static_cast<int>(d.events.size())) break;

    const Event& ev = d.events[e];
    const auto& es = t.event_strands[e];
    bool j0 = es[0] >= 0 && jstr.count(es[0]) > 0;
    bool j1 = es[1] >= 0 && jstr.count(es[1]) > 0;
    old_to_new[e] = static_cast<int>(out.size());
    switch (ev.kind) {
      case EventKind::birth: {
        int idx = insert_index(e, ev.pos);
        if (!j0) {
          out.push_back(birth(idx + 1));
          slots.insert(slots.begin() + idx, {CSlot{es[0], false}, CSlot{es[1], false}});
        } else {
          int lo = es[0], hi = es[1];
          if (side_above(lo)) {
            out.push_back(birth(idx + 1));
            slots.insert(slots.begin() + idx, {CSlot{lo, false}, CSlot{hi, false}});
            out.push_back(birth(idx + 2));
            slots.insert(slots.begin() + idx + 1,
                         {CSlot{-1, true, lo}, CSlot{-1, true, hi}});
          } else {
            out.push_back(birth(idx + 1));
            slots.insert(slots.begin() + idx,
                         {CSlot{-1, true, lo}, CSlot{-1, true, hi}});
            out.push_back(birth(idx + 2));
            slots.insert(slots.begin() + idx + 1, {CSlot{lo, false}, CSlot{hi, false}});
          }
        }
        break;
      }
      case EventKind::death: {
        if (!j0) {
          int ilo = index_of_strand(es[0]);
          out.push_back(death(ilo + 1));
          slots.erase(slots.begin() + ilo, slots.begin() + ilo + 2);
        } else {
          int lo = es[0];
          if (side_above(lo)) {
            int ilo = index_of_strand(lo);
            out.push_back(death(ilo + 2));
            slots.erase(slots.begin() + ilo + 1, slots.begin() + ilo + 3);
            out.push_back(death(ilo + 1));
            slots.erase(slots.begin() + ilo, slots.begin() + ilo + 2);
          } else {
            int ilo = index_of_strand(lo);
            out.push_back(death(ilo + 1));
            slots.erase(slots.begin() + ilo, slots.begin() + ilo + 2);
            out.push_back(death(ilo));
            slots.erase(slots.begin() + ilo - 1, slots.begin() + ilo + 1);
          }
        }
        break;
      }
      case EventKind::crossing: {
        int alo, ahi, blo, bhi;
        if (j0) {
          int i1 = index_of_strand(es[0]), i2 = index_of_copy(es[0]);
          alo = std::min(i1, i2);
          ahi = std::max(i1, i2);
        } else {
          alo = ahi = index_of_strand(es[0]);
        }
        if (j1) {
          int i1 = index_of_strand(es[1]), i2 = index_of_copy(es[1]);
          blo = std::min(i1, i2);
          bhi = std::max(i1, i2);
        } else {
          blo = bhi = index_of_strand(es[1]);
        }
        if (ahi + 1 != blo) throw InternalError("crossing blocks not adjacent");
        int m = ahi - alo + 1, n = bhi - blo + 1;
        for (int k = 0; k < m; ++k) {
          int start = alo + (m - 1 - k);
          for (int stp = 0; stp < n; ++stp) {
            int at = start + stp;
            out.push_back(crossing(at + 1, ev.lower_over));
            std::swap(slots[at], slots[at + 1]);
          }
        }
        break;
      }
      case EventKind::handle_out: {
        int idx = insert_index(e, ev.pos);
        if (!j0) {
          out.push_back(handle_out(idx + 1, ev.handle, ev.port));
          slots.insert(slots.begin() + idx, CSlot{es[0], false});
        } else {
          int tp = ++tmp_port;
          copy_port[{ev.handle, ev.port}] = tp;
          if (side_above(es[0])) {
            out.push_back(handle_out(idx + 1, ev.handle, ev.port));
            slots.insert(slots.begin() + idx, CSlot{es[0], false});
            out.push_back(handle_out(idx + 2, ev.handle, tp));
            slots.insert(slots.begin() + idx + 1, CSlot{-1, true, es[0]});
          } else {
            out.push_back(handle_out(idx + 1, ev.handle, tp));
            slots.insert(slots.begin() + idx, CSlot{-1, true, es[0]});
            out.push_back(handle_out(idx + 2, ev.handle, ev.port));
            slots.insert(slots.begin() + idx + 1, CSlot{es[0], false});
          }
        }
        break;
      }
      case EventKind::handle_in: {
        if (!j0) {
          int idx = index_of_strand(es[0]);
          out.push_back(handle_in(idx + 1, ev.handle, ev.port));
          slots.erase(slots.begin() + idx);
        } else {
          int tp = copy_port.at({ev.handle, ev.port});
          if (side_above(es[0])) {
            int idx = index_of_strand(es[0]);
            out.push_back(handle_in(idx + 1, ev.handle, ev.port));
            slots.erase(slots.begin() + idx);
            int ic = index_of_copy(es[0]);
            out.push_back(handle_in(ic + 1, ev.handle, tp));
            slots.erase(slots.begin() + ic);
          } else {
            int ic = index_of_copy(es[0]);
            out.push_back(handle_in(ic + 1, ev.handle, tp));
            slots.erase(slots.begin() + ic);
            int idx = index_of_strand(es[0]);
            out.push_back(handle_in(idx + 1, ev.handle, ev.port));
            slots.erase(slots.begin() + idx);
          }
        }
        break;
      }
    }
  }
  if (!slots.empty()) throw InternalError("slide left open strands");
  SlideBuild sb;
  sb.events = std::move(out);
  normalize_ports(sb.events);
  sb.old_to_new = std::move(old_to_new);
  sb.band_birth = band_birth;
  return sb;
}

FrontDiagram finish_slide(const FrontDiagram& d, const Trace& t, const SlideBuild& sb) {
  FrontDiagram out;
  out.name = d.name;
  out.one_handles = d.one_handles;
  out.events = sb.events;
  std::vector<Witness> ws;
  for (int c = 0; c < t.n_components; ++c)
    for (int s : t.component_strands[c]) {
      int be = t.strands[s].born_event;
      if (sb.old_to_new[be] < 0) continue;
      ws.push_back({sb.old_to_new[be], c + 1, t.strands[s].rightward});
      break;
    }
  relabel_by_witnesses(out, d, ws);
  return out;
}

Int signed_crossings_between(const FrontDiagram& d, const std::string& ni,
                             const std::string& nj) {
  Trace t = trace(d);
  int ci = d.component_id(ni), cj = d.component_id(nj);
  Int sum = 0;
  for (size_t e = 0; e < d.events.size(); ++e) {
    const Event& ev = d.events[e];
    if (ev.kind != EventKind::crossing) continue;
    const Strand& lo = t.strands[t.event_strands[e][0]];
    const Strand& hi = t.strands[t.event_strands[e][1]];
    if ((lo.component == ci && hi.component == cj) ||
        (lo.component == cj && hi.component == ci))
      sum += crossing_sign(ev.lower_over, lo.rightward, hi.rightward);
  }
  return sum;
}

FrontDiagram do_slide(const FrontDiagram& d, const Move& m) {
  int ci = d.component_id(m.comp_i), cj = d.component_id(m.comp_j);
  if (!ci || !cj) illegal("unknown component name");
  if (m.gap < 0 || m.gap > static_cast<int>(d.events.size()))
    illegal("gap out of range");
  Trace t = trace(d);
  AlgebraicHandleData alg = to_algebraic(d);
  // the anti-parallel copy of a subtraction flips the framing contribution
  bool same_dir_pre = t.strands[t.stacks[m.gap][m.height - 1]].rightward ==
                      t.strands[t.stacks[m.gap][m.height]].rightward;
  Int sgn = same_dir_pre ? -1 : 1;
  Int target = 2 * sgn * (alg.tb[cj - 1] - 1);
  Int base = signed_crossings_between(d, m.comp_i, m.comp_j);

  SlideBuild dry = build_slide(d, t, m.gap, m.height, 0, false, ci, cj);
  FrontDiagram dry_d = finish_slide(d, t, dry);
  Int s0 = signed_crossings_between(dry_d, m.comp_i, m.comp_j) - base;
  Int need = target - s0;
  int twist_pairs = 0;
  bool flag = false;
  if (need != 0) {
    SlideBuild probe = build_slide(d, t, m.gap, m.height, 1, false, ci, cj);
    FrontDiagram probe_d = finish_slide(d, t, probe);
    Int per = signed_crossings_between(probe_d, m.comp_i, m.comp_j) - base - s0;
    if (per == 0 || need % per != 0)
      throw InternalError("push-off twist calibration failed");
    Int k = need / per;
    if (k > 0) {
      twist_pairs = static_cast<int>(k);
      flag = false;
    } else {
      twist_pairs = static_cast<int>(-k);
      flag = true;  // opposite flag flips each pair's sign
    }
  }
  SlideBuild sb =
      build_slide(d, t, m.gap, m.height, twist_pairs, flag, ci, cj);
  FrontDiagram out = finish_slide(d, t, sb);
  // declared direction must match the geometry
  bool same_dir = t.strands[t.stacks[m.gap][m.height - 1]].rightward ==
                  t.strands[t.stacks[m.gap][m.height]].rightward;
  bool is_sub = m.id == MoveId::slide_sub;
  if (is_sub != same_dir)
    illegal(is_sub ? "parallel band performs an addition here"
                   : "antiparallel band performs a subtraction here");
  return out;
}

FrontDiagram do_cancel(const FrontDiagram& d, const Move& m);

FrontDiagram apply_impl(const FrontDiagram& d, const Move& m) {
  switch (m.id) {
    case MoveId::exchange: return do_exchange(d, m.e1);
    case MoveId::move_ii: return do_move_ii(d, m.e1);
    case MoveId::stab_up: return do_stab(d, m.gap, m.height, true);
    case MoveId::stab_down: return do_stab(d, m.gap, m.height, false);
    case MoveId::move_i: return do_move_i(d, m.gap, m.height);
    case MoveId::move_i_inv: return do_move_i_inv(d, m.e1);
    case MoveId::lr1: return do_lr1(d, m.e1);
    case MoveId::lr2: return do_lr2(d, m.e1, m.e2);
    case MoveId::lr3: return do_lr3(d, m.e1);
    case MoveId::lr4: return do_lr4(d, m.e1);
    case MoveId::lr5: return do_lr5(d, m.e1);
    case MoveId::lr6: return do_lr6(d, m.e1);
    case MoveId::slide_add:
    case MoveId::slide_sub: return do_slide(d, m);
    case MoveId::cancel_12: return do_cancel(d, m);
  }
  throw InternalError("unknown move id");
}

}  // namespace

// ---------------------------------------------------------------------------
// snapshots and delta contracts

ComponentSnapshot snapshot(const FrontDiagram& d) {
  ComponentSnapshot s;
  AlgebraicHandleData a = to_algebraic(d);
  s.labels = d.component_labels;
  s.rot.assign(a.n, 0);
  s.tb.assign(a.n, std::nullopt);
  for (int i = 0; i < a.n; ++i) {
    s.rot[i] = a.rot[i];
    if (!a.uses_handle[i]) s.tb[i] = a.tb[i];
  }
  s.linking = a.linking;
  return s;
}

namespace {

int label_index(const ComponentSnapshot& s, const std::string& name) {
  for (size_t i = 0; i < s.labels.size(); ++i)
    if (s.labels[i] == name) return static_cast<int>(i);
  return -1;
}

void contract_fail(const Move& m, const std::string& why) {
  throw InternalError("contract violation after " + move_id_name(m.id) + ": " + why);
}

void check_contract(const ComponentSnapshot& b, const ComponentSnapshot& a,
                    const Move& m) {
  auto same_labels = [&]() {
    std::multiset<std::string> lb(b.labels.begin(), b.labels.end());
    std::multiset<std::string> la(a.labels.begin(), a.labels.end());
    if (lb != la) contract_fail(m, "component set changed");
  };
  auto all_links_same = [&](bool diag_too) {
    for (size_t i = 0; i < b.labels.size(); ++i)
      for (size_t k = 0; k < b.labels.size(); ++k) {
        if (i == k && !diag_too) continue;
        int i2 = label_index(a, b.labels[i]);
        int k2 = label_index(a, b.labels[k]);
        if (i2 < 0 || k2 < 0) continue;
        const auto &x = b.linking[i][k], &y = a.linking[i2][k2];
        if (x.has_value() && y.has_value() && *x != *y)
          contract_fail(m, "linking entry changed unexpectedly");
      }
  };

  switch (m.id) {
    case MoveId::lr1:
    case MoveId::lr2:
    case MoveId::lr3:
    case MoveId::lr4:
    case MoveId::lr5:
    case MoveId::lr6:
    case MoveId::exchange: {
      same_labels();
      for (size_t i = 0; i < b.labels.size(); ++i) {
        int j = label_index(a, b.labels[i]);
        if (a.rot[j] != b.rot[i]) contract_fail(m, "rot changed");
        if (b.tb[i].has_value() && a.tb[j].has_value() && *a.tb[j] != *b.tb[i])
          contract_fail(m, "tb changed");
      }
      all_links_same(true);
      break;
    }
    case MoveId::stab_up:
    case MoveId::stab_down: {
      same_labels();
      Int drot = m.id == MoveId::stab_up ? 1 : -1;
      int changed = 0;
      for (size_t i = 0; i < b.labels.size(); ++i) {
        int j = label_index(a, b.labels[i]);
        Int got = a.rot[j] - b.rot[i];
        if (got == 0) {
          if (b.tb[i].has_value() && a.tb[j].has_value() && *a.tb[j] != *b.tb[i])
            contract_fail(m, "tb changed without rot");
          continue;
        }
        if (got != drot) contract_fail(m, "wrong rot delta");
        ++changed;
        if (b.tb[i].has_value() && a.tb[j].has_value() && *a.tb[j] != *b.tb[i] - 1)
          contract_fail(m, "stabilization must drop tb by one");
      }
      if (changed != 1) contract_fail(m, "exactly one component must change");
      all_links_same(false);
      break;
    }
    case MoveId::move_i:
    case MoveId::move_i_inv: {
      same_labels();
      Int dtb = m.id == MoveId::move_i ? -2 : 2;
      int changed = 0;
      for (size_t i = 0; i < b.labels.size(); ++i) {
        int j = label_index(a, b.labels[i]);
        if (a.rot[j] != b.rot[i]) contract_fail(m, "rot must be preserved");
        if (b.tb[i].has_value() && a.tb[j].has_value() && *a.tb[j] != *b.tb[i]) {
          if (*a.tb[j] - *b.tb[i] != dtb) contract_fail(m, "wrong tb delta");
          ++changed;
        }
      }
      if (changed > 1) contract_fail(m, "more than one component changed");
      all_links_same(false);
      break;
    }
    case MoveId::move_ii: {
      same_labels();
      int tb_changes = 0, link_changes = 0;
      for (size_t i = 0; i < b.labels.size(); ++i) {
        int j = label_index(a, b.labels[i]);
        if (a.rot[j] != b.rot[i]) contract_fail(m, "rot must be preserved");
        if (b.tb[i].has_value() && a.tb[j].has_value() && *a.tb[j] != *b.tb[i]) {
          if (std::abs(static_cast<long long>(*a.tb[j] - *b.tb[i])) != 2)
            contract_fail(m, "tb delta must be two");
          ++tb_changes;
        }
      }
      for (size_t i = 0; i < b.labels.size(); ++i)
        for (size_t k = i + 1; k < b.labels.size(); ++k) {
          int i2 = label_index(a, b.labels[i]);
          int k2 = label_index(a, b.labels[k]);
          const auto &x = b.linking[i][k], &y = a.linking[i2][k2];
          if (x.has_value() && y.has_value() && *x != *y) {
            if (std::abs(static_cast<long long>(*y - *x)) != 1)
              contract_fail(m, "linking delta must be one");
            ++link_changes;
          }
        }
      if (tb_changes + link_changes > 1)
        contract_fail(m, "move II must change exactly one entry");
      break;
    }
    case MoveId::slide_add:
    case MoveId::slide_sub: {
      same_labels();
      Int sgn = m.id == MoveId::slide_add ? 1 : -1;
      int bi = label_index(b, m.comp_i), bj = label_index(b, m.comp_j);
      if (bi < 0 || bj < 0) contract_fail(m, "missing slide components");
      for (size_t i = 0; i < b.labels.size(); ++i) {
        int j = label_index(a, b.labels[i]);
        Int expect = b.rot[i] + (static_cast<int>(i) == bi ? sgn * b.rot[bj] : 0);
        if (a.rot[j] != expect) contract_fail(m, "slide rot delta wrong");
      }
      for (size_t x = 0; x < b.labels.size(); ++x)
        for (size_t y = 0; y < b.labels.size(); ++y) {
          int x2 = label_index(a, b.labels[x]);
          int y2 = label_index(a, b.labels[y]);
          if (!a.linking[x2][y2].has_value()) continue;
          bool xi = static_cast<int>(x) == bi, yi = static_cast<int>(y) == bi;
          std::optional<Int> expect = Int(0);
          auto add = [&](std::optional<Int> v, Int f) {
            if (!expect.has_value()) return;
            if (!v.has_value()) {
              expect = std::nullopt;
              return;
            }
            expect = *expect + f * *v;
          };
          add(b.linking[x][y], 1);
          if (xi) add(b.linking[bj][y], sgn);
          if (yi) add(b.linking[x][bj], sgn);
          if (xi && yi) add(b.linking[bj][bj], 1);
          if (expect.has_value() && *a.linking[x2][y2] != *expect)
            contract_fail(m, "linking congruence failed");
        }
      break;
    }
    case MoveId::cancel_12: {
      if (label_index(a, m.comp_j) >= 0) contract_fail(m, "cancelled handle survived");
      for (size_t i = 0; i < b.labels.size(); ++i) {
        if (b.labels[i] == m.comp_j) continue;
        if (label_index(a, b.labels[i]) < 0) contract_fail(m, "component vanished");
      }
      break;
    }
  }
}

}  // namespace

FrontDiagram apply_move(const FrontDiagram& d, const Move& m) {
  ComponentSnapshot before = snapshot(d);
  FrontDiagram out = apply_impl(d, m);
  ValidationReport rep = validate(out);
  if (!rep.ok)
    throw MoveError("move produced an invalid diagram:\n" + rep.to_string());
  ComponentSnapshot after = snapshot(out);
  check_contract(before, after, m);
  return out;
}

int find_retractable_pass_pair(const FrontDiagram& d, int h) {
  Trace t = trace(d);
  for (size_t e = 0; e < d.events.size(); ++e) {
    if (d.events[e].kind != EventKind::birth) continue;
    int lo = t.event_strands[e][0], hi = t.event_strands[e][1];
    const Strand &slo = t.strands[lo], &shi = t.strands[hi];
    if (slo.died_event < 0 || shi.died_event < 0) continue;
    const Event &dl = d.events[slo.died_event], &dh = d.events[shi.died_event];
    if (dl.kind != EventKind::handle_in || dh.kind != EventKind::handle_in) continue;
    if (dl.handle != h || dh.handle != h || std::abs(dl.port - dh.port) != 1) continue;
    if (!strand_bare_except(d, t, lo, {static_cast<int>(e), slo.died_event})) continue;
    if (!strand_bare_except(d, t, hi, {static_cast<int>(e), shi.died_event})) continue;
    return static_cast<int>(e) + 1;
  }
  return -1;
}

// ---------------------------------------------------------------------------
// cancel_12

namespace {

FrontDiagram do_cancel(const FrontDiagram& d, const Move& m) {
  int cj = d.component_id(m.comp_j);
  if (!cj) illegal("unknown component name");
  int h = m.handle;
  if (h < 1 || h > d.one_handles) illegal("no such handle");
  {
    AlgebraicHandleData a = to_algebraic(d);
    const auto& w = a.incidence[cj - 1];
    if (w.size() != 1 || w[0].first != h)
      illegal("cancelling 2-handle must pass over the 1-handle exactly once");
  }
  FrontDiagram cur = d;
  for (int guard = 0;; ++guard) {
    if (guard > 500) throw InternalError("cancel did not terminate");
    Trace t = trace(cur);
    auto ports = port_events(cur);
    int cjn = cur.component_id(m.comp_j);
    int jport = -1, maxport = 0;
    for (const auto& [key, pe] : ports) {
      if (key.first != h) continue;
      maxport = std::max(maxport, key.second);
      if (t.strands[t.event_strands[pe.second][0]].component == cjn)
        jport = key.second;
    }
    if (maxport <= 1) break;
    if (jport != 1)
      illegal("cancel expects the 2-handle at the bottom port");
    int sj = t.event_strands[ports[{h, 1}].second][0];
    int starg = t.event_strands[ports[{h, 2}].second][0];
    int ci = t.strands[starg].component;
    if (ci == cjn) throw InternalError("cancel target is the cancelling handle");
    int block_first = static_cast<int>(cur.events.size());
    for (size_t e = 0; e < cur.events.size(); ++e)
      if (cur.events[e].kind == EventKind::handle_in && cur.events[e].handle == h)
        block_first = std::min(block_first, static_cast<int>(e));
    int band_gap = -1, band_height = -1;
    for (int g = block_first; g >= 0; --g) {
      const auto& st = t.stacks[g];
      int pj = -1, pt = -1;
      for (size_t i = 0; i < st.size(); ++i) {
        if (st[i] == sj) pj = static_cast<int>(i);
        if (st[i] == starg) pt = static_cast<int>(i);
      }
      if (pj < 0 || pt < 0) break;
      if (pt == pj + 1) {
        band_gap = g;
        band_height = pj + 1;
        break;
      }
    }
    if (band_gap < 0) illegal("no band site next to the cancelling 2-handle");
    Move slide;
    bool same_dir = t.strands[sj].rightward == t.strands[starg].rightward;
    slide.id = same_dir ? MoveId::slide_sub : MoveId::slide_add;
    slide.gap = band_gap;
    slide.height = band_height;
    slide.comp_i = cur.component_labels[ci - 1];
    slide.comp_j = m.comp_j;
    cur = apply_move(cur, slide);
    int v = find_retractable_pass_pair(cur, h);
    if (v < 0) illegal("slide did not produce a retractable pass pair");
    Move retract;
    retract.id = MoveId::lr5;
    retract.e1 = v;
    cur = apply_move(cur, retract);
  }
  // delete the cancelling component and the handle
  Trace t = trace(cur);
  int cjn = cur.component_id(m.comp_j);
  Rebuild rb(cur, t);
  for (size_t e = 0; e < cur.events.size(); ++e) {
    auto es = t.event_strands[e];
    for (int s : {es[0], es[1]})
      if (s >= 0 && t.strands[s].component == cjn)
        rb.deleted_events.insert(static_cast<int>(e));
  }
  for (int s : t.component_strands[cjn - 1]) rb.born_absent.insert(s);
  RebuildResult rr = rb.run();
  FrontDiagram out;
  out.name = cur.name;
  out.one_handles = cur.one_handles - 1;
  out.events = rr.events;
  for (Event& ev : out.events)
    if ((ev.kind == EventKind::handle_in || ev.kind == EventKind::handle_out) &&
        ev.handle > h)
      --ev.handle;
  normalize_ports(out.events);
  std::vector<Witness> ws = witnesses_from(cur, t, rb, rr, cjn);
  relabel_by_witnesses(out, cur, ws);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// scripts

MoveScript parse_script(const std::string& text) {
  MoveScript s;
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::vector<std::string> tk;
    std::string tok;
    while (ls >> tok) {
      if (tok[0] == '#') break;
      tk.push_back(tok);
    }
    if (tk.empty()) continue;
    auto arg = [&](size_t i) -> const std::string& {
      if (i >= tk.size()) throw ParseError("missing argument", line_no);
      return tk[i];
    };
    auto geti = [&](size_t i) {
      try {
        return std::stoi(arg(i));
      } catch (...) {
        throw ParseError("expected an integer", line_no);
      }
    };
    const std::string& op = tk[0];
    if (op == "script") {
      s.name = arg(1);
      continue;
    }
    if (op == "base") {
      s.base = arg(1);
      continue;
    }
    Move mv;
    if (op == "exchange") { mv.id = MoveId::exchange; mv.e1 = geti(1); }
    else if (op == "move_ii") { mv.id = MoveId::move_ii; mv.e1 = geti(1); }
    else if (op == "move_i") { mv.id = MoveId::move_i; mv.gap = geti(1); mv.height = geti(2); }
    else if (op == "move_i_inv") { mv.id = MoveId::move_i_inv; mv.e1 = geti(1); }
    else if (op == "stab_up") { mv.id = MoveId::stab_up; mv.gap = geti(1); mv.height = geti(2); }
    else if (op == "stab_down") { mv.id = MoveId::stab_down; mv.gap = geti(1); mv.height = geti(2); }
    else if (op == "lr1") { mv.id = MoveId::lr1; mv.e1 = geti(1); }
    else if (op == "lr2") { mv.id = MoveId::lr2; mv.e1 = geti(1); mv.e2 = geti(2); }
    else if (op == "lr3") { mv.id = MoveId::lr3; mv.e1 = geti(1); }
    else if (op == "lr4") { mv.id = MoveId::lr4; mv.e1 = geti(1); }
    else if (op == "lr5") { mv.id = MoveId::lr5; mv.e1 = geti(1); }
    else if (op == "lr6") { mv.id = MoveId::lr6; mv.e1 = geti(1); }
    else if (op == "slide_add" || op == "slide_sub") {
      mv.id = op == "slide_add" ? MoveId::slide_add : MoveId::slide_sub;
      mv.gap = geti(1);
      mv.height = geti(2);
      mv.comp_i = arg(3);
      mv.comp_j = arg(4);
    } else if (op == "cancel_12") {
      mv.id = MoveId::cancel_12;
      mv.handle = geti(1);
      mv.comp_j = arg(2);
    } else {
      throw ParseError("unknown move '" + op + "'", line_no);
    }
    s.moves.push_back(mv);
  }
  return s;
}

std::string serialize(const MoveScript& s) {
  std::ostringstream os;
  os << "script " << s.name << "\n";
  os << "base " << s.base << "\n";
  for (const Move& m : s.moves) {
    os << move_id_name(m.id);
    switch (m.id) {
      case MoveId::exchange:
      case MoveId::move_ii:
      case MoveId::move_i_inv:
      case MoveId::lr1:
      case MoveId::lr3:
      case MoveId::lr4:
      case MoveId::lr5:
      case MoveId::lr6: os << " " << m.e1; break;
      case MoveId::lr2: os << " " << m.e1 << " " << m.e2; break;
      case MoveId::stab_up:
      case MoveId::stab_down:
      case MoveId::move_i: os << " " << m.gap << " " << m.height; break;
      case MoveId::slide_add:
      case MoveId::slide_sub:
        os << " " << m.gap << " " << m.height << " " << m.comp_i << " " << m.comp_j;
        break;
      case MoveId::cancel_12: os << " " << m.handle << " " << m.comp_j; break;
    }
    os << "\n";
  }
  return os.str();
}

std::string MoveTrace::to_string() const {
  std::ostringstream os;
  os << "script " << script_name << ": " << steps.size() << " steps\n";
  for (size_t k = 0; k < steps.size(); ++k) {
    const MoveStep& st = steps[k];
    os << "step " << k + 1 << ": " << move_id_name(st.move.id) << " ok";
    if (!st.delta_note.empty()) os << " (" << st.delta_note << ")";
    os << "\n";
  }
  AlgebraicHandleData a = to_algebraic(final_diagram);
  os << "final rot:";
  for (int c = 0; c < a.n; ++c)
    os << " " << final_diagram.component_labels[c] << "=" << a.rot[c];
  os << "\n";
  return os.str();
}

MoveTrace verify_script(const FrontDiagram& d0, const MoveScript& s) {
  if (!s.base.empty() && s.base != d0.name)
    throw PreconditionError("script base '" + s.base + "' does not match diagram '" +
                            d0.name + "'");
  MoveTrace out;
  out.script_name = s.name;
  out.initial = d0;
  FrontDiagram cur = d0;
  for (size_t k = 0; k < s.moves.size(); ++k) {
    MoveStep st;
    st.move = s.moves[k];
    st.before = snapshot(cur);
    try {
      cur = apply_move(cur, s.moves[k]);
    } catch (const std::exception& e) {
      throw MoveError("script " + s.name + " failed at step " + std::to_string(k + 1) +
                      " (" + move_id_name(s.moves[k].id) + "): " + e.what());
    }
    st.after = snapshot(cur);
    out.steps.push_back(std::move(st));
  }
  out.final_diagram = cur;
  return out;
}

// ---------------------------------------------------------------------------
// bounded search

std::string canonical_key(const FrontDiagram& d) {
  FrontDiagram c = d;
  c.name = "c";
  Trace t = trace(d);
  c.component_labels.clear();
  for (int i = 1; i <= t.n_components; ++i)
    c.component_labels.push_back("c" + std::to_string(i));
  return serialize(c);
}

std::optional<MoveScript> search_equivalence(const FrontDiagram& d1,
                                             const FrontDiagram& d2, int depth) {
  std::string goal = canonical_key(d2);
  struct Node {
    FrontDiagram d;
    std::vector<Move> path;
  };
  auto result = [&](const std::vector<Move>& path) {
    MoveScript s;
    s.name = "found";
    s.base = d1.name;
    s.moves = path;
    return s;
  };
  if (canonical_key(d1) == goal) return result({});
  std::deque<Node> queue;
  std::set<std::string> seen;
  queue.push_back({d1, {}});
  seen.insert(canonical_key(d1));
  while (!queue.empty()) {
    Node n = std::move(queue.front());
    queue.pop_front();
    if (static_cast<int>(n.path.size()) >= depth) continue;
    std::vector<Move> cands;
    Trace t = trace(n.d);
    for (size_t e = 0; e < n.d.events.size(); ++e) {
      const Event& ev = n.d.events[e];
      if (ev.kind == EventKind::crossing) {
        Move flip;
        flip.id = MoveId::move_ii;
        flip.e1 = static_cast<int>(e) + 1;
        cands.push_back(flip);
        Move curl;
        curl.id = MoveId::lr1;
        curl.e1 = static_cast<int>(e) + 1;
        cands.push_back(curl);
        for (size_t f = e + 1; f < n.d.events.size(); ++f)
          if (n.d.events[f].kind == EventKind::crossing) {
            Move m2;
            m2.id = MoveId::lr2;
            m2.e1 = static_cast<int>(e) + 1;
            m2.e2 = static_cast<int>(f) + 1;
            cands.push_back(m2);
          }
      }
      if (ev.kind == EventKind::birth && is_move_i_block(n.d, static_cast<int>(e))) {
        Move inv;
        inv.id = MoveId::move_i_inv;
        inv.e1 = static_cast<int>(e) + 1;
        cands.push_back(inv);
      }
    }
    for (int g = 0; g <= static_cast<int>(n.d.events.size()); ++g)
      for (int y = 1; y <= static_cast<int>(t.stacks[g].size()); ++y)
        for (MoveId id : {MoveId::move_i, MoveId::stab_up, MoveId::stab_down}) {
          Move m;
          m.id = id;
          m.gap = g;
          m.height = y;
          cands.push_back(m);
        }
    for (const Move& m : cands) {
      FrontDiagram nd;
      try {
        nd = apply_move(n.d, m);
      } catch (const MoveError&) {
        continue;
      }
      std::string key = canonical_key(nd);
      if (seen.count(key)) continue;
      seen.insert(key);
      auto path = n.path;
      path.push_back(m);
      if (key == goal) return result(path);
      queue.push_back({nd, std::move(path)});
    }
  }
  return std::nullopt;
}

}  // namespace handlebody
