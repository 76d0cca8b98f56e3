#include "handlebody/diagram.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace handlebody {

Event birth(int pos) { return Event{EventKind::birth, pos, false, 0, 0}; }
Event death(int pos) { return Event{EventKind::death, pos, false, 0, 0}; }
Event crossing(int pos, bool lower_over) {
  return Event{EventKind::crossing, pos, lower_over, 0, 0};
}
Event handle_in(int pos, int handle, int port) {
  return Event{EventKind::handle_in, pos, false, handle, port};
}
Event handle_out(int pos, int handle, int port) {
  return Event{EventKind::handle_out, pos, false, handle, port};
}

int FrontDiagram::component_id(const std::string& label) const {
  for (size_t i = 0; i < component_labels.size(); ++i)
    if (component_labels[i] == label) return static_cast<int>(i) + 1;
  return 0;
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  if (ok) {
    os << "ok\n";
    return os.str();
  }
  for (const auto& v : violations) {
    os << "violation [" << v.invariant << "]";
    if (v.event_index > 0) os << " at event " << v.event_index;
    os << ": " << v.message << "\n";
  }
  return os.str();
}

namespace {

struct EndRef {
  int strand = -1;
  bool right = false;  // which end of the strand
};

// Connection between two strand ends: cusp (direction flips) or tube (keeps).
struct Link {
  EndRef a, b;
  bool flips = false;
};

struct Resolver {
  const FrontDiagram& d;
  std::vector<Strand> strands;
  std::vector<std::vector<int>> stacks;
  std::vector<std::array<int, 2>> event_strands;
  std::vector<Link> links;
  // tube ends keyed by (handle, port)
  std::map<std::pair<int, int>, EndRef> tube_in, tube_out;

  explicit Resolver(const FrontDiagram& d_) : d(d_) {}

  int new_strand() {
    strands.push_back(Strand{});
    return static_cast<int>(strands.size()) - 1;
  }

  void run() {
    std::vector<int> stack;
    stacks.push_back(stack);
    for (size_t e = 0; e < d.events.size(); ++e) {
      const Event& ev = d.events[e];
      int n = static_cast<int>(stack.size());
      int p = ev.pos;
      auto fail = [&](const std::string& m) {
        throw ValidationError("event " + std::to_string(e + 1) + ": " + m);
      };
      switch (ev.kind) {
        case EventKind::birth: {
          if (p < 1 || p > n + 1) fail("birth position out of range");
          int lo = new_strand(), hi = new_strand();
          strands[lo].born_event = strands[hi].born_event = static_cast<int>(e);
          stack.insert(stack.begin() + (p - 1), {lo, hi});
          links.push_back({{lo, false}, {hi, false}, true});
          event_strands.push_back({lo, hi});
          break;
        }
        case EventKind::death: {
          if (p < 1 || p + 1 > n) fail("death position out of range");
          int lo = stack[p - 1], hi = stack[p];
          strands[lo].died_event = strands[hi].died_event = static_cast<int>(e);
          stack.erase(stack.begin() + (p - 1), stack.begin() + (p + 1));
          links.push_back({{lo, true}, {hi, true}, true});
          event_strands.push_back({lo, hi});
          break;
        }
        case EventKind::crossing: {
          if (p < 1 || p + 1 > n) fail("crossing position out of range");
          event_strands.push_back({stack[p - 1], stack[p]});
          std::swap(stack[p - 1], stack[p]);
          break;
        }
        case EventKind::handle_out: {
          if (p < 1 || p > n + 1) fail("handle-out position out of range");
          int s = new_strand();
          strands[s].born_event = static_cast<int>(e);
          stack.insert(stack.begin() + (p - 1), s);
          auto key = std::make_pair(ev.handle, ev.port);
          if (tube_out.count(key)) fail("port already has an exit event");
          tube_out[key] = {s, false};
          event_strands.push_back({s, -1});
          break;
        }
        case EventKind::handle_in: {
          if (p < 1 || p > n) fail("handle-in position out of range");
          int s = stack[p - 1];
          strands[s].died_event = static_cast<int>(e);
          stack.erase(stack.begin() + (p - 1));
          auto key = std::make_pair(ev.handle, ev.port);
          if (tube_in.count(key)) fail("port already has an entry event");
          tube_in[key] = {s, true};
          event_strands.push_back({s, -1});
          break;
        }
      }
      stacks.push_back(stack);
    }
    if (!stack.empty()) throw ValidationError("strand count nonzero at end");
    // tube links
    for (const auto& [key, in] : tube_in) {
      auto it = tube_out.find(key);
      if (it == tube_out.end())
        throw ValidationError("port (" + std::to_string(key.first) + "," +
                              std::to_string(key.second) + ") used 1 time, expected 2");
      links.push_back({in, it->second, false});
    }
    for (const auto& [key, out] : tube_out) {
      if (!tube_in.count(key))
        throw ValidationError("port (" + std::to_string(key.first) + "," +
                              std::to_string(key.second) + ") used 1 time, expected 2");
    }
  }
};

}  // namespace

Trace trace(const FrontDiagram& d) {
  Resolver r(d);
  r.run();

  int ns = static_cast<int>(r.strands.size());
  // adjacency on strand ends: each end has exactly one link
  struct EndLink {
    int other = -1;
    bool other_right = false;
    bool flips = false;
    bool set = false;
  };
  std::vector<std::array<EndLink, 2>> ends(ns);  // [0]=left, [1]=right
  for (const Link& l : r.links) {
    auto set_end = [&](EndRef from, EndRef to, bool flips) {
      EndLink& slot = ends[from.strand][from.right ? 1 : 0];
      if (slot.set)
        throw ValidationError("strand end connected twice");
      slot = {to.strand, to.right, flips, true};
    };
    set_end(l.a, l.b, l.flips);
    set_end(l.b, l.a, l.flips);
  }
  for (int s = 0; s < ns; ++s)
    for (int side = 0; side < 2; ++side)
      if (!ends[s][side].set) throw ValidationError("open strand end");

  // walk cycles: component per cycle, direction parity relative to the
  // component's first strand
  Trace t;
  t.strands = r.strands;
  t.stacks = std::move(r.stacks);
  t.event_strands = std::move(r.event_strands);
  std::vector<int> comp(ns, 0);
  std::vector<bool> dir(ns, true);
  for (int s0 = 0; s0 < ns; ++s0) {
    if (comp[s0]) continue;
    int cid = ++t.n_components;
    bool orient = cid <= static_cast<int>(d.component_orient.size())
                      ? d.component_orient[cid - 1]
                      : true;
    std::vector<int> order;
    int s = s0;
    bool rightward = orient;
    while (true) {
      if (comp[s]) {
        if (comp[s] != cid || s != s0) throw ValidationError("component trace broken");
        break;
      }
      comp[s] = cid;
      dir[s] = rightward;
      order.push_back(s);
      // leave along the end the flow reaches: right end if rightward
      const EndLink& el = ends[s][rightward ? 1 : 0];
      int nxt = el.other;
      bool entered_right = el.other_right;
      bool nd;
      if (el.flips) {
        // cusp: flow leaves the partner strand away from the shared end
        nd = !entered_right;
      } else {
        // tube: direction of travel is preserved across the handle
        nd = !entered_right;
      }
      // For both cusp and tube the flow continues away from the entered end:
      // entering at the partner's left end means moving rightward.
      s = nxt;
      rightward = nd;
    }
    t.component_strands.push_back(order);
  }
  for (int s = 0; s < ns; ++s) {
    t.strands[s].component = comp[s];
    t.strands[s].rightward = dir[s];
  }
  // consistency: around each cycle the parity must close up
  for (int s = 0; s < ns; ++s) {
    for (int side = 0; side < 2; ++side) {
      const EndLink& el = ends[s][side];
      bool this_out = dir[s] == (side == 1);  // flow leaves via this end
      bool other_out = dir[el.other] == (el.other_right);
      if (this_out == other_out)
        throw ValidationError("orientation parity inconsistent around a component");
    }
  }
  return t;
}

ValidationReport validate(const FrontDiagram& d) {
  ValidationReport rep;
  auto add = [&](const std::string& inv, int ev, const std::string& msg) {
    rep.ok = false;
    rep.violations.push_back({inv, ev, msg});
  };

  // pass 1: stack consistency and handle bookkeeping, without throwing
  {
    int n = 0;
    std::map<std::pair<int, int>, int> in_count, out_count;
    for (size_t e = 0; e < d.events.size(); ++e) {
      const Event& ev = d.events[e];
      int idx = static_cast<int>(e) + 1;
      switch (ev.kind) {
        case EventKind::birth:
          if (ev.pos < 1 || ev.pos > n + 1)
            add("stack-consistency", idx, "birth position out of range");
          n += 2;
          break;
        case EventKind::death:
          if (ev.pos < 1 || ev.pos + 1 > n) {
            add("stack-consistency", idx, "death position out of range");
            n = std::max(0, n - 2);
          } else
            n -= 2;
          break;
        case EventKind::crossing:
          if (ev.pos < 1 || ev.pos + 1 > n)
            add("stack-consistency", idx, "crossing position out of range");
          break;
        case EventKind::handle_out:
          if (ev.pos < 1 || ev.pos > n + 1)
            add("stack-consistency", idx, "handle-out position out of range");
          if (ev.handle < 1 || ev.handle > d.one_handles)
            add("handle-index", idx, "handle id out of range");
          out_count[{ev.handle, ev.port}]++;
          n += 1;
          break;
        case EventKind::handle_in:
          if (ev.pos < 1 || ev.pos > n) {
            add("stack-consistency", idx, "handle-in position out of range");
          } else
            n -= 1;
          if (ev.handle < 1 || ev.handle > d.one_handles)
            add("handle-index", idx, "handle id out of range");
          in_count[{ev.handle, ev.port}]++;
          break;
      }
    }
    if (n != 0) add("stack-consistency", 0, "strand count nonzero at end");
    for (auto& [key, c] : in_count)
      if (c != 1 || out_count[key] != 1)
        add("port-pairing", 0,
            "port (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                ") used " + std::to_string(c + out_count[key]) + " times, expected 2");
    for (auto& [key, c] : out_count)
      if (!in_count.count(key))
        add("port-pairing", 0,
            "port (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                ") used 1 time, expected 2");
    // contiguous port numbering
    std::map<int, int> max_port;
    std::map<std::pair<int, int>, bool> seen;
    for (const Event& ev : d.events)
      if (ev.kind == EventKind::handle_in || ev.kind == EventKind::handle_out) {
        max_port[ev.handle] = std::max(max_port[ev.handle], ev.port);
        seen[{ev.handle, ev.port}] = true;
        if (ev.port < 1) add("port-pairing", 0, "port index must be positive");
      }
    for (auto& [h, m] : max_port)
      for (int q = 1; q <= m; ++q)
        if (!seen.count({h, q}))
          add("port-pairing", 0,
              "handle " + std::to_string(h) + " ports not contiguous (missing " +
                  std::to_string(q) + ")");
  }
  if (!rep.ok) return rep;

  // pass 2: structural trace
  Trace t;
  try {
    t = trace(d);
  } catch (const ValidationError& e) {
    add("structure", 0, e.what());
    return rep;
  }

  // component counts agree
  if (!d.component_labels.empty() &&
      static_cast<int>(d.component_labels.size()) != t.n_components)
    add("component-count", 0,
        "declared " + std::to_string(d.component_labels.size()) + " components, traced " +
            std::to_string(t.n_components));
  if (d.component_orient.size() != d.component_labels.size())
    add("component-count", 0, "orientation count differs from label count");

  // port pairs belong to one component
  {
    std::map<std::pair<int, int>, std::vector<int>> users;
    for (size_t e = 0; e < d.events.size(); ++e) {
      const Event& ev = d.events[e];
      if (ev.kind == EventKind::handle_in || ev.kind == EventKind::handle_out)
        users[{ev.handle, ev.port}].push_back(
            t.strands[t.event_strands[e][0]].component);
    }
    for (auto& [key, comps] : users)
      if (comps.size() == 2 && comps[0] != comps[1])
        add("port-pairing", 0,
            "port (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                ") entry and exit belong to different components");
  }

  // handle blocks: hout events consecutive with stair positions, hin events
  // consecutive at constant position, ports ascending (FIFO matching)
  for (int h = 1; h <= d.one_handles; ++h) {
    std::vector<int> outs, ins;
    for (size_t e = 0; e < d.events.size(); ++e) {
      if (d.events[e].handle != h) continue;
      if (d.events[e].kind == EventKind::handle_out) outs.push_back(static_cast<int>(e));
      if (d.events[e].kind == EventKind::handle_in) ins.push_back(static_cast<int>(e));
    }
    for (size_t k = 0; k < outs.size(); ++k) {
      const Event& ev = d.events[outs[k]];
      if (ev.port != static_cast<int>(k) + 1)
        add("handle-block", outs[k] + 1, "exit events must list ports in order");
      if (k > 0 && (outs[k] != outs[k - 1] + 1 ||
                    ev.pos != d.events[outs[k - 1]].pos + 1))
        add("handle-block", outs[k] + 1,
            "exit events of a handle must form a contiguous ascending block");
    }
    for (size_t k = 0; k < ins.size(); ++k) {
      const Event& ev = d.events[ins[k]];
      if (ev.port != static_cast<int>(k) + 1)
        add("handle-block", ins[k] + 1, "entry events must list ports in order");
      if (k > 0 && (ins[k] != ins[k - 1] + 1 || ev.pos != d.events[ins[k - 1]].pos))
        add("handle-block", ins[k] + 1,
            "entry events of a handle must form a contiguous block at one height");
    }
  }
  return rep;
}

int crossing_sign(bool lower_over, bool lower_rightward, bool upper_rightward) {
  int s = lower_over ? -1 : +1;
  int a = lower_rightward ? +1 : -1;
  int b = upper_rightward ? +1 : -1;
  return s * a * b;
}

namespace {

// cusp direction: true = down cusp
bool cusp_down(const Event& ev, const Strand& lower) {
  if (ev.kind == EventKind::birth) return lower.rightward;
  return !lower.rightward;  // death
}

}  // namespace

AlgebraicHandleData to_algebraic(const FrontDiagram& d) {
  Trace t = trace(d);
  AlgebraicHandleData a;
  a.n = t.n_components;
  a.writhe.assign(a.n, 0);
  a.tb.assign(a.n, 0);
  a.rot.assign(a.n, 0);
  a.uses_handle.assign(a.n, false);
  a.incidence.assign(a.n, {});
  std::vector<Int> deaths(a.n, 0);
  std::vector<std::vector<Int>> inter(a.n, std::vector<Int>(a.n, 0));
  std::vector<Int> updown(a.n, 0);

  for (size_t e = 0; e < d.events.size(); ++e) {
    const Event& ev = d.events[e];
    const auto& es = t.event_strands[e];
    switch (ev.kind) {
      case EventKind::crossing: {
        const Strand& lo = t.strands[es[0]];
        const Strand& hi = t.strands[es[1]];
        int s = crossing_sign(ev.lower_over, lo.rightward, hi.rightward);
        if (lo.component == hi.component)
          a.writhe[lo.component - 1] += s;
        else
          inter[lo.component - 1][hi.component - 1] += s,
              inter[hi.component - 1][lo.component - 1] += s;
        break;
      }
      case EventKind::birth:
      case EventKind::death: {
        const Strand& lo = t.strands[es[0]];
        int c = lo.component - 1;
        updown[c] += cusp_down(ev, lo) ? +1 : -1;
        if (ev.kind == EventKind::death) deaths[c] += 1;
        break;
      }
      case EventKind::handle_in:
      case EventKind::handle_out:
        a.uses_handle[t.strands[es[0]].component - 1] = true;
        break;
    }
  }
  for (int c = 0; c < a.n; ++c) {
    a.tb[c] = a.writhe[c] - deaths[c];
    if (updown[c] % 2 != 0) throw InternalError("odd signed cusp count");
    a.rot[c] = updown[c] / 2;
  }
  // incidence words in traversal order
  for (int c = 0; c < a.n; ++c) {
    for (int s : t.component_strands[c]) {
      const Strand& st = t.strands[s];
      // flow leaves via right end when rightward; a tube pass is recorded when
      // the flow enters a handle (sign +1 through hin, -1 backwards)
      int end_event = st.rightward ? st.died_event : st.born_event;
      const Event& ev = d.events[end_event];
      if (st.rightward && ev.kind == EventKind::handle_in)
        a.incidence[c].push_back({ev.handle, +1});
      if (!st.rightward && ev.kind == EventKind::handle_out)
        a.incidence[c].push_back({ev.handle, -1});
    }
  }
  // linking matrix
  a.linking.assign(a.n, std::vector<std::optional<Int>>(a.n));
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) {
      if (a.uses_handle[i] || a.uses_handle[j]) continue;
      if (i == j)
        a.linking[i][i] = a.tb[i] - 1;
      else {
        if (inter[i][j] % 2 != 0) throw InternalError("odd inter-crossing sum");
        a.linking[i][j] = inter[i][j] / 2;
      }
    }
  return a;
}

Int writhe(const FrontDiagram& d, int comp) {
  AlgebraicHandleData a = to_algebraic(d);
  if (comp < 1 || comp > a.n) throw PreconditionError("unknown component");
  return a.writhe[comp - 1];
}

Int thurston_bennequin(const FrontDiagram& d, int comp) {
  AlgebraicHandleData a = to_algebraic(d);
  if (comp < 1 || comp > a.n) throw PreconditionError("unknown component");
  if (a.uses_handle[comp - 1])
    throw PreconditionError("tb undefined before reduction");
  return a.tb[comp - 1];
}

Int rotation(const FrontDiagram& d, int comp) {
  AlgebraicHandleData a = to_algebraic(d);
  if (comp < 1 || comp > a.n) throw PreconditionError("unknown component");
  return a.rot[comp - 1];
}

std::vector<std::vector<std::optional<Int>>> linking_matrix(const FrontDiagram& d) {
  return to_algebraic(d).linking;
}

// ---------------------------------------------------------------------------
// text format

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) {
    if (tok[0] == '#') break;
    out.push_back(tok);
  }
  return out;
}

int parse_int(const std::string& s, int line_no, const char* what) {
  try {
    size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (...) {
    throw ParseError(std::string("expected ") + what + ", got '" + s + "'", line_no);
  }
}

}  // namespace

FrontDiagram parse_diagram(const std::string& text) {
  FrontDiagram d;
  bool have_name = false;
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  int declared_components = 0;
  while (std::getline(is, line)) {
    ++line_no;
    auto tk = tokens(line);
    if (tk.empty()) continue;
    const std::string& op = tk[0];
    auto need = [&](size_t n) {
      if (tk.size() != n)
        throw ParseError("'" + op + "' expects " + std::to_string(n - 1) + " arguments",
                         line_no);
    };
    if (op == "diagram") {
      need(2);
      d.name = tk[1];
      have_name = true;
    } else if (op == "handles1") {
      need(2);
      d.one_handles = parse_int(tk[1], line_no, "handle count");
    } else if (op == "component") {
      need(4);
      int id = parse_int(tk[1], line_no, "component id");
      if (id != ++declared_components)
        throw ParseError("component ids must be declared in order 1..n", line_no);
      if (tk[3] != "+" && tk[3] != "-")
        throw ParseError("orientation must be + or -", line_no);
      d.component_labels.push_back(tk[2]);
      d.component_orient.push_back(tk[3] == "+");
    } else if (op == "b") {
      need(2);
      d.events.push_back(birth(parse_int(tk[1], line_no, "position")));
    } else if (op == "d") {
      need(2);
      d.events.push_back(death(parse_int(tk[1], line_no, "position")));
    } else if (op == "x") {
      need(3);
      if (tk[2] != "o" && tk[2] != "u")
        throw ParseError("crossing flag must be o or u", line_no);
      d.events.push_back(crossing(parse_int(tk[1], line_no, "position"), tk[2] == "o"));
    } else if (op == "hin" || op == "hout") {
      need(4);
      int p = parse_int(tk[1], line_no, "position");
      int h = parse_int(tk[2], line_no, "handle");
      int q = parse_int(tk[3], line_no, "port");
      d.events.push_back(op == "hin" ? handle_in(p, h, q) : handle_out(p, h, q));
    } else {
      throw ParseError("unknown declaration '" + op + "'", line_no);
    }
  }
  if (!have_name) throw ParseError("missing 'diagram' line", 1);

  // materialize default labels/orientations, then validate
  ValidationReport first = validate(d);
  if (first.ok && d.component_labels.empty()) {
    Trace t = trace(d);
    for (int c = 1; c <= t.n_components; ++c) {
      d.component_labels.push_back("c" + std::to_string(c));
      d.component_orient.push_back(true);
    }
  }
  ValidationReport rep = validate(d);
  if (!rep.ok) throw ValidationError(rep.to_string());
  return d;
}

std::string serialize(const FrontDiagram& d) {
  std::ostringstream os;
  os << "diagram " << d.name << "\n";
  os << "handles1 " << d.one_handles << "\n";
  for (size_t c = 0; c < d.component_labels.size(); ++c)
    os << "component " << c + 1 << " " << d.component_labels[c] << " "
       << (d.component_orient[c] ? "+" : "-") << "\n";
  for (const Event& ev : d.events) {
    switch (ev.kind) {
      case EventKind::birth: os << "b " << ev.pos << "\n"; break;
      case EventKind::death: os << "d " << ev.pos << "\n"; break;
      case EventKind::crossing:
        os << "x " << ev.pos << " " << (ev.lower_over ? "o" : "u") << "\n";
        break;
      case EventKind::handle_in:
        os << "hin " << ev.pos << " " << ev.handle << " " << ev.port << "\n";
        break;
      case EventKind::handle_out:
        os << "hout " << ev.pos << " " << ev.handle << " " << ev.port << "\n";
        break;
    }
  }
  return os.str();
}

}  // namespace handlebody
