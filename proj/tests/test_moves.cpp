#include <random>

#include "doctest.h"
#include "handlebody/assets.hpp"
#include "handlebody/moves.hpp"

using namespace handlebody;

namespace {

Move at_event(MoveId id, int e1, int e2 = 0) {
  Move m;
  m.id = id;
  m.e1 = e1;
  m.e2 = e2;
  return m;
}

Move at_gap(MoveId id, int gap, int height) {
  Move m;
  m.id = id;
  m.gap = gap;
  m.height = height;
  return m;
}

}  // namespace

TEST_CASE("move I on the unknot: tb -1 -> -3, rot 0") {
  FrontDiagram u = generate_unknot();
  FrontDiagram d = apply_move(u, at_gap(MoveId::move_i, 1, 1));
  // oracle: recompute the front formulas on the rewritten word
  AlgebraicHandleData a = to_algebraic(d);
  CHECK(a.tb[0] == -3);
  CHECK(a.rot[0] == 0);
  CHECK(a.writhe[0] == 0);
}

TEST_CASE("move I then its inverse is the identity on diagrams") {
  FrontDiagram u = generate_unknot();
  for (int height : {1, 2}) {
    FrontDiagram d = apply_move(u, at_gap(MoveId::move_i, 1, height));
    FrontDiagram back = apply_move(d, at_event(MoveId::move_i_inv, 2));
    CHECK(back == u);
  }
  FrontDiagram x = generate_X();
  FrontDiagram d = apply_move(x, at_gap(MoveId::move_i, 4, 2));
  FrontDiagram back = apply_move(d, at_event(MoveId::move_i_inv, 5));
  CHECK(back == x);
}

TEST_CASE("stabilizations change (tb, rot) by (-1, +-1)") {
  FrontDiagram u = generate_unknot();
  FrontDiagram up = apply_move(u, at_gap(MoveId::stab_up, 1, 1));
  CHECK(to_algebraic(up).tb[0] == -2);
  CHECK(to_algebraic(up).rot[0] == 1);
  FrontDiagram dn = apply_move(u, at_gap(MoveId::stab_down, 1, 2));
  CHECK(to_algebraic(dn).tb[0] == -2);
  CHECK(to_algebraic(dn).rot[0] == -1);
  FrontDiagram r = u;
  r.component_orient[0] = false;
  FrontDiagram rs = apply_move(r, at_gap(MoveId::stab_down, 1, 1));
  CHECK(to_algebraic(rs).rot[0] == -1);
}

TEST_CASE("move II is an involution and moves exactly one entry") {
  FrontDiagram h = generate_hopf();
  FrontDiagram f = apply_move(h, at_event(MoveId::move_ii, 3));
  auto lk0 = linking_matrix(h), lk1 = linking_matrix(f);
  CHECK(*lk0[0][1] == 1);
  CHECK(*lk1[0][1] == 0);
  FrontDiagram back = apply_move(f, at_event(MoveId::move_ii, 3));
  CHECK(back == h);
}

TEST_CASE("move II on a self-crossing moves tb by two") {
  FrontDiagram x = generate_X();
  AlgebraicHandleData before = to_algebraic(x);
  FrontDiagram f = apply_move(x, at_event(MoveId::move_ii, 2));
  AlgebraicHandleData after = to_algebraic(f);
  CHECK(std::abs(static_cast<long long>(after.tb[0] - before.tb[0])) == 2);
  CHECK(after.rot[0] == before.rot[0]);
}

TEST_CASE("lr2 cancels a flipped clasp") {
  FrontDiagram h = generate_hopf();
  FrontDiagram f = apply_move(h, at_event(MoveId::move_ii, 4));
  FrontDiagram clean = apply_move(f, at_event(MoveId::lr2, 3, 4));
  int crossings = 0;
  for (const Event& e : clean.events)
    if (e.kind == EventKind::crossing) ++crossings;
  CHECK(crossings == 0);
  CHECK_THROWS_AS(apply_move(h, at_event(MoveId::lr2, 3, 4)), MoveError);
}

TEST_CASE("exchange commutes independent events and refuses overlapping ones") {
  FrontDiagram d = parse_diagram("diagram t\nb 1\nb 3\nd 3\nd 1\n");
  FrontDiagram e = apply_move(d, at_event(MoveId::exchange, 3));
  CHECK(e.events[2].kind == EventKind::death);
  CHECK(e.events[2].pos == 1);
  FrontDiagram back = apply_move(e, at_event(MoveId::exchange, 3));
  CHECK(back == d);
  FrontDiagram u = generate_unknot();
  CHECK_THROWS_AS(apply_move(u, at_event(MoveId::exchange, 1)), MoveError);
}

TEST_CASE("lr1 removes a positive curl and refuses a negative one") {
  // kinked unknot with a positive crossing, tb -1, rot 0
  FrontDiagram curl = parse_diagram("diagram t\nb 1\nb 1\nx 2 u\nd 1\nd 1\n");
  REQUIRE(to_algebraic(curl).tb[0] == -1);
  REQUIRE(to_algebraic(curl).rot[0] == 0);
  FrontDiagram clean = apply_move(curl, at_event(MoveId::lr1, 3));
  CHECK(clean.events == parse_diagram("diagram t\nb 1\nd 1\n").events);
  CHECK(to_algebraic(clean).tb[0] == -1);
  CHECK(to_algebraic(clean).rot[0] == 0);
  // the negative kink is a stabilization pair, not a curl
  FrontDiagram neg = parse_diagram("diagram t\nb 1\nb 1\nx 2 o\nd 1\nd 1\n");
  CHECK_THROWS_AS(apply_move(neg, at_event(MoveId::lr1, 3)), MoveError);
  // the one-sided loop changes rot when cut, so it is not a curl either
  FrontDiagram oneside = parse_diagram("diagram t\nb 1\nx 1 o\nd 1\n");
  CHECK_THROWS_AS(apply_move(oneside, at_event(MoveId::lr1, 2)), MoveError);
}

TEST_CASE("slides: handle subtraction on nested unknots obeys the congruence") {
  FrontDiagram d = parse_diagram(
      "diagram t\ncomponent 1 out +\ncomponent 2 in +\nb 1\nb 2\nd 2\nd 1\n");
  Move slide;
  slide.id = MoveId::slide_sub;
  slide.gap = 2;
  slide.height = 1;
  slide.comp_i = "in";
  slide.comp_j = "out";
  FrontDiagram out = apply_move(d, slide);
  auto a = to_algebraic(out);
  int hi = out.component_id("in") - 1, lo = out.component_id("out") - 1;
  // congruence with L = diag(-2, -2), E the subtraction matrix
  CHECK(*a.linking[lo][lo] == -2);
  CHECK(*a.linking[hi][hi] == -2 - 2 * 0 + -2);
  CHECK(*a.linking[hi][lo] == 0 - (-2));
  CHECK(a.rot[hi] == 0);
  CHECK(a.rot[lo] == 0);
}

TEST_CASE("slide direction legality matches the strand directions") {
  FrontDiagram d = parse_diagram(
      "diagram t\ncomponent 1 out +\ncomponent 2 in +\nb 1\nb 2\nd 2\nd 1\n");
  Move add;
  add.id = MoveId::slide_add;
  add.gap = 2;
  add.height = 1;
  add.comp_i = "in";
  add.comp_j = "out";
  // both strands at heights (1,2) run rightward: a parallel band subtracts
  CHECK_THROWS_AS(apply_move(d, add), MoveError);
}

TEST_CASE("exhaustive legal isotopy locations preserve every invariant") {
  // apply_move checks the lr/exchange contracts internally; count successes
  std::vector<FrontDiagram> pool = {generate_X(), generate_hopf(), generate_Xp(2),
                                    generate_Xp(3)};
  int applied = 0;
  for (const FrontDiagram& d : pool) {
    for (size_t e = 1; e <= d.events.size(); ++e) {
      for (MoveId id :
           {MoveId::lr1, MoveId::lr4, MoveId::lr5, MoveId::lr6, MoveId::exchange}) {
        try {
          apply_move(d, at_event(id, static_cast<int>(e)));
          ++applied;
        } catch (const MoveError&) {
        }
      }
      for (size_t f = e + 1; f <= d.events.size(); ++f) {
        try {
          apply_move(d,
                     at_event(MoveId::lr2, static_cast<int>(e), static_cast<int>(f)));
          ++applied;
        } catch (const MoveError&) {
        }
      }
    }
  }
  CHECK(applied > 0);
}

TEST_CASE("lr3 slides a triangle and keeps the pairwise flags") {
  // three strands braided with a coherent over pattern
  FrontDiagram d = parse_diagram(
      "diagram t\nb 1\nb 1\nb 1\nx 2 o\nx 1 o\nx 2 o\nx 1 u\nx 2 u\nx 1 u\nd 1\nd "
      "1\nd 1\n");
  REQUIRE(validate(d).ok);
  bool found = false;
  for (size_t e = 1; e + 2 <= d.events.size(); ++e) {
    try {
      FrontDiagram out = apply_move(d, at_event(MoveId::lr3, static_cast<int>(e)));
      found = true;
      break;
    } catch (const MoveError&) {
    }
  }
  CHECK(found);
}

TEST_CASE("cancellation splices foreign passes by itself") {
  // applying cancel_12 directly to the pristine diagram must reroute alpha's
  // passes internally and land on the same filling invariants as the shipped
  // reduction
  for (int p : {1, 2, 3}) {
    FrontDiagram xp = generate_Xp(p);
    Move cancel;
    cancel.id = MoveId::cancel_12;
    cancel.handle = 1;
    cancel.comp_j = "beta";
    FrontDiagram direct = apply_move(xp, cancel);
    CHECK(direct.one_handles == 0);
    CHECK(direct.component_count() == 2);
    AlgebraicHandleData a = to_algebraic(direct);
    CHECK(a.rot[direct.component_id("alpha") - 1] == -1 - p);
    FrontDiagram scripted =
        verify_script(xp, reduction_script(p)).final_diagram;
    IntegerSymmetricForm fd = intersection_form(direct);
    IntegerSymmetricForm fs = intersection_form(scripted);
    CHECK(fd.rank == fs.rank);
    CHECK(fd.signature == fs.signature);
    CHECK(fd.parity == fs.parity);
    CHECK(fd.det == fs.det);
  }
  // a 2-handle passing twice cannot cancel
  FrontDiagram x2 = generate_Xp(2);
  Move bad;
  bad.id = MoveId::cancel_12;
  bad.handle = 1;
  bad.comp_j = "alpha";
  CHECK_THROWS_AS(apply_move(x2, bad), MoveError);
}

TEST_CASE("handle subtraction drops the rotation number by one") {
  // the first slide of the X_1 pipeline: alpha over beta
  FrontDiagram x1 = generate_Xp(1);
  int gap = -1;
  for (size_t e = 0; e < x1.events.size(); ++e)
    if (x1.events[e].kind == EventKind::handle_in) {
      gap = static_cast<int>(e);
      break;
    }
  Move slide;
  slide.id = MoveId::slide_sub;
  slide.gap = gap;
  slide.height = 1;
  slide.comp_i = "alpha";
  slide.comp_j = "beta";
  FrontDiagram out = apply_move(x1, slide);
  AlgebraicHandleData before = to_algebraic(x1), after = to_algebraic(out);
  CHECK(before.rot[x1.component_id("alpha") - 1] == -1);
  CHECK(after.rot[out.component_id("alpha") - 1] == -2);
}

TEST_CASE("script round trip and replay determinism") {
  MoveScript s = classification_script(2);
  MoveScript back = parse_script(serialize(s));
  CHECK(back.name == s.name);
  CHECK(back.base == s.base);
  CHECK(back.moves == s.moves);
  FrontDiagram x2 = generate_Xp(2);
  MoveTrace t1 = verify_script(x2, s);
  MoveTrace t2 = verify_script(x2, s);
  CHECK(serialize(t1.final_diagram) == serialize(t2.final_diagram));
  CHECK(t1.to_string() == t2.to_string());
}

TEST_CASE("empty script verifies and changes nothing") {
  MoveScript s;
  s.name = "noop";
  s.base = "X_1";
  FrontDiagram x1 = generate_Xp(1);
  MoveTrace t = verify_script(x1, s);
  CHECK(t.steps.empty());
  CHECK(t.final_diagram == x1);
}

TEST_CASE("script with an illegal step reports the step index") {
  MoveScript s;
  s.name = "bad";
  s.base = "unknot";
  s.moves = {at_event(MoveId::move_ii, 1)};
  try {
    verify_script(generate_unknot(), s);
    CHECK(false);
  } catch (const MoveError& e) {
    CHECK(std::string(e.what()).find("step 1") != std::string::npos);
  }
}

TEST_CASE("search: identical diagrams give the empty script") {
  FrontDiagram u = generate_unknot();
  auto s = search_equivalence(u, u, 3);
  REQUIRE(s.has_value());
  CHECK(s->moves.empty());
}

TEST_CASE("search finds the single move I between unknots") {
  FrontDiagram u = generate_unknot();
  FrontDiagram target = apply_move(u, at_gap(MoveId::move_i, 1, 1));
  auto s = search_equivalence(u, target, 2);
  REQUIRE(s.has_value());
  REQUIRE(s->moves.size() == 1);
  CHECK(s->moves[0].id == MoveId::move_i);
  MoveTrace t = verify_script(u, *s);
  CHECK(canonical_key(t.final_diagram) == canonical_key(target));
}

TEST_CASE("slide over a component with self-crossings doubles them coherently") {
  // j carries a positive kink; the push-off must braid through it
  FrontDiagram d = parse_diagram(
      "diagram t\ncomponent 1 j +\ncomponent 2 i +\n"
      "b 1\nb 1\nx 2 u\nb 2\nd 2\nd 1\nd 1\n");
  REQUIRE(validate(d).ok);
  Trace t = trace(d);
  int applied = 0;
  for (int g = 0; g <= static_cast<int>(d.events.size()); ++g)
    for (int y = 1; y + 1 <= static_cast<int>(t.stacks[g].size()); ++y) {
      int sj = t.stacks[g][y - 1], si = t.stacks[g][y];
      if (t.strands[sj].component == t.strands[si].component) continue;
      Move m;
      m.id = t.strands[sj].rightward == t.strands[si].rightward
                 ? MoveId::slide_sub
                 : MoveId::slide_add;
      m.gap = g;
      m.height = y;
      m.comp_i = d.component_labels[t.strands[si].component - 1];
      m.comp_j = d.component_labels[t.strands[sj].component - 1];
      if (m.comp_i != "i") continue;
      try {
        FrontDiagram out = apply_move(d, m);  // congruence asserted inside
        ++applied;
        // the copy inherits j's kink: i~ gains one self-crossing from it
        AlgebraicHandleData a = to_algebraic(out);
        CHECK(a.linking[0][1].has_value());
      } catch (const MoveError&) {
      }
    }
  CHECK(applied > 0);
}

TEST_CASE("orientation reversal also fixes the linking matrix") {
  for (FrontDiagram d : {generate_hopf(), generate_X()}) {
    auto before = linking_matrix(d);
    for (int c = 0; c < d.component_count(); ++c) {
      FrontDiagram r = d;
      r.component_orient[c] = !r.component_orient[c];
      CHECK(linking_matrix(r) == before);
    }
  }
}

TEST_CASE("lr4 slides the braid crossing of X_p through the handle") {
  FrontDiagram x3 = generate_Xp(3);
  // the last braid crossing sits flush against the entry wall
  int site = -1;
  for (size_t e = 0; e + 1 < x3.events.size(); ++e)
    if (x3.events[e].kind == EventKind::crossing &&
        x3.events[e + 1].kind == EventKind::handle_in)
      site = static_cast<int>(e) + 1;
  REQUIRE(site > 0);
  Move m;
  m.id = MoveId::lr4;
  m.e1 = site;
  FrontDiagram out = apply_move(x3, m);
  int crossings_before = 0, crossings_after = 0;
  for (const Event& ev : x3.events)
    crossings_before += ev.kind == EventKind::crossing;
  for (const Event& ev : out.events)
    crossings_after += ev.kind == EventKind::crossing;
  CHECK(crossings_before == crossings_after);
  // the crossing now sits right after the exit wall
  bool found = false;
  for (size_t e = 0; e + 1 < out.events.size(); ++e)
    if (out.events[e].kind == EventKind::handle_out &&
        out.events[e + 1].kind == EventKind::crossing)
      found = true;
  CHECK(found);
}

TEST_CASE("lr6 carries a zigzag through the handle") {
  FrontDiagram x1 = generate_Xp(1);
  int gap = -1;
  for (size_t e = 0; e < x1.events.size(); ++e)
    if (x1.events[e].kind == EventKind::handle_in) {
      gap = static_cast<int>(e);
      break;
    }
  Move stab;
  stab.id = MoveId::stab_up;
  stab.gap = gap;
  stab.height = 1;
  FrontDiagram with_zig = apply_move(x1, stab);
  AlgebraicHandleData before = to_algebraic(with_zig);
  Move m;
  m.id = MoveId::lr6;
  m.e1 = gap + 1;  // the inserted birth
  FrontDiagram out = apply_move(with_zig, m);
  AlgebraicHandleData after = to_algebraic(out);
  CHECK(before.rot == after.rot);
  // the zigzag now sits on the exit side of the wall
  CHECK(out.events[gap].kind == EventKind::handle_in);
}
