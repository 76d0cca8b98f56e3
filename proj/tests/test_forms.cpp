#include <random>

#include "doctest.h"
#include "handlebody/assets.hpp"
#include "handlebody/forms.hpp"
#include "handlebody/invariants.hpp"
#include "handlebody/moves.hpp"

using namespace handlebody;

namespace {

IMat from_rows(std::initializer_list<std::initializer_list<long long>> rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows.begin()->size()) : 0;
  IMat m(r, c);
  int i = 0;
  for (auto& row : rows) {
    int j = 0;
    for (auto v : row) m.at(i, j++) = v;
    ++i;
  }
  return m;
}

FrontDiagram reduced_Xp(int p) {
  return verify_script(generate_Xp(p), reduction_script(p)).final_diagram;
}

}  // namespace

TEST_CASE("labels: hyperbolic for even rank-two signature-zero forms") {
  FrontDiagram r1 = reduced_Xp(1);
  CHECK(classify_indefinite_unimodular(intersection_form(r1)) == "H");
  CHECK(classify_indefinite_unimodular(make_form(from_rows({{0, 1}, {1, 0}}))) == "H");
}

TEST_CASE("labels: odd forms split into <+1> and <-1> summands") {
  CHECK(classify_indefinite_unimodular(make_form(from_rows({{1, 0}, {0, -1}}))) ==
        "⟨+1⟩ ⊕ ⟨−1⟩");
  CHECK(classify_indefinite_unimodular(
            make_form(from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}))) ==
        "2⟨+1⟩ ⊕ ⟨−1⟩");
}

TEST_CASE("labels: definite and non-unimodular forms are rejected") {
  CHECK_THROWS_AS(classify_indefinite_unimodular(make_form(from_rows({{1, 0}, {0, 1}}))),
                  PreconditionError);
  CHECK_THROWS_AS(classify_indefinite_unimodular(make_form(from_rows({{2, 0}, {0, -1}}))),
                  PreconditionError);
}

TEST_CASE("labels are invariant under unimodular congruence") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> pick(0, 2), coef(-2, 2);
  std::vector<IMat> forms = {from_rows({{0, 1}, {1, 0}}),
                             from_rows({{1, 0}, {0, -1}}),
                             from_rows({{1, 1}, {1, 0}})};
  for (const IMat& f : forms) {
    std::string base = classify_indefinite_unimodular(make_form(f));
    for (int iter = 0; iter < 50; ++iter) {
      int n = f.rows();
      IMat u = IMat::identity(n);
      for (int k = 0; k < 6; ++k) {
        int i = pick(rng) % n, j = pick(rng) % n;
        if (i != j) u.add_row(i, j, coef(rng));
      }
      IMat g = u * f * u.transposed();
      CHECK(classify_indefinite_unimodular(make_form(g)) == base);
    }
  }
}

TEST_CASE("homeomorphic fillings: parity decides the family") {
  FrontDiagram r1 = reduced_Xp(1), r2 = reduced_Xp(2), r3 = reduced_Xp(3);
  CHECK(homeomorphic_fillings(r1, r3));
  CHECK_FALSE(homeomorphic_fillings(r1, r2));
  CHECK(homeomorphic_fillings(r1, generate_X()));
  CHECK_FALSE(homeomorphic_fillings(r2, generate_X()));
}

TEST_CASE("homeomorphic fillings is an equivalence relation on the family") {
  std::vector<FrontDiagram> rs;
  for (int p = 1; p <= 10; ++p) rs.push_back(reduced_Xp(p));
  for (int p = 0; p < 10; ++p) CHECK(homeomorphic_fillings(rs[p], rs[p]));
  int pairs = 0;
  for (int p = 0; p < 10; ++p)
    for (int q = p + 1; q < 10; ++q) {
      bool pq = homeomorphic_fillings(rs[p], rs[q]);
      CHECK(pq == homeomorphic_fillings(rs[q], rs[p]));
      CHECK(pq == ((p - q) % 2 == 0));
      ++pairs;
      for (int r = q + 1; r < 10; ++r) {
        bool qr = homeomorphic_fillings(rs[q], rs[r]);
        bool pr = homeomorphic_fillings(rs[p], rs[r]);
        if (pq && qr) CHECK(pr);
      }
    }
  CHECK(pairs == 45);
}

TEST_CASE("the predicate refuses unreduced input") {
  CHECK_THROWS_AS(homeomorphic_fillings(generate_Xp(1), generate_X()),
                  PreconditionError);
}

TEST_CASE("the predicate refuses non-sphere boundaries") {
  CHECK_THROWS_AS(homeomorphic_fillings(generate_unknot(), generate_X()),
                  PreconditionError);
}
