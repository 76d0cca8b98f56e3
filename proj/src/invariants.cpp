#include "handlebody/invariants.hpp"

#include <algorithm>
#include <set>

namespace handlebody {

namespace {

IMat framed_linking(const FrontDiagram& d) {
  AlgebraicHandleData a = to_algebraic(d);
  IMat m(a.n, a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) {
      if (!a.linking[i][j].has_value())
        throw PreconditionError("reduce first: linking undefined over 1-handles");
      m.at(i, j) = *a.linking[i][j];
    }
  return m;
}

}  // namespace

IntegerSymmetricForm intersection_form(const FrontDiagram& d) {
  if (d.one_handles > 0) throw PreconditionError("reduce first");
  return make_form(framed_linking(d));
}

AbelianGroupSNF boundary_first_homology(const FrontDiagram& d) {
  if (d.one_handles > 0) throw PreconditionError("reduce first");
  return cokernel(framed_linking(d));
}

Int c1_evaluation(const FrontDiagram& d, const HomologyClass& cls) {
  AlgebraicHandleData a = to_algebraic(d);
  if (static_cast<int>(cls.coefficients.size()) != a.n)
    throw PreconditionError("class length does not match 2-handle count");
  Int v = 0;
  for (int i = 0; i < a.n; ++i) v += cls.coefficients[i] * a.rot[i];
  return v;
}

Pi1Verdict fundamental_group_trivial(const FrontDiagram& d) {
  AlgebraicHandleData a = to_algebraic(d);
  // letters: +h / -h
  std::vector<std::vector<int>> words;
  for (const auto& w : a.incidence) {
    std::vector<int> word;
    for (auto [h, s] : w) word.push_back(s * h);
    words.push_back(word);
  }
  std::set<int> alive;
  for (int h = 1; h <= d.one_handles; ++h) alive.insert(h);

  auto reduce = [](std::vector<int> w) {
    // free reduction, then cyclic reduction
    std::vector<int> out;
    for (int x : w) {
      if (!out.empty() && out.back() == -x)
        out.pop_back();
      else
        out.push_back(x);
    }
    while (out.size() >= 2 && out.front() == -out.back()) {
      out.erase(out.begin());
      out.pop_back();
    }
    return out;
  };

  bool progress = true;
  while (progress && !alive.empty()) {
    progress = false;
    for (auto& w : words) w = reduce(w);
    for (const auto& w : words) {
      if (w.size() == 1) {
        int g = std::abs(w[0]);
        if (!alive.count(g)) continue;
        alive.erase(g);
        for (auto& v : words) {
          std::vector<int> filtered;
          for (int x : v)
            if (std::abs(x) != g) filtered.push_back(x);
          v = filtered;
        }
        progress = true;
        break;
      }
    }
  }
  return alive.empty() ? Pi1Verdict::trivial : Pi1Verdict::unknown;
}

}  // namespace handlebody
