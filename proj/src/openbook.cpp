#include "handlebody/openbook.hpp"

#include <algorithm>
#include <future>
#include <sstream>

#include "handlebody/assets.hpp"

namespace handlebody {

AbelianGroupSNF h2_of_total(const FrontDiagram& d) {
  if (d.one_handles > 0)
    throw PreconditionError("unreduced: run the move engine first");
  if (fundamental_group_trivial(d) != Pi1Verdict::trivial)
    throw PreconditionError("fundamental group not known to be trivial");
  AbelianGroupSNF g;
  g.free_rank = trace(d).n_components;
  return g;
}

Int c1_xi(const FrontDiagram& d, const HomologyClass& cls) {
  return c1_evaluation(d, cls);
}

std::string classify_barden_free(int rank, bool spin) {
  if (rank < 0) throw PreconditionError("rank must be nonnegative");
  if (rank == 0) {
    if (!spin) throw PreconditionError("a nontrivial bundle needs positive rank");
    return "S5";
  }
  std::ostringstream os;
  for (int i = 0; i < rank; ++i) {
    if (i) os << " # ";
    if (!spin && i == rank - 1)
      os << "S2x~S3";
    else
      os << "S2xS3";
  }
  return os.str();
}

std::string FiveManifoldDescriptor::contact_label_string() const {
  if (contact_label.empty()) return "S5";
  std::ostringstream os;
  for (size_t i = 0; i < contact_label.size(); ++i) {
    if (i) os << " # ";
    Int k = contact_label[i];
    os << "(" << (k % 2 == 0 ? "S2xS3" : "S2x~S3") << ", z" << k << ")";
  }
  return os.str();
}

FiveManifoldDescriptor classify_contact(const FrontDiagram& d) {
  if (d.one_handles > 0)
    throw PreconditionError("unreduced: run the move engine first");
  for (const Event& ev : d.events)
    if (ev.kind == EventKind::crossing)
      throw PreconditionError("unreduced: run the move engine first");
  FiveManifoldDescriptor out;
  out.page = d.name;
  out.h2 = h2_of_total(d);
  AlgebraicHandleData a = to_algebraic(d);
  bool spin = true;
  for (int c = 0; c < a.n; ++c) {
    Int k = a.rot[c] < 0 ? -a.rot[c] : a.rot[c];
    out.contact_label.push_back(k);
    if (k % 2 != 0) spin = false;
  }
  std::sort(out.contact_label.begin(), out.contact_label.end());
  out.spin = spin;
  out.diffeo_label = classify_barden_free(a.n, spin);
  return out;
}

std::vector<FiveManifoldDescriptor> classify_family(int p_max) {
  if (p_max < 1) throw PreconditionError("family needs p_max >= 1");
  auto row = [](int p) {
    FrontDiagram xp = generate_Xp(p);
    MoveScript script = classification_script(p);
    MoveTrace tr = verify_script(xp, script);
    FiveManifoldDescriptor desc = classify_contact(tr.final_diagram);
    desc.page = xp.name;
    std::ostringstream prov;
    prov << "page " << xp.name << " reduced by " << script.name << " ("
         << script.moves.size() << " moves); subcritical filling " << xp.name
         << " x D2";
    desc.provenance = prov.str();
    return desc;
  };
  std::vector<std::future<FiveManifoldDescriptor>> futs;
  for (int p = 1; p <= p_max; ++p)
    futs.push_back(std::async(std::launch::async, row, p));
  std::vector<FiveManifoldDescriptor> rows;
  for (int p = 1; p <= p_max; ++p) {
    try {
      rows.push_back(futs[p - 1].get());
    } catch (const std::exception& e) {
      throw MoveError("family classification failed at p = " + std::to_string(p) +
                      ": " + e.what());
    }
  }
  for (int p = 1; p <= p_max; ++p)
    for (int q = p + 1; q <= p_max; ++q) {
      bool same_diffeo = rows[p - 1].diffeo_label == rows[q - 1].diffeo_label;
      bool same_contact = rows[p - 1].contact_label == rows[q - 1].contact_label;
      if (same_diffeo != ((p - q) % 2 == 0))
        throw InternalError("family table broke the diffeomorphism relation");
      if (same_contact)
        throw InternalError("family table broke the contactomorphism relation");
    }
  return rows;
}

}  // namespace handlebody
