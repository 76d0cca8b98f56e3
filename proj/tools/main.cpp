#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "handlebody/assets.hpp"
#include "handlebody/forms.hpp"
#include "handlebody/invariants.hpp"
#include "handlebody/openbook.hpp"
#include "handlebody/render.hpp"

namespace hb = handlebody;

namespace {

// exit-code contract: 0 ok, 2 parse/validate, 3 move failure, 4 precondition,
// 5 internal contract violation
int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const hb::ParseError& e) {
    std::cerr << "parse error";
    if (e.line) std::cerr << " at line " << e.line;
    std::cerr << ": " << e.what() << "\n";
    return 2;
  } catch (const hb::ValidationError& e) {
    std::cerr << "invalid diagram: " << e.what() << "\n";
    return 2;
  } catch (const hb::MoveError& e) {
    std::cerr << "move failure: " << e.what() << "\n";
    return 3;
  } catch (const hb::PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 5;
  }
}

std::string fmt_opt(const std::optional<hb::Int>& v) {
  return v.has_value() ? std::to_string(*v) : std::string("-");
}

void print_invariants(std::ostream& os, const hb::FrontDiagram& d,
                      const std::string& only, bool reduced, bool tsv) {
  hb::AlgebraicHandleData a = hb::to_algebraic(d);
  const char* sep = tsv ? "\t" : " ";
  os << (tsv ? "#component\ttb\trot\twrithe\n" : "");
  for (int c = 0; c < a.n; ++c) {
    const std::string& name = d.component_labels[c];
    if (!only.empty() && name != only) continue;
    if (tsv)
      os << name << sep << fmt_opt(a.uses_handle[c] ? std::nullopt
                                                    : std::optional<hb::Int>(a.tb[c]))
         << sep << a.rot[c] << sep << a.writhe[c] << "\n";
    else {
      os << name << ": tb="
         << (a.uses_handle[c] ? "undefined" : std::to_string(a.tb[c]))
         << " rot=" << a.rot[c] << " writhe=" << a.writhe[c];
      if (!a.incidence[c].empty()) {
        os << " passes=";
        for (auto [h, s] : a.incidence[c]) os << (s > 0 ? "+" : "-") << h;
      }
      os << "\n";
    }
  }
  if (!only.empty()) return;
  os << (tsv ? "#linking\n" : "linking matrix (framings on the diagonal):\n");
  for (int i = 0; i < a.n; ++i) {
    for (int j = 0; j < a.n; ++j) os << (j ? sep : "") << fmt_opt(a.linking[i][j]);
    os << "\n";
  }
  if (reduced) {
    hb::IntegerSymmetricForm f = hb::intersection_form(d);
    os << "rank=" << f.rank << " signature=" << f.signature << " det=" << f.det
       << " parity=" << (f.parity == hb::Parity::even ? "even" : "odd") << "\n";
    os << "boundary H1: " << hb::boundary_first_homology(d).to_string() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact engine for Legendrian handlebody diagrams"};
  app.require_subcommand(1);

  std::string path, out_path, component, format = "text";
  int family = 0;

  auto* validate_cmd = app.add_subcommand("validate", "check a diagram file");
  validate_cmd->add_option("path", path)->required();

  auto* inv_cmd = app.add_subcommand("invariants", "per-component invariants");
  inv_cmd->add_option("path", path)->required();
  inv_cmd->add_option("--component", component, "restrict to one component");
  bool reduced = false;
  inv_cmd->add_flag("--reduced", reduced, "also print form and boundary data");
  inv_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "tsv"}));

  auto* verify_cmd = app.add_subcommand("verify", "replay and check a move script");
  verify_cmd->add_option("path", path)->required();
  verify_cmd->add_option("--out", out_path, "write the final diagram to a file");

  auto* classify_cmd = app.add_subcommand("classify", "contact open book of a page");
  classify_cmd->add_option("path", path);
  classify_cmd->add_option("--family", family, "classify X_p for p = 1..N");
  classify_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "tsv"}));
  classify_cmd->add_option("--out", out_path, "write the table to a file");

  auto* render_cmd = app.add_subcommand("render", "deterministic SVG projection");
  render_cmd->add_option("path", path)->required();
  render_cmd->add_option("--out", out_path)->required();

  CLI11_PARSE(app, argc, argv);

  if (validate_cmd->parsed()) {
    return run_guarded([&] {
      hb::FrontDiagram d;
      try {
        d = hb::parse_diagram(hb::read_file(path));
      } catch (const hb::ValidationError& e) {
        std::cout << e.what();
        return 2;
      }
      hb::ValidationReport rep = hb::validate(d);
      std::cout << rep.to_string();
      return rep.ok ? 0 : 2;
    });
  }

  if (inv_cmd->parsed()) {
    return run_guarded([&] {
      hb::FrontDiagram d = hb::load_diagram(path);
      print_invariants(std::cout, d, component, reduced, format == "tsv");
      return 0;
    });
  }

  if (verify_cmd->parsed()) {
    return run_guarded([&] {
      hb::MoveScript s = hb::load_script(path);
      // the base diagram lives next to the script or in the asset directory
      namespace fs = std::filesystem;
      fs::path sp(path);
      fs::path near = sp.parent_path() / (s.base + ".diagram");
      fs::path shared = fs::path(hb::asset_dir()) / (s.base + ".diagram");
      hb::FrontDiagram base =
          fs::exists(near) ? hb::load_diagram(near.string())
                           : hb::load_diagram(shared.string());
      hb::MoveTrace tr = hb::verify_script(base, s);
      std::cout << tr.to_string();
      if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        f << hb::serialize(tr.final_diagram);
      }
      return 0;
    });
  }

  if (classify_cmd->parsed()) {
    return run_guarded([&] {
      std::ostringstream table;
      if (family > 0) {
        auto rows = hb::classify_family(family);
        table << "#p\tspin\tdiffeo\tcontact\n";
        for (size_t i = 0; i < rows.size(); ++i) {
          const auto& r = rows[i];
          table << i + 1 << "\t" << (r.spin ? "yes" : "no") << "\t" << r.diffeo_label
                << "\t" << r.contact_label_string() << "\n";
        }
      } else {
        if (path.empty()) throw hb::PreconditionError("need a path or --family N");
        hb::FrontDiagram d = hb::load_diagram(path);
        hb::FiveManifoldDescriptor desc = hb::classify_contact(d);
        if (format == "tsv") {
          table << "#page\tspin\tdiffeo\tcontact\n";
          table << desc.page << "\t" << (desc.spin ? "yes" : "no") << "\t"
                << desc.diffeo_label << "\t" << desc.contact_label_string() << "\n";
        } else {
          table << "page: " << desc.page << "\n";
          table << "H2: " << desc.h2.to_string() << "\n";
          table << "spin: " << (desc.spin ? "yes" : "no") << "\n";
          table << "diffeomorphism type: " << desc.diffeo_label << "\n";
          table << "contact type: " << desc.contact_label_string() << "\n";
        }
      }
      if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        f << table.str();
      } else {
        std::cout << table.str();
      }
      return 0;
    });
  }

  if (render_cmd->parsed()) {
    return run_guarded([&] {
      hb::FrontDiagram d = hb::load_diagram(path);
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw hb::ParseError("cannot open " + out_path);
      f << hb::render_svg(d);
      return 0;
    });
  }
  return 0;
}
