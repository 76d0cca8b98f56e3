#include "handlebody/render.hpp"

#include <algorithm>
#include <sstream>

namespace handlebody {

namespace {

const char* palette[] = {"#1f6fb4", "#c23b22", "#2e8b57", "#8950a8",
                         "#d97c11", "#6b4e3d", "#3aa6a6", "#a83268"};

int color_count() { return static_cast<int>(sizeof(palette) / sizeof(palette[0])); }

}  // namespace

std::string render_svg(const FrontDiagram& d) {
  Trace t = trace(d);
  const int dx = 48, dy = 28, x0 = 40, y0 = 30;
  int max_h = 0;
  for (const auto& st : t.stacks) max_h = std::max(max_h, static_cast<int>(st.size()));
  int n_events = static_cast<int>(d.events.size());
  int width = x0 * 2 + dx * (n_events + 1);
  int height = y0 * 2 + dy * (max_h + 1);
  auto ycoord = [&](int pos) { return height - y0 - pos * dy; };
  auto xg = [&](int gap) { return x0 + gap * dx; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
     << "\">\n";
  os << "<rect width=\"" << width << "\" height=\"" << height
     << "\" fill=\"white\"/>\n";

  auto color_of = [&](int strand) {
    return palette[(t.strands[strand].component - 1) % color_count()];
  };
  auto line = [&](int x1, int y1, int x2, int y2, const char* col) {
    os << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\""
       << y2 << "\" stroke=\"" << col << "\" stroke-width=\"2\"/>\n";
  };

  // strand segments per gap; events occupy the middle of each [xg, xg+dx] cell
  for (int g = 0; g <= n_events; ++g) {
    const auto& st = t.stacks[g];
    int xa = xg(g) - dx / 2, xb = xg(g) + dx / 2;
    if (g == 0) xa = xg(0);
    if (g == n_events) xb = xg(g);
    for (size_t i = 0; i < st.size(); ++i)
      line(xa, ycoord(static_cast<int>(i) + 1), xb, ycoord(static_cast<int>(i) + 1),
           color_of(st[i]));
  }
  // event glyphs between gap g and g+1, centered at xg(g) + dx/2
  for (int e = 0; e < n_events; ++e) {
    const Event& ev = d.events[e];
    int xa = xg(e) + dx / 2, xb = xg(e + 1) - dx / 2;
    int xm = (xa + xb) / 2;
    const auto& es = t.event_strands[e];
    switch (ev.kind) {
      case EventKind::birth: {
        int ylo = ycoord(ev.pos), yhi = ycoord(ev.pos + 1);
        os << "<path d=\"M " << xb << " " << ylo << " A " << (ylo - yhi) / 2 << " "
           << (ylo - yhi) / 2 << " 0 0 1 " << xb << " " << yhi << "\" fill=\"none\""
           << " stroke=\"" << color_of(es[0]) << "\" stroke-width=\"2\"/>\n";
        break;
      }
      case EventKind::death: {
        int ylo = ycoord(ev.pos), yhi = ycoord(ev.pos + 1);
        os << "<path d=\"M " << xa << " " << ylo << " A " << (ylo - yhi) / 2 << " "
           << (ylo - yhi) / 2 << " 0 0 0 " << xa << " " << yhi << "\" fill=\"none\""
           << " stroke=\"" << color_of(es[0]) << "\" stroke-width=\"2\"/>\n";
        break;
      }
      case EventKind::crossing: {
        int ylo = ycoord(ev.pos), yhi = ycoord(ev.pos + 1);
        // lower strand travels up; the under strand gets a gap at the middle
        bool lower_over = ev.lower_over;
        int ym = (ylo + yhi) / 2;
        if (lower_over) {
          line(xa, ylo, xb, yhi, color_of(es[0]));
          line(xa, yhi, (xa + xm) / 2, (yhi + ym) / 2, color_of(es[1]));
          line((xm + xb) / 2, (ym + ylo) / 2, xb, ylo, color_of(es[1]));
        } else {
          line(xa, yhi, xb, ylo, color_of(es[1]));
          line(xa, ylo, (xa + xm) / 2, (ylo + ym) / 2, color_of(es[0]));
          line((xm + xb) / 2, (ym + yhi) / 2, xb, yhi, color_of(es[0]));
        }
        break;
      }
      case EventKind::handle_out:
      case EventKind::handle_in: {
        int y = ycoord(ev.pos);
        int bx = ev.kind == EventKind::handle_out ? xa : xm;
        os << "<rect x=\"" << bx << "\" y=\"" << y - dy / 2 << "\" width=\""
           << dx / 2 << "\" height=\"" << dy << "\" fill=\"#dddddd\""
           << " stroke=\"black\"/>\n";
        os << "<text x=\"" << bx + 4 << "\" y=\"" << y + 4
           << "\" font-size=\"10\" font-family=\"monospace\">" << ev.handle << "."
           << ev.port << "</text>\n";
        if (ev.kind == EventKind::handle_out)
          line(bx + dx / 2, y, xb, y, color_of(es[0]));
        else
          line(xa, y, bx, y, color_of(es[0]));
        break;
      }
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace handlebody
