#pragma once

#include "lunelab/bounds.hpp"
#include "lunelab/lune.hpp"
#include "lunelab/scenario.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace lunelab {

namespace detail {

// y is flipped so the picture matches the plane orientation
struct SvgFrame {
  Rat y_sum;
  std::string fx(const Rat& x) const { return rat_to_decimal(x, 9); }
  std::string fy(const Rat& y) const { return rat_to_decimal(y_sum - y, 9); }
};

inline void emit_polyline(std::ostream& os, const SvgFrame& fr, const std::vector<Pt>& verts,
                          const Window& w, const char* color, const char* width) {
  os << "  <path fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width << "\" d=\"";
  bool pen_down = false;
  for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
    const Pt& a = verts[i];
    const Pt& b = verts[i + 1];
    const bool visible = !(rat_max(a.x, b.x) < w.x_min || rat_min(a.x, b.x) > w.x_max ||
                           rat_max(a.y, b.y) < w.y_min || rat_min(a.y, b.y) > w.y_max);
    if (!visible) {
      pen_down = false;
      continue;
    }
    if (!pen_down) os << "M " << fr.fx(a.x) << " " << fr.fy(a.y) << " ";
    os << "L " << fr.fx(b.x) << " " << fr.fy(b.y) << " ";
    pen_down = true;
  }
  os << "\"/>\n";
}

}  // namespace detail

// layers: both curves, every crossing, the distinguished corner, and one group
// per lune shading its positive-winding faces
inline void emit_svg(std::ostream& os, const Scenario& sc,
                     const std::vector<LuneCertificate>& lunes) {
  const Window& w = sc.window;
  const detail::SvgFrame fr{w.y_min + w.y_max};
  const Rat span_x = w.x_max - w.x_min;
  const Rat span_y = w.y_max - w.y_min;

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fr.fx(w.x_min) << " "
     << fr.fy(w.y_max) << " " << rat_to_decimal(span_x, 9) << " " << rat_to_decimal(span_y, 9)
     << "\">\n";
  os << "  <rect x=\"" << fr.fx(w.x_min) << "\" y=\"" << fr.fy(w.y_max) << "\" width=\""
     << rat_to_decimal(span_x, 9) << "\" height=\"" << rat_to_decimal(span_y, 9)
     << "\" fill=\"#ffffff\"/>\n";

  os << "  <g id=\"curve-a\">\n  ";
  detail::emit_polyline(os, fr, sc.A.verts, w, "#1f6f43", "0.02");
  os << "  </g>\n  <g id=\"curve-b\">\n  ";
  detail::emit_polyline(os, fr, sc.B.verts, w, "#28408f", "0.02");
  os << "  </g>\n";

  os << "  <g id=\"lunes\">\n";
  for (const LuneCertificate& c : lunes) {
    os << "    <g id=\"lune-" << (c.label ? std::string(1, *c.label) : std::string("x"))
       << "\">\n";
    for (const Face& f : c.face_table.faces) {
      if (!f.bounded || f.winding <= 0) continue;
      os << "      <polygon fill=\"#d2672a\" fill-opacity=\""
         << (f.winding == 1 ? "0.4" : "0.7") << "\" stroke=\"none\" points=\"";
      for (const Pt& p : f.boundary) os << fr.fx(p.x) << "," << fr.fy(p.y) << " ";
      os << "\"/>\n";
    }
    os << "    </g>\n";
  }
  os << "  </g>\n";

  os << "  <g id=\"crossings\">\n";
  for (const XPoint& x : sc.crossings)
    os << "    <circle cx=\"" << fr.fx(x.location.x) << "\" cy=\"" << fr.fy(x.location.y)
       << "\" r=\"0.035\" fill=\"" << (x.sign > 0 ? "#777777" : "#bbbbbb") << "\"/>\n";
  os << "  </g>\n";

  os << "  <circle id=\"corner-p\" cx=\"" << fr.fx(sc.p.location.x) << "\" cy=\""
     << fr.fy(sc.p.location.y) << "\" r=\"0.08\" fill=\"#c01616\"/>\n";
  os << "</svg>\n";
}

inline void emit_svg(std::ostream& os, const RunResult& r) { emit_svg(os, r.scenario, r.viable); }

}  // namespace lunelab
