#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "cli.hpp"
#include "mixsing/newton.hpp"

namespace mixsing::cli {

namespace {

constexpr double kSize = 420.0;
constexpr double kMargin = 50.0;

// Fixed precision keeps the output byte-stable.
std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

struct Frame {
    int extent;  // lattice coordinates 0..extent are drawn
    double scale() const { return (kSize - 2 * kMargin) / extent; }
    double x(double xi) const { return kMargin + xi * scale(); }
    double y(double eta) const { return kSize - kMargin - eta * scale(); }
};

}  // namespace

std::string render_svg(const MixedPolynomial& f) {
    if (f.dim() != 2) throw std::invalid_argument("SVG diagrams need n = 2");
    const NewtonPolyhedron P = build_polyhedron(f);
    const NcBoundary B = enumerate_nc_boundary(f);

    int top = 1;
    for (const auto& p : P.support) top = std::max({top, p[0], p[1]});
    const Frame fr{top + 2};

    // Vertices ordered by ξ₁ have decreasing ξ₂.
    std::vector<LatticePoint> v = P.vertices;
    std::sort(v.begin(), v.end());

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kSize) << "\" height=\"" << num(kSize)
      << "\" viewBox=\"0 0 " << num(kSize) << ' ' << num(kSize) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Γ₊, clipped to the frame.
    s << "<polygon fill=\"#cfe0f3\" stroke=\"none\" points=\"";
    s << num(fr.x(v.front()[0])) << ',' << num(fr.y(fr.extent)) << ' ';
    for (const auto& p : v) s << num(fr.x(p[0])) << ',' << num(fr.y(p[1])) << ' ';
    s << num(fr.x(fr.extent)) << ',' << num(fr.y(v.back()[1])) << ' ';
    s << num(fr.x(fr.extent)) << ',' << num(fr.y(fr.extent)) << "\"/>\n";

    // Grid and axes.
    for (int k = 0; k <= fr.extent; ++k) {
        s << "<line x1=\"" << num(fr.x(k)) << "\" y1=\"" << num(fr.y(0)) << "\" x2=\"" << num(fr.x(k)) << "\" y2=\""
          << num(fr.y(fr.extent)) << "\" stroke=\"#e4e4e4\"/>\n";
        s << "<line x1=\"" << num(fr.x(0)) << "\" y1=\"" << num(fr.y(k)) << "\" x2=\"" << num(fr.x(fr.extent))
          << "\" y2=\"" << num(fr.y(k)) << "\" stroke=\"#e4e4e4\"/>\n";
        s << "<text x=\"" << num(fr.x(k)) << "\" y=\"" << num(fr.y(0) + 16) << "\" text-anchor=\"middle\">" << k
          << "</text>\n";
        s << "<text x=\"" << num(fr.x(0) - 8) << "\" y=\"" << num(fr.y(k) + 4) << "\" text-anchor=\"end\">" << k
          << "</text>\n";
    }
    s << "<line x1=\"" << num(fr.x(0)) << "\" y1=\"" << num(fr.y(0)) << "\" x2=\"" << num(fr.x(fr.extent) + 10)
      << "\" y2=\"" << num(fr.y(0)) << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << num(fr.x(0)) << "\" y1=\"" << num(fr.y(0)) << "\" x2=\"" << num(fr.x(0)) << "\" y2=\""
      << num(fr.y(fr.extent) - 10) << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << num(fr.x(fr.extent) + 14) << "\" y=\"" << num(fr.y(0) + 4) << "\">ξ₁</text>\n";
    s << "<text x=\"" << num(fr.x(0) - 6) << "\" y=\"" << num(fr.y(fr.extent) - 14) << "\">ξ₂</text>\n";

    // Compact edges.
    for (const auto& face : B.compact_of_dim(1)) {
        const auto& a = face.points.front();
        const auto& b = face.points.back();
        s << "<line class=\"compact\" x1=\"" << num(fr.x(a[0])) << "\" y1=\"" << num(fr.y(a[1])) << "\" x2=\""
          << num(fr.x(b[0])) << "\" y2=\"" << num(fr.y(b[1])) << "\" stroke=\"#1f4e8c\" stroke-width=\"2.5\"/>\n";
    }

    // Essential non-compact faces as dashed half-lines.
    for (const auto& face : B.essential_noncompact) {
        if (face.dim != 1) continue;
        const auto& a = face.min_point();
        const bool up = face.direction.contains(1);
        const double ex = up ? a[0] : fr.extent, ey = up ? fr.extent : a[1];
        s << "<line class=\"essential\" x1=\"" << num(fr.x(a[0])) << "\" y1=\"" << num(fr.y(a[1])) << "\" x2=\""
          << num(fr.x(ex)) << "\" y2=\"" << num(fr.y(ey)) << "\" stroke=\"#c0392b\" stroke-width=\"2.5\""
          << " stroke-dasharray=\"8,5\"/>\n";
    }

    // Support points, vertices on top.
    for (const auto& p : P.support) {
        if (std::find(v.begin(), v.end(), p) != v.end()) continue;
        s << "<circle cx=\"" << num(fr.x(p[0])) << "\" cy=\"" << num(fr.y(p[1])) << "\" r=\"3\" fill=\"#777777\"/>\n";
    }
    for (const auto& p : v) {
        s << "<circle class=\"vertex\" cx=\"" << num(fr.x(p[0])) << "\" cy=\"" << num(fr.y(p[1]))
          << "\" r=\"5\" fill=\"black\"/>\n";
        s << "<text x=\"" << num(fr.x(p[0]) + 8) << "\" y=\"" << num(fr.y(p[1]) - 8) << "\">" << point_to_string(p)
          << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

}  // namespace mixsing::cli
