#include "tropcrit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tropcrit/errors.hpp"

namespace tropcrit {

namespace {

struct Pt {
    double x, y;
};

double to_d(const Rational& r) { return r.convert_to<double>(); }

// convex outline: order around the centroid
std::vector<Pt> angular_order(std::vector<Pt> pts) {
    double cx = 0, cy = 0;
    for (const Pt& p : pts) cx += p.x, cy += p.y;
    cx /= static_cast<double>(pts.size());
    cy /= static_cast<double>(pts.size());
    std::sort(pts.begin(), pts.end(), [&](const Pt& a, const Pt& b) {
        return std::atan2(a.y - cy, a.x - cx) < std::atan2(b.y - cy, b.x - cx);
    });
    return pts;
}

} // namespace

std::string render_svg(const PolyhedralComplex& pc, const Polytope& p) {
    if (p.dim() != 2 || pc.n != 2)
        throw unsupported_dimension("svg rendering is 2d only");

    const std::vector<QVec>& pverts = p.vertices();
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    bool first = true;
    for (const QVec& v : pverts) {
        double x = to_d(v[0]), y = to_d(v[1]);
        if (first) {
            x0 = x1 = x;
            y0 = y1 = y;
            first = false;
        }
        x0 = std::min(x0, x), x1 = std::max(x1, x);
        y0 = std::min(y0, y), y1 = std::max(y1, y);
    }
    const double side = 400.0, margin = 40.0;
    double span = std::max({x1 - x0, y1 - y0, 1e-9});
    double scale = (side - 2 * margin) / span;
    // y axis points up in the picture
    auto map = [&](double x, double y) {
        return Pt{margin + (x - x0) * scale, side - margin - (y - y0) * scale};
    };
    auto mapv = [&](const QVec& v) { return map(to_d(v[0]), to_d(v[1])); };

    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(2);
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << side << "\" height=\"" << side
      << "\" viewBox=\"0 0 " << side << " " << side << "\">\n";

    std::vector<Pt> outline;
    for (const QVec& v : pverts) outline.push_back(mapv(v));
    outline = angular_order(std::move(outline));
    s << "  <polygon points=\"";
    for (const Pt& q : outline) s << q.x << ',' << q.y << ' ';
    s << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";

    // area cells below line cells below points, so everything stays visible
    std::vector<const Cell*> by_dim[3];
    for (const Cell& c : pc.cells)
        if (c.dim >= 0 && c.dim <= 2) by_dim[c.dim].push_back(&c);

    for (const Cell* c : by_dim[2]) {
        std::vector<Pt> poly;
        for (const QVec& v : c->verts) poly.push_back(mapv(v));
        poly = angular_order(std::move(poly));
        s << "  <polygon points=\"";
        for (const Pt& q : poly) s << q.x << ',' << q.y << ' ';
        s << "\" fill=\"#cc0000\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";
    }
    for (const Cell* c : by_dim[1]) {
        Pt a = mapv(c->verts.front());
        Pt b = mapv(c->verts.back());
        s << "  <line x1=\"" << a.x << "\" y1=\"" << a.y << "\" x2=\"" << b.x << "\" y2=\""
          << b.y << "\" stroke=\"#cc0000\" stroke-width=\"2\"/>\n";
    }
    for (const Cell* c : by_dim[0]) {
        Pt q = mapv(c->verts.front());
        s << "  <circle cx=\"" << q.x << "\" cy=\"" << q.y
          << "\" r=\"3\" fill=\"#cc0000\"/>\n";
    }
    // open endpoints drawn last as hollow markers
    for (const Cell* c : by_dim[1])
        for (size_t i = 0; i < c->verts.size(); ++i)
            if (c->vert_excluded[i]) {
                Pt q = mapv(c->verts[i]);
                s << "  <circle cx=\"" << q.x << "\" cy=\"" << q.y
                  << "\" r=\"4\" fill=\"white\" stroke=\"#cc0000\" stroke-width=\"1.5\"/>\n";
            }

    s << "</svg>\n";
    return s.str();
}

} // namespace tropcrit
