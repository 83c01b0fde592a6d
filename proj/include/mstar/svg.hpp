#pragma once

// Static orthographic Bloch-sphere views as SVG. Front view faces the
// prime meridian (image axes y right, z up; depth x), right view faces
// the 90E meridian (image axes x right, z up; depth y). Stars on the
// hidden hemisphere are drawn hollow. Output bytes depend only on the
// input.

#include <array>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "mstar/io.hpp"
#include "mstar/majorana.hpp"
#include "mstar/sweep.hpp"

namespace mstar {

enum class SphereView { front, right };

namespace svg_detail {

inline constexpr double kSize = 480.0;
inline constexpr double kCenter = 240.0;
inline constexpr double kRadius = 200.0;

inline const char* set_color(SetLabel set) {
    switch (set) {
        case SetLabel::upper: return "#d62728";
        case SetLabel::lower: return "#1f77b4";
        case SetLabel::pseudo: return "#9467bd";
    }
    return "#000000";
}

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

struct Projected {
    double px = 0.0;
    double py = 0.0;
    bool visible = true;
};

inline Projected project(double theta, double phi, SphereView view) {
    const std::array<double, 3> v = sphere_vector(theta, phi);
    const double horizontal = view == SphereView::front ? v[1] : v[0];
    const double depth = view == SphereView::front ? v[0] : v[1];
    Projected p;
    p.px = kCenter + kRadius * horizontal;
    p.py = kCenter - kRadius * v[2];
    p.visible = depth >= 0.0;
    return p;
}

inline void draw_marker(std::ostringstream& out, SetLabel set, const Projected& p) {
    const char* color = set_color(set);
    switch (set) {
        case SetLabel::upper:
            out << "  <circle cx=\"" << fmt(p.px) << "\" cy=\"" << fmt(p.py)
                << "\" r=\"5\" stroke=\"" << color << "\" stroke-width=\"1.5\" fill=\""
                << (p.visible ? color : "none") << "\"/>\n";
            break;
        case SetLabel::lower:
            out << "  <circle cx=\"" << fmt(p.px) << "\" cy=\"" << fmt(p.py)
                << "\" r=\"6\" stroke=\"" << color << "\" stroke-width=\"2\" fill=\"none\""
                << (p.visible ? "" : " stroke-dasharray=\"2,2\"") << "/>\n";
            break;
        case SetLabel::pseudo: {
            const double arm = 5.0;
            const char* dash = p.visible ? "" : " stroke-dasharray=\"2,2\"";
            out << "  <line x1=\"" << fmt(p.px - arm) << "\" y1=\"" << fmt(p.py - arm)
                << "\" x2=\"" << fmt(p.px + arm) << "\" y2=\"" << fmt(p.py + arm)
                << "\" stroke=\"" << color << "\" stroke-width=\"2\"" << dash << "/>\n";
            out << "  <line x1=\"" << fmt(p.px - arm) << "\" y1=\"" << fmt(p.py + arm)
                << "\" x2=\"" << fmt(p.px + arm) << "\" y2=\"" << fmt(p.py - arm)
                << "\" stroke=\"" << color << "\" stroke-width=\"2\"" << dash << "/>\n";
            break;
        }
    }
}

}  // namespace svg_detail

struct PlotPoint {
    SetLabel set = SetLabel::upper;
    double theta = 0.0;
    double phi = 0.0;
};

/// Renders the sphere outline, equator and polar axis guides, and one
/// marker per point.
inline std::string render_bloch_svg(const std::vector<PlotPoint>& points, SphereView view) {
    using namespace svg_detail;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << int(kSize) << "\" height=\""
        << int(kSize) << "\" viewBox=\"0 0 " << int(kSize) << " " << int(kSize) << "\">\n";
    out << "  <rect width=\"" << int(kSize) << "\" height=\"" << int(kSize)
        << "\" fill=\"white\"/>\n";
    out << "  <circle cx=\"" << fmt(kCenter) << "\" cy=\"" << fmt(kCenter) << "\" r=\""
        << fmt(kRadius) << "\" stroke=\"#888888\" stroke-width=\"1\" fill=\"none\"/>\n";
    // Equator and polar axis, both edge-on lines in either view.
    out << "  <line x1=\"" << fmt(kCenter - kRadius) << "\" y1=\"" << fmt(kCenter) << "\" x2=\""
        << fmt(kCenter + kRadius) << "\" y2=\"" << fmt(kCenter)
        << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
    out << "  <line x1=\"" << fmt(kCenter) << "\" y1=\"" << fmt(kCenter - kRadius) << "\" x2=\""
        << fmt(kCenter) << "\" y2=\"" << fmt(kCenter + kRadius)
        << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
    for (const PlotPoint& point : points) {
        draw_marker(out, point.set, project(point.theta, point.phi, view));
    }
    out << "</svg>\n";
    return out.str();
}

inline std::vector<PlotPoint> plot_points_from_star_records(const StarRecordFile& rec) {
    std::vector<PlotPoint> points;
    for (const StarRecordEntry& e : rec.stars) {
        points.push_back({e.set, e.theta, e.phi});
    }
    return points;
}

inline std::vector<PlotPoint> plot_points_from_trajectory(
    const std::vector<TrajectoryRecord>& records) {
    std::vector<PlotPoint> points;
    for (const TrajectoryRecord& r : records) {
        points.push_back({r.set, r.theta, r.phi});
    }
    return points;
}

}  // namespace mstar
