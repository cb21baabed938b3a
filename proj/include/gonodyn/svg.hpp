#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gonodyn/curve_tracing.hpp"

namespace gonodyn {

namespace detail {

inline std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return std::string(buf);
}

}  // namespace detail

/// Fixed-size canvas over the unit square of reduced coordinates
/// (alpha rightward, beta upward), emitting byte-identical markup for
/// identical input.
class SvgCanvas {
public:
    SvgCanvas(int width = 640, int height = 640, double margin = 56.0)
        : width_(width), height_(height), margin_(margin) {}

    double px(double alpha) const { return margin_ + alpha * (width_ - 2.0 * margin_); }
    double py(double beta) const { return height_ - margin_ - beta * (height_ - 2.0 * margin_); }

    void rect(double alpha, double beta, double da, double db, const std::string& fill) {
        const double x = px(alpha), y = py(beta + db);
        body_ << "  <rect x=\"" << detail::svg_num(x) << "\" y=\"" << detail::svg_num(y)
              << "\" width=\"" << detail::svg_num(da * (width_ - 2.0 * margin_)) << "\" height=\""
              << detail::svg_num(db * (height_ - 2.0 * margin_)) << "\" fill=\"" << fill << "\"/>\n";
    }

    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke,
                  double stroke_width = 1.5) {
        if (pts.empty()) return;
        body_ << "  <polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\""
              << detail::svg_num(stroke_width) << "\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) body_ << ' ';
            body_ << detail::svg_num(px(pts[i].first)) << ',' << detail::svg_num(py(pts[i].second));
        }
        body_ << "\"/>\n";
    }

    void circle(double alpha, double beta, double radius_px, const std::string& fill) {
        body_ << "  <circle cx=\"" << detail::svg_num(px(alpha)) << "\" cy=\""
              << detail::svg_num(py(beta)) << "\" r=\"" << detail::svg_num(radius_px) << "\" fill=\""
              << fill << "\"/>\n";
    }

    void text(double x_px, double y_px, const std::string& s, int size = 12) {
        body_ << "  <text x=\"" << detail::svg_num(x_px) << "\" y=\"" << detail::svg_num(y_px)
              << "\" font-family=\"monospace\" font-size=\"" << size << "\">" << s << "</text>\n";
    }

    /// Unit-square frame with 0 / 0.5 / 1 ticks and axis names.
    void axes() {
        body_ << "  <rect x=\"" << detail::svg_num(px(0)) << "\" y=\"" << detail::svg_num(py(1))
              << "\" width=\"" << detail::svg_num(px(1) - px(0)) << "\" height=\""
              << detail::svg_num(py(0) - py(1)) << "\" fill=\"none\" stroke=\"#333333\"/>\n";
        const double ticks[3] = {0.0, 0.5, 1.0};
        const char* labels[3] = {"0", "0.5", "1"};
        for (int i = 0; i < 3; ++i) {
            text(px(ticks[i]) - 8.0, py(0) + 18.0, labels[i]);
            text(px(0) - 34.0, py(ticks[i]) + 4.0, labels[i]);
        }
        text(px(0.5) - 20.0, static_cast<double>(height_) - 10.0, "alpha");
        text(12.0, py(0.5), "beta");
    }

    std::string finish(const std::string& title) const {
        std::ostringstream os;
        os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\""
           << height_ << "\" viewBox=\"0 0 " << width_ << ' ' << height_ << "\">\n"
           << "  <title>" << title << "</title>\n"
           << "  <rect width=\"" << width_ << "\" height=\"" << height_
           << "\" fill=\"#ffffff\"/>\n"
           << body_.str() << "</svg>\n";
        return os.str();
    }

private:
    int width_;
    int height_;
    double margin_;
    std::ostringstream body_;
};

inline const char* basin_fill(Basin b) {
    switch (b) {
        case Basin::T0: return "#888888";
        case Basin::T1: return "#d95f02";
        default: return "#1b9e77";
    }
}

/// Reduced-plane path plot: the orbit polyline with start/end markers.
inline std::string render_trajectory_svg(const std::vector<std::pair<double, double>>& path,
                                         const std::string& title) {
    SvgCanvas c;
    c.axes();
    c.polyline(path, "#26547c", 1.5);
    if (!path.empty()) {
        c.circle(path.front().first, path.front().second, 4.0, "#26547c");
        c.circle(path.back().first, path.back().second, 4.0, "#ef476f");
    }
    return c.finish(title);
}

/// Several leaf polylines, color-cycled deterministically.
inline std::string render_curves_svg(const std::vector<std::vector<std::pair<double, double>>>& curves,
                                     const std::string& title) {
    static const char* palette[6] = {"#26547c", "#ef476f", "#06a77d", "#b26700", "#7a28cb", "#444444"};
    SvgCanvas c;
    c.axes();
    for (std::size_t i = 0; i < curves.size(); ++i) c.polyline(curves[i], palette[i % 6], 1.5);
    return c.finish(title);
}

/// Basin lattice rendered as filled cells.
inline std::string render_sweep_svg(const std::vector<SweepCell>& cells, double cell_side,
                                    const std::string& title) {
    SvgCanvas c;
    for (const SweepCell& cell : cells)
        c.rect(cell.alpha0 - 0.5 * cell_side, cell.beta0 - 0.5 * cell_side, cell_side, cell_side,
               basin_fill(cell.basin));
    c.axes();
    return c.finish(title);
}

}  // namespace gonodyn
