#include "cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace harmlab::cli {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    // Avoid "-0.000".
    if (std::string(buf) == "-0.000") return "0.000";
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Box {
    double x0 = std::numeric_limits<double>::infinity(), x1 = -std::numeric_limits<double>::infinity();
    double y0 = std::numeric_limits<double>::infinity(), y1 = -std::numeric_limits<double>::infinity();

    void add(cplx z) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return;
        x0 = std::min(x0, z.real());
        x1 = std::max(x1, z.real());
        y0 = std::min(y0, z.imag());
        y1 = std::max(y1, z.imag());
    }
    bool empty() const { return !(x1 >= x0); }
};

// Maps data coordinates into a panel of the given pixel size, y up.
struct Frame {
    double ox, oy, scale, cx, cy, w, h;
    double px(cplx z) const { return ox + 0.5 * w + (z.real() - cx) * scale; }
    double py(cplx z) const { return oy + 0.5 * h - (z.imag() - cy) * scale; }
};

std::string style_attrs(const Style& s, bool filled) {
    std::ostringstream o;
    o << " stroke=\"" << s.stroke << "\" stroke-width=\"" << num(s.width) << "\" fill=\""
      << (filled ? s.fill : std::string("none")) << "\"";
    if (s.opacity < 1.0) o << " opacity=\"" << num(s.opacity) << "\"";
    if (s.dashed) o << " stroke-dasharray=\"4 3\"";
    return o.str();
}

std::string path_data(const Frame& f, const std::vector<cplx>& pts, bool closed) {
    std::ostringstream o;
    bool pen = false;
    for (const cplx z : pts) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            pen = false;
            continue;
        }
        o << (pen ? " L" : " M") << num(f.px(z)) << ' ' << num(f.py(z));
        pen = true;
    }
    if (closed && pen) o << " Z";
    return o.str();
}

std::string star(const Frame& f, cplx z, double r) {
    std::ostringstream o;
    const double pi = 3.141592653589793;
    for (int k = 0; k < 10; ++k) {
        const double rr = k % 2 == 0 ? r : 0.45 * r;
        const double a = pi / 2 + k * pi / 5;
        o << (k == 0 ? "M" : " L") << num(f.px(z) + rr * std::cos(a)) << ' ' << num(f.py(z) - rr * std::sin(a));
    }
    o << " Z";
    return o.str();
}

void draw_panel(std::ostringstream& out, const Panel& p, double ox, double w, double h) {
    Box box;
    for (const Layer& l : p.layers) {
        for (const auto& path : l.paths)
            for (const cplx z : path) box.add(z);
        for (const cplx z : l.points) box.add(z);
    }
    if (box.empty()) {
        box.add({-1.0, -1.0});
        box.add({1.0, 1.0});
    }
    const double dx = std::max(box.x1 - box.x0, 1e-12), dy = std::max(box.y1 - box.y0, 1e-12);
    const double title_h = p.title.empty() ? 0.0 : 20.0;
    const double inner_h = h - title_h;
    const double scale = std::min(w / (1.1 * dx), inner_h / (1.1 * dy));
    const Frame f{ox, title_h, scale, 0.5 * (box.x0 + box.x1), 0.5 * (box.y0 + box.y1), w, inner_h};

    out << "<g>\n";
    if (!p.title.empty())
        out << "<text x=\"" << num(ox + 0.5 * w) << "\" y=\"14.000\" text-anchor=\"middle\" font-family=\"sans-serif\" "
            << "font-size=\"12\">" << xml_escape(p.title) << "</text>\n";
    if (p.lattice) {
        const double fx0 = std::ceil(box.x0), fx1 = std::floor(box.x1);
        const double fy0 = std::ceil(box.y0), fy1 = std::floor(box.y1);
        for (double y = fy0; y <= fy1; y += 1.0)
            for (double x = fx0; x <= fx1; x += 1.0) {
                const cplx z(x, y);
                out << "<circle cx=\"" << num(f.px(z)) << "\" cy=\"" << num(f.py(z))
                    << "\" r=\"1.500\" fill=\"#bbbbbb\"/>\n";
            }
    }
    for (const Layer& l : p.layers) {
        out << "<g class=\"" << to_string(l.kind) << "\">\n";
        if (l.kind == LayerKind::Lemniscate && !l.paths.empty()) {
            std::string d;
            for (const auto& path : l.paths) d += path_data(f, path, true);
            out << "<path d=\"" << d.substr(1) << "\" fill-rule=\"nonzero\"" << style_attrs(l.style, true) << "/>\n";
        } else {
            for (const auto& path : l.paths) {
                const std::string d = path_data(f, path, l.closed);
                if (d.empty()) continue;
                out << "<path d=\"" << d.substr(1) << "\"" << style_attrs(l.style, l.closed) << "/>\n";
            }
        }
        for (std::size_t k = 0; k < l.points.size(); ++k) {
            const Style& s = l.point_styles.empty() ? l.style : l.point_styles[k];
            const cplx z = l.points[k];
            if (l.kind == LayerKind::ZerosOfF) {
                out << "<path d=\"" << star(f, z, s.radius) << "\"" << style_attrs(s, true) << "/>\n";
            } else {
                out << "<circle cx=\"" << num(f.px(z)) << "\" cy=\"" << num(f.py(z)) << "\" r=\"" << num(s.radius) << "\""
                    << style_attrs(s, true) << "/>\n";
            }
        }
        out << "</g>\n";
    }
    out << "</g>\n";
}

}  // namespace

const char* to_string(LayerKind k) noexcept {
    switch (k) {
        case LayerKind::Roots: return "roots";
        case LayerKind::ZerosOfF: return "zeros_of_f";
        case LayerKind::Lemniscate: return "lemniscate";
        case LayerKind::Caustic: return "caustic";
        case LayerKind::Cusps: return "cusps";
        case LayerKind::GammaCurves: return "gamma_curves";
        case LayerKind::NewtonPolygon: return "newton_polygon";
    }
    return "?";
}

std::string render_svg(const FigureSpec& fig) {
    const double w = fig.panel_width, h = fig.panel_width;
    const double total_w = w * static_cast<double>(std::max<std::size_t>(1, fig.panels.size()));
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(total_w) << "\" height=\"" << num(h)
        << "\" viewBox=\"0 0 " << num(total_w) << ' ' << num(h) << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << num(total_w) << "\" height=\"" << num(h) << "\" fill=\"#ffffff\"/>\n";
    for (std::size_t k = 0; k < fig.panels.size(); ++k) draw_panel(out, fig.panels[k], w * static_cast<double>(k), w, h);
    out << "</svg>\n";
    return out.str();
}

}  // namespace harmlab::cli
