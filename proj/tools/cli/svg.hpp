#pragma once

#include <string>
#include <vector>

#include "harmlab/cpoly.hpp"

namespace harmlab::cli {

enum class LayerKind { Roots, ZerosOfF, Lemniscate, Caustic, Cusps, GammaCurves, NewtonPolygon };

const char* to_string(LayerKind k) noexcept;

struct Style {
    std::string stroke = "#000000";
    std::string fill = "none";
    double width = 1.0;
    double radius = 3.0;
    double opacity = 1.0;
    bool dashed = false;
};

// Paths are polylines; `closed` joins the last point to the first. For
// Lemniscate layers all paths form one nonzero-filled region, so clockwise
// hole contours cut out of counterclockwise outer ones.
struct Layer {
    LayerKind kind = LayerKind::Roots;
    Style style;
    std::vector<std::vector<cplx>> paths;
    bool closed = false;
    std::vector<cplx> points;
    std::vector<Style> point_styles;  // per point; empty means style for all
};

struct Panel {
    std::string title;
    std::vector<Layer> layers;
    bool lattice = false;  // integer grid dots behind the layers
};

// Panels are laid out left to right. Each panel fits its data with a 5%
// margin at equal aspect ratio. Output bytes depend only on the spec.
struct FigureSpec {
    std::vector<Panel> panels;
    double panel_width = 420.0;
};

std::string render_svg(const FigureSpec& fig);

}  // namespace harmlab::cli
