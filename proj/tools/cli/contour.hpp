#pragma once

#include <functional>
#include <vector>

#include "harmlab/cpoly.hpp"

namespace harmlab::cli {

// Zero set of F on [x0, x1] x [y0, y1] by marching squares on an nx x ny
// cell grid, with crossings placed by linear interpolation. Segments are
// chained into polylines through shared cell edges. Saddle cells are split
// by the sign of the cell-center average.
std::vector<std::vector<cplx>> zero_level_curves(const std::function<double(cplx)>& F, double x0, double x1, double y0,
                                                 double y1, int nx, int ny);

}  // namespace harmlab::cli
