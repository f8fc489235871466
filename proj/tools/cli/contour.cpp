#include "cli/contour.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace harmlab::cli {

std::vector<std::vector<cplx>> zero_level_curves(const std::function<double(cplx)>& F, double x0, double x1, double y0,
                                                 double y1, int nx, int ny) {
    const double hx = (x1 - x0) / nx, hy = (y1 - y0) / ny;
    std::vector<double> v(static_cast<std::size_t>(nx + 1) * (ny + 1));
    auto at = [&](int i, int j) -> double& { return v[static_cast<std::size_t>(j) * (nx + 1) + i]; };
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) {
            const double f = F({x0 + i * hx, y0 + j * hy});
            at(i, j) = f == 0.0 ? 1e-300 : f;
        }

    // Edge ids: horizontal edge (i, j)-(i+1, j) and vertical edge (i, j)-(i, j+1).
    auto hedge = [&](int i, int j) { return 2L * (static_cast<long>(j) * (nx + 1) + i); };
    auto vedge = [&](int i, int j) { return 2L * (static_cast<long>(j) * (nx + 1) + i) + 1; };
    std::map<long, cplx> point;
    auto crossing = [&](long id, cplx a, cplx b, double fa, double fb) {
        const double t = fa / (fa - fb);
        point.emplace(id, a + t * (b - a));
        return id;
    };

    std::vector<std::pair<long, long>> segs;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const cplx p00(x0 + i * hx, y0 + j * hy), p10(x0 + (i + 1) * hx, y0 + j * hy);
            const cplx p01(x0 + i * hx, y0 + (j + 1) * hy), p11(x0 + (i + 1) * hx, y0 + (j + 1) * hy);
            const double f00 = at(i, j), f10 = at(i + 1, j), f01 = at(i, j + 1), f11 = at(i + 1, j + 1);
            std::vector<long> e;  // crossed edges in order bottom, right, top, left
            if ((f00 < 0) != (f10 < 0)) e.push_back(crossing(hedge(i, j), p00, p10, f00, f10));
            if ((f10 < 0) != (f11 < 0)) e.push_back(crossing(vedge(i + 1, j), p10, p11, f10, f11));
            if ((f01 < 0) != (f11 < 0)) e.push_back(crossing(hedge(i, j + 1), p01, p11, f01, f11));
            if ((f00 < 0) != (f01 < 0)) e.push_back(crossing(vedge(i, j), p00, p01, f00, f01));
            if (e.size() == 2) {
                segs.emplace_back(e[0], e[1]);
            } else if (e.size() == 4) {
                const bool center_neg = (f00 + f10 + f01 + f11) < 0;
                // Pair each crossing with the neighbour on the side of the center's sign.
                if (center_neg == (f00 < 0)) {
                    segs.emplace_back(e[0], e[1]);
                    segs.emplace_back(e[2], e[3]);
                } else {
                    segs.emplace_back(e[0], e[3]);
                    segs.emplace_back(e[1], e[2]);
                }
            }
        }

    std::multimap<long, std::size_t> by_edge;
    for (std::size_t k = 0; k < segs.size(); ++k) {
        by_edge.emplace(segs[k].first, k);
        by_edge.emplace(segs[k].second, k);
    }
    std::vector<char> used(segs.size(), 0);
    auto next_seg = [&](long edge, std::size_t from) -> long {
        const auto range = by_edge.equal_range(edge);
        for (auto it = range.first; it != range.second; ++it)
            if (it->second != from && !used[it->second]) return static_cast<long>(it->second);
        return -1;
    };
    std::vector<std::vector<cplx>> out;
    for (std::size_t k = 0; k < segs.size(); ++k) {
        if (used[k]) continue;
        used[k] = 1;
        std::vector<long> chain{segs[k].first, segs[k].second};
        // Extend forward, then backward.
        for (int dir = 0; dir < 2; ++dir) {
            std::size_t cur = k;
            while (true) {
                const long edge = chain.back();
                const long s = next_seg(edge, cur);
                if (s < 0) break;
                used[static_cast<std::size_t>(s)] = 1;
                cur = static_cast<std::size_t>(s);
                chain.push_back(segs[cur].first == edge ? segs[cur].second : segs[cur].first);
            }
            std::reverse(chain.begin(), chain.end());
        }
        std::vector<cplx> poly;
        for (const long e : chain) poly.push_back(point.at(e));
        out.push_back(std::move(poly));
    }
    return out;
}

}  // namespace harmlab::cli
