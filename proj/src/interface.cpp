#include "vecac/interface_graph.hpp"

#include "vecac/solver2d.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace vecac {

namespace {

struct Mask {
    int nx = 0, ny = 0;
    std::vector<uint8_t> v;
    uint8_t at(int ix, int iy) const {
        if (ix < 0 || iy < 0 || ix >= nx || iy >= ny) return 0;
        return v[(size_t)iy * nx + ix];
    }
    void set(int ix, int iy, uint8_t b) { v[(size_t)iy * nx + ix] = b; }
};

// Zhang-Suen morphological thinning, deterministic scan order
void thin(Mask& m) {
    bool changed = true;
    std::vector<std::pair<int, int>> kill;
    while (changed) {
        changed = false;
        for (int phase = 0; phase < 2; ++phase) {
            kill.clear();
            for (int iy = 0; iy < m.ny; ++iy)
                for (int ix = 0; ix < m.nx; ++ix) {
                    if (!m.at(ix, iy)) continue;
                    const uint8_t p2 = m.at(ix, iy - 1), p3 = m.at(ix + 1, iy - 1);
                    const uint8_t p4 = m.at(ix + 1, iy), p5 = m.at(ix + 1, iy + 1);
                    const uint8_t p6 = m.at(ix, iy + 1), p7 = m.at(ix - 1, iy + 1);
                    const uint8_t p8 = m.at(ix - 1, iy), p9 = m.at(ix - 1, iy - 1);
                    const int b = p2 + p3 + p4 + p5 + p6 + p7 + p8 + p9;
                    if (b < 2 || b > 6) continue;
                    const uint8_t seq[9] = {p2, p3, p4, p5, p6, p7, p8, p9, p2};
                    int a = 0;
                    for (int i = 0; i < 8; ++i)
                        if (!seq[i] && seq[i + 1]) ++a;
                    if (a != 1) continue;
                    if (phase == 0) {
                        if (p2 * p4 * p6 != 0 || p4 * p6 * p8 != 0) continue;
                    } else {
                        if (p2 * p4 * p8 != 0 || p2 * p6 * p8 != 0) continue;
                    }
                    kill.emplace_back(ix, iy);
                }
            for (auto [ix, iy] : kill) m.set(ix, iy, 0);
            if (!kill.empty()) changed = true;
        }
    }
}

int skel_degree(const Mask& m, int ix, int iy) {
    int d = 0;
    for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
            if (!dx && !dy) continue;
            d += m.at(ix + dx, iy + dy);
        }
    return d;
}

// crossing number: 0->1 transitions in the 8-neighbour ring; 1 at line ends,
// 2 along a line (also across staircase corners), >= 3 at branch points
int crossing_number(const Mask& m, int ix, int iy) {
    const uint8_t ring[9] = {m.at(ix, iy - 1),     m.at(ix + 1, iy - 1), m.at(ix + 1, iy),
                             m.at(ix + 1, iy + 1), m.at(ix, iy + 1),     m.at(ix - 1, iy + 1),
                             m.at(ix - 1, iy),     m.at(ix - 1, iy - 1), m.at(ix, iy - 1)};
    int a = 0;
    for (int i = 0; i < 8; ++i)
        if (!ring[i] && ring[i + 1]) ++a;
    return a;
}

double point_segment_dist(double px, double py, double ax, double ay, double bx, double by) {
    const double vx = bx - ax, vy = by - ay;
    const double L2 = vx * vx + vy * vy;
    double t = L2 > 0 ? ((px - ax) * vx + (py - ay) * vy) / L2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double qx = ax + t * vx, qy = ay + t * vy;
    return std::hypot(px - qx, py - qy);
}

}  // namespace

ScalarField density_field(const DiagnosticSet& d, double probe_r) {
    if (probe_r < 4.0 * d.eps)
        throw std::invalid_argument("density_field: probe_r must be >= 4 eps");
    const ScalarField& e = d.e;
    ScalarField out = e;
    std::fill(out.v.begin(), out.v.end(), -1.0);

    // the probe disk is centered on a node, so the cell-overlap weights are
    // one fixed stencil reused everywhere
    const int m = (int)std::ceil((probe_r + e.h) / e.h) + 1;
    const double r2 = probe_r * probe_r;
    std::vector<std::pair<std::pair<int, int>, double>> stencil;
    for (int dj = -m; dj <= m; ++dj)
        for (int di = -m; di <= m; ++di) {
            const double cxm = di * e.h - 0.5 * e.h, cym = dj * e.h - 0.5 * e.h;
            double dxn = std::max({cxm, -(cxm + e.h), 0.0});
            double dyn = std::max({cym, -(cym + e.h), 0.0});
            if (dxn * dxn + dyn * dyn > r2) continue;
            double dxf = std::max(std::abs(cxm), std::abs(cxm + e.h));
            double dyf = std::max(std::abs(cym), std::abs(cym + e.h));
            double w;
            if (dxf * dxf + dyf * dyf <= r2) {
                w = 1.0;
            } else {
                int inside = 0;
                for (int sy = 0; sy < 4; ++sy)
                    for (int sx = 0; sx < 4; ++sx) {
                        const double px = cxm + (sx + 0.5) * e.h / 4.0;
                        const double py = cym + (sy + 0.5) * e.h / 4.0;
                        if (px * px + py * py <= r2) ++inside;
                    }
                if (!inside) continue;
                w = inside / 16.0;
            }
            stencil.push_back({{di, dj}, w * e.h * e.h});
        }

    const double xmin = e.ox, xmax = e.ox + (e.nx - 1) * e.h;
    const double ymin = e.oy, ymax = e.oy + (e.ny - 1) * e.h;
    for (int iy = 0; iy < e.ny; ++iy)
        for (int ix = 0; ix < e.nx; ++ix) {
            const double x = e.x(ix), y = e.y(iy);
            if (x - probe_r - e.h < xmin || x + probe_r + e.h > xmax ||
                y - probe_r - e.h < ymin || y + probe_r + e.h > ymax)
                continue;
            double mass = 0.0;
            for (const auto& [off, w] : stencil) mass += w * e.at(ix + off.first, iy + off.second);
            out.at(ix, iy) = mass / probe_r;
        }
    return out;
}

InterfaceGraph extract_interface(const ScalarField& theta, const DiagnosticSet& d, double eta,
                                 double probe_r) {
    if (eta <= 0) throw std::invalid_argument("extract_interface: eta must be positive");
    InterfaceGraph graph;
    graph.eps = d.eps;
    graph.eta = eta;
    graph.probe_r = probe_r;

    Mask m;
    m.nx = theta.nx;
    m.ny = theta.ny;
    m.v.assign((size_t)m.nx * m.ny, 0);
    bool any = false;
    for (int iy = 0; iy < m.ny; ++iy)
        for (int ix = 0; ix < m.nx; ++ix)
            if (theta.at(ix, iy) >= eta) {
                m.set(ix, iy, 1);
                any = true;
            }
    if (!any) return graph;
    thin(m);

    // branch pixels by crossing number; the blocking set is dilated by one
    // pixel so chains cannot slip diagonally past a branch point
    std::vector<uint8_t> node_raw((size_t)m.nx * m.ny, 0), node_block((size_t)m.nx * m.ny, 0);
    for (int iy = 0; iy < m.ny; ++iy)
        for (int ix = 0; ix < m.nx; ++ix)
            if (m.at(ix, iy) && crossing_number(m, ix, iy) >= 3)
                node_raw[(size_t)iy * m.nx + ix] = 1;
    for (int iy = 0; iy < m.ny; ++iy)
        for (int ix = 0; ix < m.nx; ++ix) {
            if (!node_raw[(size_t)iy * m.nx + ix]) continue;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    const int qx = ix + dx, qy = iy + dy;
                    if (qx < 0 || qy < 0 || qx >= m.nx || qy >= m.ny) continue;
                    if (m.at(qx, qy)) node_block[(size_t)qy * m.nx + qx] = 1;
                }
        }

    // cluster blocking pixels within distance 2; the node position averages
    // only the true branch pixels
    std::vector<int> cluster((size_t)m.nx * m.ny, -1);
    std::vector<std::pair<double, double>> centers;
    std::vector<int> sizes;
    for (int iy = 0; iy < m.ny; ++iy)
        for (int ix = 0; ix < m.nx; ++ix) {
            if (!node_block[(size_t)iy * m.nx + ix]) continue;
            if (cluster[(size_t)iy * m.nx + ix] >= 0) continue;
            const int id = (int)centers.size();
            centers.push_back({0, 0});
            sizes.push_back(0);
            std::queue<std::pair<int, int>> bfs;
            bfs.push({ix, iy});
            cluster[(size_t)iy * m.nx + ix] = id;
            while (!bfs.empty()) {
                auto [cx, cy] = bfs.front();
                bfs.pop();
                if (node_raw[(size_t)cy * m.nx + cx]) {
                    centers[id].first += theta.x(cx);
                    centers[id].second += theta.y(cy);
                    ++sizes[id];
                }
                for (int dy = -2; dy <= 2; ++dy)
                    for (int dx = -2; dx <= 2; ++dx) {
                        const int qx = cx + dx, qy = cy + dy;
                        if (qx < 0 || qy < 0 || qx >= m.nx || qy >= m.ny) continue;
                        if (!node_block[(size_t)qy * m.nx + qx]) continue;
                        if (cluster[(size_t)qy * m.nx + qx] >= 0) continue;
                        cluster[(size_t)qy * m.nx + qx] = id;
                        bfs.push({qx, qy});
                    }
            }
        }
    for (size_t i = 0; i < centers.size(); ++i) {
        if (sizes[i] == 0) continue;
        centers[i].first /= sizes[i];
        centers[i].second /= sizes[i];
    }

    // chains of non-junction skeleton pixels form the arcs
    auto is_node_pixel = [&](int ix, int iy) { return cluster[(size_t)iy * m.nx + ix] >= 0; };
    std::vector<uint8_t> visited((size_t)m.nx * m.ny, 0);
    auto chain_neighbors = [&](int ix, int iy) {
        std::vector<std::pair<int, int>> nb;
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                if (!dx && !dy) continue;
                const int qx = ix + dx, qy = iy + dy;
                if (qx < 0 || qy < 0 || qx >= m.nx || qy >= m.ny) continue;
                if (m.at(qx, qy) && !is_node_pixel(qx, qy)) nb.push_back({qx, qy});
            }
        return nb;
    };

    std::vector<std::vector<std::pair<int, int>>> chains;
    for (int iy = 0; iy < m.ny; ++iy)
        for (int ix = 0; ix < m.nx; ++ix) {
            if (!m.at(ix, iy) || is_node_pixel(ix, iy) || visited[(size_t)iy * m.nx + ix])
                continue;
            if ((int)chain_neighbors(ix, iy).size() >= 2 &&
                !(skel_degree(m, ix, iy) <= 1))  // prefer starting at chain ends
                continue;
            std::vector<std::pair<int, int>> chain;
            int cx = ix, cy = iy, px = -9, py = -9;
            while (true) {
                visited[(size_t)cy * m.nx + cx] = 1;
                chain.push_back({cx, cy});
                auto nb = chain_neighbors(cx, cy);
                int nnx = -1, nny = -1;
                for (auto [qx, qy] : nb) {
                    if (visited[(size_t)qy * m.nx + qx]) continue;
                    nnx = qx;
                    nny = qy;
                    break;
                }
                if (nnx < 0) break;
                px = cx;
                py = cy;
                cx = nnx;
                cy = nny;
            }
            (void)px;
            (void)py;
            chains.push_back(std::move(chain));
        }
    // leftover closed loops
    for (int iy = 0; iy < m.ny; ++iy)
        for (int ix = 0; ix < m.nx; ++ix) {
            if (!m.at(ix, iy) || is_node_pixel(ix, iy) || visited[(size_t)iy * m.nx + ix])
                continue;
            std::vector<std::pair<int, int>> chain;
            int cx = ix, cy = iy;
            while (true) {
                visited[(size_t)cy * m.nx + cx] = 1;
                chain.push_back({cx, cy});
                auto nb = chain_neighbors(cx, cy);
                int nnx = -1, nny = -1;
                for (auto [qx, qy] : nb) {
                    if (visited[(size_t)qy * m.nx + qx]) continue;
                    nnx = qx;
                    nny = qy;
                    break;
                }
                if (nnx < 0) break;
                cx = nnx;
                cy = nny;
            }
            chains.push_back(std::move(chain));
        }

    // drop specks
    std::erase_if(chains, [](const auto& c) { return c.size() < 3; });

    const double h = theta.h;
    for (const auto& chain : chains) {
        InterfaceArc arc;
        for (auto [ix, iy] : chain) arc.points.push_back({theta.x(ix), theta.y(iy)});

        // trim the junction-adjacent ends before measuring density/length
        std::vector<std::pair<double, double>> trimmed;
        for (const auto& pt : arc.points) {
            bool near = false;
            for (const auto& c : centers)
                if (std::hypot(pt.first - c.first, pt.second - c.second) < probe_r) near = true;
            if (!near) trimmed.push_back(pt);
        }
        if (trimmed.size() < 2) trimmed = arc.points;

        double len = 0.0;
        for (size_t i = 0; i + 1 < trimmed.size(); ++i)
            len += std::hypot(trimmed[i + 1].first - trimmed[i].first,
                              trimmed[i + 1].second - trimmed[i].second);
        arc.length = len;

        // zeta mass inside a tube of radius probe_r around the trimmed polyline
        double mass = 0.0;
        double bx0 = 1e300, bx1 = -1e300, by0 = 1e300, by1 = -1e300;
        for (const auto& pt : trimmed) {
            bx0 = std::min(bx0, pt.first);
            bx1 = std::max(bx1, pt.first);
            by0 = std::min(by0, pt.second);
            by1 = std::max(by1, pt.second);
        }
        const ScalarField& z = d.zeta;
        const int jx0 = std::max(0, (int)std::floor((bx0 - probe_r - z.ox) / h));
        const int jx1 = std::min(z.nx - 1, (int)std::ceil((bx1 + probe_r - z.ox) / h));
        const int jy0 = std::max(0, (int)std::floor((by0 - probe_r - z.oy) / h));
        const int jy1 = std::min(z.ny - 1, (int)std::ceil((by1 + probe_r - z.oy) / h));
        // end caps are excluded so the tube mass divides by the matching
        // interface length
        const auto& pa = trimmed.front();
        const auto& pb = trimmed.back();
        for (int iy = jy0; iy <= jy1; ++iy)
            for (int ix = jx0; ix <= jx1; ++ix) {
                const double px = z.x(ix), py = z.y(iy);
                double dist = 1e300;
                for (size_t i = 0; i + 1 < trimmed.size() && dist > probe_r; ++i)
                    dist = std::min(dist, point_segment_dist(px, py, trimmed[i].first,
                                                            trimmed[i].second,
                                                            trimmed[i + 1].first,
                                                            trimmed[i + 1].second));
                if (dist > probe_r) continue;
                if (std::hypot(px - pa.first, py - pa.second) <= dist + 0.5 * h) continue;
                if (std::hypot(px - pb.first, py - pb.second) <= dist + 0.5 * h) continue;
                mass += z.at(ix, iy) * h * h;
            }
        arc.density = len > 0 ? mass / len : 0.0;
        graph.arcs.push_back(std::move(arc));
    }

    // junction nodes with incident directions and densities
    for (size_t jid = 0; jid < centers.size(); ++jid) {
        InterfaceJunction jn;
        jn.x = centers[jid].first;
        jn.y = centers[jid].second;
        const double attach = probe_r + 3.0 * h;
        for (const auto& arc : graph.arcs) {
            for (int end = 0; end < 2; ++end) {
                const auto& pt = end == 0 ? arc.points.front() : arc.points.back();
                if (std::hypot(pt.first - jn.x, pt.second - jn.y) > attach) continue;
                // local tangent of the arc just outside the junction blob,
                // fitted by PCA and oriented away from the node; a ray from
                // the node center would inherit its pixel-scale offset
                const size_t n = arc.points.size();
                std::vector<std::pair<double, double>> seg;
                double acc = 0.0;
                for (size_t step = 0; step + 1 < n; ++step) {
                    const size_t i = end == 0 ? step : n - 1 - step;
                    const size_t j = end == 0 ? step + 1 : n - 2 - step;
                    acc += std::hypot(arc.points[j].first - arc.points[i].first,
                                      arc.points[j].second - arc.points[i].second);
                    if (acc < probe_r) continue;
                    if (acc > 3.0 * probe_r) break;
                    seg.push_back(arc.points[j]);
                }
                if (seg.size() < 2) {
                    seg.clear();
                    acc = 0.0;
                    seg.push_back(end == 0 ? arc.points.front() : arc.points.back());
                    for (size_t step = 0; step + 1 < n && acc <= 3.0 * probe_r; ++step) {
                        const size_t i = end == 0 ? step : n - 1 - step;
                        const size_t j = end == 0 ? step + 1 : n - 2 - step;
                        acc += std::hypot(arc.points[j].first - arc.points[i].first,
                                          arc.points[j].second - arc.points[i].second);
                        seg.push_back(arc.points[j]);
                    }
                }
                double mx = 0, my = 0;
                for (const auto& q : seg) {
                    mx += q.first;
                    my += q.second;
                }
                mx /= seg.size();
                my /= seg.size();
                double sxx = 0, sxy = 0, syy = 0;
                for (const auto& q : seg) {
                    sxx += (q.first - mx) * (q.first - mx);
                    sxy += (q.first - mx) * (q.second - my);
                    syy += (q.second - my) * (q.second - my);
                }
                const double ang = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
                double dxv = std::cos(ang), dyv = std::sin(ang);
                const double ox = seg.back().first - seg.front().first;
                const double oy = seg.back().second - seg.front().second;
                if (dxv * ox + dyv * oy < 0) {
                    dxv = -dxv;
                    dyv = -dyv;
                }
                jn.directions.push_back(std::atan2(dyv, dxv));
                jn.densities.push_back(arc.density);
            }
        }
        if (jn.directions.size() < 3) continue;
        double sx = 0, sy = 0, st = 0;
        for (size_t i = 0; i < jn.directions.size(); ++i) {
            sx += jn.densities[i] * std::cos(jn.directions[i]);
            sy += jn.densities[i] * std::sin(jn.directions[i]);
            st += jn.densities[i];
        }
        jn.balance_residual = st > 0 ? std::hypot(sx, sy) / st : 0.0;
        graph.junctions.push_back(std::move(jn));
    }
    return graph;
}

std::vector<double> junction_balance(const InterfaceGraph& graph) {
    std::vector<double> out;
    for (const auto& j : graph.junctions) out.push_back(j.balance_residual);
    return out;
}

LevelSetStats level_set_stats(const Grid2D& g, const Potential& p, const WellConstants& wc,
                              int well_index, double level, double eps) {
    if (well_index < 0 || well_index >= (int)p.vacuum.size())
        throw std::invalid_argument("level_set_stats: bad well index");
    if (level <= 0 || level >= 0.75 * wc.mu0)
        throw std::invalid_argument("level_set_stats: level must lie in (0, 3 mu0 / 4)");
    const auto& sigma = p.vacuum[well_index];
    ScalarField w;
    w.nx = g.nx;
    w.ny = g.ny;
    w.h = g.h;
    w.ox = g.ox;
    w.oy = g.oy;
    w.v.assign((size_t)g.nx * g.ny, 0.0);
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix) {
            double s = 0;
            for (int q = 0; q < g.k; ++q) {
                const double dd = g.at(ix, iy)[q] - sigma[q];
                s += dd * dd;
            }
            w.at(ix, iy) = std::sqrt(s) - level;
        }

    // marching squares, linear interpolation on cell edges
    struct Seg {
        double ax, ay, bx, by;
    };
    std::vector<Seg> segs;
    auto crossing = [&](double x0, double y0, double v0, double x1, double y1, double v1) {
        const double t = v0 / (v0 - v1);
        return std::pair<double, double>{x0 + t * (x1 - x0), y0 + t * (y1 - y0)};
    };
    for (int iy = 0; iy + 1 < g.ny; ++iy)
        for (int ix = 0; ix + 1 < g.nx; ++ix) {
            const double v00 = w.at(ix, iy), v10 = w.at(ix + 1, iy);
            const double v01 = w.at(ix, iy + 1), v11 = w.at(ix + 1, iy + 1);
            const double x0 = w.x(ix), x1 = w.x(ix + 1), y0 = w.y(iy), y1 = w.y(iy + 1);
            std::vector<std::pair<double, double>> pts;
            if ((v00 < 0) != (v10 < 0)) pts.push_back(crossing(x0, y0, v00, x1, y0, v10));
            if ((v10 < 0) != (v11 < 0)) pts.push_back(crossing(x1, y0, v10, x1, y1, v11));
            if ((v01 < 0) != (v11 < 0)) pts.push_back(crossing(x0, y1, v01, x1, y1, v11));
            if ((v00 < 0) != (v01 < 0)) pts.push_back(crossing(x0, y0, v00, x0, y1, v01));
            if (pts.size() == 2) {
                segs.push_back({pts[0].first, pts[0].second, pts[1].first, pts[1].second});
            } else if (pts.size() == 4) {
                // ambiguous saddle: resolve by the cell-center sign
                const double vc = 0.25 * (v00 + v10 + v01 + v11);
                // pts order: bottom, right, top, left
                if ((vc < 0) == (v00 < 0)) {
                    segs.push_back({pts[0].first, pts[0].second, pts[1].first, pts[1].second});
                    segs.push_back({pts[3].first, pts[3].second, pts[2].first, pts[2].second});
                } else {
                    segs.push_back({pts[0].first, pts[0].second, pts[3].first, pts[3].second});
                    segs.push_back({pts[1].first, pts[1].second, pts[2].first, pts[2].second});
                }
            }
        }

    LevelSetStats stats;
    stats.level = level;
    // connected components over shared endpoints
    std::vector<int> parent(segs.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    std::map<std::pair<long long, long long>, int> endpoint_owner;
    auto key = [&](double x, double y) {
        return std::pair<long long, long long>{llround(x / g.h * 1024.0),
                                               llround(y / g.h * 1024.0)};
    };
    for (size_t i = 0; i < segs.size(); ++i) {
        for (auto kp : {key(segs[i].ax, segs[i].ay), key(segs[i].bx, segs[i].by)}) {
            auto it = endpoint_owner.find(kp);
            if (it == endpoint_owner.end())
                endpoint_owner[kp] = (int)i;
            else
                parent[find((int)i)] = find(it->second);
        }
    }
    std::map<int, double> comp_len;
    for (size_t i = 0; i < segs.size(); ++i) {
        const double L = std::hypot(segs[i].bx - segs[i].ax, segs[i].by - segs[i].ay);
        stats.total_length += L;
        comp_len[find((int)i)] += L;
    }
    for (const auto& [root, L] : comp_len) stats.component_lengths.push_back(L);
    std::sort(stats.component_lengths.rbegin(), stats.component_lengths.rend());

    const double E = discrete_energy(g, p, eps);
    stats.bound = 8.0 * E / (std::sqrt(wc.lambda0) * level * level);
    stats.bound_ok = stats.total_length <= stats.bound;
    return stats;
}

TangentConeReport tangent_cone_check(const InterfaceGraph& graph, double x0, double y0,
                                     const std::vector<double>& angles,
                                     const std::vector<double>& radii) {
    for (const auto& j : graph.junctions)
        if (std::hypot(x0 - j.x, y0 - j.y) < 4.0 * graph.probe_r)
            throw std::invalid_argument("tangent_cone_check: point too close to a junction");

    TangentConeReport rep;
    rep.pass = true;
    for (double r : radii) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& arc : graph.arcs)
            for (const auto& pt : arc.points)
                if (std::hypot(pt.first - x0, pt.second - y0) <= r) pts.push_back(pt);
        if (pts.size() < 2) {
            rep.theta_min_per_r.push_back({r, 0.0});
            continue;
        }
        // principal direction of the points around x0
        double cxx = 0, cyy = 0, cxy = 0;
        for (const auto& pt : pts) {
            const double dx = pt.first - x0, dy = pt.second - y0;
            cxx += dx * dx;
            cyy += dy * dy;
            cxy += dx * dy;
        }
        const double ang = 0.5 * std::atan2(2.0 * cxy, cxx - cyy);
        const double ex = std::cos(ang), ey = std::sin(ang);
        double theta_min = 0.0;
        for (const auto& pt : pts) {
            const double dx = pt.first - x0, dy = pt.second - y0;
            const double L = std::hypot(dx, dy);
            if (L < 1e-12) continue;
            const double cross = std::abs(dx * ey - dy * ex) / L;
            theta_min = std::max(theta_min, std::asin(std::min(1.0, cross)));
        }
        rep.theta_min_per_r.push_back({r, theta_min});
        for (double th : angles)
            if (th < theta_min) rep.pass = false;
    }
    return rep;
}

std::string interface_to_json(const InterfaceGraph& graph) {
    nlohmann::json j;
    j["eps"] = graph.eps;
    j["eta"] = graph.eta;
    j["probe_r"] = graph.probe_r;
    j["arcs"] = nlohmann::json::array();
    for (const auto& a : graph.arcs) {
        nlohmann::json ja;
        ja["density"] = a.density;
        ja["length"] = a.length;
        ja["points"] = nlohmann::json::array();
        for (const auto& pt : a.points) ja["points"].push_back({pt.first, pt.second});
        j["arcs"].push_back(ja);
    }
    j["junctions"] = nlohmann::json::array();
    for (const auto& jn : graph.junctions) {
        nlohmann::json jj;
        jj["x"] = jn.x;
        jj["y"] = jn.y;
        jj["directions"] = jn.directions;
        jj["densities"] = jn.densities;
        jj["balance_residual"] = jn.balance_residual;
        j["junctions"].push_back(jj);
    }
    return j.dump(2);
}

}  // namespace vecac
