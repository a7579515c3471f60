#include "vecac/fields.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace vecac {

namespace {

inline int wrap(int i, int n) { return (i % n + n) % n; }

// one derivative row: second-order one-sided at the ends unless periodic
inline double diff1(const Grid2D& g, int ix, int iy, int q, bool xdir) {
    const int n = xdir ? g.nx : g.ny;
    const int i = xdir ? ix : iy;
    const bool per = g.bc.kind == BCKind::Periodic && (xdir ? g.bc.periodic_x : g.bc.periodic_y);
    auto val = [&](int j) {
        if (per) j = wrap(j, n);
        return xdir ? g.at(j, iy)[q] : g.at(ix, j)[q];
    };
    if (per || (i > 0 && i < n - 1)) return (val(i + 1) - val(i - 1)) / (2.0 * g.h);
    if (i == 0) return (-3.0 * val(0) + 4.0 * val(1) - val(2)) / (2.0 * g.h);
    return (3.0 * val(n - 1) - 4.0 * val(n - 2) + val(n - 3)) / (2.0 * g.h);
}

}  // namespace

DiagnosticSet diagnostics(const Grid2D& g, const Potential& p, double eps) {
    if (eps <= 0) throw std::invalid_argument("eps must be positive");
    DiagnosticSet d;
    d.k = g.k;
    d.eps = eps;
    d.e = d.zeta = d.xi = ScalarField::like(g);
    d.mu11 = d.mu22 = d.mu12 = ScalarField::like(g);
    d.hopf_re = d.hopf_im = ScalarField::like(g);
    d.a11 = d.a22 = d.a12 = ScalarField::like(g);
    d.gx.assign(g.values.size(), 0.0);
    d.gy.assign(g.values.size(), 0.0);

    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix) {
            double m11 = 0, m22 = 0, m12 = 0;
            for (int q = 0; q < g.k; ++q) {
                double ux = diff1(g, ix, iy, q, true);
                double uy = diff1(g, ix, iy, q, false);
                d.gx[g.idx(ix, iy) + q] = ux;
                d.gy[g.idx(ix, iy) + q] = uy;
                m11 += ux * ux;
                m22 += uy * uy;
                m12 += ux * uy;
            }
            m11 *= eps;
            m22 *= eps;
            m12 *= eps;
            const double z = p.eval(g.at(ix, iy)) / eps;
            const double e = 0.5 * (m11 + m22) + z;
            d.mu11.at(ix, iy) = m11;
            d.mu22.at(ix, iy) = m22;
            d.mu12.at(ix, iy) = m12;
            d.zeta.at(ix, iy) = z;
            d.e.at(ix, iy) = e;
            d.xi.at(ix, iy) = z - 0.5 * (m11 + m22);
            d.hopf_re.at(ix, iy) = m11 - m22;
            d.hopf_im.at(ix, iy) = -2.0 * m12;
            d.a11.at(ix, iy) = e - m11;
            d.a22.at(ix, iy) = e - m22;
            d.a12.at(ix, iy) = -m12;
        }
    return d;
}

double ball_mass(const ScalarField& f, double x0, double y0, double r) {
    if (r <= 0) throw std::invalid_argument("ball_mass: r must be positive");
    const double xmin = f.ox, xmax = f.ox + (f.nx - 1) * f.h;
    const double ymin = f.oy, ymax = f.oy + (f.ny - 1) * f.h;
    if (x0 - r - f.h < xmin || x0 + r + f.h > xmax || y0 - r - f.h < ymin ||
        y0 + r + f.h > ymax)
        throw std::invalid_argument("ball_mass: disk exceeds the grid");

    const int ix0 = std::max(0, (int)std::floor((x0 - r - f.h - xmin) / f.h));
    const int ix1 = std::min(f.nx - 1, (int)std::ceil((x0 + r + f.h - xmin) / f.h));
    const int iy0 = std::max(0, (int)std::floor((y0 - r - f.h - ymin) / f.h));
    const int iy1 = std::min(f.ny - 1, (int)std::ceil((y0 + r + f.h - ymin) / f.h));

    const double r2 = r * r;
    double mass = 0.0;
    for (int iy = iy0; iy <= iy1; ++iy)
        for (int ix = ix0; ix <= ix1; ++ix) {
            const double cxm = f.x(ix) - 0.5 * f.h, cym = f.y(iy) - 0.5 * f.h;
            // quick reject/accept by cell corner distances
            double dx_near = std::max({cxm - x0, x0 - (cxm + f.h), 0.0});
            double dy_near = std::max({cym - y0, y0 - (cym + f.h), 0.0});
            if (dx_near * dx_near + dy_near * dy_near > r2) continue;
            double dx_far = std::max(std::abs(cxm - x0), std::abs(cxm + f.h - x0));
            double dy_far = std::max(std::abs(cym - y0), std::abs(cym + f.h - y0));
            double w;
            if (dx_far * dx_far + dy_far * dy_far <= r2) {
                w = 1.0;
            } else {
                int inside = 0;
                for (int sy = 0; sy < 4; ++sy)
                    for (int sx = 0; sx < 4; ++sx) {
                        double px = cxm + (sx + 0.5) * f.h / 4.0;
                        double py = cym + (sy + 0.5) * f.h / 4.0;
                        if ((px - x0) * (px - x0) + (py - y0) * (py - y0) <= r2) ++inside;
                    }
                w = inside / 16.0;
            }
            mass += w * f.at(ix, iy) * f.h * f.h;
        }
    return mass;
}

RadialScan radial_scan(const ScalarField& f, double x0, double y0, double r_min,
                       double r_max, int n_r) {
    if (r_min < 2.0 * f.h) throw std::invalid_argument("radial_scan: r_min below 2h");
    if (n_r < 2 || r_max <= r_min) throw std::invalid_argument("radial_scan: bad radius grid");
    RadialScan scan;
    scan.x0 = x0;
    scan.y0 = y0;
    const double ratio = std::pow(r_max / r_min, 1.0 / (n_r - 1));
    double r = r_min;
    for (int i = 0; i < n_r; ++i, r *= ratio) {
        scan.r.push_back(r);
        scan.mass_over_r.push_back(ball_mass(f, x0, y0, r) / r);
    }
    return scan;
}

void export_scan_csv(const RadialScan& scan, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "r,mass_over_r\n";
    out.precision(17);
    for (size_t i = 0; i < scan.r.size(); ++i)
        out << scan.r[i] << "," << scan.mass_over_r[i] << "\n";
}

FrameFields frame_project(const DiagnosticSet& d, double gamma) {
    const double c = std::cos(gamma), s = std::sin(gamma);
    FrameFields out;
    out.mu_par_par = out.mu_perp_perp = out.mu_perp_par = d.mu11;
    const size_t n = d.mu11.v.size();
    for (size_t i = 0; i < n; ++i) {
        const double m11 = d.mu11.v[i], m22 = d.mu22.v[i], m12 = d.mu12.v[i];
        out.mu_par_par.v[i] = c * c * m11 + 2.0 * c * s * m12 + s * s * m22;
        out.mu_perp_perp.v[i] = s * s * m11 - 2.0 * c * s * m12 + c * c * m22;
        out.mu_perp_par.v[i] = -c * s * m11 + (c * c - s * s) * m12 + c * s * m22;
    }
    return out;
}

double bilinear(const ScalarField& f, double x, double y) {
    double tx = (x - f.ox) / f.h, ty = (y - f.oy) / f.h;
    tx = std::clamp(tx, 0.0, (double)(f.nx - 1));
    ty = std::clamp(ty, 0.0, (double)(f.ny - 1));
    int ix = std::min((int)tx, f.nx - 2), iy = std::min((int)ty, f.ny - 2);
    double fx = tx - ix, fy = ty - iy;
    return (1 - fx) * (1 - fy) * f.at(ix, iy) + fx * (1 - fy) * f.at(ix + 1, iy) +
           (1 - fx) * fy * f.at(ix, iy + 1) + fx * fy * f.at(ix + 1, iy + 1);
}

void save_field_vac1(const ScalarField& f, double eps, const std::string& path) {
    Grid2D g = Grid2D::make(f.nx, f.ny, 1, f.h, f.ox, f.oy);
    g.values = f.v;
    save_vac1(g, eps, path);
}

}  // namespace vecac
