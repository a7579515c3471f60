#include "vecac/identities.hpp"

#include "vecac/solver2d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vecac {

namespace {

constexpr int kCircleNodes = 720;

void require_converged(const Grid2D& g, const Potential& p, double eps, double conv_tol,
                       const char* who) {
    double scaled = eps * eps * sup_residual(g, p, eps);
    if (scaled > conv_tol) {
        std::ostringstream os;
        os << who << ": field not converged (eps^2 sup residual " << scaled << " > " << conv_tol
           << ")";
        throw std::invalid_argument(os.str());
    }
}

void require_disk_inside(const Grid2D& g, double x0, double y0, double r, double margin) {
    const double xmin = g.ox, xmax = g.ox + (g.nx - 1) * g.h;
    const double ymin = g.oy, ymax = g.oy + (g.ny - 1) * g.h;
    if (x0 - r - margin < xmin || x0 + r + margin > xmax || y0 - r - margin < ymin ||
        y0 + r + margin > ymax)
        throw std::invalid_argument("disk exceeds the grid");
}

struct CircleTerms {
    double mu_rr = 0, mu_tt = 0, zeta = 0, e = 0;  // trapezoid circle integrals, dl included
};

CircleTerms circle_integrals(const DiagnosticSet& d, double x0, double y0, double r) {
    CircleTerms out;
    const double dth = 2.0 * M_PI / kCircleNodes;
    for (int j = 0; j < kCircleNodes; ++j) {
        const double th = j * dth;
        const double c = std::cos(th), s = std::sin(th);
        const double px = x0 + r * c, py = y0 + r * s;
        const double m11 = bilinear(d.mu11, px, py);
        const double m22 = bilinear(d.mu22, px, py);
        const double m12 = bilinear(d.mu12, px, py);
        const double z = bilinear(d.zeta, px, py);
        const double mrr = c * c * m11 + 2.0 * c * s * m12 + s * s * m22;
        const double mtt = s * s * m11 - 2.0 * c * s * m12 + c * c * m22;
        out.mu_rr += mrr;
        out.mu_tt += mtt;
        out.zeta += z;
        out.e += 0.5 * (mrr + mtt) + z;
    }
    const double dl = r * dth;
    out.mu_rr *= dl;
    out.mu_tt *= dl;
    out.zeta *= dl;
    out.e *= dl;
    return out;
}

}  // namespace

std::vector<TestVectorField> default_test_fields(double cx, double cy, double R) {
    // smooth bump, =0 outside the support disk, with analytic gradient
    auto bump = [R](double rho2, double& b, double& db_dt) {
        const double R2 = R * R;
        if (rho2 >= R2 * (1.0 - 1e-12)) {
            b = 0.0;
            db_dt = 0.0;
            return;
        }
        b = std::exp(1.0 - R2 / (R2 - rho2));
        db_dt = -b * R2 / ((R2 - rho2) * (R2 - rho2));
    };
    auto make = [&](const std::string& name, int which) {
        TestVectorField tf;
        tf.name = name;
        tf.cx = cx;
        tf.cy = cy;
        tf.R = R;
        tf.eval = [bump, cx, cy, which](double x, double y, double X[2], double J[4]) {
            const double u = x - cx, v = y - cy;
            double b, dbt;
            bump(u * u + v * v, b, dbt);
            const double bx = dbt * 2.0 * u, by = dbt * 2.0 * v;
            double F0, F1, F0x, F0y, F1x, F1y;
            switch (which) {
                case 0: F0 = 1; F1 = 0; F0x = F0y = F1x = F1y = 0; break;
                case 1: F0 = 0; F1 = 1; F0x = F0y = F1x = F1y = 0; break;
                case 2: F0 = u; F1 = v; F0x = 1; F0y = 0; F1x = 0; F1y = 1; break;
                case 3: F0 = -v; F1 = u; F0x = 0; F0y = -1; F1x = 1; F1y = 0; break;
                default: F0 = v; F1 = u; F0x = 0; F0y = 1; F1x = 1; F1y = 0; break;
            }
            X[0] = b * F0;
            X[1] = b * F1;
            J[0] = bx * F0 + b * F0x;
            J[1] = by * F0 + b * F0y;
            J[2] = bx * F1 + b * F1x;
            J[3] = by * F1 + b * F1y;
        };
        return tf;
    };
    return {make("translate_x", 0), make("translate_y", 1), make("dilation", 2),
            make("rotation", 3), make("shear", 4)};
}

IdentityReport pohozaev_residual(const Grid2D& g, const Potential& p, double eps, double x0,
                                 double y0, double r, double tol, double conv_tol) {
    require_converged(g, p, eps, conv_tol, "pohozaev_residual");
    require_disk_inside(g, x0, y0, r, 2.0 * g.h);
    DiagnosticSet d = diagnostics(g, p, eps);
    const double lhs = ball_mass(d.zeta, x0, y0, r);
    CircleTerms ct = circle_integrals(d, x0, y0, r);
    const double rhs = 0.25 * r * (ct.mu_tt - ct.mu_rr + 2.0 * ct.zeta);
    IdentityReport rep;
    rep.name = "pohozaev";
    rep.tolerance = tol;
    rep.scale_note = "O(h^2)";
    rep.residual = std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-14});
    rep.pass = rep.residual <= rep.tolerance;
    std::ostringstream os;
    os << "lhs=" << lhs << " rhs=" << rhs;
    rep.detail = os.str();
    return rep;
}

IdentityReport potential_bound_check(const Grid2D& g, const Potential& p, double eps, double x0,
                                     double y0, double r, double conv_tol) {
    require_converged(g, p, eps, conv_tol, "potential_bound_check");
    require_disk_inside(g, x0, y0, r, 2.0 * g.h);
    DiagnosticSet d = diagnostics(g, p, eps);
    const double lhs = ball_mass(d.zeta, x0, y0, r);
    CircleTerms ct = circle_integrals(d, x0, y0, r);
    const double rhs = 0.5 * r * ct.e;
    IdentityReport rep;
    rep.name = "potential_bound";
    rep.tolerance = 1e-2;
    rep.scale_note = "inequality, 1% slack";
    rep.residual = std::max(0.0, lhs - rhs) / std::max(std::abs(rhs), 1e-14);
    rep.pass = lhs <= rhs * (1.0 + 1e-2) + 1e-14;
    std::ostringstream os;
    os << "lhs=" << lhs << " rhs=" << rhs << " slack=" << rhs - lhs;
    rep.detail = os.str();
    return rep;
}

IdentityReport stress_divergence_residual(const Grid2D& g, const Potential& p, double eps,
                                          const std::vector<TestVectorField>& testfields,
                                          double tol, double conv_tol) {
    require_converged(g, p, eps, conv_tol, "stress_divergence_residual");
    DiagnosticSet d = diagnostics(g, p, eps);
    const double xmin = g.ox, xmax = g.ox + (g.nx - 1) * g.h;
    const double ymin = g.oy, ymax = g.oy + (g.ny - 1) * g.h;

    IdentityReport rep;
    rep.name = "stress_divergence";
    rep.tolerance = tol;
    rep.scale_note = "O(h^2)";
    std::ostringstream os;
    double worst = 0.0;
    for (const auto& tf : testfields) {
        if (tf.cx - tf.R < xmin + g.h || tf.cx + tf.R > xmax - g.h || tf.cy - tf.R < ymin + g.h ||
            tf.cy + tf.R > ymax - g.h)
            throw std::invalid_argument("test field support touches the boundary");
        double I = 0.0, N = 0.0;
        double X[2], J[4];
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix) {
                const double x = g.x(ix), y = g.y(iy);
                const double u = x - tf.cx, v = y - tf.cy;
                if (u * u + v * v >= tf.R * tf.R) continue;
                tf.eval(x, y, X, J);
                const double a11 = d.a11.at(ix, iy), a22 = d.a22.at(ix, iy),
                             a12 = d.a12.at(ix, iy);
                I += a11 * J[0] + a12 * J[1] + a12 * J[2] + a22 * J[3];
                const double anorm = std::sqrt(a11 * a11 + 2.0 * a12 * a12 + a22 * a22);
                const double jnorm =
                    std::sqrt(J[0] * J[0] + J[1] * J[1] + J[2] * J[2] + J[3] * J[3]);
                N += anorm * jnorm;
            }
        I *= g.h * g.h;
        N *= g.h * g.h;
        const double res = std::abs(I) / std::max(N, 1e-14);
        os << tf.name << "=" << res << " ";
        worst = std::max(worst, res);
    }
    rep.residual = worst;
    rep.pass = worst <= tol;
    rep.detail = os.str();
    return rep;
}

IdentityReport zeta_monotonicity_report(const RadialScan& scan, double eps, double C) {
    if (scan.r.empty() || scan.r.front() < 4.0 * eps - 1e-12)
        throw std::invalid_argument("zeta_monotonicity_report: radii must start at >= 4 eps");
    double delta = 0.0;
    double running_max = -1e300;
    for (size_t i = 0; i < scan.r.size(); ++i) {
        delta = std::max(delta, running_max - scan.mass_over_r[i]);
        running_max = std::max(running_max, scan.mass_over_r[i]);
    }
    IdentityReport rep;
    rep.name = "zeta_monotonicity";
    rep.tolerance = C * eps;
    rep.scale_note = "O(eps)";
    rep.residual = delta;
    rep.pass = delta <= C * eps;
    std::ostringstream os;
    os << "C=" << C << " eps=" << eps;
    rep.detail = os.str();
    return rep;
}

IdentityReport discrepancy_relation_check(const Grid2D& g, const Potential& p, double eps,
                                          const StripRect& strip, double normal_angle,
                                          double frac_tol) {
    DiagnosticSet d = diagnostics(g, p, eps);
    // straightness gate: the zeta mass inside the strip must be strongly
    // anisotropic (a single straight layer), junction regions are rejected
    double m = 0, mx = 0, my = 0;
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix) {
            const double x = g.x(ix), y = g.y(iy);
            if (x < strip.x0 || x > strip.x1 || y < strip.y0 || y > strip.y1) continue;
            const double z = d.zeta.at(ix, iy);
            m += z;
            mx += z * x;
            my += z * y;
        }
    if (m > 1e-12) {
        mx /= m;
        my /= m;
        double cxx = 0, cyy = 0, cxy = 0;
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix) {
                const double x = g.x(ix), y = g.y(iy);
                if (x < strip.x0 || x > strip.x1 || y < strip.y0 || y > strip.y1) continue;
                const double z = d.zeta.at(ix, iy);
                cxx += z * (x - mx) * (x - mx);
                cyy += z * (y - my) * (y - my);
                cxy += z * (x - mx) * (y - my);
            }
        const double tr = cxx + cyy;
        const double det = cxx * cyy - cxy * cxy;
        const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
        const double l1 = tr / 2.0 + disc, l2 = tr / 2.0 - disc;
        if (l1 > 0 && std::sqrt(std::max(l2, 0.0) / l1) > 0.25)
            throw std::invalid_argument(
                "discrepancy_relation_check: strip interface is not straight");
    }

    FrameFields ff = frame_project(d, normal_angle + M_PI / 2.0);  // e1 = interface tangent
    double r1 = 0, r2 = 0, energy = 0;
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix) {
            const double x = g.x(ix), y = g.y(iy);
            if (x < strip.x0 || x > strip.x1 || y < strip.y0 || y > strip.y1) continue;
            r1 += 2.0 * d.zeta.at(ix, iy) - (ff.mu_perp_perp.at(ix, iy) - ff.mu_par_par.at(ix, iy));
            r2 += ff.mu_perp_par.at(ix, iy);
            energy += d.e.at(ix, iy);
        }
    const double h2 = g.h * g.h;
    r1 = std::abs(r1) * h2;
    r2 = std::abs(r2) * h2;
    energy *= h2;

    IdentityReport rep;
    rep.name = "discrepancy_relation";
    rep.tolerance = frac_tol;
    rep.scale_note = "O(eps) fraction of strip energy";
    rep.residual = std::max(r1, r2) / std::max(energy, 1e-14);
    rep.pass = rep.residual <= frac_tol;
    std::ostringstream os;
    os << "r1=" << r1 << " r2=" << r2 << " strip_energy=" << energy;
    rep.detail = os.str();
    return rep;
}

IdentityReport clearing_out_probe(const Grid2D& g, const Potential& p, const WellConstants& wc,
                                  double eps, double x0, double y0, double r, double eta) {
    if (eps > r) throw std::invalid_argument("clearing_out_probe: needs eps <= r");
    require_disk_inside(g, x0, y0, r, g.h);
    DiagnosticSet d = diagnostics(g, p, eps);
    const double E_r = ball_mass(d.e, x0, y0, r);

    IdentityReport rep;
    rep.name = "clearing_out";
    rep.scale_note = "dichotomy";
    if (E_r / r > eta) {
        rep.applicable = false;
        rep.pass = true;
        rep.residual = E_r / r;
        std::ostringstream os;
        os << "not applicable: E/r=" << E_r / r << " > eta=" << eta;
        rep.detail = os.str();
        return rep;
    }

    // confinement on the 3r/4 subdisk
    double best_sup = 1e300;
    int best_well = -1;
    const double r34 = 0.75 * r;
    for (size_t w = 0; w < p.vacuum.size(); ++w) {
        double sup = 0.0;
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix) {
                const double dx = g.x(ix) - x0, dy = g.y(iy) - y0;
                if (dx * dx + dy * dy > r34 * r34) continue;
                double s = 0;
                for (int q = 0; q < g.k; ++q) {
                    const double dd = g.at(ix, iy)[q] - p.vacuum[w][q];
                    s += dd * dd;
                }
                sup = std::max(sup, std::sqrt(s));
            }
        if (sup < best_sup) {
            best_sup = sup;
            best_well = (int)w;
        }
    }
    const double E_58 = ball_mass(d.e, x0, y0, 0.625 * r);
    const double c_nrg = (E_r > 1e-300) ? E_58 * r / (eps * E_r) : 0.0;

    rep.tolerance = wc.mu0 / 2.0;
    rep.residual = best_sup;
    rep.pass = best_sup <= wc.mu0 / 2.0;
    std::ostringstream os;
    os << "E_over_r=" << E_r / r << " well=" << best_well << " sup_dist=" << best_sup
       << " C_nrg=" << c_nrg;
    rep.detail = os.str();
    return rep;
}

IdentityReport energy_ratio_identity(const Grid2D& g, const Potential& p, double eps, double x0,
                                     double y0, const std::vector<double>& r_grid, double tol,
                                     double conv_tol) {
    require_converged(g, p, eps, conv_tol, "energy_ratio_identity");
    if (r_grid.size() < 2) throw std::invalid_argument("energy_ratio_identity: need >= 2 radii");
    for (double r : r_grid) {
        if (r < 4.0 * eps - 1e-12)
            throw std::invalid_argument("energy_ratio_identity: radii must be >= 4 eps");
        require_disk_inside(g, x0, y0, r, 2.0 * g.h);
    }
    DiagnosticSet d = diagnostics(g, p, eps);
    std::vector<double> ratio(r_grid.size());
    for (size_t i = 0; i < r_grid.size(); ++i)
        ratio[i] = ball_mass(d.e, x0, y0, r_grid[i]) / r_grid[i];

    double max_lhs = 0, max_rhs = 0, max_diff = 0, scale = 0;
    std::ostringstream os;
    for (size_t i = 0; i + 1 < r_grid.size(); ++i) {
        const double rm = 0.5 * (r_grid[i] + r_grid[i + 1]);
        const double lhs = (ratio[i + 1] - ratio[i]) / (r_grid[i + 1] - r_grid[i]);
        CircleTerms ct = circle_integrals(d, x0, y0, rm);
        const double rhs = ball_mass(d.xi, x0, y0, rm) / (rm * rm) + ct.mu_rr / rm;
        max_lhs = std::max(max_lhs, std::abs(lhs));
        max_rhs = std::max(max_rhs, std::abs(rhs));
        max_diff = std::max(max_diff, std::abs(lhs - rhs));
        // both sides are small differences of O(E/r^2) quantities; residuals
        // are judged against that constituent scale
        scale = std::max(scale, ball_mass(d.e, x0, y0, rm) / (rm * rm));
    }
    IdentityReport rep;
    rep.name = "energy_ratio";
    rep.tolerance = tol;
    rep.scale_note = "O(h^2)+O(dr^2)";
    rep.residual = max_diff / std::max(scale, 1e-14);
    rep.pass = rep.residual <= tol;
    os << "max_lhs=" << max_lhs << " max_rhs=" << max_rhs << " max_diff=" << max_diff
       << " scale=" << scale;
    rep.detail = os.str();
    return rep;
}

}  // namespace vecac
