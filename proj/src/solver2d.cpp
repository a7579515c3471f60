#include "vecac/solver2d.hpp"

#include "vecac/profile1d.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace vecac {

namespace {

inline int wrap(int i, int n) { return (i % n + n) % n; }

inline bool periodic_x(const Grid2D& g) {
    return g.bc.kind == BCKind::Periodic && g.bc.periodic_x;
}
inline bool periodic_y(const Grid2D& g) {
    return g.bc.kind == BCKind::Periodic && g.bc.periodic_y;
}

// nodes updated by the solver; Dirichlet boundary rows stay frozen
inline bool active_node(const Grid2D& g, int ix, int iy) {
    if (!periodic_x(g) && (ix == 0 || ix == g.nx - 1)) return false;
    if (!periodic_y(g) && (iy == 0 || iy == g.ny - 1)) return false;
    return true;
}

// Delta u - eps^-2 grad V(u) at one node, written into r[k]
inline void pde_rhs(const Grid2D& g, const Potential& p, double eps, int ix, int iy,
                    double* gradbuf, double* r) {
    const int k = g.k;
    const double inv_h2 = 1.0 / (g.h * g.h);
    const double* c = g.at(ix, iy);
    const double* e = g.at(periodic_x(g) ? wrap(ix + 1, g.nx) : ix + 1, iy);
    const double* w = g.at(periodic_x(g) ? wrap(ix - 1, g.nx) : ix - 1, iy);
    const double* n = g.at(ix, periodic_y(g) ? wrap(iy + 1, g.ny) : iy + 1);
    const double* s = g.at(ix, periodic_y(g) ? wrap(iy - 1, g.ny) : iy - 1);
    p.grad(c, gradbuf);
    for (int q = 0; q < k; ++q)
        r[q] = (e[q] + w[q] + n[q] + s[q] - 4.0 * c[q]) * inv_h2 - gradbuf[q] / (eps * eps);
}

double max_well_hessian_eigen(const Potential& p) {
    double lmax = 0.0;
    Eigen::MatrixXd H(p.k, p.k);
    std::vector<double> buf(p.k * p.k);
    for (const auto& s : p.vacuum) {
        p.hess(s.data(), buf.data());
        for (int i = 0; i < p.k; ++i)
            for (int j = 0; j < p.k; ++j) H(i, j) = buf[i * p.k + j];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
        lmax = std::max(lmax, es.eigenvalues().maxCoeff());
    }
    return std::max(lmax, 1e-12);
}

}  // namespace

std::vector<double> residual_field(const Grid2D& g, const Potential& p, double eps) {
    std::vector<double> out((size_t)g.nx * g.ny, 0.0);
    std::vector<double> gbuf(g.k), r(g.k);
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix) {
            if (!active_node(g, ix, iy)) continue;
            pde_rhs(g, p, eps, ix, iy, gbuf.data(), r.data());
            double s = 0;
            for (int q = 0; q < g.k; ++q) s += r[q] * r[q];
            out[(size_t)iy * g.nx + ix] = std::sqrt(s);
        }
    return out;
}

double sup_residual(const Grid2D& g, const Potential& p, double eps) {
    double sup = 0.0;
    std::vector<double> gbuf(g.k), r(g.k);
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix) {
            if (!active_node(g, ix, iy)) continue;
            pde_rhs(g, p, eps, ix, iy, gbuf.data(), r.data());
            double s = 0;
            for (int q = 0; q < g.k; ++q) s += r[q] * r[q];
            sup = std::max(sup, std::sqrt(s));
        }
    return sup;
}

double discrete_energy(const Grid2D& g, const Potential& p, double eps) {
    const int k = g.k;
    double e = 0.0;
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix) {
            const double* c = g.at(ix, iy);
            if (ix + 1 < g.nx || periodic_x(g)) {
                const double* r = g.at(wrap(ix + 1, g.nx), iy);
                double s = 0;
                for (int q = 0; q < k; ++q) s += (r[q] - c[q]) * (r[q] - c[q]);
                e += 0.5 * eps * s;
            }
            if (iy + 1 < g.ny || periodic_y(g)) {
                const double* t = g.at(ix, wrap(iy + 1, g.ny));
                double s = 0;
                for (int q = 0; q < k; ++q) s += (t[q] - c[q]) * (t[q] - c[q]);
                e += 0.5 * eps * s;
            }
            e += p.eval(c) / eps * g.h * g.h;
        }
    return e;
}

IterationReport gradient_flow(Grid2D& g, const Potential& p, const SolveConfig& cfg) {
    IterationReport rep;
    const double eps = cfg.eps;
    const double lmax = max_well_hessian_eigen(p);
    const double dt = cfg.dt_safety * std::min(g.h * g.h / 4.0, eps * eps / (2.0 * lmax));

    std::vector<double> rhs(g.values.size(), 0.0);
    std::vector<double> gbuf(g.k), r(g.k);
    double prev_energy = discrete_energy(g, p, eps);
    int bad_steps = 0;

    for (int it = 0; it < cfg.max_iters; ++it) {
        double sup = 0.0;
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix) {
                if (!active_node(g, ix, iy)) continue;
                pde_rhs(g, p, eps, ix, iy, gbuf.data(), r.data());
                double s = 0;
                double* dst = rhs.data() + g.idx(ix, iy);
                for (int q = 0; q < g.k; ++q) {
                    dst[q] = r[q];
                    s += r[q] * r[q];
                }
                sup = std::max(sup, std::sqrt(s));
            }
        rep.sup_residual = sup;
        rep.scaled_residual = eps * eps * sup;
        if (it % 100 == 0) rep.history.push_back(rep.scaled_residual);
        if (rep.scaled_residual <= cfg.tol) {
            rep.converged = true;
            rep.iters = it;
            return rep;
        }
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix) {
                if (!active_node(g, ix, iy)) continue;
                double* u = g.at(ix, iy);
                const double* dst = rhs.data() + g.idx(ix, iy);
                for (int q = 0; q < g.k; ++q) u[q] += dt * dst[q];
            }
        double energy = discrete_energy(g, p, eps);
        if (energy > prev_energy + 1e-12) {
            if (++bad_steps >= 10) {
                rep.diverged = true;
                rep.iters = it + 1;
                rep.message = "energy increased for 10 consecutive steps";
                return rep;
            }
        } else {
            bad_steps = 0;
        }
        prev_energy = energy;
        rep.iters = it + 1;
    }
    rep.message = "max_iters reached";
    return rep;
}

IterationReport newton_solve(Grid2D& g, const Potential& p, const SolveConfig& cfg) {
    IterationReport rep;
    const double eps = cfg.eps;
    const int k = g.k;
    const size_t nval = g.values.size();

    double res = sup_residual(g, p, eps);
    if (eps * eps * res > cfg.newton_switch_tol)
        throw std::invalid_argument("newton_solve: residual above switch tolerance, "
                                    "run gradient_flow first");
    rep.history.push_back(eps * eps * res);

    // per-node Hessians frozen at the current iterate for the CG apply
    std::vector<double> hess((size_t)g.nx * g.ny * k * k, 0.0);
    auto refresh_hessians = [&] {
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix)
                p.hess(g.at(ix, iy), hess.data() + ((size_t)iy * g.nx + ix) * k * k);
    };
    // J v = -Delta v + eps^-2 H(u) v on active nodes, v = 0 on frozen ones
    auto apply_J = [&](const std::vector<double>& v, std::vector<double>& out) {
        const double inv_h2 = 1.0 / (g.h * g.h);
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix) {
                double* o = out.data() + g.idx(ix, iy);
                if (!active_node(g, ix, iy)) {
                    for (int q = 0; q < k; ++q) o[q] = 0.0;
                    continue;
                }
                const double* c = v.data() + g.idx(ix, iy);
                const double* e = v.data() + g.idx(periodic_x(g) ? wrap(ix + 1, g.nx) : ix + 1, iy);
                const double* w = v.data() + g.idx(periodic_x(g) ? wrap(ix - 1, g.nx) : ix - 1, iy);
                const double* n = v.data() + g.idx(ix, periodic_y(g) ? wrap(iy + 1, g.ny) : iy + 1);
                const double* s = v.data() + g.idx(ix, periodic_y(g) ? wrap(iy - 1, g.ny) : iy - 1);
                const double* H = hess.data() + ((size_t)iy * g.nx + ix) * k * k;
                for (int q = 0; q < k; ++q) {
                    double hv = 0;
                    for (int m = 0; m < k; ++m) hv += H[q * k + m] * c[m];
                    o[q] = -(e[q] + w[q] + n[q] + s[q] - 4.0 * c[q]) * inv_h2 + hv / (eps * eps);
                }
            }
    };
    auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0;
        for (size_t i = 0; i < nval; ++i) s += a[i] * b[i];
        return s;
    };

    std::vector<double> rvec(nval, 0.0), delta(nval), cg_r(nval), cg_p(nval), cg_q(nval);
    std::vector<double> gbuf(k), rb(k);
    auto fill_residual_vec = [&] {
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix) {
                double* dst = rvec.data() + g.idx(ix, iy);
                if (!active_node(g, ix, iy)) {
                    for (int q = 0; q < k; ++q) dst[q] = 0.0;
                    continue;
                }
                pde_rhs(g, p, eps, ix, iy, gbuf.data(), rb.data());
                for (int q = 0; q < k; ++q) dst[q] = rb[q];
            }
    };

    const int max_newton = 30;
    int fallbacks = 0;
    for (int step = 0; step < max_newton; ++step) {
        if (eps * eps * res <= cfg.tol) {
            rep.converged = true;
            break;
        }
        refresh_hessians();
        fill_residual_vec();

        // CG on J delta = r
        std::fill(delta.begin(), delta.end(), 0.0);
        cg_r = rvec;
        cg_p = cg_r;
        double rr = dot(cg_r, cg_r);
        const double rr_target = rr * 1e-4;  // relative tolerance 1e-2 on the norm
        bool indefinite = false;
        const int max_cg = 20 * std::max(g.nx, g.ny);
        for (int ci = 0; ci < max_cg && rr > rr_target; ++ci) {
            apply_J(cg_p, cg_q);
            double pq = dot(cg_p, cg_q);
            if (pq <= 0) {
                indefinite = true;
                break;
            }
            double alpha = rr / pq;
            for (size_t i = 0; i < nval; ++i) {
                delta[i] += alpha * cg_p[i];
                cg_r[i] -= alpha * cg_q[i];
            }
            double rr_new = dot(cg_r, cg_r);
            double beta = rr_new / rr;
            rr = rr_new;
            for (size_t i = 0; i < nval; ++i) cg_p[i] = cg_r[i] + beta * cg_p[i];
        }

        bool accepted = false;
        if (!indefinite) {
            std::vector<double> saved = g.values;
            double t = 1.0;
            for (int half = 0; half < 20; ++half, t *= 0.5) {
                for (size_t i = 0; i < nval; ++i) g.values[i] = saved[i] + t * delta[i];
                double res_new = sup_residual(g, p, eps);
                if (res_new < res) {
                    res = res_new;
                    accepted = true;
                    break;
                }
            }
            if (!accepted) g.values = saved;
        }
        if (!accepted) {
            // stalled or indefinite linearization: relax with gradient flow
            if (++fallbacks > 3) {
                rep.message = "newton stalled after repeated fallbacks";
                break;
            }
            SolveConfig relax = cfg;
            relax.max_iters = 500;
            gradient_flow(g, p, relax);
            res = sup_residual(g, p, eps);
        }
        rep.iters = step + 1;
        rep.history.push_back(eps * eps * res);
    }
    rep.sup_residual = res;
    rep.scaled_residual = eps * eps * res;
    if (rep.scaled_residual <= cfg.tol) rep.converged = true;
    return rep;
}

SeedKind parse_seed_kind(const std::string& name) {
    if (name == "planar") return SeedKind::Planar;
    if (name == "cross") return SeedKind::Cross;
    if (name == "triple_junction") return SeedKind::TripleJunction;
    if (name == "random") return SeedKind::Random;
    if (name == "constant") return SeedKind::Constant;
    throw std::invalid_argument("unknown seed kind: " + name);
}

Grid2D seed(SeedKind kind, const Grid2D& shape, const Potential& p, double eps,
            const SeedParams& sp) {
    Grid2D g = Grid2D::make(shape.nx, shape.ny, p.k, shape.h, shape.ox, shape.oy, shape.bc);
    const double cx = shape.ox + 0.5 * (shape.nx - 1) * shape.h;
    const double cy = shape.oy + 0.5 * (shape.ny - 1) * shape.h;

    switch (kind) {
        case SeedKind::Constant: {
            if (sp.well_index < 0 || sp.well_index >= (int)p.vacuum.size())
                throw std::invalid_argument("constant seed: well index out of range");
            for (int iy = 0; iy < g.ny; ++iy)
                for (int ix = 0; ix < g.nx; ++ix)
                    for (int q = 0; q < g.k; ++q)
                        g.at(ix, iy)[q] = p.vacuum[sp.well_index][q];
            break;
        }
        case SeedKind::Planar: {
            if (p.k != 1) throw std::invalid_argument("planar seed needs a scalar potential");
            double s0 = p.vacuum[0][0], s1 = p.vacuum[1][0];
            if (s0 > s1) std::swap(s0, s1);
            const double diag = std::hypot(g.nx * g.h, g.ny * g.h);
            Profile1D prof = solve_profile_firstorder(p, eps, s0, s1, 0.75 * diag, 4097);
            const double ds = prof.s[1] - prof.s[0];
            auto sample = [&](double d) {
                if (d <= prof.s.front()) return prof.w.front();
                if (d >= prof.s.back()) return prof.w.back();
                double t = (d - prof.s.front()) / ds;
                int i = std::min((int)t, (int)prof.s.size() - 2);
                double f = t - i;
                return (1.0 - f) * prof.w[i] + f * prof.w[i + 1];
            };
            const double cg = std::cos(sp.angle), sg = std::sin(sp.angle);
            for (int iy = 0; iy < g.ny; ++iy)
                for (int ix = 0; ix < g.nx; ++ix) {
                    double d = (g.x(ix) - cx) * cg + (g.y(iy) - cy) * sg;
                    g.at(ix, iy)[0] = sample(d);
                }
            break;
        }
        case SeedKind::Cross: {
            if (p.k != 2) throw std::invalid_argument("cross seed needs a 2-component potential");
            const double c = 1.0 / (std::sqrt(2.0) * eps);
            for (int iy = 0; iy < g.ny; ++iy)
                for (int ix = 0; ix < g.nx; ++ix) {
                    g.at(ix, iy)[0] = std::tanh((g.x(ix) - cx) * c);
                    g.at(ix, iy)[1] = std::tanh((g.y(iy) - cy) * c);
                }
            break;
        }
        case SeedKind::TripleJunction: {
            if (p.vacuum.size() < 3)
                throw std::invalid_argument("triple_junction seed needs at least three wells");
            if (p.k != 2) throw std::invalid_argument("triple_junction seed needs k = 2");
            // angular Gaussian partition: wedge per well with transitions of
            // width ~eps across the sector boundaries
            std::vector<double> phi;
            for (const auto& s : p.vacuum) phi.push_back(std::atan2(s[1], s[0]));
            for (int iy = 0; iy < g.ny; ++iy)
                for (int ix = 0; ix < g.nx; ++ix) {
                    double dx = g.x(ix) - cx, dy = g.y(iy) - cy;
                    double r = std::hypot(dx, dy), th = std::atan2(dy, dx);
                    double wsum = 0, u0 = 0, u1 = 0;
                    for (size_t i = 0; i < phi.size(); ++i) {
                        double dth = std::remainder(th - phi[i], 2.0 * M_PI);
                        double d = r * dth / eps;
                        double wgt = std::exp(-0.5 * d * d);
                        wsum += wgt;
                        u0 += wgt * p.vacuum[i][0];
                        u1 += wgt * p.vacuum[i][1];
                    }
                    if (wsum < 1e-300) wsum = 1.0;
                    g.at(ix, iy)[0] = u0 / wsum;
                    g.at(ix, iy)[1] = u1 / wsum;
                }
            break;
        }
        case SeedKind::Random: {
            std::vector<double> lo(p.k, 1e300), hi(p.k, -1e300);
            for (const auto& s : p.vacuum)
                for (int q = 0; q < p.k; ++q) {
                    lo[q] = std::min(lo[q], s[q] - sp.amplitude);
                    hi[q] = std::max(hi[q], s[q] + sp.amplitude);
                }
            std::mt19937_64 rng(sp.rng_seed);
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            for (int iy = 0; iy < g.ny; ++iy)
                for (int ix = 0; ix < g.nx; ++ix)
                    for (int q = 0; q < g.k; ++q)
                        g.at(ix, iy)[q] = lo[q] + (hi[q] - lo[q]) * unif(rng);
            break;
        }
    }
    return g;
}

}  // namespace vecac
