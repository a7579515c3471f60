#include "vecac/potential.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace vecac {

namespace {

std::pair<double, double> hessian_eigen_range(const Potential& p, const double* y) {
    Eigen::MatrixXd H(p.k, p.k);
    std::vector<double> buf(p.k * p.k);
    p.hess(y, buf.data());
    for (int i = 0; i < p.k; ++i)
        for (int j = 0; j < p.k; ++j) H(i, j) = buf[i * p.k + j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    const auto& ev = es.eigenvalues();
    return {ev.minCoeff(), ev.maxCoeff()};
}

// Deterministic unit directions for sphere sampling. k=1 gives {-1,+1},
// k=2 a uniform fan, higher k a fixed-seed random set.
std::vector<std::vector<double>> unit_directions(int k, int n) {
    std::vector<std::vector<double>> dirs;
    if (k == 1) {
        dirs.push_back({1.0});
        dirs.push_back({-1.0});
        return dirs;
    }
    if (k == 2) {
        for (int i = 0; i < n; ++i) {
            double a = 2.0 * M_PI * i / n;
            dirs.push_back({std::cos(a), std::sin(a)});
        }
        return dirs;
    }
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> gauss;
    for (int i = 0; i < n; ++i) {
        std::vector<double> d(k);
        double s = 0;
        for (auto& x : d) {
            x = gauss(rng);
            s += x * x;
        }
        s = std::sqrt(s);
        for (auto& x : d) x /= s;
        dirs.push_back(std::move(d));
    }
    return dirs;
}

double well_distance_min(const Potential& p) {
    double dmin = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < p.vacuum.size(); ++i)
        for (size_t j = i + 1; j < p.vacuum.size(); ++j) {
            double s = 0;
            for (int c = 0; c < p.k; ++c) {
                double d = p.vacuum[i][c] - p.vacuum[j][c];
                s += d * d;
            }
            dmin = std::min(dmin, std::sqrt(s));
        }
    return dmin;
}

double norm2(const std::vector<double>& y) {
    double s = 0;
    for (double v : y) s += v * v;
    return std::sqrt(s);
}

}  // namespace

HypothesesReport validate_hypotheses(const Potential& p, int sample_budget) {
    if (sample_budget < 1000) throw std::invalid_argument("sample_budget must be >= 1000");
    if (!p.eval || !p.grad || !p.hess) throw std::invalid_argument("potential callbacks missing");

    HypothesesReport rep;
    const size_t q = p.vacuum.size();
    if (q < 2) {
        rep.message = "vacuum set has fewer than two wells";
        throw std::invalid_argument(rep.message);
    }
    for (size_t i = 0; i < q; ++i) {
        if ((int)p.vacuum[i].size() != p.k) throw std::invalid_argument("well dimension mismatch");
        double v = p.eval(p.vacuum[i].data());
        if (std::abs(v) > 1e-12) throw std::invalid_argument("V(sigma_i) is not zero");
        for (size_t j = i + 1; j < q; ++j) {
            double s = 0;
            for (int c = 0; c < p.k; ++c) {
                double d = p.vacuum[i][c] - p.vacuum[j][c];
                s += d * d;
            }
            if (std::sqrt(s) < 1e-9) throw std::invalid_argument("two wells coincide");
        }
    }
    rep.h1_ok = true;

    rep.h2_ok = true;
    for (size_t i = 0; i < q; ++i) {
        auto [lo, hi] = hessian_eigen_range(p, p.vacuum[i].data());
        rep.eigen_min.push_back(lo);
        rep.eigen_max.push_back(hi);
        if (lo <= 0) throw std::invalid_argument("Hessian at a well is not positive definite");
    }

    // (H3): sample y.grad V(y)/|y|^2 on spheres of growing radius.
    double R0 = 0;
    for (const auto& s : p.vacuum) R0 = std::max(R0, norm2(s));
    const double r_max = 10.0 * std::max(R0, 1.0);
    const int n_r = 20;
    const int n_dir = std::max(8, sample_budget / (2 * n_r));
    auto dirs = unit_directions(p.k, n_dir);
    double margin = std::numeric_limits<double>::infinity();
    std::vector<double> y(p.k), g(p.k);
    for (int ir = 1; ir <= n_r; ++ir) {
        double r = 2.0 * std::max(R0, 0.5) + (r_max - 2.0 * std::max(R0, 0.5)) * ir / n_r;
        for (const auto& d : dirs) {
            for (int c = 0; c < p.k; ++c) y[c] = r * d[c];
            p.grad(y.data(), g.data());
            double dot = 0;
            for (int c = 0; c < p.k; ++c) dot += y[c] * g[c];
            margin = std::min(margin, dot / (r * r));
        }
    }
    rep.h3_margin = margin;
    rep.h3_sample_radius = r_max;
    rep.h3_ok = margin > 0;
    return rep;
}

WellConstants derive_constants(const Potential& p) {
    HypothesesReport rep = validate_hypotheses(p);
    WellConstants wc;
    const size_t q = p.vacuum.size();
    wc.lambda_minus = rep.eigen_min;
    wc.lambda_plus = rep.eigen_max;
    wc.lambda0 = *std::min_element(rep.eigen_min.begin(), rep.eigen_min.end());
    wc.lambda_max = *std::max_element(rep.eigen_max.begin(), rep.eigen_max.end());
    for (const auto& s : p.vacuum) wc.R0 = std::max(wc.R0, norm2(s));

    const double mu_cap = well_distance_min(p) / 4.0;
    auto dirs = unit_directions(p.k, 24);
    const double radial_fracs[] = {0.25, 0.5, 0.75, 1.0};

    auto admissible = [&](double mu) -> bool {
        std::vector<double> y(p.k);
        // Hessian sandwich on each B(sigma_i, 2 mu).
        for (size_t i = 0; i < q; ++i) {
            for (double f : radial_fracs)
                for (const auto& d : dirs) {
                    for (int c = 0; c < p.k; ++c) y[c] = p.vacuum[i][c] + 2.0 * mu * f * d[c];
                    auto [lo, hi] = hessian_eigen_range(p, y.data());
                    if (lo < 0.5 * rep.eigen_min[i] || hi > 2.0 * rep.eigen_max[i]) return false;
                }
        }
        // Potential floor outside the mu-balls; the near-sphere region is the
        // critical one, the far field is covered by the growth at infinity.
        const double alpha = 0.25 * wc.lambda0 * mu * mu;
        for (size_t i = 0; i < q; ++i) {
            for (double f : {1.0, 1.25, 1.5, 2.0, 3.0})
                for (const auto& d : dirs) {
                    for (int c = 0; c < p.k; ++c) y[c] = p.vacuum[i][c] + mu * f * d[c];
                    bool inside_other = false;
                    for (size_t j = 0; j < q; ++j) {
                        double s = 0;
                        for (int c = 0; c < p.k; ++c) {
                            double dd = y[c] - p.vacuum[j][c];
                            s += dd * dd;
                        }
                        if (std::sqrt(s) < mu) { inside_other = true; break; }
                    }
                    if (!inside_other && p.eval(y.data()) < alpha) return false;
                }
        }
        // Coarse mesh over the hull of the wells.
        const double L = wc.R0 + 1.0;
        if (p.k <= 2) {
            const int m = 33;
            std::vector<double> yy(p.k);
            int total = (p.k == 1) ? m : m * m;
            for (int idx = 0; idx < total; ++idx) {
                yy[0] = -L + 2.0 * L * (idx % m) / (m - 1);
                if (p.k == 2) yy[1] = -L + 2.0 * L * (idx / m) / (m - 1);
                bool inside = false;
                for (size_t j = 0; j < q; ++j) {
                    double s = 0;
                    for (int c = 0; c < p.k; ++c) {
                        double dd = yy[c] - p.vacuum[j][c];
                        s += dd * dd;
                    }
                    if (std::sqrt(s) < mu) { inside = true; break; }
                }
                if (!inside && p.eval(yy.data()) < alpha) return false;
            }
        }
        return true;
    };

    // Dyadic bisection for the largest admissible mu0 <= mu_cap.
    double lo = 0.0, hi = mu_cap, best = -1.0;
    if (admissible(mu_cap)) {
        best = mu_cap;
    } else {
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (lo + hi);
            if (admissible(mid)) {
                best = mid;
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    if (best <= 0) throw std::runtime_error("mu0 bisection failed: no admissible radius");
    wc.mu0 = best;
    wc.alpha0 = 0.25 * wc.lambda0 * wc.mu0 * wc.mu0;

    // Growth constants by sphere sampling out to 10 max(R0,1).
    const double r_far = 10.0 * std::max(wc.R0, 1.0);
    auto far_dirs = unit_directions(p.k, 32);
    double beta = std::numeric_limits<double>::infinity();
    double alpha_inf = std::numeric_limits<double>::infinity();
    std::vector<double> y(p.k), g(p.k);
    const double r_lo = std::max(2.0 * wc.R0, 1e-3);
    wc.R_inf = r_lo;
    for (int ir = 0; ir <= 40; ++ir) {
        double r = r_lo + (r_far - r_lo) * ir / 40.0;
        for (const auto& d : far_dirs) {
            for (int c = 0; c < p.k; ++c) y[c] = r * d[c];
            beta = std::min(beta, p.eval(y.data()) / (r * r));
            p.grad(y.data(), g.data());
            double dot = 0;
            for (int c = 0; c < p.k; ++c) dot += y[c] * g[c];
            alpha_inf = std::min(alpha_inf, dot / (r * r));
        }
    }
    wc.beta_inf = beta;
    wc.alpha_inf = alpha_inf;
    return wc;
}

std::optional<NearestWell> nearest_well(const Potential& p, const WellConstants& wc,
                                        const std::vector<double>& y) {
    double v = p.eval(y.data());
    if (v >= wc.alpha0) return std::nullopt;
    NearestWell out;
    double dbest = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < p.vacuum.size(); ++i) {
        double s = 0;
        for (int c = 0; c < p.k; ++c) {
            double d = y[c] - p.vacuum[i][c];
            s += d * d;
        }
        s = std::sqrt(s);
        if (s < dbest) {
            dbest = s;
            out.index = (int)i;
        }
    }
    out.sigma = p.vacuum[out.index];
    out.bound = std::sqrt(4.0 * v / wc.lambda0);
    return out;
}

Potential builtin_potential(const std::string& name) {
    Potential p;
    p.name = name;
    if (name == "scalar_gl") {
        p.k = 1;
        p.eval = [](const double* y) {
            double t = 1.0 - y[0] * y[0];
            return 0.25 * t * t;
        };
        p.grad = [](const double* y, double* g) { g[0] = y[0] * y[0] * y[0] - y[0]; };
        p.hess = [](const double* y, double* H) { H[0] = 3.0 * y[0] * y[0] - 1.0; };
        p.vacuum = {{-1.0}, {1.0}};
        return p;
    }
    if (name == "vector_gl_decoupled") {
        p.k = 2;
        p.eval = [](const double* y) {
            double a = 1.0 - y[0] * y[0], b = 1.0 - y[1] * y[1];
            return 0.25 * (a * a + b * b);
        };
        p.grad = [](const double* y, double* g) {
            g[0] = y[0] * y[0] * y[0] - y[0];
            g[1] = y[1] * y[1] * y[1] - y[1];
        };
        p.hess = [](const double* y, double* H) {
            H[0] = 3.0 * y[0] * y[0] - 1.0;
            H[1] = H[2] = 0.0;
            H[3] = 3.0 * y[1] * y[1] - 1.0;
        };
        p.vacuum = {{-1.0, -1.0}, {-1.0, 1.0}, {1.0, -1.0}, {1.0, 1.0}};
        return p;
    }
    if (name == "triple_well_equilateral") {
        // V(z) = |z^3 - 1|^2 / 9 on R^2 = C; wells at the cube roots of unity,
        // Hessian 2*Id at each well.
        p.k = 2;
        auto pq = [](const double* y, double& P, double& Q) {
            double u = y[0], v = y[1];
            P = u * u * u - 3.0 * u * v * v - 1.0;
            Q = 3.0 * u * u * v - v * v * v;
        };
        p.eval = [pq](const double* y) {
            double P, Q;
            pq(y, P, Q);
            return (P * P + Q * Q) / 9.0;
        };
        p.grad = [pq](const double* y, double* g) {
            double u = y[0], v = y[1], P, Q;
            pq(y, P, Q);
            double Pu = 3.0 * (u * u - v * v), Pv = -6.0 * u * v;
            double Qu = 6.0 * u * v, Qv = 3.0 * (u * u - v * v);
            g[0] = 2.0 / 9.0 * (P * Pu + Q * Qu);
            g[1] = 2.0 / 9.0 * (P * Pv + Q * Qv);
        };
        p.hess = [pq](const double* y, double* H) {
            double u = y[0], v = y[1], P, Q;
            pq(y, P, Q);
            double Pu = 3.0 * (u * u - v * v), Pv = -6.0 * u * v;
            double Qu = 6.0 * u * v, Qv = 3.0 * (u * u - v * v);
            double Puu = 6.0 * u, Puv = -6.0 * v, Pvv = -6.0 * u;
            double Quu = 6.0 * v, Quv = 6.0 * u, Qvv = -6.0 * v;
            H[0] = 2.0 / 9.0 * (Pu * Pu + P * Puu + Qu * Qu + Q * Quu);
            H[1] = 2.0 / 9.0 * (Pu * Pv + P * Puv + Qu * Qv + Q * Quv);
            H[2] = H[1];
            H[3] = 2.0 / 9.0 * (Pv * Pv + P * Pvv + Qv * Qv + Q * Qvv);
        };
        const double s3 = std::sqrt(3.0) / 2.0;
        p.vacuum = {{1.0, 0.0}, {-0.5, s3}, {-0.5, -s3}};
        return p;
    }
    throw std::invalid_argument("unknown builtin potential: " + name);
}

Potential load_potential(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open potential file: " + path);
    std::string base, line;
    double scale = 1.0;
    std::vector<double> A, b;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq), val = line.substr(eq + 1);
        auto trim = [](std::string& s) {
            s.erase(0, s.find_first_not_of(" \t"));
            s.erase(s.find_last_not_of(" \t") + 1);
        };
        trim(key);
        trim(val);
        if (key == "base") base = val;
        else if (key == "scale") scale = std::stod(val);
        else if (key == "map" || key == "shift") {
            std::istringstream iss(val);
            double x;
            auto& dst = (key == "map") ? A : b;
            while (iss >> x) dst.push_back(x);
        }
    }
    if (base.empty()) throw std::runtime_error("potential file missing 'base'");
    Potential pb = builtin_potential(base);
    const int k = pb.k;
    if (A.empty()) {
        A.assign(k * k, 0.0);
        for (int i = 0; i < k; ++i) A[i * k + i] = 1.0;
    }
    if (b.empty()) b.assign(k, 0.0);
    if ((int)A.size() != k * k || (int)b.size() != k)
        throw std::runtime_error("potential file: map/shift dimension mismatch");

    Eigen::MatrixXd Am(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) Am(i, j) = A[i * k + j];
    if (std::abs(Am.determinant()) < 1e-12) throw std::runtime_error("potential map not invertible");
    Eigen::MatrixXd Ainv = Am.inverse();

    Potential p;
    p.k = k;
    p.name = base + "_affine";
    // V(y) = scale * V_base(A y + b)
    p.eval = [pb, A, b, scale, k](const double* y) {
        std::vector<double> z(k, 0.0);
        for (int i = 0; i < k; ++i) {
            z[i] = b[i];
            for (int j = 0; j < k; ++j) z[i] += A[i * k + j] * y[j];
        }
        return scale * pb.eval(z.data());
    };
    p.grad = [pb, A, b, scale, k](const double* y, double* g) {
        std::vector<double> z(k, 0.0), gb(k);
        for (int i = 0; i < k; ++i) {
            z[i] = b[i];
            for (int j = 0; j < k; ++j) z[i] += A[i * k + j] * y[j];
        }
        pb.grad(z.data(), gb.data());
        for (int j = 0; j < k; ++j) {
            g[j] = 0;
            for (int i = 0; i < k; ++i) g[j] += scale * A[i * k + j] * gb[i];
        }
    };
    p.hess = [pb, A, b, scale, k](const double* y, double* H) {
        std::vector<double> z(k, 0.0), Hb(k * k);
        for (int i = 0; i < k; ++i) {
            z[i] = b[i];
            for (int j = 0; j < k; ++j) z[i] += A[i * k + j] * y[j];
        }
        pb.hess(z.data(), Hb.data());
        for (int a = 0; a < k; ++a)
            for (int c = 0; c < k; ++c) {
                double s = 0;
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) s += A[i * k + a] * Hb[i * k + j] * A[j * k + c];
                H[a * k + c] = scale * s;
            }
    };
    for (const auto& sb : pb.vacuum) {
        Eigen::VectorXd sv(k);
        for (int i = 0; i < k; ++i) sv(i) = sb[i] - b[i];
        Eigen::VectorXd yw = Ainv * sv;
        std::vector<double> w(k);
        for (int i = 0; i < k; ++i) w[i] = yw(i);
        p.vacuum.push_back(std::move(w));
    }
    return p;
}

Potential resolve_potential(const std::string& spec) {
    if (spec.rfind("file:", 0) == 0) return load_potential(spec.substr(5));
    return builtin_potential(spec);
}

}  // namespace vecac
