#include "vecac/grid.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vecac {

Grid2D Grid2D::make(int nx, int ny, int k, double h, double ox, double oy, BC bc) {
    if (nx < 8 || ny < 8) throw std::invalid_argument("grid needs nx, ny >= 8");
    if (h <= 0) throw std::invalid_argument("grid spacing must be positive");
    if (k < 1) throw std::invalid_argument("value dimension must be >= 1");
    Grid2D g;
    g.nx = nx;
    g.ny = ny;
    g.k = k;
    g.h = h;
    g.ox = ox;
    g.oy = oy;
    g.bc = bc;
    g.values.assign((size_t)nx * ny * k, 0.0);
    return g;
}

static_assert(std::endian::native == std::endian::little, "VAC1 writer assumes little-endian");

void save_vac1(const Grid2D& g, double eps, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    std::ostringstream hdr;
    hdr.precision(17);
    hdr << "VAC1 " << g.nx << " " << g.ny << " " << g.k << " " << g.h << " " << eps << "\n";
    out << hdr.str();
    out.write(reinterpret_cast<const char*>(g.values.data()),
              (std::streamsize)(g.values.size() * sizeof(double)));
    if (!out) throw std::runtime_error("write failed: " + path);
}

LoadedField load_vac1(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("truncated VAC1 header");
    std::istringstream hdr(line);
    std::string magic;
    int nx, ny, k;
    double h, eps;
    if (!(hdr >> magic >> nx >> ny >> k >> h >> eps) || magic != "VAC1")
        throw std::runtime_error("bad VAC1 header in " + path);
    LoadedField lf;
    lf.grid = Grid2D::make(nx, ny, k, h, 0.0, 0.0);
    lf.eps = eps;
    in.read(reinterpret_cast<char*>(lf.grid.values.data()),
            (std::streamsize)(lf.grid.values.size() * sizeof(double)));
    if ((size_t)in.gcount() != lf.grid.values.size() * sizeof(double))
        throw std::runtime_error("truncated VAC1 payload in " + path);
    return lf;
}

}  // namespace vecac
