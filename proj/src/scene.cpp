#include "scatrec/scene.hpp"

#include "scatrec/errors.hpp"
#include "scatrec/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace scatrec {

VoxelGrid make_grid(int dim, const std::array<int, 3>& shape, double spacing, const Point& origin) {
    if (dim != 2 && dim != 3) throw std::invalid_argument("make_grid: dim must be 2 or 3");
    if (!(spacing > 0.0)) throw std::invalid_argument("make_grid: spacing must be positive");
    for (int a = 0; a < dim; ++a)
        if (shape[a] < 1) throw std::invalid_argument("make_grid: shape entries must be >= 1");
    VoxelGrid g;
    g.dim = dim;
    g.shape = shape;
    if (dim == 2) g.shape[2] = 1;
    g.spacing = spacing;
    g.origin = origin;
    return g;
}

ThreeBallGeometry three_ball_geometry(const VoxelGrid& grid) {
    if (grid.dim != 3) throw GeometryError("three_ball_phantom: grid must be 3D");
    const double sx = grid.extent(0) / 70.0;
    const double sy = grid.extent(1) / 70.0;
    const double sz = grid.extent(2) / 40.0;
    const double s = std::min({sx, sy, sz});

    ThreeBallGeometry geom;
    geom.scale = s;
    geom.radius *= s;
    geom.clearance *= s;
    geom.min_gap *= s;
    for (auto& c : geom.centers) c = grid.origin + c * s;

    // verify every stated constraint against the actual box
    for (const auto& c : geom.centers) {
        for (int a = 0; a < 3; ++a) {
            if (c[a] - geom.radius < grid.origin[a] - 1e-9 ||
                c[a] + geom.radius > grid.origin[a] + grid.extent(a) + 1e-9)
                throw GeometryError("three_ball_phantom: sphere does not fit inside the grid box");
        }
        double lowest = c.z - geom.radius - grid.origin.z;
        if (std::abs(lowest - geom.clearance) > 1e-9 * std::max(1.0, geom.clearance))
            throw GeometryError("three_ball_phantom: bottom clearance constraint violated");
    }
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            double gap = distance(geom.centers[i], geom.centers[j]) - 2.0 * geom.radius;
            if (gap < geom.min_gap - 1e-9)
                throw GeometryError("three_ball_phantom: sphere gap below minimum, gap=" +
                                    std::to_string(gap));
        }
    return geom;
}

SusceptibilityField three_ball_phantom(const VoxelGrid& grid) {
    ThreeBallGeometry geom = three_ball_geometry(grid);
    SusceptibilityField f;
    f.grid = grid;
    f.values.assign(grid.num_cells(), 0.0);
    const double r2 = geom.radius * geom.radius;
    for (int ix = 0; ix < grid.shape[0]; ++ix)
        for (int iy = 0; iy < grid.shape[1]; ++iy)
            for (int iz = 0; iz < grid.shape[2]; ++iz) {
                Point p = grid.cell_center(ix, iy, iz);
                for (int b = 0; b < 3; ++b) {
                    Point d = p - geom.centers[b];
                    if (Point::dot(d, d) < r2) {
                        f.values[grid.cell_id(ix, iy, iz)] = geom.eta[b];
                        break;
                    }
                }
            }
    return f;
}

SusceptibilityField three_ball_slice(const VoxelGrid& grid2d, const ThreeBallGeometry& geom,
                                     double z_plane) {
    if (grid2d.dim != 2) throw GeometryError("three_ball_slice: grid must be 2D");
    SusceptibilityField f;
    f.grid = grid2d;
    f.values.assign(grid2d.num_cells(), 0.0);
    for (int ix = 0; ix < grid2d.shape[0]; ++ix)
        for (int iy = 0; iy < grid2d.shape[1]; ++iy) {
            Point p = grid2d.cell_center(ix, iy);
            for (int b = 0; b < 3; ++b) {
                double dz = z_plane - geom.centers[b].z;
                double disk2 = geom.radius * geom.radius - dz * dz;
                if (disk2 <= 0.0) continue;
                double dx = p.x - geom.centers[b].x;
                double dy = p.y - geom.centers[b].y;
                if (dx * dx + dy * dy < disk2) {
                    f.values[grid2d.cell_id(ix, iy)] = geom.eta[b];
                    break;
                }
            }
        }
    return f;
}

SusceptibilityField gaussian_bump_phantom(const VoxelGrid& grid, const Point& center, double width,
                                          double amplitude) {
    if (!(width > 0.0)) throw std::invalid_argument("gaussian_bump_phantom: width must be positive");
    SusceptibilityField f;
    f.grid = grid;
    f.values.resize(grid.num_cells());
    for (std::size_t id = 0; id < grid.num_cells(); ++id) {
        Point d = grid.cell_center_by_id(id) - center;
        double r2 = d.x * d.x + d.y * d.y + (grid.dim == 3 ? d.z * d.z : 0.0);
        f.values[id] = amplitude * std::exp(-r2 / (width * width));
    }
    return f;
}

SourceSet place_sources_random(const VoxelGrid& grid, int n_s, std::uint64_t seed) {
    if (n_s < 1) throw std::invalid_argument("place_sources_random: n_s must be >= 1");
    CounterRng rng(seed);
    SourceSet s;
    s.positions.reserve(n_s);
    for (int i = 0; i < n_s; ++i) {
        Point p;
        for (int a = 0; a < grid.dim; ++a)
            p[a] = rng.uniform(grid.origin[a], grid.origin[a] + grid.extent(a));
        s.positions.push_back(p);
    }
    s.amplitudes.assign(n_s, 1.0);
    return s;
}

SourceSet place_sources_lattice(const VoxelGrid& grid, int n_per_axis) {
    if (n_per_axis < 1) throw std::invalid_argument("place_sources_lattice: n must be >= 1");
    SourceSet s;
    if (grid.dim == 2) {
        for (int i = 0; i < n_per_axis; ++i)
            for (int j = 0; j < n_per_axis; ++j)
                s.positions.push_back({grid.origin.x + (i + 1) * grid.extent(0) / (n_per_axis + 1),
                                       grid.origin.y + (j + 1) * grid.extent(1) / (n_per_axis + 1)});
    } else {
        for (int i = 0; i < n_per_axis; ++i)
            for (int j = 0; j < n_per_axis; ++j)
                for (int k = 0; k < n_per_axis; ++k)
                    s.positions.push_back(
                        {grid.origin.x + (i + 1) * grid.extent(0) / (n_per_axis + 1),
                         grid.origin.y + (j + 1) * grid.extent(1) / (n_per_axis + 1),
                         grid.origin.z + (k + 1) * grid.extent(2) / (n_per_axis + 1)});
    }
    s.amplitudes.assign(s.positions.size(), 1.0);
    return s;
}

DetectorSet l_shape_detectors(int dim, int n_d) {
    if (dim != 2 && dim != 3) throw std::invalid_argument("l_shape_detectors: dim must be 2 or 3");
    if (n_d < 2) throw std::invalid_argument("l_shape_detectors: n_d must be >= 2");
    DetectorSet d;
    d.dim = dim;
    const double half_pi = 1.5707963267948966192;
    if (dim == 2) {
        for (int i = 0; i < n_d; ++i) {
            double a = half_pi * i / (n_d - 1);
            d.directions.push_back({std::cos(a), std::sin(a)});
        }
        return d;
    }
    // two quarter arcs sharing +z; m1 includes z, the second arc omits it
    int m1 = (n_d + 2) / 2;
    int m2 = n_d + 1 - m1;
    for (int i = 0; i < m1; ++i) {
        double a = half_pi * i / (m1 - 1);
        d.directions.push_back({std::cos(a), 0.0, std::sin(a)});
    }
    for (int i = 0; i < m2 - 1; ++i) { // stop before the shared z direction
        double a = half_pi * i / (m2 - 1);
        d.directions.push_back({0.0, std::cos(a), std::sin(a)});
    }
    return d;
}

} // namespace scatrec
