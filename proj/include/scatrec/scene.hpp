#pragma once

#include "scatrec/geometry.hpp"

#include <cstdint>

namespace scatrec {

VoxelGrid make_grid(int dim, const std::array<int, 3>& shape, double spacing, const Point& origin);

// Analytic description of the three-ball phantom fitted to a grid box.
// All lengths scale with `scale` relative to the nominal 70 x 70 x 40 box.
struct ThreeBallGeometry {
    double scale = 1.0;
    double radius = 12.0;
    std::array<Point, 3> centers{Point{20, 20, 15}, Point{50, 24, 15}, Point{33, 48, 15}};
    std::array<double, 3> eta{1.275, 1.275, 1.885};
    double clearance = 3.0; // lowest point above the bottom face
    double min_gap = 5.0;   // pairwise surface separation
};

// Geometry scaled into the given 3D grid box; throws GeometryError if the
// placement constraints cannot be verified inside the box.
ThreeBallGeometry three_ball_geometry(const VoxelGrid& grid);

// Voxelized phantom: cell value = sphere eta when the cell center lies
// inside a sphere, else 0.
SusceptibilityField three_ball_phantom(const VoxelGrid& grid);

// Planar cut of the three-ball model at height z_plane, as disks on a 2D
// grid whose box matches the x-y box of the scaled model.
SusceptibilityField three_ball_slice(const VoxelGrid& grid2d, const ThreeBallGeometry& geom,
                                     double z_plane);

// Smooth Gaussian bump, eta(r) = amplitude * exp(-|r-center|^2 / width^2).
SusceptibilityField gaussian_bump_phantom(const VoxelGrid& grid, const Point& center, double width,
                                          double amplitude);

// n_s positions i.i.d. uniform over the grid bounding box.
SourceSet place_sources_random(const VoxelGrid& grid, int n_s, std::uint64_t seed);

// Regular lattice of sources: n x n (x n) nodes at (i+1) * extent/(n+1) per
// axis, strictly interior to the box.
SourceSet place_sources_lattice(const VoxelGrid& grid, int n_per_axis);

// L-shaped detector arrangement. 2D: equally spaced angles over [0, 90 deg].
// 3D: two orthogonal quarter arcs (x-z and y-z planes) sharing the z axis
// direction once; the x-z arc gets the extra direction when n_d is even.
DetectorSet l_shape_detectors(int dim, int n_d);

} // namespace scatrec
