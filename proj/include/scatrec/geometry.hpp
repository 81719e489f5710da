#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace scatrec {

// Point in 2 or 3 dimensions; the third component is 0 and ignored in 2D.
struct Point {
    double x = 0.0, y = 0.0, z = 0.0;

    constexpr Point() = default;
    constexpr Point(double x_, double y_, double z_ = 0.0) : x(x_), y(y_), z(z_) {}

    constexpr Point operator+(const Point& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Point operator-(const Point& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Point operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Point operator/(double s) const { return {x / s, y / s, z / s}; }

    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    static double dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline double distance(const Point& a, const Point& b) { return (a - b).norm(); }

// Uniform rectangular grid of cells. Cell centers are origin + (index + 1/2)*h.
// Linear cell ids are row-major with the last axis fastest.
struct VoxelGrid {
    int dim = 2;                     // 2 or 3
    std::array<int, 3> shape{1, 1, 1}; // cells per axis; shape[2]==1 in 2D
    double spacing = 1.0;            // h, same along every axis [nm]
    Point origin{};                  // corner of the box

    std::size_t num_cells() const {
        return static_cast<std::size_t>(shape[0]) * shape[1] * (dim == 3 ? shape[2] : 1);
    }

    // Box side length along axis a.
    double extent(int a) const { return shape[a] * spacing; }
    double max_extent() const {
        double m = extent(0);
        for (int a = 1; a < dim; ++a) m = std::max(m, extent(a));
        return m;
    }

    Point cell_center(int ix, int iy, int iz = 0) const {
        return {origin.x + (ix + 0.5) * spacing,
                origin.y + (iy + 0.5) * spacing,
                dim == 3 ? origin.z + (iz + 0.5) * spacing : 0.0};
    }

    std::size_t cell_id(int ix, int iy, int iz = 0) const {
        if (dim == 2) return static_cast<std::size_t>(ix) * shape[1] + iy;
        return (static_cast<std::size_t>(ix) * shape[1] + iy) * shape[2] + iz;
    }

    Point cell_center_by_id(std::size_t id) const {
        if (dim == 2) {
            int ix = static_cast<int>(id / shape[1]);
            int iy = static_cast<int>(id % shape[1]);
            return cell_center(ix, iy);
        }
        int iz = static_cast<int>(id % shape[2]);
        std::size_t r = id / shape[2];
        int iy = static_cast<int>(r % shape[1]);
        int ix = static_cast<int>(r / shape[1]);
        return cell_center(ix, iy, iz);
    }

    bool contains(const Point& p) const {
        for (int a = 0; a < dim; ++a) {
            double lo = origin[a], hi = origin[a] + extent(a);
            if (p[a] < lo || p[a] > hi) return false;
        }
        return true;
    }

    // Cell containing p. Points on a boundary go to the lower-index cell;
    // coordinates are clamped into the box first.
    std::size_t cell_containing(const Point& p) const;
};

// Scalar susceptibility per grid cell.
struct SusceptibilityField {
    VoxelGrid grid;
    std::vector<double> values; // one per cell, linear cell-id order
};

struct SourceSet {
    std::vector<Point> positions;
    std::vector<double> amplitudes; // same length; defaults to 1
};

struct DetectorSet {
    int dim = 2;
    std::vector<Point> directions; // unit vectors
};

// Fixed-order pairwise (cascade) summation; deterministic independent of
// vector length padding.
double pairwise_sum(const double* v, std::size_t n);
inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

} // namespace scatrec
