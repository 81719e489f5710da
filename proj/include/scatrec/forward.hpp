#pragma once

#include "scatrec/geometry.hpp"
#include "scatrec/greens.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>

namespace scatrec {

struct NoiseMeta {
    std::uint64_t seed = 0;
    double level = 0.0;
};

// Complex far-field amplitudes, one row per source, one column per detector.
struct ScatteringData {
    Eigen::MatrixXcd amplitudes;
    SourceSet sources;
    DetectorSet detectors;
    Wavenumber k;
    std::optional<NoiseMeta> noise;

    int n_sources() const { return static_cast<int>(amplitudes.rows()); }
    int n_detectors() const { return static_cast<int>(amplitudes.cols()); }

    // Row-major source-major flattening, the ordering used by the data
    // vector of the regression stage.
    Eigen::VectorXcd flattened() const;
};

// Total and incident field per forward-grid cell for one source.
struct FieldSolution {
    VoxelGrid grid;
    Eigen::VectorXcd total_field;
    Eigen::VectorXcd incident_field;
};

// Weak-scattering amplitude: midpoint cell sum of
// a(r1) k^p e^{-ik rhat2.r} eta(r) G(r, r1) h^dim  (p = 3/2 in 2D, 2 in 3D)
// with the closed-form singular-cell value substituted for the cell
// containing the source.
ScatteringData born_amplitude(const SusceptibilityField& field, const SourceSet& sources,
                              const DetectorSet& detectors, Wavenumber k,
                              KhPolicy policy = KhPolicy::warn);

// Solves the discretized Lippmann-Schwinger system
//   U_j = Ui_j + k^2 sum_m M_jm eta_m U_m
// with M_jm = G(r_j, r_m) h^dim off the diagonal and the cell-averaged
// self integral on it. Direct dense factorization below 5000 unknowns,
// restarted GMRES above; relative residual <= 1e-10 either way.
FieldSolution coupled_dipole_solve(const SusceptibilityField& field, const Point& source,
                                   Wavenumber k, double source_amplitude = 1.0,
                                   KhPolicy policy = KhPolicy::warn);

// Amplitude with the total field from coupled_dipole_solve in place of the
// incident field; used for inverse-crime-free data.
ScatteringData full_wave_amplitude(const SusceptibilityField& field, const SourceSet& sources,
                                   const DetectorSet& detectors, Wavenumber k,
                                   KhPolicy policy = KhPolicy::warn);

// Complex Gaussian noise on amplitudes with std = level * RMS(|A|) (real and
// imaginary parts std/sqrt(2) each) and per-coordinate Gaussian perturbation
// of the source positions with std = level * (largest box side). Returns the
// noisy data and the perturbed source set; inversion must consume the
// perturbed positions.
std::pair<ScatteringData, SourceSet> add_noise(const ScatteringData& data, const SourceSet& sources,
                                               const VoxelGrid& domain, double level,
                                               std::uint64_t seed);

} // namespace scatrec
