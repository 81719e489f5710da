#include "scatrec/forward.hpp"

#include "scatrec/rng.hpp"

#include <unsupported/Eigen/IterativeSolvers>

#include <cmath>
#include <stdexcept>

namespace scatrec {
namespace {

void validate_inputs(const SusceptibilityField& field, const SourceSet& sources,
                     const DetectorSet& detectors, Wavenumber k, KhPolicy policy) {
    if (!(k.k > 0.0)) throw std::invalid_argument("forward: wavenumber must be positive");
    if (field.values.size() != field.grid.num_cells())
        throw std::invalid_argument("forward: field size does not match grid");
    if (detectors.dim != field.grid.dim)
        throw std::invalid_argument("forward: detector dimension mismatch");
    check_kh(k.k, field.grid.spacing, policy);
    for (const auto& s : sources.positions)
        if (!field.grid.contains(s))
            throw std::invalid_argument("forward: source outside the grid box");
}

double k_power(int dim, double k) { return dim == 2 ? std::pow(k, 1.5) : k * k; }

} // namespace

Eigen::VectorXcd ScatteringData::flattened() const {
    Eigen::VectorXcd v(amplitudes.size());
    for (int i = 0; i < amplitudes.rows(); ++i)
        for (int j = 0; j < amplitudes.cols(); ++j) v[i * amplitudes.cols() + j] = amplitudes(i, j);
    return v;
}

ScatteringData born_amplitude(const SusceptibilityField& field, const SourceSet& sources,
                              const DetectorSet& detectors, Wavenumber k, KhPolicy policy) {
    validate_inputs(field, sources, detectors, k, policy);
    const VoxelGrid& g = field.grid;
    const std::size_t nc = g.num_cells();
    const double h = g.spacing;
    const double cell_measure = g.dim == 2 ? h * h : h * h * h;
    const double kp = k_power(g.dim, k.k);

    const int ns = static_cast<int>(sources.positions.size());
    const int nd = static_cast<int>(detectors.directions.size());
    ScatteringData out;
    out.amplitudes.resize(ns, nd);
    out.sources = sources;
    out.detectors = detectors;
    out.k = k;

    std::vector<Point> centers(nc);
    for (std::size_t c = 0; c < nc; ++c) centers[c] = g.cell_center_by_id(c);

    std::vector<Complex> green(nc);
    for (int i = 0; i < ns; ++i) {
        const Point& r1 = sources.positions[i];
        const double amp = sources.amplitudes.empty() ? 1.0 : sources.amplitudes[i];
        const std::size_t sc = g.cell_containing(r1);
        for (std::size_t c = 0; c < nc; ++c)
            green[c] = (c == sc) ? Complex(0, 0) : greens(g.dim, centers[c], r1, k);
        for (int j = 0; j < nd; ++j) {
            const Point& rhat = detectors.directions[j];
            Complex sum(0, 0);
            for (std::size_t c = 0; c < nc; ++c) {
                if (field.values[c] == 0.0) continue;
                Complex phase = std::exp(Complex(0.0, -k.k * Point::dot(rhat, centers[c])));
                sum += phase * field.values[c] * green[c];
            }
            out.amplitudes(i, j) = amp * kp * sum * cell_measure +
                                   amp * singular_cell_integral(g.dim, h, k, field.values[sc],
                                                                centers[sc], rhat, policy);
        }
    }
    return out;
}

FieldSolution coupled_dipole_solve(const SusceptibilityField& field, const Point& source,
                                   Wavenumber k, double source_amplitude, KhPolicy policy) {
    SourceSet one;
    one.positions = {source};
    one.amplitudes = {source_amplitude};
    DetectorSet dummy;
    dummy.dim = field.grid.dim;
    dummy.directions = {field.grid.dim == 2 ? Point{1, 0} : Point{0, 0, 1}};
    validate_inputs(field, one, dummy, k, policy);

    const VoxelGrid& g = field.grid;
    const int nc = static_cast<int>(g.num_cells());
    const double h = g.spacing;
    const double cell_measure = g.dim == 2 ? h * h : h * h * h;

    std::vector<Point> centers(nc);
    for (int c = 0; c < nc; ++c) centers[c] = g.cell_center_by_id(c);
    const std::size_t sc = g.cell_containing(source);

    // incident field; the source cell takes the cell-averaged value
    Eigen::VectorXcd ui(nc);
    for (int c = 0; c < nc; ++c)
        ui[c] = (static_cast<std::size_t>(c) == sc)
                    ? source_amplitude * self_cell_green_integral(g.dim, h, k) / cell_measure
                    : source_amplitude * greens(g.dim, centers[c], source, k);

    // system matrix I - k^2 M diag(eta), M_jm = G h^dim, diagonal from the
    // cell-averaged self integral
    Eigen::MatrixXcd A(nc, nc);
    const Complex self = self_cell_green_integral(g.dim, h, k);
    const double k2 = k.k * k.k;
    for (int j = 0; j < nc; ++j) {
        for (int m = 0; m < nc; ++m) {
            Complex mjm = (j == m) ? self : greens(g.dim, centers[j], centers[m], k) * cell_measure;
            A(j, m) = -k2 * mjm * field.values[m];
        }
        A(j, j) += 1.0;
    }

    Eigen::VectorXcd u;
    if (nc < 5000) {
        u = Eigen::PartialPivLU<Eigen::MatrixXcd>(A).solve(ui);
    } else {
        Eigen::GMRES<Eigen::MatrixXcd> solver(A);
        solver.setTolerance(1e-12);
        solver.setMaxIterations(2000);
        u = solver.solve(ui);
    }
    const double resid = (A * u - ui).norm();
    const double scale = ui.norm();
    if (!(resid <= 1e-10 * (scale > 0 ? scale : 1.0))) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
        throw SolverError("coupled_dipole_solve: residual " + std::to_string(resid / scale) +
                          ", condition estimate " +
                          std::to_string(svd.singularValues()(0) /
                                         svd.singularValues()(svd.singularValues().size() - 1)));
    }

    FieldSolution sol;
    sol.grid = g;
    sol.total_field = u;
    sol.incident_field = ui;
    return sol;
}

ScatteringData full_wave_amplitude(const SusceptibilityField& field, const SourceSet& sources,
                                   const DetectorSet& detectors, Wavenumber k, KhPolicy policy) {
    validate_inputs(field, sources, detectors, k, policy);
    const VoxelGrid& g = field.grid;
    const int nc = static_cast<int>(g.num_cells());
    const double h = g.spacing;
    const double cell_measure = g.dim == 2 ? h * h : h * h * h;
    const double kp = k_power(g.dim, k.k);

    const int ns = static_cast<int>(sources.positions.size());
    const int nd = static_cast<int>(detectors.directions.size());
    ScatteringData out;
    out.amplitudes.resize(ns, nd);
    out.sources = sources;
    out.detectors = detectors;
    out.k = k;

    std::vector<Point> centers(nc);
    for (int c = 0; c < nc; ++c) centers[c] = g.cell_center_by_id(c);

    for (int i = 0; i < ns; ++i) {
        const double amp = sources.amplitudes.empty() ? 1.0 : sources.amplitudes[i];
        FieldSolution sol = coupled_dipole_solve(field, sources.positions[i], k, amp, policy);
        for (int j = 0; j < nd; ++j) {
            const Point& rhat = detectors.directions[j];
            Complex sum(0, 0);
            for (int c = 0; c < nc; ++c) {
                if (field.values[c] == 0.0) continue;
                Complex phase = std::exp(Complex(0.0, -k.k * Point::dot(rhat, centers[c])));
                sum += phase * field.values[c] * sol.total_field[c];
            }
            out.amplitudes(i, j) = kp * sum * cell_measure;
        }
    }
    return out;
}

std::pair<ScatteringData, SourceSet> add_noise(const ScatteringData& data, const SourceSet& sources,
                                               const VoxelGrid& domain, double level,
                                               std::uint64_t seed) {
    if (level < 0.0) throw std::invalid_argument("add_noise: level must be >= 0");
    ScatteringData noisy = data;
    SourceSet moved = sources;
    noisy.noise = NoiseMeta{seed, level};
    if (level == 0.0) return {noisy, moved};

    const int ns = data.n_sources(), nd = data.n_detectors();
    std::vector<double> sq(static_cast<std::size_t>(ns) * nd);
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < nd; ++j) sq[i * nd + j] = std::norm(data.amplitudes(i, j));
    const double rms = std::sqrt(pairwise_sum(sq) / sq.size());

    CounterRng rng(seed);
    const double amp_std = level * rms / std::sqrt(2.0);
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < nd; ++j)
            noisy.amplitudes(i, j) += Complex(amp_std * rng.normal(), amp_std * rng.normal());

    const double pos_std = level * domain.max_extent();
    for (auto& p : moved.positions)
        for (int a = 0; a < domain.dim; ++a) p[a] += pos_std * rng.normal();
    noisy.sources = moved;
    return {noisy, moved};
}

} // namespace scatrec
