#include "scatrec/representer.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <stdexcept>

namespace scatrec {

Eigen::VectorXcd representer_fit(const Eigen::MatrixXd& K, const Eigen::VectorXcd& abar,
                                 double lambda, double rcond) {
    const Eigen::Index n = K.rows();
    if (K.cols() != n || abar.size() != n)
        throw std::invalid_argument("representer_fit: shape mismatch");
    if (lambda < 0.0) throw std::invalid_argument("representer_fit: lambda must be >= 0");
    if (rcond < 0.0) rcond = n * std::numeric_limits<double>::epsilon();

    if (K.cwiseAbs().maxCoeff() == 0.0) {
        std::fprintf(stderr, "warning: representer_fit: degenerate all-zero kernel matrix\n");
        return Eigen::VectorXcd::Zero(n);
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (K + K.transpose()));
    const Eigen::VectorXd& ev = es.eigenvalues();
    const Eigen::MatrixXd& Q = es.eigenvectors();

    // spectrum of K(n lambda I + K) shares the eigenbasis of K
    Eigen::VectorXd mu = ev.array() * (ev.array() + n * lambda);
    const double cutoff = rcond * mu.cwiseAbs().maxCoeff();
    Eigen::VectorXd g(n);
    for (Eigen::Index i = 0; i < n; ++i)
        g[i] = std::abs(mu[i]) > cutoff ? ev[i] / mu[i] : 0.0;

    Eigen::VectorXd cr = Q * g.asDiagonal() * (Q.transpose() * abar.real());
    Eigen::VectorXd ci = Q * g.asDiagonal() * (Q.transpose() * abar.imag());
    Eigen::VectorXcd c(n);
    c.real() = cr;
    c.imag() = ci;
    return c;
}

double stationarity_residual(const Eigen::MatrixXd& K, const Eigen::VectorXcd& abar,
                             const Eigen::VectorXcd& coeffs, double lambda) {
    const double n = static_cast<double>(K.rows());
    auto part = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& c) {
        Eigen::VectorXd ak = K * a;
        Eigen::VectorXd grad = -2.0 / n * ak + 2.0 * (K * (lambda * c + (K * c) / n));
        double scale = ak.norm();
        return scale > 0.0 ? grad.norm() / scale : grad.norm();
    };
    return std::max(part(abar.real(), coeffs.real()), part(abar.imag(), coeffs.imag()));
}

RepresenterModel fit_scattering_data(const ScatteringData& data, const VoxelGrid& domain,
                                     const SobolevKernelSpec& spec, double lambda,
                                     double norm_scale, double rcond) {
    const int ns = data.n_sources();
    const int nd = data.n_detectors();
    const int half = spec.d_in / 2;
    if (domain.dim != half)
        throw std::invalid_argument("fit_scattering_data: kernel dimension mismatch");
    if (static_cast<int>(data.sources.positions.size()) != ns ||
        static_cast<int>(data.detectors.directions.size()) != nd)
        throw std::invalid_argument("fit_scattering_data: geometry does not match data shape");
    if (norm_scale <= 0.0) norm_scale = domain.max_extent();

    RepresenterModel m;
    m.spec = spec;
    m.lambda = lambda;
    m.norm_scale = norm_scale;
    m.centers.resize(static_cast<Eigen::Index>(ns) * nd, spec.d_in);
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < nd; ++j) {
            Eigen::Index row = static_cast<Eigen::Index>(i) * nd + j;
            for (int a = 0; a < half; ++a) {
                m.centers(row, a) = data.sources.positions[i][a] / norm_scale;
                m.centers(row, half + a) = data.detectors.directions[j][a];
            }
        }
    m.gram = gram_matrix(spec, m.centers);
    Eigen::VectorXcd abar = data.flattened();
    m.coeffs = representer_fit(m.gram, abar, lambda, rcond);
    m.degenerate = m.gram.cwiseAbs().maxCoeff() == 0.0;
    m.stationarity_residual = m.degenerate ? 0.0 : stationarity_residual(m.gram, abar, m.coeffs, lambda);
    return m;
}

Complex surrogate_eval(const RepresenterModel& model, const Eigen::VectorXd& t) {
    const SobolevKernel& ker = kernel_for(model.spec);
    Complex acc(0, 0);
    Eigen::VectorXd z(model.spec.d_in);
    for (int i = 0; i < model.n(); ++i) {
        z = model.centers.row(i).transpose() - t;
        acc += model.coeffs[i] * ker.eval_diff(z.data());
    }
    return acc;
}

Complex surrogate_laplacian(const RepresenterModel& model, const Eigen::VectorXd& t) {
    const SobolevKernel& ker = kernel_for(model.spec);
    Complex acc(0, 0);
    Eigen::VectorXd z(model.spec.d_in);
    for (int i = 0; i < model.n(); ++i) {
        z = model.centers.row(i).transpose() - t;
        acc += model.coeffs[i] * ker.laplacian_diff(z.data());
    }
    return acc;
}

void surrogate_eval_grid(const RepresenterModel& model, const Eigen::MatrixXd& left_points,
                         const Eigen::VectorXd& right_block, Eigen::VectorXcd& f_out,
                         Eigen::VectorXcd& lap_out) {
    const SobolevKernel& ker = kernel_for(model.spec);
    const int half = ker.half();
    if (left_points.cols() != half || right_block.size() != half)
        throw std::invalid_argument("surrogate_eval_grid: block width mismatch");
    const int n = model.n();
    const Eigen::Index np = left_points.rows();

    // distinct detector blocks among the centers
    std::map<std::vector<std::int64_t>, Eigen::Index> right_ix;
    std::vector<Eigen::Index> center_col(n);
    std::vector<Eigen::RowVectorXd> right_rows;
    for (int i = 0; i < n; ++i) {
        Eigen::RowVectorXd rd = model.centers.row(i).tail(half) - right_block.transpose();
        std::vector<std::int64_t> key(half);
        for (int a = 0; a < half; ++a) key[a] = std::llround(std::abs(rd[a]) * 1e9);
        auto [it, inserted] = right_ix.try_emplace(key, static_cast<Eigen::Index>(right_rows.size()));
        if (inserted) right_rows.push_back(rd);
        center_col[i] = it->second;
    }
    Eigen::MatrixXd right_diffs(static_cast<Eigen::Index>(right_rows.size()), half);
    for (Eigen::Index r = 0; r < right_diffs.rows(); ++r) right_diffs.row(r) = right_rows[r];
    SobolevKernel::RightCache rc = ker.build_right_cache(right_diffs);

    f_out.resize(np);
    lap_out.resize(np);
    Eigen::VectorXd s_left, s_lap;
    Eigen::VectorXd zl(half);
    for (Eigen::Index p = 0; p < np; ++p) {
        Complex f(0, 0), lap(0, 0);
        // group centers sharing a source position: consecutive centers with
        // equal left block reuse the S vector
        bool have = false;
        Eigen::RowVectorXd last_left;
        for (int i = 0; i < n; ++i) {
            Eigen::RowVectorXd lf = model.centers.row(i).head(half);
            if (!have || lf != last_left) {
                zl = (lf.transpose() - left_points.row(p).transpose());
                ker.left_vector(zl.data(), s_left);
                s_lap = s_left.cwiseProduct(ker.lap_row_scale());
                last_left = lf;
                have = true;
            }
            double kv = s_left.dot(rc.T.col(center_col[i]));
            double lv = s_lap.dot(rc.T.col(center_col[i]));
            f += model.coeffs[i] * kv;
            lap += model.coeffs[i] * lv;
        }
        f_out[p] = f;
        lap_out[p] = lap;
    }
}

} // namespace scatrec
