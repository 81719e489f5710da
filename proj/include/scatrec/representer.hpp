#pragma once

#include "scatrec/forward.hpp"
#include "scatrec/sobolev_kernel.hpp"

#include <Eigen/Dense>

namespace scatrec {

// Fitted kernel expansion f(t) = sum_i c_i kappa(x_i, t). Centers live in
// the kernel's own coordinate system: source coordinates divided by
// norm_scale (the largest domain side), detector direction components as-is.
struct RepresenterModel {
    SobolevKernelSpec spec;
    Eigen::MatrixXd centers;  // n x d_in
    Eigen::VectorXcd coeffs;  // c*, complex (real kernel fitted per part)
    double lambda = 0.0;
    Eigen::MatrixXd gram;     // cached K
    double norm_scale = 1.0;  // physical length of one normalized unit
    double stationarity_residual = 0.0; // relative, worst of re/im parts
    bool degenerate = false;  // all-zero Gram encountered

    int n() const { return static_cast<int>(centers.rows()); }
};

// c* = Abar K [K (n lambda I + K)]^+ through the eigendecomposition of K;
// eigenvalue products below rcond * max are truncated. rcond < 0 selects the
// default n * machine-epsilon. Real and imaginary parts share the
// decomposition.
Eigen::VectorXcd representer_fit(const Eigen::MatrixXd& K, const Eigen::VectorXcd& abar,
                                 double lambda, double rcond = -1.0);

// Relative stationarity residual ||-2/n Abar K + 2 c K(lambda I + K/n)|| /
// ||Abar K||, the worst over real and imaginary parts.
double stationarity_residual(const Eigen::MatrixXd& K, const Eigen::VectorXcd& abar,
                             const Eigen::VectorXcd& coeffs, double lambda);

// Builds centers (r1 / norm_scale, rhat2) from the data geometry, assembles
// the Gram matrix and fits; norm_scale <= 0 selects the domain's largest
// side. Data rows flatten source-major.
RepresenterModel fit_scattering_data(const ScatteringData& data, const VoxelGrid& domain,
                                     const SobolevKernelSpec& spec, double lambda,
                                     double norm_scale = -1.0, double rcond = -1.0);

// f(t) and the leading-block Laplacian of f at t (model coordinates).
Complex surrogate_eval(const RepresenterModel& model, const Eigen::VectorXd& t);
Complex surrogate_laplacian(const RepresenterModel& model, const Eigen::VectorXd& t);

// Batched evaluation over left-block points sharing one right block
// (detector coordinates); returns f and Laplacian(f) per point.
void surrogate_eval_grid(const RepresenterModel& model, const Eigen::MatrixXd& left_points,
                         const Eigen::VectorXd& right_block, Eigen::VectorXcd& f_out,
                         Eigen::VectorXcd& lap_out);

} // namespace scatrec
