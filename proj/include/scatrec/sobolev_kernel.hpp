#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <vector>

namespace scatrec {

// One Gauss-Legendre panel [a,b] with `nodes` points, applied per axis.
struct QuadPanel {
    double a = 0.0, b = 0.0;
    int nodes = 0;
};

// Spectral-space quadrature defining the kernel. The integrand is even in
// every coordinate, so the rule lives on [0,U]^d with a 2^d symmetry factor.
// Panels are graded toward the origin where the spectral density
// 1/(1 + sum h_m((2 pi u)^2)) carries its mass, and extend to the truncation
// radius U chosen so the neglected tail is below tail_tol * kappa(0).
struct KernelQuadrature {
    std::vector<QuadPanel> panels;
    double tail_tol = 1e-6;

    double truncation_radius() const { return panels.empty() ? 0.0 : panels.back().b; }
    int nodes_per_axis() const {
        int n = 0;
        for (const auto& p : panels) n += p.nodes;
        return n;
    }
};

struct SobolevKernelSpec {
    int d_in = 4; // 4 (2D problems) or 6 (3D problems)
    int s = 3;    // smoothness; 3 for d_in=4, 4 for d_in=6 (s > d_in/2)
    KernelQuadrature quad;

    static SobolevKernelSpec make(int d_in);
    bool operator==(const SobolevKernelSpec& o) const;
};

// Evaluator for the Sobolev reproducing kernel
//   kappa(x,t) = int prod_j cos(2 pi (x_j - t_j) u_j)
//                / (1 + sum_{0<|alpha|_1<=s} prod_j (2 pi u_j)^{2 alpha_j}) du
// and its Laplacian in the leading (source) coordinate block,
//   kappa'' = -4 pi^2 int (sum_{j<=d/2} u_j^2) prod_j cos(...) / (...) du,
// both under the same fixed tensor rule, so differentiation under the
// integral sign is exact and stationarity/symmetry hold identically.
//
// Evaluation factorizes over the leading ("left", source) and trailing
// ("right", detector) coordinate blocks: kappa(z) = S(z_left)^T T(z_right)
// with T = R C(z_right), where R is the node-weight/denominator matrix.
// Right-block vectors repeat heavily across Gram assembly and grid
// evaluation, so T columns are cached. The Laplacian reuses the same T with
// a per-row scale since all active coordinates are left-block axes.
class SobolevKernel {
public:
    explicit SobolevKernel(SobolevKernelSpec spec);

    const SobolevKernelSpec& spec() const { return spec_; }
    int d_in() const { return spec_.d_in; }
    int half() const { return spec_.d_in / 2; }
    Eigen::Index block_size() const { return nhalf_; }
    double kappa0() const { return kappa0_; }

    struct RightCache {
        Eigen::MatrixXd T; // block_size x B
    };

    // right_diffs: B x half matrix of trailing-block difference vectors.
    RightCache build_right_cache(const Eigen::MatrixXd& right_diffs) const;

    // Left-block factor; out has block_size entries.
    void left_vector(const double* z_left, Eigen::VectorXd& out) const;

    double eval_cached(const Eigen::VectorXd& s_left, const RightCache& rc, Eigen::Index col) const {
        return s_left.dot(rc.T.col(col));
    }
    double lap_cached(const Eigen::VectorXd& s_left, const RightCache& rc, Eigen::Index col) const {
        return (s_left.cwiseProduct(lap_row_scale_)).dot(rc.T.col(col));
    }
    const Eigen::VectorXd& lap_row_scale() const { return lap_row_scale_; }

    // Batched generic evaluation; zs is B x d_in of difference vectors.
    Eigen::VectorXd eval_batch(const Eigen::MatrixXd& zs, bool laplacian) const;

    double eval_diff(const double* z) const;
    double laplacian_diff(const double* z) const;

    // Same integral under a rule refined by `total_factor` in total point
    // count (factor^(1/d_in) per axis per panel); for convergence checks.
    double eval_refined(const double* z, double total_factor, bool laplacian) const;

private:
    SobolevKernelSpec spec_;
    Eigen::VectorXd axis_x_, axis_w_; // per-axis nodes and weights
    Eigen::Index n1_ = 0;             // nodes per axis
    Eigen::Index nhalf_ = 0;          // n1^half
    // complete homogeneous symmetric sums of the trailing-block node squares:
    // acc_h_[p] = sum_{m<=p} h_m over the right-block tensor grid
    std::vector<Eigen::VectorXd> acc_h_;
    Eigen::VectorXd lap_row_scale_; // -4 pi^2 (sum of left-block u^2) per row
    Eigen::MatrixXd r_matrix_;      // d_in==4 only: 2^d / D, block x block
    double kappa0_ = 0.0;

    void stream_rows(const Eigen::MatrixXd& cols, Eigen::MatrixXd& out) const;
};

// Shared evaluator registry so repeated fits reuse the precomputed rule.
const SobolevKernel& kernel_for(const SobolevKernelSpec& spec);

// kappa(x, t); x and t are d_in-vectors.
double kernel_eval(const SobolevKernelSpec& spec, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& t);

// Laplacian of kappa(x, .) in the leading `active` coordinates evaluated at
// t; `active` must equal d_in/2 (the source block).
double kernel_laplacian(const SobolevKernelSpec& spec, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& t, int active);

// Gram matrix K_ij = kappa(x_i, x_j); centers is n x d_in. Right-block
// factors are cached by quantized difference key, and pairs sharing a
// left-block difference are processed together.
Eigen::MatrixXd gram_matrix(const SobolevKernelSpec& spec, const Eigen::MatrixXd& centers);

} // namespace scatrec
