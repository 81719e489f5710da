#include "scatrec/sobolev_kernel.hpp"

#include "scatrec/special.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>

namespace scatrec {
namespace {

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double p0 = 0, p1 = 0;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
            }
            double dp = n * (t * p0 - p1) / (t * t - 1.0);
            double dt = p0 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        p0 = 1.0;
        p1 = 0.0;
        for (int j = 0; j < n; ++j) {
            double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
        }
        double dp = n * (t * p0 - p1) / (t * t - 1.0);
        x[i] = -t;
        x[n - 1 - i] = t;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

void axis_rule(const KernelQuadrature& q, double per_axis_factor, Eigen::VectorXd& x,
               Eigen::VectorXd& w) {
    std::vector<double> xs, ws;
    for (const auto& p : q.panels) {
        int n = std::max(1, static_cast<int>(std::ceil(p.nodes * per_axis_factor - 1e-12)));
        std::vector<double> gx, gw;
        gauss_legendre(n, gx, gw);
        for (int i = 0; i < n; ++i) {
            xs.push_back(0.5 * (p.b - p.a) * gx[i] + 0.5 * (p.a + p.b));
            ws.push_back(0.5 * (p.b - p.a) * gw[i]);
        }
    }
    x = Eigen::Map<Eigen::VectorXd>(xs.data(), xs.size());
    w = Eigen::Map<Eigen::VectorXd>(ws.data(), ws.size());
}

// acc[p](v) = sum_{m<=p} h_m(v) for one more variable folded into the
// complete homogeneous sums: h_m(S u {v}) = h_m(S) + v h_{m-1}(S u {v}).
template <typename Vec>
void fold_variable(std::vector<Vec>& h, double v) {
    for (std::size_t m = 1; m < h.size(); ++m) h[m] = h[m] + v * h[m - 1];
}

} // namespace

SobolevKernelSpec SobolevKernelSpec::make(int d_in) {
    if (d_in != 4 && d_in != 6)
        throw std::invalid_argument("SobolevKernelSpec: d_in must be 4 or 6");
    SobolevKernelSpec spec;
    spec.d_in = d_in;
    spec.s = d_in == 4 ? 3 : 4;
    if (d_in == 4)
        spec.quad.panels = {{0.0, 0.3, 10}, {0.3, 1.0, 7},  {1.0, 4.0, 6},
                            {4.0, 16.0, 5}, {16.0, 64.0, 4}, {64.0, 160.0, 4}};
    else
        spec.quad.panels = {{0.0, 0.3, 6},  {0.3, 1.0, 5},  {1.0, 4.0, 5},
                            {4.0, 16.0, 4}, {16.0, 64.0, 4}, {64.0, 160.0, 3}};
    return spec;
}

bool SobolevKernelSpec::operator==(const SobolevKernelSpec& o) const {
    if (d_in != o.d_in || s != o.s || quad.panels.size() != o.quad.panels.size()) return false;
    for (std::size_t i = 0; i < quad.panels.size(); ++i) {
        const auto& a = quad.panels[i];
        const auto& b = o.quad.panels[i];
        if (a.a != b.a || a.b != b.b || a.nodes != b.nodes) return false;
    }
    return true;
}

SobolevKernel::SobolevKernel(SobolevKernelSpec spec) : spec_(std::move(spec)) {
    if (spec_.d_in != 4 && spec_.d_in != 6)
        throw std::invalid_argument("SobolevKernel: d_in must be 4 or 6");
    if (2 * spec_.s <= spec_.d_in)
        throw std::invalid_argument("SobolevKernel: embedding requires s > d_in/2");
    axis_rule(spec_.quad, 1.0, axis_x_, axis_w_);
    n1_ = axis_x_.size();
    const int h = half();
    nhalf_ = 1;
    for (int a = 0; a < h; ++a) nhalf_ *= n1_;

    // accumulated homogeneous sums over the right-block tensor grid
    const int s = spec_.s;
    std::vector<Eigen::VectorXd> hm(s + 1, Eigen::VectorXd::Zero(nhalf_));
    hm[0].setOnes();
    for (int a = 0; a < h; ++a) {
        Eigen::Index stride = 1;
        for (int b = a + 1; b < h; ++b) stride *= n1_;
        // fold node variable v = (2 pi u)^2 of axis a at each grid position
        for (Eigen::Index idx = 0; idx < nhalf_; ++idx) {
            double u = axis_x_[(idx / stride) % n1_];
            double v = 4.0 * kPi * kPi * u * u;
            for (int m = 1; m <= s; ++m) hm[m][idx] += v * hm[m - 1][idx];
        }
    }
    acc_h_.assign(s + 1, Eigen::VectorXd::Zero(nhalf_));
    for (int p = 0; p <= s; ++p)
        for (int m = 0; m <= p; ++m) acc_h_[p] += hm[m];

    // per-row Laplacian scale: all active axes are left-block axes
    lap_row_scale_.resize(nhalf_);
    for (Eigen::Index idx = 0; idx < nhalf_; ++idx) {
        double sum = 0.0;
        Eigen::Index rem = idx;
        for (int a = h - 1; a >= 0; --a) {
            double u = axis_x_[rem % n1_];
            sum += u * u;
            rem /= n1_;
        }
        lap_row_scale_[idx] = -4.0 * kPi * kPi * sum;
    }

    if (spec_.d_in == 4) {
        // materialize R = 2^d / D as a block x block matrix
        r_matrix_.resize(nhalf_, nhalf_);
        const double sym = std::pow(2.0, spec_.d_in);
        for (Eigen::Index i = 0; i < n1_; ++i)
            for (Eigen::Index j = 0; j < n1_; ++j) {
                std::vector<double> e(s + 1, 0.0);
                e[0] = 1.0;
                fold_variable(e, 4.0 * kPi * kPi * axis_x_[i] * axis_x_[i]);
                fold_variable(e, 4.0 * kPi * kPi * axis_x_[j] * axis_x_[j]);
                Eigen::VectorXd d = Eigen::VectorXd::Zero(nhalf_);
                for (int q = 0; q <= s; ++q) d += e[q] * acc_h_[s - q];
                r_matrix_.row(i * n1_ + j) = (sym / d.array()).matrix();
            }
    }

    Eigen::MatrixXd z0 = Eigen::MatrixXd::Zero(1, spec_.d_in);
    kappa0_ = eval_batch(z0, false)[0];
}

void SobolevKernel::left_vector(const double* z_left, Eigen::VectorXd& out) const {
    const int h = half();
    out.resize(nhalf_);
    // per-axis weighted cosine factors
    Eigen::MatrixXd c(n1_, h);
    for (int a = 0; a < h; ++a)
        c.col(a) = (2.0 * kPi * z_left[a] * axis_x_.array()).cos() * axis_w_.array();
    if (h == 2) {
        Eigen::Index p = 0;
        for (Eigen::Index i = 0; i < n1_; ++i)
            for (Eigen::Index j = 0; j < n1_; ++j) out[p++] = c(i, 0) * c(j, 1);
    } else {
        Eigen::Index p = 0;
        for (Eigen::Index i = 0; i < n1_; ++i)
            for (Eigen::Index j = 0; j < n1_; ++j) {
                const double cij = c(i, 0) * c(j, 1);
                for (Eigen::Index k = 0; k < n1_; ++k) out[p++] = cij * c(k, 2);
            }
    }
}

SobolevKernel::RightCache SobolevKernel::build_right_cache(const Eigen::MatrixXd& right_diffs) const {
    const int h = half();
    if (right_diffs.cols() != h)
        throw std::invalid_argument("build_right_cache: wrong difference width");
    const Eigen::Index B = right_diffs.rows();
    Eigen::MatrixXd cols(nhalf_, B);
    Eigen::VectorXd tmp;
    for (Eigen::Index b = 0; b < B; ++b) {
        left_vector(right_diffs.row(b).data(), tmp); // same tensor structure
        cols.col(b) = tmp;
    }
    RightCache rc;
    if (spec_.d_in == 4) {
        rc.T.noalias() = r_matrix_ * cols;
    } else {
        rc.T.resize(nhalf_, B);
        stream_rows(cols, rc.T);
    }
    return rc;
}

// out(row, b) = sum_cols (2^d / D(row, col)) * cols(col, b), streaming the
// denominator row by row; rows and cols both range over the half-block grid.
void SobolevKernel::stream_rows(const Eigen::MatrixXd& cols, Eigen::MatrixXd& out) const {
    const int s = spec_.s;
    const double sym = std::pow(2.0, spec_.d_in);
    const Eigen::Index B = cols.cols();
    Eigen::VectorXd d(nhalf_), r(nhalf_);
    std::vector<double> e(s + 1);
    const int h = half();
    for (Eigen::Index row = 0; row < nhalf_; ++row) {
        std::fill(e.begin(), e.end(), 0.0);
        e[0] = 1.0;
        Eigen::Index rem = row;
        for (int a = h - 1; a >= 0; --a) {
            double u = axis_x_[rem % n1_];
            fold_variable(e, 4.0 * kPi * kPi * u * u);
            rem /= n1_;
        }
        d.setZero();
        for (int q = 0; q <= s; ++q) d += e[q] * acc_h_[s - q];
        r = sym / d.array();
        out.row(row).noalias() = r.transpose() * cols;
    }
}

Eigen::VectorXd SobolevKernel::eval_batch(const Eigen::MatrixXd& zs, bool laplacian) const {
    if (zs.cols() != spec_.d_in) throw std::invalid_argument("eval_batch: wrong z width");
    const Eigen::Index B = zs.rows();
    const int h = half();
    Eigen::MatrixXd right = zs.rightCols(h);
    RightCache rc = build_right_cache(right);
    Eigen::VectorXd out(B), s_left;
    for (Eigen::Index b = 0; b < B; ++b) {
        Eigen::VectorXd zl = zs.row(b).head(h);
        left_vector(zl.data(), s_left);
        out[b] = laplacian ? lap_cached(s_left, rc, b) : eval_cached(s_left, rc, b);
    }
    return out;
}

double SobolevKernel::eval_diff(const double* z) const {
    Eigen::MatrixXd zs = Eigen::Map<const Eigen::RowVectorXd>(z, spec_.d_in);
    return eval_batch(zs, false)[0];
}

double SobolevKernel::laplacian_diff(const double* z) const {
    Eigen::MatrixXd zs = Eigen::Map<const Eigen::RowVectorXd>(z, spec_.d_in);
    return eval_batch(zs, true)[0];
}

double SobolevKernel::eval_refined(const double* z, double total_factor, bool laplacian) const {
    const double per_axis = std::pow(total_factor, 1.0 / spec_.d_in);
    Eigen::VectorXd x, w;
    axis_rule(spec_.quad, per_axis, x, w);
    const Eigen::Index n = x.size();
    const int h = half();
    const int s = spec_.s;

    Eigen::Index nh = 1;
    for (int a = 0; a < h; ++a) nh *= n;

    // right-block weighted cosines and accumulated homogeneous sums
    std::vector<Eigen::VectorXd> hm(s + 1, Eigen::VectorXd::Zero(nh));
    hm[0].setOnes();
    Eigen::VectorXd colc = Eigen::VectorXd::Ones(nh);
    for (int a = 0; a < h; ++a) {
        Eigen::Index stride = 1;
        for (int b = a + 1; b < h; ++b) stride *= n;
        for (Eigen::Index idx = 0; idx < nh; ++idx) {
            Eigen::Index i = (idx / stride) % n;
            double v = 4.0 * kPi * kPi * x[i] * x[i];
            for (int m = 1; m <= s; ++m) hm[m][idx] += v * hm[m - 1][idx];
            colc[idx] *= w[i] * std::cos(2.0 * kPi * z[h + a] * x[i]);
        }
    }
    std::vector<Eigen::VectorXd> acc(s + 1, Eigen::VectorXd::Zero(nh));
    for (int p = 0; p <= s; ++p)
        for (int m = 0; m <= p; ++m) acc[p] += hm[m];

    const double sym = std::pow(2.0, spec_.d_in);
    Eigen::VectorXd d(nh);
    std::vector<double> e(s + 1);
    double total = 0.0;
    for (Eigen::Index row = 0; row < nh; ++row) {
        std::fill(e.begin(), e.end(), 0.0);
        e[0] = 1.0;
        double wc = 1.0;
        double usum = 0.0;
        Eigen::Index rem = row;
        for (int a = h - 1; a >= 0; --a) {
            Eigen::Index i = rem % n;
            fold_variable(e, 4.0 * kPi * kPi * x[i] * x[i]);
            wc *= w[i] * std::cos(2.0 * kPi * z[a] * x[i]);
            usum += x[i] * x[i];
            rem /= n;
        }
        d.setZero();
        for (int q = 0; q <= s; ++q) d += e[q] * acc[s - q];
        double rowsum = (colc.array() / d.array()).sum();
        total += wc * rowsum * (laplacian ? -4.0 * kPi * kPi * usum : 1.0);
    }
    return sym * total;
}

const SobolevKernel& kernel_for(const SobolevKernelSpec& spec) {
    static std::vector<std::unique_ptr<SobolevKernel>> registry;
    for (const auto& k : registry)
        if (k->spec() == spec) return *k;
    registry.push_back(std::make_unique<SobolevKernel>(spec));
    return *registry.back();
}

double kernel_eval(const SobolevKernelSpec& spec, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& t) {
    if (x.size() != spec.d_in || t.size() != spec.d_in)
        throw std::invalid_argument("kernel_eval: dimension mismatch");
    Eigen::VectorXd z = x - t;
    return kernel_for(spec).eval_diff(z.data());
}

double kernel_laplacian(const SobolevKernelSpec& spec, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& t, int active) {
    if (x.size() != spec.d_in || t.size() != spec.d_in)
        throw std::invalid_argument("kernel_laplacian: dimension mismatch");
    if (active != spec.d_in / 2)
        throw std::invalid_argument("kernel_laplacian: active set must be the leading block");
    Eigen::VectorXd z = x - t;
    return kernel_for(spec).laplacian_diff(z.data());
}

namespace {

using DiffKey = std::vector<std::int64_t>;

DiffKey quantize(const double* z, int n) {
    DiffKey key(n);
    for (int i = 0; i < n; ++i) key[i] = std::llround(std::abs(z[i]) * 1e9);
    return key;
}

} // namespace

Eigen::MatrixXd gram_matrix(const SobolevKernelSpec& spec, const Eigen::MatrixXd& centers) {
    if (centers.rows() < 1) throw std::invalid_argument("gram_matrix: need at least one center");
    if (centers.cols() != spec.d_in)
        throw std::invalid_argument("gram_matrix: centers width must equal d_in");
    const SobolevKernel& ker = kernel_for(spec);
    const int n = static_cast<int>(centers.rows());
    const int h = ker.half();

    struct PairRef {
        DiffKey left_key;
        int i, j;
        Eigen::Index right_col;
    };

    // unique right-block difference columns, cache keyed on the quantized
    // componentwise |difference| (the kernel is even per coordinate)
    std::map<DiffKey, Eigen::Index> right_cols;
    std::vector<Eigen::RowVectorXd> right_vals;
    std::vector<PairRef> pairs;
    pairs.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Eigen::RowVectorXd dz = centers.row(i) - centers.row(j);
            DiffKey rk = quantize(dz.data() + h, h);
            auto [it, inserted] = right_cols.try_emplace(rk, static_cast<Eigen::Index>(right_vals.size()));
            if (inserted) right_vals.push_back(dz.tail(h));
            pairs.push_back({quantize(dz.data(), h), i, j, it->second});
        }

    Eigen::MatrixXd right_diffs(static_cast<Eigen::Index>(right_vals.size()), h);
    for (Eigen::Index r = 0; r < right_diffs.rows(); ++r) right_diffs.row(r) = right_vals[r];
    SobolevKernel::RightCache rc = ker.build_right_cache(right_diffs);

    // group pairs by left-block difference so each S vector is built once
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const PairRef& a, const PairRef& b) { return a.left_key < b.left_key; });

    Eigen::MatrixXd K(n, n);
    Eigen::VectorXd s_left;
    const DiffKey* current = nullptr;
    for (const auto& p : pairs) {
        if (current == nullptr || p.left_key != *current) {
            Eigen::VectorXd zl = (centers.row(p.i) - centers.row(p.j)).head(h).cwiseAbs();
            ker.left_vector(zl.data(), s_left);
            current = &p.left_key;
        }
        double v = ker.eval_cached(s_left, rc, p.right_col);
        K(p.i, p.j) = v;
        K(p.j, p.i) = v;
    }
    return K;
}

} // namespace scatrec
