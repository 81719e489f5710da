#include "scatrec/geometry.hpp"

#include <algorithm>

namespace scatrec {

std::size_t VoxelGrid::cell_containing(const Point& p) const {
    int idx[3] = {0, 0, 0};
    for (int a = 0; a < dim; ++a) {
        double t = (p[a] - origin[a]) / spacing;
        int i = static_cast<int>(std::floor(t));
        // boundary points belong to the lower-index cell
        if (i > 0 && t == static_cast<double>(i)) --i;
        idx[a] = std::clamp(i, 0, shape[a] - 1);
    }
    return cell_id(idx[0], idx[1], idx[2]);
}

double pairwise_sum(const double* v, std::size_t n) {
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = v[0];
        for (std::size_t i = 1; i < n; ++i) s += v[i];
        return s;
    }
    std::size_t half = n / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

} // namespace scatrec
