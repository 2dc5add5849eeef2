#include "specbound/pseudospectra.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "specbound/errors.hpp"

namespace specbound {

Complex PseudoGrid::node(Eigen::Index ix, Eigen::Index iy) const {
    const double fx = static_cast<double>(ix) / static_cast<double>(resolution - 1);
    const double fy = static_cast<double>(iy) / static_cast<double>(resolution - 1);
    return {region.re_min + fx * (region.re_max - region.re_min),
            region.im_min + fy * (region.im_max - region.im_min)};
}

double PseudoGrid::cell_diag() const {
    const double dx = (region.re_max - region.re_min) / static_cast<double>(resolution - 1);
    const double dy = (region.im_max - region.im_min) / static_cast<double>(resolution - 1);
    return std::hypot(dx, dy);
}

std::vector<std::uint8_t> membership_mask(const PseudoGrid& grid, double epsilon) {
    if (!(epsilon > 0.0)) throw DomainError("membership_mask: epsilon must be > 0");
    const double band = 1e-12 * grid.scale;
    std::vector<std::uint8_t> mask(grid.s_min.size(), kOutside);
    for (std::size_t i = 0; i < grid.s_min.size(); ++i) {
        const double s = grid.s_min[i];
        if (std::abs(s - epsilon) < band)
            mask[i] = kIndeterminate;
        else if (s < epsilon)
            mask[i] = kInside;
    }
    return mask;
}

PseudoGrid pseudospectrum_grid(const ComplexMatrix& a, const ComplexRegion& region,
                               Eigen::Index resolution, double epsilon) {
    ensure_finite(a);
    if (a.rows() != a.cols())
        throw NonSquareError("pseudospectrum_grid: matrix must be square");
    if (resolution < 2)
        throw DegenerateRegionError("pseudospectrum_grid: resolution must be >= 2");
    if (!(region.re_max > region.re_min) || !(region.im_max > region.im_min))
        throw DegenerateRegionError("pseudospectrum_grid: empty region");
    if (!(epsilon > 0.0)) throw DomainError("pseudospectrum_grid: epsilon must be > 0");

    PseudoGrid grid;
    grid.region = region;
    grid.resolution = resolution;
    grid.epsilon = epsilon;
    grid.scale = 1.0 + operator_norm(a);
    grid.s_min.resize(static_cast<std::size_t>(resolution) * resolution);

    const Eigen::Index n = a.rows();
    ComplexMatrix shifted(n, n);
    for (Eigen::Index iy = 0; iy < resolution; ++iy) {
        for (Eigen::Index ix = 0; ix < resolution; ++ix) {
            const Complex z = grid.node(ix, iy);
            shifted = -a;
            shifted.diagonal().array() += z;
            // One full SVD per node; adequate at desk scale.
            Eigen::JacobiSVD<ComplexMatrix> svd(shifted);
            grid.s_min[static_cast<std::size_t>(iy) * resolution + ix] =
                svd.singularValues()(n - 1);
        }
    }
    grid.member = membership_mask(grid, epsilon);
    return grid;
}

InclusionDisks inclusion_disks(const ComplexMatrix& a, const WeightSpec& w,
                               double epsilon, const PerturbationConfig& cfg) {
    if (!(epsilon > 0.0)) throw DomainError("inclusion_disks: epsilon must be > 0");
    ensure_finite(a);
    if (a.rows() != a.cols())
        throw NonSquareError("inclusion_disks: matrix must be square");

    InclusionDisks disks;
    disks.centers = eigenvalues(a).values;
    disks.inner_radius = epsilon;

    const double nu = departure_budget(a, w, cfg.strategy).nu_upper;
    if (nu <= cfg.normal_floor * (1.0 + operator_norm(a))) {
        disks.outer_radius = epsilon;
    } else {
        const BoundFunction bf =
            BoundFunction::for_operator_weight(w, cfg.dostanic_c, cfg.series);
        // max with eps: the outer region may only grow, and F >= 1 makes
        // nu H(eps/nu) >= eps up to roundoff anyway.
        disks.outer_radius = std::max(epsilon, nu * bf.H(epsilon / nu));
    }
    return disks;
}

}  // namespace specbound
