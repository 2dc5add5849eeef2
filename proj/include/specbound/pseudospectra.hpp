#ifndef SPECBOUND_PSEUDOSPECTRA_HPP
#define SPECBOUND_PSEUDOSPECTRA_HPP

//
// Grid-based epsilon-pseudospectrum: s_min(zI - A) sampled on a rectangle,
// membership via s_min < eps (equivalently ||(zI-A)^{-1}|| > 1/eps), plus
// circular inclusion regions: every disk of radius eps around the spectrum
// is inside sigma_eps, and sigma_eps is inside the disks of radius
// nu H(eps/nu).
//

#include <cstdint>
#include <vector>

#include "specbound/bounds.hpp"
#include "specbound/perturbation.hpp"
#include "specbound/spectral.hpp"

namespace specbound {

struct ComplexRegion {
    double re_min = -1.0, re_max = 1.0;
    double im_min = -1.0, im_max = 1.0;
};

// Node membership: 0 outside, 1 inside, 2 indeterminate (|s_min - eps|
// within 1e-12 (1 + ||A||) of the open threshold).
enum : std::uint8_t { kOutside = 0, kInside = 1, kIndeterminate = 2 };

struct PseudoGrid {
    ComplexRegion region;
    Eigen::Index resolution = 0;  // nodes per axis
    double epsilon = 0.0;
    std::vector<double> s_min;         // row-major, index = iy * resolution + ix
    std::vector<std::uint8_t> member;  // same layout
    double scale = 0.0;                // 1 + ||A|| at grid build time

    Complex node(Eigen::Index ix, Eigen::Index iy) const;
    double cell_diag() const;
};

PseudoGrid pseudospectrum_grid(const ComplexMatrix& a, const ComplexRegion& region,
                               Eigen::Index resolution, double epsilon);

// Recomputes the membership mask of an existing grid for a new epsilon.
std::vector<std::uint8_t> membership_mask(const PseudoGrid& grid, double epsilon);

struct InclusionDisks {
    std::vector<Complex> centers;  // sigma(A)
    double inner_radius = 0.0;     // eps
    double outer_radius = 0.0;     // nu H(eps/nu), or eps when normal
};

InclusionDisks inclusion_disks(const ComplexMatrix& a, const WeightSpec& w,
                               double epsilon, const PerturbationConfig& cfg = {});

}  // namespace specbound

#endif
