#ifndef SPECBOUND_PERTURBATION_HPP
#define SPECBOUND_PERTURBATION_HPP

//
// Bauer-Fike style conversion of resolvent bounds into spectral distance
// bounds, and the truncation-certification workflow built on top of it.
//
// If ||R(A; z)|| <= g(K / d(z, sigma(A))) / K for a strictly increasing
// surjective g, then for any B,
//     d^(sigma(B), sigma(A)) <= K h(||A - B|| / K),  h(r) = 1/ginv(1/r).
// With g = Ftilde and K = nu this gives the certificates below.
//

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "specbound/bounds.hpp"
#include "specbound/spectral.hpp"

namespace specbound {

// K * h(delta / K) where h(r) = 1/g_inverse(1/r) and h(0) = 0.
// g_inverse evaluates the inverse of the monotone bound function g.
double bauer_fike_radius(const std::function<double(double)>& g_inverse, double k_const,
                         double delta);

enum class CertificateKind { Variation, Hausdorff, NormalExact };

struct DistanceCertificate {
    CertificateKind bound_kind = CertificateKind::Variation;
    double value = 0.0;        // certified upper bound on the distance
    double budget_used = 0.0;  // nu upper bound entering the bound
    WeightSpec weight;
    std::optional<double> observed;  // oracle measurement, when requested
    std::string inputs_digest;       // hash of both matrices
};

struct PerturbationConfig {
    double dostanic_c = kDefaultDostanicC;
    SeriesControl series;
    BudgetStrategy strategy = BudgetStrategy::ModulusOrder;
    // Budgets at or below normal_floor * (1 + ||A||) take the exact
    // normal-operator branch.
    double normal_floor = 1e-14;
};

// d^(sigma(B), sigma(A)) <= nu H(||A-B||/nu); exact ||A-B|| when A is
// (numerically) normal.
DistanceCertificate spectral_variation_bound(const ComplexMatrix& a,
                                             const ComplexMatrix& b, const WeightSpec& w,
                                             const PerturbationConfig& cfg = {});

// Hausdorff(sigma(A), sigma(B)) <= m H(||A-B||/m), m = max of the two
// departure budgets; exact ||A-B|| when both are (numerically) normal.
DistanceCertificate spectral_distance_bound(const ComplexMatrix& a,
                                            const ComplexMatrix& b, const WeightSpec& w,
                                            const PerturbationConfig& cfg = {});

struct TruncationResult {
    std::vector<Complex> truncated_spectrum;  // eigenvalues of the k x k block
    double enclosure_radius = 0.0;
    DistanceCertificate certificate;
};

// P_k A P_k as the leading k x k principal block embedded at full size;
// every eigenvalue of A lies within enclosure_radius of
// sigma(A_k) union {0}, and conversely.
TruncationResult truncation_certify(const ComplexMatrix& a_big, Eigen::Index k,
                                    const WeightSpec& w,
                                    const PerturbationConfig& cfg = {});

// FNV-1a over dimensions and raw entry bits; stable across runs.
std::string matrix_digest(const ComplexMatrix& m);
std::string matrix_pair_digest(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace specbound

#endif
