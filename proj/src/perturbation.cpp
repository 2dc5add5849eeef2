#include "specbound/perturbation.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <sstream>

#include "specbound/errors.hpp"

namespace specbound {

double bauer_fike_radius(const std::function<double(double)>& g_inverse, double k_const,
                         double delta) {
    if (!(k_const > 0.0)) throw DomainError("bauer_fike_radius: K must be > 0");
    if (!(delta >= 0.0)) throw DomainError("bauer_fike_radius: delta must be >= 0");
    if (delta == 0.0) return 0.0;
    return k_const / g_inverse(k_const / delta);
}

namespace {

void check_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                      const std::string& what) {
    if (a.rows() != a.cols() || b.rows() != b.cols())
        throw NonSquareError(what + ": both matrices must be square");
    if (a.rows() != b.rows())
        throw DomainError(what + ": dimension mismatch " + std::to_string(a.rows()) +
                          " vs " + std::to_string(b.rows()));
}

double certified_radius(const WeightSpec& w, const PerturbationConfig& cfg, double nu,
                        double delta) {
    if (delta == 0.0) return 0.0;
    const BoundFunction bf =
        BoundFunction::for_operator_weight(w, cfg.dostanic_c, cfg.series);
    return bauer_fike_radius([&](double y) { return bf.F_tilde_inverse(y); }, nu, delta);
}

}  // namespace

DistanceCertificate spectral_variation_bound(const ComplexMatrix& a,
                                             const ComplexMatrix& b, const WeightSpec& w,
                                             const PerturbationConfig& cfg) {
    check_same_shape(a, b, "spectral_variation_bound");
    const double delta = operator_norm(a - b);
    const double nu = departure_budget(a, w, cfg.strategy).nu_upper;

    DistanceCertificate cert;
    cert.weight = w;
    cert.budget_used = nu;
    cert.inputs_digest = matrix_pair_digest(a, b);
    if (nu <= cfg.normal_floor * (1.0 + operator_norm(a))) {
        cert.bound_kind = CertificateKind::NormalExact;
        cert.value = delta;
    } else {
        cert.bound_kind = CertificateKind::Variation;
        cert.value = certified_radius(w, cfg, nu, delta);
    }
    return cert;
}

DistanceCertificate spectral_distance_bound(const ComplexMatrix& a,
                                            const ComplexMatrix& b, const WeightSpec& w,
                                            const PerturbationConfig& cfg) {
    check_same_shape(a, b, "spectral_distance_bound");
    const double delta = operator_norm(a - b);
    const double nu_a = departure_budget(a, w, cfg.strategy).nu_upper;
    const double nu_b = departure_budget(b, w, cfg.strategy).nu_upper;
    const double m = std::max(nu_a, nu_b);

    DistanceCertificate cert;
    cert.weight = w;
    cert.budget_used = m;
    cert.inputs_digest = matrix_pair_digest(a, b);
    const double floor_a = cfg.normal_floor * (1.0 + operator_norm(a));
    const double floor_b = cfg.normal_floor * (1.0 + operator_norm(b));
    if (nu_a <= floor_a && nu_b <= floor_b) {
        cert.bound_kind = CertificateKind::NormalExact;
        cert.value = delta;
    } else {
        // One near-normal operator keeps m = max of the budgets, still a
        // valid (larger) replacement for the departure of either operator.
        cert.bound_kind = CertificateKind::Hausdorff;
        cert.value = certified_radius(w, cfg, m, delta);
    }
    return cert;
}

TruncationResult truncation_certify(const ComplexMatrix& a_big, Eigen::Index k,
                                    const WeightSpec& w, const PerturbationConfig& cfg) {
    ensure_finite(a_big);
    if (a_big.rows() != a_big.cols())
        throw NonSquareError("truncation_certify: matrix must be square");
    const Eigen::Index n = a_big.rows();
    if (k < 1 || k > n)
        throw BadTruncationSizeError("truncation_certify: need 1 <= k <= " +
                                     std::to_string(n) + ", got " + std::to_string(k));

    ComplexMatrix embedded = ComplexMatrix::Zero(n, n);
    embedded.topLeftCorner(k, k) = a_big.topLeftCorner(k, k);

    TruncationResult result;
    result.certificate = spectral_distance_bound(a_big, embedded, w, cfg);
    result.enclosure_radius = result.certificate.value;
    const ComplexMatrix block = a_big.topLeftCorner(k, k);
    result.truncated_spectrum = eigenvalues(block).values;
    return result;
}

namespace {

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= bytes[i];
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t hash_matrix(std::uint64_t h, const ComplexMatrix& m) {
    const std::int64_t dims[2] = {m.rows(), m.cols()};
    h = fnv1a(h, dims, sizeof(dims));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const double parts[2] = {m(i, j).real(), m(i, j).imag()};
            h = fnv1a(h, parts, sizeof(parts));
        }
    }
    return h;
}

std::string hex64(std::uint64_t h) {
    std::ostringstream out;
    out << std::hex;
    out.width(16);
    out.fill('0');
    out << h;
    return out.str();
}

}  // namespace

std::string matrix_digest(const ComplexMatrix& m) {
    return hex64(hash_matrix(14695981039346656037ULL, m));
}

std::string matrix_pair_digest(const ComplexMatrix& a, const ComplexMatrix& b) {
    return hex64(hash_matrix(hash_matrix(14695981039346656037ULL, a), b));
}

}  // namespace specbound
