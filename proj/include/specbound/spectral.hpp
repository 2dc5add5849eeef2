#ifndef SPECBOUND_SPECTRAL_HPP
#define SPECBOUND_SPECTRAL_HPP

//
// Dense complex spectral primitives: singular values, modulus-ordered
// eigenvalues, Schur splitting into a normal part D and a nilpotent part N,
// Schatten norms, w-gauges, and point-set spectral distances.
//
// D/N convention: with a unitary U triangularising A (U^H A U = T upper
// triangular), D = U diag(T) U^H and N = U strictupper(T) U^H, so A = D + N,
// D is normal with the eigenvalues of A, and N is nilpotent. The split is
// not unique; it depends on the eigenvalue order along the diagonal of T.
//

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "specbound/weights.hpp"

namespace specbound {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

struct OperatorMatrix {
    ComplexMatrix values;
    std::string label;

    Eigen::Index rows() const { return values.rows(); }
    Eigen::Index cols() const { return values.cols(); }
    bool square() const { return values.rows() == values.cols(); }
};

// Throws NonFiniteError if any entry is NaN/Inf.
void ensure_finite(const ComplexMatrix& m, const std::string& what = "matrix");

struct SingularData {
    std::vector<double> values;  // nonincreasing, length min(rows, cols)
};

struct EigenData {
    std::vector<Complex> values;  // nonincreasing modulus, multiplicities repeated
};

// Modulus-descending with ties broken by descending real part, then
// descending imaginary part. Deterministic for reproducible ordering.
bool eigenvalue_order_before(const Complex& lhs, const Complex& rhs);

SingularData singular_values(const ComplexMatrix& a);
EigenData eigenvalues(const ComplexMatrix& a);

double operator_norm(const ComplexMatrix& a);
double schatten_norm(const ComplexMatrix& a, double p);

// sup_k s_k(A)/w_k with 0/0 := 0; +inf when some s_k > 0 meets w_k = 0.
double w_gauge(const ComplexMatrix& a, const WeightSpec& w);
double w_gauge(const SingularData& s, const WeightSpec& w);

// --- Schur splitting ---------------------------------------------------

struct ModulusDescending {};
struct ExplicitPermutation {
    // order[i] = index into the modulus-sorted eigenvalue list that should
    // land at diagonal position i.
    std::vector<std::size_t> order;
};
// Try every eigenvalue ordering (n <= 8) and keep the one minimising the
// dot-bar gauge of N; falls back to ModulusDescending for larger n.
struct SearchSmall {
    WeightSpec weight;  // user weight; the gauge applies its dot-bar chain
};

using SchurOrdering = std::variant<ModulusDescending, ExplicitPermutation, SearchSmall>;

struct SchurParts {
    ComplexMatrix basis;          // unitary U
    ComplexMatrix normal_part;    // D, full matrix
    ComplexMatrix nilpotent_part; // N, full matrix
    std::vector<Complex> ordering;  // diagonal of T = eigenvalues as ordered
};

SchurParts schur_decompose(const ComplexMatrix& a,
                           const SchurOrdering& ordering = ModulusDescending{});

struct SchurTolerances {
    // Scaled by (1 + ||A||) where appropriate.
    double reconstruction = 1e-10;
    double normality = 1e-10;
    double nilpotency = 1e-10;
};

// Checks A = D + N, D normal, N nilpotent, sigma(D) = sigma(A) as multisets.
// Returns an empty string on success, else a description of the violation.
std::string verify_schur(const ComplexMatrix& a, const SchurParts& parts,
                         const SchurTolerances& tol = SchurTolerances{});

// Greedy multiset matching with tolerance scale * (1 + scale_norm).
bool spectra_match(std::vector<Complex> lhs, std::vector<Complex> rhs,
                   double scale_norm, double tol = 1e-8);

// --- point-set distances ------------------------------------------------

// Directed sup-min distance d^(s1, s2) = sup_{x in s1} min_{y in s2} |x-y|.
double spectral_variation(const std::vector<Complex>& s1, const std::vector<Complex>& s2);
double hausdorff_distance(const std::vector<Complex>& s1, const std::vector<Complex>& s2);
double distance_to_spectrum(const Complex& z, const std::vector<Complex>& spectrum);

}  // namespace specbound

#endif
