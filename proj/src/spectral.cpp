#include "specbound/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "specbound/errors.hpp"

namespace specbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void ensure_square(const ComplexMatrix& m, const std::string& what) {
    if (m.rows() != m.cols())
        throw NonSquareError(what + ": matrix must be square, got " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    if (m.rows() == 0) throw DomainError(what + ": matrix is empty");
}

}  // namespace

void ensure_finite(const ComplexMatrix& m, const std::string& what) {
    if (!m.allFinite()) throw NonFiniteError(what + ": non-finite entries");
}

bool eigenvalue_order_before(const Complex& lhs, const Complex& rhs) {
    const double ml = std::abs(lhs), mr = std::abs(rhs);
    if (ml != mr) return ml > mr;
    if (lhs.real() != rhs.real()) return lhs.real() > rhs.real();
    return lhs.imag() > rhs.imag();
}

SingularData singular_values(const ComplexMatrix& a) {
    ensure_finite(a);
    if (a.rows() == 0 || a.cols() == 0) throw DomainError("singular_values: empty matrix");
    Eigen::VectorXd sv;
    if (std::min(a.rows(), a.cols()) <= 32) {
        Eigen::JacobiSVD<ComplexMatrix> svd(a);
        sv = svd.singularValues();
    } else {
        Eigen::BDCSVD<ComplexMatrix> svd(a);
        sv = svd.singularValues();
    }
    SingularData out;
    out.values.assign(sv.data(), sv.data() + sv.size());
    std::sort(out.values.begin(), out.values.end(), std::greater<double>());
    return out;
}

EigenData eigenvalues(const ComplexMatrix& a) {
    ensure_finite(a);
    ensure_square(a, "eigenvalues");
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigenvalues: eigensolver did not converge");
    EigenData out;
    const auto& ev = solver.eigenvalues();
    out.values.assign(ev.data(), ev.data() + ev.size());
    std::sort(out.values.begin(), out.values.end(), eigenvalue_order_before);
    return out;
}

double operator_norm(const ComplexMatrix& a) {
    return singular_values(a).values.front();
}

double schatten_norm(const ComplexMatrix& a, double p) {
    if (!(p > 0.0)) throw DomainError("schatten_norm: p must be > 0");
    const SingularData s = singular_values(a);
    const double smax = s.values.front();
    if (smax == 0.0) return 0.0;
    double sum = 0.0;
    for (double v : s.values) sum += std::pow(v / smax, p);
    return smax * std::pow(sum, 1.0 / p);
}

double w_gauge(const SingularData& s, const WeightSpec& w) {
    WeightScanner scan(w);
    double best_log = -kInf;
    for (double sk : s.values) {
        const double log_w = scan.next_log();
        if (sk == 0.0) continue;  // 0/0 := 0 and 0/w = 0
        if (log_w == -kInf) return kInf;
        best_log = std::max(best_log, std::log(sk) - log_w);
    }
    return std::exp(best_log);
}

double w_gauge(const ComplexMatrix& a, const WeightSpec& w) {
    return w_gauge(singular_values(a), w);
}

namespace {

// Unitary swap of adjacent diagonal entries i, i+1 of an upper-triangular T,
// accumulating the rotation into U when given (LAPACK ztrexc style). For an
// exactly repeated eigenvalue coupled by a nonzero off-diagonal entry the
// rotation degenerates to the identity, which is fine: equal values need no
// reordering.
void swap_adjacent(ComplexMatrix& t, ComplexMatrix* u, Eigen::Index i) {
    const Eigen::Index n = t.rows();
    const Complex a = t(i, i);
    const Complex b = t(i, i + 1);
    const Complex d = t(i + 1, i + 1);
    const Complex v1 = b;
    const Complex v2 = d - a;
    const double beta = std::sqrt(std::norm(v1) + std::norm(v2));
    if (beta == 0.0) return;  // identical diagonal block, swap is a no-op
    const Complex c = v1 / beta;
    const Complex s = v2 / beta;
    Eigen::Matrix2cd g;
    g << c, -std::conj(s), s, std::conj(c);
    t.block(i, i, 2, n - i) = (g.adjoint() * t.block(i, i, 2, n - i)).eval();
    t.block(0, i, i + 2, 2) = (t.block(0, i, i + 2, 2) * g).eval();
    t(i + 1, i) = Complex(0, 0);
    if (u) u->block(0, i, n, 2) = (u->block(0, i, n, 2) * g).eval();
}

// Reorders the diagonal of T so that position t holds the entry that was
// originally at index target[t]. Bubble moves via adjacent swaps.
void reorder_schur(ComplexMatrix& t, ComplexMatrix* u,
                   const std::vector<Eigen::Index>& target) {
    const Eigen::Index n = t.rows();
    std::vector<Eigen::Index> pos_orig(n);
    std::iota(pos_orig.begin(), pos_orig.end(), Eigen::Index{0});
    for (Eigen::Index tgt = 0; tgt < n; ++tgt) {
        Eigen::Index j = tgt;
        while (j < n && pos_orig[j] != target[tgt]) ++j;
        for (Eigen::Index m = j; m > tgt; --m) {
            swap_adjacent(t, u, m - 1);
            std::swap(pos_orig[m - 1], pos_orig[m]);
        }
    }
}

std::vector<Eigen::Index> modulus_descending_target(const ComplexMatrix& t) {
    const Eigen::Index n = t.rows();
    std::vector<Eigen::Index> idx(n);
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index l, Eigen::Index r) {
        return eigenvalue_order_before(t(l, l), t(r, r));
    });
    return idx;
}

double strict_upper_gauge(const ComplexMatrix& t, const WeightSpec& wdb) {
    ComplexMatrix su = t.triangularView<Eigen::StrictlyUpper>();
    return w_gauge(su, wdb);
}

}  // namespace

SchurParts schur_decompose(const ComplexMatrix& a, const SchurOrdering& ordering) {
    ensure_finite(a);
    ensure_square(a, "schur_decompose");
    const Eigen::Index n = a.rows();

    Eigen::ComplexSchur<ComplexMatrix> schur(a);
    if (schur.info() != Eigen::Success)
        throw std::runtime_error("schur_decompose: Schur iteration did not converge");
    ComplexMatrix t = schur.matrixT();
    ComplexMatrix u = schur.matrixU();

    const std::vector<Eigen::Index> sorted = modulus_descending_target(t);

    if (std::holds_alternative<ModulusDescending>(ordering)) {
        reorder_schur(t, &u, sorted);
    } else if (const auto* explicit_perm = std::get_if<ExplicitPermutation>(&ordering)) {
        const auto& order = explicit_perm->order;
        if (static_cast<Eigen::Index>(order.size()) != n)
            throw OrderingLengthMismatchError(
                "schur_decompose: permutation length " + std::to_string(order.size()) +
                " does not match dimension " + std::to_string(n));
        std::vector<bool> seen(order.size(), false);
        for (std::size_t v : order) {
            if (v >= order.size() || seen[v])
                throw OrderingLengthMismatchError("schur_decompose: not a permutation");
            seen[v] = true;
        }
        std::vector<Eigen::Index> target(n);
        for (Eigen::Index i = 0; i < n; ++i) target[i] = sorted[order[i]];
        reorder_schur(t, &u, target);
    } else {
        const auto& search = std::get<SearchSmall>(ordering);
        if (n > 8) {
            reorder_schur(t, &u, sorted);
        } else {
            const WeightSpec wdb = dot(bar(search.weight));
            std::vector<std::size_t> perm(n);
            std::iota(perm.begin(), perm.end(), std::size_t{0});
            std::vector<std::size_t> best_perm = perm;
            double best_gauge = kInf;
            std::set<std::vector<std::pair<double, double>>> seen_sequences;
            do {
                std::vector<std::pair<double, double>> key(n);
                for (Eigen::Index i = 0; i < n; ++i) {
                    const Complex lam = t(sorted[perm[i]], sorted[perm[i]]);
                    key[i] = {lam.real(), lam.imag()};
                }
                if (!seen_sequences.insert(key).second) continue;
                ComplexMatrix tc = t;
                std::vector<Eigen::Index> target(n);
                for (Eigen::Index i = 0; i < n; ++i) target[i] = sorted[perm[i]];
                reorder_schur(tc, nullptr, target);
                const double g = strict_upper_gauge(tc, wdb);
                if (g < best_gauge) {
                    best_gauge = g;
                    best_perm = perm;
                }
            } while (std::next_permutation(perm.begin(), perm.end()));
            std::vector<Eigen::Index> target(n);
            for (Eigen::Index i = 0; i < n; ++i) target[i] = sorted[best_perm[i]];
            reorder_schur(t, &u, target);
        }
    }

    SchurParts parts;
    parts.basis = u;
    const Eigen::VectorXcd diag_vec = t.diagonal();
    ComplexMatrix diag = diag_vec.asDiagonal();
    ComplexMatrix su = t.triangularView<Eigen::StrictlyUpper>();
    parts.normal_part = u * diag * u.adjoint();
    parts.nilpotent_part = u * su * u.adjoint();
    parts.ordering.assign(diag_vec.data(), diag_vec.data() + n);
    return parts;
}

bool spectra_match(std::vector<Complex> lhs, std::vector<Complex> rhs,
                   double scale_norm, double tol) {
    if (lhs.size() != rhs.size()) return false;
    const double limit = tol * (1.0 + scale_norm);
    std::vector<bool> used(rhs.size(), false);
    for (const Complex& x : lhs) {
        double best = kInf;
        std::size_t best_j = rhs.size();
        for (std::size_t j = 0; j < rhs.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(x - rhs[j]);
            if (d < best) {
                best = d;
                best_j = j;
            }
        }
        if (best_j == rhs.size() || best > limit) return false;
        used[best_j] = true;
    }
    return true;
}

std::string verify_schur(const ComplexMatrix& a, const SchurParts& parts,
                         const SchurTolerances& tol) {
    const double norm_a = operator_norm(a);
    const double scale = 1.0 + norm_a;
    std::ostringstream problems;

    const double recon =
        (a - parts.normal_part - parts.nilpotent_part).cwiseAbs().maxCoeff();
    if (recon > tol.reconstruction * scale)
        problems << "reconstruction residual " << recon << "; ";

    const ComplexMatrix& d = parts.normal_part;
    const double comm = (d.adjoint() * d - d * d.adjoint()).cwiseAbs().maxCoeff();
    if (comm > tol.normality * scale) problems << "normality defect " << comm << "; ";

    const ComplexMatrix& nmat = parts.nilpotent_part;
    const double norm_n = nmat.cwiseAbs().maxCoeff() > 0.0 ? operator_norm(nmat) : 0.0;
    if (norm_n > 0.0) {
        ComplexMatrix scaled = nmat / norm_n;
        ComplexMatrix power = scaled;
        for (Eigen::Index k = 1; k < a.rows(); ++k) power = power * scaled;
        const double pn = power.cwiseAbs().maxCoeff();
        if (pn > tol.nilpotency) problems << "nilpotency defect " << pn << "; ";
    }

    std::vector<Complex> spec_a = eigenvalues(a).values;
    std::vector<Complex> spec_d(parts.ordering);
    if (!spectra_match(spec_a, spec_d, norm_a))
        problems << "spectrum mismatch between D and A; ";

    return problems.str();
}

double distance_to_spectrum(const Complex& z, const std::vector<Complex>& spectrum) {
    if (spectrum.empty()) throw EmptySpectrumError("distance_to_spectrum: empty set");
    double best = kInf;
    for (const Complex& lam : spectrum) best = std::min(best, std::abs(z - lam));
    return best;
}

double spectral_variation(const std::vector<Complex>& s1, const std::vector<Complex>& s2) {
    if (s1.empty() || s2.empty())
        throw EmptySpectrumError("spectral_variation: empty point set");
    double worst = 0.0;
    for (const Complex& x : s1) worst = std::max(worst, distance_to_spectrum(x, s2));
    return worst;
}

double hausdorff_distance(const std::vector<Complex>& s1, const std::vector<Complex>& s2) {
    return std::max(spectral_variation(s1, s2), spectral_variation(s2, s1));
}

}  // namespace specbound
