#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "specbound/errors.hpp"
#include "specbound/spectral.hpp"
#include "test_util.hpp"

using namespace specbound;
using namespace specbound::testing;

TEST_CASE("singular values of a diagonal matrix come out sorted") {
    ComplexMatrix a = ComplexMatrix::Zero(3, 3);
    a(0, 0) = 3;
    a(1, 1) = 1;
    a(2, 2) = 2;
    const SingularData s = singular_values(a);
    CHECK(s.values == std::vector<double>{3.0, 2.0, 1.0});
}

TEST_CASE("fourth-power sums of the nonunique-split example") {
    // The two nilpotent parts are genuinely different operators.
    double sum4 = 0.0;
    for (double v : singular_values(nonunique_schur_n1()).values) sum4 += std::pow(v, 4);
    CHECK(sum4 == doctest::Approx(112.0).epsilon(1e-12));
    sum4 = 0.0;
    for (double v : singular_values(nonunique_schur_n2()).values) sum4 += std::pow(v, 4);
    CHECK(sum4 == doctest::Approx(80.0).epsilon(1e-12));

    CHECK(schatten_norm(nonunique_schur_n1(), 4.0) ==
          doctest::Approx(std::pow(112.0, 0.25)).epsilon(1e-12));
    CHECK(schatten_norm(nonunique_schur_n2(), 4.0) ==
          doctest::Approx(std::pow(80.0, 0.25)).epsilon(1e-12));
    CHECK(schatten_norm(ComplexMatrix::Zero(4, 4), 2.5) == 0.0);
}

TEST_CASE("singular values are unitarily invariant") {
    Rng rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index n = 3 + static_cast<Eigen::Index>(rng() % 6);
        const ComplexMatrix a = ginibre(n, n, rng);
        const ComplexMatrix u = random_unitary(n, rng);
        const ComplexMatrix v = random_unitary(n, rng);
        const SingularData s0 = singular_values(a);
        const SingularData s1 = singular_values(u * a * v);
        for (std::size_t k = 0; k < s0.values.size(); ++k)
            CHECK(s0.values[k] == doctest::Approx(s1.values[k]).epsilon(1e-10));
    }
}

TEST_CASE("eigenvalues ordered by modulus with deterministic ties") {
    const EigenData spec = eigenvalues(nonunique_schur_example());
    REQUIRE(spec.values.size() == 3);
    CHECK(std::abs(spec.values[0] - Complex(2, 0)) < 1e-12);
    CHECK(std::abs(spec.values[1]) < 1e-12);
    CHECK(std::abs(spec.values[2]) < 1e-12);

    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = Complex(0, 1);
    d(1, 1) = Complex(-1, 0);
    const EigenData tie = eigenvalues(d);
    // equal modulus: descending real part puts i before -1
    CHECK(std::abs(tie.values[0] - Complex(0, 1)) < 1e-14);
    CHECK(std::abs(tie.values[1] - Complex(-1, 0)) < 1e-14);

    ComplexMatrix companion = ComplexMatrix::Zero(3, 3);
    companion(0, 2) = 1;
    companion(1, 0) = 1;
    companion(2, 1) = 1;
    for (const Complex& lam : eigenvalues(companion).values) {
        CHECK(std::abs(lam) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(std::pow(lam, 3) - Complex(1, 0)) < 1e-10);
    }

    CHECK_THROWS_AS(eigenvalues(ComplexMatrix::Zero(2, 3)), NonSquareError);
    ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(eigenvalues(bad), NonFiniteError);
}

TEST_CASE("w-gauge basics") {
    ComplexMatrix a = ComplexMatrix::Zero(3, 3);
    a(0, 0) = 1.0;
    a(1, 1) = 0.5;
    a(2, 2) = 0.25;
    CHECK(w_gauge(a, WeightSpec::explicit_list({1.0, 0.5, 0.25})) ==
          doctest::Approx(1.0));
    // zero extension with a positive third singular value
    CHECK(w_gauge(a, WeightSpec::explicit_list({1.0, 0.5})) ==
          std::numeric_limits<double>::infinity());
    CHECK(w_gauge(ComplexMatrix::Zero(3, 3), WeightSpec::explicit_list({1.0})) == 0.0);
}

TEST_CASE("gauge homogeneity and two-sided multiplication") {
    Rng rng(7);
    const WeightSpec w = WeightSpec::schatten_lorentz(1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 5);
        const ComplexMatrix a = ginibre(n, n, rng);
        const double g = w_gauge(a, w);

        const Complex alpha = random_complex(rng);
        CHECK(w_gauge(ComplexMatrix(alpha * a), w) ==
              doctest::Approx(std::abs(alpha) * g).epsilon(1e-10));

        const ComplexMatrix b = ginibre(n, n, rng);
        const ComplexMatrix c = ginibre(n, n, rng);
        const double lhs = w_gauge(b * a * c, w);
        CHECK(lhs <= operator_norm(b) * g * operator_norm(c) * (1.0 + 1e-10));
    }
}

TEST_CASE("singular value product and sum inequalities") {
    Rng rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 7);
        const ComplexMatrix a = ginibre(n, n, rng);
        const ComplexMatrix b = ginibre(n, n, rng);
        const ComplexMatrix c = ginibre(n, n, rng);

        const auto sa = singular_values(a).values;
        const auto sbac = singular_values(b * a * c).values;
        const double nb = operator_norm(b), nc = operator_norm(c);
        for (std::size_t k = 0; k < sa.size(); ++k)
            CHECK(sbac[k] <= nb * sa[k] * nc * (1.0 + 1e-10) + 1e-14);

        const auto sb = singular_values(b).values;
        const auto ssum = singular_values(a + b).values;
        for (std::size_t k = 0; k < sa.size(); ++k) {
            for (std::size_t l = 0; l + k + 1 <= sa.size(); ++l) {
                const std::size_t idx = k + l + 1 - 1;  // s_{k+l-1}, zero-based
                CHECK(ssum[idx] <= sa[k] + sb[l] + 1e-10);
            }
        }
    }
}

TEST_CASE("multiplicative Weyl inequality on random matrices") {
    Rng rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 11);
        const ComplexMatrix a = ginibre(n, n, rng);
        const auto lam = eigenvalues(a).values;
        const auto s = singular_values(a).values;
        double log_lam = 0.0, log_s = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
            log_lam += std::log(std::abs(lam[k]));
            log_s += std::log(s[k]);
            CHECK(log_lam <= log_s + 1e-9);
        }
    }
}

TEST_CASE("eigenvalue decay against the bar weight") {
    Rng rng(17);
    for (const WeightSpec& w : {WeightSpec::schatten_lorentz(1.0),
                                WeightSpec::exponential(0.4, 1.0)}) {
        const WeightSpec wb = bar(w);
        for (int trial = 0; trial < 15; ++trial) {
            const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 8);
            const ComplexMatrix a = ginibre(n, n, rng);
            const double g = w_gauge(a, w);
            const auto lam = eigenvalues(a).values;
            for (Eigen::Index k = 0; k < n; ++k)
                CHECK(std::abs(lam[k]) <=
                      g * eval(wb, static_cast<std::size_t>(k) + 1) * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("gauge of a sum lands in the doubled class") {
    Rng rng(19);
    const WeightSpec w = WeightSpec::schatten_lorentz(1.0);
    const WeightSpec wd = dot(w);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 8);
        const ComplexMatrix a = ginibre(n, n, rng);
        const ComplexMatrix b = ginibre(n, n, rng);
        CHECK(w_gauge(a + b, wd) <=
              (w_gauge(a, w) + w_gauge(b, w)) * (1.0 + 1e-10));
    }
}

TEST_CASE("schur split of a normal matrix has negligible nilpotent part") {
    Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 7);
        const ComplexMatrix a = random_hermitian(n, rng);
        const SchurParts parts = schur_decompose(a);
        CHECK(operator_norm(parts.nilpotent_part) <= 1e-10 * operator_norm(a));
    }
}

TEST_CASE("schur split of the worked example in its natural basis") {
    const ComplexMatrix a = nonunique_schur_example();
    const SchurParts parts = schur_decompose(a, ModulusDescending{});
    // normal part is diag(2, 0, 0)
    ComplexMatrix d_expect = ComplexMatrix::Zero(3, 3);
    d_expect(0, 0) = 2.0;
    CHECK((parts.normal_part - d_expect).cwiseAbs().maxCoeff() < 1e-10);
    // nilpotent part carries the printed fourth-power sum
    CHECK(std::pow(schatten_norm(parts.nilpotent_part, 4.0), 4.0) ==
          doctest::Approx(112.0).epsilon(1e-9));
    CHECK((a - parts.normal_part - parts.nilpotent_part).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(verify_schur(a, parts).empty());
}

TEST_CASE("explicit permutation reaches the alternative split gauge") {
    const ComplexMatrix a = nonunique_schur_example();
    const std::vector<double> s = singular_values(a).values;
    const WeightSpec w = WeightSpec::explicit_list(s);
    const WeightSpec wdb = dot(bar(w));

    // diagonal order (0, 2, 0): indices into the modulus-sorted list (2,0,0)
    const SchurParts parts = schur_decompose(a, ExplicitPermutation{{1, 0, 2}});
    CHECK(verify_schur(a, parts).empty());
    const double gauge_perm = w_gauge(parts.nilpotent_part, wdb);
    const double gauge_n2 = w_gauge(nonunique_schur_n2(), wdb);
    CHECK(gauge_perm == doctest::Approx(gauge_n2).epsilon(1e-9));

    CHECK_THROWS_AS(schur_decompose(a, ExplicitPermutation{{0, 1}}),
                    OrderingLengthMismatchError);
    CHECK_THROWS_AS(schur_decompose(a, ExplicitPermutation{{0, 0, 1}}),
                    OrderingLengthMismatchError);
}

TEST_CASE("random schur splits reconstruct and verify") {
    Rng rng(29);
    for (int trial = 0; trial < 25; ++trial) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 7);
        const ComplexMatrix a = ginibre(n, n, rng);
        const SchurParts parts = schur_decompose(a);
        const std::string problems = verify_schur(a, parts);
        CHECK_MESSAGE(problems.empty(), problems);
        // diagonal of T follows the modulus-descending order
        for (std::size_t k = 0; k + 1 < parts.ordering.size(); ++k)
            CHECK(std::abs(parts.ordering[k]) >=
                  std::abs(parts.ordering[k + 1]) - 1e-12);
    }
}

TEST_CASE("schur gauge bounds for normal and nilpotent parts") {
    Rng rng(31);
    const WeightSpec w = WeightSpec::schatten_lorentz(1.0);
    const WeightSpec wb = bar(w);
    const WeightSpec wdb = dot(wb);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 9);
        const ComplexMatrix a = ginibre(n, n, rng);
        const double g = w_gauge(a, w);
        const SchurParts parts = schur_decompose(a);
        CHECK(w_gauge(parts.normal_part, wb) <= g * (1.0 + 1e-9));
        CHECK(w_gauge(parts.nilpotent_part, wdb) <= 2.0 * g * (1.0 + 1e-9));
    }
}

TEST_CASE("point-set distances") {
    const std::vector<Complex> s1 = {Complex(0, 0), Complex(1, 0)};
    const std::vector<Complex> s2 = {Complex(0, 0)};
    CHECK(spectral_variation(s1, s2) == doctest::Approx(1.0));
    CHECK(spectral_variation(s2, s1) == doctest::Approx(0.0));
    CHECK(hausdorff_distance(s1, s2) == doctest::Approx(1.0));
    CHECK(hausdorff_distance(s1, s1) == 0.0);
    CHECK_THROWS_AS(hausdorff_distance({}, s1), EmptySpectrumError);

    Rng rng(37);
    auto random_set = [&](std::size_t max_size) {
        std::vector<Complex> pts(1 + rng() % max_size);
        for (Complex& z : pts) z = random_complex(rng);
        return pts;
    };
    for (int trial = 0; trial < 50; ++trial) {
        const auto x = random_set(6), y = random_set(6), z = random_set(6);
        const double dxy = hausdorff_distance(x, y);
        const double dyx = hausdorff_distance(y, x);
        CHECK(dxy == doctest::Approx(dyx));
        CHECK(dxy <= hausdorff_distance(x, z) + hausdorff_distance(z, y) + 1e-12);
    }
}
