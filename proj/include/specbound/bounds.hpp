#ifndef SPECBOUND_BOUNDS_HPP
#define SPECBOUND_BOUNDS_HPP

//
// Resolvent-bound machinery for compactness classes.
//
// For a weight v and constant C >= pi/2 (Dostanic's power bound for
// quasi-nilpotent compact operators), define
//
//   F_v(r) = (1 + r v_1) (1 + sum_{k>=1} (v_1...v_k)^2 (C r)^{2k}),
//
// strictly increasing with F_v(0) = 1. With v = dot(bar(w)) this yields
//   ||R(A; z)|| <= F_v(nu/d) / d,     d = dist(z, sigma(A)),
// where nu is (an upper bound for) the w-departure from normality of A.
// F grows fast enough to overflow doubles at moderate arguments, so the
// series is accumulated in log domain with a certified geometric tail:
// summation stops once the term ratio (v_{k+1} C r)^2 drops to 1/2 or
// less and the bounded tail is below rel_tol times the partial sum.
//
//   Ftilde(r) = r F(r),   H(r) = 1 / Ftilde^{-1}(1/r)
//
// H converts resolvent bounds into spectral-distance radii.
//

#include <complex>
#include <cstdint>
#include <string>

#include "specbound/spectral.hpp"
#include "specbound/weights.hpp"

namespace specbound {

inline constexpr double kDefaultDostanicC = 2.0;

struct SeriesControl {
    double rel_tol = 1e-14;
    std::size_t max_terms = 100000;
};

class BoundFunction {
  public:
    // The weight is used in the series as given; callers wanting the
    // operator bound pass dot(bar(w)) (see for_operator_weight).
    BoundFunction(WeightSpec weight, double dostanic_c = kDefaultDostanicC,
                  SeriesControl control = SeriesControl{});

    // Applies the dot-bar chain of the user's weight.
    static BoundFunction for_operator_weight(const WeightSpec& w,
                                             double dostanic_c = kDefaultDostanicC,
                                             SeriesControl control = SeriesControl{});

    const WeightSpec& weight() const { return weight_; }
    double dostanic_c() const { return c_; }
    const SeriesControl& control() const { return control_; }

    // log F(r); never overflows for arguments of practical size.
    double log_F(double r) const;
    // F(r) itself; +inf when the value exceeds double range.
    double F(double r) const { return std::exp(log_F(r)); }

    double log_F_tilde(double r) const;

    // Unique r with r F(r) = y, bisection + secant polish in log domain,
    // relative tolerance ~1e-12.
    double F_tilde_inverse(double y) const;

    // H(r) = 1 / Ftilde^{-1}(1/r) for r > 0; H(0) = 0.
    double H(double r) const;

  private:
    // Accumulates the log of the series factor of F; when log_target is
    // finite, returns as soon as the partial sum alone certifies the
    // target is reached (partial sums only grow).
    struct SeriesResult {
        double log_value;
        bool reached_target;
    };
    SeriesResult log_F_series(double r, double log_target) const;

    WeightSpec weight_;
    double c_;
    SeriesControl control_;
    double log_w1_;
};

// |z|^{-1} F(|z|^{-1} gauge): resolvent bound for quasi-nilpotent A with
// |A|_v <= gauge, at the point z != 0.
double quasinilpotent_resolvent_bound(const BoundFunction& bf, double gauge,
                                      Complex z);

// --- departure from normality -------------------------------------------

enum class BudgetSource { SchurSearch, TwoGauge };

enum class BudgetStrategy {
    ModulusOrder,  // one triangularisation, modulus-descending diagonal
    SearchSmall,   // all eigenvalue orderings for n <= 8
    TwoGaugeOnly,  // skip Schur, use 2|A|_w
};

struct NonNormalityBudget {
    double nu_upper = 0.0;  // upper bound on nu_w(A)
    BudgetSource source = BudgetSource::SchurSearch;
};

// min over tried Schur splits of |N|_{dot(bar(w))}, capped by 2|A|_w.
// Throws GaugeInfiniteError when no finite bound exists.
NonNormalityBudget departure_budget(const ComplexMatrix& a, const WeightSpec& w,
                                    BudgetStrategy strategy = BudgetStrategy::ModulusOrder);

// d^{-1} F_{dot(bar(w))}(nu/d) with d = dist(z, sigma(A)); throws
// OnSpectrumError when d is below on_spectrum_tol * (1 + ||A||).
double resolvent_bound(const ComplexMatrix& a, const WeightSpec& w, Complex z,
                       const NonNormalityBudget& budget,
                       double dostanic_c = kDefaultDostanicC,
                       const SeriesControl& control = SeriesControl{},
                       double on_spectrum_tol = 1e-13);

// Same but with the spectrum already computed.
double resolvent_bound_at(const BoundFunction& bf_dotbar,
                          const std::vector<Complex>& spectrum, Complex z,
                          double nu_upper, double on_spectrum_tol_abs);

}  // namespace specbound

#endif
