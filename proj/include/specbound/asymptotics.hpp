#ifndef SPECBOUND_ASYMPTOTICS_HPP
#define SPECBOUND_ASYMPTOTICS_HPP

//
// Closed-form growth envelopes for F on the two named weight families,
// plus the small-argument predictors for H. Everything that can exceed
// double range is exposed through its logarithm; the plain-value wrappers
// overflow to +inf.
//
//   PhiL_u(p; r)    = sum r^k / (k!)^{1/p}
//   PhiL_l(p, b; r) = sum exp(-b sqrt(k)) r^k / (k!)^{1/p}
//   PhiE_u(a, al; r)    = sum exp(-a k^{al+1}) r^k
//   PhiE_l(a, al, b; r) = sum exp(-a k^{al+1} - b k^{al+1/2}) r^k
//
// Sums are truncated with the same certified geometric-tail rule as the
// bound-function series.
//

#include <variant>

#include "specbound/bounds.hpp"

namespace specbound {

double log_phi_L_upper(double p, double r, const SeriesControl& control = SeriesControl{});
double log_phi_L_lower(double p, double b, double r,
                       const SeriesControl& control = SeriesControl{});
double log_phi_E_upper(double a, double alpha, double r,
                       const SeriesControl& control = SeriesControl{});
double log_phi_E_lower(double a, double alpha, double b, double r,
                       const SeriesControl& control = SeriesControl{});

double phi_L_upper(double p, double r, const SeriesControl& control = SeriesControl{});
double phi_L_lower(double p, double b, double r,
                   const SeriesControl& control = SeriesControl{});
double phi_E_upper(double a, double alpha, double r,
                   const SeriesControl& control = SeriesControl{});
double phi_E_lower(double a, double alpha, double b, double r,
                   const SeriesControl& control = SeriesControl{});

// --- asymptotic predictors ----------------------------------------------

struct SchattenLorentzFamily {
    double p;
};
struct ExponentialFamily {
    double a;
    double alpha;
};

struct AsymptoticModel {
    std::variant<SchattenLorentzFamily, ExponentialFamily> family;
    double dostanic_c = kDefaultDostanicC;
};

// Leading-order log F_{dot(bar(w))}(r) as r -> infinity.
double predict_log_F(const AsymptoticModel& model, double r);

// Leading-order H_w(r) as r -> 0+ (0 < r < 1).
double predict_H_small_r(const AsymptoticModel& model, double r);

// Inverse-asymptote forms: if f behaves like the named shape, these give
// the matching asymptote of f^{-1} (or log f^{-1} for LogPower).
enum class AsymptoteKind {
    PowerLaw,  // f ~ a r^b        => f^{-1}(r) ~ (r/a)^{1/b}
    ExpPower,  // log f ~ a r^b    => f^{-1}(r) ~ (log r / a)^{1/b}
    LogPower,  // log f ~ a log^b r => log f^{-1}(r) ~ (log r / a)^{1/b}
};

double asym_inverse(AsymptoteKind kind, double a, double b, double r);

// Smallest constants making the exponential-family lower envelopes hold
// over k <= probe_len:
//   bar(w)_k      >= exp(-a k^al/(al+1) - c_bar k^{al-1/2})
//   dotbar(w)_k   >= exp(-2^{-al} a k^al/(al+1) - c_dot_bar k^{al-1/2})
//   prod dotbar_n >= exp(-2^{-al} a k^{al+1}/(al+1)^2 - c_prod k^{al+1/2})
// The matching upper envelopes are parameter-free.
struct ExpWeightConstants {
    double c_bar = 0.0;
    double c_dot_bar = 0.0;
    double c_prod = 0.0;
};

ExpWeightConstants fit_exp_weight_constants(double a, double alpha,
                                            std::size_t probe_len = kDefaultProbeLength);

}  // namespace specbound

#endif
