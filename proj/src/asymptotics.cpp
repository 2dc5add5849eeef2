#include "specbound/asymptotics.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "specbound/errors.hpp"

namespace specbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLogHalf = std::log(0.5);

double log_add_exp(double x, double y) {
    if (x == -kInf) return y;
    if (y == -kInf) return x;
    const double hi = std::max(x, y);
    return hi + std::log1p(std::exp(std::min(x, y) - hi));
}

// Sums exp(log_term(k)) for k >= 0 in log domain. log_ratio_bound(k) must
// dominate log(t_{k+1}/t_k) and be nonincreasing in k, which makes the
// geometric tail bound valid once it drops below log(1/2).
double log_sum_series(const std::function<double(std::size_t)>& log_term,
                      const std::function<double(std::size_t)>& log_ratio_bound,
                      const SeriesControl& control) {
    double log_sum = log_term(0);
    for (std::size_t k = 1; k <= control.max_terms; ++k) {
        const double lt = log_term(k);
        if (lt == -kInf) return log_sum;
        log_sum = log_add_exp(log_sum, lt);
        const double lr = log_ratio_bound(k);
        if (lr <= kLogHalf) {
            const double log_tail = std::log(2.0) + lt + lr;
            if (log_tail <= std::log(control.rel_tol) + log_sum) return log_sum;
        }
    }
    throw TailNotConvergedError("phi series tail not certified within term budget");
}

}  // namespace

double log_phi_L_upper(double p, double r, const SeriesControl& control) {
    if (!(p > 0.0) || !(r >= 0.0)) throw DomainError("phi_L: require p > 0, r >= 0");
    if (r == 0.0) return 0.0;
    const double log_r = std::log(r);
    return log_sum_series(
        [&](std::size_t k) {
            return static_cast<double>(k) * log_r -
                   std::lgamma(static_cast<double>(k) + 1.0) / p;
        },
        [&](std::size_t k) {
            return log_r - std::log(static_cast<double>(k) + 1.0) / p;
        },
        control);
}

double log_phi_L_lower(double p, double b, double r, const SeriesControl& control) {
    if (!(p > 0.0) || !(b > 0.0) || !(r >= 0.0))
        throw DomainError("phi_L lower: require p > 0, b > 0, r >= 0");
    if (r == 0.0) return 0.0;
    const double log_r = std::log(r);
    return log_sum_series(
        [&](std::size_t k) {
            const double kd = static_cast<double>(k);
            return kd * log_r - std::lgamma(kd + 1.0) / p - b * std::sqrt(kd);
        },
        // exp(-b (sqrt(k+1)-sqrt(k))) <= 1, so the upper-series ratio works.
        [&](std::size_t k) {
            return log_r - std::log(static_cast<double>(k) + 1.0) / p;
        },
        control);
}

double log_phi_E_upper(double a, double alpha, double r, const SeriesControl& control) {
    if (!(a > 0.0) || !(alpha > 0.0) || !(r >= 0.0))
        throw DomainError("phi_E: require a > 0, alpha > 0, r >= 0");
    if (r == 0.0) return 0.0;
    const double log_r = std::log(r);
    return log_sum_series(
        [&](std::size_t k) {
            const double kd = static_cast<double>(k);
            return kd * log_r - a * std::pow(kd, alpha + 1.0);
        },
        // (k+1)^{al+1} - k^{al+1} >= (al+1) k^al by convexity.
        [&](std::size_t k) {
            return log_r - a * (alpha + 1.0) * std::pow(static_cast<double>(k), alpha);
        },
        control);
}

double log_phi_E_lower(double a, double alpha, double b, double r,
                       const SeriesControl& control) {
    if (!(a > 0.0) || !(alpha > 0.0) || !(b > 0.0) || !(r >= 0.0))
        throw DomainError("phi_E lower: require positive parameters, r >= 0");
    if (r == 0.0) return 0.0;
    const double log_r = std::log(r);
    return log_sum_series(
        [&](std::size_t k) {
            const double kd = static_cast<double>(k);
            return kd * log_r - a * std::pow(kd, alpha + 1.0) -
                   b * std::pow(kd, alpha + 0.5);
        },
        [&](std::size_t k) {
            return log_r - a * (alpha + 1.0) * std::pow(static_cast<double>(k), alpha);
        },
        control);
}

double phi_L_upper(double p, double r, const SeriesControl& control) {
    return std::exp(log_phi_L_upper(p, r, control));
}
double phi_L_lower(double p, double b, double r, const SeriesControl& control) {
    return std::exp(log_phi_L_lower(p, b, r, control));
}
double phi_E_upper(double a, double alpha, double r, const SeriesControl& control) {
    return std::exp(log_phi_E_upper(a, alpha, r, control));
}
double phi_E_lower(double a, double alpha, double b, double r,
                   const SeriesControl& control) {
    return std::exp(log_phi_E_lower(a, alpha, b, r, control));
}

double predict_log_F(const AsymptoticModel& model, double r) {
    if (!(r > 0.0)) throw DomainError("predict_log_F: r must be > 0");
    if (const auto* sl = std::get_if<SchattenLorentzFamily>(&model.family)) {
        const double p = sl->p;
        return 4.0 * std::exp(1.0) * std::pow(model.dostanic_c, p) / p * std::pow(r, p);
    }
    const auto& ex = std::get<ExponentialFamily>(model.family);
    const double al = ex.alpha;
    return 4.0 * std::pow((al + 1.0) / ex.a, 1.0 / al) * (al / (al + 1.0)) *
           std::pow(std::log(r), 1.0 + 1.0 / al);
}

double predict_H_small_r(const AsymptoticModel& model, double r) {
    if (!(r > 0.0) || !(r < 1.0)) throw DomainError("predict_H_small_r: need 0 < r < 1");
    const double abs_log_r = std::abs(std::log(r));
    if (const auto* sl = std::get_if<SchattenLorentzFamily>(&model.family)) {
        const double p = sl->p;
        return model.dostanic_c * std::pow(4.0 * std::exp(1.0) / p, 1.0 / p) *
               std::pow(abs_log_r, -1.0 / p);
    }
    const auto& ex = std::get<ExponentialFamily>(model.family);
    const double al = ex.alpha;
    const double expo = -std::pow(4.0, -al / (al + 1.0)) *
                        std::pow(ex.a / (al + 1.0), 1.0 / (al + 1.0)) *
                        std::pow((al + 1.0) / al, al / (al + 1.0)) *
                        std::pow(abs_log_r, al / (al + 1.0));
    return std::exp(expo);
}

double asym_inverse(AsymptoteKind kind, double a, double b, double r) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("asym_inverse: require a, b > 0");
    switch (kind) {
        case AsymptoteKind::PowerLaw:
            return std::pow(r / a, 1.0 / b);
        case AsymptoteKind::ExpPower:
            return std::pow(std::log(r) / a, 1.0 / b);
        case AsymptoteKind::LogPower:
            return std::exp(std::pow(std::log(r) / a, 1.0 / b));
    }
    return 0.0;
}

ExpWeightConstants fit_exp_weight_constants(double a, double alpha,
                                            std::size_t probe_len) {
    const WeightSpec w = WeightSpec::exponential(a, alpha);
    const WeightSpec wb = bar(w);
    const WeightSpec wdb = dot(wb);

    ExpWeightConstants out;
    const double lead_bar = a / (alpha + 1.0);
    const double lead_db = std::pow(2.0, -alpha) * a / (alpha + 1.0);
    const double lead_prod = std::pow(2.0, -alpha) * a / ((alpha + 1.0) * (alpha + 1.0));

    WeightScanner sb(wb), sdb(wdb);
    double prod = 0.0;
    for (std::size_t k = 1; k <= probe_len; ++k) {
        const double kd = static_cast<double>(k);
        const double lb = sb.next_log();
        const double ldb = sdb.next_log();
        prod += ldb;
        out.c_bar = std::max(
            out.c_bar, (-lb - lead_bar * std::pow(kd, alpha)) / std::pow(kd, alpha - 0.5));
        out.c_dot_bar = std::max(
            out.c_dot_bar,
            (-ldb - lead_db * std::pow(kd, alpha)) / std::pow(kd, alpha - 0.5));
        out.c_prod = std::max(
            out.c_prod,
            (-prod - lead_prod * std::pow(kd, alpha + 1.0)) / std::pow(kd, alpha + 0.5));
    }
    return out;
}

}  // namespace specbound
