#include "specbound/bounds.hpp"

#include <algorithm>
#include <cmath>
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
    const double lo = std::min(x, y);
    return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace

BoundFunction::BoundFunction(WeightSpec weight, double dostanic_c, SeriesControl control)
    : weight_(std::move(weight)), c_(dostanic_c), control_(control) {
    if (!(c_ > 0.0)) throw DomainError("BoundFunction: Dostanic constant must be > 0");
    if (!(control_.rel_tol > 0.0) || control_.max_terms == 0)
        throw DomainError("BoundFunction: bad series control");
    log_w1_ = WeightScanner(weight_).next_log();
}

BoundFunction BoundFunction::for_operator_weight(const WeightSpec& w, double dostanic_c,
                                                 SeriesControl control) {
    return BoundFunction(dot(bar(w)), dostanic_c, control);
}

BoundFunction::SeriesResult BoundFunction::log_F_series(double r, double log_target) const {
    // Accumulates log(1 + sum_k (w_1...w_k)^2 (C r)^{2k}). When log_target
    // is finite the accumulation may stop early once the partial sum alone
    // certifies the target is reached; partial sums only grow.
    double log_sum = 0.0;
    if (r == 0.0) return {log_sum, log_sum >= log_target};

    const double log_cr = std::log(c_) + std::log(r);
    WeightScanner scan(weight_);
    double next_log_w = scan.next_log();
    double log_prod = 0.0;
    double log_term = -kInf;

    for (std::size_t k = 1; k <= control_.max_terms; ++k) {
        const double log_wk = next_log_w;
        next_log_w = scan.next_log();
        log_prod += log_wk;
        log_term = 2.0 * log_prod + 2.0 * static_cast<double>(k) * log_cr;
        if (log_term == -kInf)  // a zero weight terminates the series exactly
            return {log_sum, log_sum >= log_target};
        log_sum = log_add_exp(log_sum, log_term);
        if (log_sum >= log_target) return {log_sum, true};

        const double log_ratio_next = 2.0 * (next_log_w + log_cr);
        if (log_ratio_next <= kLogHalf) {
            // tail <= t_k * rho/(1-rho) <= 2 t_k rho for rho <= 1/2
            const double log_tail = std::log(2.0) + log_term + log_ratio_next;
            if (log_tail <= std::log(control_.rel_tol) + log_sum)
                return {log_sum, log_sum >= log_target};
        }
    }
    throw TailNotConvergedError(
        "series tail not certified within " + std::to_string(control_.max_terms) +
        " terms (weight decays too slowly for r = " + std::to_string(r) + ")");
}

double BoundFunction::log_F(double r) const {
    if (!(r >= 0.0)) throw DomainError("F: argument must be >= 0");
    if (r == 0.0) return 0.0;
    const double w1 = std::exp(log_w1_);
    const SeriesResult s = log_F_series(r, kInf);
    return std::log1p(r * w1) + s.log_value;
}

double BoundFunction::log_F_tilde(double r) const {
    if (!(r > 0.0)) throw DomainError("Ftilde: argument must be > 0");
    return std::log(r) + log_F(r);
}

double BoundFunction::F_tilde_inverse(double y) const {
    if (!(y > 0.0) || !std::isfinite(y))
        throw DomainError("Ftilde inverse: argument must be finite and > 0");
    const double log_y = std::log(y);
    const double w1 = std::exp(log_w1_);

    // Is Ftilde(e^u) >= y? Early-exit evaluation, cheap on both branches.
    auto at_least = [&](double u) {
        const double r = std::exp(u);
        const double log_s_target = log_y - u - std::log1p(r * w1);
        return log_F_series(r, log_s_target).reached_target;
    };

    // Ftilde(y) = y F(y) >= y certifies the upper end with no evaluation.
    double u_hi = log_y;
    double u_lo = u_hi;
    double step = 1.0;
    for (int i = 0; i < 200; ++i) {
        u_lo -= step;
        step *= 2.0;
        if (!at_least(u_lo)) break;
        u_hi = u_lo;
    }

    while (u_hi - u_lo > 1e-8) {
        const double mid = 0.5 * (u_lo + u_hi);
        if (at_least(mid))
            u_hi = mid;
        else
            u_lo = mid;
    }

    // Secant polish on g(u) = u + log F(e^u) - log y, monotone and smooth.
    auto g = [&](double u) { return u + log_F(std::exp(u)) - log_y; };
    double ua = u_lo, ub = u_hi;
    double ga = g(ua), gb = g(ub);
    for (int i = 0; i < 8 && std::abs(gb) > 1e-15 * std::max(1.0, std::abs(log_y)); ++i) {
        if (gb == ga) break;
        const double un = ub - gb * (ub - ua) / (gb - ga);
        if (!std::isfinite(un)) break;
        ua = ub;
        ga = gb;
        ub = std::clamp(un, u_lo - 1e-8, u_hi + 1e-8);
        gb = g(ub);
    }
    const double u_root = std::abs(gb) <= std::abs(ga) ? ub : ua;
    return std::exp(u_root);
}

double BoundFunction::H(double r) const {
    if (!(r >= 0.0)) throw DomainError("H: argument must be >= 0");
    if (r == 0.0) return 0.0;
    const double inv = 1.0 / r;
    if (!std::isfinite(inv)) return 0.0;
    return 1.0 / F_tilde_inverse(inv);
}

double quasinilpotent_resolvent_bound(const BoundFunction& bf, double gauge, Complex z) {
    if (!(gauge >= 0.0)) throw DomainError("quasinilpotent bound: gauge must be >= 0");
    const double az = std::abs(z);
    if (az == 0.0) throw ZeroPointError("quasinilpotent bound: z must be nonzero");
    return std::exp(-std::log(az) + bf.log_F(gauge / az));
}

NonNormalityBudget departure_budget(const ComplexMatrix& a, const WeightSpec& w,
                                    BudgetStrategy strategy) {
    ensure_finite(a);
    if (a.rows() != a.cols())
        throw NonSquareError("departure_budget: matrix must be square");

    const double cap_gauge = w_gauge(a, w);
    const double cap = 2.0 * cap_gauge;
    const WeightSpec wdb = dot(bar(w));

    double schur_gauge = kInf;
    if (strategy != BudgetStrategy::TwoGaugeOnly) {
        SchurOrdering ordering = ModulusDescending{};
        if (strategy == BudgetStrategy::SearchSmall) ordering = SearchSmall{w};
        const SchurParts parts = schur_decompose(a, ordering);
        schur_gauge = w_gauge(parts.nilpotent_part, wdb);
    }

    NonNormalityBudget budget;
    if (schur_gauge <= cap) {
        budget.nu_upper = schur_gauge;
        budget.source = BudgetSource::SchurSearch;
    } else {
        budget.nu_upper = cap;
        budget.source = BudgetSource::TwoGauge;
    }
    if (!std::isfinite(budget.nu_upper))
        throw GaugeInfiniteError(
            "departure_budget: singular values incompatible with the weight "
            "at this truncation (gauge is infinite)");
    return budget;
}

double resolvent_bound_at(const BoundFunction& bf_dotbar,
                          const std::vector<Complex>& spectrum, Complex z,
                          double nu_upper, double on_spectrum_tol_abs) {
    const double d = distance_to_spectrum(z, spectrum);
    if (d <= on_spectrum_tol_abs)
        throw OnSpectrumError("resolvent_bound: z is on (or numerically on) the spectrum");
    if (nu_upper == 0.0) return 1.0 / d;  // F(0) = 1, normal collapse
    return std::exp(-std::log(d) + bf_dotbar.log_F(nu_upper / d));
}

double resolvent_bound(const ComplexMatrix& a, const WeightSpec& w, Complex z,
                       const NonNormalityBudget& budget, double dostanic_c,
                       const SeriesControl& control, double on_spectrum_tol) {
    const std::vector<Complex> spectrum = eigenvalues(a).values;
    const double scale = 1.0 + operator_norm(a);
    const BoundFunction bf = BoundFunction::for_operator_weight(w, dostanic_c, control);
    return resolvent_bound_at(bf, spectrum, z, budget.nu_upper, on_spectrum_tol * scale);
}

}  // namespace specbound
