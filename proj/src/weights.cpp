#include "specbound/weights.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "specbound/errors.hpp"

namespace specbound {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double base_log_eval(const WeightSpec& w, std::size_t k) {
    switch (w.kind) {
        case WeightKind::SchattenLorentz:
            return -std::log(static_cast<double>(k)) / w.p;
        case WeightKind::Exponential:
            return -w.a * std::pow(static_cast<double>(k), w.alpha);
        case WeightKind::Explicit: {
            if (k > w.values.size()) return kNegInf;
            const double v = w.values[k - 1];
            return v > 0.0 ? std::log(v) : kNegInf;
        }
    }
    return kNegInf;
}

WeightSpec drop_last_transform(const WeightSpec& w) {
    WeightSpec inner = w;
    inner.chain.pop_back();
    return inner;
}

}  // namespace

WeightSpec WeightSpec::schatten_lorentz(double p) {
    if (!(p > 0.0)) throw DomainError("Schatten-Lorentz weight requires p > 0");
    WeightSpec w;
    w.kind = WeightKind::SchattenLorentz;
    w.p = p;
    return w;
}

WeightSpec WeightSpec::exponential(double a, double alpha) {
    if (!(a > 0.0) || !(alpha > 0.0))
        throw DomainError("exponential weight requires a > 0 and alpha > 0");
    WeightSpec w;
    w.kind = WeightKind::Exponential;
    w.a = a;
    w.alpha = alpha;
    return w;
}

WeightSpec WeightSpec::explicit_list(std::vector<double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] >= 0.0) || !std::isfinite(values[i]))
            throw DomainError("explicit weight values must be finite and nonnegative");
        if (i + 1 < values.size() && values[i] < values[i + 1])
            throw DomainError("explicit weight values must be nonincreasing");
    }
    WeightSpec w;
    w.kind = WeightKind::Explicit;
    w.values = std::move(values);
    return w;
}

WeightSpec bar(const WeightSpec& w) {
    WeightSpec out = w;
    out.chain.push_back(WeightTransform::Bar);
    return out;
}

WeightSpec dot(const WeightSpec& w) {
    WeightSpec out = w;
    out.chain.push_back(WeightTransform::Dot);
    return out;
}

double log_eval(const WeightSpec& w, std::size_t k) {
    if (k == 0) throw DomainError("weight index starts at 1");
    if (w.chain.empty()) return base_log_eval(w, k);

    if (w.chain.back() == WeightTransform::Dot)
        return log_eval(drop_last_transform(w), (k + 1) / 2);

    // Bar: geometric mean of the first k inner entries.
    const WeightSpec inner = drop_last_transform(w);
    if (inner.chain.empty()) {
        // Closed forms keep large-k probes cheap and exact in log domain.
        if (inner.kind == WeightKind::SchattenLorentz)
            return -std::lgamma(static_cast<double>(k) + 1.0) /
                   (inner.p * static_cast<double>(k));
        if (inner.kind == WeightKind::Exponential && inner.alpha == 1.0)
            return -inner.a * (static_cast<double>(k) + 1.0) / 2.0;
    }
    WeightScanner scan(inner);
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) sum += scan.next_log();
    return sum / static_cast<double>(k);
}

double eval(const WeightSpec& w, std::size_t k) { return std::exp(log_eval(w, k)); }

double prefix_log_product(const WeightSpec& w, std::size_t k) {
    if (k == 0) throw DomainError("weight index starts at 1");
    WeightScanner scan(w);
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        sum += scan.next_log();
        if (sum == kNegInf) return kNegInf;
    }
    return sum;
}

WeightScanner::WeightScanner(const WeightSpec& w)
    : kind_(w.kind), p_(w.p), a_(w.a), alpha_(w.alpha), values_(w.values) {
    layers_.reserve(w.chain.size());
    for (WeightTransform t : w.chain) layers_.push_back(Layer{t});
}

double WeightScanner::base_next_log() {
    ++base_k_;
    switch (kind_) {
        case WeightKind::SchattenLorentz:
            return -std::log(static_cast<double>(base_k_)) / p_;
        case WeightKind::Exponential:
            return -a_ * std::pow(static_cast<double>(base_k_), alpha_);
        case WeightKind::Explicit: {
            if (base_k_ > values_.size()) return kNegInf;
            const double v = values_[base_k_ - 1];
            return v > 0.0 ? std::log(v) : kNegInf;
        }
    }
    return kNegInf;
}

double WeightScanner::layer_next_log(std::size_t i) {
    Layer& layer = layers_[i];
    auto pull = [&]() { return i == 0 ? base_next_log() : layer_next_log(i - 1); };
    if (layer.t == WeightTransform::Dot) {
        if (layer.has_cached) {
            layer.has_cached = false;
            return layer.cached;
        }
        layer.cached = pull();
        layer.has_cached = true;
        return layer.cached;
    }
    // Bar
    layer.run_sum += pull();
    ++layer.count;
    return layer.run_sum / static_cast<double>(layer.count);
}

double WeightScanner::next_log() {
    ++emitted_;
    return layers_.empty() ? base_next_log() : layer_next_log(layers_.size() - 1);
}

PreceqResult preceq(const WeightSpec& v, const WeightSpec& w, std::size_t probe_len) {
    if (probe_len == 0) throw DomainError("probe length must be >= 1");
    WeightScanner sv(v), sw(w);
    PreceqResult res;
    double best = 0.0;
    for (std::size_t k = 1; k <= probe_len; ++k) {
        const double lv = sv.next_log();
        const double lw = sw.next_log();
        if (lv == kNegInf) continue;  // v_k = 0 never constrains M
        if (lw == kNegInf) {
            res.holds = false;
            res.fail_index = k;
            return res;
        }
        best = std::max(best, std::exp(lv - lw));
    }
    res.holds = true;
    res.constant = best;
    return res;
}

namespace {

double parse_double(std::string_view s, const std::string& what) {
    double out = 0.0;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc() || ptr != end)
        throw ParseError("bad numeric value '" + std::string(s) + "' in " + what);
    return out;
}

}  // namespace

WeightSpec parse_weight(const std::string& text) {
    std::string body = text;
    std::vector<WeightTransform> chain;
    // Chain suffixes are stripped right to left, then re-applied in
    // the written (left to right) order.
    while (true) {
        if (body.size() > 4 && body.ends_with(".bar")) {
            chain.push_back(WeightTransform::Bar);
            body.resize(body.size() - 4);
        } else if (body.size() > 4 && body.ends_with(".dot")) {
            chain.push_back(WeightTransform::Dot);
            body.resize(body.size() - 4);
        } else {
            break;
        }
    }
    std::reverse(chain.begin(), chain.end());

    const auto colon = body.find(':');
    if (colon == std::string::npos)
        throw ParseError("weight '" + text + "': expected '<family>:<params>'");
    const std::string family = body.substr(0, colon);
    const std::string params = body.substr(colon + 1);

    WeightSpec w;
    if (family == "sl") {
        if (!params.starts_with("p="))
            throw ParseError("weight '" + text + "': expected sl:p=<value>");
        w = WeightSpec::schatten_lorentz(parse_double(std::string_view(params).substr(2), text));
    } else if (family == "exp") {
        double a = 0.0, alpha = 0.0;
        bool have_a = false, have_alpha = false;
        std::stringstream ss(params);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.starts_with("a=")) {
                a = parse_double(std::string_view(item).substr(2), text);
                have_a = true;
            } else if (item.starts_with("alpha=")) {
                alpha = parse_double(std::string_view(item).substr(6), text);
                have_alpha = true;
            } else {
                throw ParseError("weight '" + text + "': unknown parameter '" + item + "'");
            }
        }
        if (!have_a || !have_alpha)
            throw ParseError("weight '" + text + "': expected exp:a=<a>,alpha=<alpha>");
        w = WeightSpec::exponential(a, alpha);
    } else if (family == "explicit") {
        std::vector<double> values;
        std::stringstream ss(params);
        std::string item;
        while (std::getline(ss, item, ',')) values.push_back(parse_double(item, text));
        if (values.empty())
            throw ParseError("weight '" + text + "': explicit list is empty");
        w = WeightSpec::explicit_list(std::move(values));
    } else {
        throw ParseError("weight '" + text + "': unknown family '" + family + "'");
    }
    w.chain = std::move(chain);
    return w;
}

std::string format_weight(const WeightSpec& w) {
    std::ostringstream out;
    out.precision(17);
    switch (w.kind) {
        case WeightKind::SchattenLorentz:
            out << "sl:p=" << w.p;
            break;
        case WeightKind::Exponential:
            out << "exp:a=" << w.a << ",alpha=" << w.alpha;
            break;
        case WeightKind::Explicit: {
            out << "explicit:";
            for (std::size_t i = 0; i < w.values.size(); ++i) {
                if (i) out << ',';
                out << w.values[i];
            }
            break;
        }
    }
    for (WeightTransform t : w.chain)
        out << (t == WeightTransform::Bar ? ".bar" : ".dot");
    return out.str();
}

}  // namespace specbound
