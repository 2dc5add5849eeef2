#ifndef SPECBOUND_WEIGHTS_HPP
#define SPECBOUND_WEIGHTS_HPP

//
// Weight sequences: nonincreasing, nonnegative, tending to zero. A weight
// fixes a singular-value decay rate; the compactness-class machinery is
// parameterised by it. Supported families:
//
//   sl:p=<p>              w_k = k^{-1/p}            (Schatten-Lorentz)
//   exp:a=<a>,alpha=<al>  w_k = exp(-a k^alpha)     (exponential class)
//   explicit:v1,v2,...    finite list, zero past the end
//
// Two derived sequences are used throughout:
//   bar(w)_k = (w_1 ... w_k)^{1/k}   successive geometric means
//   dot(w)   = (w_1, w_1, w_2, w_2, ...)  every entry doubled
//
// All evaluation is done in log domain; exp-class weights underflow double
// precision well inside the probe range otherwise.
//

#include <cstdint>
#include <string>
#include <vector>

namespace specbound {

enum class WeightKind { SchattenLorentz, Exponential, Explicit };

enum class WeightTransform { Bar, Dot };

struct WeightSpec {
    WeightKind kind = WeightKind::SchattenLorentz;
    double p = 1.0;      // Schatten-Lorentz exponent
    double a = 1.0;      // exponential scale
    double alpha = 1.0;  // exponential power
    std::vector<double> values;  // explicit list, nonincreasing
    std::vector<WeightTransform> chain;  // applied left to right

    static WeightSpec schatten_lorentz(double p);
    static WeightSpec exponential(double a, double alpha);
    static WeightSpec explicit_list(std::vector<double> values);

    // True when the explicit zero extension can make downstream series
    // terminate (always true for explicit lists).
    bool zero_extended() const { return kind == WeightKind::Explicit; }
};

// Append a transform; both return a new spec, the input is untouched.
WeightSpec bar(const WeightSpec& w);
WeightSpec dot(const WeightSpec& w);

// log w_k (-inf where w_k = 0). k >= 1.
double log_eval(const WeightSpec& w, std::size_t k);

// w_k itself.
double eval(const WeightSpec& w, std::size_t k);

// log(w_1 ... w_k), -inf once any factor vanishes.
double prefix_log_product(const WeightSpec& w, std::size_t k);

// Sequential evaluator: yields log w_1, log w_2, ... in amortized O(1)
// per step regardless of the transform chain.
class WeightScanner {
  public:
    explicit WeightScanner(const WeightSpec& w);
    double next_log();
    std::size_t position() const { return emitted_; }

  private:
    struct Layer {
        WeightTransform t;
        double run_sum = 0.0;   // Bar: sum of inner logs
        std::size_t count = 0;  // Bar: entries folded into run_sum
        double cached = 0.0;    // Dot: pending duplicate
        bool has_cached = false;
    };

    double base_next_log();
    double layer_next_log(std::size_t i);

    WeightKind kind_;
    double p_ = 1.0, a_ = 1.0, alpha_ = 1.0;
    std::vector<double> values_;
    std::size_t base_k_ = 0;
    std::size_t emitted_ = 0;
    std::vector<Layer> layers_;
};

// Result of probing v <= M w over k = 1..K.
struct PreceqResult {
    bool holds = false;
    double constant = 0.0;      // least M over the probe (when holds)
    std::size_t fail_index = 0; // first k with w_k = 0 < v_k (when !holds)
};

PreceqResult preceq(const WeightSpec& v, const WeightSpec& w, std::size_t probe_len);

// Text syntax used by the CLI: family spec plus ".bar"/".dot" suffixes,
// applied left to right, e.g. "sl:p=1.bar.dot".
WeightSpec parse_weight(const std::string& text);
std::string format_weight(const WeightSpec& w);

// Default probe length for sequence-level checks.
inline constexpr std::size_t kDefaultProbeLength = 10000;

}  // namespace specbound

#endif
