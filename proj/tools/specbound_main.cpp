//
// specbound: w-gauges, resolvent and spectral-distance bounds, and
// pseudospectrum inclusion regions for dense complex matrices.
//
// Exit codes: 0 ok, 2 parse error, 3 math-domain error, 4 series did not
// converge, 1 anything else.
//

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "specbound/asymptotics.hpp"
#include "specbound/bounds.hpp"
#include "specbound/errors.hpp"
#include "specbound/io.hpp"
#include "specbound/perturbation.hpp"
#include "specbound/pseudospectra.hpp"
#include "specbound/report.hpp"
#include "specbound/spectral.hpp"
#include "specbound/weights.hpp"

namespace sb = specbound;

namespace {

struct CommonOptions {
    std::string weight_text;
    double dostanic_c = sb::kDefaultDostanicC;
    std::uint64_t seed = 0;
    double tolerance = 1e-10;
    std::size_t max_terms = 100000;
    bool verify = false;
    bool timings = false;
    std::string json_path;
    std::string csv_path;
    std::string strategy = "modulus";
};

sb::BudgetStrategy parse_strategy(const std::string& s) {
    if (s == "modulus") return sb::BudgetStrategy::ModulusOrder;
    if (s == "search") return sb::BudgetStrategy::SearchSmall;
    if (s == "twogauge") return sb::BudgetStrategy::TwoGaugeOnly;
    throw sb::ParseError("unknown budget strategy '" + s + "'");
}

sb::PerturbationConfig make_config(const CommonOptions& opt) {
    sb::PerturbationConfig cfg;
    cfg.dostanic_c = opt.dostanic_c;
    cfg.series.max_terms = opt.max_terms;
    cfg.strategy = parse_strategy(opt.strategy);
    return cfg;
}

void add_common_flags(CLI::App* cmd, CommonOptions& opt, bool wants_weight = true) {
    if (wants_weight)
        cmd->add_option("-w,--weight", opt.weight_text,
                        "weight spec, e.g. sl:p=1, exp:a=0.5,alpha=1, explicit:1,0.5"
                        " with optional .bar/.dot suffixes")
            ->required();
    cmd->add_option("--dostanic-c", opt.dostanic_c,
                    "power-bound constant used inside F (default 2.0)");
    cmd->add_option("--seed", opt.seed, "seed for randomized verification");
    cmd->add_option("--tolerance", opt.tolerance, "numerical tolerance scale");
    cmd->add_option("--max-terms", opt.max_terms, "series term budget");
    cmd->add_flag("--verify", opt.verify, "append brute-force oracle observations");
    cmd->add_flag("--timings", opt.timings, "include wall-clock timings in the report");
    cmd->add_option("--json", opt.json_path, "write the JSON report to this file");
    cmd->add_option("--csv", opt.csv_path, "write CSV data (pseudo grid) to this file");
    cmd->add_option("--strategy", opt.strategy,
                    "departure budget strategy: modulus|search|twogauge");
}

std::vector<sb::Complex> parse_point_list(const std::string& text) {
    std::vector<sb::Complex> points;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        const auto comma = item.find(',');
        if (comma == std::string::npos)
            throw sb::ParseError("point '" + item + "': expected re,im");
        try {
            points.push_back(sb::Complex(std::stod(item.substr(0, comma)),
                                         std::stod(item.substr(comma + 1))));
        } catch (const std::exception&) {
            throw sb::ParseError("point '" + item + "': bad number");
        }
    }
    if (points.empty()) throw sb::ParseError("empty point list");
    return points;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            values.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw sb::ParseError("bad number '" + item + "' in list");
        }
    }
    if (values.empty()) throw sb::ParseError("empty number list");
    return values;
}

void emit_report(const sb::Json& report, const CommonOptions& opt) {
    if (!opt.json_path.empty()) {
        std::ofstream out(opt.json_path);
        if (!out) throw sb::ParseError(opt.json_path + ": cannot open for writing");
        out << report.dump(2) << "\n";
    } else {
        std::cout << report.dump(2) << "\n";
    }
}

void note_weight_warnings(sb::Json& report, const sb::WeightSpec& w) {
    if (w.zero_extended())
        sb::add_warning(report,
                        "explicit weight extends by zero past its list; series "
                        "terminate at that index");
}

void note_c_conditional(sb::Json& report) {
    sb::add_warning(report,
                    "bound validity is conditional on the configured power-bound "
                    "constant C (no closed-form value is known)");
}

class PhaseTimer {
  public:
    PhaseTimer(sb::Json& report, std::string phase, bool enabled)
        : report_(report), phase_(std::move(phase)), enabled_(enabled),
          start_(std::chrono::steady_clock::now()) {}
    ~PhaseTimer() {
        if (!enabled_) return;
        const auto elapsed = std::chrono::steady_clock::now() - start_;
        sb::add_timing(report_, phase_,
                       std::chrono::duration<double>(elapsed).count());
    }

  private:
    sb::Json& report_;
    std::string phase_;
    bool enabled_;
    std::chrono::steady_clock::time_point start_;
};

std::string echo_command(int argc, char** argv) {
    std::string echo;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) echo += ' ';
        echo += argv[i];
    }
    return echo;
}

// --- subcommands ---------------------------------------------------------

int run_gauge(const std::string& matrix_path, const CommonOptions& opt,
              const std::string& echo) {
    const sb::OperatorMatrix mat = sb::read_matrix_file(matrix_path);
    const sb::WeightSpec w = sb::parse_weight(opt.weight_text);

    sb::Json report = sb::make_report(
        {echo, opt.weight_text, opt.dostanic_c, opt.seed, opt.tolerance, opt.timings});
    note_weight_warnings(report, w);
    PhaseTimer timer(report, "gauge", opt.timings);

    const sb::SingularData s = sb::singular_values(mat.values);
    const double gauge = sb::w_gauge(s, w);

    sb::Json rows = sb::Json::array();
    sb::WeightScanner scan(w);
    std::cout << "  k  s_k            w_k            s_k/w_k\n";
    for (std::size_t k = 0; k < s.values.size(); ++k) {
        const double wk = std::exp(scan.next_log());
        const double ratio = s.values[k] == 0.0 ? 0.0 : s.values[k] / wk;
        rows.push_back(sb::Json{{"k", k + 1},
                                {"s_k", sb::json_number(s.values[k])},
                                {"w_k", sb::json_number(wk)},
                                {"ratio", sb::json_number(ratio)}});
        std::cout << "  " << (k + 1) << "  " << s.values[k] << "  " << wk << "  "
                  << ratio << "\n";
    }
    std::cout << "gauge = " << gauge << "\n";

    report["results"] = sb::Json{{"matrix", matrix_path},
                                 {"matrix_digest", sb::matrix_digest(mat.values)},
                                 {"singular_values", rows},
                                 {"gauge", sb::json_number(gauge)}};
    if (std::isinf(gauge))
        sb::add_warning(report,
                        "gauge is infinite: some singular value is positive where "
                        "the weight is zero at this truncation");
    emit_report(report, opt);
    return 0;
}

int run_resolvent(const std::string& matrix_path, const std::string& points_text,
                  const CommonOptions& opt, const std::string& echo) {
    const sb::OperatorMatrix mat = sb::read_matrix_file(matrix_path);
    const sb::WeightSpec w = sb::parse_weight(opt.weight_text);
    const std::vector<sb::Complex> points = parse_point_list(points_text);
    const sb::PerturbationConfig cfg = make_config(opt);

    sb::Json report = sb::make_report(
        {echo, opt.weight_text, opt.dostanic_c, opt.seed, opt.tolerance, opt.timings});
    note_weight_warnings(report, w);
    note_c_conditional(report);
    PhaseTimer timer(report, "resolvent", opt.timings);

    const sb::NonNormalityBudget budget =
        sb::departure_budget(mat.values, w, cfg.strategy);
    const std::vector<sb::Complex> spectrum = sb::eigenvalues(mat.values).values;
    const double scale = 1.0 + sb::operator_norm(mat.values);
    const sb::BoundFunction bf =
        sb::BoundFunction::for_operator_weight(w, opt.dostanic_c, cfg.series);

    const Eigen::Index n = mat.values.rows();
    sb::Json rows = sb::Json::array();
    for (const sb::Complex& z : points) {
        const double d = sb::distance_to_spectrum(z, spectrum);
        const double bound =
            sb::resolvent_bound_at(bf, spectrum, z, budget.nu_upper, 1e-13 * scale);
        sb::Json row{{"z", sb::json_complex(z)},
                     {"distance", sb::json_number(d)},
                     {"bound", sb::json_number(bound)}};
        if (opt.verify) {
            const sb::ComplexMatrix shifted =
                z * sb::ComplexMatrix::Identity(n, n) - mat.values;
            const auto s = sb::singular_values(shifted).values;
            row["observed_norm"] = sb::json_number(1.0 / s.back());
        }
        rows.push_back(std::move(row));
    }

    report["results"] =
        sb::Json{{"matrix", matrix_path},
                 {"matrix_digest", sb::matrix_digest(mat.values)},
                 {"budget", sb::json_number(budget.nu_upper)},
                 {"budget_source", budget.source == sb::BudgetSource::SchurSearch
                                       ? "schur_search"
                                       : "two_gauge"},
                 {"budget_is_upper_bound", true},
                 {"points", rows}};
    emit_report(report, opt);
    return 0;
}

int run_distance(const std::string& path_a, const std::string& path_b,
                 const CommonOptions& opt, const std::string& echo) {
    const sb::OperatorMatrix a = sb::read_matrix_file(path_a);
    const sb::OperatorMatrix b = sb::read_matrix_file(path_b);
    const sb::WeightSpec w = sb::parse_weight(opt.weight_text);
    const sb::PerturbationConfig cfg = make_config(opt);

    sb::Json report = sb::make_report(
        {echo, opt.weight_text, opt.dostanic_c, opt.seed, opt.tolerance, opt.timings});
    note_weight_warnings(report, w);
    note_c_conditional(report);
    PhaseTimer timer(report, "distance", opt.timings);

    sb::DistanceCertificate cert = sb::spectral_distance_bound(a.values, b.values, w, cfg);
    if (opt.verify) {
        cert.observed = sb::hausdorff_distance(sb::eigenvalues(a.values).values,
                                               sb::eigenvalues(b.values).values);
    }
    report["results"] = sb::Json{{"matrix_a", path_a},
                                 {"matrix_b", path_b},
                                 {"norm_difference",
                                  sb::json_number(sb::operator_norm(a.values - b.values))},
                                 {"certificate", sb::certificate_to_json(cert)}};
    std::cout << "||A-B|| = " << sb::operator_norm(a.values - b.values)
              << ", certified spectral distance <= " << cert.value << "\n";
    if (cert.observed)
        std::cout << "observed Hausdorff distance = " << *cert.observed << "\n";
    emit_report(report, opt);
    return 0;
}

int run_pseudo(const std::string& matrix_path, double epsilon,
               const std::string& region_text, Eigen::Index resolution,
               const CommonOptions& opt, const std::string& echo) {
    const sb::OperatorMatrix mat = sb::read_matrix_file(matrix_path);
    const sb::WeightSpec w = sb::parse_weight(opt.weight_text);
    const sb::PerturbationConfig cfg = make_config(opt);

    sb::ComplexRegion region;
    if (!region_text.empty()) {
        const std::vector<double> r = parse_double_list(region_text);
        if (r.size() != 4)
            throw sb::ParseError("--region expects remin,remax,immin,immax");
        region = {r[0], r[1], r[2], r[3]};
    } else {
        // bounding box of the spectrum inflated by the outer disk radius
        const auto spec = sb::eigenvalues(mat.values).values;
        double re_min = spec[0].real(), re_max = spec[0].real();
        double im_min = spec[0].imag(), im_max = spec[0].imag();
        for (const sb::Complex& lam : spec) {
            re_min = std::min(re_min, lam.real());
            re_max = std::max(re_max, lam.real());
            im_min = std::min(im_min, lam.imag());
            im_max = std::max(im_max, lam.imag());
        }
        const sb::InclusionDisks disks = sb::inclusion_disks(mat.values, w, epsilon, cfg);
        const double pad = 1.5 * disks.outer_radius + 1e-3;
        region = {re_min - pad, re_max + pad, im_min - pad, im_max + pad};
    }

    sb::Json report = sb::make_report(
        {echo, opt.weight_text, opt.dostanic_c, opt.seed, opt.tolerance, opt.timings});
    note_weight_warnings(report, w);
    note_c_conditional(report);
    PhaseTimer timer(report, "pseudo", opt.timings);

    const sb::PseudoGrid grid =
        sb::pseudospectrum_grid(mat.values, region, resolution, epsilon);
    const sb::InclusionDisks disks = sb::inclusion_disks(mat.values, w, epsilon, cfg);

    std::size_t inside = 0, indeterminate = 0;
    for (std::uint8_t m : grid.member) {
        inside += (m == sb::kInside);
        indeterminate += (m == sb::kIndeterminate);
    }

    report["results"] = sb::Json{
        {"matrix", matrix_path},
        {"matrix_digest", sb::matrix_digest(mat.values)},
        {"epsilon", sb::json_number(epsilon)},
        {"region", sb::Json{{"re_min", sb::json_number(region.re_min)},
                            {"re_max", sb::json_number(region.re_max)},
                            {"im_min", sb::json_number(region.im_min)},
                            {"im_max", sb::json_number(region.im_max)}}},
        {"resolution", resolution},
        {"nodes_inside", inside},
        {"nodes_indeterminate", indeterminate},
        {"disks", sb::disks_to_json(disks)}};

    if (opt.verify) {
        // random perturbations below epsilon must land inside the masked set
        std::mt19937_64 rng(opt.seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        const Eigen::Index n = mat.values.rows();
        std::size_t landed = 0, total = 0;
        for (int trial = 0; trial < 50; ++trial) {
            sb::ComplexMatrix e(n, n);
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j < n; ++j)
                    e(i, j) = sb::Complex(gauss(rng), gauss(rng));
            e *= (0.9 * epsilon) / sb::operator_norm(e);
            const auto perturbed = sb::eigenvalues(mat.values + e).values;
            for (const sb::Complex& lam : perturbed) {
                ++total;
                // nearest node; Lipschitz slack of one cell diagonal
                const double fx = (lam.real() - region.re_min) /
                                  (region.re_max - region.re_min);
                const double fy = (lam.imag() - region.im_min) /
                                  (region.im_max - region.im_min);
                const auto ix = static_cast<Eigen::Index>(
                    std::round(fx * static_cast<double>(resolution - 1)));
                const auto iy = static_cast<Eigen::Index>(
                    std::round(fy * static_cast<double>(resolution - 1)));
                if (ix < 0 || iy < 0 || ix >= resolution || iy >= resolution) continue;
                const double s =
                    grid.s_min[static_cast<std::size_t>(iy) * resolution + ix];
                landed += (s < epsilon + grid.cell_diag());
            }
        }
        report["results"]["verify"] =
            sb::Json{{"perturbed_eigenvalues", total},
                     {"inside_masked_set", landed}};
    }

    if (!opt.csv_path.empty()) {
        std::ofstream csv(opt.csv_path);
        if (!csv) throw sb::ParseError(opt.csv_path + ": cannot open for writing");
        sb::write_grid_csv(csv, grid);
    }
    emit_report(report, opt);
    return 0;
}

int run_truncate(const std::string& matrix_path, Eigen::Index k,
                 const CommonOptions& opt, const std::string& echo) {
    const sb::OperatorMatrix mat = sb::read_matrix_file(matrix_path);
    const sb::WeightSpec w = sb::parse_weight(opt.weight_text);
    const sb::PerturbationConfig cfg = make_config(opt);

    sb::Json report = sb::make_report(
        {echo, opt.weight_text, opt.dostanic_c, opt.seed, opt.tolerance, opt.timings});
    note_weight_warnings(report, w);
    note_c_conditional(report);
    PhaseTimer timer(report, "truncate", opt.timings);

    const sb::TruncationResult res = sb::truncation_certify(mat.values, k, w, cfg);

    report["results"] = sb::Json{
        {"matrix", matrix_path},
        {"matrix_digest", sb::matrix_digest(mat.values)},
        {"k", k},
        {"truncated_spectrum", sb::json_point_list(res.truncated_spectrum)},
        {"enclosure_radius", sb::json_number(res.enclosure_radius)},
        {"certificate", sb::certificate_to_json(res.certificate)}};

    if (opt.verify) {
        // compare full spectrum against sigma(A_k) plus the origin disk
        std::vector<sb::Complex> centers = res.truncated_spectrum;
        centers.push_back(sb::Complex(0, 0));
        const auto spec = sb::eigenvalues(mat.values).values;
        const double observed = sb::hausdorff_distance(spec, centers);
        report["results"]["observed_hausdorff_vs_centers"] = sb::json_number(observed);
        report["results"]["observed_within_radius"] =
            observed <= res.enclosure_radius + opt.tolerance;
    }
    std::cout << "truncation k = " << k << ", enclosure radius = "
              << res.enclosure_radius << "\n";
    emit_report(report, opt);
    return 0;
}

int run_asym(const std::string& family, double p, double a, double alpha,
             const std::string& r_text, const CommonOptions& opt,
             const std::string& echo) {
    sb::AsymptoticModel model{sb::SchattenLorentzFamily{p}, opt.dostanic_c};
    sb::WeightSpec w = sb::WeightSpec::schatten_lorentz(p);
    if (family == "exp") {
        model.family = sb::ExponentialFamily{a, alpha};
        w = sb::WeightSpec::exponential(a, alpha);
    } else if (family != "sl") {
        throw sb::ParseError("--family must be sl or exp");
    }
    const std::vector<double> r_grid = parse_double_list(r_text);

    sb::Json report = sb::make_report(
        {echo, sb::format_weight(w), opt.dostanic_c, opt.seed, opt.tolerance,
         opt.timings});
    PhaseTimer timer(report, "asym", opt.timings);
    if (family == "exp")
        sb::add_warning(report,
                        "exponential-family lower envelopes use numerically "
                        "fitted constants");

    sb::SeriesControl control;
    control.max_terms = opt.max_terms;
    const sb::BoundFunction bf =
        sb::BoundFunction::for_operator_weight(w, opt.dostanic_c, control);

    sb::Json rows = sb::Json::array();
    for (double r : r_grid) {
        sb::Json row{{"r", sb::json_number(r)}};
        const double logf = bf.log_F(r);
        row["log_F"] = sb::json_number(logf);
        if (r > 0) {
            const double predicted = sb::predict_log_F(model, r);
            row["predict_log_F"] = sb::json_number(predicted);
            if (predicted != 0.0) row["ratio"] = sb::json_number(logf / predicted);
        }
        if (r > 0 && r < 1) {
            row["H"] = sb::json_number(bf.H(r));
            row["predict_H"] = sb::json_number(sb::predict_H_small_r(model, r));
        }
        rows.push_back(std::move(row));
        std::cout << "r = " << r << ": log F = " << logf << "\n";
    }
    report["results"] = sb::Json{{"family", family}, {"grid", rows}};
    emit_report(report, opt);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral perturbation bounds for compactness classes"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::string matrix_path, matrix_b_path, points_text, region_text, r_text;
    std::string family = "sl";
    double epsilon = 0.1, p = 1.0, a = 1.0, alpha = 1.0;
    Eigen::Index resolution = 100, trunc_k = 1;

    CLI::App* gauge = app.add_subcommand("gauge", "singular values against a weight");
    gauge->add_option("-m,--matrix", matrix_path, "matrix file (.mtx or .csv)")
        ->required();
    add_common_flags(gauge, opt);

    CLI::App* resolvent =
        app.add_subcommand("resolvent", "resolvent norm bound at sample points");
    resolvent->add_option("-m,--matrix", matrix_path, "matrix file")->required();
    resolvent->add_option("-z,--points", points_text, "semicolon list re,im;re,im")
        ->required();
    add_common_flags(resolvent, opt);

    CLI::App* distance =
        app.add_subcommand("distance", "certified spectral distance of two matrices");
    distance->add_option("-A,--matrix-a", matrix_path, "first matrix")->required();
    distance->add_option("-B,--matrix-b", matrix_b_path, "second matrix")->required();
    add_common_flags(distance, opt);

    CLI::App* pseudo =
        app.add_subcommand("pseudo", "pseudospectrum grid and inclusion disks");
    pseudo->add_option("-m,--matrix", matrix_path, "matrix file")->required();
    pseudo->add_option("--eps", epsilon, "pseudospectrum level")->required();
    pseudo->add_option("--region", region_text, "remin,remax,immin,immax");
    pseudo->add_option("--resolution", resolution, "nodes per axis (default 100)");
    add_common_flags(pseudo, opt);

    CLI::App* truncate =
        app.add_subcommand("truncate", "principal-block truncation certificate");
    truncate->add_option("-m,--matrix", matrix_path, "matrix file")->required();
    truncate->add_option("-k", trunc_k, "truncation size")->required();
    add_common_flags(truncate, opt);

    CLI::App* asym = app.add_subcommand("asym", "growth predictions for F and H");
    asym->add_option("--family", family, "sl or exp")->required();
    asym->add_option("--p", p, "Schatten-Lorentz exponent");
    asym->add_option("--a", a, "exponential scale");
    asym->add_option("--alpha", alpha, "exponential power");
    asym->add_option("-r,--r-grid", r_text, "comma list of arguments")->required();
    add_common_flags(asym, opt, /*wants_weight=*/false);

    try {
        app.parse(argc, argv);
        const std::string echo = echo_command(argc, argv);
        if (gauge->parsed()) return run_gauge(matrix_path, opt, echo);
        if (resolvent->parsed()) return run_resolvent(matrix_path, points_text, opt, echo);
        if (distance->parsed()) return run_distance(matrix_path, matrix_b_path, opt, echo);
        if (pseudo->parsed())
            return run_pseudo(matrix_path, epsilon, region_text, resolution, opt, echo);
        if (truncate->parsed()) return run_truncate(matrix_path, trunc_k, opt, echo);
        if (asym->parsed()) return run_asym(family, p, a, alpha, r_text, opt, echo);
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const sb::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const sb::TailNotConvergedError& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return 4;
    } catch (const sb::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
