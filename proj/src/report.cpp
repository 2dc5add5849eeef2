#include "specbound/report.hpp"

#include <cmath>

namespace specbound {

Json json_number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

Json json_complex(const Complex& z) {
    return Json{{"re", json_number(z.real())}, {"im", json_number(z.imag())}};
}

Json json_point_list(const std::vector<Complex>& points) {
    Json arr = Json::array();
    for (const Complex& z : points) arr.push_back(json_complex(z));
    return arr;
}

Json make_report(const ReportHeader& header) {
    Json report;
    report["tool"] = kToolName;
    report["version"] = kToolVersion;
    report["command"] = header.command;
    if (!header.weight.empty()) report["weight"] = header.weight;
    report["dostanic_c"] = json_number(header.dostanic_c);
    report["seed"] = header.seed;
    report["tolerance"] = json_number(header.tolerance);
    report["warnings"] = Json::array();
    if (header.include_timings) report["timings"] = Json::object();
    return report;
}

void add_warning(Json& report, const std::string& warning) {
    report["warnings"].push_back(warning);
}

void add_timing(Json& report, const std::string& phase, double seconds) {
    if (report.contains("timings")) report["timings"][phase] = json_number(seconds);
}

Json certificate_to_json(const DistanceCertificate& cert) {
    Json j;
    switch (cert.bound_kind) {
        case CertificateKind::Variation:
            j["bound_kind"] = "variation";
            break;
        case CertificateKind::Hausdorff:
            j["bound_kind"] = "hausdorff";
            break;
        case CertificateKind::NormalExact:
            j["bound_kind"] = "normal_exact";
            break;
    }
    j["value"] = json_number(cert.value);
    // The budget is an upper bound on nu_w: the search covers eigenvalue
    // orderings of one triangularisation, not all Schur splits.
    j["budget_used"] = json_number(cert.budget_used);
    j["budget_is_upper_bound"] = true;
    j["weight"] = format_weight(cert.weight);
    if (cert.observed) j["observed"] = json_number(*cert.observed);
    j["inputs_digest"] = cert.inputs_digest;
    return j;
}

Json disks_to_json(const InclusionDisks& disks) {
    Json j;
    j["centers"] = json_point_list(disks.centers);
    j["inner_radius"] = json_number(disks.inner_radius);
    j["outer_radius"] = json_number(disks.outer_radius);
    return j;
}

}  // namespace specbound
