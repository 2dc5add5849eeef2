#ifndef SPECBOUND_REPORT_HPP
#define SPECBOUND_REPORT_HPP

//
// Machine-readable run reports. Key order is fixed (insertion order of an
// ordered JSON document) so identical inputs and seed produce byte-identical
// output. Non-finite numbers are emitted as the strings "inf"/"-inf"/"nan".
//

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "specbound/perturbation.hpp"
#include "specbound/pseudospectra.hpp"

namespace specbound {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "specbound";
inline constexpr const char* kToolVersion = "0.1.0";

// Number that degrades to a string for non-finite values.
Json json_number(double v);
Json json_complex(const Complex& z);
Json json_point_list(const std::vector<Complex>& points);

struct ReportHeader {
    std::string command;       // subcommand + argument echo
    std::string weight;        // weight spec string, empty if not applicable
    double dostanic_c = kDefaultDostanicC;
    std::uint64_t seed = 0;
    double tolerance = 1e-10;
    bool include_timings = false;
};

Json make_report(const ReportHeader& header);

void add_warning(Json& report, const std::string& warning);
void add_timing(Json& report, const std::string& phase, double seconds);

Json certificate_to_json(const DistanceCertificate& cert);
Json disks_to_json(const InclusionDisks& disks);

}  // namespace specbound

#endif
