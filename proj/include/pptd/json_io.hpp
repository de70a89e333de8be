#pragma once

// JSON interchange formats shared by the library and the CLI.
//
// Operator document: { dim, mode: "exact"|"float", factors: [{dim, party}],
// entries: dim x dim array of complex values }. Exact complex values are
// ["p/q", "r/s"] string pairs (lossless round-trip); float values are
// [re, im] number pairs. Exact fractions appear as strings everywhere else
// too; decimals are presentation only.

#include <string>

#include "json.hpp"

#include "pptd/catalysis.hpp"
#include "pptd/certificates.hpp"
#include "pptd/operator.hpp"
#include "pptd/sdp.hpp"
#include "pptd/states.hpp"

namespace pptd {

using Json = nlohmann::ordered_json;

Json operator_to_json(const Operator& op);
Operator operator_from_json(const Json& j);

Json state_set_to_json(const StateSet& set);
StateSet state_set_from_json(const Json& j);

Json certificate_to_json(const DualCertificate& cert);
DualCertificate certificate_from_json(const Json& j);

Json verification_report_to_json(const VerificationReport& report, int k);

Json solver_result_to_json(const SolverResult& result, bool include_measurement);

Json simulation_result_to_json(const SimulationResult& result, int t, int j);

// File helpers; throw std::runtime_error on I/O failure.
void write_json_file(const std::string& path, const Json& doc);
Json read_json_file(const std::string& path);

}  // namespace pptd
