#include "pptd/json_io.hpp"

#include <fstream>

namespace pptd {

namespace {

Json crat_to_json(const CRat& z) {
    return Json::array({rat_to_string(z.re), rat_to_string(z.im)});
}

CRat crat_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
        throw std::invalid_argument("operator JSON: exact entries must be [\"p/q\",\"r/s\"]");
    return CRat(rat_from_string(j[0].get<std::string>()), rat_from_string(j[1].get<std::string>()));
}

Json cx_to_json(const Cx& z) {
    return Json::array({z.real(), z.imag()});
}

Cx cx_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw std::invalid_argument("operator JSON: float entries must be [re, im]");
    return Cx(j[0].get<double>(), j[1].get<double>());
}

Json factors_to_json(const TensorFactorization& f) {
    Json arr = Json::array();
    for (const Factor& fac : f.factors())
        arr.push_back({{"dim", fac.dim}, {"party", to_string(fac.party)}});
    return arr;
}

TensorFactorization factors_from_json(const Json& j) {
    std::vector<Factor> factors;
    for (const Json& fj : j) {
        const std::string party = fj.at("party").get<std::string>();
        if (party != "A" && party != "B")
            throw std::invalid_argument("operator JSON: party must be \"A\" or \"B\"");
        factors.push_back({fj.at("dim").get<int>(), party == "A" ? Party::A : Party::B});
    }
    return TensorFactorization(std::move(factors));
}

Rat rat_from_json(const Json& j) {
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    if (j.is_number()) return Rat(j.get<double>());  // doubles are dyadic, conversion is exact
    throw std::invalid_argument("JSON: expected a rational (\"p/q\" string or number)");
}

}  // namespace

Json operator_to_json(const Operator& op) {
    Json j;
    j["dim"] = op.dim();
    j["mode"] = to_string(op.mode());
    j["factors"] = factors_to_json(op.factorization());
    Json rows = Json::array();
    const long n = op.dim();
    for (long r = 0; r < n; ++r) {
        Json row = Json::array();
        for (long c = 0; c < n; ++c) {
            if (op.mode() == ScalarMode::Exact)
                row.push_back(crat_to_json(op.exact()(r, c)));
            else
                row.push_back(cx_to_json(op.floating()(r, c)));
        }
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

Operator operator_from_json(const Json& j) {
    const long dim = j.at("dim").get<long>();
    const std::string mode = j.at("mode").get<std::string>();
    if (mode != "exact" && mode != "float")
        throw std::invalid_argument("operator JSON: mode must be \"exact\" or \"float\"");
    TensorFactorization f = factors_from_json(j.at("factors"));
    const Json& entries = j.at("entries");
    if (static_cast<long>(entries.size()) != dim)
        throw std::invalid_argument("operator JSON: entry row count != dim");

    if (mode == "exact") {
        ExactMat m(dim);
        for (long r = 0; r < dim; ++r) {
            const Json& row = entries[static_cast<size_t>(r)];
            if (static_cast<long>(row.size()) != dim)
                throw std::invalid_argument("operator JSON: entry column count != dim");
            for (long c = 0; c < dim; ++c) m(r, c) = crat_from_json(row[static_cast<size_t>(c)]);
        }
        return Operator(std::move(m), std::move(f));
    }
    FloatMat m(dim);
    for (long r = 0; r < dim; ++r) {
        const Json& row = entries[static_cast<size_t>(r)];
        if (static_cast<long>(row.size()) != dim)
            throw std::invalid_argument("operator JSON: entry column count != dim");
        for (long c = 0; c < dim; ++c) m(r, c) = cx_from_json(row[static_cast<size_t>(c)]);
    }
    return Operator(std::move(m), std::move(f));
}

Json state_set_to_json(const StateSet& set) {
    Json j;
    if (set.t) j["t"] = *set.t;
    j["d"] = set.d;
    j["k"] = set.k();
    Json priors = Json::array();
    for (const Rat& p : set.priors) priors.push_back(rat_to_string(p));
    j["priors"] = std::move(priors);
    Json states = Json::array();
    for (const Operator& s : set.states) states.push_back(operator_to_json(s));
    j["states"] = std::move(states);
    return j;
}

StateSet state_set_from_json(const Json& j) {
    StateSet set;
    if (j.contains("t") && !j["t"].is_null()) set.t = j["t"].get<int>();
    set.d = j.at("d").get<int>();
    for (const Json& sj : j.at("states")) set.states.push_back(operator_from_json(sj));
    if (j.contains("priors")) {
        for (const Json& pj : j["priors"]) set.priors.push_back(rat_from_json(pj));
    } else {
        set.priors.assign(set.states.size(), Rat(1) / Rat(static_cast<long>(set.states.size())));
    }
    if (set.priors.size() != set.states.size())
        throw std::invalid_argument("state set JSON: prior count != state count");
    return set;
}

Json certificate_to_json(const DualCertificate& cert) {
    Json j;
    j["t"] = cert.t;
    j["k"] = cert.k;
    j["Y"] = operator_to_json(cert.Y);
    Json q = Json::array();
    for (const Operator& qi : cert.Q) q.push_back(operator_to_json(qi));
    j["Q"] = std::move(q);
    return j;
}

DualCertificate certificate_from_json(const Json& j) {
    DualCertificate cert{operator_from_json(j.at("Y")), {}, j.at("t").get<int>(),
                         j.at("k").get<int>()};
    for (const Json& qj : j.at("Q")) cert.Q.push_back(operator_from_json(qj));
    if (static_cast<int>(cert.Q.size()) != cert.k)
        throw std::invalid_argument("certificate JSON: Q count != k");
    return cert;
}

Json verification_report_to_json(const VerificationReport& report, int k) {
    Json j;
    j["feasible"] = report.feasible;
    j["objective"] = rat_to_string(report.objective);
    j["objective_decimal"] = report.objective.get_d();
    Json per = Json::array();
    for (int c = 0; c < k; ++c)
        per.push_back({{"j", c + 1}, {"slack_psd", report.slack_psd[static_cast<size_t>(c)]}});
    j["per_constraint"] = std::move(per);
    Json failures = Json::array();
    for (const VerificationReport::Failure& f : report.failures) {
        Json fj;
        fj["j"] = f.j + 1;
        fj["constraint"] = f.constraint;
        Json w = Json::array();
        for (const CRat& x : f.witness) w.push_back(crat_to_json(x));
        fj["witness"] = std::move(w);
        failures.push_back(std::move(fj));
    }
    j["failures"] = std::move(failures);
    return j;
}

Json solver_result_to_json(const SolverResult& result, bool include_measurement) {
    Json j;
    j["value"] = result.value;
    j["iterations"] = result.iterations;
    j["residuals"] = {{"completeness", result.residuals.completeness},
                      {"cone", result.residuals.cone},
                      {"gap", result.residuals.gap}};
    j["status"] = to_string(result.status);
    if (!result.message.empty()) j["message"] = result.message;
    if (include_measurement) {
        Json ops = Json::array();
        for (const Operator& p : result.measurement.operators) ops.push_back(operator_to_json(p));
        j["measurement"] = std::move(ops);
    }
    return j;
}

Json simulation_result_to_json(const SimulationResult& result, int t, int j_index) {
    Json j;
    j["t"] = t;
    j["j"] = j_index;
    j["outcome"] = {{"identified_index", result.outcome.identified_index},
                    {"correct", result.outcome.correct},
                    {"catalyst_fidelity", rat_to_string(result.outcome.catalyst_fidelity)},
                    {"rounds", result.outcome.rounds},
                    {"branch_count", result.outcome.branch_count}};
    Json branches = Json::array();
    for (const ProtocolState& ps : result.branches) {
        Json bj;
        bj["probability"] = rat_to_string(ps.probability);
        bj["identified_index"] = ps.identified_index ? Json(*ps.identified_index) : Json();
        bj["catalyst_fidelity"] = rat_to_string(ps.catalyst_fidelity);
        Json events = Json::array();
        for (const TranscriptEvent& e : ps.transcript) {
            events.push_back({{"round", e.round},
                              {"party", to_string(e.party)},
                              {"action", e.action},
                              {"qubits", e.qubits},
                              {"outcome", e.outcome},
                              {"probability", rat_to_string(e.probability)}});
        }
        bj["events"] = std::move(events);
        branches.push_back(std::move(bj));
    }
    j["branches"] = std::move(branches);
    return j;
}

void write_json_file(const std::string& path, const Json& doc) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << doc.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error("malformed JSON in " + path + ": " + e.what());
    }
}

}  // namespace pptd
