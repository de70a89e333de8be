// End-to-end tests of the pptd binary: exit-code contract, file round-trips,
// and byte-identical re-runs (manifests may differ only in timestamp and
// duration).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include "json.hpp"

#ifndef PPTD_BIN
#error "PPTD_BIN must point at the pptd executable"
#endif

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

const fs::path& work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("pptd_cli_test_" + std::to_string(::getpid()));
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(const std::string& args, const std::string& stdout_file = "") {
    std::string cmd = std::string(PPTD_BIN) + " " + args;
    if (!stdout_file.empty())
        cmd += " > " + (work_dir() / stdout_file).string() + " 2>&1";
    else
        cmd += " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

Json load(const std::string& name) { return Json::parse(slurp(work_dir() / name)); }

std::string path_of(const std::string& name) { return (work_dir() / name).string(); }

// Result payloads must be byte-identical across re-runs; only these two
// manifest fields may differ.
std::string scrub_manifest(Json doc) {
    doc["manifest"]["timestamp_utc"] = "";
    doc["manifest"]["duration_ms"] = 0;
    return doc.dump();
}

}  // namespace

TEST_CASE("construct writes a state-set document with manifest and checks") {
    CHECK(run("construct --t 4 --k 15 --out " + path_of("s15.json"), "construct15.txt") == 0);
    const Json doc = load("s15.json");
    CHECK(doc["manifest"]["command"] == "construct");
    CHECK(doc["manifest"]["tool_version"].is_string());
    CHECK(doc["d"] == 16);
    CHECK(doc["k"] == 15);
    CHECK(doc["states"].size() == 15);
    CHECK(doc["checks"]["orthonormal"] == true);
    CHECK(doc["checks"]["maximally_entangled"] == true);
    const std::string out = slurp(work_dir() / "construct15.txt");
    CHECK(out.find("d = 16") != std::string::npos);
}

TEST_CASE("construct validates parameters and requires an output path") {
    CHECK(run("construct --t 1 --k 1 --out " + path_of("bad.json")) == 2);
    CHECK(run("construct --t 3 --k 9 --out " + path_of("bad.json")) == 2);
    CHECK(run("construct --t 2") == 2);  // no --out
    CHECK(run("construct --t 2 --out /no/such/dir/x.json") == 3);
}

TEST_CASE("certify built-in instances print exact bounds") {
    CHECK(run("certify --t 2 --k 4", "c24.txt") == 0);
    CHECK(slurp(work_dir() / "c24.txt").find("7/8") != std::string::npos);
    CHECK(run("certify --t 4 --k 15", "c415.txt") == 0);
    CHECK(slurp(work_dir() / "c415.txt").find("14/15") != std::string::npos);
    CHECK(run("certify --t 4 --k 16", "c416.txt") == 0);
    CHECK(slurp(work_dir() / "c416.txt").find("7/8") != std::string::npos);
}

TEST_CASE("certify consumes state and certificate files") {
    REQUIRE(run("construct --t 2 --k 4 --out " + path_of("yu.json")) == 0);
    REQUIRE(run("certify --t 2 --k 4 --emit-cert " + path_of("cert.json")) == 0);
    CHECK(run("certify --states " + path_of("yu.json") + " --cert " + path_of("cert.json")) == 0);

    // A sign flip on one dual block breaks feasibility; exit code 1.
    Json cert = load("cert.json");
    for (auto& row : cert["Q"][0]["entries"])
        for (auto& entry : row) {
            const std::string re = entry[0].get<std::string>();
            entry[0] = (re.rfind('-', 0) == 0) ? re.substr(1) : ("-" + re);
        }
    std::ofstream(work_dir() / "cert_bad.json") << cert.dump(2) << '\n';
    CHECK(run("certify --states " + path_of("yu.json") + " --cert " + path_of("cert_bad.json"),
              "certbad.txt") == 1);
    CHECK(slurp(work_dir() / "certbad.txt").find("infeasible") != std::string::npos);

    CHECK(run("certify --states " + path_of("yu.json")) == 2);  // --cert missing
}

TEST_CASE("solve consumes state files and honors the exit contract") {
    REQUIRE(run("construct --t 2 --k 4 --out " + path_of("yu2.json")) == 0);
    CHECK(run("solve --states " + path_of("yu2.json") + " --out " + path_of("r1.json"),
              "solve1.txt") == 0);
    const Json r1 = load("r1.json");
    CHECK(r1["status"] == "converged");
    CHECK(std::abs(r1["value"].get<double>() - 0.875) < 1e-3);

    CHECK(run("solve --states " + path_of("missing.json")) == 3);

    // Iteration starvation must surface as a nonzero exit with residuals.
    CHECK(run("solve --states " + path_of("yu2.json") + " --max-iter 3", "starved.txt") == 1);
    CHECK(slurp(work_dir() / "starved.txt").find("max_iter") != std::string::npos);

    // Invalid instances (bad priors) are usage errors.
    Json bad = load("yu2.json");
    bad["priors"] = Json::array({"1/2", "1/4", "1/8", "1/16"});
    std::ofstream(work_dir() / "badpriors.json") << bad.dump(2) << '\n';
    CHECK(run("solve --states " + path_of("badpriors.json")) == 2);
}

TEST_CASE("re-running a deterministic pipeline yields byte-identical payloads") {
    REQUIRE(run("construct --t 3 --k 4 --out " + path_of("a.json")) == 0);
    REQUIRE(run("construct --t 3 --k 4 --out " + path_of("b.json")) == 0);
    CHECK(scrub_manifest(load("a.json")) == scrub_manifest(load("b.json")));

    REQUIRE(run("solve --states " + path_of("a.json") + " --out " + path_of("ra.json")) == 0);
    REQUIRE(run("solve --states " + path_of("b.json") + " --out " + path_of("rb.json")) == 0);
    CHECK(scrub_manifest(load("ra.json")) == scrub_manifest(load("rb.json")));
}

TEST_CASE("catalysis reports per-run transcripts and summaries") {
    CHECK(run("catalysis --t 2 --all --out " + path_of("cat2.json"), "cat2.txt") == 0);
    const Json doc = load("cat2.json");
    CHECK(doc["runs"].size() == 4);
    CHECK(doc["summary"]["correct"] == 4);
    CHECK(doc["summary"]["min_catalyst_fidelity"] == "1");
    CHECK(slurp(work_dir() / "cat2.txt").find("4/4 correct") != std::string::npos);

    CHECK(run("catalysis --t 3 --j 5", "cat35.txt") == 0);
    CHECK(slurp(work_dir() / "cat35.txt").find("identified 5") != std::string::npos);

    CHECK(run("catalysis --t 1 --all") == 2);
    CHECK(run("catalysis --t 3 --j 11") == 2);
}

TEST_CASE("construct accepts explicit index subsets") {
    CHECK(run("construct --t 4 --indices 1,5,9,13 --out " + path_of("sub.json")) == 0);
    const Json doc = load("sub.json");
    CHECK(doc["k"] == 4);
    CHECK(doc["checks"]["orthonormal"] == true);
}

TEST_CASE("json output format prints the document to stdout") {
    CHECK(run("certify --t 2 --k 4 --format json", "cjson.txt") == 0);
    const Json doc = Json::parse(slurp(work_dir() / "cjson.txt"));
    CHECK(doc["feasible"] == true);
    CHECK(doc["objective"] == "7/8");
}
