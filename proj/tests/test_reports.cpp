#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qloop/report.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace qloop;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

struct EnvGuard {
    std::string name;
    EnvGuard(const std::string& n, const std::string& value) : name(n) {
        ::setenv(n.c_str(), value.c_str(), 1);
    }
    ~EnvGuard() { ::unsetenv(name.c_str()); }
};

}  // namespace

TEST_CASE("envelope carries tool, version, kind and verdict") {
    const json doc = report_envelope("demo", true, json{{"l", 1}}, json{{"value", 7}});
    CHECK(doc["tool"] == "qloop");
    CHECK(doc["version"] == kToolVersion);
    CHECK(doc["kind"] == "demo");
    CHECK(doc["ok"] == true);
    CHECK(doc["params"]["l"] == 1);
    CHECK(doc["results"]["value"] == 7);
    CHECK(doc.contains("generated_unix"));
}

TEST_CASE("report directory resolution: flag, then environment, then none") {
    ::unsetenv("QLOOP_REPORT_DIR");
    CHECK(resolve_report_dir("explicit") == "explicit");
    CHECK(resolve_report_dir("").empty());
    {
        EnvGuard guard("QLOOP_REPORT_DIR", "from_env");
        CHECK(resolve_report_dir("") == "from_env");
        CHECK(resolve_report_dir("explicit") == "explicit");
    }
    CHECK(resolve_report_dir("").empty());
}

TEST_CASE("pinned timestamps make reports byte-identical") {
    const fs::path dir = fs::path("report_test_tmp");
    fs::remove_all(dir);
    EnvGuard guard("SOURCE_DATE_EPOCH", "1700000000");
    CHECK(deterministic_reports());
    CHECK(report_timestamp() == 1700000000);

    GrothendieckResult r;
    r.ok = true;
    r.l = 1;
    r.depth = 3;
    r.lhs_terms = r.rhs_terms = 10;
    r.seconds = 0.123;
    const std::string p1 =
        write_report(dir.string(), "a", report_envelope("g", r.ok, json{{"l", 1}}, to_json(r)));
    r.seconds = 9.876;  // wall-clock noise must not reach the file
    const std::string p2 =
        write_report(dir.string(), "b", report_envelope("g", r.ok, json{{"l", 1}}, to_json(r)));
    const std::string c1 = slurp(p1), c2 = slurp(p2);
    CHECK(c1 == c2);
    CHECK(c1.back() == '\n');
    CHECK(json::parse(c1)["results"].contains("seconds") == false);
    fs::remove_all(dir);
}

TEST_CASE("wall-clock fields appear without the pin") {
    ::unsetenv("SOURCE_DATE_EPOCH");
    GrothendieckResult r;
    r.seconds = 0.5;
    CHECK(to_json(r).contains("seconds"));
}

TEST_CASE("malformed SOURCE_DATE_EPOCH is rejected") {
    EnvGuard guard("SOURCE_DATE_EPOCH", "not_a_number");
    CHECK_THROWS(report_timestamp());
}

TEST_CASE("numeric parameter files round-trip and reject unknown keys") {
    const fs::path dir = fs::path("report_test_tmp_cfg");
    fs::remove_all(dir);
    fs::create_directories(dir);

    NumericParams p;
    p.fock_cutoff = 30;
    p.twist = cplx(3.0, 0.25);
    const std::string path = (dir / "params.json").string();
    p.to_json_file(path);
    const NumericParams q = NumericParams::from_json_file(path);
    CHECK(q.fock_cutoff == 30);
    CHECK(q.twist == p.twist);
    CHECK(q.log_q == p.log_q);

    json doc = json::parse(slurp(path));
    doc["surprise"] = 1;
    std::ofstream(path) << doc.dump(2) << "\n";
    CHECK_THROWS(NumericParams::from_json_file(path));
    fs::remove_all(dir);
}

TEST_CASE("serializers keep the complex encoding and failure details") {
    const json z = to_json(cplx(1.5, -2.5));
    CHECK(z["re"] == 1.5);
    CHECK(z["im"] == -2.5);

    CaseMetrics m;
    m.ok = false;
    m.detail = "broken";
    m.kappa = cplx(2.0, 1.0);
    const json jm = to_json(m);
    CHECK(jm["ok"] == false);
    CHECK(jm["detail"] == "broken");
    CHECK(jm["kappa"]["re"] == 2.0);

    NumericOutcome out;
    out.ok = true;
    out.bgg_ran = true;
    out.bgg_ok = true;
    out.cases.push_back(m);
    const json jo = to_json(out);
    CHECK(jo["finite_quotient"]["ok"] == true);
    CHECK(jo["cases"].size() == 1);
    CHECK_FALSE(jo.contains("cutoff_stability"));
}
