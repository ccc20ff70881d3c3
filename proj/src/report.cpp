#include "qloop/report.hpp"

#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace qloop {

bool deterministic_reports() { return std::getenv("SOURCE_DATE_EPOCH") != nullptr; }

long long report_timestamp() {
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
        try {
            return std::stoll(epoch);
        } catch (const std::exception&) {
            throw std::runtime_error("SOURCE_DATE_EPOCH is not an integer");
        }
    }
    return static_cast<long long>(std::time(nullptr));
}

std::string resolve_report_dir(const std::string& cli_dir) {
    if (!cli_dir.empty()) return cli_dir;
    if (const char* env = std::getenv("QLOOP_REPORT_DIR")) return env;
    return {};
}

json report_envelope(const std::string& kind, bool ok, json params, json results) {
    json doc;
    doc["tool"] = kToolName;
    doc["version"] = kToolVersion;
    doc["kind"] = kind;
    doc["ok"] = ok;
    doc["generated_unix"] = report_timestamp();
    doc["params"] = std::move(params);
    doc["results"] = std::move(results);
    return doc;
}

std::string write_report(const std::string& dir, const std::string& name, const json& doc) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    fs::path path = fs::path(dir) / (name + ".json");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open report file " + path.string());
    out << doc.dump(2) << "\n";
    if (!out) throw std::runtime_error("failed writing report file " + path.string());
    return path.string();
}

json to_json(const cplx& z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const CheckResult& r) {
    json j;
    j["ok"] = r.ok;
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

json to_json(const GrothendieckResult& r) {
    json j;
    j["ok"] = r.ok;
    j["l"] = r.l;
    j["depth"] = r.depth;
    j["lhs_terms"] = r.lhs_terms;
    j["rhs_terms"] = r.rhs_terms;
    if (!r.mismatch.empty()) j["mismatch"] = r.mismatch;
    if (!deterministic_reports()) j["seconds"] = r.seconds;
    return j;
}

json to_json(const ResummationCheck& r) {
    json j;
    j["ok"] = r.ok;
    j["renorm_monomial"] = r.renorm_monomial.str();
    j["prefactor"] = r.prefactor.str();
    j["reduced_exponents"] = r.reduced;
    j["series"] = r.series.str();
    j["expected"] = r.expected.str();
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

json to_json(const FactorizationResult& r) {
    json j;
    j["ok"] = r.ok;
    j["l"] = r.l;
    j["depth"] = r.depth;
    j["t_order"] = r.t_order;
    j["highest_weight"] = to_json(r.highest);
    j["product_identity"] = to_json(r.grothendieck);
    j["resummation"] = to_json(r.resummation);
    if (!deterministic_reports()) j["seconds"] = r.seconds;
    return j;
}

json to_json(const DeterminantResult& r) {
    json j;
    j["ok"] = r.ok;
    j["l"] = r.l;
    j["group_order"] = r.group_order;
    j["detail"] = r.detail;
    return j;
}

json to_json(const AnsatzScanResult& r) {
    json j;
    j["unique"] = r.unique;
    j["winner"] = r.winner;
    j["tried"] = r.tried;
    json pass = json::array();
    for (const auto& c : r.passing) pass.push_back(c);
    j["passing"] = std::move(pass);
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

json to_json(const NumericParams& p) { return json::parse(p.to_json_string()); }

json to_json(const CaseMetrics& m) {
    json j;
    j["seed"] = m.seed;
    j["zeta_index"] = m.zeta_index;
    j["mu1"] = to_json(m.mu1);
    j["mu2"] = to_json(m.mu2);
    j["log_zeta"] = to_json(m.log_zeta);
    j["relation_residual"] = m.relation_residual;
    j["intertwiner_residual"] = m.intertwiner_residual;
    j["sigma_null_max"] = m.sigma_null_max;
    j["sigma_next_min"] = m.sigma_next_min;
    j["tail_max"] = m.tail_max;
    j["commutator_max"] = m.commutator_max;
    j["kappa"] = to_json(m.kappa);
    j["ratio_spread"] = m.ratio_spread;
    j["eigen_match"] = m.eigen_match;
    j["ok"] = m.ok;
    if (!m.detail.empty()) j["detail"] = m.detail;
    return j;
}

json to_json(const NumericOutcome& o) {
    json j;
    j["ok"] = o.ok;
    j["max_relation_residual"] = o.max_relation;
    j["max_intertwiner_residual"] = o.max_intertwiner;
    j["max_commutator"] = o.max_commutator;
    j["max_ratio_spread"] = o.max_ratio_spread;
    j["max_eigen_match"] = o.max_eigen_match;
    j["max_tail"] = o.max_tail;
    j["kappa_spread"] = o.kappa_spread;
    if (o.bgg_ran) {
        json b;
        b["ok"] = o.bgg_ok;
        b["residual"] = o.bgg_residual;
        b["x"] = to_json(o.bgg_x);
        b["y"] = to_json(o.bgg_y);
        b["perturbed"] = o.bgg_perturbed;
        j["finite_quotient"] = std::move(b);
    }
    if (o.stability_ran) {
        json s;
        s["ok"] = o.stability_ok;
        s["drift"] = o.stability;
        j["cutoff_stability"] = std::move(s);
    }
    if (o.negative_ran) {
        json n;
        n["ok"] = o.negative_ok;
        n["spread"] = o.negative_spread;
        j["falsified_specialization"] = std::move(n);
    }
    json cases = json::array();
    for (const CaseMetrics& m : o.cases) cases.push_back(to_json(m));
    j["cases"] = std::move(cases);
    if (!o.detail.empty()) j["detail"] = o.detail;
    if (!deterministic_reports()) j["seconds"] = o.seconds;
    return j;
}

}  // namespace qloop
