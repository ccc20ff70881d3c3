// Parameter validation and JSON config I/O.
#include "qloop/numeric_params.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

namespace qloop {

void NumericParams::validate() const {
    if (std::abs(log_q.real()) < 1e-6)
        throw std::invalid_argument(
            "NumericParams: |q| must stay away from 1 (|Re log q| >= 1e-6)");
    if (s0 <= 0 || s1 <= 0)
        throw std::invalid_argument("NumericParams: gradings s0, s1 must be positive");
    // Level sums over an auxiliary tower weight levels by powers of
    // q^{-2τ}; they converge only when |q^{-2τ}| < 1.
    const double decay = (twist * log_q).real();
    if (decay <= 0.05)
        throw std::invalid_argument(
            "NumericParams: Re(twist*log_q) must exceed 0.05 or traces will not converge");
    if (fock_cutoff < 8 || verma_cutoff < 8)
        throw std::invalid_argument("NumericParams: cutoffs must be at least 8");
    if (!(null_tol > 0) || !(rank_margin > null_tol))
        throw std::invalid_argument(
            "NumericParams: need 0 < null_tol < rank_margin for rank detection");
}

namespace {

nlohmann::ordered_json cplx_json(const cplx& z) {
    return nlohmann::ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

cplx cplx_from(const nlohmann::json& j, const char* key) {
    const auto& v = j.at(key);
    return {v.at("re").get<double>(), v.at("im").get<double>()};
}

}  // namespace

std::string NumericParams::to_json_string() const {
    nlohmann::ordered_json j;
    j["log_q"] = cplx_json(log_q);
    j["s0"] = s0;
    j["s1"] = s1;
    j["twist"] = cplx_json(twist);
    j["fock_cutoff"] = fock_cutoff;
    j["verma_cutoff"] = verma_cutoff;
    j["null_tol"] = null_tol;
    j["rank_margin"] = rank_margin;
    return j.dump(2) + "\n";
}

void NumericParams::to_json_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write config file: " + path);
    out << to_json_string();
}

NumericParams NumericParams::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file: " + path);
    nlohmann::json j;
    in >> j;

    static const std::set<std::string> known = {"log_q",       "s0",          "s1",
                                                "twist",       "fock_cutoff", "verma_cutoff",
                                                "null_tol",    "rank_margin"};
    for (const auto& [key, value] : j.items())
        if (!known.count(key))
            throw std::invalid_argument("config: unknown key '" + key + "'");

    NumericParams p;
    if (j.contains("log_q")) p.log_q = cplx_from(j, "log_q");
    if (j.contains("s0")) p.s0 = j.at("s0").get<double>();
    if (j.contains("s1")) p.s1 = j.at("s1").get<double>();
    if (j.contains("twist")) p.twist = cplx_from(j, "twist");
    if (j.contains("fock_cutoff")) p.fock_cutoff = j.at("fock_cutoff").get<int>();
    if (j.contains("verma_cutoff")) p.verma_cutoff = j.at("verma_cutoff").get<int>();
    if (j.contains("null_tol")) p.null_tol = j.at("null_tol").get<double>();
    if (j.contains("rank_margin")) p.rank_margin = j.at("rank_margin").get<double>();
    p.validate();
    return p;
}

}  // namespace qloop
