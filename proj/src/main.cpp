// Command-line front end: symbolic factorization checks, the Weyl
// bookkeeping, and the finite-matrix experiments, each with an optional
// JSON report.
#include "qloop/report.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <string>

namespace {

using qloop::json;

void emit_report(const std::string& cli_dir, const std::string& name, const json& doc) {
    const std::string dir = qloop::resolve_report_dir(cli_dir);
    if (dir.empty()) return;
    const std::string path = qloop::write_report(dir, name, doc);
    std::cout << "report: " << path << "\n";
}

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

int run_grothendieck(int l, int depth, bool falsify, const std::string& json_dir) {
    qloop::GrothendieckOptions opts;
    if (falsify) opts.variant.kind = qloop::OscTableVariant::missing_factor;
    const qloop::GrothendieckResult r = qloop::verify_grothendieck(l, depth, opts);
    std::cout << "[product-identity] l=" << l << " depth=" << depth
              << (falsify ? " (falsified table)" : "") << ": " << verdict(r.ok) << " (lhs "
              << r.lhs_terms << " terms, rhs " << r.rhs_terms << " terms, " << r.seconds
              << "s)\n";
    if (!r.ok) std::cout << r.mismatch << "\n";
    emit_report(json_dir, "product_identity", qloop::report_envelope(
        "product-identity", r.ok, json{{"l", l}, {"depth", depth}, {"falsify", falsify}},
        qloop::to_json(r)));
    return r.ok ? 0 : 1;
}

int run_factorization(int l, int depth, int t_order, const std::string& json_dir) {
    const qloop::FactorizationResult r = qloop::verify_factorization_symbolic(l, depth, t_order);
    std::cout << "[factorization] l=" << l << " depth=" << depth << " t-order=" << t_order
              << ": " << verdict(r.ok) << "\n";
    std::cout << "  highest-weight match: " << verdict(r.highest.ok) << "\n";
    std::cout << "  product identity:     " << verdict(r.grothendieck.ok) << " ("
              << r.grothendieck.lhs_terms << " terms, " << r.grothendieck.seconds << "s)\n";
    std::cout << "  scalar resummation:   " << verdict(r.resummation.ok) << "\n";
    if (!r.highest.ok) std::cout << r.highest.detail << "\n";
    if (!r.grothendieck.ok) std::cout << r.grothendieck.mismatch << "\n";
    if (!r.resummation.ok) std::cout << r.resummation.detail << "\n";
    emit_report(json_dir, "factorization", qloop::report_envelope(
        "factorization", r.ok, json{{"l", l}, {"depth", depth}, {"t_order", t_order}},
        qloop::to_json(r)));
    return r.ok ? 0 : 1;
}

int run_determinant(int l, const std::string& json_dir) {
    const qloop::DeterminantResult r = qloop::verify_determinant_arguments(l);
    std::cout << "[determinant] l=" << l << " (" << r.group_order << " Weyl elements): "
              << verdict(r.ok) << "\n";
    if (!r.ok) std::cout << r.detail << "\n";
    emit_report(json_dir, "determinant", qloop::report_envelope(
        "determinant", r.ok, json{{"l", l}}, qloop::to_json(r)));
    return r.ok ? 0 : 1;
}

void write_case_csv(const std::string& path, const qloop::NumericOutcome& out) {
    std::ofstream csv(path);
    if (!csv) throw std::runtime_error("cannot open csv file " + path);
    csv << "seed,zeta_index,relation_residual,intertwiner_residual,commutator_max,"
           "ratio_spread,eigen_match,tail_max,ok\n";
    for (const qloop::CaseMetrics& m : out.cases)
        csv << m.seed << "," << m.zeta_index << "," << m.relation_residual << ","
            << m.intertwiner_residual << "," << m.commutator_max << "," << m.ratio_spread
            << "," << m.eigen_match << "," << m.tail_max << "," << (m.ok ? 1 : 0) << "\n";
}

int run_numeric(const qloop::NumericParams& params, const qloop::NumericOptions& options,
                const std::string& json_dir, const std::string& csv_path) {
    const qloop::NumericOutcome out = qloop::run_numeric_checks(params, options);
    std::cout << "[numeric] sites=" << options.sites << " cases=" << out.cases.size() << ": "
              << verdict(out.ok) << " (" << out.seconds << "s)\n";
    std::cout << "  max relation residual:    " << out.max_relation << "\n";
    std::cout << "  max intertwiner residual: " << out.max_intertwiner << "\n";
    std::cout << "  max commutator:           " << out.max_commutator << "\n";
    std::cout << "  max factorization spread: " << out.max_ratio_spread << "\n";
    std::cout << "  max eigenvalue mismatch:  " << out.max_eigen_match << "\n";
    std::cout << "  max trace tail estimate:  " << out.max_tail << "\n";
    if (out.bgg_ran)
        std::cout << "  finite-quotient fit:      " << verdict(out.bgg_ok) << " (residual "
                  << out.bgg_residual << ")\n";
    if (out.stability_ran)
        std::cout << "  cutoff stability:         " << verdict(out.stability_ok) << " (drift "
                  << out.stability << ")\n";
    if (out.negative_ran)
        std::cout << "  falsified specialization: " << verdict(out.negative_ok) << " (spread "
                  << out.negative_spread << ")\n";
    if (!out.ok) std::cout << out.detail;

    json params_json;
    params_json["numeric"] = qloop::to_json(params);
    params_json["sites"] = options.sites;
    params_json["seeds"] = options.n_seeds;
    params_json["zetas"] = options.n_zeta;
    params_json["base_seed"] = options.base_seed;
    emit_report(json_dir, "numeric", qloop::report_envelope(
        "numeric", out.ok, std::move(params_json), qloop::to_json(out)));
    if (!csv_path.empty()) write_case_csv(csv_path, out);
    return out.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Verification tools for the rank-1/rank-2 transfer-operator factorization:\n"
        "exact truncated product identities, scalar resummation, Weyl-determinant\n"
        "bookkeeping, and finite-matrix spin-chain experiments."};
    app.require_subcommand(1);

    int gro_l = 1, gro_depth = -1;
    bool gro_falsify = false;
    std::string gro_json;
    CLI::App* gro = app.add_subcommand(
        "verify-grothendieck", "Truncated product identity at the level of q-characters");
    gro->add_option("--l", gro_l, "rank (1 or 2)")->check(CLI::Range(1, 2));
    gro->add_option("--depth", gro_depth, "truncation depth (default: 6 for l=1, 4 for l=2)");
    gro->add_flag("--falsify", gro_falsify,
                  "use the defective table variant (the check must then fail)");
    gro->add_option("--json-out", gro_json, "directory for the JSON report");

    int fac_l = 1, fac_depth = -1, fac_torder = -1;
    std::string fac_json;
    CLI::App* fac = app.add_subcommand(
        "verify-factorization",
        "Highest-weight match, product identity and scalar resummation");
    fac->add_option("--l", fac_l, "rank (1 or 2)")->check(CLI::Range(1, 2));
    fac->add_option("--depth", fac_depth, "truncation depth (default: 6 for l=1, 4 for l=2)");
    fac->add_option("--torder", fac_torder,
                    "t-series truncation order (default: 12 for l=1, 10 for l=2)");
    fac->add_option("--json-out", fac_json, "directory for the JSON report");

    int det_l = 1;
    std::string det_json;
    CLI::App* det = app.add_subcommand(
        "verify-determinant", "Weyl-group bookkeeping behind the determinant form");
    det->add_option("--l", det_l, "rank (1 or 2)")->check(CLI::Range(1, 2));
    det->add_option("--json-out", det_json, "directory for the JSON report");

    qloop::NumericOptions nopt;
    std::string num_json, num_csv, num_config;
    int num_fock = -1, num_verma = -1;
    bool num_serial = false, num_skip_extras = false;
    CLI::App* num = app.add_subcommand(
        "numeric-check", "Finite-matrix transfer/Q-operator experiments");
    num->add_option("--sites", nopt.sites, "chain length")->check(CLI::Range(1, 8));
    num->add_option("--seeds", nopt.n_seeds, "number of weight draws")->check(CLI::Range(1, 64));
    num->add_option("--zetas", nopt.n_zeta, "spectral points per draw")->check(CLI::Range(1, 64));
    num->add_option("--seed", nopt.base_seed, "base RNG seed");
    num->add_option("--fock", num_fock, "oscillator tower cutoff");
    num->add_option("--verma", num_verma, "Verma tower cutoff");
    num->add_option("--config", num_config, "JSON parameter file")->check(CLI::ExistingFile);
    num->add_flag("--serial", num_serial, "disable the threaded case sweep");
    num->add_flag("--skip-extras", num_skip_extras,
                  "skip the finite-quotient, stability and falsification experiments");
    num->add_option("--json-out", num_json, "directory for the JSON report");
    num->add_option("--csv-out", num_csv, "per-case metrics CSV file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(gro)) {
            if (gro_depth < 0) gro_depth = gro_l == 1 ? 6 : 4;
            if (gro_falsify && gro_l != 2)
                throw std::invalid_argument("--falsify targets the rank-2 tables; use --l 2");
            return run_grothendieck(gro_l, gro_depth, gro_falsify, gro_json);
        }
        if (app.got_subcommand(fac)) {
            if (fac_depth < 0) fac_depth = fac_l == 1 ? 6 : 4;
            if (fac_torder < 0) fac_torder = fac_l == 1 ? 12 : 10;
            return run_factorization(fac_l, fac_depth, fac_torder, fac_json);
        }
        if (app.got_subcommand(det)) return run_determinant(det_l, det_json);
        if (app.got_subcommand(num)) {
            qloop::NumericParams params;
            if (!num_config.empty()) params = qloop::NumericParams::from_json_file(num_config);
            if (num_fock > 0) params.fock_cutoff = num_fock;
            if (num_verma > 0) params.verma_cutoff = num_verma;
            params.validate();
            if (num_serial) nopt.parallel = false;
            if (num_skip_extras)
                nopt.with_bgg = nopt.with_stability = nopt.with_negative = false;
            return run_numeric(params, nopt, num_json, num_csv);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
