// Timing comparison of the threaded kernels against their serial reference
// implementations: q-character products, the tensor-consistency index scan,
// and the finite-matrix case sweep. Each benchmark also re-checks that both
// paths produce identical results.
#include "qloop/numeric_checks.hpp"
#include "qloop/prover.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double time_once(const std::function<void()>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const std::string& name, double serial, double parallel, bool same) {
    std::printf("%-34s %10.3fs %10.3fs %8.2fx   %s\n", name.c_str(), serial, parallel,
                parallel > 0 ? serial / parallel : 0.0, same ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP; both columns run serially)\n");
#endif
    std::printf("%-34s %11s %11s %9s\n", "kernel", "serial", "threaded", "speedup");

    {
        // Rank-2 oscillator character product at a depth where the term
        // multisets are large enough to spread across threads.
        const int depth = 7;
        const auto pts = qloop::specialization_points(2);
        const qloop::QCharacter a = qloop::char_oscillator(2, 1, depth, pts[0]);
        const qloop::QCharacter b = qloop::char_oscillator(2, 2, depth, pts[1]);
        qloop::QCharacter serial_prod(2, 0, a.highest), parallel_prod(2, 0, a.highest);
        const double ts = time_once([&] { serial_prod = qloop::char_mul_serial(a, b); });
        const double tp = time_once([&] { parallel_prod = qloop::char_mul(a, b); });
        row("q-character product (l=2, d=7)", ts, tp,
            qloop::char_equal(serial_prod, parallel_prod));
    }

    {
        const int max_entry = 7;
        qloop::CheckResult serial_scan, parallel_scan;
        const double ts = time_once(
            [&] { serial_scan = qloop::verify_tensor_consistency_serial(2, max_entry); });
        const double tp =
            time_once([&] { parallel_scan = qloop::verify_tensor_consistency(2, max_entry); });
        row("tensor scan (l=2, entries<=7)", ts, tp,
            serial_scan.ok == parallel_scan.ok && serial_scan.detail == parallel_scan.detail);
    }

    {
        qloop::NumericParams params;
        qloop::NumericOptions opt;
        opt.sites = 2;
        opt.n_seeds = 2;
        opt.n_zeta = 3;
        opt.with_bgg = opt.with_stability = opt.with_negative = false;
        qloop::NumericOutcome serial_out, parallel_out;
        const double ts = time_once(
            [&] { serial_out = qloop::run_numeric_checks_serial(params, opt); });
        const double tp = time_once([&] { parallel_out = qloop::run_numeric_checks(params, opt); });
        bool same = serial_out.cases.size() == parallel_out.cases.size();
        for (size_t i = 0; same && i < serial_out.cases.size(); ++i) {
            const auto& a = serial_out.cases[i];
            const auto& b = parallel_out.cases[i];
            same = a.ok == b.ok && a.kappa == b.kappa && a.ratio_spread == b.ratio_spread &&
                   a.relation_residual == b.relation_residual;
        }
        row("numeric sweep (6 cases)", ts, tp, same);
    }
    return 0;
}
