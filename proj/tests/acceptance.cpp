// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "klsum/harness.hpp"
#include "klsum/verify.hpp"

using namespace klsum;
using verify::CheckResult;

namespace {

int failures = 0;

void criterion(int number, bool passed, const std::string& label,
               const std::string& detail) {
    std::printf("%s  criterion %d: %s%s%s\n", passed ? "PASS" : "FAIL", number,
                label.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
    if (!passed) ++failures;
}

const CheckResult& find(const std::map<std::string, CheckResult>& m,
                        const std::string& name) {
    static CheckResult missing;
    auto it = m.find(name);
    if (it == m.end()) {
        missing.passed = false;
        missing.detail = "check " + name + " missing from the suite";
        return missing;
    }
    return it->second;
}

struct Group {
    bool passed = true;
    double worst_residual = 0;
    double worst_ratio = 0;
    std::string detail;

    void fold(const CheckResult& r) {
        passed = passed && r.passed;
        worst_residual = std::max(worst_residual, r.max_residual);
        worst_ratio = std::max(worst_ratio, r.max_ratio);
        if (!r.passed && detail.empty()) detail = r.name + ": " + r.detail;
    }
};

std::string fmt_res(const Group& g) {
    char buf[128];
    if (g.worst_ratio > 0)
        std::snprintf(buf, sizeof buf, "max residual %.3g, max bound ratio %.3g",
                      g.worst_residual, g.worst_ratio);
    else
        std::snprintf(buf, sizeof buf, "max residual %.3g", g.worst_residual);
    return g.detail.empty() ? std::string(buf) : std::string(buf) + "; " + g.detail;
}

} // namespace

int main() {
    using clock = std::chrono::steady_clock;
    auto cache = std::filesystem::temp_directory_path() / "klsum_acceptance_cache";
    std::filesystem::create_directories(cache);

    verify::Options full;
    full.profile = verify::Profile::Full;
    full.cache_dir = cache.string();

    auto t0 = clock::now();
    auto results = verify::run_all(full);
    double full_seconds = std::chrono::duration<double>(clock::now() - t0).count();

    std::map<std::string, CheckResult> by_name;
    for (const auto& r : results) by_name[r.name] = r;

    // 1. closed-form correctness on the exhaustive grids, within budget
    {
        Group g;
        g.fold(find(by_name, "kl3-closed-vs-brute"));
        bool in_budget = full_seconds < 300.0;
        char buf[96];
        std::snprintf(buf, sizeof buf, "; full sweep took %.1f s (budget 300 s)",
                      full_seconds);
        criterion(1, g.passed && in_budget,
                  "kl3 closed form = brute force, p in {5,7,11,13}, k in {2,3} "
                  "exhaustive, k=4 seeded",
                  fmt_res(g) + buf);
    }

    // 2. exact vanishing laws
    {
        Group g;
        for (const char* name :
             {"kl4-vanishing-at-nonunit-args", "corr-sum-vanishing",
              "frakc1-vanishing-unequal-moduli", "frakc2-vanishing-failed-quartic"})
            g.fold(find(by_name, name));
        criterion(2, g.passed,
                  "vanishing laws (Kl4 at p | arg; corr sum off-diagonal; frakC1; "
                  "frakC2 quartic)",
                  fmt_res(g));
    }

    // 3. identity suites
    {
        Group g;
        for (const char* name :
             {"ca-fourier-reduced-corr-identities", "frakc-crt-factorization",
              "kl4-from-kl3-vs-brute", "beta-sum-factorization",
              "kloosterman-crt-splitting"})
            g.fold(find(by_name, name));
        criterion(3, g.passed,
                  "identities (ca fourier=reduced=corr; frakC=frakC1*frakC2; "
                  "Kl4 reduction; beta-sum; CRT)",
                  fmt_res(g));
    }

    // 4. bound suites
    {
        Group g;
        for (const char* name : {"deligne-bound-and-conjugation", "corr-sum-bounds",
                                 "frakc-growth-bounds", "rankin-selberg-mean-square"})
            g.fold(find(by_name, name));
        criterion(4, g.passed,
                  "bounds (Deligne exact; corr/frakC growth with slack 10; "
                  "Rankin-Selberg mean square)",
                  fmt_res(g));
    }

    // 5. exact-arithmetic identities
    {
        Group g;
        for (const char* name :
             {"tau-recursion-multiplicativity-deligne", "sym2-moebius-convolution-identity",
              "gl3-coeff-vs-sym2-convolution"})
            g.fold(find(by_name, name));
        criterion(5, g.passed,
                  "exact rational identities (tau recursion/multiplicativity n<=1e4; "
                  "convolution n<=1e4; gl3 vs sym2 n<=1e3)",
                  fmt_res(g));
    }

    // 6. Poisson numeric check
    {
        Group g;
        g.fold(find(by_name, "poisson-progression-identity"));
        criterion(6, g.passed, "Poisson residual < 1e-10 on {1,25,49}x{0,1,3}x{1,5,40}",
                  fmt_res(g));
    }

    // 7. discrepancy harness
    {
        Group g;
        g.fold(find(by_name, "discrepancy-telescoping-csv-anchor"));
        g.fold(find(by_name, "twisted-sum-vanishing-and-bound"));
        criterion(7, g.passed,
                  "discrepancy harness (telescoping; twisted vanishing; CSV "
                  "byte-stability; frozen anchors)",
                  fmt_res(g));
    }

    // 8. benchmark: speedup >= 100x at p=101, k=2; closed form < 1 ms at q ~ 1e8
    {
        auto rep = bench_kl3(101, 2, 1000, 1);
        bool ran = rep.brute_ns_per_call.has_value();
        bool fast = ran && *rep.speedup >= 100.0;
        auto big = bench_kl3(10007, 2, 1000, 1);
        bool under_ms = big.closed_ns_per_call < 1e6;
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "speedup %.0fx over %llu brute samples; %.3f us/call at q=%llu",
                      ran ? *rep.speedup : 0.0,
                      static_cast<unsigned long long>(rep.brute_samples),
                      big.closed_ns_per_call / 1e3,
                      10007ull * 10007ull);
        criterion(8, fast && under_ms,
                  "benchmark: closed form >= 100x brute at p=101, k=2; < 1 ms at q ~ 1e8",
                  buf);
    }

    // 9. verify profiles within their time budgets, zero failures
    {
        verify::Options quick;
        quick.profile = verify::Profile::Quick;
        quick.cache_dir = cache.string();
        auto q0 = clock::now();
        auto quick_results = verify::run_all(quick);
        double quick_seconds = std::chrono::duration<double>(clock::now() - q0).count();
        bool quick_green = true;
        for (const auto& r : quick_results) quick_green = quick_green && r.passed;
        bool full_green = true;
        for (const auto& r : results) full_green = full_green && r.passed;
        char buf[128];
        std::snprintf(buf, sizeof buf, "quick %.1f s (budget 60), full %.1f s (budget 900)",
                      quick_seconds, full_seconds);
        criterion(9,
                  quick_green && quick_seconds < 60.0 && full_green &&
                      full_seconds < 900.0,
                  "verify profiles green within budget", buf);
    }

    std::printf("%d criterion failure(s)\n", failures);
    return failures == 0 ? 0 : 1;
}
