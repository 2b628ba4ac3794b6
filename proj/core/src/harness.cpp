#include "klsum/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <numeric>

#include "klsum/rand.hpp"

namespace klsum {

double BumpFunction::operator()(double x) const {
    if (kind == Kind::SharpCut) return (x > 1.0 && x <= 2.0) ? 1.0 : 0.0;
    if (x <= 1.0 || x >= 2.0) return 0.0;
    double t = 2.0 * x - 3.0;
    return std::exp(-1.0 / (1.0 - t * t));
}

namespace {

// Kahan-compensated real accumulator (fixed ascending order at call sites).
struct RealSum {
    double s = 0, c = 0;
    void add(double x) {
        double t = s + x;
        c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

u64 coefficient_span(double X) { return static_cast<u64>(std::ceil(2.0 * X)); }

struct ProgressionSums {
    std::vector<RealSum> bucket;  // indexed by n mod q
    RealSum coprime_total;
    u64 phi;
};

ProgressionSums progression_sums(double X, const PrimePower& q,
                                 const CoefficientTable& table, const BumpFunction& V) {
    u64 need = coefficient_span(X);
    if (table.size() < need)
        throw resource_error("discrepancy: coefficient table covers N=" +
                             std::to_string(table.size()) + ", requires N=" +
                             std::to_string(need));
    ProgressionSums out;
    out.bucket.assign(q.q, RealSum{});
    out.phi = q.q / q.p * (q.p - 1);
    u64 lo = static_cast<u64>(std::floor(X)) + 1;
    for (u64 n = lo; static_cast<double>(n) < 2.0 * X && n <= need; ++n) {
        double w = V(static_cast<double>(n) / X);
        if (w == 0.0) continue;
        double term = table.lambda_sq(n).get_d() * w;
        out.bucket[n % q.q].add(term);
        if (n % q.p != 0) out.coprime_total.add(term);
    }
    return out;
}

std::string format_row(const DiscrepancyRow& r) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%.17g,%llu,%llu,%.17g,%.17g\n", r.X,
                  static_cast<unsigned long long>(r.q),
                  static_cast<unsigned long long>(r.a), r.E, r.reference);
    return buf;
}

} // namespace

DiscrepancyRow discrepancy(double X, const PrimePower& q, u64 a,
                           const CoefficientTable& table, const BumpFunction& V,
                           double delta0) {
    a = require_unit(static_cast<i64>(a % q.q), q.q);
    auto sums = progression_sums(X, q, table, V);
    double E = sums.bucket[a].value() -
               sums.coprime_total.value() / static_cast<double>(sums.phi);
    double reference = std::pow(X / static_cast<double>(q.q), 1.0 - delta0);
    return {X, q.q, a, E, reference};
}

std::vector<DiscrepancyRow> discrepancy_all_units(double X, const PrimePower& q,
                                                  const CoefficientTable& table,
                                                  const BumpFunction& V, double delta0) {
    auto sums = progression_sums(X, q, table, V);
    double avg = sums.coprime_total.value() / static_cast<double>(sums.phi);
    double reference = std::pow(X / static_cast<double>(q.q), 1.0 - delta0);
    std::vector<DiscrepancyRow> rows;
    rows.reserve(sums.phi);
    for (u64 a = 1; a < q.q; ++a) {
        if (a % q.p == 0) continue;
        rows.push_back({X, q.q, a, sums.bucket[a].value() - avg, reference});
    }
    return rows;
}

ScanResult discrepancy_scan(const PrimePower& q, const std::vector<double>& Xs,
                            const CoefficientTable& table, const BumpFunction& V,
                            double delta0) {
    ScanResult out;
    out.csv = "X,q,a,E,reference\n";
    for (double X : Xs) {
        auto rows = discrepancy_all_units(X, q, table, V, delta0);
        double max_abs = 0;
        for (const auto& r : rows) {
            out.csv += format_row(r);
            max_abs = std::max(max_abs, std::abs(r.E));
            out.rows.push_back(r);
        }
        out.summaries.push_back({X, max_abs});
    }

    // least-squares slope of log max|E| against log X, zero rows skipped
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int npts = 0;
    for (const auto& s : out.summaries) {
        if (s.max_abs_E <= 0) continue;
        double lx = std::log(s.X), ly = std::log(s.max_abs_E);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        ++npts;
    }
    double denom = npts * sxx - sx * sx;
    out.slope = (npts >= 2 && denom != 0) ? (npts * sxy - sx * sy) / denom : 0.0;
    return out;
}

Complex twisted_sum(double N, i64 ell, const PrimePower& q,
                    const CoefficientTable& table, const BumpFunction& V) {
    if (q.p == 3 || q.k < 2)
        throw unsupported_error("twisted_sum: requires p != 3 and k >= 2");
    u64 need = coefficient_span(N);
    if (table.size() < need)
        throw resource_error("twisted_sum: coefficient table covers N=" +
                             std::to_string(table.size()) + ", requires N=" +
                             std::to_string(need));
    auto kl4 = kl4_table(q.p, q.k);
    u64 ellr = reduce(ell, q.q);
    CompensatedSum acc;
    u64 lo = static_cast<u64>(std::floor(N)) + 1;
    for (u64 m = lo; static_cast<double>(m) < 2.0 * N && m <= need; ++m) {
        double w = V(static_cast<double>(m) / N);
        if (w == 0.0) continue;
        Complex kl = kl4[mulmod(m % q.q, ellr, q.q)];
        if (kl == Complex{0, 0}) continue;
        acc.add(table.sym2(m).get_d() * w * kl);
    }
    return acc.value();
}

double twisted_reference(double N, const PrimePower& q) {
    double p = static_cast<double>(q.p), qq = static_cast<double>(q.q);
    return std::pow(p, 0.75) * std::pow(N, 0.75) * std::pow(qq, 0.3) +
           std::sqrt(N) * std::pow(qq, 0.65);
}

double poisson_check(u64 c, i64 beta, double sigma) {
    if (c == 0) throw domain_error("poisson_check: c >= 1 required");
    if (sigma <= 0) throw domain_error("poisson_check: sigma > 0 required");
    constexpr double cutoff = 1e-16;
    const double pi = std::numbers::pi;

    auto w = [&](double x) { return std::exp(-pi * x * x / (sigma * sigma)); };
    // what(y) = sigma exp(-pi sigma^2 y^2)
    auto what = [&](double y) { return sigma * std::exp(-pi * sigma * sigma * y * y); };

    RealSum lhs;
    double b0 = static_cast<double>(reduce(beta, c));
    lhs.add(w(b0));
    for (u64 j = 1;; ++j) {
        double up = b0 + static_cast<double>(j * c);
        double dn = b0 - static_cast<double>(j * c);
        double tu = w(up), td = w(dn);
        if (tu < cutoff && td < cutoff) break;
        lhs.add(tu);
        lhs.add(td);
    }

    RealSum rhs_re;
    rhs_re.add(what(0.0));
    u64 br = reduce(beta, c);
    for (u64 n = 1;; ++n) {
        double t = what(static_cast<double>(n) / static_cast<double>(c));
        if (t < cutoff) break;
        // e(n b / c) + e(-n b / c) = 2 cos(2 pi n b / c)
        double angle = 2.0 * pi * static_cast<double>(mulmod(n % c, br, c)) /
                       static_cast<double>(c);
        rhs_re.add(2.0 * t * std::cos(angle));
    }
    double rhs = rhs_re.value() / static_cast<double>(c);
    return std::abs(lhs.value() - rhs);
}

double beta_factorization_check(u64 c, u64 p, unsigned k, unsigned lambda,
                                i64 m, u64 u, u64 ell) {
    PrimePower pp = PrimePower::make(p, k);
    if (pp.p == 3 || k < 2)
        throw unsupported_error("beta_factorization_check: requires p != 3, k >= 2");
    if (lambda < 1 || lambda > k)
        throw domain_error("beta_factorization_check: 1 <= lambda <= k required");
    if (std::gcd(c, p) != 1)
        throw domain_error("beta_factorization_check: (c, p) = 1 required");
    u64 q = pp.q;
    u128 D128 = (u128)c * q;
    if (D128 > 100000)
        throw resource_error("beta_factorization_check: c p^k exceeds the 1e5 guard");
    u64 D = static_cast<u64>(D128);

    u64 pkl = q;  // p^{k-lambda}
    for (unsigned i = 0; i < lambda; ++i) pkl /= p;
    u64 M = addmod(reduce(m, q), mulmod(u % q, pkl % q, q), q);
    if (M % p == 0)
        throw domain_error("beta_factorization_check: m + u p^{k-lambda} must be a unit");

    auto kl4 = kl4_table(p, k);
    auto phases = phase_table(D);
    require_unit(static_cast<i64>(ell), p);
    u64 ellr = ell % q;
    u64 MD = addmod(reduce(m, D), mulmod(u % D, pkl % D, D), D);  // m + u p^{k-lambda} mod D
    CompensatedSum lhs;
    for (u64 beta = 0; beta < D; ++beta) {
        Complex kl = kl4[mulmod(beta % q, ellr, q)];
        if (kl == Complex{0, 0}) continue;
        lhs.add(kl * phases[reduce(-static_cast<i64>(mulmod(MD, beta, D)), D)]);
    }

    bool delta = addmod(reduce(m, c), mulmod(u % c, pkl % c, c), c) == 0;
    Complex rhs{0, 0};
    if (delta) {
        u64 arg = mulmod(mulmod(c % q, ellr, q), mod_inv(M, q), q);
        rhs = static_cast<double>(c) * std::pow(static_cast<double>(p), k / 2.0) *
              kl3_closed(arg, p, k);
    }
    return std::abs(lhs.value() - rhs);
}

BenchReport bench_kl3(u64 p, unsigned k, u64 samples, u64 seed,
                      double brute_budget_seconds) {
    PrimePower pp = PrimePower::make(p, k);
    if (p == 3 || k < 2)
        throw unsupported_error("bench_kl3: closed form requires p != 3 and k >= 2");
    if (samples == 0) throw domain_error("bench_kl3: samples >= 1 required");

    std::vector<u64> units;
    units.reserve(samples);
    u64 state = seed;
    while (units.size() < samples) {
        u64 a = splitmix64(state) % pp.q;
        if (a != 0 && a % p != 0) units.push_back(a);
    }

    using clock = std::chrono::steady_clock;
    BenchReport report;
    double sink = 0;

    auto t0 = clock::now();
    for (u64 a : units) sink += kl3_closed(a, p, k).real();
    auto t1 = clock::now();
    report.closed_samples = samples;
    report.closed_ns_per_call =
        std::chrono::duration<double, std::nano>(t1 - t0).count() /
        static_cast<double>(samples);

    // one brute evaluation costs ~phi(q)^2 inner operations; attempt only
    // when that is within a factor two of the library cost guard
    double phi = static_cast<double>(pp.q / p * (p - 1));
    if (phi * phi <= 2.0 * kCostGuard) {
        u64 done = 0;
        auto b0 = clock::now();
        for (u64 a : units) {
            sink += hyper_kloosterman_brute(3, a, pp.q, 2.0 * kCostGuard).real();
            ++done;
            if (std::chrono::duration<double>(clock::now() - b0).count() >
                brute_budget_seconds)
                break;
        }
        auto b1 = clock::now();
        report.brute_samples = done;
        report.brute_ns_per_call =
            std::chrono::duration<double, std::nano>(b1 - b0).count() /
            static_cast<double>(done);
        report.speedup = *report.brute_ns_per_call / report.closed_ns_per_call;
    }
    volatile double guard = sink;
    (void)guard;
    return report;
}

std::string default_cache_dir() {
    const char* env = std::getenv("KLSUM_CACHE_DIR");
    return env && *env ? env : "./.cache";
}

} // namespace klsum
