#include "klsum/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

#include "klsum/correlation.hpp"
#include "klsum/rand.hpp"

namespace klsum::verify {

namespace {

// Accumulates worst residual / bound ratio and the first counterexample.
struct Tracker {
    CheckResult r;

    explicit Tracker(std::string name, std::string grid) {
        r.name = std::move(name);
        r.grid = std::move(grid);
    }

    void residual(double res, double tol, const std::string& where) {
        r.max_residual = std::max(r.max_residual, res);
        if (res > tol && r.passed) {
            r.passed = false;
            std::ostringstream os;
            os << where << ": residual " << res << " > " << tol;
            r.detail = os.str();
        }
    }

    void ratio(double value, double bound, double slack, const std::string& where) {
        double q = bound > 0 ? value / bound : (value > 0 ? 1e300 : 0.0);
        r.max_ratio = std::max(r.max_ratio, q);
        if (q > slack && r.passed) {
            r.passed = false;
            std::ostringstream os;
            os << where << ": ratio " << q << " > slack " << slack;
            r.detail = os.str();
        }
    }

    void exact(bool holds, const std::string& where) {
        if (!holds && r.passed) {
            r.passed = false;
            r.detail = where + ": exact identity failed";
        }
    }
};

std::string fmt(u64 p, unsigned k) {
    return "p=" + std::to_string(p) + ",k=" + std::to_string(k);
}

u64 pow_u(u64 b, unsigned e) {
    u64 r = 1;
    while (e--) r *= b;
    return r;
}

// ---- hyper-Kloosterman closed form ----------------------------------------

CheckResult check_kl3_closed(const Options& o) {
    bool full = o.profile == Profile::Full;
    Tracker t("kl3-closed-vs-brute",
              full ? "p in {5,7,11,13}, k in {2,3} exhaustive; k=4 on 100 seeded units"
                   : "p in {5,7,11,13}, k=2; p in {5,7}, k=3 exhaustive; p=5, k=4 seeded");
    double flip = o.fault == Fault::FlipJacobiSign ? -1.0 : 1.0;

    std::vector<std::pair<u64, unsigned>> exhaustive;
    for (u64 p : {5, 7, 11, 13})
        for (unsigned k : {2u, 3u})
            if (full || k == 2 || p <= 7) exhaustive.emplace_back(p, k);

    for (auto [p, k] : exhaustive) {
        u64 q = pow_u(p, k);
        auto brute = hyper_kloosterman_all(3, q);
        auto closed = kl3_table(p, k);
        double tol = sum_tolerance(q);
        for (u64 a = 1; a < q; ++a) {
            if (a % p == 0) continue;
            t.residual(std::abs(flip * closed[a] - brute[a]), tol,
                       fmt(p, k) + ",a=" + std::to_string(a));
        }
    }

    std::vector<u64> k4_primes = full ? std::vector<u64>{5, 7, 11, 13} : std::vector<u64>{5};
    u64 samples = full ? 100 : 20;
    for (u64 p : k4_primes) {
        u64 q = pow_u(p, 4);
        auto brute = hyper_kloosterman_all(3, q);
        auto closed = kl3_table(p, 4);
        double tol = sum_tolerance(q);
        u64 state = 0x6b6c3334ull ^ p;
        u64 tested = 0;
        while (tested < samples) {
            u64 a = splitmix64(state) % q;
            if (a == 0 || a % p == 0) continue;
            ++tested;
            t.residual(std::abs(flip * closed[a] - brute[a]), tol,
                       fmt(p, 4) + ",a=" + std::to_string(a));
        }
    }
    return t.r;
}

CheckResult check_kl4_from_kl3(const Options&) {
    Tracker t("kl4-from-kl3-vs-brute",
              "all units mod 25 and 49; 50 seeded units mod 125");
    for (u64 q : {25, 49}) {
        u64 p = q == 25 ? 5 : 7;
        auto brute = hyper_kloosterman_all(4, q);
        auto viakl3 = kl4_table(p, 2);
        for (u64 a = 1; a < q; ++a) {
            if (a % p == 0) continue;
            t.residual(std::abs(viakl3[a] - brute[a]), 1e-8,
                       "q=" + std::to_string(q) + ",a=" + std::to_string(a));
        }
    }
    {
        auto brute = hyper_kloosterman_all(4, 125);
        auto viakl3 = kl4_table(5, 3);
        u64 state = 0x6b6c34ull;
        u64 tested = 0;
        while (tested < 50) {
            u64 a = splitmix64(state) % 125;
            if (a == 0 || a % 5 == 0) continue;
            ++tested;
            t.residual(std::abs(viakl3[a] - brute[a]), 1e-8,
                       "q=125,a=" + std::to_string(a));
        }
    }
    return t.r;
}

CheckResult check_kl4_vanishing(const Options& o) {
    bool full = o.profile == Profile::Full;
    Tracker t("kl4-vanishing-at-nonunit-args",
              "p in {5,7}, k in {2,3}, m in {p,2p,p^2,q}, a in {1,2,3}");
    for (u64 p : {5, 7}) {
        for (unsigned k : {2u, 3u}) {
            if (!full && k == 3) continue;
            u64 q = pow_u(p, k);
            for (u64 m : {p, 2 * p, p * p, q}) {
                for (u64 a : {1, 2, 3}) {
                    double res = std::abs(kl4_vanishing_check(static_cast<i64>(m), a, p, k));
                    t.residual(res, 1e-6,
                               fmt(p, k) + ",m=" + std::to_string(m) + ",a=" + std::to_string(a));
                }
            }
        }
    }
    return t.r;
}

CheckResult check_deligne(const Options& o) {
    bool full = o.profile == Profile::Full;
    Tracker t("deligne-bound-and-conjugation",
              "d in {2,3,4}, p in {5,7,11,13}, k in {1,2,3}, all units");
    for (u64 p : {5, 7, 11, 13}) {
        if (!full && p > 7) continue;
        for (unsigned k : {1u, 2u, 3u}) {
            u64 q = pow_u(p, k);
            for (unsigned d : {2u, 3u, 4u}) {
                auto kl = hyper_kloosterman_all(d, q);
                double tol = sum_tolerance(q);
                for (u64 a = 1; a < q; ++a) {
                    if (a % p == 0) continue;
                    std::string where = "d=" + std::to_string(d) + "," + fmt(p, k) +
                                        ",a=" + std::to_string(a);
                    // the Deligne bound is exact: slack 1, roundoff allowance only
                    t.ratio(std::abs(kl[a]), static_cast<double>(d) + tol, 1.0, where);
                    u64 mirrored = d % 2 == 0 ? a : (q - a) % q;
                    t.residual(std::abs(std::conj(kl[a]) - kl[mirrored]), tol, where);
                }
            }
        }
    }
    return t.r;
}

CheckResult check_kl2_classical(const Options&) {
    Tracker t("kl2-matches-classical", "c in {5,7,11,25,35,49}, first five units");
    for (u64 c : {5, 7, 11, 25, 35, 49}) {
        int tested = 0;
        for (u64 a = 1; a < c && tested < 5; ++a) {
            if (std::gcd(a, c) != 1) continue;
            ++tested;
            Complex lhs = hyper_kloosterman_brute(2, a, c);
            Complex rhs = kloosterman_s(1, static_cast<i64>(a), c) /
                          std::sqrt(static_cast<double>(c));
            t.residual(std::abs(lhs - rhs), 1e-10,
                       "c=" + std::to_string(c) + ",a=" + std::to_string(a));
        }
    }
    return t.r;
}

CheckResult check_kloosterman_crt(const Options&) {
    Tracker t("kloosterman-crt-splitting", "coprime c1*c2 <= 200, (m,n) in {(1,1),(2,3)}");
    // S(m, n; c1 c2) = S(m c2bar, n c2bar; c1) S(m c1bar, n c1bar; c2)
    for (u64 c1 = 1; c1 <= 200; ++c1) {
        for (u64 c2 = c1; c1 * c2 <= 200; ++c2) {
            if (std::gcd(c1, c2) != 1) continue;
            for (auto [m, n] : {std::pair<i64, i64>{1, 1}, {2, 3}}) {
                u64 c2b = c1 == 1 ? 0 : mod_inv(c2 % c1, c1);
                u64 c1b = c2 == 1 ? 0 : mod_inv(c1 % c2, c2);
                Complex lhs =
                    kloosterman_s(static_cast<i64>(mulmod(reduce(m, c1), c2b, c1)),
                                  static_cast<i64>(mulmod(reduce(n, c1), c2b, c1)), c1) *
                    kloosterman_s(static_cast<i64>(mulmod(reduce(m, c2), c1b, c2)),
                                  static_cast<i64>(mulmod(reduce(n, c2), c1b, c2)), c2);
                Complex rhs = kloosterman_s(m, n, c1 * c2);
                t.residual(std::abs(lhs - rhs), 1e-8,
                           "c1=" + std::to_string(c1) + ",c2=" + std::to_string(c2));
            }
        }
    }
    return t.r;
}

CheckResult check_ramanujan(const Options&) {
    Tracker t("ramanujan-closed-form-vs-brute", "q <= 60, u in {0,1,2,5,q/2,q}");
    for (u64 q = 1; q <= 60; ++q) {
        for (i64 u : {i64(0), i64(1), i64(2), i64(5), static_cast<i64>(q / 2),
                      static_cast<i64>(q)}) {
            try {
                ramanujan_sum(u, q, /*verify=*/true);
            } catch (const std::exception&) {
                t.exact(false, "q=" + std::to_string(q) + ",u=" + std::to_string(u));
            }
        }
    }
    return t.r;
}

CheckResult check_gauss(const Options& o) {
    bool full = o.profile == Profile::Full;
    Tracker t("gauss-sum-normalization",
              "all characters mod 25 (plus mod 49 and mod 5 on the full profile)");
    std::vector<std::pair<u64, unsigned>> mods{{5, 2}};
    if (full) {
        mods.emplace_back(7, 2);
        mods.emplace_back(5, 1);
    }
    for (auto [p, k] : mods) {
        PrimePower pp = PrimePower::make(p, k);
        u64 phi = pp.q / p * (p - 1);
        for (u64 j = 0; j < phi; ++j) {
            DirichletCharacter chi(pp, j);
            double mag = std::abs(gauss_sum(chi));
            std::string where = fmt(p, k) + ",j=" + std::to_string(j);
            if (chi.is_primitive()) {
                t.residual(std::abs(mag - 1.0), 1e-10, where);
            } else if (k >= 2) {
                // induced mod p^2 (and principal) characters: the sum is 0
                t.residual(mag, 1e-10, where);
            } else {
                // principal character mod p: |tau| = 1/sqrt(p)
                t.residual(std::abs(mag - 1.0 / std::sqrt(static_cast<double>(p))), 1e-10,
                           where);
            }
        }
    }
    return t.r;
}

// ---- correlation sums ------------------------------------------------------

CheckResult check_corr_vanishing(const Options& o) {
    bool full = o.profile == Profile::Full;
    Tracker t("corr-sum-vanishing",
              "m=0, gamma1 != gamma2 mod p^floor(k/2); p in {5,7}, k in {2,3} (+ p=5, k=4)");
    for (u64 p : {5, 7}) {
        for (unsigned k : {2u, 3u}) {
            if (!full && !(p == 5 || k == 2)) continue;
            PrimePower pp = PrimePower::make(p, k);
            for (u64 g1 = 1; g1 < p; ++g1)
                for (u64 g2 = 1; g2 < p; ++g2) {
                    if (g1 == g2) continue;  // floor(k/2) = 1 on this grid
                    double res = std::abs(c_corr({0, g1, g2, pp}));
                    t.residual(res, 1e-6, fmt(p, k) + ",g1=" + std::to_string(g1) +
                                              ",g2=" + std::to_string(g2));
                }
        }
    }
    if (full) {
        // k=4 separates "different mod p^2" from "different mod p"
        PrimePower pp = PrimePower::make(5, 4);
        for (auto [g1, g2] : {std::pair<u64, u64>{1, 6}, {1, 11}, {2, 7}}) {
            double res = std::abs(c_corr({0, g1, g2, pp}));
            t.residual(res, 1e-6, "p=5,k=4,g1=" + std::to_string(g1) +
                                      ",g2=" + std::to_string(g2));
        }
    }
    return t.r;
}

CheckResult check_corr_bounds(const Options& o) {
    bool full = o.profile == Profile::Full;
    Tracker t("corr-sum-bounds",
              "m=0 diagonal vs p^ceil(k/2); m != 0 vs p^min(v_p(m), ceil(k/2))");
    for (u64 p : {5, 7}) {
        if (!full && p > 5) continue;
        for (unsigned k : {2u, 3u}) {
            PrimePower pp = PrimePower::make(p, k);
            double diag_bound = std::pow(static_cast<double>(p), (k + 1) / 2);
            for (u64 g = 1; g < p; ++g) {
                double v = std::abs(c_corr({0, g, g, pp}));
                t.ratio(v, diag_bound, o.slack, fmt(p, k) + ",diag g=" + std::to_string(g));
                u64 g2 = g + pow_u(p, k / 2);
                double w = std::abs(c_corr({0, g, g2, pp}));
                t.ratio(w, diag_bound, o.slack,
                        fmt(p, k) + ",near-diag g=" + std::to_string(g));
            }
            for (i64 m : {i64(1), i64(2), static_cast<i64>(p), static_cast<i64>(p * p),
                          static_cast<i64>(3 * p)}) {
                unsigned nu = valuation(m, p).value();
                unsigned cap = (k + 1) / 2;
                double bound = std::pow(static_cast<double>(p), std::min(nu, cap));
                for (auto [g1, g2] : {std::pair<u64, u64>{1, 1}, {1, 2}}) {
                    double v = std::abs(c_corr({m, g1, g2, pp}));
                    t.ratio(v, bound, o.slack,
                            fmt(p, k) + ",m=" + std::to_string(m) + ",g=(" +
                                std::to_string(g1) + "," + std::to_string(g2) + ")");
                }
            }
        }
    }
    if (full) {
        // k=4: ceil(k/2) = 2 and the diagonal condition is mod p^2
        PrimePower pp = PrimePower::make(5, 4);
        for (auto [g1, g2] : {std::pair<u64, u64>{1, 1}, {2, 2}, {1, 26}}) {
            double v = std::abs(c_corr({0, g1, g2, pp}));
            t.ratio(v, 25.0, o.slack, "p=5,k=4,diag g=(" + std::to_string(g1) + "," +
                                          std::to_string(g2) + ")");
        }
        for (i64 m : {i64(1), i64(5), i64(25), i64(125)}) {
            unsigned nu = valuation(m, 5).value();
            double bound = std::pow(5.0, std::min(nu, 2u));
            double v = std::abs(c_corr({m, 1, 1, pp}));
            t.ratio(v, bound, o.slack, "p=5,k=4,m=" + std::to_string(m));
        }
    }
    return t.r;
}

CheckResult check_ca_identities(const Options& o) {
    bool full = o.profile == Profile::Full;
    Tracker t("ca-fourier-reduced-corr-identities",
              "(p,k) in {(5,2),(7,2),(5,3)}, four (m,l1,l2,a) tuples");
    std::vector<std::pair<u64, unsigned>> mods{{5, 2}, {7, 2}};
    if (full) mods.emplace_back(5, 3);
    for (auto [p, k] : mods) {
        PrimePower pp = PrimePower::make(p, k);
        for (auto [m, l1, l2, a] : {std::tuple<i64, u64, u64, u64>{0, 1, 1, 1},
                                    {1, 1, 2, 1},
                                    {3, 2, 3, 1},
                                    {2, 1, 3, 2}}) {
            Complex f = c_a_fourier(m, l1, l2, a, pp);
            Complex r = c_a_reduced(m, l1, l2, a, pp);
            Complex c = c_corr({m, mulmod(a, l1, pp.q), mulmod(a, l2, pp.q), pp});
            std::string where = fmt(p, k) + ",m=" + std::to_string(m) + ",l=(" +
                                std::to_string(l1) + "," + std::to_string(l2) + "),a=" +
                                std::to_string(a);
            t.residual(std::abs(f - r), 1e-8, where + " [fourier vs reduced]");
            t.residual(std::abs(r - c), 1e-8, where + " [reduced vs corr]");
        }
    }
    return t.r;
}

// ---- composite character sums ----------------------------------------------

FrakCParams frak_params(u64 p, unsigned k, unsigned lambda, u64 c1, u64 c2, u64 n1,
                        i64 m1, i64 m2, i64 n2, u64 ell = 1, int sign = +1) {
    FrakCParams P;
    P.p = p;
    P.k = k;
    P.lambda = lambda;
    P.c1 = c1;
    P.c2 = c2;
    P.n1 = n1;
    P.m1 = m1;
    P.m2 = m2;
    P.n2 = n2;
    P.ell = ell;
    P.sign = sign;
    return P;
}

CheckResult check_frakc_factorization(const Options& o) {
    bool full = o.profile == Profile::Full;
    Tracker t("frakc-crt-factorization", "assorted parameter sets, both sign branches");
    std::vector<FrakCParams> sets{
        frak_params(5, 3, 2, 2, 2, 1, 1, 1, 0),
        frak_params(5, 3, 2, 2, 2, 1, 1, 1, 0, 1, -1),
        frak_params(5, 3, 2, 2, 3, 1, 1, 2, 3),
        frak_params(7, 3, 2, 1, 2, 1, 1, 1, 1),
        frak_params(5, 3, 2, 1, 1, 1, 1, 1, 2),  // degenerate: frakC reduces to frakC2
    };
    if (full) {
        sets.push_back(frak_params(5, 2, 1, 2, 4, 2, 1, 1, 1));
        sets.push_back(frak_params(5, 3, 2, 2, 3, 1, 1, 2, 3, 2));  // ell = 2
        sets.push_back(frak_params(7, 3, 2, 2, 2, 2, 1, 3, 1));
        sets.push_back(frak_params(5, 3, 2, 2, 3, 1, 1, 2, 3, 1, -1));
        sets.push_back(frak_params(5, 5, 3, 2, 2, 1, 1, 1, 0));  // odd lambda, diagonal
    }
    int idx = 0;
    for (const auto& P : sets) {
        Complex whole = frak_c(P);
        Complex split = frak_c1(P) * frak_c2(P);
        t.residual(std::abs(whole - split), 1e-6, "set#" + std::to_string(idx++));
    }
    return t.r;
}

CheckResult check_frakc1_vanishing(const Options&) {
    Tracker t("frakc1-vanishing-unequal-moduli", "n2=0, chat1 != chat2 pairs");
    std::vector<FrakCParams> sets{
        frak_params(5, 3, 2, 2, 3, 1, 1, 1, 0),
        frak_params(5, 3, 2, 1, 2, 1, 1, 1, 0),
        frak_params(5, 3, 2, 3, 4, 1, 1, 1, 0),
        frak_params(7, 3, 2, 2, 5, 1, 1, 2, 0),
        frak_params(5, 2, 1, 2, 6, 2, 1, 1, 0),  // chat = (1, 3)
    };
    int idx = 0;
    for (const auto& P : sets)
        t.residual(std::abs(frak_c1(P)), 1e-9, "set#" + std::to_string(idx++));
    return t.r;
}

CheckResult check_frakc2_vanishing(const Options& o) {
    bool full = o.profile == Profile::Full;
    Tracker t("frakc2-vanishing-failed-quartic",
              "n2=0, quartic congruence violated; p in {5,7}, k=3, lambda=2");
    std::vector<FrakCParams> sets{
        frak_params(7, 3, 2, 1, 1, 1, 1, 2, 0),
        frak_params(7, 3, 2, 1, 1, 1, 1, 3, 0),
        frak_params(7, 3, 2, 1, 1, 1, 2, 3, 0),
        frak_params(5, 3, 2, 1, 2, 1, 1, 1, 0),
        frak_params(5, 3, 2, 1, 2, 1, 1, 3, 0),
    };
    if (full) {
        // p=11 separates the two orientations of the quartic congruence
        sets.push_back(frak_params(11, 3, 2, 3, 1, 1, 2, 1, 0));
        sets.push_back(frak_params(11, 3, 2, 3, 1, 1, 4, 1, 0));
        // odd lambda: the congruence modulus is p^floor(lambda/2) = p
        sets.push_back(frak_params(7, 5, 3, 1, 1, 1, 1, 2, 0));
    }
    int idx = 0;
    for (const auto& P : sets) {
        t.exact(!frak_c2_zero_congruence(P), "set#" + std::to_string(idx) + " grid error");
        t.residual(std::abs(frak_c2(P)), 1e-6, "set#" + std::to_string(idx));
        ++idx;
    }
    return t.r;
}

CheckResult check_frakc_bounds(const Options& o) {
    bool full = o.profile == Profile::Full;
    Tracker t("frakc-growth-bounds", "frakc1 vs c-hat products; frakc2 vs powers of p");
    for (const auto& P : {frak_params(5, 3, 2, 2, 2, 1, 1, 1, 0),
                          frak_params(5, 3, 2, 3, 3, 1, 1, 2, 0),
                          frak_params(5, 3, 2, 2, 4, 1, 1, 1, 2),
                          frak_params(7, 3, 2, 2, 6, 2, 1, 1, 3),
                          frak_params(5, 3, 2, 4, 6, 2, 1, 1, 6)}) {
        double v = std::abs(frak_c1(P));
        u64 ch1 = P.chat1(), ch2 = P.chat2();
        double bound;
        std::string where;
        if (P.n2 == 0 && P.c1 == P.c2) {
            u64 g = std::gcd(ch1, reduce(P.m1 - P.m2, ch1));
            if (g == 0) g = ch1;
            bound = static_cast<double>(ch1) * ch1 * g;
            where = "diag c=" + std::to_string(P.c1);
        } else {
            u64 g = std::gcd(std::gcd(ch1, ch2), reduce(P.n2, ch1 * ch2));
            if (g == 0) g = std::gcd(ch1, ch2);
            bound = static_cast<double>(ch1) * ch2 * g;
            where = "c=(" + std::to_string(P.c1) + "," + std::to_string(P.c2) + "),n2=" +
                    std::to_string(P.n2);
        }
        t.ratio(v, bound, o.slack, "frakc1 " + where);
    }

    std::vector<FrakCParams> diag{
        frak_params(5, 3, 2, 1, 1, 1, 1, 1, 0),
        frak_params(5, 3, 2, 2, 2, 1, 1, 1, 0),
        frak_params(7, 3, 2, 1, 1, 1, 1, 1, 0),
    };
    if (full) diag.push_back(frak_params(7, 5, 3, 1, 1, 1, 1, 1, 0));  // odd lambda
    for (const auto& P : diag) {
        double v = std::abs(frak_c2(P));
        double bound = std::pow(static_cast<double>(P.p), 3.0 * P.lambda);
        t.ratio(v, bound, o.slack, "frakc2 diag p=" + std::to_string(P.p) +
                                       ",lam=" + std::to_string(P.lambda));
    }

    std::vector<FrakCParams> offdiag{
        frak_params(5, 3, 2, 1, 1, 1, 1, 1, 1),
        frak_params(5, 3, 2, 1, 1, 1, 1, 2, 5),
        frak_params(7, 3, 2, 1, 1, 1, 1, 1, 7),
    };
    if (full) offdiag.push_back(frak_params(5, 3, 2, 2, 2, 1, 1, 1, 25));
    for (const auto& P : offdiag) {
        double v = std::abs(frak_c2(P));
        unsigned nu = valuation(P.n2, P.p).value();
        unsigned cap = (P.lambda + 1) / 2;
        double bound = std::pow(static_cast<double>(P.p),
                                std::ceil(5.0 * P.lambda / 2.0) + std::min(nu, cap));
        t.ratio(v, bound, o.slack, "frakc2 n2=" + std::to_string(P.n2));
    }
    return t.r;
}

CheckResult check_beta_factorization(const Options& o) {
    bool full = o.profile == Profile::Full;
    Tracker t("beta-sum-factorization",
              "(p,k,lambda) in {(5,3,1),(5,3,2),(7,2,1)}, c in {1,2,3}, u in {1,3}");
    std::vector<std::tuple<u64, unsigned, unsigned>> pk{{5, 3, 1}};
    if (full) {
        pk.emplace_back(5, 3, 2);
        pk.emplace_back(7, 2, 1);
    }
    for (auto [p, k, lambda] : pk) {
        u64 pkl = pow_u(p, k - lambda);
        for (u64 c : {1, 2, 3}) {
            if (!full && c == 3) continue;
            for (u64 u : {1, 3}) {
                // smallest m with m = -u p^{k-lambda} mod c and m + u p^{k-lambda}
                // a unit mod p
                i64 m_ok = static_cast<i64>(reduce(-static_cast<i64>(u * pkl), c));
                while (addmod(reduce(m_ok, p), mulmod(u % p, pkl % p, p), p) == 0)
                    m_ok += static_cast<i64>(c);
                double res = beta_factorization_check(c, p, k, lambda, m_ok, u, 1);
                t.residual(res, 1e-7, fmt(p, k) + ",lam=" + std::to_string(lambda) +
                                          ",c=" + std::to_string(c) + ",u=" +
                                          std::to_string(u) + ",sat");
                if (c > 1) {
                    i64 m_bad = m_ok + 1;
                    while (addmod(reduce(m_bad, p), mulmod(u % p, pkl % p, p), p) == 0)
                        ++m_bad;
                    double res2 = beta_factorization_check(c, p, k, lambda, m_bad, u, 1);
                    t.residual(res2, 1e-7, fmt(p, k) + ",lam=" + std::to_string(lambda) +
                                               ",c=" + std::to_string(c) + ",u=" +
                                               std::to_string(u) + ",viol");
                }
            }
        }
    }
    return t.r;
}

// ---- Hecke coefficients ------------------------------------------------------

CheckResult check_tau_exact(const Options& o) {
    bool full = o.profile == Profile::Full;
    u64 N = full ? 10000 : 2000;
    Tracker t("tau-recursion-multiplicativity-deligne", "exact, n <= " + std::to_string(N));
    auto table = CoefficientTable::delta(N, o.cache_dir);
    for (u64 n = 2; n <= N; ++n) {
        auto factors = factorize(n);
        if (factors.size() == 1) {
            auto [p, e] = factors[0];
            if (e >= 2) {
                BigInt lhs = table.a(n);
                BigInt pw;
                mpz_ui_pow_ui(pw.get_mpz_t(), p, 11);
                BigInt rhs = table.a(p) * table.a(n / p) -
                             pw * (e == 2 ? BigInt(1) : table.a(n / p / p));
                t.exact(lhs == rhs, "recursion at n=" + std::to_string(n));
            } else {
                BigInt pw;
                mpz_ui_pow_ui(pw.get_mpz_t(), p, 11);
                t.exact(table.a(p) * table.a(p) <= 4 * pw,
                        "deligne at p=" + std::to_string(p));
            }
        } else {
            u64 pp = pow_u(factors[0].first, factors[0].second);
            t.exact(table.a(n) == table.a(pp) * table.a(n / pp),
                    "multiplicativity at n=" + std::to_string(n));
        }
        if (!t.r.passed) break;
    }
    return t.r;
}

CheckResult check_convolution_identity(const Options& o) {
    bool full = o.profile == Profile::Full;
    u64 N = full ? 10000 : 500;
    Tracker t("sym2-moebius-convolution-identity",
              "exact rational equality, n <= " + std::to_string(N));
    auto table = CoefficientTable::delta(N, o.cache_dir);
    auto boxplus = table.one_boxplus_prefix(N);
    for (u64 n = 1; n <= N; ++n) {
        Rational lhs = table.lambda_sq(n);
        Rational rhs = 0;
        for (u64 d = 1; d * d <= n; ++d) {
            if (n % (d * d) != 0) continue;
            int mu = mobius(d);
            if (mu == 0) continue;
            rhs += mu > 0 ? boxplus[n / (d * d)] : -boxplus[n / (d * d)];
        }
        t.exact(lhs == rhs, "n=" + std::to_string(n));
        if (!t.r.passed) break;
    }
    return t.r;
}

CheckResult check_gl3_vs_sym2(const Options& o) {
    bool full = o.profile == Profile::Full;
    u64 N = full ? 1000 : 200;
    Tracker t("gl3-coeff-vs-sym2-convolution",
              "exact equality, n <= " + std::to_string(N) + "; symmetry on n1,n2 <= 12");
    auto table = CoefficientTable::delta(std::max<u64>(N, 100), o.cache_dir);
    auto s2 = table.sym2_prefix(N);
    for (u64 n = 1; n <= N; ++n) {
        t.exact(table.gl3_coeff(1, n) == s2[n], "n=" + std::to_string(n));
        if (!t.r.passed) break;
    }
    for (u64 a = 1; a <= 12; ++a)
        for (u64 b = a + 1; b <= 12; ++b)
            t.exact(table.gl3_coeff(a, b) == table.gl3_coeff(b, a),
                    "symmetry (" + std::to_string(a) + "," + std::to_string(b) + ")");
    return t.r;
}

CheckResult check_rankin_selberg(const Options& o) {
    bool full = o.profile == Profile::Full;
    u64 N = full ? 10000 : 2000;
    Tracker t("rankin-selberg-mean-square",
              "sum_{n1^2 n2 <= N} |A|^2 <= 10 N at N=" + std::to_string(N));
    auto table = CoefficientTable::delta(N, o.cache_dir);
    t.ratio(rankin_selberg_ratio(table, N), 1.0, o.slack, "N=" + std::to_string(N));
    return t.r;
}

// ---- harness -----------------------------------------------------------------

CheckResult check_poisson(const Options&) {
    Tracker t("poisson-progression-identity",
              "c in {1,25,49}, beta in {0,1,3}, sigma in {1,5,40}");
    for (u64 c : {1, 25, 49})
        for (i64 beta : {0, 1, 3})
            for (double sigma : {1.0, 5.0, 40.0})
                t.residual(poisson_check(c, beta, sigma), 1e-10,
                           "c=" + std::to_string(c) + ",beta=" + std::to_string(beta) +
                               ",sigma=" + std::to_string(sigma));
    return t.r;
}

// Frozen regression anchor: E at (X=1e4, q=25, a=2), recorded from the first
// run of this implementation.
constexpr double kDiscrepancyAnchor = -2.9161556837702065;
constexpr bool kAnchorFrozen = true;

CheckResult check_discrepancy(const Options& o) {
    bool full = o.profile == Profile::Full;
    Tracker t("discrepancy-telescoping-csv-anchor",
              full ? "q in {25,49}, X in {1e3,1e4,1e5}" : "q=25, X in {1e3,1e4}");
    std::vector<double> Xs =
        full ? std::vector<double>{1e3, 1e4, 1e5} : std::vector<double>{1e3, 1e4};
    u64 need = static_cast<u64>(2 * Xs.back()) + 2;
    auto table = CoefficientTable::delta(need, o.cache_dir);
    BumpFunction V;

    std::vector<PrimePower> mods{PrimePower::make(5, 2)};
    if (full) mods.push_back(PrimePower::make(7, 2));
    for (const auto& q : mods) {
        for (double X : Xs) {
            auto rows = discrepancy_all_units(X, q, table, V);
            double sum = 0;
            for (const auto& r : rows) sum += r.E;
            t.residual(std::abs(sum), 1e-10 * std::max(1.0, X),
                       "telescoping q=" + std::to_string(q.q) + ",X=" + std::to_string(X));
        }
        auto scan1 = discrepancy_scan(q, Xs, table, V);
        auto scan2 = discrepancy_scan(q, Xs, table, V);
        t.exact(scan1.csv == scan2.csv, "csv byte-stability q=" + std::to_string(q.q));
        t.exact(scan1.slope <= 1.0, "slope <= 1 at q=" + std::to_string(q.q));
    }

    if (kAnchorFrozen) {
        auto row = discrepancy(1e4, PrimePower::make(5, 2), 2, table, V);
        t.residual(std::abs(row.E - kDiscrepancyAnchor),
                   1e-12 * std::max(1.0, std::abs(kDiscrepancyAnchor)),
                   "regression anchor (X=1e4,q=25,a=2)");
    }
    return t.r;
}

CheckResult check_twisted(const Options& o) {
    Tracker t("twisted-sum-vanishing-and-bound",
              "p | ell exact zero; empty support; N=500 vs reference");
    auto table = CoefficientTable::delta(1001, o.cache_dir);
    PrimePower q25 = PrimePower::make(5, 2);
    BumpFunction V;

    t.exact(twisted_sum(200, 5, q25, table, V) == Complex{0, 0}, "p|ell exact zero");
    t.exact(twisted_sum(0.4, 1, q25, table, V) == Complex{0, 0}, "empty support");
    Complex s = twisted_sum(500, 1, q25, table, V);
    t.ratio(std::abs(s), twisted_reference(500, q25), o.slack, "N=500,ell=1,q=25");
    // frozen regression anchor from the first run of this implementation
    t.residual(std::abs(s - Complex{-4.1280490388354458, 0.0}), 1e-12,
               "regression anchor S(500,1,25)");
    return t.r;
}

} // namespace

std::vector<CheckResult> run_all(const Options& opts) {
    using CheckFn = CheckResult (*)(const Options&);
    constexpr CheckFn checks[] = {
        check_kl3_closed,         check_kl4_from_kl3,    check_kl4_vanishing,
        check_deligne,            check_kl2_classical,   check_kloosterman_crt,
        check_ramanujan,          check_gauss,           check_corr_vanishing,
        check_corr_bounds,        check_ca_identities,   check_frakc_factorization,
        check_frakc1_vanishing,   check_frakc2_vanishing, check_frakc_bounds,
        check_beta_factorization, check_tau_exact,       check_convolution_identity,
        check_gl3_vs_sym2,        check_rankin_selberg,  check_poisson,
        check_discrepancy,        check_twisted,
    };
    std::vector<CheckResult> out;
    for (CheckFn fn : checks) {
        try {
            out.push_back(fn(opts));
        } catch (const std::exception& e) {
            CheckResult r;
            r.name = "(exception)";
            r.passed = false;
            r.detail = e.what();
            out.push_back(std::move(r));
        }
    }
    return out;
}

int report(const std::vector<CheckResult>& results, std::ostream& os) {
    int failures = 0;
    for (const auto& r : results) {
        os << (r.passed ? "PASS" : "FAIL") << "  " << r.name << "  [" << r.grid << "]"
           << "  max_residual=" << r.max_residual;
        if (r.max_ratio > 0) os << "  max_bound_ratio=" << r.max_ratio;
        os << "\n";
        if (!r.passed) {
            os << "      first counterexample: " << r.detail << "\n";
            ++failures;
        }
    }
    os << (failures == 0 ? "all checks passed\n"
                         : std::to_string(failures) + " check(s) failed\n");
    return failures == 0 ? 0 : 1;
}

} // namespace klsum::verify
