// Command-line front end: closed-form and brute-force Kloosterman-type sums,
// character-sum families, Hecke coefficient tables, the progression
// discrepancy experiment, and the verification suite.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "klsum/correlation.hpp"
#include "klsum/harness.hpp"
#include "klsum/verify.hpp"

namespace {

using namespace klsum;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

u64 as_u64(double x, const char* flag) {
    if (x < 0 || x != std::floor(x))
        throw domain_error(std::string(flag) + " must be a nonnegative integer");
    return static_cast<u64>(x);
}

i64 as_i64(double x, const char* flag) {
    if (x != std::floor(x))
        throw domain_error(std::string(flag) + " must be an integer");
    return static_cast<i64>(x);
}

void print_complex(Complex z) {
    std::printf("%.17g %+.17g i   |.| = %.17g\n", z.real(), z.imag(), std::abs(z));
}

int cmd_kl(double d_in, double p, double k, double a, const std::string& method) {
    unsigned d = static_cast<unsigned>(as_u64(d_in, "--d"));
    u64 pu = as_u64(p, "--p");
    unsigned ku = static_cast<unsigned>(as_u64(k, "--k"));
    u64 au = as_u64(a, "--a");
    PrimePower pp = PrimePower::make(pu, ku);
    Complex v;
    if (method == "closed") {
        if (d != 3 && d != 4)
            throw unsupported_error("--method=closed supports d = 3 (direct) and d = 4 (reduction)");
        v = d == 3 ? kl3_closed(au, pu, ku) : kl4_via_kl3(au, pu, ku);
    } else {
        v = hyper_kloosterman_brute(d, au % pp.q, pp.q);
    }
    print_complex(v);
    return kExitOk;
}

int cmd_charsum(const std::string& family, double m_in, double g1, double g2, double p,
                double k, double l1, double l2, double a, const std::string& route,
                double n2_in, double m1_in, double m2_in, double c1, double c2, double n1,
                double lambda, double ell, const std::string& sign) {
    u64 pu = as_u64(p, "--p");
    unsigned ku = static_cast<unsigned>(as_u64(k, "--k"));
    i64 m = as_i64(m_in, "--m");
    if (family == "c") {
        CorrelationParams params{m, as_u64(g1, "--gamma1"), as_u64(g2, "--gamma2"),
                                 PrimePower::make(pu, ku)};
        print_complex(c_corr(params));
        return kExitOk;
    }
    if (family == "ca") {
        PrimePower pp = PrimePower::make(pu, ku);
        Complex v = route == "reduced"
                        ? c_a_reduced(m, as_u64(l1, "--l1"), as_u64(l2, "--l2"),
                                      as_u64(a, "--a"), pp)
                        : c_a_fourier(m, as_u64(l1, "--l1"), as_u64(l2, "--l2"),
                                      as_u64(a, "--a"), pp);
        print_complex(v);
        return kExitOk;
    }
    FrakCParams P;
    P.n2 = as_i64(n2_in, "--n2");
    P.m1 = as_i64(m1_in, "--m1");
    P.m2 = as_i64(m2_in, "--m2");
    P.c1 = as_u64(c1, "--c1");
    P.c2 = as_u64(c2, "--c2");
    P.n1 = as_u64(n1, "--n1");
    P.p = pu;
    P.lambda = static_cast<unsigned>(as_u64(lambda, "--lambda"));
    P.k = ku;
    P.ell = as_u64(ell, "--ell");
    P.sign = sign == "-" ? -1 : +1;
    Complex v;
    if (family == "frakc")
        v = frak_c(P);
    else if (family == "frakc1")
        v = frak_c1(P);
    else if (family == "frakc2")
        v = frak_c2(P);
    else
        throw domain_error("--family must be one of c, ca, frakc, frakc1, frakc2");
    print_complex(v);
    return kExitOk;
}

int cmd_hecke(const std::string& which, double n, const std::string& coeffs_file) {
    u64 nn = as_u64(n, "--n");
    if (nn < 1) throw domain_error("--n must be >= 1");
    CoefficientTable table =
        coeffs_file.empty()
            ? CoefficientTable::delta(std::max<u64>(nn, 16), default_cache_dir())
            : CoefficientTable::from_file(coeffs_file);
    if (which == "tau") {
        std::printf("%s\n", table.a_at(nn).get_str().c_str());
    } else if (which == "sym2") {
        Rational r = table.sym2(nn);
        std::printf("%s   ~ %.17g\n", r.get_str().c_str(), r.get_d());
    } else if (which == "boxplus") {
        Rational r = table.one_boxplus(nn);
        std::printf("%s   ~ %.17g\n", r.get_str().c_str(), r.get_d());
    } else {
        throw domain_error("--table must be one of tau, sym2, boxplus");
    }
    return kExitOk;
}

int cmd_discrepancy(double p, double k, std::vector<double> xs, const std::string& out,
                    double delta0, const std::string& bump) {
    if (xs.empty()) throw domain_error("at least one --x value required");
    PrimePower pp = PrimePower::make(as_u64(p, "--p"),
                                     static_cast<unsigned>(as_u64(k, "--k")));
    double xmax = *std::max_element(xs.begin(), xs.end());
    auto table = CoefficientTable::delta(static_cast<u64>(2 * xmax) + 2,
                                         default_cache_dir());
    BumpFunction V;
    if (bump == "sharp-cut") V.kind = BumpFunction::Kind::SharpCut;
    auto scan = discrepancy_scan(pp, xs, table, V, delta0);

    if (!out.empty()) {
        std::ofstream f(out, std::ios::binary);
        if (!f) throw domain_error("cannot open output file " + out);
        f << scan.csv;
    } else {
        std::fputs(scan.csv.c_str(), stdout);
    }
    for (const auto& s : scan.summaries)
        std::printf("# X=%.17g max|E|=%.17g\n", s.X, s.max_abs_E);
    std::printf("# slope log max|E| vs log X: %.17g\n", scan.slope);
    return kExitOk;
}

int cmd_twisted(double n, double ell_in, double p, double k) {
    i64 ell = as_i64(ell_in, "--ell");
    PrimePower pp = PrimePower::make(as_u64(p, "--p"),
                                     static_cast<unsigned>(as_u64(k, "--k")));
    auto table = CoefficientTable::delta(static_cast<u64>(2 * n) + 2,
                                         default_cache_dir());
    BumpFunction V;
    Complex s = twisted_sum(n, ell, pp, table, V);
    print_complex(s);
    std::printf("reference (eps=0): %.17g\n", twisted_reference(n, pp));
    return kExitOk;
}

int cmd_poisson(double c, double beta, double sigma) {
    std::printf("residual = %.17g\n",
                poisson_check(as_u64(c, "--c"), as_i64(beta, "--beta"), sigma));
    return kExitOk;
}

int cmd_bench(double p, double k, double samples, double seed) {
    auto rep = bench_kl3(as_u64(p, "--p"), static_cast<unsigned>(as_u64(k, "--k")),
                         as_u64(samples, "--samples"), as_u64(seed, "--seed"));
    std::printf("closed form: %.3f ns/call over %llu samples\n", rep.closed_ns_per_call,
                static_cast<unsigned long long>(rep.closed_samples));
    if (rep.brute_ns_per_call) {
        std::printf("brute force: %.3f ns/call over %llu samples\n", *rep.brute_ns_per_call,
                    static_cast<unsigned long long>(rep.brute_samples));
        std::printf("speedup: %.1fx\n", *rep.speedup);
    } else {
        std::printf("brute force: skipped (per-call cost beyond the guard)\n");
    }
    return kExitOk;
}

int cmd_verify(const std::string& profile, const std::string& fault, double slack) {
    verify::Options o;
    o.profile = profile == "full" ? verify::Profile::Full : verify::Profile::Quick;
    o.cache_dir = default_cache_dir();
    o.slack = slack;
    if (fault == "jacobi-sign")
        o.fault = verify::Fault::FlipJacobiSign;
    else if (fault != "none")
        throw domain_error("--inject-fault must be none or jacobi-sign");
    auto results = verify::run_all(o);
    return verify::report(results, std::cout) == 0 ? kExitOk : kExitVerifyFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kloosterman-type exponential sums modulo prime powers: closed "
                 "forms, brute-force oracles, coefficient identities, and the "
                 "arithmetic-progression discrepancy experiment"};
    app.require_subcommand(1);

    auto* kl = app.add_subcommand("kl", "evaluate a hyper-Kloosterman sum Kl_d(a; p^k)");
    double kl_d = 3, kl_p = 5, kl_k = 2, kl_a = 1;
    std::string kl_method = "closed";
    kl->add_option("--d", kl_d, "degree d >= 1");
    kl->add_option("--p", kl_p, "prime p");
    kl->add_option("--k", kl_k, "exponent k");
    kl->add_option("--a", kl_a, "argument a");
    kl->add_option("--method", kl_method, "brute|closed")
        ->check(CLI::IsMember({"brute", "closed"}));

    auto* cs = app.add_subcommand("charsum", "evaluate a correlation/character sum");
    std::string cs_family = "c", cs_route = "fourier", cs_sign = "+";
    double cs_m = 0, cs_n2 = 0, cs_m1 = 1, cs_m2 = 1;
    double cs_g1 = 1, cs_g2 = 1, cs_p = 5, cs_k = 2, cs_l1 = 1, cs_l2 = 1, cs_a = 1;
    double cs_c1 = 1, cs_c2 = 1, cs_n1 = 1, cs_lambda = 1, cs_ell = 1;
    cs->add_option("--family", cs_family, "c|ca|frakc|frakc1|frakc2")
        ->check(CLI::IsMember({"c", "ca", "frakc", "frakc1", "frakc2"}));
    cs->add_option("--m", cs_m, "shift m (families c, ca)");
    cs->add_option("--gamma1", cs_g1, "gamma1 (family c)");
    cs->add_option("--gamma2", cs_g2, "gamma2 (family c)");
    cs->add_option("--l1", cs_l1, "l1 (family ca)");
    cs->add_option("--l2", cs_l2, "l2 (family ca)");
    cs->add_option("--a", cs_a, "a (family ca)");
    cs->add_option("--route", cs_route, "fourier|reduced (family ca)")
        ->check(CLI::IsMember({"fourier", "reduced"}));
    cs->add_option("--n2", cs_n2, "dual frequency n2 (frakc family)");
    cs->add_option("--m1", cs_m1, "m1 (frakc family)");
    cs->add_option("--m2", cs_m2, "m2 (frakc family)");
    cs->add_option("--c1", cs_c1, "c1 (frakc family)");
    cs->add_option("--c2", cs_c2, "c2 (frakc family)");
    cs->add_option("--n1", cs_n1, "n1 | (c1, c2) (frakc family)");
    cs->add_option("--lambda", cs_lambda, "lambda <= 2k/3 (frakc family)");
    cs->add_option("--ell", cs_ell, "twist ell (frakc family)");
    cs->add_option("--sign", cs_sign, "+|- dual-variable sign (frakc family)")
        ->check(CLI::IsMember({"+", "-"}));
    cs->add_option("--p", cs_p, "prime p");
    cs->add_option("--k", cs_k, "exponent k");

    auto* hk = app.add_subcommand("hecke", "exact Hecke coefficient tables");
    std::string hk_table = "tau", hk_coeffs;
    double hk_n = 1;
    hk->add_option("--table", hk_table, "tau|sym2|boxplus")
        ->check(CLI::IsMember({"tau", "sym2", "boxplus"}));
    hk->add_option("--n", hk_n, "index n");
    hk->add_option("--coeffs", hk_coeffs, "user coefficient file instead of the built-in form");

    auto* dc = app.add_subcommand("discrepancy", "progression discrepancy scan, CSV output");
    double dc_p = 5, dc_k = 2, dc_delta0 = 0.05;
    std::vector<double> dc_x;
    std::string dc_out, dc_bump = "smooth-bump";
    dc->add_option("--p", dc_p, "prime p");
    dc->add_option("--k", dc_k, "exponent k");
    dc->add_option("--x", dc_x, "cutoff X (repeatable)")->required();
    dc->add_option("--out", dc_out, "CSV output file (stdout when absent)");
    dc->add_option("--delta0", dc_delta0, "reporting exponent delta0 (default 0.05)");
    dc->add_option("--bump", dc_bump, "smooth-bump|sharp-cut")
        ->check(CLI::IsMember({"smooth-bump", "sharp-cut"}));

    auto* tw = app.add_subcommand("twisted", "twisted coefficient sum S(N)");
    double tw_n = 500, tw_p = 5, tw_k = 2;
    double tw_ell = 1;
    tw->add_option("--n", tw_n, "length N");
    tw->add_option("--ell", tw_ell, "twist ell");
    tw->add_option("--p", tw_p, "prime p");
    tw->add_option("--k", tw_k, "exponent k");

    auto* ps = app.add_subcommand("poisson", "progression Poisson-summation residual");
    double ps_c = 1, ps_sigma = 1;
    double ps_beta = 0;
    ps->add_option("--c", ps_c, "progression modulus c");
    ps->add_option("--beta", ps_beta, "progression class beta");
    ps->add_option("--sigma", ps_sigma, "Gaussian width sigma");

    auto* bn = app.add_subcommand("bench", "closed form vs brute force timing");
    double bn_p = 101, bn_k = 2, bn_samples = 1000, bn_seed = 1;
    bn->add_option("--p", bn_p, "prime p");
    bn->add_option("--k", bn_k, "exponent k");
    bn->add_option("--samples", bn_samples, "number of seeded samples");
    bn->add_option("--seed", bn_seed, "sample seed");

    auto* vf = app.add_subcommand("verify", "run the verification suites");
    std::string vf_profile = "quick", vf_fault = "none";
    double vf_slack = 10.0;
    vf->add_option("--profile", vf_profile, "quick|full")
        ->check(CLI::IsMember({"quick", "full"}));
    vf->add_option("--inject-fault", vf_fault, "none|jacobi-sign (harness smoke test)");
    vf->add_option("--slack", vf_slack, "slack factor for growth bounds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(kl)) return cmd_kl(kl_d, kl_p, kl_k, kl_a, kl_method);
        if (app.got_subcommand(cs))
            return cmd_charsum(cs_family, cs_m, cs_g1, cs_g2, cs_p, cs_k, cs_l1, cs_l2,
                               cs_a, cs_route, cs_n2, cs_m1, cs_m2, cs_c1, cs_c2, cs_n1,
                               cs_lambda, cs_ell, cs_sign);
        if (app.got_subcommand(hk)) return cmd_hecke(hk_table, hk_n, hk_coeffs);
        if (app.got_subcommand(dc))
            return cmd_discrepancy(dc_p, dc_k, dc_x, dc_out, dc_delta0, dc_bump);
        if (app.got_subcommand(tw)) return cmd_twisted(tw_n, tw_ell, tw_p, tw_k);
        if (app.got_subcommand(ps)) return cmd_poisson(ps_c, ps_beta, ps_sigma);
        if (app.got_subcommand(bn)) return cmd_bench(bn_p, bn_k, bn_samples, bn_seed);
        if (app.got_subcommand(vf)) return cmd_verify(vf_profile, vf_fault, vf_slack);
    } catch (const resource_error& e) {
        std::fprintf(stderr, "resource guard: %s\n", e.what());
        return kExitResource;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
