#pragma once

#include <optional>
#include <string>
#include <vector>

#include "klsum/closed_form.hpp"
#include "klsum/hecke.hpp"

namespace klsum {

// Smooth weight used by the progression sums. The smooth bump is
//   V(x) = exp(-1 / (1 - (2x-3)^2))  on (1, 2), 0 elsewhere,
// infinitely differentiable with V(3/2) = 1/e. The sharp cut is the
// indicator of (1, 2], for exploratory runs only.
struct BumpFunction {
    enum class Kind { SmoothBump, SharpCut };
    Kind kind = Kind::SmoothBump;

    double operator()(double x) const;
};

// One (X, q, a) measurement of the progression discrepancy
//   E = sum_{n = a mod q} lambda(n)^2 V(n/X)
//       - phi(q)^{-1} sum_{(n,q)=1} lambda(n)^2 V(n/X),
// with the (X/q)^{1-delta0} reporting reference alongside.
struct DiscrepancyRow {
    double X;
    u64 q;
    u64 a;
    double E;
    double reference;
};

DiscrepancyRow discrepancy(double X, const PrimePower& q, u64 a,
                           const CoefficientTable& table, const BumpFunction& V,
                           double delta0 = 0.05);

// All unit residues in one ascending-n pass; identical values to the
// per-residue call bit for bit.
std::vector<DiscrepancyRow> discrepancy_all_units(double X, const PrimePower& q,
                                                  const CoefficientTable& table,
                                                  const BumpFunction& V,
                                                  double delta0 = 0.05);

struct ScanSummary {
    double X;
    double max_abs_E;
};

struct ScanResult {
    std::string csv;  // header "X,q,a,E,reference", %.17g numbers, LF endings
    std::vector<DiscrepancyRow> rows;
    std::vector<ScanSummary> summaries;
    double slope;  // least-squares slope of log max|E| against log X
};

ScanResult discrepancy_scan(const PrimePower& q, const std::vector<double>& Xs,
                            const CoefficientTable& table, const BumpFunction& V,
                            double delta0 = 0.05);

// Twisted sum S(N) = sum_m A(1, m) Kl_4(m ell; q) V(m/N). Exactly 0 when
// p | ell since every trace-function value vanishes.
Complex twisted_sum(double N, i64 ell, const PrimePower& q,
                    const CoefficientTable& table, const BumpFunction& V);

// Reference magnitude p^{3/4} N^{3/4} q^{3/10} + N^{1/2} q^{13/20}.
double twisted_reference(double N, const PrimePower& q);

// Residual of the progression Poisson summation identity
//   sum_{n = beta mod c} w(n) = c^{-1} sum_n what(n/c) e(n beta / c)
// for the Gaussian w(x) = exp(-pi x^2 / sigma^2); both sides truncated
// where terms drop below 1e-16.
double poisson_check(u64 c, i64 beta, double sigma);

// Residual of the complete-sum factorization
//   sum_{beta mod c p^k} Kl_4(beta ell; q) e(-(m + u p^{k-lambda}) beta / (c p^k))
//     = c p^{k/2} Kl_3(c ell (m + u p^{k-lambda})^{-1}; q) [m = -u p^{k-lambda} mod c].
double beta_factorization_check(u64 c, u64 p, unsigned k, unsigned lambda,
                                i64 m, u64 u, u64 ell);

struct BenchReport {
    double closed_ns_per_call = 0;
    u64 closed_samples = 0;
    std::optional<double> brute_ns_per_call;
    u64 brute_samples = 0;
    std::optional<double> speedup;
};

// Times the closed form against the defining sum on seeded unit samples.
// The brute side runs only when a single evaluation fits the time budget,
// and on however many samples fit it.
BenchReport bench_kl3(u64 p, unsigned k, u64 samples, u64 seed = 1,
                      double brute_budget_seconds = 10.0);

// Resolves the cache directory: the KLSUM_CACHE_DIR environment variable
// when set, "./.cache" otherwise.
std::string default_cache_dir();

} // namespace klsum
