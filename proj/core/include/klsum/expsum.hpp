#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "klsum/residue.hpp"

namespace klsum {

using Complex = std::complex<double>;

// Default cost guard: brute-force sums refuse more than this many terms.
inline constexpr double kCostGuard = 1e8;

// Two T-term sums are considered equal when they differ by at most this.
inline double sum_tolerance(u64 terms) {
    double t = static_cast<double>(terms) * 0x1p-48;
    return t > 1e-9 ? t : 1e-9;
}

// Neumaier-compensated accumulator, applied componentwise. Summation order
// is always ascending residues, so results are reproducible bit for bit.
class CompensatedSum {
public:
    void add(Complex z) {
        add_part(re_, re_c_, z.real());
        add_part(im_, im_c_, z.imag());
    }
    Complex value() const { return {re_ + re_c_, im_ + im_c_}; }

private:
    static void add_part(double& s, double& c, double x) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double re_ = 0, re_c_ = 0, im_ = 0, im_c_ = 0;
};

// Exact phase e(num/den) = exp(2 pi i num / den); the numerator is kept
// reduced mod the denominator so evaluation needs one trigonometric call.
struct RationalPhase {
    u64 num;
    u64 den;

    RationalPhase(i64 numerator, u64 denominator)
        : num(denominator ? reduce(numerator, denominator) : 0), den(denominator) {
        if (denominator == 0)
            throw domain_error("RationalPhase: denominator must be positive");
    }
    Complex value() const;
};

// e(a/q) = exp(2 pi i a / q), evaluated from the reduced phase (a mod q)/q.
Complex e_frac(i64 a, u64 q);

// Table of e(j/q) for j = 0..q-1.
std::vector<Complex> phase_table(u64 q);

// Normalized hyper-Kloosterman sum
//   Kl_d(a; q) = q^{-(d-1)/2} sum_{x_1...x_d = a} e((x_1+...+x_d)/q),
// x_i ranging over units (the product constraint forces this for unit a).
// Enumerates the d-1 free variables in ascending lexicographic order with
// the last variable determined by inversion. Throws resource_error when
// q^{d-1} exceeds the budget and domain_error for non-unit a.
Complex hyper_kloosterman_brute(unsigned d, u64 a, u64 q, double budget = kCostGuard);

// Same sum extended to arbitrary arguments: tuples stay restricted to
// units, so the value is exactly 0 whenever gcd(b, q) > 1.
Complex kl_trace(unsigned d, u64 b, u64 q, double budget = kCostGuard);

// Kl_d(a; q) for every residue a at once (index = a, zero off the units),
// computed by d-1 multiplicative convolutions of the defining sum. Costs
// O(d q^2) total, which beats per-argument enumeration by a factor q^{d-2}
// on exhaustive sweeps.
std::vector<Complex> hyper_kloosterman_all(unsigned d, u64 q, double budget = 40 * kCostGuard);

// Classical Kloosterman sum S(m, n; c) = sum*_{x mod c} e((mx + n xbar)/c),
// unnormalized. S(m, n; 1) = 1.
Complex kloosterman_s(i64 m, i64 n, u64 c);

// Ramanujan sum R_q(u) = sum*_{d mod q} e(du/q) via the closed form
// mu(q/(q,u)) phi(q) / phi(q/(q,u)). With verify set, recomputes by brute
// force and checks agreement before rounding.
i64 ramanujan_sum(i64 u, u64 q, bool verify = false);

// Normalized Gauss sum q^{-1/2} sum_{x mod q} chi(x) e(x/q).
Complex gauss_sum(const DirichletCharacter& chi);

} // namespace klsum
