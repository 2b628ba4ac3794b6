#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "klsum/residue.hpp"

namespace klsum {

using BigInt = mpz_class;
using Rational = mpq_class;

// Exact coefficient table of a level-1 Hecke eigenform, by default Delta
// (weight 12, a = tau). Values a(1..N) are stored; a_at extends to any
// argument whose prime factors stay in range through the recursion
//   a(p^{j+1}) = a(p) a(p^j) - p^{w-1} a(p^{j-1})
// and multiplicativity. Every identity below is exact rational arithmetic;
// floating conversion is left to callers.
class CoefficientTable {
public:
    static constexpr u64 kMaxTableSize = 1000000;

    // Coefficients of Delta = q prod (1-q^n)^24. The eta factor enters as
    // the cube (Jacobi's sparse series) raised to the 8th power by repeated
    // exact polynomial multiplication. When cache_dir is nonempty, a
    // "tau.cache" file there is reused if large enough, else rewritten.
    static CoefficientTable delta(u64 N, const std::string& cache_dir = "");

    // Reads the "# coeffs weight=<w> N=<N>" text format (one "n<TAB>a(n)"
    // line per n, ascending, no gaps).
    static CoefficientTable from_file(const std::string& path);

    u64 size() const { return coeffs_.size() - 1; }
    unsigned weight() const { return weight_; }

    const BigInt& a(u64 n) const;  // table lookup, 1 <= n <= N
    BigInt a_at(u64 n) const;      // recursion + multiplicativity

    Rational lambda_sq(u64 n) const;         // a(n)^2 / n^{w-1}
    Rational lambda_at_square(u64 m) const;  // a(m^2) / m^{w-1}

    // Symmetric-square coefficients A(1, n) = sum_{d^2 m = n} lambda(m^2).
    Rational sym2(u64 n) const;
    std::vector<Rational> sym2_prefix(u64 N) const;  // A(1, 1..N)

    // lambda_{1 boxplus phi}(n) = sum_{m | n} A(1, m).
    Rational one_boxplus(u64 n) const;
    std::vector<Rational> one_boxplus_prefix(u64 N) const;

    struct IdentityCheck {
        bool holds;
        Rational lhs;  // lambda(n)^2
        Rational rhs;  // sum_{d^2 r = n} mu(d) lambda_{1 boxplus phi}(r)
    };
    IdentityCheck convolution_identity_check(u64 n) const;

    // GL3 coefficient A(n1, n2) of the symmetric square, multiplicative in
    // prime powers. A(p^a, p^b) is the Schur evaluation at the Satake
    // multiset {alpha^2, 1, alpha^-2}, carried out through Newton's
    // identities on the power sums (all rational in lambda(p)^2), so no
    // radical ever appears.
    Rational gl3_coeff(u64 n1, u64 n2) const;

    // Writes the cache format: "# tau N=<N>" for weight 12, otherwise the
    // "# coeffs" header.
    void save(const std::string& path) const;

private:
    CoefficientTable(unsigned weight, std::vector<BigInt> coeffs);

    BigInt prime_power_coeff(u64 p, unsigned e) const;
    Rational schur_pp(u64 p, unsigned e1, unsigned e2) const;

    unsigned weight_;
    std::vector<BigInt> coeffs_;  // index 0 unused
};

// Measured constant in sum_{n1^2 n2 <= N} |A(n1,n2)|^2 <= C N: returns the
// ratio (exact per-term squares, double accumulation at the boundary).
double rankin_selberg_ratio(const CoefficientTable& table, u64 N);

} // namespace klsum
