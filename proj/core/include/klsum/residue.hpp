#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "klsum/errors.hpp"

namespace klsum {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// ---------------------------------------------------------------------------
// Basic Z/mZ arithmetic. All moduli fit in 64 bits; products go through
// 128-bit intermediates so no operation can overflow.
// ---------------------------------------------------------------------------

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

inline u64 addmod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    if (s < a || s >= m) s -= m;
    return s;
}

u64 powmod(u64 base, u64 exp, u64 m);

// Reduce an arbitrary signed integer into [0, m).
inline u64 reduce(i64 x, u64 m) {
    i64 r = x % static_cast<i64>(m);
    if (r < 0) r += static_cast<i64>(m);
    return static_cast<u64>(r);
}

// Inverse of a mod m. Throws domain_error naming the offending gcd when
// gcd(a, m) > 1.
u64 mod_inv(u64 a, u64 m);

// True iff gcd(a mod m, m) = 1.
bool is_unit(u64 a, u64 m);

// Validates that a (after reduction mod m) is a unit and returns it reduced.
u64 require_unit(i64 a, u64 m);

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime(u64 n);

// Trial-division factorization, (prime, exponent) pairs in ascending order.
std::vector<std::pair<u64, unsigned>> factorize(u64 n);

u64 euler_phi(u64 n);

// Moebius function; 0 on non-squarefree arguments.
int mobius(u64 n);

// ---------------------------------------------------------------------------
// Prime-power modulus q = p^k.
// ---------------------------------------------------------------------------

struct PrimePower {
    u64 p = 0;       // prime
    unsigned k = 0;  // exponent >= 1
    u64 q = 0;       // p^k, guaranteed <= 2^63

    // Validates primality of p and that p^k fits the 2^63 cap.
    static PrimePower make(u64 p, unsigned k);
};

// Jacobi symbol (n/m) for odd m >= 1. Even m is a domain error.
int jacobi(i64 n, u64 m);

// p-adic valuation of n; empty optional encodes the infinite order of 0.
std::optional<unsigned> valuation(i64 n, u64 p);

// All r mod p^k with r^3 = a (mod p^k), ascending. Roots mod p are found by
// enumeration and lifted one power at a time (3r^2 is a unit since p != 3,
// so each lift is unique). Result has 0, 1 or 3 elements.
std::vector<u64> cube_roots(u64 a, u64 p, unsigned k);

// Smallest generator of the cyclic group (Z/p^k Z)^x, odd p only.
u64 unit_group_generator(u64 p, unsigned k);

// ---------------------------------------------------------------------------
// Dirichlet characters mod p^k, odd p. chi(g^t) = e(j t / phi(q)) on the
// fixed smallest generator g; zero off the unit group.
// ---------------------------------------------------------------------------

class DirichletCharacter {
public:
    DirichletCharacter(PrimePower modulus, u64 index);

    std::complex<double> operator()(u64 x) const;

    // For k >= 2 primitive iff p does not divide the index; for k = 1 iff
    // the index is nonzero.
    bool is_primitive() const;

    const PrimePower& modulus() const { return mod_; }
    u64 generator() const { return gen_; }
    u64 index() const { return index_; }
    u64 order() const { return phi_; }

private:
    PrimePower mod_;
    u64 gen_;
    u64 index_;  // reduced mod phi(q)
    u64 phi_;
    std::vector<i64> log_;  // discrete log base gen_, -1 on non-units
};

} // namespace klsum
