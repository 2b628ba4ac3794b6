#include "klsum/residue.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <string>

namespace klsum {

u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

u64 mod_inv(u64 a, u64 m) {
    a %= m;
    // extended Euclid over signed 128-bit; m <= 2^63 keeps everything in range
    i128 old_r = a, r = m;
    i128 old_s = 1, s = 0;
    while (r != 0) {
        i128 qt = old_r / r;
        old_r -= qt * r; std::swap(old_r, r);
        old_s -= qt * s; std::swap(old_s, s);
    }
    if (old_r != 1)
        throw domain_error("mod_inv: argument not a unit, gcd = " +
                           std::to_string(static_cast<u64>(old_r)));
    i128 inv = old_s % static_cast<i128>(m);
    if (inv < 0) inv += m;
    return static_cast<u64>(inv);
}

bool is_unit(u64 a, u64 m) { return std::gcd(a % m, m) == 1; }

u64 require_unit(i64 a, u64 m) {
    u64 r = reduce(a, m);
    if (!is_unit(r, m))
        throw domain_error("residue " + std::to_string(r) + " not a unit mod " +
                           std::to_string(m) + ", gcd = " +
                           std::to_string(std::gcd(r, m)));
    return r;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // this witness set is deterministic for all n < 2^64
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a % n, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
    std::vector<std::pair<u64, unsigned>> out;
    for (u64 d = 2; (u128)d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d == 0) {
            unsigned e = 0;
            while (n % d == 0) { n /= d; ++e; }
            out.emplace_back(d, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

u64 euler_phi(u64 n) {
    u64 phi = n;
    for (auto [p, e] : factorize(n)) { (void)e; phi -= phi / p; }
    return phi;
}

int mobius(u64 n) {
    if (n == 0) throw domain_error("mobius: argument must be >= 1");
    int sign = 1;
    for (auto [p, e] : factorize(n)) {
        (void)p;
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

PrimePower PrimePower::make(u64 p, unsigned k) {
    if (!is_prime(p))
        throw domain_error("PrimePower: " + std::to_string(p) + " is not prime");
    if (k < 1) throw domain_error("PrimePower: exponent must be >= 1");
    u128 q = 1;
    for (unsigned i = 0; i < k; ++i) {
        q *= p;
        if (q > (u128)1 << 63)
            throw resource_error("PrimePower: p^k exceeds the 2^63 modulus cap");
    }
    return PrimePower{p, k, static_cast<u64>(q)};
}

int jacobi(i64 n, u64 m) {
    if (m % 2 == 0) throw domain_error("jacobi: modulus must be odd");
    u64 a = reduce(n, m);
    u64 b = m;
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            u64 r = b % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, b);
        if (a % 4 == 3 && b % 4 == 3) result = -result;
        a %= b;
    }
    return b == 1 ? result : 0;
}

std::optional<unsigned> valuation(i64 n, u64 p) {
    if (!is_prime(p)) throw domain_error("valuation: p must be prime");
    if (n == 0) return std::nullopt;
    u64 a = n < 0 ? static_cast<u64>(-(n + 1)) + 1 : static_cast<u64>(n);
    unsigned e = 0;
    while (a % p == 0) { a /= p; ++e; }
    return e;
}

std::vector<u64> cube_roots(u64 a, u64 p, unsigned k) {
    if (p == 3) throw unsupported_error("cube_roots: p = 3 not supported");
    PrimePower pp = PrimePower::make(p, k);
    a = require_unit(static_cast<i64>(a % pp.q), pp.q);
    if (a % p == 0)
        throw domain_error("cube_roots: argument shares a factor with p");

    std::vector<u64> roots;
    for (u64 r = 1; r < p; ++r)
        if (mulmod(mulmod(r, r, p), r, p) == a % p) roots.push_back(r);

    // lift each root one power of p at a time; the derivative 3r^2 is a unit
    u64 mod = p;
    for (unsigned j = 1; j < k; ++j) {
        u64 next = mod * p;
        for (u64& r : roots) {
            u64 cube = mulmod(mulmod(r, r, next), r, next);
            u64 diff = addmod(a % next, next - cube, next);  // a - r^3 mod p^{j+1}
            u64 quot = (diff / mod) % p;                     // exact: p^j | diff
            u64 deriv = mulmod(3 % p, mulmod(r % p, r % p, p), p);
            u64 t = mulmod(quot, mod_inv(deriv, p), p);
            r = r + t * mod;
        }
        mod = next;
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

u64 unit_group_generator(u64 p, unsigned k) {
    if (p == 2) throw unsupported_error("unit_group_generator: p = 2 not supported");
    PrimePower pp = PrimePower::make(p, k);
    u64 phi = pp.q / p * (p - 1);
    auto factors = factorize(phi);
    for (u64 g = 2; g < pp.q; ++g) {
        if (g % p == 0) continue;
        bool ok = true;
        for (auto [ell, e] : factors) {
            (void)e;
            if (powmod(g, phi / ell, pp.q) == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    throw domain_error("unit_group_generator: no generator found");  // unreachable
}

DirichletCharacter::DirichletCharacter(PrimePower modulus, u64 index)
    : mod_(modulus) {
    if (mod_.p == 2)
        throw unsupported_error("DirichletCharacter: odd p required");
    gen_ = unit_group_generator(mod_.p, mod_.k);
    phi_ = mod_.q / mod_.p * (mod_.p - 1);
    index_ = index % phi_;
    log_.assign(mod_.q, -1);
    u64 x = 1;
    for (u64 t = 0; t < phi_; ++t) {
        log_[x] = static_cast<i64>(t);
        x = mulmod(x, gen_, mod_.q);
    }
}

std::complex<double> DirichletCharacter::operator()(u64 x) const {
    i64 t = log_[x % mod_.q];
    if (t < 0) return {0.0, 0.0};
    u64 num = mulmod(index_, static_cast<u64>(t), phi_);
    double angle = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(phi_);
    return {std::cos(angle), std::sin(angle)};
}

bool DirichletCharacter::is_primitive() const {
    if (mod_.k >= 2) return index_ % mod_.p != 0;
    return index_ != 0;
}

} // namespace klsum
