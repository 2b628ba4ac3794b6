#include "klsum/closed_form.hpp"

#include <cmath>
#include <numeric>

namespace klsum {

namespace {

void check_kl3_hypotheses(u64 p, unsigned k) {
    if (p == 3) throw unsupported_error("kl3_closed: p = 3 outside the closed form");
    if (k < 2) throw unsupported_error("kl3_closed: k >= 2 required");
}

int jacobi_q_over_3(u64 p, unsigned k) {
    // (p^k / 3) depends only on p^k mod 3; p != 3 keeps it nonzero
    u64 r = powmod(p % 3, k, 3);
    return r == 1 ? 1 : -1;
}

} // namespace

Complex kl3_closed(u64 a, u64 p, unsigned k) {
    check_kl3_hypotheses(p, k);
    PrimePower pp = PrimePower::make(p, k);
    a = require_unit(static_cast<i64>(a % pp.q), pp.q);
    auto roots = cube_roots(a, p, k);
    if (roots.empty()) return {0.0, 0.0};
    int jac = jacobi_q_over_3(p, k);
    CompensatedSum acc;
    for (u64 r : roots)
        acc.add(e_frac(static_cast<i64>(mulmod(3 % pp.q, r, pp.q)), pp.q));
    return acc.value() * static_cast<double>(jac);
}

std::vector<Complex> kl3_table(u64 p, unsigned k) {
    check_kl3_hypotheses(p, k);
    PrimePower pp = PrimePower::make(p, k);
    u64 q = pp.q;
    int jac = jacobi_q_over_3(p, k);
    auto phases = phase_table(q);
    std::vector<Complex> t(q, Complex{0, 0});
    for (u64 r = 1; r < q; ++r) {
        if (r % p == 0) continue;
        u64 cube = mulmod(mulmod(r, r, q), r, q);
        t[cube] += static_cast<double>(jac) * phases[mulmod(3 % q, r, q)];
    }
    return t;
}

Complex kl4_via_kl3(u64 a, u64 p, unsigned k) {
    check_kl3_hypotheses(p, k);
    PrimePower pp = PrimePower::make(p, k);
    u64 q = pp.q;
    a = require_unit(static_cast<i64>(a % q), q);
    auto kl3 = kl3_table(p, k);
    auto phases = phase_table(q);
    CompensatedSum acc;
    for (u64 x = 1; x < q; ++x) {
        if (x % p == 0) continue;
        acc.add(phases[mulmod(a, x, q)] * kl3[mod_inv(x, q)]);
    }
    return acc.value() / std::sqrt(static_cast<double>(q));
}

std::vector<Complex> kl4_table(u64 p, unsigned k) {
    check_kl3_hypotheses(p, k);
    PrimePower pp = PrimePower::make(p, k);
    u64 q = pp.q;
    auto kl3 = kl3_table(p, k);
    auto phases = phase_table(q);

    // g[x] = Kl_3(xbar; q) on units
    std::vector<Complex> g(q, Complex{0, 0});
    for (u64 x = 1; x < q; ++x)
        if (x % p != 0) g[x] = kl3[mod_inv(x, q)];

    std::vector<Complex> out(q, Complex{0, 0});
    double norm = std::sqrt(static_cast<double>(q));
    for (u64 a = 1; a < q; ++a) {
        if (a % p == 0) continue;
        CompensatedSum acc;
        u64 w = 0;  // w = a*x mod q as x steps by one
        for (u64 x = 1; x < q; ++x) {
            w += a;
            if (w >= q) w -= q;
            if (x % p != 0) acc.add(phases[w] * g[x]);
        }
        out[a] = acc.value() / norm;
    }
    return out;
}

Complex kl4_vanishing_check(i64 m, u64 a, u64 p, unsigned k) {
    PrimePower pp = PrimePower::make(p, k);
    if (k < 2) throw unsupported_error("kl4_vanishing_check: k >= 2 required");
    if (reduce(m, p) != 0)
        throw domain_error("kl4_vanishing_check: p must divide m");
    if (!is_unit(a, p))
        throw domain_error("kl4_vanishing_check: (a, p) = 1 required");
    u64 q = pp.q;
    u64 b = mulmod(reduce(m, q), a % q, q);

    // the unit-tuple sum itself is empty, hence exactly zero
    if (kl_trace(4, b, q) != Complex{0, 0})
        throw domain_error("kl4_vanishing_check: degenerate sum not empty");

    auto kl3 = hyper_kloosterman_all(3, q);
    auto phases = phase_table(q);
    CompensatedSum acc;
    for (u64 x = 1; x < q; ++x) {
        if (x % p == 0) continue;
        acc.add(phases[mulmod(b, x, q)] * kl3[mod_inv(x, q)]);
    }
    return acc.value() / std::sqrt(static_cast<double>(q));
}

unsigned cube_root_count(u64 a, u64 p, unsigned k) {
    return static_cast<unsigned>(cube_roots(a, p, k).size());
}

} // namespace klsum
