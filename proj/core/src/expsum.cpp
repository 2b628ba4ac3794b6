#include "klsum/expsum.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace klsum {

Complex RationalPhase::value() const {
    double angle = 2.0 * std::numbers::pi * static_cast<double>(num) /
                   static_cast<double>(den);
    return {std::cos(angle), std::sin(angle)};
}

Complex e_frac(i64 a, u64 q) { return RationalPhase(a, q).value(); }

std::vector<Complex> phase_table(u64 q) {
    std::vector<Complex> t(q);
    for (u64 j = 0; j < q; ++j) t[j] = e_frac(static_cast<i64>(j), q);
    return t;
}

namespace {

double pow_u64(u64 base, unsigned exp) {
    double r = 1;
    for (unsigned i = 0; i < exp; ++i) r *= static_cast<double>(base);
    return r;
}

std::vector<u64> units_of(u64 q) {
    if (q == 1) return {0};
    std::vector<u64> u;
    for (u64 x = 1; x < q; ++x)
        if (std::gcd(x, q) == 1) u.push_back(x);
    return u;
}

} // namespace

Complex hyper_kloosterman_brute(unsigned d, u64 a, u64 q, double budget) {
    if (d < 1) throw domain_error("hyper_kloosterman_brute: d must be >= 1");
    if (q == 0) throw domain_error("hyper_kloosterman_brute: q must be >= 1");
    a = require_unit(static_cast<i64>(a % q), q);
    if (pow_u64(q, d - 1) > budget)
        throw resource_error("hyper_kloosterman_brute: q^(d-1) exceeds the cost "
                             "guard; use the closed form");
    if (d == 1) return e_frac(static_cast<i64>(a), q);

    auto units = units_of(q);
    auto phases = phase_table(q);
    std::vector<u64> inv(units.size());
    for (size_t i = 0; i < units.size(); ++i) inv[i] = mod_inv(units[i], q);

    // odometer over the d-1 free variables, most significant first
    std::vector<size_t> idx(d - 1, 0);
    CompensatedSum acc;
    for (;;) {
        u64 sum = 0, prod = 1;
        for (size_t i = 0; i < idx.size(); ++i) {
            sum = addmod(sum, units[idx[i]], q);
            prod = mulmod(prod, inv[idx[i]], q);
        }
        u64 last = mulmod(a, prod, q);
        acc.add(phases[addmod(sum, last, q)]);

        size_t pos = idx.size();
        while (pos > 0 && ++idx[pos - 1] == units.size()) idx[--pos] = 0;
        if (pos == 0) break;
    }
    double norm = std::pow(static_cast<double>(q), (d - 1) / 2.0);
    return acc.value() / norm;
}

Complex kl_trace(unsigned d, u64 b, u64 q, double budget) {
    if (!is_unit(b, q)) return {0.0, 0.0};
    return hyper_kloosterman_brute(d, b % q, q, budget);
}

std::vector<Complex> hyper_kloosterman_all(unsigned d, u64 q, double budget) {
    if (d < 1 || q == 0) throw domain_error("hyper_kloosterman_all: bad parameters");
    if (static_cast<double>(d) * static_cast<double>(q) * static_cast<double>(q) > budget)
        throw resource_error("hyper_kloosterman_all: d*q^2 exceeds the cost guard");

    auto phases = phase_table(q);
    std::vector<char> unit(q, 0);
    for (u64 x = 0; x < q; ++x) unit[x] = std::gcd(x, q) == 1;

    std::vector<Complex> cur(q, Complex{0, 0});
    for (u64 x = 0; x < q; ++x)
        if (unit[x]) cur[x] = phases[x];

    std::vector<Complex> next(q);
    for (unsigned level = 1; level < d; ++level) {
        std::fill(next.begin(), next.end(), Complex{0, 0});
        for (u64 u = 0; u < q; ++u) {
            if (!unit[u]) continue;
            Complex tu = cur[u];
            // w tracks u*v mod q as v steps through 1..q-1
            u64 w = 0;
            for (u64 v = 1; v < q; ++v) {
                w += u;
                if (w >= q) w -= q;
                if (unit[v]) next[w] += tu * phases[v];
            }
        }
        std::swap(cur, next);
    }
    if (q == 1) cur[0] = {1.0, 0.0};
    double norm = std::pow(static_cast<double>(q), (d - 1) / 2.0);
    for (auto& z : cur) z /= norm;
    return cur;
}

Complex kloosterman_s(i64 m, i64 n, u64 c) {
    if (c == 0) throw domain_error("kloosterman_s: modulus must be >= 1");
    if (c == 1) return {1.0, 0.0};
    u64 mr = reduce(m, c), nr = reduce(n, c);
    auto phases = phase_table(c);
    CompensatedSum acc;
    for (u64 x = 1; x < c; ++x) {
        if (std::gcd(x, c) != 1) continue;
        u64 xbar = mod_inv(x, c);
        acc.add(phases[addmod(mulmod(mr, x, c), mulmod(nr, xbar, c), c)]);
    }
    return acc.value();
}

i64 ramanujan_sum(i64 u, u64 q, bool verify) {
    if (q == 0) throw domain_error("ramanujan_sum: modulus must be >= 1");
    u64 g = std::gcd(reduce(u, q), q);  // gcd(0, q) = q covers u = 0 mod q
    u64 m = q / g;
    int mu = mobius(m);
    i64 closed = mu == 0 ? 0
                         : static_cast<i64>(mu) * static_cast<i64>(euler_phi(q) / euler_phi(m));
    if (verify) {
        auto phases = phase_table(q);
        CompensatedSum acc;
        for (u64 d = q == 1 ? 0 : 1; d < q; ++d)
            if (std::gcd(d, q) == 1) acc.add(phases[mulmod(d, reduce(u, q), q)]);
        Complex brute = acc.value();
        if (std::abs(brute - Complex(static_cast<double>(closed), 0)) > 1e-9)
            throw domain_error("ramanujan_sum: closed form disagrees with brute force");
    }
    return closed;
}

Complex gauss_sum(const DirichletCharacter& chi) {
    u64 q = chi.modulus().q;
    auto phases = phase_table(q);
    CompensatedSum acc;
    for (u64 x = 0; x < q; ++x) {
        Complex cx = chi(x);
        if (cx != Complex{0, 0}) acc.add(cx * phases[x]);
    }
    return acc.value() / std::sqrt(static_cast<double>(q));
}

} // namespace klsum
