#include "klsum/correlation.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace klsum {

namespace {

u64 pow_exact(u64 base, unsigned exp) {
    u128 r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        r *= base;
        if (r > (u128)1 << 62) throw resource_error("prime-power overflow");
    }
    return static_cast<u64>(r);
}

std::vector<u64> inverse_table(u64 m) {
    std::vector<u64> inv(m, 0);
    for (u64 x = 1; x < m; ++x)
        if (std::gcd(x, m) == 1) inv[x] = mod_inv(x, m);
    if (m == 1) inv.assign(1, 0);
    return inv;
}

// S(a, b; c) with shared phase/inverse tables for the hot loops
Complex kloosterman_s_tab(u64 a, u64 b, u64 c, const std::vector<Complex>& phases,
                          const std::vector<u64>& inv) {
    if (c == 1) return {1.0, 0.0};
    CompensatedSum acc;
    for (u64 x = 1; x < c; ++x) {
        if (std::gcd(x, c) != 1) continue;
        acc.add(phases[addmod(mulmod(a, x, c), mulmod(b, inv[x], c), c)]);
    }
    return acc.value();
}

} // namespace

Complex c_corr(const CorrelationParams& params) {
    const PrimePower& pp = params.modulus;
    if (pp.p == 3 || pp.k < 2)
        throw unsupported_error("c_corr: requires p != 3 and k >= 2");
    u64 q = pp.q;
    require_unit(static_cast<i64>(params.gamma1), pp.p);
    require_unit(static_cast<i64>(params.gamma2), pp.p);
    u64 g1 = params.gamma1 % q;
    u64 g2 = params.gamma2 % q;
    u64 m = reduce(params.m, q);

    auto kl3 = kl3_table(pp.p, pp.k);
    auto inv = inverse_table(q);
    CompensatedSum acc;
    for (u64 x1 = 1; x1 < q; ++x1) {
        if (x1 % pp.p == 0) continue;
        u64 lhs = addmod(mulmod(g1, inv[x1], q), m, q);
        for (u64 x2 = 1; x2 < q; ++x2) {
            if (x2 % pp.p == 0) continue;
            if (lhs != mulmod(g2, inv[x2], q)) continue;
            acc.add(kl3[x1] * std::conj(kl3[x2]));
        }
    }
    return acc.value() / std::pow(static_cast<double>(pp.p), pp.k / 2.0);
}

Complex c_a_fourier(i64 m, u64 l1, u64 l2, u64 a, const PrimePower& q) {
    if (q.p == 3 || q.k < 2)
        throw unsupported_error("c_a_fourier: requires p != 3 and k >= 2");
    u64 qq = q.q;
    a = require_unit(static_cast<i64>(a % qq), qq);
    l1 = require_unit(static_cast<i64>(l1 % qq), qq);
    l2 = require_unit(static_cast<i64>(l2 % qq), qq);

    auto kl4 = kl4_table(q.p, q.k);
    auto phases = phase_table(qq);
    u64 al1 = mulmod(a, l1, qq), al2 = mulmod(a, l2, qq);
    u64 mr = reduce(m, qq);
    CompensatedSum acc;
    for (u64 gamma = 0; gamma < qq; ++gamma) {
        Complex t = kl4[mulmod(al1, gamma, qq)] * std::conj(kl4[mulmod(al2, gamma, qq)]);
        acc.add(t * phases[mulmod(gamma, mr, qq)]);
    }
    return acc.value() / std::sqrt(static_cast<double>(qq));
}

Complex c_a_reduced(i64 m, u64 l1, u64 l2, u64 a, const PrimePower& q) {
    if (q.p == 3 || q.k < 2)
        throw unsupported_error("c_a_reduced: requires p != 3 and k >= 2");
    u64 qq = q.q;
    a = require_unit(static_cast<i64>(a % qq), qq);
    l1 = require_unit(static_cast<i64>(l1 % qq), qq);
    l2 = require_unit(static_cast<i64>(l2 % qq), qq);

    auto kl3 = kl3_table(q.p, q.k);
    auto inv = inverse_table(qq);
    u64 al1 = mulmod(a, l1, qq), al2 = mulmod(a, l2, qq);
    u64 mr = reduce(m, qq);
    CompensatedSum acc;
    for (u64 x = 1; x < qq; ++x) {
        if (x % q.p == 0) continue;
        u64 lhs = addmod(mulmod(al1, x, qq), mr, qq);
        for (u64 y = 1; y < qq; ++y) {
            if (y % q.p == 0) continue;
            if (lhs != mulmod(al2, y, qq)) continue;
            acc.add(kl3[inv[x]] * std::conj(kl3[inv[y]]));
        }
    }
    return acc.value() / std::sqrt(static_cast<double>(qq));
}

void FrakCParams::validate() const {
    PrimePower pp = PrimePower::make(p, k);
    if (p == 3 || k < 2)
        throw unsupported_error("FrakCParams: requires p != 3 and k >= 2");
    if (lambda < 1 || 3ull * lambda > 2ull * k)
        throw unsupported_error("FrakCParams: lambda <= 2k/3 required");
    if (c1 == 0 || c2 == 0 || n1 == 0)
        throw domain_error("FrakCParams: c1, c2, n1 must be positive");
    if (std::gcd(c1, p) != 1 || std::gcd(c2, p) != 1)
        throw domain_error("FrakCParams: (c_i, p) = 1 required");
    if (c1 % n1 != 0 || c2 % n1 != 0)
        throw domain_error("FrakCParams: n1 must divide c1 and c2");
    if (std::gcd(reduce(m1, c1), c1) != 1 || std::gcd(reduce(m2, c2), c2) != 1)
        throw domain_error("FrakCParams: (m_i, c_i) = 1 required");
    require_unit(static_cast<i64>(ell % p), p);
    if (sign != 1 && sign != -1)
        throw domain_error("FrakCParams: sign must be +1 or -1");
    (void)pp;
}

namespace {

Complex curly_c_impl(i64 m, u64 c, i64 n2, const FrakCParams& P,
                     const std::vector<Complex>& kl3) {
    u64 q = pow_exact(P.p, P.k);
    u64 pl = pow_exact(P.p, P.lambda);
    u64 pkl = pow_exact(P.p, P.k - P.lambda);
    u64 mod_u = c * pl;
    u64 smod = (c / P.n1) * pl;
    u64 cl = mulmod(c % q, P.ell % q, q);

    auto sphases = phase_table(smod);
    auto sinv = inverse_table(smod);

    u64 mq = reduce(m, q);
    u64 n2s = reduce(P.sign >= 0 ? n2 : -n2, smod);
    u64 mc = reduce(m, c);
    CompensatedSum acc;
    for (u64 u = 1; u < mod_u; ++u) {
        if (std::gcd(u, mod_u) != 1) continue;
        if (addmod(mc, mulmod(u % c, pkl % c, c), c) != 0) continue;
        u64 t = addmod(mq, mulmod(u % q, pkl % q, q), q);
        if (t % P.p == 0) continue;  // empty Kl_3 under the unit convention
        Complex kl = kl3[mulmod(cl, mod_inv(t, q), q)];
        u64 ubar = mod_inv(u % mod_u, mod_u);
        acc.add(kl * kloosterman_s_tab(ubar % smod, n2s, smod, sphases, sinv));
    }
    return acc.value();
}

} // namespace

Complex curly_c(i64 m, u64 c, i64 n2, const FrakCParams& params) {
    params.validate();
    auto kl3 = kl3_table(params.p, params.k);
    return curly_c_impl(m, c, n2, params, kl3);
}

Complex frak_c(const FrakCParams& P) {
    P.validate();
    u64 pl = pow_exact(P.p, P.lambda);
    u64 D = P.chat1() * P.chat2() * pl;
    u64 M1 = P.chat1() * pl, M2 = P.chat2() * pl;
    double cost = static_cast<double>(M1) * static_cast<double>(P.c1) * pl * M1 +
                  static_cast<double>(M2) * static_cast<double>(P.c2) * pl * M2 +
                  static_cast<double>(D);
    if (cost > kCostGuard)
        throw resource_error("frak_c: parameter sizes exceed the cost guard");

    auto kl3 = kl3_table(P.p, P.k);
    // C(m_i, c_i, n1, beta) only sees beta mod chat_i p^lambda
    std::vector<Complex> A1(M1), A2(M2);
    for (u64 b = 0; b < M1; ++b) A1[b] = curly_c_impl(P.m1, P.c1, static_cast<i64>(b), P, kl3);
    for (u64 b = 0; b < M2; ++b) A2[b] = curly_c_impl(P.m2, P.c2, static_cast<i64>(b), P, kl3);

    auto phases = phase_table(D);
    u64 n2r = reduce(P.n2, D);
    CompensatedSum acc;
    for (u64 beta = 0; beta < D; ++beta) {
        Complex t = A1[beta % M1] * std::conj(A2[beta % M2]);
        acc.add(t * phases[mulmod(n2r, beta, D)]);
    }
    return acc.value();
}

Complex frak_c1(const FrakCParams& P) {
    P.validate();
    u64 ch1 = P.chat1(), ch2 = P.chat2();
    u64 M = ch1 * ch2;
    u64 pl = pow_exact(P.p, P.lambda);
    u64 pkl = pow_exact(P.p, P.k - P.lambda);

    auto first_arg = [&](i64 m, u64 ch) -> u64 {
        if (ch == 1) return 0;
        u64 mbar = mod_inv(reduce(m, ch), ch);
        u64 ipl = mod_inv(pl % ch, ch);
        return reduce(-static_cast<i64>(mulmod(mulmod(mbar, pkl % ch, ch), ipl, ch)), ch);
    };
    u64 a1 = first_arg(P.m1, ch1), a2 = first_arg(P.m2, ch2);
    u64 ipl1 = ch1 == 1 ? 0 : mod_inv(pl % ch1, ch1);
    u64 ipl2 = ch2 == 1 ? 0 : mod_inv(pl % ch2, ch2);
    u64 iplM = M == 1 ? 0 : mod_inv(pl % M, M);

    auto ph1 = phase_table(ch1);
    auto inv1 = inverse_table(ch1);
    auto ph2 = phase_table(ch2);
    auto inv2 = inverse_table(ch2);
    auto phM = phase_table(M);
    u64 n2r = reduce(P.n2, M);

    CompensatedSum acc;
    for (u64 beta = 0; beta < M; ++beta) {
        u64 bs = reduce(P.sign >= 0 ? static_cast<i64>(beta) : -static_cast<i64>(beta), M);
        Complex s1 = kloosterman_s_tab(a1, mulmod(bs % ch1, ipl1, ch1 == 1 ? 1 : ch1), ch1, ph1, inv1);
        Complex s2 = kloosterman_s_tab(a2, mulmod(bs % ch2, ipl2, ch2 == 1 ? 1 : ch2), ch2, ph2, inv2);
        acc.add(s1 * s2 * phM[mulmod(mulmod(n2r, iplM, M == 1 ? 1 : M), beta, M == 1 ? 1 : M)]);
    }
    return acc.value();
}

Complex frak_c2(const FrakCParams& P) {
    P.validate();
    u64 q = pow_exact(P.p, P.k);
    u64 pl = pow_exact(P.p, P.lambda);
    u64 pkl = pow_exact(P.p, P.k - P.lambda);
    u64 ich1 = mod_inv(P.chat1() % pl, pl);
    u64 ich2 = mod_inv(P.chat2() % pl, pl);
    u64 icc = mod_inv(mulmod(P.chat1() % pl, P.chat2() % pl, pl), pl);

    auto kl3 = kl3_table(P.p, P.k);
    auto ph = phase_table(pl);
    auto inv = inverse_table(pl);

    // u-sums against Kl_3, memoized over beta mod p^lambda
    auto u_sum = [&](i64 m, u64 c, u64 ich, bool conj_kl, u64 beta) -> Complex {
        u64 cl = mulmod(c % q, P.ell % q, q);
        u64 mq = reduce(m, q);
        u64 bs = reduce(P.sign >= 0 ? static_cast<i64>(beta) : -static_cast<i64>(beta), pl);
        CompensatedSum acc;
        for (u64 u = 1; u < pl; ++u) {
            if (u % P.p == 0) continue;
            u64 t = addmod(mq, mulmod(u % q, pkl % q, q), q);
            if (t % P.p == 0) continue;
            Complex kl = kl3[mulmod(cl, mod_inv(t, q), q)];
            if (conj_kl) kl = std::conj(kl);
            u64 ubar = inv[u];
            acc.add(kl * kloosterman_s_tab(mulmod(ubar, ich, pl), mulmod(bs, ich, pl), pl, ph, inv));
        }
        return acc.value();
    };

    u64 n2r = reduce(P.n2, pl);
    CompensatedSum acc;
    for (u64 beta = 0; beta < pl; ++beta) {
        Complex t1 = u_sum(P.m1, P.c1, ich1, false, beta);
        Complex t2 = u_sum(P.m2, P.c2, ich2, true, beta);
        acc.add(t1 * t2 * ph[mulmod(mulmod(icc, beta, pl), n2r, pl)]);
    }
    return acc.value();
}

bool frak_c2_zero_congruence(const FrakCParams& P) {
    u64 mod = pow_exact(P.p, P.lambda / 2);
    if (mod == 1) return true;
    auto quartic_side = [&](i64 m, u64 c_other, u64 chat_this) -> u64 {
        u64 m4 = powmod(reduce(m, mod), 4, mod);
        u64 ch6 = powmod(chat_this % mod, 6, mod);
        return mulmod(mulmod(m4, c_other % mod, mod), ch6, mod);
    };
    // m2^4 c1 chat2^6 = m1^4 c2 chat1^6 mod p^floor(lambda/2)
    return quartic_side(P.m2, P.c1, P.chat2()) == quartic_side(P.m1, P.c2, P.chat1());
}

} // namespace klsum
