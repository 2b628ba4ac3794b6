#pragma once

#include "klsum/closed_form.hpp"

namespace klsum {

// Parameters of the correlation sum C(m, gamma1, gamma2; p^k).
struct CorrelationParams {
    i64 m = 0;
    u64 gamma1 = 1;  // unit mod p
    u64 gamma2 = 1;  // unit mod p
    PrimePower modulus;
};

// C(m, g1, g2; q) = q^{-1/2} sum*_{x1, x2 mod q : g1 x1bar - g2 x2bar + m = 0}
//                   Kl_3(x1; q) conj(Kl_3(x2; q)).
// For m = 0 this vanishes unless g1 = g2 mod p^floor(k/2).
Complex c_corr(const CorrelationParams& params);

// C_a(m, l1, l2; q) = q^{-1/2} sum_{gamma mod q} Kl_4(a l1 gamma; q)
//                     conj(Kl_4(a l2 gamma; q)) e(gamma m / q).
Complex c_a_fourier(i64 m, u64 l1, u64 l2, u64 a, const PrimePower& q);

// The same quantity unfolded: q^{-1/2} sum*_{x, y : a l1 x - a l2 y + m = 0}
// Kl_3(xbar; q) conj(Kl_3(ybar; q)). Equals c_a_fourier termwise and equals
// c_corr(m, a l1, a l2; q) under x -> xbar.
Complex c_a_reduced(i64 m, u64 l1, u64 l2, u64 a, const PrimePower& q);

// Parameters of the composite-modulus character sums frakC, frakC1, frakC2.
// chat_i = c_i / n1 are derived; lambda <= 2k/3 is required.
struct FrakCParams {
    i64 n2 = 0;      // dual frequency
    i64 m1 = 1;      // (m1, c1) = 1
    i64 m2 = 1;      // (m2, c2) = 1
    u64 c1 = 1;      // (c1, p) = 1
    u64 c2 = 1;      // (c2, p) = 1
    u64 n1 = 1;      // common divisor of c1 and c2
    u64 p = 5;       // prime != 3
    unsigned lambda = 1;
    unsigned k = 2;
    u64 ell = 1;     // unit mod p
    int sign = +1;   // sign of the dual variable inside the Kloosterman sums

    u64 chat1() const { return c1 / n1; }
    u64 chat2() const { return c2 / n1; }
    void validate() const;
};

// Building block C(m, c, n1, n2): the u-sum over units mod c p^lambda with
// the congruence m = -u p^{k-lambda} mod c, each term a closed-form Kl_3
// against a classical Kloosterman sum mod c p^lambda / n1.
Complex curly_c(i64 m, u64 c, i64 n2, const FrakCParams& params);

// frakC(n2) = sum_{beta mod chat1 chat2 p^lambda} C(m1, c1, n1, beta)
//             conj(C(m2, c2, n1, beta)) e(n2 beta / (chat1 chat2 p^lambda)).
Complex frak_c(const FrakCParams& params);

// Prime-to-p factor: the beta-sum mod chat1 chat2 of two Kloosterman sums.
// Vanishes exactly at n2 = 0 unless c1 = c2.
Complex frak_c1(const FrakCParams& params);

// p-part: the beta-sum mod p^lambda of the two u-sums. At n2 = 0 it
// vanishes unless the quartic congruence below holds.
Complex frak_c2(const FrakCParams& params);

// The mod-p^floor(lambda/2) congruence governing the vanishing of
// frak_c2(0): m2^4 c1 chat2^6 = m1^4 c2 chat1^6.
bool frak_c2_zero_congruence(const FrakCParams& params);

} // namespace klsum
