#include <doctest.h>

#include "klsum/closed_form.hpp"

using namespace klsum;

TEST_CASE("kl3 closed form on the stated examples") {
    // root set {1}, Jacobi factor (25/3) = +1
    CHECK(std::abs(kl3_closed(1, 5, 2) - e_frac(3, 25)) < 1e-15);
    // 3 is a non-cube mod 7
    CHECK(kl3_closed(3, 7, 2) == Complex{0, 0});
    // roots {1, 18, 30} mod 49, factor (49/3) = +1
    Complex expect = e_frac(3, 49) + e_frac(54, 49) + e_frac(90, 49);
    CHECK(std::abs(kl3_closed(1, 7, 2) - expect) < 1e-14);
}

TEST_CASE("kl3 closed form against the defining sum") {
    for (auto [p, k] : {std::pair<u64, unsigned>{5, 2}, {7, 2}, {5, 3}}) {
        u64 q = 1;
        for (unsigned i = 0; i < k; ++i) q *= p;
        auto brute = hyper_kloosterman_all(3, q);
        auto table = kl3_table(p, k);
        for (u64 a = 1; a < q; ++a) {
            if (a % p == 0) continue;
            CHECK(std::abs(kl3_closed(a, p, k) - brute[a]) < sum_tolerance(q));
            CHECK(std::abs(kl3_closed(a, p, k) - table[a]) < 1e-14);
        }
    }
}

TEST_CASE("kl3 closed form hypotheses") {
    CHECK_THROWS_AS(kl3_closed(1, 3, 2), unsupported_error);
    CHECK_THROWS_AS(kl3_closed(1, 5, 1), unsupported_error);
    CHECK_THROWS_AS(kl3_closed(10, 5, 2), domain_error);
}

TEST_CASE("kl3 bound and zero set") {
    for (u64 a = 1; a < 125; ++a) {
        if (a % 5 == 0) continue;
        Complex v = kl3_closed(a, 5, 3);
        CHECK(std::abs(v) <= 3.0 + 1e-12);
        CHECK((v == Complex{0, 0}) == (cube_root_count(a, 5, 3) == 0));
    }
}

TEST_CASE("kl4 via kl3 matches brute force") {
    auto brute25 = hyper_kloosterman_all(4, 25);
    CHECK(std::abs(kl4_via_kl3(1, 5, 2) - brute25[1]) < 1e-8);
    auto brute49 = hyper_kloosterman_all(4, 49);
    CHECK(std::abs(kl4_via_kl3(2, 7, 2) - brute49[2]) < 1e-8);
    // non-unit arguments are rejected; the vanishing lives elsewhere
    CHECK_THROWS_AS(kl4_via_kl3(10, 5, 2), domain_error);
}

TEST_CASE("kl4 vanishing residuals at multiples of p") {
    CHECK(std::abs(kl4_vanishing_check(5, 1, 5, 2)) < 1e-9);
    CHECK(std::abs(kl4_vanishing_check(49, 3, 7, 2)) < 1e-9);  // am = 0 degenerate
    CHECK(std::abs(kl4_vanishing_check(10, 3, 5, 3)) < 1e-9);
    CHECK_THROWS_AS(kl4_vanishing_check(3, 1, 5, 2), domain_error);  // p does not divide m
}

TEST_CASE("cube root counts") {
    CHECK(cube_root_count(2, 5, 2) == 1);
    CHECK(cube_root_count(1, 7, 2) == 3);
    CHECK(cube_root_count(3, 7, 2) == 0);
}
