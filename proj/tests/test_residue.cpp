#include <doctest.h>

#include <numeric>

#include "klsum/residue.hpp"

using namespace klsum;
using Complex = std::complex<double>;

namespace {

// test-only oracle: all cube roots of a mod m by full enumeration
std::vector<u64> cube_roots_brute(u64 a, u64 m) {
    std::vector<u64> out;
    for (u64 r = 0; r < m; ++r)
        if (mulmod(mulmod(r, r, m), r, m) == a % m) out.push_back(r);
    return out;
}

u64 order_brute(u64 g, u64 m) {
    u64 x = g % m, ord = 1;
    while (x != 1) {
        x = mulmod(x, g, m);
        ++ord;
    }
    return ord;
}

} // namespace

TEST_CASE("mod_inv on the stated examples") {
    CHECK(mod_inv(1, 25) == 1);
    CHECK(mod_inv(2, 25) == 13);
    CHECK(mod_inv(3, 49) == 33);
}

TEST_CASE("mod_inv rejects non-units naming the gcd") {
    CHECK_THROWS_AS(mod_inv(5, 25), domain_error);
    try {
        mod_inv(10, 25);
    } catch (const domain_error& e) {
        CHECK(std::string(e.what()).find("5") != std::string::npos);
    }
}

TEST_CASE("mod_inv is an involution on units") {
    for (u64 m : {25, 49}) {
        for (u64 a = 1; a < m; ++a) {
            if (std::gcd(a, m) != 1) continue;
            CHECK(mod_inv(mod_inv(a, m), m) == a);
            CHECK(mulmod(a, mod_inv(a, m), m) == 1);
        }
    }
}

TEST_CASE("jacobi symbol examples and errors") {
    CHECK(jacobi(1, 3) == 1);
    CHECK(jacobi(25, 3) == 1);
    CHECK(jacobi(5, 3) == -1);
    CHECK_THROWS_AS(jacobi(3, 4), domain_error);
}

TEST_CASE("jacobi is completely multiplicative in each argument") {
    for (u64 m : {3, 5, 9, 15, 21, 35}) {
        for (i64 a = -10; a <= 10; ++a)
            for (i64 b = -10; b <= 10; ++b)
                CHECK(jacobi(a * b, m) == jacobi(a, m) * jacobi(b, m));
    }
    for (i64 n = -10; n <= 10; ++n)
        for (u64 m1 : {3, 5, 7})
            for (u64 m2 : {3, 9, 11})
                CHECK(jacobi(n, m1 * m2) == jacobi(n, m1) * jacobi(n, m2));
}

TEST_CASE("valuation with the infinite sentinel at zero") {
    CHECK(valuation(50, 5) == 2u);
    CHECK(valuation(7, 5) == 0u);
    CHECK_FALSE(valuation(0, 5).has_value());
    CHECK(valuation(-75, 5) == 2u);
}

TEST_CASE("cube roots on the stated examples") {
    CHECK(cube_roots(1, 5, 2) == std::vector<u64>{1});
    CHECK(cube_roots(1, 7, 2) == cube_roots_brute(1, 49));
    CHECK(cube_roots(1, 7, 2) == std::vector<u64>{1, 18, 30});
    CHECK(cube_roots(3, 7, 2).empty());
    CHECK(cube_roots_brute(3, 49).empty());
}

TEST_CASE("cube roots: cubes check out and counts follow p mod 3") {
    for (u64 p : {5, 7, 11, 13}) {
        for (unsigned k : {1u, 2u, 3u}) {
            u64 q = 1;
            for (unsigned i = 0; i < k; ++i) q *= p;
            for (u64 a = 1; a < q; ++a) {
                if (a % p == 0) continue;
                auto roots = cube_roots(a, p, k);
                for (u64 r : roots) CHECK(mulmod(mulmod(r, r, q), r, q) == a);
                if (p % 3 == 2) {
                    CHECK(roots.size() == 1);
                } else {
                    bool is_cube = powmod(a % p, (p - 1) / 3, p) == 1;
                    CHECK(roots.size() == (is_cube ? 3 : 0));
                }
            }
        }
    }
}

TEST_CASE("cube roots reject p = 3 and non-units") {
    CHECK_THROWS_AS(cube_roots(1, 3, 2), unsupported_error);
    CHECK_THROWS_AS(cube_roots(5, 5, 2), domain_error);
}

TEST_CASE("unit group generator is smallest and has full order") {
    CHECK(unit_group_generator(5, 2) == 2);
    CHECK(unit_group_generator(7, 2) == 3);
    CHECK(unit_group_generator(5, 1) == 2);
    CHECK(order_brute(2, 25) == 20);
    CHECK(order_brute(3, 49) == 42);
    // 2 generates nothing of full order mod 49
    CHECK(order_brute(2, 49) < 42);
    CHECK_THROWS_AS(unit_group_generator(2, 3), unsupported_error);
}

TEST_CASE("Dirichlet characters multiply and vanish off units") {
    for (auto [p, k] : {std::pair<u64, unsigned>{5, 2}, {7, 2}}) {
        PrimePower pp = PrimePower::make(p, k);
        DirichletCharacter chi(pp, 3);
        for (u64 a = 0; a < pp.q; ++a) {
            if (a % p == 0) {
                CHECK(chi(a) == Complex{0, 0});
                continue;
            }
            for (u64 b = 1; b < pp.q; ++b) {
                if (b % p == 0) continue;
                CHECK(std::abs(chi(mulmod(a, b, pp.q)) - chi(a) * chi(b)) < 1e-12);
            }
        }
    }
}

TEST_CASE("character primitivity flags") {
    PrimePower q25 = PrimePower::make(5, 2);
    CHECK(DirichletCharacter(q25, 1).is_primitive());
    CHECK(DirichletCharacter(q25, 7).is_primitive());
    CHECK_FALSE(DirichletCharacter(q25, 5).is_primitive());
    CHECK_FALSE(DirichletCharacter(q25, 0).is_primitive());
    PrimePower q5 = PrimePower::make(5, 1);
    CHECK(DirichletCharacter(q5, 1).is_primitive());
    CHECK_FALSE(DirichletCharacter(q5, 0).is_primitive());
}

TEST_CASE("PrimePower validates and caps") {
    CHECK(PrimePower::make(5, 3).q == 125);
    CHECK_THROWS_AS(PrimePower::make(6, 2), domain_error);
    CHECK_THROWS_AS(PrimePower::make(5, 30), resource_error);
    CHECK(is_prime(2305843009213693951ull));  // 2^61 - 1
    CHECK_FALSE(is_prime(2305843009213693953ull));
}

TEST_CASE("mobius and euler_phi basics") {
    CHECK(mobius(1) == 1);
    CHECK(mobius(4) == 0);
    CHECK(mobius(6) == 1);
    CHECK(mobius(30) == -1);
    CHECK(euler_phi(25) == 20);
    CHECK(euler_phi(1) == 1);
}
