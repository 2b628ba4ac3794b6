#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "klsum/harness.hpp"
#include "klsum/verify.hpp"

using namespace klsum;

namespace {

std::string cache_dir() {
    auto dir = std::filesystem::temp_directory_path() / "klsum_test_cache";
    std::filesystem::create_directories(dir);
    return dir.string();
}

const CoefficientTable& table_20k() {
    static CoefficientTable t = CoefficientTable::delta(20002, cache_dir());
    return t;
}

} // namespace

TEST_CASE("bump function values") {
    BumpFunction V;
    CHECK(V(1.5) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(V(1.0) == 0.0);
    CHECK(V(2.0) == 0.0);
    CHECK(V(0.3) == 0.0);
    CHECK(V(1.25) > 0.0);
    BumpFunction sharp{BumpFunction::Kind::SharpCut};
    CHECK(sharp(1.5) == 1.0);
    CHECK(sharp(2.0) == 1.0);
    CHECK(sharp(1.0) == 0.0);
    CHECK(sharp(2.5) == 0.0);
}

TEST_CASE("discrepancy with empty support is exactly zero") {
    auto row = discrepancy(0.4, PrimePower::make(5, 2), 2, table_20k(), BumpFunction{});
    CHECK(row.E == 0.0);
}

TEST_CASE("discrepancy telescopes over the unit classes") {
    PrimePower q25 = PrimePower::make(5, 2);
    auto rows = discrepancy_all_units(1e3, q25, table_20k(), BumpFunction{});
    REQUIRE(rows.size() == 20);
    double sum = 0;
    for (const auto& r : rows) sum += r.E;
    CHECK(std::abs(sum) < 1e-10 * 1e3);
    // the batch rows agree with per-residue calls bit for bit
    for (const auto& r : rows) {
        auto single = discrepancy(1e3, q25, r.a, table_20k(), BumpFunction{});
        CHECK(single.E == r.E);
    }
}

TEST_CASE("discrepancy regression anchor") {
    auto row = discrepancy(1e4, PrimePower::make(5, 2), 2, table_20k(), BumpFunction{});
    CHECK(row.E == doctest::Approx(-2.9161556837702065).epsilon(1e-12));
    CHECK(row.reference == doctest::Approx(std::pow(400.0, 0.95)).epsilon(1e-12));
}

TEST_CASE("discrepancy requires a large enough table") {
    auto small = CoefficientTable::delta(50);
    CHECK_THROWS_AS(
        discrepancy(1e3, PrimePower::make(5, 2), 2, small, BumpFunction{}),
        resource_error);
}

TEST_CASE("scan emits byte-stable CSV with the declared schema") {
    PrimePower q25 = PrimePower::make(5, 2);
    std::vector<double> Xs{1e3, 1e4};
    auto s1 = discrepancy_scan(q25, Xs, table_20k(), BumpFunction{});
    auto s2 = discrepancy_scan(q25, Xs, table_20k(), BumpFunction{});
    CHECK(s1.csv == s2.csv);
    CHECK(s1.csv.rfind("X,q,a,E,reference\n", 0) == 0);
    CHECK(s1.rows.size() == 40);  // phi(25) rows per X
    CHECK(s1.summaries.size() == 2);
    // every line ends in LF, no CR anywhere
    CHECK(s1.csv.find('\r') == std::string::npos);
    CHECK(s1.csv.back() == '\n');
}

TEST_CASE("twisted sum vanishing, anchor, and bound") {
    PrimePower q25 = PrimePower::make(5, 2);
    BumpFunction V;
    CHECK(twisted_sum(200, 5, q25, table_20k(), V) == Complex{0, 0});
    CHECK(twisted_sum(200, 10, q25, table_20k(), V) == Complex{0, 0});
    CHECK(twisted_sum(0.4, 1, q25, table_20k(), V) == Complex{0, 0});
    Complex s = twisted_sum(500, 1, q25, table_20k(), V);
    CHECK(std::abs(s - Complex{-4.1280490388354458, 0.0}) < 1e-12);
    CHECK(std::abs(s) <= 10.0 * twisted_reference(500, q25));
}

TEST_CASE("poisson residuals on the stated points") {
    CHECK(poisson_check(1, 0, 1) < 1e-12);
    CHECK(poisson_check(25, 3, 40) < 1e-10);
    CHECK(poisson_check(49, 1, 5) < 1e-10);
}

TEST_CASE("beta-sum factorization spot checks") {
    // c=2, p=5, k=3, lambda=1: m = -25 u mod 2 picks odd m for u = 1
    CHECK(beta_factorization_check(2, 5, 3, 1, 1, 1, 1) < 1e-7);
    // congruence violated: the whole sum collapses to ~0
    CHECK(beta_factorization_check(2, 5, 3, 1, 2, 1, 1) < 1e-7);
    // c = 1 degenerate: reduces to the Kl4/Kl3 reduction identity
    CHECK(beta_factorization_check(1, 5, 3, 1, 1, 1, 1) < 1e-7);
    CHECK_THROWS_AS(beta_factorization_check(3, 5, 9, 1, 1, 1, 1), resource_error);
    CHECK_THROWS_AS(beta_factorization_check(5, 5, 3, 1, 1, 1, 1), domain_error);
}

TEST_CASE("bench runs both methods at desk scale") {
    auto rep = bench_kl3(13, 2, 40, 7);
    CHECK(rep.closed_samples == 40);
    REQUIRE(rep.brute_ns_per_call.has_value());
    CHECK(*rep.speedup > 1.0);
    CHECK_THROWS_AS(bench_kl3(3, 2, 10), unsupported_error);
}

TEST_CASE("cache directory resolution") {
    unsetenv("KLSUM_CACHE_DIR");
    CHECK(default_cache_dir() == "./.cache");
    setenv("KLSUM_CACHE_DIR", "/tmp/elsewhere", 1);
    CHECK(default_cache_dir() == "/tmp/elsewhere");
    unsetenv("KLSUM_CACHE_DIR");
}

TEST_CASE("verification suite: quick profile green, injected fault red") {
    verify::Options o;
    o.profile = verify::Profile::Quick;
    o.cache_dir = cache_dir();
    auto results = verify::run_all(o);
    std::ostringstream out;
    CHECK(verify::report(results, out) == 0);

    o.fault = verify::Fault::FlipJacobiSign;
    auto faulty = verify::run_all(o);
    std::ostringstream out2;
    CHECK(verify::report(faulty, out2) == 1);
    CHECK(out2.str().find("FAIL  kl3-closed-vs-brute") != std::string::npos);
}
