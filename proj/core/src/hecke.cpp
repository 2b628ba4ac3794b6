#include "klsum/hecke.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace klsum {

namespace {

// prod_{n>=1} (1-q^n)^3 = sum_{j>=0} (-1)^j (2j+1) q^{j(j+1)/2}  (Jacobi)
std::vector<std::pair<u64, i64>> eta_cubed_terms(u64 N) {
    std::vector<std::pair<u64, i64>> t;
    for (u64 j = 0;; ++j) {
        u64 g = j * (j + 1) / 2;
        if (g > N) break;
        t.emplace_back(g, (j % 2 == 0 ? 1 : -1) * static_cast<i64>(2 * j + 1));
    }
    return t;
}

i128 checked_addmul(i128 acc, i128 a, i64 b) {
    i128 prod, sum;
    if (__builtin_mul_overflow(a, (i128)b, &prod) ||
        __builtin_add_overflow(acc, prod, &sum))
        throw resource_error("tau expansion: 128-bit overflow; table too large");
    return sum;
}

std::vector<i128> eta24_shifted(u64 N) {
    // coefficients of q prod (1-q^n)^24 for exponents 1..N, i.e. tau(1..N)
    auto sparse = eta_cubed_terms(N);
    std::vector<i128> cur(N, 0);  // cur[i] = coeff of q^i in (eta^3-series)^m
    // (eta^3)^2 from the sparse series against itself
    for (auto [g1, w1] : sparse)
        for (auto [g2, w2] : sparse) {
            u64 g = g1 + g2;
            if (g >= N) break;
            cur[g] += (i128)w1 * w2;
        }
    // six more sparse multiplications reach the 8th power
    std::vector<i128> next(N);
    for (int m = 3; m <= 8; ++m) {
        std::fill(next.begin(), next.end(), (i128)0);
        for (auto [g, w] : sparse)
            for (u64 i = g; i < N; ++i)
                next[i] = checked_addmul(next[i], cur[i - g], w);
        std::swap(cur, next);
    }
    return cur;  // tau(n) = cur[n-1]
}

BigInt bigint_from_i128(i128 v) {
    bool neg = v < 0;
    u128 a = neg ? (u128)(-(v + 1)) + 1 : (u128)v;
    BigInt hi(static_cast<unsigned long>(a >> 64));
    BigInt lo(static_cast<unsigned long>(a & ~0ull));
    BigInt r = (hi << 64) + lo;
    return neg ? -r : r;
}

BigInt pow_big(u64 base, unsigned exp) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

} // namespace

CoefficientTable::CoefficientTable(unsigned weight, std::vector<BigInt> coeffs)
    : weight_(weight), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() < 2 || coeffs_[1] != 1)
        throw domain_error("CoefficientTable: a(1) = 1 required");
}

CoefficientTable CoefficientTable::delta(u64 N, const std::string& cache_dir) {
    if (N < 1) throw domain_error("CoefficientTable::delta: N >= 1 required");
    if (N > kMaxTableSize)
        throw resource_error("CoefficientTable::delta: N exceeds the table cap " +
                             std::to_string(kMaxTableSize));

    std::string cache_path;
    if (!cache_dir.empty()) {
        cache_path = cache_dir + "/tau.cache";
        std::error_code ec;
        if (std::filesystem::exists(cache_path, ec)) {
            try {
                CoefficientTable t = from_file(cache_path);
                if (t.weight() == 12 && t.size() >= N) return t;
            } catch (const std::exception&) {
                // unreadable cache is regenerated below
            }
        }
    }

    auto raw = eta24_shifted(N);
    std::vector<BigInt> coeffs(N + 1);
    for (u64 n = 1; n <= N; ++n) coeffs[n] = bigint_from_i128(raw[n - 1]);
    CoefficientTable t(12, std::move(coeffs));

    if (!cache_path.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(cache_dir, ec);
        t.save(cache_path);
    }
    return t;
}

CoefficientTable CoefficientTable::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open coefficient file " + path);
    std::string header;
    std::getline(in, header);
    unsigned weight = 0;
    unsigned long long n_decl = 0;
    if (std::sscanf(header.c_str(), "# tau N=%llu", &n_decl) == 1) {
        weight = 12;
    } else if (std::sscanf(header.c_str(), "# coeffs weight=%u N=%llu", &weight, &n_decl) == 2) {
        if (weight < 2 || weight % 2 != 0)
            throw domain_error("coefficient file: even weight >= 2 required");
    } else {
        throw domain_error("coefficient file: unrecognized header \"" + header + "\"");
    }

    std::vector<BigInt> coeffs(n_decl + 1);
    std::string line;
    u64 expect = 1;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        u64 n;
        std::string value;
        if (!(ls >> n >> value))
            throw domain_error("coefficient file: bad line \"" + line + "\"");
        if (n != expect)
            throw domain_error("coefficient file: expected n = " + std::to_string(expect) +
                               ", found " + std::to_string(n));
        coeffs[n] = BigInt(value);
        ++expect;
    }
    if (expect != n_decl + 1)
        throw domain_error("coefficient file: declared N=" + std::to_string(n_decl) +
                           " but found " + std::to_string(expect - 1) + " entries");
    return CoefficientTable(weight, std::move(coeffs));
}

void CoefficientTable::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw domain_error("cannot write coefficient file " + path);
    if (weight_ == 12)
        out << "# tau N=" << size() << "\n";
    else
        out << "# coeffs weight=" << weight_ << " N=" << size() << "\n";
    for (u64 n = 1; n <= size(); ++n)
        out << n << "\t" << coeffs_[n].get_str() << "\n";
}

const BigInt& CoefficientTable::a(u64 n) const {
    if (n < 1 || n > size())
        throw resource_error("coefficient table covers N=" + std::to_string(size()) +
                             ", requires N=" + std::to_string(n));
    return coeffs_[n];
}

BigInt CoefficientTable::prime_power_coeff(u64 p, unsigned e) const {
    if (p > size())
        throw resource_error("coefficient table covers N=" + std::to_string(size()) +
                             ", requires N=" + std::to_string(p));
    BigInt ap = coeffs_[p];
    if (e == 0) return 1;
    if (e == 1) return ap;
    BigInt pw = pow_big(p, weight_ - 1);
    BigInt prev = 1, cur = ap;
    for (unsigned j = 1; j < e; ++j) {
        BigInt nxt = ap * cur - pw * prev;
        prev = std::move(cur);
        cur = std::move(nxt);
    }
    return cur;
}

BigInt CoefficientTable::a_at(u64 n) const {
    if (n == 0) throw domain_error("a_at: n >= 1 required");
    if (n <= size()) return coeffs_[n];
    BigInt r = 1;
    for (auto [p, e] : factorize(n)) r *= prime_power_coeff(p, e);
    return r;
}

Rational CoefficientTable::lambda_sq(u64 n) const {
    BigInt num = a_at(n);
    num *= num;
    Rational r(num, pow_big(n, weight_ - 1));
    r.canonicalize();
    return r;
}

Rational CoefficientTable::lambda_at_square(u64 m) const {
    u128 sq = (u128)m * m;
    if (sq > ~0ull) throw resource_error("lambda_at_square: m^2 overflows");
    Rational r(a_at(static_cast<u64>(sq)), pow_big(m, weight_ - 1));
    r.canonicalize();
    return r;
}

Rational CoefficientTable::sym2(u64 n) const {
    Rational s = 0;
    for (u64 d = 1; d * d <= n; ++d)
        if (n % (d * d) == 0) s += lambda_at_square(n / (d * d));
    return s;
}

std::vector<Rational> CoefficientTable::sym2_prefix(u64 N) const {
    std::vector<Rational> out(N + 1, Rational(0));
    for (u64 m = 1; m <= N; ++m) {
        Rational lam = lambda_at_square(m);
        for (u64 d = 1; d * d * m <= N; ++d) out[d * d * m] += lam;
    }
    return out;
}

Rational CoefficientTable::one_boxplus(u64 n) const {
    Rational s = 0;
    for (u64 d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        s += sym2(d);
        if (d != n / d) s += sym2(n / d);
    }
    return s;
}

std::vector<Rational> CoefficientTable::one_boxplus_prefix(u64 N) const {
    auto s2 = sym2_prefix(N);
    std::vector<Rational> out(N + 1, Rational(0));
    for (u64 m = 1; m <= N; ++m)
        for (u64 n = m; n <= N; n += m) out[n] += s2[m];
    return out;
}

CoefficientTable::IdentityCheck CoefficientTable::convolution_identity_check(u64 n) const {
    Rational lhs = lambda_sq(n);
    Rational rhs = 0;
    for (u64 d = 1; d * d <= n; ++d) {
        if (n % (d * d) != 0) continue;
        int mu = mobius(d);
        if (mu == 0) continue;
        Rational term = one_boxplus(n / (d * d));
        rhs += mu > 0 ? term : -term;
    }
    return {lhs == rhs, lhs, rhs};
}

Rational CoefficientTable::schur_pp(u64 p, unsigned e1, unsigned e2) const {
    // power sums of {alpha^2, 1, alpha^-2}: p_j = u_j + 1 with the
    // Chebyshev-style recurrence u_{j+1} = u_1 u_j - u_{j-1}
    unsigned top = e1 + e2 + 1;
    Rational c = lambda_sq(p);
    std::vector<Rational> u(top + 1), ps(top + 1), h(top + 1);
    u[0] = 2;
    if (top >= 1) u[1] = c - 2;
    for (unsigned j = 2; j <= top; ++j) u[j] = u[1] * u[j - 1] - u[j - 2];
    for (unsigned j = 1; j <= top; ++j) ps[j] = u[j] + 1;

    h[0] = 1;
    for (unsigned j = 1; j <= top; ++j) {
        Rational s = 0;
        for (unsigned i = 1; i <= j; ++i) s += ps[i] * h[j - i];
        h[j] = s / static_cast<long>(j);
    }

    auto H = [&](int i) -> Rational { return i < 0 ? Rational(0) : h[i]; };
    // Jacobi-Trudi for the partition (e1+e2, e2, 0)
    return H(static_cast<int>(e1 + e2)) * H(static_cast<int>(e2)) -
           H(static_cast<int>(e1 + e2 + 1)) * H(static_cast<int>(e2) - 1);
}

Rational CoefficientTable::gl3_coeff(u64 n1, u64 n2) const {
    if (n1 == 0 || n2 == 0) throw domain_error("gl3_coeff: indices >= 1 required");
    Rational r = 1;
    u128 prod = (u128)n1 * n2;
    for (auto [p, e] : factorize(static_cast<u64>(prod))) {
        unsigned e1 = valuation(static_cast<i64>(n1), p).value();
        unsigned e2 = valuation(static_cast<i64>(n2), p).value();
        r *= schur_pp(p, e1, e2);
    }
    return r;
}

double rankin_selberg_ratio(const CoefficientTable& table, u64 N) {
    if (N < 1) throw domain_error("rankin_selberg_ratio: N >= 1 required");
    double sum = 0, comp = 0;
    for (u64 n1 = 1; n1 * n1 <= N; ++n1) {
        for (u64 n2 = 1; n1 * n1 * n2 <= N; ++n2) {
            double v = table.gl3_coeff(n1, n2).get_d();
            double x = v * v;
            double t = sum + x;
            comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
            sum = t;
        }
    }
    return (sum + comp) / static_cast<double>(N);
}

} // namespace klsum
