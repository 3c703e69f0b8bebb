#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "permpoly/permtest.hpp"

using namespace permpoly;

namespace {

IntPoly make(u64 m, std::initializer_list<i64> coeffs) { return IntPoly(m, std::vector<i64>(coeffs)); }

// every coefficient tuple (a_1..a_deg) over [0, m)
template <typename Fn>
void for_each_tuple(u64 m, unsigned deg, Fn&& fn) {
    std::vector<u64> coeffs(deg + 1, 0);
    while (true) {
        fn(coeffs);
        std::size_t k = 1;
        while (k < coeffs.size() && ++coeffs[k] == m) coeffs[k++] = 0;
        if (k == coeffs.size()) break;
    }
}

}  // namespace

TEST_CASE("is_perm_bruteforce") {
    CHECK(is_perm_bruteforce(make(12, {0, 1})).is_permutation);
    CHECK(is_perm_bruteforce(make(8, {0, 1, 2})).is_permutation);

    auto v = is_perm_bruteforce(make(4, {0, 2}));
    REQUIRE_FALSE(v.is_permutation);
    REQUIRE(v.witness.has_value());
    auto w = std::get<CollisionWitness>(*v.witness);
    CHECK(w.x1 == 0);
    CHECK(w.x2 == 2);

    CHECK_THROWS_AS(is_perm_bruteforce(make(100, {0, 1}), 64), BudgetExceededError);
}

TEST_CASE("check_degree1") {
    for (u64 m : {2, 5, 12, 36}) CHECK(check_degree1(1, 0, m));
    CHECK_FALSE(check_degree1(3, 7, 12));
    CHECK(check_degree1(5, 2, 12));
    CHECK(is_perm_bruteforce(make(12, {2, 5})).is_permutation);
    CHECK_FALSE(is_perm_bruteforce(make(12, {7, 3})).is_permutation);
}

TEST_CASE("check_binomial_pd") {
    for (u64 p : {3, 5}) {
        for (unsigned d : {1u, 2u}) {
            CHECK(check_binomial_pd(1, p, p, d));
            CHECK_FALSE(check_binomial_pd(p, 0, p, d));
        }
    }
    CHECK_FALSE(check_binomial_pd(1, 1, 3, 2));
    CHECK_FALSE(is_perm_bruteforce(make(9, {0, 1, 1})).is_permutation);
}

TEST_CASE("check_power2") {
    CHECK(check_power2(make(8, {0, 1, 2}), 3).is_permutation);
    CHECK(check_power2(make(1u << 16, {0, 1, 2}), 16).is_permutation);

    auto odd_fail = check_power2(make(8, {0, 1, 0, 1}), 3);
    REQUIRE_FALSE(odd_fail.is_permutation);
    CHECK(std::get<ConditionWitness>(*odd_fail.witness).group == 3);
    CHECK_FALSE(is_perm_bruteforce(make(8, {0, 1, 0, 1})).is_permutation);

    CHECK_FALSE(check_power2(make(8, {0, 1, 1, 1}), 3).is_permutation);
    CHECK_FALSE(is_perm_bruteforce(make(8, {0, 1, 1, 1})).is_permutation);

    CHECK_THROWS_AS(check_power2(make(9, {0, 1}), 2), InvalidArgumentError);
}

TEST_CASE("check_prime_power") {
    CHECK(check_prime_power(make(9, {0, 1}), 3, 2).is_permutation);
    CHECK(check_prime_power(make(25, {0, 1}), 5, 2).is_permutation);
    CHECK(check_prime_power(make(9, {0, 1, 3}), 3, 2).is_permutation);
    CHECK(is_perm_bruteforce(make(9, {0, 1, 3})).is_permutation);

    // x^3 + x mod 27 passes both groups; brute force agrees
    auto v = check_prime_power(make(27, {0, 1, 0, 1}), 3, 3);
    CHECK(v.is_permutation == is_perm_bruteforce(make(27, {0, 1, 0, 1})).is_permutation);
    CHECK(v.is_permutation);

    // x^3 mod 27 fails group 2 at i = 0 (the derivative sum is a_1 = 0)
    auto bad = check_prime_power(make(27, {0, 0, 0, 1}), 3, 3);
    REQUIRE_FALSE(bad.is_permutation);
    auto w = std::get<ConditionWitness>(*bad.witness);
    CHECK(w.group == 2);
    CHECK(w.i == 0);
    CHECK_FALSE(is_perm_bruteforce(make(27, {0, 0, 0, 1})).is_permutation);
}

TEST_CASE("check_any dispatch and examples") {
    CHECK(check_any(make(36, {0, 29})).is_permutation);
    CHECK_FALSE(check_any(make(6, {0, 0, 1})).is_permutation);

    SECTION("RC6 polynomial mod 2^32 without any table") {
        IntPoly f(u64{1} << 32, std::vector<u64>{0, 1, 2});
        auto v = check_any(f, /*table_budget=*/16);  // any table construction would throw
        CHECK(v.is_permutation);
        CHECK(v.method == PermMethod::Power2ClosedForm);
    }
    SECTION("methods") {
        CHECK(check_any(make(9, {0, 1})).method == PermMethod::Degree1);
        CHECK(check_any(make(9, {0, 1, 3})).method == PermMethod::Degree2Binomial);
        CHECK(check_any(make(27, {0, 1, 3, 3})).method == PermMethod::PrimePowerConditions);
        CHECK(check_any(make(36, {0, 1})).method == PermMethod::CompositeCRT);
        CHECK(check_any(make(7, {0, 1, 1, 1})).method == PermMethod::BruteForce);
    }
}

TEST_CASE("criterion agrees with brute force everywhere") {
    for (u64 m : {4, 8, 16, 9, 27, 25, 6, 12, 36}) {
        for_each_tuple(m, 3, [&](const std::vector<u64>& coeffs) {
            IntPoly f(m, coeffs);
            bool brute = is_perm_bruteforce(f).is_permutation;
            bool fast = check_any(f).is_permutation;
            if (brute != fast) {
                CAPTURE(m, coeffs);
                REQUIRE(brute == fast);
            }
        });
    }
}

TEST_CASE("downward closure") {
    // a permutation mod p^d stays one mod every p^d' below
    for (auto [p, d] : std::vector<std::pair<u64, unsigned>>{{2, 4}, {3, 3}, {5, 2}}) {
        const u64 m = prime_power(p, d);
        std::mt19937_64 rng(p * 100 + d);
        int found = 0;
        while (found < 25) {
            std::vector<u64> coeffs(5, 0);
            for (std::size_t k = 1; k < coeffs.size(); ++k) coeffs[k] = rng() % m;
            IntPoly f(m, coeffs);
            if (!check_any(f).is_permutation) continue;
            ++found;
            for (unsigned dd = 1; dd < d; ++dd) {
                const u64 md = prime_power(p, dd);
                std::vector<u64> reduced(coeffs);
                for (u64& c : reduced) c %= md;
                CHECK(check_any(IntPoly(md, reduced)).is_permutation);
            }
        }
    }
}

TEST_CASE("affine closure") {
    std::mt19937_64 rng(99);
    for (u64 m : {8, 9, 12, 25}) {
        for (int t = 0; t < 40; ++t) {
            std::vector<u64> coeffs(4);
            for (auto& c : coeffs) c = rng() % m;
            IntPoly f(m, coeffs);
            u64 a = rng() % m, b = rng() % m;
            if (std::gcd(a, m) != 1) continue;
            std::vector<u64> scaled(coeffs);
            for (u64& c : scaled) c = mul_mod(c, a, m);
            scaled[0] = add_mod(scaled[0], b, m);
            CHECK(check_any(IntPoly(m, scaled)).is_permutation == check_any(f).is_permutation);
        }
    }
}

TEST_CASE("crt_build_poly") {
    CHECK(crt_build_poly({make(4, {0, 1}), make(9, {0, 2})}) == make(36, {0, 29}));
    CHECK(crt_build_poly({make(4, {0, 1}), make(9, {0, 1})}) == make(36, {0, 1}));
    CHECK(crt_build_poly({make(8, {0, 1, 2}), make(3, {0, 1})}) == make(24, {0, 1, 18}));
    CHECK_THROWS_AS(crt_build_poly({make(4, {0, 1}), make(6, {0, 1})}), InvalidArgumentError);

    SECTION("result reduces back to each part and permutes when the parts do") {
        IntPoly combined = crt_build_poly({make(8, {0, 1, 2}), make(3, {0, 1})});
        CHECK(check_any(combined).is_permutation);
        CHECK(is_perm_bruteforce(combined).is_permutation);
        for (const IntPoly& part : {make(8, {0, 1, 2}), make(3, {0, 1})}) {
            std::vector<u64> reduced;
            for (std::size_t k = 0; k <= combined.degree_mod(); ++k)
                reduced.push_back(combined.coeff(k) % part.modulus());
            CHECK(congruent(IntPoly(part.modulus(), reduced), part));
        }
    }
}
