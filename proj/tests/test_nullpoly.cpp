#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "permpoly/nullpoly.hpp"

using namespace permpoly;

namespace {

IntPoly make(u64 m, std::initializer_list<i64> coeffs) { return IntPoly(m, std::vector<i64>(coeffs)); }

}  // namespace

TEST_CASE("is_null") {
    CHECK(is_null(make(2, {0, 1, 1})));       // x^2 + x
    CHECK(is_null(make(4, {0, 2, 2})));       // 2x^2 + 2x
    CHECK_FALSE(is_null(make(4, {0, 1})));
    CHECK(is_null(IntPoly::zero(7)));
    CHECK_THROWS_AS(is_null(make(100, {0, 1}), 50), BudgetExceededError);
}

TEST_CASE("enumerate_null worked examples") {
    auto n2 = enumerate_null(2, 2);
    REQUIRE(n2.size() == 2);
    CHECK(n2[0] == IntPoly::zero(2));
    CHECK(n2[1] == make(2, {0, 1, 1}));

    auto n4 = enumerate_null(4, 3);
    REQUIRE(n4.size() == 4);
    std::set<std::vector<u64>> got;
    for (const auto& f : n4) got.insert(f.coeffs());
    std::set<std::vector<u64>> want = {{0}, {0, 2, 2}, {0, 2, 0, 2}, {0, 0, 2, 2}};
    CHECK(got == want);

    auto n3 = enumerate_null(3, 2);
    REQUIRE(n3.size() == 1);
    CHECK(n3[0].is_zero());
}

TEST_CASE("enumerate_null is exactly the set passing is_null") {
    for (u64 m : {2, 3, 4, 5, 6, 8, 9}) {
        for (unsigned deg : {2u, 3u, 4u, 5u}) {
            NullSearchBudget budget;
            if (detail::saturating_pow(m, deg + 1) > budget.max_tuples) continue;
            auto found = enumerate_null(m, deg, budget);
            std::set<std::vector<u64>> found_set;
            for (const auto& f : found) {
                CHECK(is_null(f));
                found_set.insert(f.coeffs());
            }
            // exhaustive complement check
            std::vector<u64> coeffs(deg + 1, 0);
            u64 null_count = 0;
            while (true) {
                IntPoly f(m, coeffs);
                if (is_null(f)) {
                    ++null_count;
                    CHECK(found_set.count(f.coeffs()) == 1);
                }
                std::size_t k = 0;
                while (k < coeffs.size() && ++coeffs[k] == m) coeffs[k++] = 0;
                if (k == coeffs.size()) break;
            }
            CHECK(null_count == found.size());
        }
    }
}

TEST_CASE("enumeration order is deterministic and sorted") {
    auto a = enumerate_null(4, 3);
    auto b = enumerate_null(4, 3);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    for (std::size_t i = 0; i + 1 < a.size(); ++i) CHECK(a[i].coeffs() < a[i + 1].coeffs());
}

TEST_CASE("count_null_closed") {
    CHECK(count_null_closed(2, 2) == 4);
    CHECK(count_null_closed(3, 2) == 27);
    CHECK(count_null_closed(3, 3) == 19683);
    CHECK_THROWS_AS(count_null_closed(3, 4), InvalidArgumentError);
    CHECK_THROWS_AS(count_null_closed(4, 2), InvalidArgumentError);

    CHECK(BigInt(enumerate_null(4, 3).size()) == count_null_closed(2, 2));
    CHECK(BigInt(enumerate_null(9, 5).size()) == count_null_closed(3, 2));
}

TEST_CASE("omega") {
    CHECK(omega(2, true) == 2);
    CHECK(omega(3, true) == 3);
    CHECK(omega(5, true) == 5);
    CHECK(omega(4, false) == 2);
    CHECK(omega(4, true) == 4);

    SECTION("budget exhaustion is an error, not a silent answer") {
        NullSearchBudget tiny;
        tiny.max_degree = 2;
        CHECK_THROWS_AS(omega(8, true, tiny), BudgetExceededError);
    }
}

TEST_CASE("prime-modulus null polynomials of degree <= n are the multiples of x^p - x") {
    // counted against the derived oracle p^(n-p+1) for n >= p
    for (u64 p : {2, 3}) {
        for (unsigned n = static_cast<unsigned>(p); n <= static_cast<unsigned>(p) + 2; ++n) {
            BigInt expected = 1;
            for (unsigned i = 0; i < n - p + 1; ++i) expected *= p;
            CHECK(BigInt(enumerate_null(p, n).size()) == expected);
        }
    }
}

TEST_CASE("equivalents_of") {
    auto eq = equivalents_of(make(2, {0, 1}), 2);
    REQUIRE(eq.size() == 2);
    CHECK(eq[0] == make(2, {0, 1}));
    CHECK(eq[1] == make(2, {0, 0, 1}));  // x + (x^2+x) == x^2 mod 2

    CHECK(equivalents_of(make(4, {0, 1}), 3).size() == 4);

    auto only = equivalents_of(make(4, {0, 1}), 0);
    REQUIRE(only.size() == 1);
    CHECK(only[0] == make(4, {0, 1}));

    SECTION("members are pairwise equivalent, pairwise non-congruent, closed under null shifts") {
        IntPoly f = make(4, {1, 3, 2});
        auto members = equivalents_of(f, 3);
        auto nulls = enumerate_null(4, 3);
        std::set<std::vector<u64>> member_set;
        for (const auto& g : members) member_set.insert(g.coeffs());
        CHECK(member_set.size() == members.size());  // pairwise non-congruent
        for (const auto& g : members) {
            CHECK(equivalent(f, g));
            CHECK(induced_table(g) == induced_table(f));
            for (const auto& n : nulls) CHECK(member_set.count(add(g, n).coeffs()) == 1);
        }
    }
}
