#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "permpoly/error.hpp"
#include "permpoly/modmath.hpp"
#include "permpoly/nullpoly.hpp"
#include "permpoly/permtest.hpp"
#include "permpoly/poly.hpp"

// Counting permutation polynomials and induced bijections: the exhaustive
// oracle, condition-based fast counting (the criterion reads coefficients
// mod p only, so counts mod p^d scale from counts mod p), closed-form
// ratios, upper bounds, and the quotient by null polynomials. All counts
// and ratios are exact; no floating point anywhere.

namespace permpoly {

enum class CensusMethod { Exhaustive, ConditionBased, ClosedForm, UpperBound };

inline const char* to_string(CensusMethod m) {
    switch (m) {
        case CensusMethod::Exhaustive: return "Exhaustive";
        case CensusMethod::ConditionBased: return "ConditionBased";
        case CensusMethod::ClosedForm: return "ClosedForm";
        case CensusMethod::UpperBound: return "UpperBound";
    }
    return "?";
}

struct CensusResult {
    u64 modulus = 0;
    unsigned degree_bound = 0;
    bool include_constant = true;
    BigInt n_pp;
    BigInt n_p;
    BigRat ratio;
    CensusMethod method = CensusMethod::Exhaustive;
};

inline constexpr u64 kDefaultCensusBudget = 100'000'000;

namespace detail {

inline BigInt big_pow(u64 base, u64 exp) {
    BigInt r = 1;
    for (u64 i = 0; i < exp; ++i) r *= base;
    return r;
}

inline BigInt factorial_big(u64 n) {
    BigInt r = 1;
    for (u64 i = 2; i <= n; ++i) r *= i;
    return r;
}

// Bijection test on a raw ascending coefficient array, reusing one epoch-
// stamped table across calls.
inline bool tuple_is_permutation(const std::vector<u64>& coeffs, u64 m, std::vector<u64>& stamp,
                                 u64 epoch) {
    for (u64 x = 0; x < m; ++x) {
        u64 acc = 0;
        for (std::size_t k = coeffs.size(); k-- > 0;)
            acc = (static_cast<u128>(acc) * x + coeffs[k]) % m;
        if (stamp[acc] == epoch) return false;
        stamp[acc] = epoch;
    }
    return true;
}

// Both criterion groups on coefficients already reduced mod p (a[0] unused).
inline bool conditions_hold(const std::vector<u64>& a, u64 p, bool with_group2) {
    const std::size_t n = a.size() - 1;
    std::vector<u64> values(p, 0);
    for (u64 i = 0; i < p; ++i) {
        u64 acc = 0;
        for (std::size_t k = n; k >= 1; --k) acc = mul_mod(add_mod(acc, a[k], p), i, p);
        values[i] = acc;
    }
    for (u64 i = 0; i < p; ++i)
        for (u64 j = i + 1; j < p; ++j)
            if (values[i] == values[j]) return false;
    if (!with_group2) return true;
    for (u64 i = 0; i < p; ++i) {
        u64 acc = 0;
        u64 ipow = 1;
        for (std::size_t k = 1; k <= n; ++k) {
            acc = add_mod(acc, mul_mod(k % p, mul_mod(ipow, a[k], p), p), p);
            ipow = mul_mod(ipow, i, p);
        }
        if (acc == 0) return false;
    }
    return true;
}

}  // namespace detail

// Enumerate every coefficient tuple of degree <= n (the constant included
// when flagged) and count the tuples that induce a bijection.
inline CensusResult count_exhaustive(u64 m, unsigned n, bool include_constant,
                                     u64 max_tuples = kDefaultCensusBudget) {
    if (m < 2) throw InvalidArgumentError("count_exhaustive: modulus must be >= 2");
    if (n < 1) throw InvalidArgumentError("count_exhaustive: need degree bound >= 1");
    const unsigned slots = n + (include_constant ? 1 : 0);
    if (detail::saturating_pow(m, slots) > max_tuples)
        throw BudgetExceededError("count_exhaustive: tuple space exceeds the budget");

    std::vector<u64> coeffs(n + 1, 0);
    const std::size_t first_free = include_constant ? 0 : 1;
    std::vector<u64> stamp(m, 0);
    u64 epoch = 0;
    BigInt count = 0;
    while (true) {
        if (detail::tuple_is_permutation(coeffs, m, stamp, ++epoch)) ++count;
        std::size_t k = first_free;
        while (k < coeffs.size() && ++coeffs[k] == m) coeffs[k++] = 0;
        if (k == coeffs.size()) break;
    }

    CensusResult r;
    r.modulus = m;
    r.degree_bound = n;
    r.include_constant = include_constant;
    r.n_pp = count;
    r.n_p = detail::big_pow(m, slots);
    r.ratio = BigRat(count, r.n_p);
    r.method = CensusMethod::Exhaustive;
    return r;
}

// Exact count for d >= 2 via the two-condition criterion: a tuple mod p
// passing both groups lifts to p^(d-1) choices per coefficient mod p^d,
// and the constant term is always free.
inline CensusResult count_condition_based(u64 p, unsigned d, unsigned n, bool include_constant = true,
                                          u64 max_tuples = kDefaultCensusBudget) {
    if (!is_prime(p)) throw InvalidArgumentError("count_condition_based: p must be prime");
    if (d < 2) throw InvalidArgumentError("count_condition_based: need d >= 2");
    if (n < 1) throw InvalidArgumentError("count_condition_based: need degree bound >= 1");
    if (detail::saturating_pow(p, n) > max_tuples)
        throw BudgetExceededError("count_condition_based: tuple space exceeds the budget");

    std::vector<u64> a(n + 1, 0);
    u64 passing = 0;
    while (true) {
        if (detail::conditions_hold(a, p, true)) ++passing;
        std::size_t k = 1;
        while (k < a.size() && ++a[k] == p) a[k++] = 0;
        if (k == a.size()) break;
    }

    CensusResult r;
    r.modulus = prime_power(p, d);
    r.degree_bound = n;
    r.include_constant = include_constant;
    r.n_pp = BigInt(passing) * detail::big_pow(p, static_cast<u64>(d - 1) * n);
    r.n_p = detail::big_pow(p, static_cast<u64>(d) * n);
    if (include_constant) {
        BigInt c = detail::big_pow(p, d);
        r.n_pp *= c;
        r.n_p *= c;
    }
    r.ratio = BigRat(passing, detail::big_pow(p, n));
    r.method = CensusMethod::ConditionBased;
    return r;
}

// The applicable closed-form ratio N_pp / N_p, or nothing for the open
// middle range. d = 1 goes exclusively through the prime-modulus results;
// the d >= 2 table is the prime-power one.
inline std::optional<BigRat> ratio_closed_form(u64 p, unsigned d, unsigned n) {
    if (!is_prime(p)) throw InvalidArgumentError("ratio_closed_form: p must be prime");
    if (d < 1 || n < 1) throw InvalidArgumentError("ratio_closed_form: need d >= 1 and n >= 1");
    if (d == 1) {
        if (n >= p - 1) return BigRat(detail::factorial_big(p - 1), detail::big_pow(p, p - 1));
        if (n == 1) return BigRat(p - 1, p);
        if (n == 2) return BigRat(p - 1, detail::big_pow(p, 2));  // n = 2 < p-1 implies p odd
        return std::nullopt;
    }
    if (n == 1) return BigRat(p - 1, p);
    if (n == 2) return BigRat(p - 1, detail::big_pow(p, 2));
    if (n >= 2 * p - 1) {
        BigInt num = detail::big_pow(p - 1, p) * detail::factorial_big(p - 1);
        return BigRat(num, detail::big_pow(p, 2 * p - 1));
    }
    return std::nullopt;
}

// Upper bounds for the open middle range. The higher range counts the
// free condition values: a permutation of {1,..,p-1} for the pair
// conditions and p-1 choices for each of the n-(p-1) remaining free
// congruences, so (p-1)! (p-1)^(n-p+1) / p^n. The bound is tight at
// n = 2p-1, where it meets the exact ratio.
inline BigRat ratio_upper_bound(u64 p, unsigned d, unsigned n) {
    if (!is_prime(p)) throw InvalidArgumentError("ratio_upper_bound: p must be prime");
    if (d >= 2) {
        if (n >= 3 && n <= p) {
            BigInt num = BigInt(p - 1) * detail::factorial_big(n - 1) * binomial_exact(p - 1, n - 1);
            return BigRat(num, detail::big_pow(p, n));
        }
        if (n >= p + 1 && n <= 2 * p - 2) {
            BigInt num = detail::factorial_big(p - 1) * detail::big_pow(p - 1, n - p + 1);
            return BigRat(num, detail::big_pow(p, n));
        }
        throw InvalidArgumentError("ratio_upper_bound: n outside the bounded range for d >= 2");
    }
    if (n >= 3 && n + 2 <= p) {
        BigInt num = detail::factorial_big(n - 1) * binomial_exact(p - 1, n - 1);
        return BigRat(num, detail::big_pow(p, n));
    }
    throw InvalidArgumentError("ratio_upper_bound: n outside the bounded range for d = 1");
}

// Number of congruence classes of permutation polynomials of degree exactly
// p mod p: (p-1) * p!.
inline BigInt count_degree_p_classes(u64 p) {
    if (!is_prime(p)) throw InvalidArgumentError("count_degree_p_classes: p must be prime");
    return BigInt(p - 1) * detail::factorial_big(p);
}

// Distinct bijections induced by permutation polynomials of degree <= n
// mod p^d, computed as the quotient N_pp / N_np. Where the full tuple space
// is small the count is recomputed by direct table deduplication and the
// two routes must agree.
inline BigInt count_bijections(u64 p, unsigned d, unsigned n, u64 max_tuples = kDefaultCensusBudget) {
    if (!is_prime(p)) throw InvalidArgumentError("count_bijections: p must be prime");
    const u64 m = prime_power(p, d);

    BigInt n_pp;
    if (detail::saturating_pow(m, n + 1) <= max_tuples) {
        n_pp = count_exhaustive(m, n, true, max_tuples).n_pp;
    } else if (d >= 2) {
        n_pp = count_condition_based(p, d, n, true, max_tuples).n_pp;
    } else {
        throw BudgetExceededError("count_bijections: N_pp is not computable within the budget");
    }

    NullSearchBudget null_budget;
    null_budget.max_tuples = max_tuples;
    null_budget.max_degree = n;
    const BigInt n_np = static_cast<u64>(enumerate_null(m, n, null_budget).size());

    if (n_pp % n_np != 0)
        throw TheoremViolationError("count_bijections: N_np does not divide N_pp");
    BigInt quotient = n_pp / n_np;

    if (detail::saturating_pow(m, n + 1) <= 1'000'000) {
        std::set<std::vector<u64>> tables;
        std::vector<u64> coeffs(n + 1, 0);
        std::vector<u64> stamp(m, 0);
        u64 epoch = 0;
        while (true) {
            if (detail::tuple_is_permutation(coeffs, m, stamp, ++epoch)) {
                std::vector<u64> table(m);
                for (u64 x = 0; x < m; ++x) {
                    u64 acc = 0;
                    for (std::size_t k = coeffs.size(); k-- > 0;)
                        acc = (static_cast<u128>(acc) * x + coeffs[k]) % m;
                    table[x] = acc;
                }
                tables.insert(std::move(table));
            }
            std::size_t k = 0;
            while (k < coeffs.size() && ++coeffs[k] == m) coeffs[k++] = 0;
            if (k == coeffs.size()) break;
        }
        if (BigInt(tables.size()) != quotient)
            throw TheoremViolationError("count_bijections: quotient and deduplication disagree");
    }
    return quotient;
}

}  // namespace permpoly
