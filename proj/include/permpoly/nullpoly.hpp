#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "permpoly/error.hpp"
#include "permpoly/modmath.hpp"
#include "permpoly/poly.hpp"

// Null polynomials mod m: polynomials evaluating to 0 at every integer.
// They form the kernel of the pointwise-equivalence relation.

namespace permpoly {

struct NullSearchBudget {
    u64 max_tuples = 100'000'000;
    unsigned max_degree = 16;
};

// True iff f vanishes on one complete residue system (hence on all of Z).
inline bool is_null(const IntPoly& f, u64 table_budget = kDefaultTableBudget) {
    const u64 m = f.modulus();
    if (m > table_budget) throw BudgetExceededError("is_null: modulus exceeds the table budget");
    for (u64 x = 0; x < m; ++x)
        if (f.eval(static_cast<i64>(x)) != 0) return false;
    return true;
}

// Coefficient-wise sum, canonicalized.
inline IntPoly add(const IntPoly& f, const IntPoly& g) {
    if (f.modulus() != g.modulus()) throw InvalidArgumentError("add: modulus mismatch");
    const u64 m = f.modulus();
    std::vector<u64> out(std::max(f.coeffs().size(), g.coeffs().size()), 0);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = add_mod(f.coeff(k), g.coeff(k), m);
    return IntPoly(m, std::move(out));
}

namespace detail {

// m^e with saturation, for budget feasibility checks.
inline u64 saturating_pow(u64 m, unsigned e) {
    u128 v = 1;
    for (unsigned i = 0; i < e; ++i) {
        v *= m;
        if (v > UINT64_MAX) return UINT64_MAX;
    }
    return static_cast<u64>(v);
}

}  // namespace detail

// All canonical null polynomials of degree <= max_deg mod m, the zero
// polynomial included, sorted by coefficient sequence. The constant term is
// pinned to zero up front (a null polynomial has a_0 == 0), which cuts the
// scan by a factor of m.
inline std::vector<IntPoly> enumerate_null(u64 m, unsigned max_deg,
                                           const NullSearchBudget& budget = {}) {
    if (m < 2) throw InvalidArgumentError("enumerate_null: modulus must be >= 2");
    if (max_deg > kMaxPolyDegree) throw InvalidArgumentError("enumerate_null: degree exceeds the cap");
    if (detail::saturating_pow(m, max_deg + 1) > budget.max_tuples)
        throw BudgetExceededError("enumerate_null: coefficient space exceeds the tuple budget");

    std::vector<IntPoly> out;
    std::vector<u64> coeffs(max_deg + 1, 0);  // coeffs[0] stays 0
    while (true) {
        IntPoly f(m, coeffs);
        if (is_null(f)) out.push_back(std::move(f));
        std::size_t k = 1;
        while (k < coeffs.size() && ++coeffs[k] == m) coeffs[k++] = 0;
        if (k == coeffs.size()) break;
    }
    std::sort(out.begin(), out.end(),
              [](const IntPoly& a, const IntPoly& b) { return a.coeffs() < b.coeffs(); });
    return out;
}

// Number of null polynomials of degree <= pd-1 mod p^d, closed form
// p^(d(d-1)p/2), stated for 2 <= d <= p.
inline BigInt count_null_closed(u64 p, unsigned d) {
    if (!is_prime(p)) throw InvalidArgumentError("count_null_closed: p must be prime");
    if (d < 2 || d > p) throw InvalidArgumentError("count_null_closed: need 2 <= d <= p");
    const u64 exponent = static_cast<u64>(d) * (d - 1) * p / 2;
    BigInt r = 1;
    for (u64 i = 0; i < exponent; ++i) r *= p;
    return r;
}

// Least degree n >= 1 of a nonzero (monic, if flagged) null polynomial
// mod m. Throws BudgetExceeded when no witness exists within the budget.
inline unsigned omega(u64 m, bool monic, const NullSearchBudget& budget = {}) {
    if (m < 2) throw InvalidArgumentError("omega: modulus must be >= 2");
    for (unsigned n = 1; n <= budget.max_degree && n <= kMaxPolyDegree; ++n) {
        const u64 lead_choices = monic ? 1 : m - 1;
        u64 tuples = detail::saturating_pow(m, n - 1);
        if (tuples == UINT64_MAX || lead_choices > budget.max_tuples / std::max<u64>(tuples, 1))
            throw BudgetExceededError("omega: tuple space exceeds the budget before a witness was found");

        std::vector<u64> coeffs(n + 1, 0);
        for (u64 lead = 1; lead <= lead_choices; ++lead) {
            coeffs[n] = monic ? 1 : lead;
            std::fill(coeffs.begin() + 1, coeffs.end() - 1, 0);
            while (true) {
                if (is_null(IntPoly(m, coeffs))) return n;
                std::size_t k = 1;
                while (k < static_cast<std::size_t>(n) && ++coeffs[k] == m) coeffs[k++] = 0;
                if (k == static_cast<std::size_t>(n)) break;
            }
            if (monic) break;
        }
    }
    throw BudgetExceededError("omega: no null polynomial within the degree budget");
}

// f plus every null polynomial of degree <= max_deg; all members induce the
// same function table as f.
inline std::vector<IntPoly> equivalents_of(const IntPoly& f, unsigned max_deg,
                                           const NullSearchBudget& budget = {}) {
    std::vector<IntPoly> out;
    for (const IntPoly& n : enumerate_null(f.modulus(), max_deg, budget)) out.push_back(add(f, n));
    return out;
}

}  // namespace permpoly
