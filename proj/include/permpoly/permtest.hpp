#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "permpoly/error.hpp"
#include "permpoly/modmath.hpp"
#include "permpoly/poly.hpp"

// Permutation tests: brute force over the induced table, the closed-form
// criteria (degree 1, degree 2, modulus 2^d), the two-condition criterion
// mod p^d, and composite moduli through factorization. The criteria only
// read coefficients mod p, so they are independent of the magnitude of the
// modulus; checking x(2x+1) mod 2^32 touches no table.

namespace permpoly {

enum class PermMethod {
    BruteForce,
    Degree1,
    Degree2Binomial,
    Power2ClosedForm,
    PrimePowerConditions,
    CompositeCRT,
};

inline const char* to_string(PermMethod m) {
    switch (m) {
        case PermMethod::BruteForce: return "BruteForce";
        case PermMethod::Degree1: return "Degree1";
        case PermMethod::Degree2Binomial: return "Degree2Binomial";
        case PermMethod::Power2ClosedForm: return "Power2ClosedForm";
        case PermMethod::PrimePowerConditions: return "PrimePowerConditions";
        case PermMethod::CompositeCRT: return "CompositeCRT";
    }
    return "?";
}

// f(x1) == f(x2) (mod modulus) with x1 != x2.
struct CollisionWitness {
    u64 x1 = 0;
    u64 x2 = 0;
    u64 modulus = 0;
};

// A violated criterion condition, named by group and the residues involved.
// Group 1 is the pairwise-difference family (indices i < j), group 2 the
// derivative-sum family (index i). For the 2^d closed form, group 2 covers
// the even-index parity sum and group 3 the odd-index one.
struct ConditionWitness {
    int group = 0;
    u64 i = 0;
    u64 j = 0;
    u64 p = 0;
    u64 modulus = 0;
};

using PermWitness = std::variant<CollisionWitness, ConditionWitness>;

struct PermVerdict {
    bool is_permutation = false;
    PermMethod method = PermMethod::BruteForce;
    std::optional<PermWitness> witness;  // present iff is_permutation is false

    explicit operator bool() const { return is_permutation; }
};

inline PermVerdict perm_yes(PermMethod method) { return {true, method, std::nullopt}; }

inline PermVerdict perm_no(PermMethod method, PermWitness w) { return {false, method, std::move(w)}; }

// Bijection test by direct table construction; reports the first collision.
inline PermVerdict is_perm_bruteforce(const IntPoly& f, u64 table_budget = kDefaultTableBudget) {
    const u64 m = f.modulus();
    if (m > table_budget) throw BudgetExceededError("is_perm_bruteforce: modulus exceeds the table budget");
    std::vector<u64> first_preimage(m, m);  // m marks "not seen"
    for (u64 x = 0; x < m; ++x) {
        u64 v = f.eval(static_cast<i64>(x));
        if (first_preimage[v] != m)
            return perm_no(PermMethod::BruteForce, CollisionWitness{first_preimage[v], x, m});
        first_preimage[v] = x;
    }
    return perm_yes(PermMethod::BruteForce);
}

// a1*x + a0 permutes Z_m iff gcd(a1, m) = 1; a0 is irrelevant.
inline bool check_degree1(u64 a1, u64 /*a0*/, u64 m) { return std::gcd(a1 % m, m) == 1; }

// a2*x^2 + a1*x permutes Z_(p^d) iff a1 != 0 and a2 == 0 (mod p).
// Stated for d >= 1 but false at p = 2, d = 1 (x^2 == x mod 2); dispatch
// routes d = 1 around it.
inline bool check_binomial_pd(u64 a1, u64 a2, u64 p, unsigned /*d*/) {
    return a1 % p != 0 && a2 % p == 0;
}

// The three parity conditions for modulus 2^d, d >= 2: a1 odd, the sums of
// even-index and of odd-index coefficients (from a2 up) both even. The
// constant term is ignored; constant shifts preserve the property.
inline PermVerdict check_power2(const IntPoly& f, unsigned d) {
    if (d < 2 || f.modulus() != prime_power(2, d))
        throw InvalidArgumentError("check_power2: modulus of f is not 2^d with d >= 2");
    const u64 m = f.modulus();
    if (f.coeff(1) % 2 == 0)
        return perm_no(PermMethod::Power2ClosedForm, ConditionWitness{1, 0, 0, 2, m});
    u64 even_sum = 0, odd_sum = 0;
    for (std::size_t k = 2; k <= f.degree_mod(); ++k) {
        (k % 2 == 0 ? even_sum : odd_sum) += f.coeff(k) % 2;
    }
    if (even_sum % 2 != 0) return perm_no(PermMethod::Power2ClosedForm, ConditionWitness{2, 0, 0, 2, m});
    if (odd_sum % 2 != 0) return perm_no(PermMethod::Power2ClosedForm, ConditionWitness{3, 0, 0, 2, m});
    return perm_yes(PermMethod::Power2ClosedForm);
}

// The two condition groups mod p^d (constant term ignored):
//   group 1, for 0 <= i < j <= p-1:  sum_k a_k (j^k - i^k) != 0 (mod p)
//   group 2, for 0 <= i <= p-1:      sum_k k i^(k-1) a_k != 0 (mod p)
// Both groups read a_k mod p only. For d = 1 group 1 alone is the exact
// bijectivity test over p residues and group 2 is skipped.
inline PermVerdict check_prime_power(const IntPoly& f, u64 p, unsigned d) {
    if (!is_prime(p)) throw InvalidArgumentError("check_prime_power: p must be prime");
    if (prime_power(p, d) != f.modulus())
        throw InvalidArgumentError("check_prime_power: modulus of f is not p^d");
    const u64 m = f.modulus();
    const std::size_t n = f.degree_mod();

    std::vector<u64> a(n + 1);
    for (std::size_t k = 0; k <= n; ++k) a[k] = f.coeff(k) % p;

    // values[i] = sum_{k>=1} a_k i^k mod p
    std::vector<u64> values(p, 0);
    for (u64 i = 0; i < p; ++i) {
        u64 acc = 0;
        for (std::size_t k = n; k >= 1; --k) acc = mul_mod(add_mod(acc, a[k], p), i, p);
        values[i] = acc;
    }
    for (u64 i = 0; i < p; ++i)
        for (u64 j = i + 1; j < p; ++j)
            if (values[i] == values[j])
                return perm_no(PermMethod::PrimePowerConditions, ConditionWitness{1, i, j, p, m});

    if (d >= 2) {
        for (u64 i = 0; i < p; ++i) {
            u64 acc = 0;
            u64 ipow = 1;  // i^(k-1)
            for (std::size_t k = 1; k <= n; ++k) {
                acc = add_mod(acc, mul_mod(k % p, mul_mod(ipow, a[k], p), p), p);
                ipow = mul_mod(ipow, i, p);
            }
            if (acc == 0)
                return perm_no(PermMethod::PrimePowerConditions, ConditionWitness{2, i, 0, p, m});
        }
    }
    return perm_yes(PermMethod::PrimePowerConditions);
}

namespace detail {

inline IntPoly reduce_poly(const IntPoly& f, u64 new_modulus) {
    std::vector<u64> c(f.coeffs());
    for (u64& v : c) v %= new_modulus;
    return IntPoly(new_modulus, std::move(c));
}

inline IntPoly strip_constant(const IntPoly& f) {
    std::vector<u64> c(f.coeffs());
    c[0] = 0;
    return IntPoly(f.modulus(), std::move(c));
}

// Dispatch for one prime-power factor. The cheapest sufficient criterion
// wins; d = 1 falls back to direct injectivity over p residues because the
// degree-2 closed form is not valid there.
inline PermVerdict check_prime_power_dispatch(const IntPoly& f, u64 p, unsigned d,
                                              u64 table_budget) {
    const u64 m = f.modulus();
    const IntPoly g = strip_constant(f);
    const std::size_t deg = g.degree_mod();

    if (deg <= 1) {
        if (check_degree1(g.coeff(1), 0, m)) return perm_yes(PermMethod::Degree1);
        u64 gcd_val = std::gcd(g.coeff(1) % m, m);
        return perm_no(PermMethod::Degree1, CollisionWitness{0, m / gcd_val, m});
    }
    if (d == 1) {
        if (m > table_budget) throw BudgetExceededError("permutation check mod p exceeds the table budget");
        return is_perm_bruteforce(g, table_budget);
    }
    if (p == 2) return check_power2(g, d);
    if (deg == 2) {
        if (check_binomial_pd(g.coeff(1), g.coeff(2), p, d)) return perm_yes(PermMethod::Degree2Binomial);
        int group = g.coeff(1) % p == 0 ? 2 : 1;
        return perm_no(PermMethod::Degree2Binomial, ConditionWitness{group, 0, 0, p, m});
    }
    return check_prime_power(g, p, d);
}

}  // namespace detail

// Permutation test for any modulus: factorize, reduce mod each prime power,
// dispatch per factor, conjoin. The constant term is stripped first.
inline PermVerdict check_any(const IntPoly& f, u64 table_budget = kDefaultTableBudget) {
    const FactoredModulus fm = factorize(f.modulus());
    if (fm.factors.size() == 1) {
        return detail::check_prime_power_dispatch(f, fm.factors[0].prime, fm.factors[0].exponent,
                                                  table_budget);
    }
    for (const auto& [p, d] : fm.factors) {
        const IntPoly part = detail::reduce_poly(f, prime_power(p, d));
        PermVerdict v = detail::check_prime_power_dispatch(part, p, d, table_budget);
        if (!v.is_permutation) return perm_no(PermMethod::CompositeCRT, *v.witness);
    }
    return perm_yes(PermMethod::CompositeCRT);
}

// Coefficient-wise CRT combination of per-prime-power polynomials. The
// result reduces back to each part; if every part permutes its ring, the
// result permutes Z_m (m the product of the part moduli).
inline IntPoly crt_build_poly(const std::vector<IntPoly>& parts) {
    if (parts.empty()) throw InvalidArgumentError("crt_build_poly: no parts given");
    std::size_t degree = 0;
    for (const IntPoly& f : parts) degree = std::max(degree, f.degree_mod());

    std::vector<u64> out(degree + 1);
    u64 modulus = 1;
    for (std::size_t k = 0; k <= degree; ++k) {
        std::vector<std::pair<u64, u64>> congruences;
        congruences.reserve(parts.size());
        for (const IntPoly& f : parts) congruences.emplace_back(f.coeff(k), f.modulus());
        out[k] = crt_combine(congruences);  // rejects non-coprime moduli
    }
    for (const IntPoly& f : parts) modulus *= f.modulus();
    return IntPoly(modulus, std::move(out));
}

// One-line description of a witness for diagnostics.
inline std::string describe(const PermWitness& w) {
    if (const auto* c = std::get_if<CollisionWitness>(&w)) {
        return "witness " + std::to_string(c->x1) + " " + std::to_string(c->x2) +
               " (mod " + std::to_string(c->modulus) + ")";
    }
    const auto& c = std::get<ConditionWitness>(w);
    std::string s = "condition group " + std::to_string(c.group);
    if (c.group == 1 && c.p != 2) s += " at (" + std::to_string(c.i) + "," + std::to_string(c.j) + ")";
    if (c.group == 2 && c.p != 2) s += " at i=" + std::to_string(c.i);
    s += " fails mod " + std::to_string(c.modulus);
    return s;
}

}  // namespace permpoly
