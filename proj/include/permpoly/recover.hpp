#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "permpoly/error.hpp"
#include "permpoly/modmath.hpp"
#include "permpoly/nullpoly.hpp"
#include "permpoly/permtest.hpp"
#include "permpoly/poly.hpp"

// Coefficient recovery from induced function values. Degree <= p-1 is a
// plain Vandermonde solve; degree <= pd-1 with 2 <= d <= p splits inputs
// as x = p*y + b, interpolates each stratum, and solves one pd x pd block
// system whose determinant is a unit; d > p peels strata recursively,
// descending until the remaining sub-polynomials have effective degree
// below p, then back-substitutes through the block systems. The recovered
// seed is one representative; the full class is seed plus null polynomials.

namespace permpoly {

// Observed input/output pairs of a polynomial function mod p^d.
struct SampleSet {
    u64 p = 0;
    unsigned d = 0;
    std::vector<std::pair<u64, u64>> samples;  // x pairwise distinct mod p^d
};

struct RecoveryResult {
    IntPoly seed;
    std::optional<BigInt> equivalence_class_size;
    u64 operation_count = 0;
};

// The structured inputs the recursive solver reads: every x whose base-p
// digits beyond level ceil((d-1)/p) are zero, i.e. x < p^(ceil((d-1)/p)+1).
inline std::vector<u64> required_samples(u64 p, unsigned d) {
    if (!is_prime(p)) throw InvalidArgumentError("required_samples: p must be prime");
    if (d < 1) throw InvalidArgumentError("required_samples: need d >= 1");
    const unsigned levels = (d - 1 + p - 1) / p;  // ceil((d-1)/p)
    const u64 count = prime_power(p, levels + 1);
    const u64 m = prime_power(p, d);
    std::vector<u64> xs;
    xs.reserve(std::min(count, m));
    for (u64 x = 0; x < count && x < m; ++x) xs.push_back(x);
    return xs;
}

namespace recover_detail {

// A function table that may be known only at some inputs.
struct PartialTable {
    u64 modulus = 0;
    std::vector<u64> values;
    std::vector<bool> present;
    bool full = false;

    static PartialTable from_table(const FuncTable& t) {
        validate_table(t);
        PartialTable out;
        out.modulus = t.modulus;
        out.values = t.values;
        out.present.assign(t.modulus, true);
        out.full = true;
        return out;
    }

    static PartialTable from_samples(u64 modulus, const std::vector<std::pair<u64, u64>>& samples) {
        PartialTable out;
        out.modulus = modulus;
        out.values.assign(modulus, 0);
        out.present.assign(modulus, false);
        for (const auto& [x, y] : samples) {
            const u64 xr = x % modulus;
            if (out.present[xr]) throw InvalidArgumentError("sample inputs collide mod p^d");
            if (y >= modulus) throw InvalidArgumentError("sample value out of range");
            out.values[xr] = y;
            out.present[xr] = true;
        }
        out.full = samples.size() == modulus;
        return out;
    }

    bool has(u64 x) const { return present[x]; }

    u64 at(u64 x) const {
        if (!present[x])
            throw InvalidArgumentError("required sample x=" + std::to_string(x) + " is missing");
        return values[x];
    }
};

// Fit t_0..t_deg with sum_k t_k y^k == value (mod p^e) over every given
// row. All rows take part in the elimination, so a successful solve is
// also a consistency proof over those rows.
inline std::optional<std::vector<u64>> fit_poly_rows(const std::vector<std::pair<u64, u64>>& rows,
                                                     unsigned deg, u64 p, unsigned e, u64& ops) {
    const u64 m = prime_power(p, e);
    std::vector<std::vector<u64>> a;
    std::vector<u64> b;
    a.reserve(rows.size());
    b.reserve(rows.size());
    for (const auto& [y, value] : rows) {
        std::vector<u64> row(deg + 1);
        u64 pw = 1 % m;
        for (unsigned k = 0; k <= deg; ++k) {
            row[k] = pw;
            pw = mul_mod(pw, y % m, m);
        }
        a.push_back(std::move(row));
        b.push_back(value % m);
    }
    return mat_solve_prime_power(std::move(a), std::move(b), p, e, &ops);
}

// Largest k >= 1 whose term p^(i(k-1)) y^k survives mod p^e.
inline unsigned structured_degree(unsigned e, unsigned i) { return 1 + (e - 1) / i; }

// Back-substitution at one node of the peel: recover the node residues
// A_1..A_kn of T(y) == sum_k p^(i(k-1)) A_k y^k (mod p^e) from the stratum
// constants C_b and the stratum residues B_j^(b) one level down. The
// stratum residues are one valid representative each; their free digits
// need not cohere across strata, in which case the stitched system is
// inconsistent and the caller re-solves the node from its own values.
inline std::optional<std::vector<u64>> node_back_substitute(
    const std::vector<u64>& constants, const std::vector<std::vector<u64>>& stratum_residues, u64 p,
    unsigned e, unsigned i, u64& ops) {
    const u64 m = prime_power(p, e);
    const unsigned kn = structured_degree(e, i);
    const std::size_t kc = stratum_residues[0].size();

    std::vector<std::vector<u64>> pascal(kn + 1);
    for (unsigned k = 0; k <= kn; ++k) {
        pascal[k].assign(k + 1, 1 % m);
        for (unsigned l = 1; l < k; ++l) pascal[k][l] = add_mod(pascal[k - 1][l - 1], pascal[k - 1][l], m);
    }
    auto p_pow = [&](u64 exp) -> u64 { return exp >= e ? 0 : prime_power(p, exp) % m; };

    std::vector<std::vector<u64>> rows;
    std::vector<u64> rhs;
    for (u64 b = 1; b < p; ++b) {
        std::vector<u64> row(kn, 0);
        u64 bpow = b % m;
        for (unsigned k = 1; k <= kn; ++k) {
            row[k - 1] = mul_mod(p_pow(static_cast<u64>(i) * (k - 1)), bpow, m);
            bpow = mul_mod(bpow, b % m, m);
        }
        rows.push_back(std::move(row));
        rhs.push_back(constants[b] % m);
    }
    for (u64 b = 0; b < p; ++b) {
        for (std::size_t j = 1; j <= kc; ++j) {
            std::vector<u64> row(kn, 0);
            for (unsigned k = j; k <= kn; ++k) {
                u64 bpow = b == 0 ? (k == j ? 1 % m : 0) : pow_mod(b, k - j, m);
                u64 scale = p_pow(static_cast<u64>(i) * (k - 1) + j);
                row[k - 1] = mul_mod(mul_mod(pascal[k][j], bpow, m), scale, m);
            }
            rows.push_back(std::move(row));
            rhs.push_back(mul_mod(p_pow(static_cast<u64>(i + 1) * (j - 1) + 1),
                                  stratum_residues[b][j - 1] % m, m));
        }
    }

    auto solved = mat_solve_prime_power(std::move(rows), std::move(rhs), p, e, &ops);
    if (!solved) return std::nullopt;
    std::vector<u64> out(kn);
    for (unsigned k = 1; k <= kn; ++k) {
        const u64 valid_mod = prime_power(p, e - static_cast<u64>(i) * (k - 1));
        out[k - 1] = (*solved)[k - 1] % valid_mod;
    }
    return out;
}

// Direct weighted fit of a node against every one of its known values:
// rows sum_k p^(i(k-1)) y^k A_k == T(y). Always consistent when T really is
// a structured polynomial table, and any solution realizes T pointwise.
inline std::vector<u64> fit_structured_direct(const PartialTable& t, u64 p, unsigned e, unsigned i,
                                              u64& ops) {
    const u64 m = prime_power(p, e);
    const unsigned kn = structured_degree(e, i);
    auto p_pow = [&](u64 exp) -> u64 { return exp >= e ? 0 : prime_power(p, exp) % m; };

    std::vector<std::vector<u64>> rows;
    std::vector<u64> rhs;
    for (u64 y = 0; y < m; ++y) {
        if (!t.has(y)) continue;
        std::vector<u64> row(kn);
        u64 ypow = y % m;
        for (unsigned k = 1; k <= kn; ++k) {
            row[k - 1] = mul_mod(p_pow(static_cast<u64>(i) * (k - 1)), ypow, m);
            ypow = mul_mod(ypow, y % m, m);
        }
        rows.push_back(std::move(row));
        rhs.push_back(t.values[y]);
    }
    auto solved = mat_solve_prime_power(std::move(rows), std::move(rhs), p, e, &ops);
    if (!solved) throw NotPolynomialFunctionError("table rows are inconsistent with a structured polynomial");
    std::vector<u64> out(kn);
    for (unsigned k = 1; k <= kn; ++k) {
        const u64 valid_mod = prime_power(p, e - static_cast<u64>(i) * (k - 1));
        out[k - 1] = (*solved)[k - 1] % valid_mod;
    }
    return out;
}

// Residues A_1..A_kn of a zero-constant structured table at depth i >= 1:
// T(y) == sum_k p^(i(k-1)) A_k y^k (mod p^e), each A_k reduced to
// [0, p^(e - i(k-1))).
inline std::vector<u64> solve_structured(const PartialTable& t, u64 p, unsigned e, unsigned i,
                                         u64& ops) {
    const u64 m = prime_power(p, e);
    const unsigned kn = structured_degree(e, i);

    if (kn <= p - 1) {
        // the table itself has interpolatable degree
        std::vector<std::pair<u64, u64>> rows;
        for (u64 y = 0; y < m; ++y)
            if (t.has(y)) rows.emplace_back(y, t.values[y]);
        auto fit = fit_poly_rows(rows, kn, p, e, ops);
        if (!fit) throw NotPolynomialFunctionError("table rows are inconsistent with a polynomial");
        if ((*fit)[0] % m != 0)
            throw NotPolynomialFunctionError("structured table has a nonzero constant term");
        std::vector<u64> out(kn);
        for (unsigned k = 1; k <= kn; ++k) {
            const u64 scale = prime_power(p, static_cast<u64>(i) * (k - 1));
            if ((*fit)[k] % scale != 0)
                throw NotPolynomialFunctionError("coefficient lacks its required power of p");
            out[k - 1] = ((*fit)[k] / scale) % (m / scale);
        }
        return out;
    }

    const unsigned j_max = e >= 2 ? 1 + (e - 2) / (i + 1) : 1;
    std::vector<u64> constants(p, 0);
    std::vector<std::vector<u64>> stratum_residues(p);

    if (j_max <= p - 1) {
        // strata reached interpolatable degree: fit each directly
        for (u64 b = 0; b < p; ++b) {
            std::vector<std::pair<u64, u64>> rows;
            for (u64 y = 0; p * y + b < m; ++y)
                if (t.has(p * y + b)) rows.emplace_back(y, t.values[p * y + b]);
            auto fit = fit_poly_rows(rows, j_max, p, e, ops);
            if (!fit) throw NotPolynomialFunctionError("stratum rows are inconsistent with a polynomial");
            constants[b] = (*fit)[0];
            if (b == 0 && constants[0] % m != 0)
                throw NotPolynomialFunctionError("structured table has a nonzero constant term");
            stratum_residues[b].resize(j_max);
            for (unsigned j = 1; j <= j_max; ++j) {
                const u64 scale = prime_power(p, static_cast<u64>(i + 1) * (j - 1) + 1);
                if ((*fit)[j] % scale != 0)
                    throw NotPolynomialFunctionError("stratum coefficient lacks its required power of p");
                stratum_residues[b][j - 1] = ((*fit)[j] / scale) % (m / scale);
            }
        }
        if (auto stitched = node_back_substitute(constants, stratum_residues, p, e, i, ops))
            return *stitched;
        return fit_structured_direct(t, p, e, i, ops);
    }

    // peel one level deeper
    const u64 m1 = m / p;
    for (u64 b = 0; b < p; ++b) {
        constants[b] = t.at(b);
        if (b == 0 && constants[0] != 0)
            throw NotPolynomialFunctionError("structured table does not vanish at zero");
        PartialTable child;
        child.modulus = m1;
        child.values.assign(m1, 0);
        child.present.assign(m1, false);
        child.full = true;
        for (u64 y = 0; y < m1; ++y) {
            if (!t.has(p * y + b)) {
                child.full = false;
                continue;
            }
            const u64 diff = sub_mod(t.values[p * y + b], constants[b], m);
            if (diff % p != 0)
                throw NotPolynomialFunctionError("stratum values are not congruent mod p");
            child.values[y] = (diff / p) % m1;
            child.present[y] = true;
            ++ops;
        }
        stratum_residues[b] = solve_structured(child, p, e - 1, i + 1, ops);
    }
    if (auto stitched = node_back_substitute(constants, stratum_residues, p, e, i, ops))
        return *stitched;
    return fit_structured_direct(t, p, e, i, ops);
}

// The pd x pd block system: unknowns a_0..a_(pd-1), rows per stratum b and
// coefficient index k = 0..d-1 equating sum_j C(j,k) b^(j-k) a_j with the
// chosen lift of a_k^(b). Its determinant is a unit mod p, so the unit-pivot
// elimination always succeeds.
inline IntPoly solve_block_system(const std::vector<std::vector<u64>>& stratum_coeffs, u64 p,
                                  unsigned d, u64& ops) {
    const u64 m = prime_power(p, d);
    const std::size_t dim = static_cast<std::size_t>(p) * d;
    if (dim > kMaxMatrixDim)
        throw BudgetExceededError("recovery block system exceeds the matrix dimension cap");

    std::vector<std::vector<u64>> pascal(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        pascal[k].assign(k + 1, 1 % m);
        for (std::size_t l = 1; l < k; ++l) pascal[k][l] = add_mod(pascal[k - 1][l - 1], pascal[k - 1][l], m);
    }

    ModMatrix a(dim, dim, m);
    std::vector<u64> b(dim, 0);
    std::size_t row = 0;
    for (u64 b0 = 0; b0 < p; ++b0) {
        for (unsigned k = 0; k < d; ++k, ++row) {
            for (std::size_t j = k; j < dim; ++j) {
                u64 bpow = b0 == 0 ? (j == k ? 1 % m : 0) : pow_mod(b0, j - k, m);
                a.at(row, j) = mul_mod(pascal[j][k], bpow, m);
            }
            b[row] = stratum_coeffs[b0][k] % m;
        }
    }
    std::vector<u64> x = mat_solve_mod(a, b);
    ops += dim * dim * dim;
    return IntPoly(m, std::move(x));
}

// Try the unique degree <= p-1 interpolation and accept it when it explains
// every known value.
inline std::optional<IntPoly> try_small_degree(const PartialTable& t, u64 p, unsigned d, u64& ops) {
    const u64 m = t.modulus;
    if (p - 1 > kMaxPolyDegree) return std::nullopt;
    for (u64 x = 0; x < p; ++x)
        if (!t.has(x)) return std::nullopt;
    std::vector<std::pair<u64, u64>> rows;
    for (u64 x = 0; x < m; ++x)
        if (t.has(x)) rows.emplace_back(x, t.values[x]);
    auto fit = fit_poly_rows(rows, static_cast<unsigned>(p - 1), p, d, ops);
    if (!fit) return std::nullopt;
    return IntPoly(m, std::move(*fit));
}

inline void verify_seed(const IntPoly& seed, const PartialTable& t, u64& ops) {
    for (u64 x = 0; x < t.modulus; ++x) {
        if (!t.has(x)) continue;
        ++ops;
        if (seed.eval(static_cast<i64>(x)) != t.values[x])
            throw NotPolynomialFunctionError("recovered seed does not reproduce the given values");
    }
}

// Last-resort path for partial tables: fit a_0..a_(pd-1) directly against
// every known value. A consecutive prefix of p^(ceil((d-1)/p)+1) inputs pins
// the equivalence class, because any difference polynomial vanishing there
// has every falling-factorial coordinate divisible by p^d.
inline IntPoly solve_global(const PartialTable& t, u64 p, unsigned d, u64& ops) {
    const u64 m = t.modulus;
    const unsigned deg = static_cast<unsigned>(std::min<u64>(static_cast<u64>(p) * d - 1, kMaxPolyDegree));
    std::vector<std::pair<u64, u64>> rows;
    for (u64 x = 0; x < m; ++x)
        if (t.has(x)) rows.emplace_back(x, t.values[x]);
    auto fit = fit_poly_rows(rows, deg, p, d, ops);
    if (!fit) throw NotPolynomialFunctionError("values are not consistent with any polynomial");
    return IntPoly(m, std::move(*fit));
}

inline RecoveryResult recover_block_impl(const PartialTable& t, u64 p, unsigned d) {
    u64 ops = 0;
    if (auto small = try_small_degree(t, p, d, ops)) {
        verify_seed(*small, t, ops);
        return {std::move(*small), count_null_closed(p, d), ops};
    }

    const u64 m = t.modulus;
    std::vector<std::vector<u64>> stratum_coeffs(p, std::vector<u64>(d, 0));
    for (u64 b = 0; b < p; ++b) {
        std::vector<std::pair<u64, u64>> rows;
        for (u64 y = 0; p * y + b < m; ++y)
            if (t.has(p * y + b)) rows.emplace_back(y, t.values[p * y + b]);
        auto fit = fit_poly_rows(rows, d - 1, p, d, ops);
        if (!fit) throw NotPolynomialFunctionError("stratum rows are inconsistent with a polynomial");
        for (unsigned k = 0; k < d; ++k) {
            const u64 scale = prime_power(p, k);
            if ((*fit)[k] % scale != 0)
                throw NotPolynomialFunctionError("stratum coefficient lacks its required power of p");
            stratum_coeffs[b][k] = ((*fit)[k] / scale) % (m / scale);
        }
    }
    IntPoly seed = solve_block_system(stratum_coeffs, p, d, ops);
    verify_seed(seed, t, ops);
    return {std::move(seed), count_null_closed(p, d), ops};
}

inline RecoveryResult recover_recursive_impl(const PartialTable& t, u64 p, unsigned d,
                                             u64 class_budget) {
    u64 ops = 0;
    std::optional<IntPoly> seed;
    if (auto small = try_small_degree(t, p, d, ops)) seed = std::move(*small);

    if (!seed) {
        try {
            const u64 m = t.modulus;
            const u64 m1 = m / p;
            std::vector<std::vector<u64>> stratum_coeffs(p, std::vector<u64>(d, 0));
            for (u64 b = 0; b < p; ++b) {
                stratum_coeffs[b][0] = t.at(b);
                PartialTable child;
                child.modulus = m1;
                child.values.assign(m1, 0);
                child.present.assign(m1, false);
                child.full = true;
                for (u64 y = 0; y < m1; ++y) {
                    if (!t.has(p * y + b)) {
                        child.full = false;
                        continue;
                    }
                    const u64 diff = sub_mod(t.values[p * y + b], stratum_coeffs[b][0], m);
                    if (diff % p != 0)
                        throw NotPolynomialFunctionError("stratum values are not congruent mod p");
                    child.values[y] = (diff / p) % m1;
                    child.present[y] = true;
                    ++ops;
                }
                std::vector<u64> residues = solve_structured(child, p, d - 1, 1, ops);
                for (unsigned k = 1; k < d; ++k)
                    stratum_coeffs[b][k] = k - 1 < residues.size() ? residues[k - 1] : 0;
            }
            seed = solve_block_system(stratum_coeffs, p, d, ops);
            verify_seed(*seed, t, ops);
        } catch (const NotPolynomialFunctionError&) {
            if (t.full) throw;
            seed.reset();
        }
        if (!seed) {
            seed = solve_global(t, p, d, ops);
            verify_seed(*seed, t, ops);
        }
    } else {
        verify_seed(*seed, t, ops);
    }

    std::optional<BigInt> class_size;
    const unsigned max_deg = static_cast<unsigned>(std::min<u64>(static_cast<u64>(p) * d - 1, kMaxPolyDegree));
    if (detail::saturating_pow(t.modulus, max_deg + 1) <= class_budget) {
        NullSearchBudget nb;
        nb.max_tuples = class_budget;
        nb.max_degree = max_deg;
        class_size = static_cast<u64>(enumerate_null(t.modulus, max_deg, nb).size());
    }
    return {std::move(*seed), std::move(class_size), ops};
}

}  // namespace recover_detail

// Unique polynomial of degree <= n <= p-1 mod p^d through n+1 samples whose
// inputs are pairwise distinct mod p; the Vandermonde determinant is then a
// unit, so the solution is unique, not merely one of an equivalence class.
inline IntPoly interpolate_small(const std::vector<std::pair<u64, u64>>& samples, u64 p, unsigned d) {
    if (!is_prime(p)) throw InvalidArgumentError("interpolate_small: p must be prime");
    if (d < 1) throw InvalidArgumentError("interpolate_small: need d >= 1");
    if (samples.empty()) throw InvalidArgumentError("interpolate_small: no samples");
    if (samples.size() > p) throw TooManyNodesError("interpolate_small: more than p nodes");
    for (std::size_t i = 0; i < samples.size(); ++i)
        for (std::size_t j = i + 1; j < samples.size(); ++j)
            if (samples[i].first % p == samples[j].first % p)
                throw NodesNotDistinctModPError("interpolate_small: nodes collide mod p");

    const u64 m = prime_power(p, d);
    const std::size_t n1 = samples.size();
    ModMatrix a(n1, n1, m);
    std::vector<u64> b(n1);
    for (std::size_t r = 0; r < n1; ++r) {
        u64 pw = 1 % m;
        for (std::size_t c = 0; c < n1; ++c) {
            a.at(r, c) = pw;
            pw = mul_mod(pw, samples[r].first % m, m);
        }
        b[r] = samples[r].second % m;
    }
    return IntPoly(m, mat_solve_mod(a, b));
}

// The unique degree <= p-1 representative of an arbitrary function table
// mod a prime p.
inline IntPoly interpolate_function_mod_p(const FuncTable& table, u64 p) {
    if (!is_prime(p)) throw InvalidArgumentError("interpolate_function_mod_p: p must be prime");
    if (table.modulus != p) throw InvalidArgumentError("interpolate_function_mod_p: table modulus is not p");
    validate_table(table);
    std::vector<std::pair<u64, u64>> samples;
    samples.reserve(p);
    for (u64 x = 0; x < p; ++x) samples.emplace_back(x, table.values[x]);
    return interpolate_small(samples, p, 1);
}

// Block-decomposition recovery for 2 <= d <= p.
inline RecoveryResult recover_block(const FuncTable& table, u64 p, unsigned d) {
    if (!is_prime(p)) throw InvalidArgumentError("recover_block: p must be prime");
    if (d < 2 || d > p) throw InvalidArgumentError("recover_block: need 2 <= d <= p");
    if (prime_power(p, d) != table.modulus)
        throw InvalidArgumentError("recover_block: table modulus is not p^d");
    return recover_detail::recover_block_impl(recover_detail::PartialTable::from_table(table), p, d);
}

// Recursive recovery for d > p.
inline RecoveryResult recover_recursive(const FuncTable& table, u64 p, unsigned d,
                                        u64 class_budget = 10'000'000) {
    if (!is_prime(p)) throw InvalidArgumentError("recover_recursive: p must be prime");
    if (d <= p) throw InvalidArgumentError("recover_recursive: need d > p");
    if (prime_power(p, d) != table.modulus)
        throw InvalidArgumentError("recover_recursive: table modulus is not p^d");
    return recover_detail::recover_recursive_impl(recover_detail::PartialTable::from_table(table), p,
                                                  d, class_budget);
}

// Recovery from observed samples; needs at least the structured sample set
// from required_samples(p, d).
inline RecoveryResult recover_from_samples(const SampleSet& set, u64 class_budget = 10'000'000) {
    const u64 p = set.p;
    const unsigned d = set.d;
    if (!is_prime(p)) throw InvalidArgumentError("recover_from_samples: p must be prime");
    if (d < 1) throw InvalidArgumentError("recover_from_samples: need d >= 1");
    const u64 m = prime_power(p, d);
    auto t = recover_detail::PartialTable::from_samples(m, set.samples);
    for (u64 x : required_samples(p, d))
        if (!t.has(x))
            throw InvalidArgumentError("recover_from_samples: required sample x=" + std::to_string(x) +
                                       " is missing");
    if (d == 1) {
        // the required set is the whole residue system mod p
        u64 ops = 0;
        FuncTable table{m, t.values};
        IntPoly seed = interpolate_function_mod_p(table, p);
        recover_detail::verify_seed(seed, t, ops);
        return {std::move(seed), std::nullopt, ops};
    }
    if (d <= p) return recover_detail::recover_block_impl(t, p, d);
    return recover_detail::recover_recursive_impl(t, p, d, class_budget);
}

// Composite-modulus recovery: factorize m, recover one part per prime
// power from the reduced tables, and combine coefficients with the CRT.
inline IntPoly recover_composite(const FuncTable& table, u64 class_budget = 10'000'000) {
    validate_table(table);
    const FactoredModulus fm = factorize(table.modulus);
    std::vector<IntPoly> parts;
    parts.reserve(fm.factors.size());
    for (const auto& [p, d] : fm.factors) {
        const u64 pd = prime_power(p, d);
        FuncTable reduced;
        reduced.modulus = pd;
        reduced.values.resize(pd);
        for (u64 x = 0; x < pd; ++x) reduced.values[x] = table.values[x] % pd;
        if (d == 1) {
            parts.push_back(interpolate_function_mod_p(reduced, p));
        } else if (d <= p) {
            parts.push_back(recover_block(reduced, p, d).seed);
        } else {
            parts.push_back(recover_recursive(reduced, p, d, class_budget).seed);
        }
    }
    IntPoly combined = fm.factors.size() == 1 ? parts[0] : crt_build_poly(parts);
    for (u64 x = 0; x < table.modulus; ++x)
        if (combined.eval(static_cast<i64>(x)) != table.values[x])
            throw NotPolynomialFunctionError("recover_composite: combined polynomial does not reproduce the table");
    return combined;
}

}  // namespace permpoly
