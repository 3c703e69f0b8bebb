#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "permpoly/error.hpp"
#include "permpoly/modmath.hpp"
#include "permpoly/permtest.hpp"
#include "permpoly/poly.hpp"

// Base-p resolution machinery and the constructive verification of the
// hierarchical structure of a permutation mod p^d: the induced bijection
// splits into a sub-bijection on the multiples of p and p-1 shifted blocks,
// each driven by a derived polynomial mod p^(d-1), with every base-p
// resolution class inside every block fixed setwise.

namespace permpoly {

// Exact power of p dividing an integer; infinite for 0. A distinguished
// tag rather than a sentinel so partition invariants stay testable.
class Resolution {
   public:
    static Resolution infinite() { return Resolution(true, 0); }
    static Resolution finite(unsigned level) { return Resolution(false, level); }

    bool is_infinite() const { return infinite_; }
    unsigned level() const {
        if (infinite_) throw InvalidArgumentError("Resolution: infinite level has no finite value");
        return level_;
    }

    bool operator==(const Resolution&) const = default;
    // finite levels ascending, infinity greatest
    std::strong_ordering operator<=>(const Resolution& o) const {
        if (infinite_ != o.infinite_) return infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
        return level_ <=> o.level_;
    }

   private:
    Resolution(bool inf, unsigned level) : infinite_(inf), level_(level) {}

    bool infinite_;
    unsigned level_;
};

inline std::string to_string(const Resolution& r) {
    return r.is_infinite() ? "inf" : std::to_string(r.level());
}

inline Resolution base_p_resolution(i64 a, u64 p) {
    if (p < 2) throw InvalidArgumentError("base_p_resolution: p must be >= 2");
    if (a == 0) return Resolution::infinite();
    u64 v = a < 0 ? static_cast<u64>(-a) : static_cast<u64>(a);
    unsigned level = 0;
    while (v % p == 0) {
        v /= p;
        ++level;
    }
    return Resolution::finite(level);
}

// Least-significant-first digits; 0 is represented as [0].
inline std::vector<u64> base_p_digits(u64 a, u64 p) {
    if (p < 2) throw InvalidArgumentError("base_p_digits: p must be >= 2");
    std::vector<u64> digits;
    do {
        digits.push_back(a % p);
        a /= p;
    } while (a > 0);
    return digits;
}

// Elementwise shift mod m; cardinality is preserved.
inline std::set<u64> circular_shift(const std::set<u64>& s, i64 k, u64 m) {
    if (m < 1) throw InvalidArgumentError("circular_shift: modulus must be >= 1");
    const u64 kr = reduce_signed(k, m);
    std::set<u64> out;
    for (u64 y : s) {
        if (y >= m) throw InvalidArgumentError("circular_shift: element out of range");
        out.insert(add_mod(y, kr, m));
    }
    return out;
}

// The d+1 classes of [0, p^d) by base-p resolution: levels 0..d-1 plus
// the infinite class {0}.
struct ResolutionPartition {
    u64 p = 0;
    unsigned d = 0;
    std::map<Resolution, std::set<u64>> classes;
};

inline ResolutionPartition multires_partition(u64 p, unsigned d, u64 table_budget = kDefaultTableBudget) {
    if (!is_prime(p)) throw InvalidArgumentError("multires_partition: p must be prime");
    if (d < 1) throw InvalidArgumentError("multires_partition: need d >= 1");
    const u64 m = prime_power(p, d);
    if (m > table_budget) throw BudgetExceededError("multires_partition: p^d exceeds the table budget");

    ResolutionPartition out;
    out.p = p;
    out.d = d;
    for (unsigned l = 0; l < d; ++l) out.classes[Resolution::finite(l)] = {};
    out.classes[Resolution::infinite()] = {0};
    for (u64 x = 1; x < m; ++x) out.classes[base_p_resolution(static_cast<i64>(x), p)].insert(x);
    return out;
}

// One verified decomposition of a permutation polynomial mod p^d.
// Block 0 is the multiples-of-p block; block i (1 <= i <= p-1) holds the
// residues congruent to i mod p and maps onto the circular shift of block 0
// by offsets[i]. resolution_fixed[block][idx] covers levels 1..d-1 at
// idx 0..d-2 and the infinite level at idx d-1.
struct HierarchyReport {
    u64 p = 0;
    unsigned d = 0;
    u64 modulus = 0;

    std::vector<u64> offsets;               // size p, offsets[0] == 0
    std::vector<IntPoly> derived;           // size p, each mod p^(d-1)
    std::vector<std::vector<bool>> resolution_fixed;

    struct Group1Value {
        u64 i = 0;
        u64 j = 0;
        u64 value = 0;  // sum_k a_k (j^k - i^k) mod p, nonzero
    };
    std::vector<Group1Value> group1;
    std::vector<u64> group2;                // per i = 0..p-1, nonzero
};

namespace detail {

inline void require_theorem(bool ok, const char* what) {
    if (!ok) throw TheoremViolationError(what);
}

}  // namespace detail

// Decompose the bijection induced by f (a_0 must be zero) and re-verify
// every structural claim against the induced table. f is required to be a
// permutation polynomial; a failed verification afterwards is a defect,
// not an input error.
inline HierarchyReport decompose(const IntPoly& f, u64 p, unsigned d,
                                 u64 table_budget = kDefaultTableBudget) {
    if (!is_prime(p)) throw InvalidArgumentError("decompose: p must be prime");
    if (d < 2) throw InvalidArgumentError("decompose: need d >= 2");
    const u64 m = prime_power(p, d);
    if (m != f.modulus()) throw InvalidArgumentError("decompose: modulus of f is not p^d");
    if (f.coeff(0) != 0) throw InvalidArgumentError("decompose: constant term must be zero");
    if (m > table_budget) throw BudgetExceededError("decompose: p^d exceeds the table budget");

    if (!check_prime_power(f, p, d).is_permutation)
        throw NotAPermutationError("decompose: f is not a permutation polynomial mod p^d");

    const FuncTable table = induced_table(f, table_budget);
    const u64 m1 = m / p;

    HierarchyReport report;
    report.p = p;
    report.d = d;
    report.modulus = m;
    report.offsets.resize(p, 0);
    for (u64 i = 1; i < p; ++i) report.offsets[i] = f.eval(static_cast<i64>(i));

    // result 1: multiples of p map onto multiples of p, and the complement
    // maps onto the complement
    for (u64 x = 0; x < m; ++x) {
        const bool in = x % p == 0;
        const bool out = table.values[x] % p == 0;
        detail::require_theorem(in == out, "multiples-of-p block is not invariant");
    }

    // result 2: block i maps onto the circular shift of the multiples block
    // by offsets[i]
    for (u64 i = 1; i < p; ++i) {
        std::set<u64> image, expected;
        for (u64 x = i; x < m; x += p) image.insert(table.values[x]);
        for (u64 y = 0; y < m; y += p) expected.insert(add_mod(y, report.offsets[i], m));
        detail::require_theorem(image == expected, "block image is not the shifted multiples block");
    }

    // result 3: derived polynomials mod p^(d-1) reproduce the sub-bijections
    report.derived.reserve(p);
    report.derived.push_back(scale_divide(f, p, d));
    for (u64 i = 1; i < p; ++i)
        report.derived.push_back(scale_divide(detail::strip_constant(shift_compose(f, i)), p, d));
    for (u64 i = 0; i < p; ++i) {
        const IntPoly& g = report.derived[i];
        detail::require_theorem(g.degree_mod() <= d - 1, "derived polynomial degree exceeds d-1");
        detail::require_theorem(check_any(g, table_budget).is_permutation,
                                "derived polynomial is not a permutation mod p^(d-1)");
        for (u64 z = 0; z < m1; ++z) {
            const u64 x = (p * z + i) % m;
            const u64 want = add_mod(report.offsets[i], mul_mod(p, g.eval(static_cast<i64>(z)), m), m);
            detail::require_theorem(table.values[x] == want,
                                    "derived polynomial does not reproduce the sub-bijection");
        }
    }

    // result 4: within each block, every resolution class is fixed setwise
    report.resolution_fixed.assign(p, std::vector<bool>(d, false));
    for (u64 i = 0; i < p; ++i) {
        std::vector<bool> ok(d, true);
        for (u64 x = i; x < m; x += p) {
            const Resolution before = base_p_resolution(static_cast<i64>(x - i), p);
            const u64 shifted = sub_mod(table.values[x], report.offsets[i], m);
            const Resolution after = base_p_resolution(static_cast<i64>(shifted), p);
            if (before != after) {
                const unsigned idx = before.is_infinite() ? d - 1 : before.level() - 1;
                ok[idx] = false;
            }
        }
        for (unsigned idx = 0; idx < d; ++idx) {
            report.resolution_fixed[i][idx] = ok[idx];
            detail::require_theorem(ok[idx], "resolution class not preserved inside a block");
        }
    }

    // results 5 and 6: all condition values nonzero mod p
    std::vector<u64> a(f.degree_mod() + 1);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = f.coeff(k) % p;
    std::vector<u64> value_mod_p(p, 0);
    for (u64 i = 0; i < p; ++i) {
        u64 acc = 0;
        for (std::size_t k = a.size() - 1; k >= 1; --k) acc = mul_mod(add_mod(acc, a[k], p), i, p);
        value_mod_p[i] = acc;
    }
    for (u64 i = 0; i < p; ++i) {
        for (u64 j = i + 1; j < p; ++j) {
            const u64 diff = sub_mod(value_mod_p[j], value_mod_p[i], p);
            detail::require_theorem(diff != 0, "group-1 condition value vanished");
            report.group1.push_back({i, j, diff});
        }
    }
    report.group2.resize(p, 0);
    for (u64 i = 0; i < p; ++i) {
        u64 acc = 0;
        u64 ipow = 1;
        for (std::size_t k = 1; k < a.size(); ++k) {
            acc = add_mod(acc, mul_mod(k % p, mul_mod(ipow, a[k], p), p), p);
            ipow = mul_mod(ipow, i, p);
        }
        detail::require_theorem(acc != 0, "group-2 condition value vanished");
        report.group2[i] = acc;
    }

    return report;
}

// Indented text rendering used by the CLI.
inline std::string render(const HierarchyReport& r) {
    std::string out;
    out += "hierarchy mod " + std::to_string(r.modulus) + " (p=" + std::to_string(r.p) +
           ", d=" + std::to_string(r.d) + ")\n";
    for (u64 i = 0; i < r.p; ++i) {
        out += "block " + std::to_string(i);
        out += i == 0 ? " (multiples of p)" : " (residue " + std::to_string(i) + " mod p)";
        out += "\n";
        out += "  offset " + std::to_string(r.offsets[i]) + "\n";
        out += "  derived polynomial mod " + std::to_string(r.modulus / r.p) + ": " +
               format_poly(r.derived[i]) + "\n";
        out += "  levels fixed:";
        for (unsigned idx = 0; idx + 1 < r.d; ++idx)
            out += " " + std::to_string(idx + 1) + "=" + (r.resolution_fixed[i][idx] ? "yes" : "no");
        out += std::string(" inf=") + (r.resolution_fixed[i][r.d - 1] ? "yes" : "no") + "\n";
    }
    out += "condition values mod " + std::to_string(r.p) + ":\n";
    out += "  pair differences:";
    for (const auto& g : r.group1)
        out += " (" + std::to_string(g.i) + "," + std::to_string(g.j) + ")=" + std::to_string(g.value);
    out += "\n  derivative sums:";
    for (u64 i = 0; i < r.p; ++i) out += " " + std::to_string(r.group2[i]);
    out += "\n";
    return out;
}

}  // namespace permpoly
