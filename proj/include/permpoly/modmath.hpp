#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "permpoly/error.hpp"

// Exact integer and modular arithmetic: gcd/inverse, factorization, CRT,
// modular linear-system solving, and closed-form determinants for the
// value/derivative and binomial block matrices.
//
// All functions are pure; moduli are 64-bit unsigned and every modular
// product runs through a 128-bit intermediate, so moduli up to 2^63 are
// safe. Exact determinants use arbitrary precision because Vandermonde
// determinants grow factorially.

namespace permpoly {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline constexpr std::size_t kMaxMatrixDim = 64;

inline u64 add_mod(u64 a, u64 b, u64 m) { return static_cast<u64>((static_cast<u128>(a) + b) % m); }

inline u64 sub_mod(u64 a, u64 b, u64 m) { return static_cast<u64>((static_cast<u128>(a) + m - b % m) % m); }

inline u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 pow_mod(u64 base, u64 exp, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Residue of a signed integer in [0, m).
inline u64 reduce_signed(i64 x, u64 m) {
    i64 r = x % static_cast<i64>(m);
    if (r < 0) r += static_cast<i64>(m);
    return static_cast<u64>(r);
}

inline u64 gcd(u64 a, u64 b) {
    if (a == 0 && b == 0) throw InvalidArgumentError("gcd(0, 0) is undefined");
    return std::gcd(a, b);
}

// x in [0, m) with a*x == 1 (mod m); throws when gcd(a, m) != 1.
inline u64 mod_inverse(u64 a, u64 m) {
    if (m < 2) throw InvalidArgumentError("mod_inverse: modulus must be >= 2");
    a %= m;
    i64 old_r = static_cast<i64>(m), r = static_cast<i64>(a);
    i64 old_s = 0, s = 1;
    while (r != 0) {
        i64 q = old_r / r;
        old_r -= q * r;
        std::swap(old_r, r);
        old_s -= q * s;
        std::swap(old_s, s);
    }
    if (old_r != 1) throw NotInvertibleError("element shares a factor with the modulus");
    return reduce_signed(old_s, m);
}

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (u64 f = 3; f * f <= n; f += 2)
        if (n % f == 0) return false;
    return true;
}

// m as a product of strictly increasing prime powers.
struct FactoredModulus {
    struct Factor {
        u64 prime = 0;
        unsigned exponent = 0;
    };

    std::vector<Factor> factors;
    u64 value = 0;
};

// p^d with an overflow check.
inline u64 prime_power(u64 p, unsigned d) {
    u128 v = 1;
    for (unsigned i = 0; i < d; ++i) {
        v *= p;
        if (v > UINT64_MAX) throw InvalidArgumentError("prime power exceeds 64 bits");
    }
    return static_cast<u64>(v);
}

// Trial division up to sqrt(m). A hard iteration cap turns pathological
// inputs (two large prime factors) into an error instead of a hang.
inline FactoredModulus factorize(u64 m, u64 max_iterations = 10'000'000) {
    if (m < 2) throw InvalidArgumentError("factorize: m must be >= 2");
    FactoredModulus out;
    out.value = m;
    u64 rest = m;
    u64 iterations = 0;
    auto push = [&out](u64 p, unsigned e) { out.factors.push_back({p, e}); };
    unsigned e2 = 0;
    while (rest % 2 == 0) {
        rest /= 2;
        ++e2;
    }
    if (e2 > 0) push(2, e2);
    for (u64 f = 3; f * f <= rest; f += 2) {
        if (++iterations > max_iterations)
            throw FactorizationTooHardError("trial division exceeded its iteration cap");
        if (rest % f != 0) continue;
        unsigned e = 0;
        while (rest % f == 0) {
            rest /= f;
            ++e;
        }
        push(f, e);
    }
    if (rest > 1) push(rest, 1);
    return out;
}

// Unique x in [0, prod m_i) with x == r_i (mod m_i). Moduli must be
// pairwise coprime and their product must fit in 64 bits.
inline u64 crt_combine(const std::vector<std::pair<u64, u64>>& pairs) {
    if (pairs.empty()) throw InvalidArgumentError("crt_combine: no congruences given");
    u64 x = 0, modulus = 1;
    for (const auto& [ri, mi] : pairs) {
        if (mi == 0) throw InvalidArgumentError("crt_combine: zero modulus");
        if (std::gcd(modulus, mi) != 1)
            throw InvalidArgumentError("crt_combine: moduli are not pairwise coprime");
        if (static_cast<u128>(modulus) * mi > UINT64_MAX)
            throw InvalidArgumentError("crt_combine: combined modulus exceeds 64 bits");
        u64 r = ri % mi;
        // x + modulus*t == r (mod mi)
        u64 t = mul_mod(sub_mod(r, x % mi, mi), mod_inverse(modulus % mi, mi), mi);
        x += modulus * t;
        modulus *= mi;
    }
    return x;
}

// Dense matrix of residues mod m, row-major.
struct ModMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<u64> entries;
    u64 modulus = 0;

    ModMatrix() = default;
    ModMatrix(std::size_t r, std::size_t c, u64 m) : rows(r), cols(c), entries(r * c, 0), modulus(m) {
        if (m < 2) throw InvalidArgumentError("ModMatrix: modulus must be >= 2");
    }

    u64& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
    u64 at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

using BigMatrix = std::vector<std::vector<BigInt>>;

// Exact determinant by Bareiss fraction-free elimination.
inline BigInt mat_det_exact(BigMatrix a, std::size_t max_dim = kMaxMatrixDim) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    if (n > max_dim) throw InvalidArgumentError("mat_det_exact: dimension exceeds cap");
    for (const auto& row : a)
        if (row.size() != n) throw InvalidArgumentError("mat_det_exact: matrix is not square");

    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(a[k], a[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

namespace detail {

inline BigInt reduce_big(const BigInt& v, u64 m) {
    BigInt r = v % m;
    if (r < 0) r += m;
    return r;
}

// Adjugate-formula solve: X = inv(det) * adj(A) * B. Exact minors, then
// one reduction mod m. Quartic cost, used for small systems and as the
// fallback when no unit pivot exists in some column.
inline std::vector<u64> solve_mod_adjugate(const ModMatrix& a, const std::vector<u64>& b) {
    const std::size_t n = a.rows;
    const u64 m = a.modulus;
    BigMatrix exact(n, std::vector<BigInt>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) exact[i][j] = a.at(i, j);
    BigInt det = mat_det_exact(exact);
    u64 det_mod = static_cast<u64>(reduce_big(det, m));
    if (std::gcd(det_mod, m) != 1)
        throw SingularModMError("determinant shares a factor with the modulus");
    u64 det_inv = mod_inverse(det_mod, m);

    std::vector<u64> x(n, 0);
    // adj(A)[j][i] = cofactor(i, j); accumulate adj(A) * B column by column.
    for (std::size_t j = 0; j < n; ++j) {
        u64 acc = 0;
        for (std::size_t i = 0; i < n; ++i) {
            BigMatrix minor(n - 1, std::vector<BigInt>(n - 1));
            for (std::size_t r = 0, mr = 0; r < n; ++r) {
                if (r == i) continue;
                for (std::size_t c = 0, mc = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor[mr][mc++] = exact[r][c];
                }
                ++mr;
            }
            BigInt cof = mat_det_exact(minor);
            if ((i + j) % 2 == 1) cof = -cof;
            acc = add_mod(acc, mul_mod(static_cast<u64>(reduce_big(cof, m)), b[i] % m, m), m);
        }
        x[j] = mul_mod(det_inv, acc, m);
    }
    return x;
}

}  // namespace detail

// Unique X mod m with A*X == B (mod m), defined whenever gcd(det A, m) = 1.
// Gaussian elimination restricted to unit pivots; for a prime-power modulus
// a unit pivot always exists in every column, for general composites the
// adjugate formula takes over when the pivot search fails.
inline std::vector<u64> mat_solve_mod(const ModMatrix& a, const std::vector<u64>& b) {
    const std::size_t n = a.rows;
    const u64 m = a.modulus;
    if (a.cols != n) throw InvalidArgumentError("mat_solve_mod: matrix is not square");
    if (n > kMaxMatrixDim) throw InvalidArgumentError("mat_solve_mod: dimension exceeds cap");
    if (b.size() != n) throw InvalidArgumentError("mat_solve_mod: right side has wrong length");

    std::vector<std::vector<u64>> w(n, std::vector<u64>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) w[i][j] = a.at(i, j) % m;
        w[i][n] = b[i] % m;
    }

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = n;
        for (std::size_t r = col; r < n; ++r) {
            if (std::gcd(w[r][col], m) == 1) {
                pivot = r;
                break;
            }
        }
        if (pivot == n) return detail::solve_mod_adjugate(a, b);
        std::swap(w[col], w[pivot]);
        u64 inv = mod_inverse(w[col][col], m);
        for (std::size_t j = col; j <= n; ++j) w[col][j] = mul_mod(w[col][j], inv, m);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || w[r][col] == 0) continue;
            u64 factor = w[r][col];
            for (std::size_t j = col; j <= n; ++j)
                w[r][j] = sub_mod(w[r][j], mul_mod(factor, w[col][j], m), m);
        }
    }
    std::vector<u64> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = w[i][n];
    return x;
}

// Adjugate route exposed for cross-checking against the elimination route.
inline std::vector<u64> mat_solve_mod_adjugate(const ModMatrix& a, const std::vector<u64>& b) {
    if (a.cols != a.rows) throw InvalidArgumentError("mat_solve_mod_adjugate: matrix is not square");
    if (a.rows > kMaxMatrixDim) throw InvalidArgumentError("mat_solve_mod_adjugate: dimension exceeds cap");
    if (b.size() != a.rows) throw InvalidArgumentError("mat_solve_mod_adjugate: right side has wrong length");
    return detail::solve_mod_adjugate(a, b);
}

// General linear congruence solve A*x == b (mod p^e) for systems whose
// determinant need not be a unit (entries may carry powers of p). Pivots of
// minimal p-valuation; whenever a pivot is p^v with v > 0 the row scaled by
// p^(e-v) is appended as an extra constraint (the Howell-form completion),
// which keeps the constraints a non-unit pivot imposes on later columns.
// Back substitution determines each pivot unknown mod p^(e-v) and sets its
// free digits to 0; unknowns in pivot-free columns are set to 0. Returns
// nullopt when the system is inconsistent.
inline std::optional<std::vector<u64>> mat_solve_prime_power(std::vector<std::vector<u64>> a,
                                                             std::vector<u64> b, u64 p, unsigned e,
                                                             u64* op_count = nullptr) {
    const u64 m = prime_power(p, e);
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    if (b.size() != a.size()) throw InvalidArgumentError("mat_solve_prime_power: right side has wrong length");
    for (auto& row : a)
        for (u64& v : row) v %= m;
    for (u64& v : b) v %= m;
    u64 ops = 0;

    auto valuation = [&](u64 x) -> unsigned {
        if (x == 0) return e;
        unsigned v = 0;
        while (x % p == 0) {
            x /= p;
            ++v;
        }
        return v;
    };

    std::vector<std::size_t> pivot_col;
    std::size_t cursor = 0;
    for (std::size_t col = 0; col < cols && cursor < a.size(); ++col) {
        std::size_t best = a.size();
        unsigned best_v = e;
        for (std::size_t r = cursor; r < a.size(); ++r) {
            unsigned v = valuation(a[r][col]);
            if (v < best_v) {
                best_v = v;
                best = r;
            }
        }
        if (best == a.size()) continue;  // column is zero below the cursor
        std::swap(a[cursor], a[best]);
        std::swap(b[cursor], b[best]);
        // scale the row so the pivot becomes exactly p^v
        const u64 pivot_val = prime_power(p, best_v);
        const u64 inv = mod_inverse(a[cursor][col] / pivot_val, m);
        for (std::size_t j = 0; j < cols; ++j) a[cursor][j] = mul_mod(a[cursor][j], inv, m);
        b[cursor] = mul_mod(b[cursor], inv, m);
        ops += cols + 1;
        if (best_v > 0) {
            // p^(e-v) times the pivot row still constrains the later columns
            const u64 lift = prime_power(p, e - best_v) % m;
            std::vector<u64> extra(cols);
            for (std::size_t j = 0; j < cols; ++j) extra[j] = mul_mod(a[cursor][j], lift, m);
            a.push_back(std::move(extra));
            b.push_back(mul_mod(b[cursor], lift, m));
            ops += cols + 1;
        }
        for (std::size_t r = cursor + 1; r < a.size(); ++r) {
            if (a[r][col] == 0) continue;
            const u64 factor = a[r][col] / pivot_val;  // valuation >= best_v by pivot choice
            for (std::size_t j = col; j < cols; ++j)
                a[r][j] = sub_mod(a[r][j], mul_mod(factor, a[cursor][j], m), m);
            b[r] = sub_mod(b[r], mul_mod(factor, b[cursor], m), m);
            ops += cols + 1;
        }
        pivot_col.push_back(col);
        ++cursor;
    }
    // rows below the cursor are all zero; their right sides must be too
    for (std::size_t r = cursor; r < a.size(); ++r)
        if (b[r] != 0) return std::nullopt;

    std::vector<u64> x(cols, 0);
    for (std::size_t i = pivot_col.size(); i-- > 0;) {
        const std::size_t col = pivot_col[i];
        u64 acc = b[i];
        for (std::size_t j = col + 1; j < cols; ++j) {
            acc = sub_mod(acc, mul_mod(a[i][j], x[j], m), m);
            ++ops;
        }
        const u64 pivot_val = a[i][col];  // p^v by construction
        if (acc % pivot_val != 0) return std::nullopt;
        x[col] = (acc / pivot_val) % (m / pivot_val);
    }
    if (op_count != nullptr) *op_count += ops;
    return x;
}

// Exact binomial coefficient.
inline BigInt binomial_exact(u64 n, u64 k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (u64 i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

inline BigInt vandermonde_det(const std::vector<i64>& nodes) {
    BigInt r = 1;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j) r *= BigInt(nodes[j]) - nodes[i];
    return r;
}

inline BigMatrix vandermonde_matrix(const std::vector<i64>& nodes) {
    const std::size_t n = nodes.size();
    BigMatrix a(n, std::vector<BigInt>(n));
    for (std::size_t i = 0; i < n; ++i) {
        BigInt pw = 1;
        for (std::size_t j = 0; j < n; ++j) {
            a[i][j] = pw;
            pw *= nodes[i];
        }
    }
    return a;
}

// 2m x 2m matrix stacking value rows [X_j^c] over weighted rows [(c+1)X_j^c].
inline BigMatrix paired_power_matrix(const std::vector<i64>& nodes) {
    const std::size_t m = nodes.size();
    BigMatrix a(2 * m, std::vector<BigInt>(2 * m));
    for (std::size_t j = 0; j < m; ++j) {
        BigInt pw = 1;
        for (std::size_t c = 0; c < 2 * m; ++c) {
            a[j][c] = pw;
            a[m + j][c] = BigInt(c + 1) * pw;
            pw *= nodes[j];
        }
    }
    return a;
}

// Variant with every power shifted up by one: rows [X_i^(c+2)] over
// [(c+2)X_i^(c+1)].
inline BigMatrix paired_power_matrix_shifted(const std::vector<i64>& nodes) {
    const std::size_t m = nodes.size();
    BigMatrix a(2 * m, std::vector<BigInt>(2 * m));
    for (std::size_t i = 0; i < m; ++i) {
        BigInt pw = nodes[i];
        for (std::size_t c = 0; c < 2 * m; ++c) {
            a[m + i][c] = BigInt(c + 2) * pw;
            pw *= nodes[i];
            a[i][c] = pw;
        }
    }
    return a;
}

// (-1)^(m(m-1)/2) * prod X_j * prod_{i<j} (X_j - X_i)^4
inline BigInt paired_power_det(const std::vector<i64>& nodes) {
    const std::size_t m = nodes.size();
    BigInt r = (m * (m - 1) / 2) % 2 == 0 ? 1 : -1;
    for (i64 x : nodes) r *= x;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            BigInt d = BigInt(nodes[j]) - nodes[i];
            r *= d * d * d * d;
        }
    return r;
}

// (-1)^(m(m-1)/2) * prod X_i^4 * prod_{i<j} (X_j - X_i)^4
inline BigInt paired_power_det_shifted(const std::vector<i64>& nodes) {
    const std::size_t m = nodes.size();
    BigInt r = (m * (m - 1) / 2) % 2 == 0 ? 1 : -1;
    for (i64 x : nodes) {
        BigInt b = x;
        r *= b * b * b * b;
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            BigInt d = BigInt(nodes[j]) - nodes[i];
            r *= d * d * d * d;
        }
    return r;
}

// ml x ml block matrix; block i is l rows with entries C(n+c, k) * X_i^c.
inline BigMatrix binom_block_matrix(const std::vector<i64>& nodes, u64 n, u64 l) {
    if (l < 1 || n < l) throw InvalidArgumentError("binom_block_matrix: need n >= l >= 1");
    if (nodes.empty()) throw InvalidArgumentError("binom_block_matrix: need at least one node");
    const std::size_t m = nodes.size();
    const std::size_t dim = m * l;
    BigMatrix a(dim, std::vector<BigInt>(dim));
    for (std::size_t i = 0; i < m; ++i) {
        BigInt pw = 1;
        for (std::size_t c = 0; c < dim; ++c) {
            for (std::size_t k = 0; k < l; ++k) a[i * l + k][c] = binomial_exact(n + c, k) * pw;
            pw *= nodes[i];
        }
    }
    return a;
}

// prod X_i^(l(l-1)/2) * prod_{i<j} (X_j - X_i)^(l^2)
inline BigInt binom_block_det(const std::vector<i64>& nodes, u64 n, u64 l) {
    if (l < 1 || n < l) throw InvalidArgumentError("binom_block_det: need n >= l >= 1");
    if (nodes.empty()) throw InvalidArgumentError("binom_block_det: need at least one node");
    const std::size_t m = nodes.size();
    BigInt r = 1;
    const u64 he = l * (l - 1) / 2;
    for (i64 x : nodes) {
        BigInt pw = 1;
        for (u64 t = 0; t < he; ++t) pw *= x;
        r *= pw;
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            BigInt d = BigInt(nodes[j]) - nodes[i];
            BigInt pw = 1;
            for (u64 t = 0; t < l * l; ++t) pw *= d;
            r *= pw;
        }
    return r;
}

}  // namespace permpoly
