#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "permpoly/error.hpp"
#include "permpoly/modmath.hpp"

namespace permpoly {

inline constexpr std::size_t kMaxPolyDegree = 64;
inline constexpr u64 kDefaultTableBudget = u64{1} << 24;

/**
 * A polynomial over Z_m: modulus plus ascending coefficient sequence,
 * canonical in [0, m) with trailing zeros trimmed. The zero polynomial is
 * the single-element sequence [0]. Values are immutable once constructed.
 */
class IntPoly {
   public:
    IntPoly(u64 modulus, std::vector<u64> coeffs) : modulus_(modulus), coeffs_(std::move(coeffs)) {
        canonicalize();
    }

    IntPoly(u64 modulus, const std::vector<i64>& coeffs) : modulus_(modulus) {
        coeffs_.reserve(coeffs.size());
        if (modulus < 2) throw InvalidArgumentError("IntPoly: modulus must be >= 2");
        for (i64 c : coeffs) coeffs_.push_back(reduce_signed(c, modulus));
        canonicalize();
    }

    static IntPoly zero(u64 modulus) { return IntPoly(modulus, std::vector<u64>{0}); }
    static IntPoly identity(u64 modulus) { return IntPoly(modulus, std::vector<u64>{0, 1}); }

    u64 modulus() const { return modulus_; }
    const std::vector<u64>& coeffs() const { return coeffs_; }

    // Coefficient of x^k; zero beyond the stored degree.
    u64 coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0; }

    // Canonical degree; 0 for the zero polynomial.
    std::size_t degree_mod() const { return coeffs_.size() - 1; }

    bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0; }

    // f(x) mod m by Horner's scheme; depends only on x mod m.
    u64 eval(i64 x) const {
        u64 xr = reduce_signed(x, modulus_);
        u64 acc = 0;
        for (std::size_t k = coeffs_.size(); k-- > 0;) acc = add_mod(mul_mod(acc, xr, modulus_), coeffs_[k], modulus_);
        return acc;
    }

    bool operator==(const IntPoly& other) const = default;

   private:
    void canonicalize() {
        if (modulus_ < 2) throw InvalidArgumentError("IntPoly: modulus must be >= 2");
        if (coeffs_.empty()) coeffs_.push_back(0);
        for (u64& c : coeffs_) c %= modulus_;
        while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
        if (coeffs_.size() > kMaxPolyDegree + 1)
            throw InvalidArgumentError("IntPoly: degree exceeds the supported cap");
    }

    u64 modulus_;
    std::vector<u64> coeffs_;
};

// The induced function: m residues, entry x holds f(x) mod m.
struct FuncTable {
    u64 modulus = 0;
    std::vector<u64> values;

    bool operator==(const FuncTable&) const = default;
};

inline void validate_table(const FuncTable& t) {
    if (t.modulus < 2) throw InvalidArgumentError("FuncTable: modulus must be >= 2");
    if (t.values.size() != t.modulus) throw InvalidArgumentError("FuncTable: length must equal the modulus");
    for (u64 v : t.values)
        if (v >= t.modulus) throw InvalidArgumentError("FuncTable: value out of range");
}

inline FuncTable induced_table(const IntPoly& f, u64 table_budget = kDefaultTableBudget) {
    const u64 m = f.modulus();
    if (m > table_budget) throw BudgetExceededError("induced_table: modulus exceeds the table budget");
    FuncTable t;
    t.modulus = m;
    t.values.resize(m);
    for (u64 x = 0; x < m; ++x) t.values[x] = f.eval(static_cast<i64>(x));
    return t;
}

// Coefficient-wise identity of the canonical forms.
inline bool congruent(const IntPoly& f, const IntPoly& g) {
    if (f.modulus() != g.modulus()) throw InvalidArgumentError("congruent: modulus mismatch");
    return f.coeffs() == g.coeffs();
}

// Pointwise identity over one complete residue system (hence over all of Z).
inline bool equivalent(const IntPoly& f, const IntPoly& g, u64 table_budget = kDefaultTableBudget) {
    if (f.modulus() != g.modulus()) throw InvalidArgumentError("equivalent: modulus mismatch");
    const u64 m = f.modulus();
    if (m > table_budget) throw BudgetExceededError("equivalent: modulus exceeds the table budget");
    for (u64 x = 0; x < m; ++x)
        if (f.eval(static_cast<i64>(x)) != g.eval(static_cast<i64>(x))) return false;
    return true;
}

// g with g(y) == f(y + i) (mod m); coefficients expand through binomial
// sums g_l = sum_{k>=l} C(k,l) i^(k-l) a_k. Pascal's triangle is built
// directly mod m.
inline IntPoly shift_compose(const IntPoly& f, u64 i) {
    const u64 m = f.modulus();
    const std::size_t n = f.degree_mod();
    const u64 ir = i % m;

    std::vector<std::vector<u64>> pascal(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        pascal[k].assign(k + 1, 1);
        for (std::size_t l = 1; l < k; ++l) pascal[k][l] = add_mod(pascal[k - 1][l - 1], pascal[k - 1][l], m);
    }
    std::vector<u64> ipow(n + 1);
    ipow[0] = 1 % m;
    for (std::size_t t = 1; t <= n; ++t) ipow[t] = mul_mod(ipow[t - 1], ir, m);

    std::vector<u64> out(n + 1, 0);
    for (std::size_t l = 0; l <= n; ++l) {
        u64 acc = 0;
        for (std::size_t k = l; k <= n; ++k)
            acc = add_mod(acc, mul_mod(pascal[k][l], mul_mod(ipow[k - l], f.coeff(k), m), m), m);
        out[l] = acc;
    }
    return IntPoly(m, std::move(out));
}

// For f mod p^d with zero constant term, the polynomial f1* mod p^(d-1)
// with f(p*z) == p * f1*(z) (mod p^d): coefficients a_k * p^(k-1).
inline IntPoly scale_divide(const IntPoly& f, u64 p, unsigned d) {
    if (!is_prime(p)) throw InvalidArgumentError("scale_divide: p must be prime");
    if (d < 2) throw InvalidArgumentError("scale_divide: need exponent d >= 2");
    if (prime_power(p, d) != f.modulus())
        throw InvalidArgumentError("scale_divide: modulus of f is not p^d");
    if (f.coeff(0) != 0) throw InvalidArgumentError("scale_divide: constant term must be zero");

    const u64 m1 = prime_power(p, d - 1);
    std::vector<u64> out(f.degree_mod() + 1, 0);
    u64 ppow = 1;  // p^(k-1), saturating to 0 mod p^(d-1)
    for (std::size_t k = 1; k <= f.degree_mod(); ++k) {
        out[k] = mul_mod(f.coeff(k) % m1, ppow, m1);
        ppow = mul_mod(ppow, p, m1);
    }
    return IntPoly(m1, std::move(out));
}

inline std::size_t degree_mod(const IntPoly& f) { return f.degree_mod(); }

// Text form: comma-separated ascending decimal coefficients, "0,1,2" = 2x^2+x.
inline std::string format_poly(const IntPoly& f) {
    std::string out;
    for (std::size_t k = 0; k < f.coeffs().size(); ++k) {
        if (k > 0) out += ',';
        out += std::to_string(f.coeffs()[k]);
    }
    return out;
}

inline IntPoly parse_poly(std::string_view text, u64 modulus) {
    std::vector<i64> coeffs;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string_view item = text.substr(pos, comma == std::string_view::npos ? text.size() - pos : comma - pos);
        std::size_t begin = item.find_first_not_of(" \t");
        std::size_t end = item.find_last_not_of(" \t");
        if (begin == std::string_view::npos)
            throw InvalidArgumentError("parse_poly: empty coefficient");
        item = item.substr(begin, end - begin + 1);
        i64 value = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (ec != std::errc{} || ptr != item.data() + item.size())
            throw InvalidArgumentError("parse_poly: bad coefficient '" + std::string(item) + "'");
        coeffs.push_back(value);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    if (coeffs.empty()) throw InvalidArgumentError("parse_poly: no coefficients");
    return IntPoly(modulus, coeffs);
}

}  // namespace permpoly
