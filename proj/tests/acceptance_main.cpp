// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every expected value and time limit is pinned here, in code.

#include <chrono>
#include <cstdio>
#include <exception>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "permpoly/permpoly.hpp"

using namespace permpoly;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int number, const std::string& what, bool ok, const std::string& detail = "") {
    std::printf("%s criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", number, what.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename Fn>
void criterion(int number, const std::string& what, Fn&& body) {
    try {
        body();
    } catch (const std::exception& e) {
        report(number, what, false, std::string("exception: ") + e.what());
    }
}

IntPoly random_perm_poly(u64 p, unsigned d, unsigned max_deg, std::mt19937_64& rng) {
    const u64 m = prime_power(p, d);
    while (true) {
        std::vector<u64> coeffs(max_deg + 1, 0);
        for (auto& c : coeffs) c = rng() % m;
        IntPoly f(m, coeffs);
        if (check_any(f).is_permutation) return f;
    }
}

void criterion_1_rc6() {
    bool ok = true;
    std::string detail;
    for (unsigned d = 1; d <= 32 && ok; ++d) {
        IntPoly f(prime_power(2, d), std::vector<u64>{0, 1, 2});
        auto start = Clock::now();
        PermVerdict v = check_any(f, /*table_budget=*/4);  // no table may be built
        double elapsed = seconds_since(start);
        if (!v.is_permutation) {
            ok = false;
            detail = "closed form rejected d=" + std::to_string(d);
        } else if (elapsed >= 0.001) {
            ok = false;
            detail = "closed-form check took " + std::to_string(elapsed * 1000) + " ms at d=" + std::to_string(d);
        }
    }
    for (unsigned d = 1; d <= 16 && ok; ++d) {
        IntPoly f(prime_power(2, d), std::vector<u64>{0, 1, 2});
        if (!is_perm_bruteforce(f).is_permutation) {
            ok = false;
            detail = "brute force disagreed at d=" + std::to_string(d);
        }
    }
    report(1, "x(2x+1) permutes Z_(2^d) for d=1..32 in under 1 ms each; brute force agrees to d=16", ok, detail);
}

void criterion_2_census_2d() {
    auto start = Clock::now();
    const std::vector<BigRat> want = {BigRat(1, 2), BigRat(1, 4), BigRat(1, 8), BigRat(1, 8), BigRat(1, 8)};
    bool ok = true;
    std::string detail;
    for (u64 m : {4, 8, 16}) {
        for (unsigned n = 1; n <= 5; ++n) {
            BigRat got = count_exhaustive(m, n, true).ratio;
            if (got != want[n - 1]) {
                ok = false;
                detail = "m=" + std::to_string(m) + " n=" + std::to_string(n);
            }
        }
    }
    double elapsed = seconds_since(start);
    if (ok && elapsed >= 60.0) {
        ok = false;
        detail = "took " + std::to_string(elapsed) + " s";
    }
    report(2, "exhaustive 2^d census ratios are 1/2, 1/4, 1/8, 1/8, 1/8 within a minute", ok, detail);
}

void criterion_3_census_3d() {
    auto start = Clock::now();
    const std::vector<BigRat> want = {BigRat(2, 3), BigRat(2, 9), BigRat(4, 27), BigRat(4, 81), BigRat(16, 243)};
    bool ok = true;
    std::string detail;
    for (unsigned n = 1; n <= 5; ++n) {
        BigRat exhaustive = count_exhaustive(9, n, true).ratio;
        BigRat conditioned = count_condition_based(3, 3, n).ratio;
        if (exhaustive != want[n - 1] || conditioned != want[n - 1]) {
            ok = false;
            detail = "n=" + std::to_string(n);
        }
    }
    double elapsed = seconds_since(start);
    if (ok && elapsed >= 120.0) {
        ok = false;
        detail = "took " + std::to_string(elapsed) + " s";
    }
    report(3, "3^d census: mod 9 exhaustive and mod 27 condition counts give 2/3 .. 16/243", ok, detail);
}

void criterion_4_soundness_sweep() {
    bool ok = true;
    std::string detail;
    u64 tuples_checked = 0;
    auto sweep = [&](u64 m, unsigned deg) {
        const bool with_constant = detail::saturating_pow(m, deg + 1) <= 10'000'000;
        std::vector<u64> coeffs(deg + 1, 0);
        const std::size_t first = with_constant ? 0 : 1;
        while (ok) {
            IntPoly f(m, coeffs);
            if (check_any(f).is_permutation != is_perm_bruteforce(f).is_permutation) {
                ok = false;
                detail = "disagreement at m=" + std::to_string(m) + " poly " + format_poly(f);
            }
            ++tuples_checked;
            std::size_t k = first;
            while (k < coeffs.size() && ++coeffs[k] == m) coeffs[k++] = 0;
            if (k == coeffs.size()) break;
        }
    };
    for (u64 m : {8, 9, 16, 25, 27})
        if (ok) sweep(m, 4);
    for (u64 m : {6, 12, 36})
        if (ok) sweep(m, 3);
    report(4, "criterion verdicts equal brute force on " + std::to_string(tuples_checked) +
                  " swept coefficient tuples", ok, detail);
}

void criterion_5_fermat_enhanced() {
    auto start = Clock::now();
    bool ok = true;
    std::string detail;
    std::map<std::vector<u64>, u64> per_table;
    u64 perm_classes = 0;
    std::vector<u64> coeffs(4, 0);
    coeffs[3] = 1;
    while (true) {
        IntPoly f(3, coeffs);
        if (f.degree_mod() == 3 && is_perm_bruteforce(f).is_permutation) {
            ++perm_classes;
            ++per_table[induced_table(f).values];
        }
        std::size_t k = 0;
        while (k < 4 && ++coeffs[k] == 3) coeffs[k++] = 0;
        if (k == 4) break;
        if (coeffs[3] == 0) break;  // leading coefficient ran out of nonzero values
    }
    if (perm_classes != 12 || count_degree_p_classes(3) != 12) {
        ok = false;
        detail = "classes=" + std::to_string(perm_classes);
    } else if (per_table.size() != 6 || count_bijections(3, 1, 3) != 6) {
        ok = false;
        detail = "bijections=" + std::to_string(per_table.size());
    } else {
        for (const auto& [table, classes] : per_table)
            if (classes != 2) {
                ok = false;
                detail = "a bijection had " + std::to_string(classes) + " classes";
            }
    }
    double elapsed = seconds_since(start);
    if (ok && elapsed >= 1.0) {
        ok = false;
        detail = "took " + std::to_string(elapsed) + " s";
    }
    report(5, "degree-3 scan mod 3: 12 permutation classes, 2 per bijection, 6 = 3! bijections", ok, detail);
}

void criterion_6_null_counts() {
    auto start = Clock::now();
    bool ok = enumerate_null(4, 3).size() == 4 && count_null_closed(2, 2) == 4 &&
              enumerate_null(9, 5).size() == 27 && count_null_closed(3, 2) == 27 &&
              omega(2, true) == 2 && omega(3, true) == 3 && omega(5, true) == 5 &&
              omega(4, false) == 2 && omega(4, true) == 4;
    std::string detail;
    double elapsed = seconds_since(start);
    if (ok && elapsed >= 60.0) {
        ok = false;
        detail = "took " + std::to_string(elapsed) + " s";
    }
    report(6, "null counts 4 and 27 match p^(d(d-1)p/2); omega values as derived", ok, detail);
}

void criterion_7_recovery_roundtrip() {
    auto start = Clock::now();
    bool ok = true;
    std::string detail;
    std::mt19937_64 rng(20240811);
    for (auto [p, d] : std::vector<std::pair<u64, unsigned>>{{2, 3}, {2, 4}, {2, 5}, {3, 2}, {3, 3}, {5, 2}}) {
        const unsigned max_deg = static_cast<unsigned>(std::min<u64>(p * d - 1, 12));
        for (int t = 0; t < 200 && ok; ++t) {
            // a mix of full-range and small degrees so the exact-congruence
            // clause for degree <= p-1 is exercised as well
            const unsigned deg = t % 5 == 0 ? static_cast<unsigned>(p - 1) : max_deg;
            IntPoly f = random_perm_poly(p, d, deg, rng);
            RecoveryResult r = d <= p ? recover_block(induced_table(f), p, d)
                                      : recover_recursive(induced_table(f), p, d);
            if (induced_table(r.seed) != induced_table(f)) {
                ok = false;
                detail = "table mismatch at p=" + std::to_string(p) + " d=" + std::to_string(d);
            } else if (f.degree_mod() <= p - 1 && !congruent(r.seed, f)) {
                ok = false;
                detail = "low-degree recovery not congruent at p=" + std::to_string(p) +
                         " d=" + std::to_string(d);
            }
        }
        if (!ok) break;
    }
    double elapsed = seconds_since(start);
    if (ok && elapsed >= 300.0) {
        ok = false;
        detail = "took " + std::to_string(elapsed) + " s";
    }
    report(7, "200 recovery round-trips per (p,d) configuration, exact for degree <= p-1", ok, detail);
}

void criterion_8_sample_sufficiency() {
    bool ok = true;
    std::string detail;
    std::mt19937_64 rng(7177);
    for (auto [p, d] : std::vector<std::pair<u64, unsigned>>{{2, 4}, {2, 5}, {3, 4}}) {
        const auto xs = required_samples(p, d);
        const u64 expected = prime_power(p, (d - 1 + p - 1) / p + 1);
        if (xs.size() != expected) {
            ok = false;
            detail = "sample count off at p=" + std::to_string(p) + " d=" + std::to_string(d);
            break;
        }
        for (int t = 0; t < 50 && ok; ++t) {
            IntPoly f = random_perm_poly(p, d, static_cast<unsigned>(p * d - 1), rng);
            SampleSet set{p, d, {}};
            for (u64 x : xs) set.samples.emplace_back(x, f.eval(static_cast<i64>(x)));
            if (induced_table(recover_from_samples(set).seed) != induced_table(f)) {
                ok = false;
                detail = "p=" + std::to_string(p) + " d=" + std::to_string(d);
            }
        }
        if (!ok) break;
    }
    report(8, "recovery from exactly p^(ceil((d-1)/p)+1) structured samples reproduces full tables", ok,
           detail);
}

void criterion_9_hierarchy() {
    bool ok = true;
    std::string detail;
    u64 decomposed = 0;
    for (auto [p, d] : std::vector<std::pair<u64, unsigned>>{{3, 2}, {2, 4}}) {
        const u64 m = prime_power(p, d);
        std::vector<u64> coeffs(5, 0);
        while (ok) {
            IntPoly f(m, coeffs);
            if (check_prime_power(f, p, d).is_permutation) {
                decompose(f, p, d);  // throws TheoremViolationError on any failed claim
                ++decomposed;
            }
            std::size_t k = 1;
            while (k < coeffs.size() && ++coeffs[k] == m) coeffs[k++] = 0;
            if (k == coeffs.size()) break;
        }
    }
    report(9, "all six structural claims verified on every permutation of degree <= 4 mod 9 and mod 16 (" +
                  std::to_string(decomposed) + " decompositions)", ok, detail);
}

void criterion_10_determinants() {
    bool ok = true;
    std::string detail;
    for (std::size_t sz = 1; sz <= 3 && ok; ++sz) {
        std::vector<std::size_t> idx(sz, 0);
        while (ok) {
            std::vector<i64> nodes;
            for (std::size_t v : idx) nodes.push_back(static_cast<i64>(v) + 1);
            if (paired_power_det(nodes) != mat_det_exact(paired_power_matrix(nodes)) ||
                paired_power_det_shifted(nodes) != mat_det_exact(paired_power_matrix_shifted(nodes))) {
                ok = false;
                detail = "paired-power mismatch";
                break;
            }
            for (u64 l = 1; l <= 2 && ok; ++l)
                for (u64 n = l; n <= l + 2 && ok; ++n)
                    if (binom_block_det(nodes, n, l) != mat_det_exact(binom_block_matrix(nodes, n, l))) {
                        ok = false;
                        detail = "binomial-block mismatch";
                    }
            std::size_t k = 0;
            while (k < sz && ++idx[k] == 3) idx[k++] = 0;
            if (k == sz) break;
        }
    }
    report(10, "closed-form determinants equal exact determinants of the assembled matrices", ok, detail);
}

void criterion_11_crt() {
    bool ok = true;
    std::string detail;
    IntPoly combined = crt_build_poly({IntPoly(4, std::vector<u64>{0, 1}), IntPoly(9, std::vector<u64>{0, 2})});
    if (combined != IntPoly(36, std::vector<u64>{0, 29})) {
        ok = false;
        detail = "combined " + format_poly(combined);
    } else if (!check_any(combined).is_permutation) {
        ok = false;
        detail = "combined polynomial is not a permutation";
    } else {
        IntPoly back = recover_composite(induced_table(combined));
        if (induced_table(back) != induced_table(combined)) {
            ok = false;
            detail = "recover_composite did not reproduce the table";
        }
    }
    report(11, "crt_build_poly(x mod 4, 2x mod 9) = 29x mod 36, verified and recovered back", ok, detail);
}

}  // namespace

int main() {
    criterion(1, "rc6", [] { criterion_1_rc6(); });
    criterion(2, "census 2^d", [] { criterion_2_census_2d(); });
    criterion(3, "census 3^d", [] { criterion_3_census_3d(); });
    criterion(4, "soundness sweep", [] { criterion_4_soundness_sweep(); });
    criterion(5, "enhanced Fermat", [] { criterion_5_fermat_enhanced(); });
    criterion(6, "null counts", [] { criterion_6_null_counts(); });
    criterion(7, "recovery round-trip", [] { criterion_7_recovery_roundtrip(); });
    criterion(8, "sample sufficiency", [] { criterion_8_sample_sufficiency(); });
    criterion(9, "hierarchy verification", [] { criterion_9_hierarchy(); });
    criterion(10, "determinant closed forms", [] { criterion_10_determinants(); });
    criterion(11, "crt build and recover", [] { criterion_11_crt(); });

    if (failures == 0) {
        std::puts("acceptance: all criteria passed");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", failures);
    return 1;
}
