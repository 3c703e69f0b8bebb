#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "permpoly/census.hpp"
#include "permpoly/error.hpp"
#include "permpoly/hierarchy.hpp"
#include "permpoly/nullpoly.hpp"
#include "permpoly/permtest.hpp"
#include "permpoly/poly.hpp"
#include "permpoly/recover.hpp"

// Batch command-line surface. Exit status 0 on success, 1 on a domain
// error (one diagnostic line on the error stream), 2 on a usage error.
// Machine format emits exactly one key=value record per line.

namespace permpoly::cli {

struct Options {
    bool machine = false;
    u64 table_budget = kDefaultTableBudget;
    u64 tuple_budget = kDefaultCensusBudget;
};

namespace detail {

// Table files: line k holds f(k). Sample files: "x y" pairs. Both accept
// blank lines and '#' comments.
inline std::vector<std::vector<u64>> read_number_lines(const std::string& path, std::size_t fields) {
    std::ifstream in(path);
    if (!in) throw InvalidArgumentError("cannot open input file '" + path + "'");
    std::vector<std::vector<u64>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::vector<u64> row;
        u64 v = 0;
        while (ss >> v) row.push_back(v);
        if (row.empty()) continue;
        if (row.size() != fields)
            throw InvalidArgumentError("line " + std::to_string(line_no) + " of '" + path + "': expected " +
                                       std::to_string(fields) + " number(s)");
        rows.push_back(std::move(row));
    }
    return rows;
}

inline FuncTable read_table_file(const std::string& path, u64 modulus) {
    auto rows = read_number_lines(path, 1);
    if (rows.size() != modulus)
        throw InvalidArgumentError("table file holds " + std::to_string(rows.size()) +
                                   " values, expected " + std::to_string(modulus));
    FuncTable t;
    t.modulus = modulus;
    t.values.reserve(modulus);
    for (const auto& row : rows) t.values.push_back(row[0] % modulus);
    return t;
}

inline std::string ratio_string(const BigRat& r) {
    std::ostringstream ss;
    ss << boost::multiprecision::numerator(r) << "/" << boost::multiprecision::denominator(r);
    return ss.str();
}

inline void print_verdict(const PermVerdict& v, u64 modulus, const Options& opt, std::ostream& out) {
    if (opt.machine) {
        out << "result=" << (v.is_permutation ? "permutation" : "not_permutation")
            << " method=" << to_string(v.method);
        if (v.witness) {
            if (const auto* c = std::get_if<CollisionWitness>(&*v.witness)) {
                out << " witness_x1=" << c->x1 << " witness_x2=" << c->x2 << " witness_mod=" << c->modulus;
            } else {
                const auto& cw = std::get<ConditionWitness>(*v.witness);
                out << " condition_group=" << cw.group << " condition_i=" << cw.i << " condition_j=" << cw.j
                    << " condition_mod=" << cw.modulus;
            }
        }
        out << "\n";
        return;
    }
    if (v.is_permutation) {
        out << "PERMUTATION (method=" << to_string(v.method) << ")\n";
        return;
    }
    if (const auto* c = std::get_if<CollisionWitness>(&*v.witness)) {
        out << "NOT A PERMUTATION witness " << c->x1 << " " << c->x2;
        if (c->modulus != modulus) out << " (mod " << c->modulus << ")";
        out << "\n";
        return;
    }
    out << "NOT A PERMUTATION (method=" << to_string(v.method) << ") " << describe(*v.witness) << "\n";
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"permutation polynomials modulo m"};
    app.require_subcommand(1);

    Options opt;
    std::string format = "plain";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"plain", "machine"}))
        ->capture_default_str();
    app.add_option("--table-budget", opt.table_budget, "largest modulus a value table may have")
        ->envname("PERMPOLY_TABLE_BUDGET")
        ->capture_default_str();
    app.add_option("--tuple-budget", opt.tuple_budget, "largest coefficient space a scan may walk")
        ->envname("PERMPOLY_TUPLE_BUDGET")
        ->capture_default_str();

    // check
    auto* check = app.add_subcommand("check", "test whether a polynomial permutes Z_m");
    u64 check_m = 0;
    std::string check_f;
    bool check_brute = false;
    check->add_option("-m,--modulus", check_m, "modulus")->required();
    check->add_option("-f,--poly", check_f, "ascending coefficients a0,a1,...")->required();
    check->add_flag("--brute", check_brute, "force the brute-force table test");

    // count
    auto* count = app.add_subcommand("count", "count permutation polynomials of degree <= n mod p^d");
    u64 count_p = 0;
    unsigned count_d = 0, count_n = 0;
    bool count_exh = false, count_no_const = false;
    count->add_option("-p,--prime", count_p, "prime")->required();
    count->add_option("-d,--exponent", count_d, "exponent")->required();
    count->add_option("-n,--degree", count_n, "degree bound")->required();
    count->add_flag("--exhaustive", count_exh, "force the exhaustive oracle");
    count->add_flag("--no-constant", count_no_const, "exclude the constant term from the counts");

    // recover
    auto* recover = app.add_subcommand("recover", "recover a polynomial from induced values");
    u64 rec_p = 0, rec_m = 0;
    unsigned rec_d = 0;
    std::string rec_table, rec_samples;
    recover->add_option("-p,--prime", rec_p, "prime");
    recover->add_option("-d,--exponent", rec_d, "exponent");
    recover->add_option("-m,--modulus", rec_m, "composite modulus (alternative to -p/-d)");
    recover->add_option("--table", rec_table, "file with f(k) on line k");
    recover->add_option("--samples", rec_samples, "file with 'x y' pairs");

    // null
    auto* null_cmd = app.add_subcommand("null", "enumerate null polynomials of degree <= n mod m");
    u64 null_m = 0;
    unsigned null_n = 0;
    null_cmd->add_option("-m,--modulus", null_m, "modulus")->required();
    null_cmd->add_option("-n,--degree", null_n, "degree bound")->required();

    // omega
    auto* omega_cmd = app.add_subcommand("omega", "least degree of a nonzero null polynomial mod m");
    u64 omega_m = 0;
    unsigned omega_max = 16;
    bool omega_monic = false;
    omega_cmd->add_option("-m,--modulus", omega_m, "modulus")->required();
    omega_cmd->add_flag("--monic", omega_monic, "restrict to monic null polynomials");
    omega_cmd->add_option("--max-degree", omega_max, "search cutoff")->capture_default_str();

    // equiv
    auto* equiv_cmd = app.add_subcommand("equiv", "test pointwise equivalence of two polynomials");
    u64 equiv_m = 0;
    std::string equiv_f, equiv_g;
    equiv_cmd->add_option("-m,--modulus", equiv_m, "modulus")->required();
    equiv_cmd->add_option("-f", equiv_f, "first polynomial")->required();
    equiv_cmd->add_option("-g", equiv_g, "second polynomial")->required();

    // decompose
    auto* dec_cmd = app.add_subcommand("decompose", "hierarchical decomposition of a permutation mod p^d");
    u64 dec_p = 0;
    unsigned dec_d = 0;
    std::string dec_f;
    dec_cmd->add_option("-p,--prime", dec_p, "prime")->required();
    dec_cmd->add_option("-d,--exponent", dec_d, "exponent (>= 2)")->required();
    dec_cmd->add_option("-f,--poly", dec_f, "ascending coefficients, zero constant")->required();

    // crt
    auto* crt_cmd = app.add_subcommand("crt", "combine per-prime-power polynomials");
    std::vector<std::string> crt_parts;
    crt_cmd->add_option("--part", crt_parts, "one part as MODULUS:coeffs")->required()->expected(-1);

    std::vector<const char*> argv;
    argv.push_back("permpoly");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }
    opt.machine = format == "machine";

    try {
        if (*check) {
            IntPoly f = parse_poly(check_f, check_m);
            PermVerdict v = check_brute ? is_perm_bruteforce(f, opt.table_budget)
                                        : check_any(f, opt.table_budget);
            detail::print_verdict(v, check_m, opt, out);
            return 0;
        }
        if (*count) {
            if (!is_prime(count_p)) throw InvalidArgumentError("count: -p must be prime");
            CensusResult r = count_exh || count_d < 2
                                 ? count_exhaustive(prime_power(count_p, count_d), count_n,
                                                    !count_no_const, opt.tuple_budget)
                                 : count_condition_based(count_p, count_d, count_n, !count_no_const,
                                                         opt.tuple_budget);
            out << "N_pp=" << r.n_pp << " N_p=" << r.n_p << " ratio=" << detail::ratio_string(r.ratio)
                << " method=" << to_string(r.method) << "\n";
            return 0;
        }
        if (*recover) {
            const bool composite = rec_m != 0;
            if (!composite && (rec_p == 0 || rec_d == 0))
                throw InvalidArgumentError("recover needs -p and -d, or -m for a composite modulus");
            if (rec_table.empty() == rec_samples.empty())
                throw InvalidArgumentError("recover needs exactly one of --table or --samples");

            if (composite) {
                if (rec_table.empty())
                    throw InvalidArgumentError("composite recovery needs a full --table file");
                FuncTable t = detail::read_table_file(rec_table, rec_m);
                IntPoly seed = recover_composite(t);
                if (opt.machine) {
                    out << "seed=" << format_poly(seed) << " modulus=" << rec_m << "\n";
                } else {
                    out << "seed polynomial (ascending coefficients): " << format_poly(seed) << "\n";
                }
                return 0;
            }

            const u64 modulus = prime_power(rec_p, rec_d);
            RecoveryResult r = [&] {
                if (!rec_table.empty()) {
                    FuncTable t = detail::read_table_file(rec_table, modulus);
                    if (rec_d == 1)
                        return RecoveryResult{interpolate_function_mod_p(t, rec_p), std::nullopt, 0};
                    if (rec_d <= rec_p) return recover_block(t, rec_p, rec_d);
                    return recover_recursive(t, rec_p, rec_d);
                }
                SampleSet set;
                set.p = rec_p;
                set.d = rec_d;
                for (const auto& row : detail::read_number_lines(rec_samples, 2))
                    set.samples.emplace_back(row[0], row[1]);
                return recover_from_samples(set);
            }();
            std::string cls = r.equivalence_class_size ? r.equivalence_class_size->str() : "unknown";
            if (opt.machine) {
                out << "seed=" << format_poly(r.seed) << " class_size=" << cls
                    << " ops=" << r.operation_count << "\n";
            } else {
                out << "seed polynomial (ascending coefficients): " << format_poly(r.seed) << "\n";
                out << "equivalence class size: " << cls << "\n";
            }
            return 0;
        }
        if (*null_cmd) {
            NullSearchBudget budget;
            budget.max_tuples = opt.tuple_budget;
            budget.max_degree = std::max(budget.max_degree, null_n);
            for (const IntPoly& f : enumerate_null(null_m, null_n, budget)) out << format_poly(f) << "\n";
            return 0;
        }
        if (*omega_cmd) {
            NullSearchBudget budget;
            budget.max_tuples = opt.tuple_budget;
            budget.max_degree = omega_max;
            unsigned w = omega(omega_m, omega_monic, budget);
            if (opt.machine) {
                out << "omega=" << w << "\n";
            } else {
                out << w << "\n";
            }
            return 0;
        }
        if (*equiv_cmd) {
            bool eq = equivalent(parse_poly(equiv_f, equiv_m), parse_poly(equiv_g, equiv_m),
                                 opt.table_budget);
            if (opt.machine) {
                out << "equivalent=" << (eq ? "true" : "false") << "\n";
            } else {
                out << (eq ? "EQUIVALENT" : "NOT EQUIVALENT") << "\n";
            }
            return 0;
        }
        if (*dec_cmd) {
            IntPoly f = parse_poly(dec_f, prime_power(dec_p, dec_d));
            HierarchyReport r = decompose(f, dec_p, dec_d, opt.table_budget);
            if (opt.machine) {
                for (u64 i = 0; i < r.p; ++i) {
                    out << "block=" << i << " offset=" << r.offsets[i]
                        << " derived=" << format_poly(r.derived[i]) << " levels_fixed=";
                    for (unsigned idx = 0; idx < r.d; ++idx)
                        out << (idx ? "," : "") << (r.resolution_fixed[i][idx] ? "1" : "0");
                    out << "\n";
                }
            } else {
                out << render(r);
            }
            return 0;
        }
        if (*crt_cmd) {
            std::vector<IntPoly> parts;
            for (const std::string& part : crt_parts) {
                const std::size_t colon = part.find(':');
                if (colon == std::string::npos)
                    throw InvalidArgumentError("part '" + part + "' is not MODULUS:coeffs");
                u64 modulus = 0;
                const std::string mod_text = part.substr(0, colon);
                auto [ptr, ec] = std::from_chars(mod_text.data(), mod_text.data() + mod_text.size(), modulus);
                if (ec != std::errc{} || ptr != mod_text.data() + mod_text.size())
                    throw InvalidArgumentError("bad modulus in part '" + part + "'");
                parts.push_back(parse_poly(part.substr(colon + 1), modulus));
            }
            IntPoly combined = crt_build_poly(parts);
            out << "modulus=" << combined.modulus() << " poly=" << format_poly(combined) << "\n";
            return 0;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

}  // namespace permpoly::cli
