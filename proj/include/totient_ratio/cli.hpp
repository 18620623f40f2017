#pragma once

// Command dispatch for the totient-ratio tool.
//
// Exit codes: 0 success, 1 a valid query whose answer is "no" or "none",
// 2 usage or input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "totient_ratio/serialize.hpp"
#include "totient_ratio/oracle.hpp"
#include "totient_ratio/representation.hpp"
#include "totient_ratio/text.hpp"
#include "totient_ratio/totient.hpp"

namespace totient_ratio::cli {

struct CliResult {
    int exit_code = 0;
    nlohmann::json payload;
    std::string text;

    /// What the tool prints for the requested format.
    std::string rendered(bool as_json) const {
        return as_json ? payload.dump(2) + "\n" : text;
    }
};

namespace detail {

struct Shared {
    long long a = 0;
    long long b = 0;
    std::string k = "1";
    std::string l = "1";
    std::string format = "text";

    Params params() const { return Params(a, b, parse_factored_nat(k), parse_factored_nat(l)); }
};

inline void add_shared(CLI::App* cmd, Shared& shared) {
    cmd->add_option("--a", shared.a, "exponent on m")->required();
    cmd->add_option("--b", shared.b, "exponent on n")->required();
    cmd->add_option("--k", shared.k, "multiplier k, integer or factored text")->capture_default_str();
    cmd->add_option("--l", shared.l, "multiplier l, integer or factored text")->capture_default_str();
    cmd->add_option("--format", shared.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
}

inline nlohmann::json query(const std::string& command, const Params& params) {
    nlohmann::json q = to_json(params);
    q["command"] = command;
    return q;
}

inline std::string certificate_text(const ObstructionCertificate& cert) {
    std::ostringstream out;
    out << "witness: " << format(cert.witness) << " (" << to_string(cert.case_tag) << ")\n";
    out << "achievable v_" << cert.p << " values:\n";
    for (const auto& prog : cert.case_table) {
        out << "  " << to_string(prog.case_id) << ": = " << prog.offset << " mod " << prog.modulus;
        if (prog.min) {
            out << ", >= " << *prog.min;
        }
        if (prog.max) {
            out << ", <= " << *prog.max;
        }
        out << '\n';
    }
    return out.str();
}

inline CliResult decide(const Shared& shared) {
    const Params params = shared.params();
    const auto verdict = is_universal(params);
    CliResult out;
    out.exit_code = verdict.universal ? 0 : 1;
    out.payload = {{"query", query("decide", params)},
                   {"result", {{"universal", verdict.universal}, {"reason", to_string(verdict.reason)}}}};
    out.text = std::string("universal: ") + (verdict.universal ? "yes" : "no") + " (" +
               std::string(to_string(verdict.reason)) + ")\n";
    return out;
}

inline CliResult represent(const Shared& shared, const std::string& target, bool force_proper) {
    const Params params = shared.params();
    const FactoredRational r = parse_factored(target);
    nlohmann::json q = query("represent", params);
    q["r"] = format(r);
    q["proper_requested"] = force_proper;
    if (force_proper && params.gcd() == 1) {
        throw PreconditionViolation("--proper needs gcd(a, b) >= 2; proper representations are not unique otherwise");
    }

    std::optional<Representation> rep;
    std::string method;
    NotRepresentable failure;
    if (params.gcd() == 1) {
        rep = reduce_to_proper(construct_coprime(r, params));
        method = "coprime";
    } else {
        method = "proper";
        auto built = construct_proper(r, params);
        if (auto* found = std::get_if<Representation>(&built)) {
            rep = std::move(*found);
        } else {
            failure = std::get<NotRepresentable>(std::move(built));
        }
    }

    CliResult out;
    if (rep) {
        const bool verified = phi_ratio(params, rep->m, rep->n) == r;
        const bool proper = !is_proper(*rep).has_value();
        nlohmann::json result = pair_json(rep->m, rep->n);
        result["representable"] = true;
        result["proper"] = proper;
        result["verified"] = verified;
        result["method"] = method;
        out.payload = {{"query", q}, {"result", result}};
        std::ostringstream text;
        text << "m = " << to_decimal(rep->m) << " = " << format(rep->m) << '\n'
             << "n = " << to_decimal(rep->n) << " = " << format(rep->n) << '\n'
             << "ratio = " << format(r) << (verified ? " (verified)" : " (MISMATCH)") << '\n'
             << "proper: " << (proper ? "yes" : "no") << '\n';
        out.text = text.str();
        return out;
    }

    out.exit_code = 1;
    nlohmann::json trace = failure.trace;
    out.payload = {{"query", q}, {"result", {{"representable", false}, {"trace", trace}}}};
    out.text = "not representable: " + format(r) + "\n";
    if (auto cert = certify_non_representable(r, params)) {
        out.payload["certificate"] = to_json(*cert);
        out.payload["result"]["certificate_valid"] = verify_certificate(*cert, params);
        out.text += certificate_text(*cert);
    } else {
        for (const auto& line : failure.trace) {
            out.text += "  " + line + '\n';
        }
    }
    return out;
}

inline CliResult check(const Shared& shared, const std::string& m_text, const std::string& n_text) {
    const Params params = shared.params();
    const Representation rep{parse_factored_nat(m_text), parse_factored_nat(n_text), params};
    const FactoredRational ratio = phi_ratio(params, rep.m, rep.n);
    const auto witness = is_proper(rep);

    nlohmann::json q = query("check", params);
    q["m"] = to_decimal(rep.m);
    q["n"] = to_decimal(rep.n);
    nlohmann::json result = {{"ratio", format(ratio)}, {"ratio_decimal", to_decimal(ratio)},
                             {"proper", !witness.has_value()}};
    std::ostringstream text;
    text << "ratio = " << format(ratio) << " = " << to_decimal(ratio) << '\n'
         << "proper: " << (witness ? "no" : "yes") << '\n';
    if (witness) {
        const Representation reduced = reduce_to_proper(rep);
        result["witness"] = to_json(*witness);
        result["reduced"] = pair_json(reduced.m, reduced.n);
        text << "witness: q = " << witness->q << ", s = " << witness->s << '\n'
             << "reduced: m = " << to_decimal(reduced.m) << ", n = " << to_decimal(reduced.n) << '\n';
    }
    CliResult out;
    out.payload = {{"query", q}, {"result", result}};
    out.text = text.str();
    return out;
}

inline CliResult witness(const Shared& shared) {
    const Params params = shared.params();
    const auto verdict = is_universal(params);
    CliResult out;
    if (verdict.universal) {
        out.exit_code = 1;
        out.payload = {{"query", query("witness", params)},
                       {"result", {{"message", "universal"}, {"reason", to_string(verdict.reason)}}}};
        out.text = "universal\n";
        return out;
    }
    const auto [w, cert] = obstruction_witness(params);
    const bool valid = verify_certificate(cert, params);
    out.payload = {{"query", query("witness", params)},
                   {"result", {{"witness", format(w)}, {"case", to_string(cert.case_tag)},
                               {"certificate_valid", valid}}},
                   {"certificate", to_json(cert)}};
    out.text = certificate_text(cert) + "certificate valid: " + (valid ? "yes" : "no") + "\n";
    return out;
}

struct OracleArgs {
    std::string mode;
    std::string target;
    std::uint64_t bound = 40;
    bool dense = false;
};

inline CliResult run_oracle(const Shared& shared, const OracleArgs& args) {
    CliResult out;
    std::ostringstream text;
    if (args.mode == "injectivity") {
        const auto found = oracle::check_totient_power_injectivity(shared.a, shared.b, args.bound);
        out.exit_code = found.empty() ? 0 : 1;
        out.payload = {{"query", {{"command", "oracle injectivity"}, {"a", shared.a}, {"b", shared.b},
                                  {"bound", args.bound}}},
                       {"result", {{"counterexamples", pairs_json(found)}, {"count", found.size()}}}};
        text << found.size() << " counterexamples with m, n <= " << args.bound << '\n';
        for (const auto& [m, n] : found) {
            text << m << '\t' << n << '\n';
        }
        out.text = text.str();
        return out;
    }

    const Params params = shared.params();
    nlohmann::json q = query("oracle " + args.mode, params);
    q["bound"] = args.bound;
    if (args.mode == "enumerate") {
        const auto table = oracle::enumerate(params, args.bound);
        nlohmann::json entries = nlohmann::json::array();
        for (const auto& entry : table.entries) {
            entries.push_back({{"m", to_decimal(entry.m)}, {"n", to_decimal(entry.n)}, {"ratio", format(entry.ratio)}});
        }
        out.payload = {{"query", q}, {"result", {{"count", table.entries.size()}, {"entries", entries}}}};
        out.text = oracle::serialize(table);
        return out;
    }
    if (args.target.empty()) {
        throw ParseError("oracle " + args.mode + " needs a target rational");
    }
    const FactoredRational r = parse_factored(args.target);
    q["r"] = format(r);
    std::vector<oracle::Pair> pairs;
    if (args.mode == "find") {
        pairs = oracle::brute_force_find(r, params, args.bound);
    } else if (args.mode == "unique") {
        const auto strategy = args.dense ? oracle::SearchStrategy::dense : oracle::SearchStrategy::smooth_support;
        q["strategy"] = args.dense ? "dense" : "smooth_support";
        pairs = oracle::proper_reps_within(r, params, args.bound, strategy);
    } else {
        throw ParseError("unknown oracle mode '" + args.mode + "'");
    }
    out.exit_code = pairs.empty() ? 1 : 0;
    out.payload = {{"query", q}, {"result", {{"pairs", pairs_json(pairs)}, {"count", pairs.size()}}}};
    text << pairs.size() << " pairs with m, n <= " << args.bound << '\n';
    for (const auto& [m, n] : pairs) {
        text << m << '\t' << n << '\n';
    }
    out.text = text.str();
    return out;
}

inline CliResult error_result(int code, const std::string& message) {
    CliResult out;
    out.exit_code = code;
    out.payload = {{"error", message}};
    out.text = "error: " + message + "\n";
    return out;
}

} // namespace detail

/// Parses args (without the program name) and runs the selected command.
/// `as_json` reports whether --format json was requested.
inline CliResult run(const std::vector<std::string>& args, bool* as_json = nullptr) {
    CLI::App app{"Representations of positive rationals as phi(k m^a) / phi(l n^b)", "totient-ratio"};
    app.require_subcommand(1);

    detail::Shared shared;
    std::string target;
    std::string m_text;
    std::string n_text;
    bool force_proper = false;
    detail::OracleArgs oracle_args;

    auto* decide = app.add_subcommand("decide", "is every positive rational representable?");
    detail::add_shared(decide, shared);

    auto* represent = app.add_subcommand("represent", "construct a representation of r");
    represent->add_option("r", target, "target rational")->required();
    represent->add_flag("--proper", force_proper, "require the unique proper representation (gcd(a, b) >= 2)");
    detail::add_shared(represent, shared);

    auto* check = app.add_subcommand("check", "evaluate and test properness of (m, n)");
    check->add_option("--m", m_text)->required();
    check->add_option("--n", n_text)->required();
    detail::add_shared(check, shared);

    auto* witness = app.add_subcommand("witness", "certified non-representable rational");
    detail::add_shared(witness, shared);

    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force cross-checks");
    oracle_cmd->add_option("mode", oracle_args.mode, "enumerate | find | unique | injectivity")
        ->required()
        ->check(CLI::IsMember({"enumerate", "find", "unique", "injectivity"}));
    oracle_cmd->add_option("target", oracle_args.target, "target rational for find / unique");
    oracle_cmd->add_option("--bound", oracle_args.bound, "search bound for m and n")->capture_default_str();
    oracle_cmd->add_flag("--dense", oracle_args.dense, "unique: search every m, n instead of the prime support");
    detail::add_shared(oracle_cmd, shared);

    std::vector<std::string> argv_storage{"totient-ratio"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_storage) {
        argv.push_back(s.data());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        return {0, {{"help", app.help()}}, app.help()};
    } catch (const CLI::ParseError& e) {
        return detail::error_result(2, e.what());
    }
    if (as_json != nullptr) {
        *as_json = shared.format == "json";
    }

    try {
        if (*decide) {
            return detail::decide(shared);
        }
        if (*represent) {
            return detail::represent(shared, target, force_proper);
        }
        if (*check) {
            return detail::check(shared, m_text, n_text);
        }
        if (*witness) {
            return detail::witness(shared);
        }
        return detail::run_oracle(shared, oracle_args);
    } catch (const Error& e) {
        return detail::error_result(2, e.what());
    }
}

} // namespace totient_ratio::cli
