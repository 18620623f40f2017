#pragma once

// JSON views of library values. Integers that can outgrow 64 bits are emitted
// as decimal strings next to their canonical factored text.

#include <json.hpp>

#include "totient_ratio/oracle.hpp"
#include "totient_ratio/representation.hpp"
#include "totient_ratio/text.hpp"

namespace totient_ratio {

inline nlohmann::json to_json(const ValuationProgression& prog) {
    nlohmann::json bound = nullptr;
    if (prog.min) {
        bound = {{"min", *prog.min}};
    } else if (prog.max) {
        bound = {{"max", *prog.max}};
    }
    return {
        {"case_id", to_string(prog.case_id)},
        {"progression", {{"offset", prog.offset}, {"modulus", prog.modulus}}},
        {"bound_constraint", bound},
    };
}

inline nlohmann::json to_json(const ObstructionCertificate& cert) {
    nlohmann::json table = nlohmann::json::array();
    for (const auto& prog : cert.case_table) {
        table.push_back(to_json(prog));
    }
    return {
        {"witness", format(cert.witness)},
        {"case", to_string(cert.case_tag)},
        {"p", cert.p},
        {"case_table", std::move(table)},
    };
}

inline nlohmann::json to_json(const ImproperWitness& w) {
    return {{"q", w.q}, {"s", w.s}, {"d1_exponent", w.d1_exponent}, {"d2_exponent", w.d2_exponent}};
}

inline nlohmann::json pair_json(const FactoredNat& m, const FactoredNat& n) {
    return {
        {"m", to_decimal(m)},
        {"n", to_decimal(n)},
        {"m_factored", format(m)},
        {"n_factored", format(n)},
    };
}

inline nlohmann::json to_json(const Params& params) {
    return {
        {"a", params.a()},
        {"b", params.b()},
        {"k", format(params.k())},
        {"l", format(params.l())},
    };
}

inline nlohmann::json pairs_json(const std::vector<oracle::Pair>& pairs) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [m, n] : pairs) {
        out.push_back({{"m", std::to_string(m)}, {"n", std::to_string(n)}});
    }
    return out;
}

} // namespace totient_ratio
