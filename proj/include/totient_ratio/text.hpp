#pragma once

// Canonical text form of factored values and its parser.
//
//   value   := term ("*" term)* | integer | integer "/" integer
//   term    := prime ("^" nonzero_integer)?
//
// Whitespace is insignificant. The canonical form lists primes ascending,
// joined by " * ", with "^e" only when e != 1; the value 1 prints as "1".

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>

#include "totient_ratio/factored.hpp"

namespace totient_ratio {

template <bool Signed>
std::string format(const Factored<Signed>& x) {
    if (x.is_one()) {
        return "1";
    }
    std::string out;
    for (const auto& [p, e] : x.entries()) {
        if (!out.empty()) {
            out += " * ";
        }
        out += std::to_string(p);
        if (e != 1) {
            out += '^';
            out += std::to_string(e);
        }
    }
    return out;
}

/// Exact decimal expansion, without any width limit.
inline std::string to_decimal(const FactoredNat& x) {
    boost::multiprecision::cpp_int value = 1;
    for (const auto& [p, e] : x.entries()) {
        value *= boost::multiprecision::pow(boost::multiprecision::cpp_int(p),
                                            static_cast<unsigned>(e));
    }
    return value.str();
}

/// "u" or "u/v" in lowest terms, decimal.
inline std::string to_decimal(const FactoredRational& x) {
    const FactoredNat den = denominator(x);
    std::string out = to_decimal(numerator(x));
    if (!den.is_one()) {
        out += '/';
        out += to_decimal(den);
    }
    return out;
}

namespace detail {

inline std::string strip_spaces(std::string_view text) {
    std::string out;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) {
            out += ch;
        }
    }
    return out;
}

inline bool all_digits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char ch : s) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) {
            return false;
        }
    }
    return true;
}

inline std::uint64_t parse_unsigned(std::string_view s, std::string_view context) {
    if (!all_digits(s)) {
        throw ParseError("expected a decimal integer in '" + std::string(context) + "'");
    }
    std::uint64_t value = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec == std::errc::result_out_of_range) {
        throw InputTooLarge("integer '" + std::string(s) + "' does not fit in 64 bits");
    }
    if (ec != std::errc{} || end != s.data() + s.size()) {
        throw ParseError("malformed integer in '" + std::string(context) + "'");
    }
    return value;
}

inline exponent_t parse_exponent(std::string_view s, std::string_view context) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    std::uint64_t magnitude = parse_unsigned(s, context);
    if (magnitude > static_cast<std::uint64_t>(INT64_MAX)) {
        throw ParseError("exponent out of range in '" + std::string(context) + "'");
    }
    auto e = static_cast<exponent_t>(magnitude);
    return negative ? -e : e;
}

inline FactoredNat factorize_positive(std::uint64_t n, std::string_view context) {
    if (n == 0) {
        throw ParseError("zero is not a positive value: '" + std::string(context) + "'");
    }
    return factorize(n);
}

} // namespace detail

/// Parses any of the three accepted spellings of a positive rational.
inline FactoredRational parse_factored(std::string_view text) {
    const std::string s = detail::strip_spaces(text);
    if (s.empty()) {
        throw ParseError("empty value");
    }
    if (auto slash = s.find('/'); slash != std::string::npos) {
        const std::string_view view(s);
        const auto u = detail::parse_unsigned(view.substr(0, slash), text);
        const auto v = detail::parse_unsigned(view.substr(slash + 1), text);
        return FactoredRational(detail::factorize_positive(u, text)) /
               FactoredRational(detail::factorize_positive(v, text));
    }
    if (detail::all_digits(s)) {
        return detail::factorize_positive(detail::parse_unsigned(s, text), text);
    }
    std::vector<FactoredRational::entry_type> entries;
    std::string_view rest(s);
    while (true) {
        const auto star = rest.find('*');
        const std::string_view term = rest.substr(0, star);
        const auto caret = term.find('^');
        const auto base = detail::parse_unsigned(term.substr(0, caret), text);
        exponent_t e = 1;
        if (caret != std::string_view::npos) {
            e = detail::parse_exponent(term.substr(caret + 1), text);
            if (e == 0) {
                throw ParseError("zero exponent in '" + std::string(text) + "'");
            }
        }
        if (!is_prime(base)) {
            throw ParseError(std::to_string(base) + " is not prime in '" + std::string(text) + "'");
        }
        entries.emplace_back(base, e);
        if (star == std::string_view::npos) {
            break;
        }
        rest.remove_prefix(star + 1);
    }
    return FactoredRational(std::move(entries));
}

/// As parse_factored, but the value must be a positive integer.
inline FactoredNat parse_factored_nat(std::string_view text) {
    const FactoredRational value = parse_factored(text);
    if (!denominator(value).is_one()) {
        throw ParseError("expected a positive integer, got '" + std::string(text) + "'");
    }
    return to_natural(value);
}

} // namespace totient_ratio
