#pragma once

// Brute-force ground truth for the representation module.
//
// Totients here never go through the factored totient formula: phi(j) is a
// direct coprime count (or, for large searches, a sieve), and powers are
// lifted with phi(c i^e) = i^(e-1) phi(c i), valid because every prime of
// i^(e-1) divides c i. Values are exact big integers.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <future>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "totient_ratio/factored.hpp"
#include "totient_ratio/representation.hpp"
#include "totient_ratio/text.hpp"
#include "totient_ratio/totient.hpp"

namespace totient_ratio::oracle {

using BigInt = boost::multiprecision::cpp_int;
using Pair = std::pair<std::uint64_t, std::uint64_t>;

struct Limits {
    std::uint64_t table = 200;         // enumerate()
    std::uint64_t search = 100'000;    // find / unique / injectivity
    std::uint64_t sieve = 50'000'000;  // largest c * bound sieved for totients
    std::uint64_t base = 1'000'000;    // largest k or l accepted
    std::chrono::milliseconds time_budget{0}; // 0 disables the wall-clock guard
};

enum class SearchStrategy {
    // Only m, n whose primes are at most max(P(r), P(kl)); a proper
    // representation never uses a larger prime when min(a, b) >= 2.
    smooth_support,
    // Every 1 <= m, n <= bound.
    dense,
};

struct Entry {
    FactoredNat m;
    FactoredNat n;
    FactoredRational ratio;
};

struct EnumerationTable {
    Params params;
    std::uint64_t bound = 0;
    std::vector<Entry> entries;
};

/// #{1 <= j <= n : gcd(j, n) = 1}.
inline std::uint64_t count_totient(std::uint64_t n) {
    std::uint64_t count = 0;
    for (std::uint64_t j = 1; j <= n; ++j) {
        if (std::gcd(j, n) == 1) {
            ++count;
        }
    }
    return count;
}

/// phi(0..limit) by the multiplicative sieve.
inline std::vector<std::uint64_t> sieve_totients(std::uint64_t limit) {
    std::vector<std::uint64_t> phi(limit + 1);
    std::iota(phi.begin(), phi.end(), std::uint64_t{0});
    for (std::uint64_t p = 2; p <= limit; ++p) {
        if (phi[p] != p) {
            continue;
        }
        for (std::uint64_t j = p; j <= limit; j += p) {
            phi[j] -= phi[j] / p;
        }
    }
    return phi;
}

namespace detail {

class Deadline {
public:
    explicit Deadline(std::chrono::milliseconds budget)
        : budget_(budget), start_(std::chrono::steady_clock::now()) {}

    void check() const {
        if (budget_.count() > 0 && std::chrono::steady_clock::now() - start_ > budget_) {
            throw BoundTooLarge("oracle time budget of " + std::to_string(budget_.count()) +
                                " ms exceeded");
        }
    }

private:
    std::chrono::milliseconds budget_;
    std::chrono::steady_clock::time_point start_;
};

inline std::uint64_t base_value(const FactoredNat& c, const Limits& limits) {
    std::uint64_t v = 0;
    try {
        v = to_integer(c);
    } catch (const OverflowError&) {
        throw BoundTooLarge("oracle multiplier " + format(c) + " is too large");
    }
    if (v > limits.base) {
        throw BoundTooLarge("oracle multiplier " + std::to_string(v) + " exceeds " +
                            std::to_string(limits.base));
    }
    return v;
}

inline BigInt big_pow(std::uint64_t base, exponent_t e) {
    return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(e));
}

// phi(c i^e) for i = 1..bound (index 0 unused).
inline std::vector<BigInt> term_values(std::uint64_t c, exponent_t e, std::uint64_t bound,
                                       const Limits& limits, const Deadline& deadline) {
    const long double counting_cost = static_cast<long double>(c) * bound * bound / 2;
    std::vector<std::uint64_t> phi_ci(bound + 1, 0);
    if (counting_cost <= 2e7L) {
        for (std::uint64_t i = 1; i <= bound; ++i) {
            phi_ci[i] = count_totient(c * i);
        }
    } else {
        if (c * bound > limits.sieve) {
            throw BoundTooLarge("totient sieve up to " + std::to_string(c * bound) + " exceeds " +
                                std::to_string(limits.sieve));
        }
        const auto phi = sieve_totients(c * bound);
        for (std::uint64_t i = 1; i <= bound; ++i) {
            phi_ci[i] = phi[c * i];
        }
    }
    deadline.check();
    std::vector<BigInt> out(bound + 1);
    for (std::uint64_t i = 1; i <= bound; ++i) {
        out[i] = big_pow(i, e - 1) * phi_ci[i];
    }
    return out;
}

inline std::pair<BigInt, BigInt> as_fraction(const FactoredRational& r) {
    BigInt num = 1;
    BigInt den = 1;
    for (const auto& [p, e] : r.entries()) {
        if (e > 0) {
            num *= big_pow(p, e);
        } else {
            den *= big_pow(p, -e);
        }
    }
    return {num, den};
}

// Factors v completely using primes up to prime_limit (<= 10^6).
inline FactoredNat factor_big(BigInt v, std::uint64_t prime_limit) {
    std::vector<FactoredNat::entry_type> entries;
    for (std::uint32_t p : small_primes()) {
        if (v == 1 || p > prime_limit) {
            break;
        }
        exponent_t e = 0;
        while (v % p == 0) {
            v /= p;
            ++e;
        }
        if (e > 0) {
            entries.emplace_back(p, e);
        }
    }
    if (v != 1) {
        throw Error("oracle factorization left cofactor " + v.str());
    }
    return FactoredNat(std::move(entries));
}

// Largest prime factor of every i in 0..bound (1 for i <= 1).
inline std::vector<std::uint64_t> largest_prime_factors(std::uint64_t bound) {
    std::vector<std::uint64_t> lpf(bound + 1, 1);
    for (std::uint64_t p = 2; p <= bound; ++p) {
        if (lpf[p] != 1) {
            continue;
        }
        for (std::uint64_t j = p; j <= bound; j += p) {
            lpf[j] = p;
        }
    }
    return lpf;
}

inline void check_bound(std::uint64_t bound, std::uint64_t limit, const char* what) {
    if (bound == 0) {
        throw InvalidInput("oracle bound must be positive");
    }
    if (bound > limit) {
        throw BoundTooLarge(std::string(what) + " bound " + std::to_string(bound) +
                            " exceeds limit " + std::to_string(limit));
    }
}

inline std::vector<Pair> join(const FactoredRational& r, const Params& params, std::uint64_t bound,
                              std::optional<std::uint64_t> max_support, const Limits& limits) {
    const Deadline deadline(limits.time_budget);
    const auto lhs = term_values(base_value(params.k(), limits), params.a(), bound, limits, deadline);
    const auto rhs = term_values(base_value(params.l(), limits), params.b(), bound, limits, deadline);
    const auto [num, den] = as_fraction(r);
    std::vector<std::uint64_t> lpf;
    if (max_support) {
        lpf = largest_prime_factors(bound);
    }
    auto admissible = [&](std::uint64_t i) { return !max_support || lpf[i] <= *max_support; };

    // phi(k m^a) / phi(l n^b) = num / den  <=>  phi(k m^a) den = phi(l n^b) num.
    std::map<BigInt, std::vector<std::uint64_t>> by_key;
    for (std::uint64_t n = 1; n <= bound; ++n) {
        if (admissible(n)) {
            by_key[rhs[n] * num].push_back(n);
        }
    }
    deadline.check();
    std::vector<Pair> out;
    for (std::uint64_t m = 1; m <= bound; ++m) {
        if (!admissible(m)) {
            continue;
        }
        if (auto it = by_key.find(lhs[m] * den); it != by_key.end()) {
            for (std::uint64_t n : it->second) {
                out.emplace_back(m, n);
            }
        }
    }
    return out;
}

} // namespace detail

/// Every (m, n) with 1 <= m, n <= bound and its ratio, m-major ascending.
inline EnumerationTable enumerate(const Params& params, std::uint64_t bound, const Limits& limits = {},
                                  unsigned threads = 0) {
    detail::check_bound(bound, limits.table, "enumeration");
    const detail::Deadline deadline(limits.time_budget);
    const std::uint64_t k = detail::base_value(params.k(), limits);
    const std::uint64_t l = detail::base_value(params.l(), limits);
    const auto lhs = detail::term_values(k, params.a(), bound, limits, deadline);
    const auto rhs = detail::term_values(l, params.b(), bound, limits, deadline);
    const std::uint64_t prime_limit = std::max({bound, k, l});

    std::vector<FactoredNat> factored(bound + 1);
    for (std::uint64_t i = 1; i <= bound; ++i) {
        factored[i] = detail::factor_big(i, prime_limit);
    }

    auto fill_rows = [&](std::uint64_t first, std::uint64_t last) {
        std::vector<Entry> rows;
        rows.reserve((last - first) * bound);
        for (std::uint64_t m = first; m < last; ++m) {
            for (std::uint64_t n = 1; n <= bound; ++n) {
                const BigInt g = boost::multiprecision::gcd(lhs[m], rhs[n]);
                FactoredRational ratio = FactoredRational(detail::factor_big(lhs[m] / g, prime_limit)) /
                                         FactoredRational(detail::factor_big(rhs[n] / g, prime_limit));
                rows.push_back({factored[m], factored[n], std::move(ratio)});
            }
            deadline.check();
        }
        return rows;
    };

    if (threads == 0) {
        threads = std::max(1U, std::thread::hardware_concurrency());
    }
    const std::uint64_t parts = std::min<std::uint64_t>(threads, bound);
    std::vector<std::future<std::vector<Entry>>> jobs;
    for (std::uint64_t i = 0; i < parts; ++i) {
        const std::uint64_t first = 1 + bound * i / parts;
        const std::uint64_t last = 1 + bound * (i + 1) / parts;
        jobs.push_back(std::async(parts == 1 ? std::launch::deferred : std::launch::async, fill_rows,
                                  first, last));
    }
    EnumerationTable table{params, bound, {}};
    table.entries.reserve(bound * bound);
    for (auto& job : jobs) {
        auto rows = job.get();
        std::move(rows.begin(), rows.end(), std::back_inserter(table.entries));
    }
    return table;
}

/// One line per entry: m<TAB>n<TAB>ratio, ratio in canonical factored text.
inline std::string serialize(const EnumerationTable& table) {
    std::string out;
    for (const auto& entry : table.entries) {
        out += to_decimal(entry.m);
        out += '\t';
        out += to_decimal(entry.n);
        out += '\t';
        out += format(entry.ratio);
        out += '\n';
    }
    return out;
}

/// All (m, n) <= bound with phi(k m^a) / phi(l n^b) = r, ascending.
inline std::vector<Pair> brute_force_find(const FactoredRational& r, const Params& params,
                                          std::uint64_t bound, const Limits& limits = {}) {
    detail::check_bound(bound, limits.search, "search");
    return detail::join(r, params, bound, std::nullopt, limits);
}

/// The proper representations of r with m, n <= bound. Requires gcd(a, b) >= 2.
inline std::vector<Pair> proper_reps_within(const FactoredRational& r, const Params& params,
                                            std::uint64_t bound,
                                            SearchStrategy strategy = SearchStrategy::smooth_support,
                                            const Limits& limits = {}) {
    if (params.gcd() < 2) {
        throw PreconditionViolation("uniqueness search requires gcd(a, b) >= 2");
    }
    detail::check_bound(bound, limits.search, "search");
    std::optional<std::uint64_t> support;
    if (strategy == SearchStrategy::smooth_support) {
        support = std::max({r.max_prime(), params.k().max_prime(), params.l().max_prime()});
    }
    std::vector<Pair> out;
    for (const auto& [m, n] : detail::join(r, params, bound, support, limits)) {
        if (!is_proper(Representation{factorize(m), factorize(n), params})) {
            out.emplace_back(m, n);
        }
    }
    return out;
}

/// Pairs m, n <= bound with phi(m^a) = phi(n^b) but m^a != n^b.
inline std::vector<Pair> check_totient_power_injectivity(exponent_t a, exponent_t b, std::uint64_t bound,
                                                         const Limits& limits = {}) {
    if (std::min(a, b) <= 1) {
        throw PreconditionViolation("injectivity check requires min(a, b) > 1");
    }
    detail::check_bound(bound, limits.search, "search");
    const detail::Deadline deadline(limits.time_budget);
    const auto lhs = detail::term_values(1, a, bound, limits, deadline);
    const auto rhs = detail::term_values(1, b, bound, limits, deadline);
    std::map<BigInt, std::vector<std::uint64_t>> by_value;
    for (std::uint64_t n = 1; n <= bound; ++n) {
        by_value[rhs[n]].push_back(n);
    }
    std::vector<Pair> out;
    for (std::uint64_t m = 1; m <= bound; ++m) {
        if (auto it = by_value.find(lhs[m]); it != by_value.end()) {
            for (std::uint64_t n : it->second) {
                if (detail::big_pow(m, a) != detail::big_pow(n, b)) {
                    out.emplace_back(m, n);
                }
            }
        }
    }
    return out;
}

} // namespace totient_ratio::oracle
