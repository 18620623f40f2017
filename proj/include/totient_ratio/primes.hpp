#pragma once

// Primality, a cached small-prime sieve, and 64-bit trial factorization.

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <string_view>
#include <utility>
#include <vector>

#include "totient_ratio/error.hpp"

namespace totient_ratio {

using prime_t = std::uint64_t;
using exponent_t = long long;

inline constexpr std::uint64_t kTrialDivisionLimit = 1'000'000;
inline constexpr std::uint64_t kDefaultFactorBound = 1'000'000'000'000ULL;

/// Factorization bound in effect for this process: TOTIENT_RATIO_FACTOR_BOUND
/// when set to a positive decimal integer, otherwise 10^12. Read once.
inline std::uint64_t default_factor_bound() {
    static const std::uint64_t bound = [] {
        const char* env = std::getenv("TOTIENT_RATIO_FACTOR_BOUND");
        if (env == nullptr) {
            return kDefaultFactorBound;
        }
        std::string_view text(env);
        std::uint64_t value = 0;
        auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || end != text.data() + text.size() || value == 0) {
            return kDefaultFactorBound;
        }
        return value;
    }();
    return bound;
}

/// Primes up to kTrialDivisionLimit, ascending.
inline const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        std::vector<bool> composite(kTrialDivisionLimit + 1, false);
        std::vector<std::uint32_t> out;
        out.reserve(78'498);
        for (std::uint64_t i = 2; i <= kTrialDivisionLimit; ++i) {
            if (composite[i]) {
                continue;
            }
            out.push_back(static_cast<std::uint32_t>(i));
            for (std::uint64_t j = i * i; j <= kTrialDivisionLimit; j += i) {
                composite[j] = true;
            }
        }
        return out;
    }();
    return primes;
}

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t x, std::uint64_t y, std::uint64_t mod) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * y % mod);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    std::uint64_t result = 1 % mod;
    base %= mod;
    while (exp > 0) {
        if (exp & 1U) {
            result = mul_mod(result, base, mod);
        }
        base = mul_mod(base, base, mod);
        exp >>= 1U;
    }
    return result;
}

} // namespace detail

/// Deterministic Miller-Rabin; exact for every 64-bit input.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) {
        return false;
    }
    constexpr std::uint64_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (std::uint64_t p : bases) {
        if (n % p == 0) {
            return n == p;
        }
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (std::uint64_t a : bases) {
        std::uint64_t x = detail::pow_mod(a, d, n);
        if (x == 1 || x == n - 1) {
            continue;
        }
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = detail::mul_mod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) {
            return false;
        }
    }
    return true;
}

/// Smallest prime strictly greater than n.
inline prime_t next_prime_after(std::uint64_t n) {
    std::uint64_t candidate = n + 1;
    while (!is_prime(candidate)) {
        if (candidate == UINT64_MAX) {
            throw OverflowError("no 64-bit prime above the requested value");
        }
        ++candidate;
    }
    return candidate;
}

/// Ascending (prime, exponent) pairs of n. Trial division by primes up to
/// 10^6, then a primality test on the cofactor. A composite cofactor (which is
/// necessarily above 10^12) is rejected, as is any n above `bound`.
inline std::vector<std::pair<prime_t, exponent_t>>
trial_factor(std::uint64_t n, std::uint64_t bound) {
    if (n == 0) {
        throw InvalidInput("cannot factorize 0");
    }
    if (n > bound) {
        throw InputTooLarge("value " + std::to_string(n) + " exceeds factorization bound " +
                            std::to_string(bound));
    }
    std::vector<std::pair<prime_t, exponent_t>> out;
    for (std::uint32_t p : small_primes()) {
        if (static_cast<std::uint64_t>(p) * p > n) {
            break;
        }
        if (n % p != 0) {
            continue;
        }
        exponent_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) {
        if (!is_prime(n)) {
            throw InputTooLarge("cofactor " + std::to_string(n) +
                                " is composite with no prime factor below 10^6");
        }
        out.emplace_back(n, 1);
    }
    return out;
}

} // namespace totient_ratio
