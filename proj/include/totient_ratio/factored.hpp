#pragma once

// Positive naturals and positive rationals held as prime -> exponent maps.
//
// Everything in the library computes on these; plain integers only appear at
// the I/O boundary (factorize / to_integer / text).

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "totient_ratio/error.hpp"
#include "totient_ratio/primes.hpp"

namespace totient_ratio {

template <bool Signed>
class Factored;

/// A positive integer: primes ascending, every exponent >= 1, {} is 1.
using FactoredNat = Factored<false>;
/// A positive rational: primes ascending, every exponent nonzero, {} is 1.
using FactoredRational = Factored<true>;

namespace detail {

using entries_t = std::vector<std::pair<prime_t, exponent_t>>;

struct unchecked_t {};

// Exponentwise lhs + scale * rhs over sorted entry lists, dropping zeros.
inline entries_t merge_entries(const entries_t& lhs, const entries_t& rhs, exponent_t scale) {
    entries_t out;
    out.reserve(lhs.size() + rhs.size());
    auto i = lhs.begin();
    auto j = rhs.begin();
    while (i != lhs.end() || j != rhs.end()) {
        if (j == rhs.end() || (i != lhs.end() && i->first < j->first)) {
            out.push_back(*i++);
        } else if (i == lhs.end() || j->first < i->first) {
            out.emplace_back(j->first, checked_mul(scale, j->second));
            ++j;
        } else {
            exponent_t e = checked_add(i->second, checked_mul(scale, j->second));
            if (e != 0) {
                out.emplace_back(i->first, e);
            }
            ++i;
            ++j;
        }
    }
    return out;
}

} // namespace detail

template <bool Signed>
class Factored {
public:
    using entry_type = std::pair<prime_t, exponent_t>;

    Factored() = default;

    /// Builds a value from arbitrary (prime, exponent) pairs. Repeated primes
    /// are merged, zero exponents dropped. Throws InvalidInput on a non-prime
    /// key, or on a negative exponent for FactoredNat.
    explicit Factored(std::vector<entry_type> entries) {
        for (const auto& [p, e] : entries) {
            if (!is_prime(p)) {
                throw InvalidInput(std::to_string(p) + " is not prime");
            }
        }
        std::sort(entries.begin(), entries.end(),
                  [](const entry_type& x, const entry_type& y) { return x.first < y.first; });
        for (const auto& entry : entries) {
            if (!entries_.empty() && entries_.back().first == entry.first) {
                entries_.back().second = detail::checked_add(entries_.back().second, entry.second);
            } else {
                entries_.push_back(entry);
            }
        }
        std::erase_if(entries_, [](const entry_type& x) { return x.second == 0; });
        if constexpr (!Signed) {
            for (const auto& [p, e] : entries_) {
                if (e < 0) {
                    throw InvalidInput("negative exponent in a natural number");
                }
            }
        }
    }

    static Factored prime_power(prime_t p, exponent_t e) {
        return Factored(std::vector<entry_type>{{p, e}});
    }

    const std::vector<entry_type>& entries() const noexcept { return entries_; }
    bool is_one() const noexcept { return entries_.empty(); }

    /// Exponent of p, 0 when absent.
    exponent_t valuation(prime_t p) const noexcept {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                                   [](const entry_type& x, prime_t key) { return x.first < key; });
        return (it != entries_.end() && it->first == p) ? it->second : 0;
    }

    /// Largest prime with a nonzero exponent; 1 for the value 1.
    prime_t max_prime() const noexcept { return entries_.empty() ? 1 : entries_.back().first; }

    bool divisible_by(prime_t p) const noexcept { return valuation(p) > 0; }

    /// Copy with every power of p removed.
    Factored without(prime_t p) const {
        Factored out = *this;
        std::erase_if(out.entries_, [p](const entry_type& x) { return x.first == p; });
        return out;
    }

    /// Copy with the exponent of p replaced by e (0 removes p).
    Factored with_exponent(prime_t p, exponent_t e) const {
        if constexpr (!Signed) {
            if (e < 0) {
                throw InvalidInput("negative exponent in a natural number");
            }
        }
        Factored out = without(p);
        if (e != 0) {
            auto it = std::lower_bound(out.entries_.begin(), out.entries_.end(), p,
                                       [](const entry_type& x, prime_t key) { return x.first < key; });
            out.entries_.insert(it, {p, e});
        }
        return out;
    }

    // FactoredNat widens implicitly to FactoredRational.
    operator Factored<true>() const
        requires(!Signed)
    {
        return Factored<true>(unchecked, entries_);
    }

    friend bool operator==(const Factored&, const Factored&) = default;

    friend Factored operator*(const Factored& x, const Factored& y) {
        return Factored(unchecked, detail::merge_entries(x.entries_, y.entries_, 1));
    }

    Factored& operator*=(const Factored& y) { return *this = *this * y; }

    friend Factored pow(const Factored& x, exponent_t e) {
        if constexpr (!Signed) {
            if (e < 0) {
                throw InvalidInput("negative power of a natural number");
            }
        }
        if (e == 0) {
            return {};
        }
        Factored out = x;
        for (auto& entry : out.entries_) {
            entry.second = detail::checked_mul(entry.second, e);
        }
        return out;
    }

private:
    template <bool>
    friend class Factored;
    friend Factored<true> operator/(const Factored<true>&, const Factored<true>&);
    friend Factored<true> inverse(const Factored<true>&);
    friend Factored<false> numerator(const Factored<true>&);
    friend Factored<false> denominator(const Factored<true>&);
    friend Factored<false> to_natural(const Factored<true>&);

    static constexpr detail::unchecked_t unchecked{};

    Factored(detail::unchecked_t, std::vector<entry_type> entries) : entries_(std::move(entries)) {}

    std::vector<entry_type> entries_;
};

inline FactoredRational operator/(const FactoredRational& x, const FactoredRational& y) {
    return FactoredRational(FactoredRational::unchecked, detail::merge_entries(x.entries_, y.entries_, -1));
}

inline FactoredRational& operator/=(FactoredRational& x, const FactoredRational& y) {
    return x = x / y;
}

/// Negates every exponent.
inline FactoredRational inverse(const FactoredRational& x) {
    auto entries = x.entries_;
    for (auto& entry : entries) {
        entry.second = -entry.second;
    }
    return FactoredRational(FactoredRational::unchecked, std::move(entries));
}

inline FactoredNat numerator(const FactoredRational& x) {
    detail::entries_t out;
    for (const auto& entry : x.entries_) {
        if (entry.second > 0) {
            out.push_back(entry);
        }
    }
    return FactoredNat(FactoredNat::unchecked, std::move(out));
}

inline FactoredNat denominator(const FactoredRational& x) {
    detail::entries_t out;
    for (const auto& [p, e] : x.entries_) {
        if (e < 0) {
            out.emplace_back(p, -e);
        }
    }
    return FactoredNat(FactoredNat::unchecked, std::move(out));
}

/// Narrows to FactoredNat; throws InvalidInput if x is not an integer.
inline FactoredNat to_natural(const FactoredRational& x) {
    for (const auto& [p, e] : x.entries_) {
        if (e < 0) {
            throw InvalidInput("value is not a positive integer");
        }
    }
    return FactoredNat(FactoredNat::unchecked, x.entries_);
}

inline FactoredRational ratio_mul(const FactoredRational& x, const FactoredRational& y) {
    return x * y;
}

inline exponent_t valuation(const FactoredRational& x, prime_t p) { return x.valuation(p); }

inline prime_t max_prime(const FactoredRational& x) { return x.max_prime(); }

/// Factorization of n >= 1; throws InvalidInput for 0 and InputTooLarge
/// above `bound`.
inline FactoredNat factorize(std::uint64_t n, std::uint64_t bound = default_factor_bound()) {
    return FactoredNat(trial_factor(n, bound));
}

/// Exact value of x; throws OverflowError if it does not fit in 64 bits.
inline std::uint64_t to_integer(const FactoredNat& x) {
    std::uint64_t value = 1;
    for (const auto& [p, e] : x.entries()) {
        for (exponent_t i = 0; i < e; ++i) {
            if (__builtin_mul_overflow(value, p, &value)) {
                throw OverflowError("value does not fit in 64 bits");
            }
        }
    }
    return value;
}

} // namespace totient_ratio
