#pragma once

#include <algorithm>
#include <numeric>
#include <string>

#include "totient_ratio/factored.hpp"

namespace totient_ratio {

/// The tuple (a, b, k, l) of the form phi(k m^a) / phi(l n^b).
class Params {
public:
    /// Throws InvalidInput unless a, b >= 1 and max(a, b) >= 2.
    Params(exponent_t a, exponent_t b, FactoredNat k = {}, FactoredNat l = {})
        : a_(a), b_(b), k_(std::move(k)), l_(std::move(l)) {
        if (a_ < 1 || b_ < 1) {
            throw InvalidInput("exponents a and b must be positive");
        }
        if (std::max(a_, b_) < 2) {
            throw InvalidInput("max(a, b) must be at least 2");
        }
    }

    exponent_t a() const noexcept { return a_; }
    exponent_t b() const noexcept { return b_; }
    const FactoredNat& k() const noexcept { return k_; }
    const FactoredNat& l() const noexcept { return l_; }
    exponent_t gcd() const noexcept { return std::gcd(a_, b_); }

    friend bool operator==(const Params&, const Params&) = default;

private:
    exponent_t a_;
    exponent_t b_;
    FactoredNat k_;
    FactoredNat l_;
};

/// phi(x) = prod (p - 1) p^(e - 1), with each p - 1 factorized and merged.
inline FactoredNat totient(const FactoredNat& x) {
    FactoredNat out;
    for (const auto& [p, e] : x.entries()) {
        if (e > 1) {
            out *= FactoredNat::prime_power(p, e - 1);
        }
        out *= factorize(p - 1);
    }
    return out;
}

/// phi(c * m^e), without expanding the argument to an integer.
inline FactoredNat phi_of_term(const FactoredNat& c, const FactoredNat& m, exponent_t e) {
    if (e < 1) {
        throw InvalidInput("power in phi_of_term must be positive");
    }
    return totient(c * pow(m, e));
}

/// phi(k m^a) / phi(l n^b).
inline FactoredRational phi_ratio(const Params& params, const FactoredNat& m, const FactoredNat& n) {
    return FactoredRational(phi_of_term(params.k(), m, params.a())) /
           FactoredRational(phi_of_term(params.l(), n, params.b()));
}

} // namespace totient_ratio
