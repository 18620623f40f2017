#pragma once

// Representations r = phi(k m^a) / phi(l n^b): universality, construction,
// properness, and non-representability certificates.
//
// All reasoning is valuation-based. For the largest prime q of k*l*m*n only
// q's own power contributes to v_q of the ratio, and with K = v_q(k),
// L = v_q(l), x = v_q(m), y = v_q(n):
//
//   both_present      (K + a x > 0, L + b y > 0):  v_q = K + a x - L - b y
//   numerator_only    (L = y = 0):                  v_q = K + a x - 1
//   denominator_only  (K = x = 0):                  v_q = 1 - L - b y
//
// The one-sided cases leave a factor (q - 1)^(+-1) for the smaller primes.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "totient_ratio/diophantine.hpp"
#include "totient_ratio/factored.hpp"
#include "totient_ratio/text.hpp"
#include "totient_ratio/totient.hpp"

namespace totient_ratio {

struct Representation {
    FactoredNat m;
    FactoredNat n;
    Params params;

    friend bool operator==(const Representation&, const Representation&) = default;
};

/// Single-prime extraction d1 = q^d1_exponent from m, d2 = q^d2_exponent from n.
struct ImproperWitness {
    prime_t q = 0;
    exponent_t s = 0;
    exponent_t d1_exponent = 0;
    exponent_t d2_exponent = 0;

    friend bool operator==(const ImproperWitness&, const ImproperWitness&) = default;
};

enum class Reason {
    coprime_exponents,
    square_case,
    mu_gt_2,
    mu_2_max_gt_2,
    square_p_divides_both,
    square_p_divides_one,
};

inline std::string_view to_string(Reason reason) {
    switch (reason) {
    case Reason::coprime_exponents: return "coprime_exponents";
    case Reason::square_case: return "square_case";
    case Reason::mu_gt_2: return "mu_gt_2";
    case Reason::mu_2_max_gt_2: return "mu_2_max_gt_2";
    case Reason::square_p_divides_both: return "square_p_divides_both";
    case Reason::square_p_divides_one: return "square_p_divides_one";
    }
    return "unknown";
}

struct Universality {
    bool universal = false;
    Reason reason = Reason::coprime_exponents;
};

enum class ValuationCase { both_present, numerator_only, denominator_only };

inline std::string_view to_string(ValuationCase c) {
    switch (c) {
    case ValuationCase::both_present: return "both_present";
    case ValuationCase::numerator_only: return "numerator_only";
    case ValuationCase::denominator_only: return "denominator_only";
    }
    return "unknown";
}

/// {v : v = offset (mod modulus), min <= v <= max}, either bound optional.
struct ValuationProgression {
    ValuationCase case_id = ValuationCase::both_present;
    exponent_t offset = 0;
    exponent_t modulus = 1;
    std::optional<exponent_t> min;
    std::optional<exponent_t> max;

    bool contains(exponent_t v) const {
        if (min && v < *min) {
            return false;
        }
        if (max && v > *max) {
            return false;
        }
        exponent_t r = (v - offset) % modulus;
        return r == 0;
    }

    friend bool operator==(const ValuationProgression&, const ValuationProgression&) = default;
};

struct ObstructionCertificate {
    FactoredRational witness;
    Reason case_tag = Reason::mu_gt_2;
    prime_t p = 0;
    std::vector<ValuationProgression> case_table;

    friend bool operator==(const ObstructionCertificate&, const ObstructionCertificate&) = default;
};

struct NotRepresentable {
    std::vector<std::string> trace;
};

namespace detail {

inline exponent_t floor_mod(exponent_t v, exponent_t m) {
    exponent_t r = v % m;
    return r < 0 ? r + m : r;
}

inline prime_t max_prime_of(const FactoredRational& r, const FactoredNat& k, const FactoredNat& l) {
    return std::max({r.max_prime(), k.max_prime(), l.max_prime()});
}

inline FactoredRational prime_minus_one(prime_t q) { return factorize(q - 1); }

} // namespace detail

/// Every positive rational is representable iff gcd(a, b) = 1 or
/// (a, b, k, l) = (2, 2, 1, 1). The reason names the clause or the obstruction.
inline Universality is_universal(const Params& params) {
    const exponent_t g = params.gcd();
    if (g == 1) {
        return {true, Reason::coprime_exponents};
    }
    if (g > 2) {
        return {false, Reason::mu_gt_2};
    }
    if (params.a() != 2 || params.b() != 2) {
        return {false, Reason::mu_2_max_gt_2};
    }
    if (params.k().is_one() && params.l().is_one()) {
        return {true, Reason::square_case};
    }
    const prime_t p = std::max(params.k().max_prime(), params.l().max_prime());
    if (params.k().divisible_by(p) && params.l().divisible_by(p)) {
        return {false, Reason::square_p_divides_both};
    }
    return {false, Reason::square_p_divides_one};
}

/// Constructs a representation when gcd(a, b) = 1: at every prime p of r, k or
/// l, (v_p(m), v_p(n)) is the least positive solution of
/// a x - b y = v_p(r) - v_p(k) + v_p(l). Throws PreconditionViolation otherwise.
inline Representation construct_coprime(const FactoredRational& r, const Params& params) {
    if (params.gcd() != 1) {
        throw PreconditionViolation("construct_coprime requires gcd(a, b) = 1");
    }
    std::vector<prime_t> primes;
    for (const auto& [p, e] : r.entries()) primes.push_back(p);
    for (const auto& [p, e] : params.k().entries()) primes.push_back(p);
    for (const auto& [p, e] : params.l().entries()) primes.push_back(p);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    std::vector<FactoredNat::entry_type> m_entries;
    std::vector<FactoredNat::entry_type> n_entries;
    for (prime_t p : primes) {
        const exponent_t c = detail::checked_add(
            detail::checked_sub(r.valuation(p), params.k().valuation(p)), params.l().valuation(p));
        const auto sol = solve_diophantine(params.a(), params.b(), c, SolutionMode::positive);
        m_entries.emplace_back(p, sol.x0);
        n_entries.emplace_back(p, sol.y0);
    }
    return {FactoredNat(std::move(m_entries)), FactoredNat(std::move(n_entries)), params};
}

/// Every proper representation found by exhaustive peeling, plus the trace of
/// failed branches. For gcd(a, b) >= 2 at most one solution exists.
struct ProperSearch {
    std::vector<Representation> solutions;
    std::vector<std::string> trace;
};

namespace detail {

struct PartialRep {
    FactoredNat m;
    FactoredNat n;
};

// Peels the largest prime q of (residual, k, l), trying the one-sided cases
// before the two-sided one, and recurses on the strictly smaller remainder.
inline std::vector<PartialRep> peel(const FactoredRational& residual, const FactoredNat& k,
                                    const FactoredNat& l, const Params& params,
                                    std::vector<std::string>& trace) {
    const prime_t q = max_prime_of(residual, k, l);
    if (q == 1) {
        return {PartialRep{}};
    }
    const exponent_t a = params.a();
    const exponent_t b = params.b();
    const exponent_t K = k.valuation(q);
    const exponent_t L = l.valuation(q);
    const exponent_t t = residual.valuation(q);
    const FactoredNat k1 = k.without(q);
    const FactoredNat l1 = l.without(q);
    const FactoredRational rest = residual.without(q);
    const std::string at = "q=" + std::to_string(q) + " v_q(r)=" + std::to_string(t) + ": ";

    std::vector<PartialRep> out;
    auto descend = [&](const FactoredRational& next, exponent_t x, exponent_t y, std::string_view label) {
        auto subs = peel(next, k1, l1, params, trace);
        if (subs.empty()) {
            trace.push_back(at + std::string(label) + " (x=" + std::to_string(x) + ", y=" +
                            std::to_string(y) + ") leads to no representation of " + format(next));
        }
        for (auto& sub : subs) {
            out.push_back({sub.m * FactoredNat::prime_power(q, x), sub.n * FactoredNat::prime_power(q, y)});
        }
    };

    // numerator_only: t = K + a x - 1, y = 0, needs L = 0.
    if (L != 0) {
        trace.push_back(at + "numerator_only excluded, q divides l");
    } else {
        const exponent_t num = checked_add(checked_sub(t, K), 1);
        if (num % a != 0 || num < 0 || checked_add(K, num) < 1) {
            trace.push_back(at + "numerator_only infeasible, " + std::to_string(a) + "x = " +
                            std::to_string(num) + " has no admissible x");
        } else {
            descend(rest / prime_minus_one(q), num / a, 0, "numerator_only");
        }
    }
    // denominator_only: t = 1 - L - b y, x = 0, needs K = 0.
    if (K != 0) {
        trace.push_back(at + "denominator_only excluded, q divides k");
    } else {
        const exponent_t num = checked_add(checked_sub(1, t), -L);
        if (num % b != 0 || num < 0 || checked_add(L, num) < 1) {
            trace.push_back(at + "denominator_only infeasible, " + std::to_string(b) + "y = " +
                            std::to_string(num) + " has no admissible y");
        } else {
            descend(rest * prime_minus_one(q), 0, num / b, "denominator_only");
        }
    }
    // both_present: t = K + a x - L - b y; each side must keep some q-content.
    {
        const exponent_t c = checked_add(checked_sub(t, K), L);
        const exponent_t x_min = K > 0 ? 0 : 1;
        const exponent_t y_min = L > 0 ? 0 : 1;
        try {
            const auto sol = solve_diophantine(a, b, c, x_min, y_min);
            descend(rest, sol.x0, sol.y0, "both_present");
        } catch (const NoSolution&) {
            trace.push_back(at + "both_present infeasible, " + std::to_string(a) + "x - " +
                            std::to_string(b) + "y = " + std::to_string(c) + " is unsolvable");
        }
    }
    return out;
}

} // namespace detail

/// Exhaustive search for proper representations of r. Requires gcd(a, b) >= 2.
inline ProperSearch search_proper(const FactoredRational& r, const Params& params) {
    if (params.gcd() < 2) {
        throw PreconditionViolation("proper-representation search requires gcd(a, b) >= 2");
    }
    ProperSearch out;
    for (auto& partial : detail::peel(r, params.k(), params.l(), params, out.trace)) {
        out.solutions.push_back({std::move(partial.m), std::move(partial.n), params});
    }
    return out;
}

/// The unique proper representation of r, or NotRepresentable with the
/// branch trace. Requires gcd(a, b) >= 2.
inline std::variant<Representation, NotRepresentable>
construct_proper(const FactoredRational& r, const Params& params) {
    ProperSearch found = search_proper(r, params);
    if (found.solutions.empty()) {
        return NotRepresentable{std::move(found.trace)};
    }
    return std::move(found.solutions.front());
}

/// nullopt when rep is proper; otherwise the first single-prime extraction
/// (smallest q, then smallest s) that the properness condition permits.
inline std::optional<ImproperWitness> is_proper(const Representation& rep) {
    const Params& params = rep.params;
    const exponent_t g = params.gcd();
    const exponent_t sx = params.b() / g;
    const exponent_t sy = params.a() / g;
    for (const auto& [q, x] : rep.m.entries()) {
        const exponent_t y = rep.n.valuation(q);
        if (y == 0) {
            continue;
        }
        const exponent_t K = params.k().valuation(q);
        const exponent_t L = params.l().valuation(q);
        for (exponent_t s = 1; s * sx <= x && s * sy <= y; ++s) {
            const exponent_t x1 = x - s * sx;
            const exponent_t y1 = y - s * sy;
            const bool divides_both = K + x1 > 0 && L + y1 > 0;
            const bool divides_none = K + L + x1 + y1 == 0;
            if (divides_both || divides_none) {
                return ImproperWitness{q, s, s * sx, s * sy};
            }
            // A failed step empties one side, so no larger s fits either.
            break;
        }
    }
    return std::nullopt;
}

/// Divides out improperness witnesses until none remain; the ratio is unchanged.
inline Representation reduce_to_proper(Representation rep) {
    while (auto w = is_proper(rep)) {
        rep.m = rep.m.with_exponent(w->q, rep.m.valuation(w->q) - w->d1_exponent);
        rep.n = rep.n.with_exponent(w->q, rep.n.valuation(w->q) - w->d2_exponent);
    }
    return rep;
}

/// Multiplies m by q^(t b/g) and n by q^(t a/g). Allowed when q divides both
/// k m and l n, or divides none of k, l, m, n; otherwise PreconditionViolation.
inline Representation inflate(const Representation& rep, prime_t q, exponent_t t) {
    if (!is_prime(q)) {
        throw InvalidInput(std::to_string(q) + " is not prime");
    }
    if (t < 1) {
        throw InvalidInput("inflation count must be positive");
    }
    const Params& params = rep.params;
    const exponent_t K = params.k().valuation(q);
    const exponent_t L = params.l().valuation(q);
    const exponent_t x = rep.m.valuation(q);
    const exponent_t y = rep.n.valuation(q);
    const bool divides_both = K + x > 0 && L + y > 0;
    const bool divides_none = K + L + x + y == 0;
    if (!divides_both && !divides_none) {
        throw PreconditionViolation(std::to_string(q) +
                                    " divides exactly one of k m and l n; inflation would change the ratio");
    }
    const exponent_t g = params.gcd();
    Representation out = rep;
    out.m = out.m.with_exponent(q, detail::checked_add(x, detail::checked_mul(params.b() / g, t)));
    out.n = out.n.with_exponent(q, detail::checked_add(y, detail::checked_mul(params.a() / g, t)));
    return out;
}

/// Values v_q(phi(k m^a) / phi(l n^b)) can take when q is the largest prime of
/// k l m n, one progression per feasible case.
inline std::vector<ValuationProgression> achievable_valuations(prime_t q, const Params& params) {
    const exponent_t a = params.a();
    const exponent_t b = params.b();
    const exponent_t K = params.k().valuation(q);
    const exponent_t L = params.l().valuation(q);
    const exponent_t g = params.gcd();
    std::vector<ValuationProgression> out;
    out.push_back({ValuationCase::both_present, detail::floor_mod(K - L, g), g, std::nullopt, std::nullopt});
    if (L == 0) {
        const exponent_t lowest = K - 1 + a * (K > 0 ? 0 : 1);
        out.push_back({ValuationCase::numerator_only, detail::floor_mod(lowest, a), a, lowest, std::nullopt});
    }
    if (K == 0) {
        const exponent_t highest = 1 - L - b * (L > 0 ? 0 : 1);
        out.push_back({ValuationCase::denominator_only, detail::floor_mod(highest, b), b, std::nullopt, highest});
    }
    return out;
}

/// Checks a certificate from scratch. It proves non-representability when the
/// witness is p^t with p >= P(kl), min(a, b) >= 2, the recorded case table
/// matches the recomputed one, and t lies in none of its progressions.
inline bool verify_certificate(const ObstructionCertificate& cert, const Params& params) {
    if (params.gcd() < 2) {
        return false;
    }
    const auto universality = is_universal(params);
    if (universality.universal || universality.reason != cert.case_tag) {
        return false;
    }
    const auto& entries = cert.witness.entries();
    if (entries.size() != 1 || entries.front().first != cert.p) {
        return false;
    }
    if (cert.p < std::max(params.k().max_prime(), params.l().max_prime())) {
        return false;
    }
    const auto table = achievable_valuations(cert.p, params);
    if (table != cert.case_table) {
        return false;
    }
    const exponent_t t = entries.front().second;
    return std::none_of(table.begin(), table.end(),
                        [t](const ValuationProgression& prog) { return prog.contains(t); });
}

/// A certificate for r itself when r is a prime power the case analysis rules
/// out; nullopt otherwise.
inline std::optional<ObstructionCertificate> certify_non_representable(const FactoredRational& r,
                                                                       const Params& params) {
    const auto universality = is_universal(params);
    if (universality.universal || r.entries().size() != 1) {
        return std::nullopt;
    }
    const prime_t p = r.entries().front().first;
    ObstructionCertificate cert{r, universality.reason, p, achievable_valuations(p, params)};
    if (!verify_certificate(cert, params)) {
        return std::nullopt;
    }
    return cert;
}

/// The canonical non-representable witness for non-universal params, with its
/// certificate. Smallest admissible prime, then smallest admissible exponent.
inline std::pair<FactoredRational, ObstructionCertificate> obstruction_witness(const Params& params) {
    const auto universality = is_universal(params);
    if (universality.universal) {
        throw PreconditionViolation("params are universal; every positive rational is representable");
    }
    const prime_t top = std::max(params.k().max_prime(), params.l().max_prime());
    prime_t p = 0;
    exponent_t t = 0;
    switch (universality.reason) {
    case Reason::mu_gt_2:
        // t = 1 is the least positive exponent congruent to 1 mod gcd(a, b).
        p = next_prime_after(top);
        t = 1;
        break;
    case Reason::mu_2_max_gt_2:
        p = next_prime_after(top);
        t = params.a() > 2 ? 1 : -1;
        break;
    case Reason::square_p_divides_both: {
        p = top;
        const exponent_t diff = params.k().valuation(p) - params.l().valuation(p);
        t = (diff < 0 ? -diff : diff) + 1;
        break;
    }
    case Reason::square_p_divides_one:
        p = top;
        t = params.k().divisible_by(p) ? -params.k().valuation(p) - 1 : params.l().valuation(p) + 1;
        break;
    default:
        throw PreconditionViolation("no obstruction class for these params");
    }
    FactoredRational witness = FactoredRational::prime_power(p, t);
    ObstructionCertificate cert{witness, universality.reason, p, achievable_valuations(p, params)};
    return {std::move(witness), std::move(cert)};
}

} // namespace totient_ratio
