// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "totient_ratio.hpp"
#include "totient_ratio/cli.hpp"

using namespace totient_ratio;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& what) {
        if (!condition && ok) {
            ok = false;
            detail = what;
        }
    }
};

Params params(exponent_t a, exponent_t b, std::uint64_t k = 1, std::uint64_t l = 1) {
    return Params(a, b, factorize(k), factorize(l));
}

std::string str(const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

FactoredRational random_rational(std::mt19937_64& rng, prime_t max_prime, exponent_t max_exp) {
    static const std::vector<prime_t> pool = [] {
        std::vector<prime_t> out;
        for (prime_t p = 2; p <= 100; ++p) {
            if (is_prime(p)) out.push_back(p);
        }
        return out;
    }();
    std::vector<FactoredRational::entry_type> entries;
    std::uniform_int_distribution<int> count(0, 5);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<exponent_t> exp(-max_exp, max_exp);
    for (int i = count(rng); i > 0; --i) {
        const prime_t p = pool[pick(rng)];
        if (p <= max_prime) entries.emplace_back(p, exp(rng));
    }
    return FactoredRational(std::move(entries));
}

Outcome golden_19_47() {
    Outcome out;
    const auto r = cli::run({"represent", "19/47", "--a", "2", "--b", "2", "--k", "1", "--l", "1"});
    out.require(r.exit_code == 0, "exit code " + std::to_string(r.exit_code));
    if (!out.ok) return out;
    const auto& res = r.payload["result"];
    out.require(str(res["m"]) == "13110", "m = " + str(res["m"]));
    out.require(str(res["n"]) == "18612", "n = " + str(res["n"]));
    out.require(res["proper"] == true, "not reported proper");
    const auto ratio = phi_ratio(params(2, 2), factorize(13110), factorize(18612));
    out.require(ratio == parse_factored("19/47"), "recomputed ratio " + format(ratio));
    return out;
}

Outcome golden_5_11() {
    Outcome out;
    const auto r = cli::run({"represent", "5/11", "--a", "2", "--b", "3"});
    out.require(r.exit_code == 0, "represent exit code " + std::to_string(r.exit_code));
    if (!out.ok) return out;
    out.require(str(r.payload["result"]["m"]) == "275", "m = " + str(r.payload["result"]["m"]));
    out.require(str(r.payload["result"]["n"]) == "55", "n = " + str(r.payload["result"]["n"]));
    const auto c = cli::run({"check", "--m", "55", "--n", "22", "--a", "2", "--b", "3"});
    out.require(c.exit_code == 0, "check exit code " + std::to_string(c.exit_code));
    if (!out.ok) return out;
    out.require(str(c.payload["result"]["ratio_decimal"]) == "5/11",
                "check ratio " + str(c.payload["result"]["ratio_decimal"]));
    out.require(c.payload["result"]["proper"] == true, "(55, 22) not reported proper");
    return out;
}

Outcome reduction_golden() {
    Outcome out;
    const auto c = cli::run({"check", "--m", "39330", "--n", "55836", "--a", "2", "--b", "2"});
    out.require(c.exit_code == 0, "exit code " + std::to_string(c.exit_code));
    if (!out.ok) return out;
    const auto& res = c.payload["result"];
    out.require(res["proper"] == false, "reported proper");
    out.require(res["witness"].is_object() && res["witness"]["q"] == 3, "witness " + res["witness"].dump());
    out.require(str(res["reduced"]["m"]) == "13110" && str(res["reduced"]["n"]) == "18612",
                "reduced to " + res["reduced"].dump());
    return out;
}

Outcome coprime_round_trip() {
    Outcome out;
    std::mt19937_64 rng(20240601);
    const Params all[] = {params(2, 3, 1, 1), params(3, 4, 7, 9), params(2, 5, 6, 1)};
    int failures = 0;
    std::string first;
    for (int i = 0; i < 1000; ++i) {
        const auto r = random_rational(rng, 100, 5);
        for (const auto& p : all) {
            const auto rep = construct_coprime(r, p);
            if (phi_ratio(p, rep.m, rep.n) != r) {
                if (failures++ == 0) first = format(r) + " a=" + std::to_string(p.a()) + " b=" + std::to_string(p.b());
            }
        }
    }
    out.require(failures == 0, std::to_string(failures) + " failures, first " + first);
    return out;
}

Outcome uniqueness() {
    Outcome out;
    const auto p = params(2, 2);
    const auto table = oracle::enumerate(p, 60);
    std::vector<FactoredRational> ratios;
    std::set<std::string> seen;
    for (const auto& entry : table.entries) {
        if (seen.insert(format(entry.ratio)).second) ratios.push_back(entry.ratio);
    }
    std::mt19937_64 rng(7);
    std::shuffle(ratios.begin(), ratios.end(), rng);
    out.require(ratios.size() >= 50, "only " + std::to_string(ratios.size()) + " distinct ratios");
    if (!out.ok) return out;
    ratios.resize(50);
    for (const auto& r : ratios) {
        const auto found = oracle::proper_reps_within(r, p, 60);
        out.require(found.size() == 1, format(r) + ": " + std::to_string(found.size()) + " proper pairs");
        if (!out.ok) return out;
        const auto built = construct_proper(r, p);
        out.require(std::holds_alternative<Representation>(built), format(r) + ": construction failed");
        if (!out.ok) return out;
        const auto& rep = std::get<Representation>(built);
        out.require(rep.m == factorize(found.front().first) && rep.n == factorize(found.front().second),
                    format(r) + ": constructed (" + format(rep.m) + ", " + format(rep.n) + ")");
    }
    return out;
}

Outcome obstructions() {
    Outcome out;
    const Params all[] = {params(3, 6, 1, 1), params(4, 6, 1, 1), params(4, 2, 1, 1),
                          params(2, 2, 2, 1), params(2, 2, 1, 2), params(2, 2, 3, 3)};
    for (const auto& p : all) {
        const std::string name = std::to_string(p.a()) + "," + std::to_string(p.b()) + "," + format(p.k()) +
                                 "," + format(p.l());
        const auto [w, cert] = obstruction_witness(p);
        out.require(verify_certificate(cert, p), name + ": certificate rejected");
        const auto hits = oracle::brute_force_find(w, p, 40);
        out.require(hits.empty(), name + ": witness " + format(w) + " has a preimage");
    }
    return out;
}

Outcome injectivity() {
    Outcome out;
    const std::pair<exponent_t, exponent_t> all[] = {{2, 2}, {2, 3}, {3, 3}, {2, 4}};
    for (const auto& [a, b] : all) {
        const auto hits = oracle::check_totient_power_injectivity(a, b, 60);
        out.require(hits.empty(), "counterexample for (" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
    return out;
}

Outcome composition() {
    Outcome out;
    const auto rep = construct_coprime(parse_factored("1/2"), params(2, 3));
    out.require(rep.m == factorize(2) && rep.n == factorize(2),
                "construct_coprime gave (" + format(rep.m) + ", " + format(rep.n) + ")");
    const FactoredRational value = FactoredRational(totient(FactoredNat({{2, 2}, {3, 4}}))) /
                                   FactoredRational(totient(FactoredNat({{2, 3}})));
    out.require(value == factorize(27), "value " + format(value));
    return out;
}

Outcome totient_oracle() {
    Outcome out;
    for (std::uint64_t n = 1; n <= 10'000 && out.ok; ++n) {
        const auto got = to_integer(totient(factorize(n)));
        const auto want = oracle::count_totient(n);
        out.require(got == want, "n=" + std::to_string(n));
    }
    return out;
}

Outcome inflation_invariance() {
    Outcome out;
    std::mt19937_64 rng(99);
    const Params all[] = {params(2, 2), params(2, 3), params(4, 6), params(3, 6, 2, 2), params(2, 4, 6, 1),
                          params(3, 5, 7, 9)};
    const prime_t primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    std::uniform_int_distribution<std::size_t> param_dist(0, std::size(all) - 1);
    std::uniform_int_distribution<std::size_t> prime_dist(0, std::size(primes) - 1);
    std::uniform_int_distribution<std::uint64_t> value(1, 2000);
    std::uniform_int_distribution<exponent_t> count(1, 4);
    int done = 0;
    int attempts = 0;
    while (done < 500 && attempts < 100'000) {
        ++attempts;
        const Representation rep{factorize(value(rng)), factorize(value(rng)), all[param_dist(rng)]};
        const prime_t q = primes[prime_dist(rng)];
        std::optional<Representation> grown;
        try {
            grown = inflate(rep, q, count(rng));
        } catch (const PreconditionViolation&) {
            continue;
        }
        ++done;
        const std::string before = format(phi_ratio(rep.params, rep.m, rep.n));
        const std::string after = format(phi_ratio(grown->params, grown->m, grown->n));
        out.require(before == after, format(rep.m) + ", " + format(rep.n) + " q=" + std::to_string(q));
    }
    out.require(done == 500, "only " + std::to_string(done) + " valid triples drawn");
    return out;
}

struct Criterion {
    const char* name;
    double limit_seconds;  // 0 means no runtime limit
    std::function<Outcome()> body;
};

} // namespace

int main() {
    const Criterion criteria[] = {
        {"golden 19/47 (2,2,1,1)", 1, golden_19_47},
        {"golden 5/11 (2,3,1,1)", 1, golden_5_11},
        {"reduction of (39330, 55836)", 0, reduction_golden},
        {"coprime round trip", 30, coprime_round_trip},
        {"proper uniqueness (2,2,1,1)", 60, uniqueness},
        {"obstruction certificates", 60, obstructions},
        {"totient power injectivity", 30, injectivity},
        {"composition value 27", 0, composition},
        {"totient vs direct count", 30, totient_oracle},
        {"inflation invariance", 0, inflation_invariance},
    };
    int failed = 0;
    int index = 0;
    for (const auto& c : criteria) {
        ++index;
        Outcome outcome;
        const auto start = Clock::now();
        try {
            outcome = c.body();
        } catch (const std::exception& e) {
            outcome.ok = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
        if (outcome.ok && c.limit_seconds > 0 && seconds >= c.limit_seconds) {
            std::ostringstream msg;
            msg << "took " << seconds << " s, limit " << c.limit_seconds << " s";
            outcome.ok = false;
            outcome.detail = msg.str();
        }
        std::printf("[%s] %2d %-32s %8.3f s%s%s\n", outcome.ok ? "PASS" : "FAIL", index, c.name, seconds,
                    outcome.detail.empty() ? "" : "  ", outcome.detail.c_str());
        if (!outcome.ok) ++failed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
    return failed == 0 ? 0 : 1;
}
