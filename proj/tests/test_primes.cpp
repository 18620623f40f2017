#include <gtest/gtest.h>

#include <numeric>

#include "totient_ratio/primes.hpp"

using namespace totient_ratio;

namespace {

bool naive_is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

} // namespace

TEST(Primes, MillerRabinAgreesWithTrialDivisionBelow100k) {
    for (std::uint64_t n = 0; n < 100'000; ++n) {
        ASSERT_EQ(is_prime(n), naive_is_prime(n)) << n;
    }
}

TEST(Primes, LargeKnownValues) {
    EXPECT_TRUE(is_prime(1'000'000'007ULL));
    EXPECT_TRUE(is_prime(18'446'744'073'709'551'557ULL)); // largest 64-bit prime
    EXPECT_FALSE(is_prime(3'215'031'751ULL));             // strong pseudoprime to 2, 3, 5, 7
    EXPECT_FALSE(is_prime(274'177ULL * 67'280'421'310'721ULL));
}

TEST(Primes, SieveSize) {
    EXPECT_EQ(small_primes().size(), 78'498U);
    EXPECT_EQ(small_primes().back(), 999'983U);
}

TEST(Primes, NextPrime) {
    EXPECT_EQ(next_prime_after(1), 2U);
    EXPECT_EQ(next_prime_after(2), 3U);
    EXPECT_EQ(next_prime_after(47), 53U);
}

TEST(Primes, TrialFactorErrors) {
    EXPECT_THROW(trial_factor(0, kDefaultFactorBound), InvalidInput);
    EXPECT_THROW(trial_factor(kDefaultFactorBound + 1, kDefaultFactorBound), InputTooLarge);
    // Semiprime whose factors both exceed 10^6: rejected even under a huge bound.
    EXPECT_THROW(trial_factor(1'000'003ULL * 1'000'033ULL, UINT64_MAX), InputTooLarge);
    // A prime cofactor above 10^12 is fine once the bound allows it.
    auto f = trial_factor(2ULL * 1'000'000'000'039ULL, UINT64_MAX);
    ASSERT_EQ(f.size(), 2U);
    EXPECT_EQ(f[1].first, 1'000'000'000'039ULL);
}

TEST(Primes, DefaultBoundIsTenToTheTwelfth) {
    // The test environment does not set TOTIENT_RATIO_FACTOR_BOUND.
    EXPECT_EQ(default_factor_bound(), kDefaultFactorBound);
}
