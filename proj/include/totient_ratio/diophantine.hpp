#pragma once

// Least solutions of a*x - b*y = c in a lower-bounded quadrant.

#include <numeric>
#include <string>
#include <tuple>

#include "totient_ratio/error.hpp"
#include "totient_ratio/primes.hpp"

namespace totient_ratio {

enum class SolutionMode { positive, nonnegative };

/// Minimal solution (x0, y0) with x0 >= x_min, y0 >= y_min. Every solution in
/// the region is (x0 + stride_x * t, y0 + stride_y * t) for t >= 0.
struct DiophantineSolution {
    exponent_t x0 = 0;
    exponent_t y0 = 0;
    exponent_t stride_x = 0; // b / gcd(a, b)
    exponent_t stride_y = 0; // a / gcd(a, b)
    exponent_t x_min = 0;
    exponent_t y_min = 0;

    friend bool operator==(const DiophantineSolution&, const DiophantineSolution&) = default;
};

namespace detail {

// (g, u, v) with a*u + b*v = g.
inline std::tuple<__int128, __int128, __int128> extended_gcd(__int128 a, __int128 b) {
    __int128 old_r = a, r = b;
    __int128 old_u = 1, u = 0;
    __int128 old_v = 0, v = 1;
    while (r != 0) {
        __int128 q = old_r / r;
        std::tie(old_r, r) = std::make_tuple(r, old_r - q * r);
        std::tie(old_u, u) = std::make_tuple(u, old_u - q * u);
        std::tie(old_v, v) = std::make_tuple(v, old_v - q * v);
    }
    return {old_r, old_u, old_v};
}

inline __int128 ceil_div(__int128 num, __int128 den) {
    // den > 0
    __int128 q = num / den;
    if (num % den != 0 && num > 0) {
        ++q;
    }
    return q;
}

inline exponent_t narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) {
        throw OverflowError("diophantine solution exceeds 64 bits");
    }
    return static_cast<exponent_t>(v);
}

} // namespace detail

/// Least solution of a*x - b*y = c with x >= x_min and y >= y_min.
/// Throws NoSolution when gcd(a, b) does not divide c.
inline DiophantineSolution solve_diophantine(exponent_t a, exponent_t b, exponent_t c,
                                             exponent_t x_min, exponent_t y_min) {
    if (a < 1 || b < 1) {
        throw InvalidInput("diophantine coefficients must be positive");
    }
    auto [g, u, v] = detail::extended_gcd(a, b);
    if (c % g != 0) {
        throw NoSolution(std::to_string(a) + "x - " + std::to_string(b) + "y = " +
                         std::to_string(c) + " has no integer solution");
    }
    // a*u + b*v = g, so x = u*c/g, y = -v*c/g is one solution.
    const __int128 sx = b / g;
    const __int128 sy = a / g;
    __int128 x = u * (c / g);
    __int128 y = -v * (c / g);
    // Normalize to the smallest x >= x_min in the family, then lift both.
    __int128 shift = detail::ceil_div(x_min - x, sx);
    x += shift * sx;
    y += shift * sy;
    if (y < y_min) {
        __int128 lift = detail::ceil_div(y_min - y, sy);
        x += lift * sx;
        y += lift * sy;
    }
    DiophantineSolution out;
    out.x0 = detail::narrow(x);
    out.y0 = detail::narrow(y);
    out.stride_x = detail::narrow(sx);
    out.stride_y = detail::narrow(sy);
    out.x_min = x_min;
    out.y_min = y_min;
    return out;
}

inline DiophantineSolution solve_diophantine(exponent_t a, exponent_t b, exponent_t c,
                                             SolutionMode mode) {
    const exponent_t lo = mode == SolutionMode::positive ? 1 : 0;
    return solve_diophantine(a, b, c, lo, lo);
}

} // namespace totient_ratio
