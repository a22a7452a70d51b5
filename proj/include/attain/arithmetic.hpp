#pragma once

// Integer arithmetic for lattice points on circles: factorization, the
// sum-of-two-squares set S, r2(n), lattice enumeration and split-prime angles.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace attain {

struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
    std::uint64_t n = 1;
    std::vector<PrimePower> factors;  // ascending primes

    std::uint64_t exponent_of(std::uint64_t p) const {
        for (const auto& f : factors)
            if (f.prime == p) return f.exponent;
        return 0;
    }
};

struct GaussianPoint {
    std::int64_t a;
    std::int64_t b;
    friend auto operator<=>(const GaussianPoint&, const GaussianPoint&) = default;
};

struct SplitPrimeAngle {
    std::uint64_t p;
    std::uint64_t a;       // p = a^2 + b^2 with a > b > 0
    std::uint64_t b;
    double lattice_angle;  // atan2(b, a) in (0, pi/4)
    double desym_angle;    // 4 * lattice_angle in (0, pi)
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Wheel mod 30 increments starting from 7.
inline constexpr unsigned kWheel30[8] = {4, 2, 4, 2, 4, 6, 2, 6};

}  // namespace detail

/// Floor of the square root, exact for all 64-bit inputs.
inline std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (static_cast<unsigned __int128>(r) * r > n) --r;
    while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_perfect_square(std::uint64_t n, std::uint64_t* root = nullptr) {
    const auto r = isqrt(n);
    if (root) *root = r;
    return r * r == n;
}

/// Deterministic trial division with a mod-30 wheel.
inline Factorization factorize(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    Factorization out;
    out.n = n;
    auto pull = [&](std::uint64_t p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.factors.push_back({p, e});
    };
    pull(2);
    pull(3);
    pull(5);
    std::uint64_t p = 7;
    for (unsigned i = 0; p <= n / p; p += detail::kWheel30[i], i = (i + 1) % 8) pull(p);
    if (n > 1) out.factors.push_back({n, 1});
    return out;
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    const auto f = factorize(n);
    return f.factors.size() == 1 && f.factors[0].exponent == 1;
}

/// Membership in S: every prime q = 3 mod 4 divides n to an even power.
inline bool is_in_S(const Factorization& f) {
    return std::all_of(f.factors.begin(), f.factors.end(), [](const PrimePower& pp) {
        return pp.prime % 4 != 3 || pp.exponent % 2 == 0;
    });
}

inline bool is_in_S(std::uint64_t n) { return is_in_S(factorize(n)); }

inline bool is_squarefree(const Factorization& f) {
    return std::all_of(f.factors.begin(), f.factors.end(),
                       [](const PrimePower& pp) { return pp.exponent == 1; });
}

/// r2(n) = 4 * prod (e_i + 1) over split primes, or 0 when n is not in S.
inline std::uint64_t r2(const Factorization& f) {
    if (!is_in_S(f)) return 0;
    std::uint64_t r = 4;
    for (const auto& pp : f.factors)
        if (pp.prime % 4 == 1) r *= pp.exponent + 1;
    return r;
}

inline std::uint64_t r2(std::uint64_t n) { return r2(factorize(n)); }

/// All integer solutions of a^2 + b^2 = n, sorted.
inline std::vector<GaussianPoint> lattice_points(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("lattice_points: n must be positive");
    std::vector<GaussianPoint> pts;
    const auto top = isqrt(n);
    for (std::uint64_t a = 0; a <= top; ++a) {
        std::uint64_t b = 0;
        if (!is_perfect_square(n - a * a, &b)) continue;
        const auto sa = static_cast<std::int64_t>(a);
        const auto sb = static_cast<std::int64_t>(b);
        for (auto x : {sa, -sa})
            for (auto y : {sb, -sb}) pts.push_back({x, y});
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

namespace detail {

// Cornacchia's descent; p must already be known to be a prime = 1 mod 4.
inline SplitPrimeAngle cornacchia(std::uint64_t p) {
    std::uint64_t c = 2;
    while (detail::powmod(c, (p - 1) / 2, p) != p - 1) ++c;
    std::uint64_t r0 = p;
    std::uint64_t r1 = detail::powmod(c, (p - 1) / 4, p);
    if (r1 > p / 2) r1 = p - r1;
    while (r1 * r1 > p) {
        const auto t = r0 % r1;
        r0 = r1;
        r1 = t;
    }
    std::uint64_t other = 0;
    if (!is_perfect_square(p - r1 * r1, &other))
        throw std::logic_error("split_prime_angle: descent failed for " + std::to_string(p));
    const auto a = std::max(r1, other);
    const auto b = std::min(r1, other);
    const double lattice = std::atan2(static_cast<double>(b), static_cast<double>(a));
    return {p, a, b, lattice, 4.0 * lattice};
}

}  // namespace detail

/// Representation p = a^2 + b^2 (a > b > 0).
inline SplitPrimeAngle split_prime_angle(std::uint64_t p) {
    if (p % 4 != 1 || !is_prime(p))
        throw std::invalid_argument("split_prime_angle: " + std::to_string(p) +
                                    " is not a prime = 1 mod 4");
    return detail::cornacchia(p);
}

struct PrimeSearch {
    std::vector<std::uint64_t> primes;
    bool exhausted = false;  // search_limit reached before `count` primes were found
};

/// Split primes whose lattice angle is below epsilon, scanning upward to search_limit.
inline PrimeSearch cilleruelo_primes(double epsilon, std::size_t count, std::uint64_t search_limit) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("cilleruelo_primes: epsilon must be > 0");
    if (count == 0) throw std::invalid_argument("cilleruelo_primes: count must be positive");
    PrimeSearch out;
    for (std::uint64_t p = 5; p <= search_limit; p += 4) {
        if (!is_prime(p)) continue;
        if (split_prime_angle(p).lattice_angle < epsilon) {
            out.primes.push_back(p);
            if (out.primes.size() == count) return out;
        }
    }
    out.exhausted = true;
    return out;
}

}  // namespace attain
