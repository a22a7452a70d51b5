#pragma once

// Row generators and CSV writers behind the command-line front end: scans of
// n in S, prime-power curves, spike boundaries and Cantor coefficients.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "attain/arithmetic.hpp"
#include "attain/measures.hpp"
#include "attain/region.hpp"

namespace attain {

inline constexpr std::uint64_t kMaxScan = 1'000'000'000ull;

struct ScanRow {
    std::uint64_t n;
    std::uint64_t r2;
    double x;  // nu_n^(1) = mu_n^(4)
    double y;  // nu_n^(2) = mu_n^(8)
};

struct PrimePowerRow {
    std::uint64_t p;
    unsigned M;
    double x;
    double y;
};

/// 17 significant digits: round-trips every double.
inline std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

namespace detail {

inline Factorization factorize_with(std::uint64_t n, const std::vector<std::uint64_t>& primes) {
    Factorization f;
    f.n = n;
    for (auto p : primes) {
        if (p * p > n) break;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) f.factors.push_back({p, e});
    }
    if (n > 1) f.factors.push_back({n, 1});
    return f;
}

inline void scan_range(std::uint64_t lo, std::uint64_t hi, bool squarefree_only,
                       const std::vector<std::uint64_t>& primes, std::vector<ScanRow>& out) {
    for (std::uint64_t n = lo; n < hi; ++n) {
        const auto f = factorize_with(n, primes);
        if (!is_in_S(f) || (squarefree_only && !is_squarefree(f))) continue;
        const auto plane = lattice_fourier_plane(f);
        out.push_back({n, r2(f), plane.x, plane.y});
    }
}

}  // namespace detail

/// Emits one row per n in S (square-free n only when asked), ascending, to `sink`.
/// Blocks are computed on `jobs` threads and merged in order by the caller thread.
inline void scan(std::uint64_t max_n, bool squarefree_only, unsigned jobs,
                 const std::function<void(const ScanRow&)>& sink) {
    if (max_n < 1 || max_n > kMaxScan) throw std::invalid_argument("scan: max_n must lie in [1, 1e9]");
    jobs = std::max(1u, jobs);
    const auto primes = primes_up_to(isqrt(max_n));
    constexpr std::uint64_t block = 1u << 16;
    std::vector<std::vector<ScanRow>> buffers(jobs);
    for (std::uint64_t start = 1; start <= max_n; start += block * jobs) {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) {
            buffers[j].clear();
            const auto lo = start + j * block;
            const auto hi = std::min(max_n + 1, lo + block);
            if (lo >= hi) continue;
            pool.emplace_back([&, j, lo, hi] { detail::scan_range(lo, hi, squarefree_only, primes, buffers[j]); });
        }
        for (auto& t : pool) t.join();
        for (const auto& buf : buffers)
            for (const auto& row : buf) sink(row);
    }
}

inline void write_scan_csv(std::ostream& os, std::uint64_t max_n, bool squarefree_only, unsigned jobs) {
    os << "n,r2,x,y\n";
    scan(max_n, squarefree_only, jobs, [&](const ScanRow& r) {
        os << r.n << ',' << r.r2 << ',' << format_real(r.x) << ',' << format_real(r.y) << '\n';
    });
}

enum class Parity { even, odd, all };

inline Parity parse_parity(const std::string& s) {
    if (s == "even") return Parity::even;
    if (s == "odd") return Parity::odd;
    if (s == "all") return Parity::all;
    throw std::invalid_argument("parity must be even, odd or all");
}

/// (G_{M+1}(theta_p), G_{M+1}(2 theta_p)) for split primes p <= max_prime and M <= max_exp.
inline std::vector<PrimePowerRow> prime_power_rows(unsigned max_exp, std::uint64_t max_prime, Parity parity) {
    if (max_exp < 1) throw std::invalid_argument("prime_power_rows: max_exp must be >= 1");
    std::vector<PrimePowerRow> rows;
    for (auto p : primes_up_to(max_prime)) {
        if (p % 4 != 1) continue;
        const double theta = detail::cornacchia(p).desym_angle;
        for (unsigned M = 1; M <= max_exp; ++M) {
            if ((parity == Parity::even && M % 2) || (parity == Parity::odd && M % 2 == 0)) continue;
            const auto pt = gamma_curve(static_cast<int>(M) + 1, theta);
            rows.push_back({p, M, pt.x, pt.y});
        }
    }
    return rows;
}

inline void write_prime_powers_csv(std::ostream& os, unsigned max_exp, std::uint64_t max_prime, Parity parity) {
    os << "p,M,x,y\n";
    for (const auto& r : prime_power_rows(max_exp, max_prime, parity))
        os << r.p << ',' << r.M << ',' << format_real(r.x) << ',' << format_real(r.y) << '\n';
}

struct SpikeRow {
    bool boundary;  // boundary grid row (f1, f2) or interior spike_sample row
    double x;
    double y_low;
    double y_high;
};

/// `samples` boundary rows on a uniform grid over (0, x_k], then `samples` seeded interior points.
inline std::vector<SpikeRow> spike_rows(unsigned k, std::uint64_t samples, std::uint64_t seed) {
    if (k < 1 || samples < 1) throw std::invalid_argument("spike_rows: k and samples must be >= 1");
    const SpikeBoundary spike(k);
    std::vector<SpikeRow> rows;
    rows.reserve(2 * samples);
    for (std::uint64_t i = 1; i <= samples; ++i) {
        const double x = i == samples ? spike.corner() : spike.corner() * static_cast<double>(i) / samples;
        rows.push_back({true, x, spike.lower(x), spike.upper(x)});
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::uint64_t i = 0; i < samples; ++i) {
        const double s = spike.corner() * (1.0 - unit(rng));
        const double t = 1.0 - unit(rng);
        const auto p = spike_sample(k, s, t);
        rows.push_back({false, p.x, p.y, p.y});
    }
    return rows;
}

inline void write_spike_csv(std::ostream& os, unsigned k, std::uint64_t samples, std::uint64_t seed) {
    os << "kind,x,y_low,y_high\n";
    for (const auto& r : spike_rows(k, samples, seed))
        os << (r.boundary ? "boundary" : "sample") << ',' << format_real(r.x) << ',' << format_real(r.y_low) << ','
           << format_real(r.y_high) << '\n';
}

inline void write_cantor_csv(std::ostream& os, double theta, unsigned level, std::size_t k) {
    if (level > 60) throw std::invalid_argument("cantor: level must be <= 60");
    if (k < 1 || k > 64) throw std::invalid_argument("cantor: k must lie in [1, 64]");
    const auto fv = cantor_measure_fourier(theta, level, k);
    os << "m,coefficient\n";
    for (std::size_t m = 1; m <= k; ++m) os << m << ',' << format_real(fv.coefficient(m)) << '\n';
}

}  // namespace attain
