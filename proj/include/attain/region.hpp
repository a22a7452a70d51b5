#pragma once

// Geometry of the attainable region A2 = {(nu^(1), nu^(2))}: the max curve,
// the spikes between f1(k, .) and f2(k, .) reaching (1/(2k+1), 1), and the
// membership oracles built from them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "attain/measures.hpp"

namespace attain {

inline constexpr double kDefaultTolerance = 1e-9;

inline void require_unit_square(PlanePoint p, const char* who) {
    if (!(std::abs(p.x) <= 1.0 && std::abs(p.y) <= 1.0))
        throw std::invalid_argument(std::string(who) + ": point outside [-1, 1]^2");
}

/// M(x) = max(x^4, (2|x| - 1)^2); the two branches cross at |x| = sqrt(2) - 1.
inline double max_curve(double x) {
    if (!(std::abs(x) <= 1.0)) throw std::invalid_argument("max_curve: |x| must be <= 1");
    const double ax = std::abs(x);
    const double lin = 2.0 * ax - 1.0;
    return std::max(ax * ax * ax * ax, lin * lin);
}

/// Fourier image of all symmetric probability measures: 2x^2 - 1 <= y <= 1.
inline bool in_P2(PlanePoint p, double tol = 1e-12) {
    return std::abs(p.x) <= 1.0 + tol && p.y <= 1.0 + tol && p.y >= 2.0 * p.x * p.x - 1.0 - tol;
}

inline double spike_corner(unsigned k) {
    if (k == 0) throw std::invalid_argument("spike: k must be >= 1");
    return 1.0 / (2.0 * k + 1.0);
}

namespace detail {

inline void require_spike_domain(unsigned k, double x, const char* who) {
    const double xk = spike_corner(k);
    if (!(x >= 0.0 && x <= xk * (1.0 + 4.0 * std::numeric_limits<double>::epsilon())))
        throw std::invalid_argument(std::string(who) + ": x outside [0, 1/(2k+1)]");
}

inline void require_odd_A(int A, const char* who) {
    if (A < 3 || A % 2 == 0) throw std::invalid_argument(std::string(who) + ": A must be odd and >= 3");
}

/// u in [0, pi/(2A)] with cos(Au) / (A cos u) = target, i.e. |G_A(pi/2 - u)| = target.
/// The left side decreases strictly from 1/A to 0 on that interval.
inline double corner_offset(int A, double target) {
    const double hi_end = kPi / (2.0 * A);
    if (target >= 1.0 / A) return 0.0;
    if (target <= 0.0) return hi_end;
    double lo = 0.0;
    double hi = hi_end;
    for (int it = 0; it < 200 && hi - lo >= 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double value = std::cos(A * mid) / (A * std::cos(mid));
        (value > target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

/// Odd divisors A > 1 of an odd number, ascending.
inline std::vector<int> odd_divisors_above_one(std::uint64_t odd) {
    std::vector<int> out;
    for (std::uint64_t d = 3; d * d <= odd; d += 2) {
        if (odd % d) continue;
        out.push_back(static_cast<int>(d));
        if (d * d != odd) out.push_back(static_cast<int>(odd / d));
    }
    if (odd > 1) out.push_back(static_cast<int>(odd));
    std::sort(out.begin(), out.end());
    return out;
}

/// Lower spike boundary: (x_k, 1) times the parabola 2x^2 - 1, re-parametrized.
inline double f1(unsigned k, double x) {
    detail::require_spike_domain(k, x, "f1");
    const double m = 2.0 * k + 1.0;
    return 2.0 * m * m * x * x - 1.0;
}

/// The t in [pi/2 - pi/(2A), pi/2] with |G_A(t)| = target (bisection; |G_A| is monotone there).
inline double solve_G_on_corner(int A, double target) {
    detail::require_odd_A(A, "solve_G_on_corner");
    if (!(target >= 0.0 && target <= 1.0 / A))
        throw std::invalid_argument("solve_G_on_corner: target outside [0, 1/A]");
    return kPi / 2.0 - detail::corner_offset(A, target);
}

/// Single-divisor candidate for the upper spike boundary.
inline double g_spike(unsigned k, int A, double x) {
    detail::require_spike_domain(k, x, "g_spike");
    detail::require_odd_A(A, "g_spike");
    const auto m = 2ull * k + 1ull;
    if (m % static_cast<unsigned long long>(A) != 0)
        throw std::invalid_argument("g_spike: A does not divide 2k+1");
    if (x == 0.0) return 0.0;
    const double target = std::min(x * static_cast<double>(m) / A, 1.0 / A);
    return G(A, 2.0 * detail::corner_offset(A, target));
}

struct SpikeValue {
    double value;
    int divisor;
    double t;  // corner root of the maximizing divisor
};

/// Spike k: corner x_k = 1/(2k+1), the odd divisors of 2k+1 and their corner brackets.
class SpikeBoundary {
public:
    explicit SpikeBoundary(unsigned k)
        : k_(k), corner_(spike_corner(k)), divisors_(odd_divisors_above_one(2ull * k + 1ull)) {
        for (int A : divisors_) brackets_.push_back({kPi / 2.0 - kPi / (2.0 * A), kPi / 2.0});
    }

    unsigned k() const { return k_; }
    double corner() const { return corner_; }
    const std::vector<int>& divisors() const { return divisors_; }
    /// [pi/2 - pi/(2A), pi/2] for each divisor, in divisor order.
    const std::vector<std::pair<double, double>>& brackets() const { return brackets_; }

    double lower(double x) const { return f1(k_, x); }

    /// Upper boundary with the maximizing divisor: by the single-index reduction
    /// f2 is a maximum over divisors, never over full factorizations.
    SpikeValue upper_with_witness(double x) const {
        detail::require_spike_domain(k_, x, "f2");
        SpikeValue best{-std::numeric_limits<double>::infinity(), 0, 0.0};
        const double m = 2.0 * k_ + 1.0;
        for (int A : divisors_) {
            const double u = x == 0.0 ? kPi / (2.0 * A) : detail::corner_offset(A, std::min(x * m / A, 1.0 / A));
            const double value = x == 0.0 ? 0.0 : G(A, 2.0 * u);
            if (value > best.value) best = {value, A, kPi / 2.0 - u};
        }
        return best;
    }

    double upper(double x) const { return upper_with_witness(x).value; }

private:
    unsigned k_;
    double corner_;
    std::vector<int> divisors_;
    std::vector<std::pair<double, double>> brackets_;
};

inline double f2(unsigned k, double x) { return SpikeBoundary(k).upper(x); }

/// (s, f2(k, s)) times (t, 2t^2 - 1): interior points of the spike family.
inline PlanePoint spike_sample(unsigned k, double s, double t) {
    if (!(s > 0.0)) throw std::invalid_argument("spike_sample: s must be > 0");
    detail::require_spike_domain(k, s, "spike_sample");
    if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("spike_sample: t must lie in (0, 1]");
    return {s * t, f2(k, s) * (2.0 * t * t - 1.0)};
}

enum class Certificate { below_max_curve, spike, boundary_y1_point, outside };

struct RegionVerdict {
    bool attainable = false;
    Certificate certificate = Certificate::outside;
    unsigned spike_k = 0;     // spike certificates only
    int divisor = 0;          //
    double t_root = 0.0;      //
    std::string violated;     // outside certificates only
    double tolerance = kDefaultTolerance;

    std::string describe() const {
        std::ostringstream os;
        os.precision(17);
        switch (certificate) {
            case Certificate::below_max_curve: os << "below-max-curve"; break;
            case Certificate::boundary_y1_point: os << "boundary-y1-point"; break;
            case Certificate::spike: os << "spike(k=" << spike_k << ", A=" << divisor << ", t=" << t_root << ")"; break;
            case Certificate::outside: os << "outside(" << violated << ")"; break;
        }
        return os.str();
    }
};

namespace detail {

inline RegionVerdict inside(Certificate c, double tol) {
    RegionVerdict v;
    v.attainable = true;
    v.certificate = c;
    v.tolerance = tol;
    return v;
}

inline RegionVerdict outside(std::string why, double tol) {
    RegionVerdict v;
    v.violated = std::move(why);
    v.tolerance = tol;
    return v;
}

inline std::optional<RegionVerdict> common_bounds(PlanePoint p, double tol, double ax) {
    if (p.y < 2.0 * ax * ax - 1.0 - tol) return outside("y < 2x^2 - 1", tol);
    if (p.y >= 1.0 - tol && (ax <= tol || ax >= 1.0 - tol)) return inside(Certificate::boundary_y1_point, tol);
    if (p.y <= max_curve(ax) + tol) return inside(Certificate::below_max_curve, tol);
    return std::nullopt;
}

}  // namespace detail

/// Membership in A2. |x| > 1/3: between the parabola and the max curve.
/// |x| <= 1/3: additionally any spike domain {x <= x_k, f1 <= y <= f2}.
inline RegionVerdict is_attainable(PlanePoint p, double tol = kDefaultTolerance) {
    require_unit_square(p, "is_attainable");
    if (!(tol >= 0.0)) throw std::invalid_argument("is_attainable: tolerance must be >= 0");
    const double ax = std::abs(p.x) <= tol ? 0.0 : std::abs(p.x);
    if (auto v = detail::common_bounds(p, tol, ax)) return *v;
    if (ax > 1.0 / 3.0 + tol) return detail::outside("y > max(x^4, (2|x|-1)^2)", tol);

    // Corners within tol to the right of x: any odd m in [1/x, 1/(x - tol)] with y ~ 1.
    if (p.y >= 1.0 - tol) {
        double m = std::ceil(1.0 / ax);
        if (std::fmod(m, 2.0) == 0.0) m += 1.0;
        m = std::max(m, 3.0);
        if (ax - tol <= 0.0 || m <= 1.0 / (ax - tol)) {
            auto v = detail::inside(Certificate::spike, tol);
            v.spike_k = static_cast<unsigned>((m - 1.0) / 2.0);
            v.divisor = static_cast<int>(m);
            v.t_root = kPi / 2.0;
            return v;
        }
    }

    // f2(k, x) <= (2k+1) x bounds 2k+1 from below, f1(k, x) <= y from above.
    const double m_lo = std::max(3.0, (p.y - tol) / ax);
    const double m_hi = std::sqrt((p.y + tol + 1.0) / 2.0) / ax;
    const auto k_lo = static_cast<unsigned long long>(std::max(1.0, std::floor((m_lo - 1.0) / 2.0) - 1.0));
    const auto k_hi = static_cast<unsigned long long>(std::floor((m_hi - 1.0) / 2.0) + 1.0);
    for (auto k = k_lo; k <= k_hi; ++k) {
        const SpikeBoundary spike(static_cast<unsigned>(k));
        if (ax > spike.corner()) continue;
        if (spike.lower(ax) - tol > p.y) continue;
        const auto top = spike.upper_with_witness(ax);
        if (p.y <= top.value + tol) {
            auto v = detail::inside(Certificate::spike, tol);
            v.spike_k = static_cast<unsigned>(k);
            v.divisor = top.divisor;
            v.t_root = top.t;
            return v;
        }
    }
    return detail::outside("y > (2|x|-1)^2 and outside every spike", tol);
}

/// Square-free attainable region: exactly the points under the max curve.
inline RegionVerdict is_squarefree_attainable(PlanePoint p, double tol = kDefaultTolerance) {
    require_unit_square(p, "is_squarefree_attainable");
    const double ax = std::abs(p.x);
    if (auto v = detail::common_bounds(p, tol, ax)) return *v;
    return detail::outside("y > max(x^4, (2|x|-1)^2)", tol);
}

/// eta_a attainable iff 2a - 1 is 0, +-1 or +-1/(2k+1). Exact on the rational a = num/den.
inline bool classify_eta(std::int64_t num, std::int64_t den) {
    if (den <= 0 || num < 0 || num > den) throw std::invalid_argument("classify_eta: need 0 <= num/den <= 1");
    std::int64_t p = 2 * num - den;  // 2a - 1 = p / den
    std::int64_t q = den;
    const auto g = std::gcd(p < 0 ? -p : p, q);
    p /= g;
    q /= g;
    if (p == 0) return true;
    return (p == 1 || p == -1) && q % 2 == 1;
}

/// Same classification for a floating-point a: 2a - 1 is matched against 0 and
/// odd reciprocals 1/m to within 1e-12 relative.
inline bool classify_eta(double a) {
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("classify_eta: a must lie in [0, 1]");
    const double ax = std::abs(2.0 * a - 1.0);
    if (ax <= 1e-12) return true;
    const double m = std::round(1.0 / ax);
    if (std::fmod(m, 2.0) != 1.0) return false;
    return std::abs(ax * m - 1.0) <= 1e-12;
}

}  // namespace attain
