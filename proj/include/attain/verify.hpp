#pragma once

// Numeric property checks behind the region boundary.
// Each check sweeps a grid or draws seeded random samples and reports the
// largest violation seen against a fixed tolerance.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "attain/measures.hpp"
#include "attain/region.hpp"

namespace attain {

struct CheckReport {
    std::string name;
    std::uint64_t grid_points = 0;
    double max_violation = 0.0;
    bool passed = false;
    double tolerance = 0.0;
    std::uint64_t seed = 0;
    std::string worst_sample;  // where max_violation was attained
    std::string note;

    std::string summary() const {
        std::ostringstream os;
        os.precision(6);
        os << (passed ? "PASS " : "FAIL ") << name << "  points=" << grid_points << "  max_violation=" << max_violation
           << "  tol=" << tolerance << "  seed=" << seed;
        if (!worst_sample.empty()) os << "  worst=[" << worst_sample << "]";
        if (!note.empty()) os << "  note=" << note;
        return os.str();
    }
};

using Real50 = boost::multiprecision::cpp_bin_float_50;

/// h(t) = t^3 cos t / sin^3 t, with h(0) = 1.
template <class Real>
Real h_ratio(const Real& t) {
    using std::cos;
    using std::sin;
    if (t == 0) return Real(1);
    const Real s = sin(t);
    return Real(t * t * t * cos(t) / (s * s * s));
}

/// q(s) from the convexity argument for eta_A; claimed <= 0 on [0, pi/2].
template <class Real>
Real q_poly(const Real& s) {
    using std::cos;
    using std::sin;
    const Real c = cos(s);
    const Real n = sin(s);
    const Real s2 = s * s;
    return Real(2 * c * c * c * n * s2 - c * c * c * n + c * n * s2 - 4 * c * c * n * n * s - s2 * s + n * c +
                s * n * n);
}

/// Taylor coefficient d_k of q(s) = sum_{k>=4} d_k s^{2k+1}.
inline double q_taylor_coefficient(int k) {
    auto fact = [](int m) {
        double f = 1.0;
        for (int i = 2; i <= m; ++i) f *= i;
        return f;
    };
    const double p2 = std::ldexp(1.0, 2 * k - 1);
    const double p4m4 = std::ldexp(1.0, 4 * k - 4);
    const double p4m1 = std::ldexp(1.0, 4 * k - 1);
    const double sign = (k + 1) % 2 == 0 ? 1.0 : -1.0;
    return sign * ((p2 + p4m4) / fact(2 * k - 1) + (p2 - p4m1) / fact(2 * k) + (p4m1 - p2) / fact(2 * k + 1));
}

namespace detail {

class Worst {
public:
    void offer(double violation, const std::function<std::string()>& where) {
        if (violation > value_) {
            value_ = violation;
            where_ = where();
        }
    }
    double value() const { return value_; }
    const std::string& where() const { return where_; }

private:
    double value_ = 0.0;
    std::string where_;
};

inline std::string fmt(std::initializer_list<std::pair<const char*, double>> items) {
    std::ostringstream os;
    os.precision(17);
    bool first = true;
    for (const auto& [k, v] : items) {
        os << (first ? "" : " ") << k << "=" << v;
        first = false;
    }
    return os.str();
}

inline CheckReport finish(std::string name, std::uint64_t points, const Worst& worst, double tol,
                          std::uint64_t seed = 0, std::string note = {}) {
    CheckReport r;
    r.name = std::move(name);
    r.grid_points = points;
    r.max_violation = worst.value();
    r.tolerance = tol;
    r.passed = r.max_violation <= tol;
    r.seed = seed;
    r.worst_sample = worst.where();
    r.note = std::move(note);
    return r;
}

/// Violation for a strictly decreasing step: the rise, or +inf for a flat step.
inline double decrease_violation(double prev, double next) {
    if (next == prev) return std::numeric_limits<double>::infinity();
    return std::max(0.0, next - prev);
}

// Bernoulli numbers |B_{2n}|, n = 1..20.
inline constexpr double kBernoulliAbs[20] = {
    1.0 / 6.0,
    1.0 / 30.0,
    1.0 / 42.0,
    1.0 / 30.0,
    5.0 / 66.0,
    691.0 / 2730.0,
    7.0 / 6.0,
    3617.0 / 510.0,
    43867.0 / 798.0,
    174611.0 / 330.0,
    854513.0 / 138.0,
    236364091.0 / 2730.0,
    8553103.0 / 6.0,
    23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    7709321041217.0 / 510.0,
    2577687858367.0 / 6.0,
    26315271553053477373.0 / 1919190.0,
    2929993913841559.0 / 6.0,
    261082718496449122051.0 / 13530.0,
};

}  // namespace detail

/// Series coefficients: cot x = 1/x - sum c_n x^{2n-1}, tan x = sum t_n x^{2n-1}.
inline double cot_series_coefficient(int n) {
    double f = 1.0;
    for (int i = 2; i <= 2 * n; ++i) f *= i;
    return std::ldexp(1.0, 2 * n) * detail::kBernoulliAbs[n - 1] / f;
}

inline double tan_series_coefficient(int n) {
    return (std::ldexp(1.0, 2 * n) - 1.0) * cot_series_coefficient(n);
}

/// Point of eta_A(t) = (log(A|G_A(t)|), log G_A(2t)) for odd A at t = pi/2 - u,
/// given both u and v = pi/(2A) - u so neither end loses precision.
struct EtaPoint {
    double z;      // log(A |G_A(t)|)
    double w;      // log(G_A(2t))
    double slope;  // dw/dz
};

inline EtaPoint eta_point(int A, double u, double v) {
    const double Au = A * u;
    double z = 0.0;
    double w = 0.0;
    if (u > 0.0) {
        const double sa = std::sin(0.5 * Au);
        const double su = std::sin(0.5 * u);
        const double log_cos_Au = Au < 0.5 ? std::log1p(-2.0 * sa * sa) : std::log(std::sin(A * v));
        z = log_cos_Au - std::log1p(-2.0 * su * su);
        w = z + std::log(std::sin(Au) / (A * std::sin(u)));
    }
    double ratio = 0.0;  // (cot u - A cot Au) / (A tan Au - tan u)
    if (Au < 0.5) {
        double num = 0.0;
        double den = 0.0;
        double a_pow = static_cast<double>(A) * A;
        double u_pow = 1.0;
        for (int n = 1; n <= 20; ++n) {
            num += cot_series_coefficient(n) * (a_pow - 1.0) * u_pow;
            den += tan_series_coefficient(n) * (a_pow - 1.0) * u_pow;
            a_pow *= static_cast<double>(A) * A;
            u_pow *= u * u;
        }
        ratio = num / den;
    } else {
        const double tv = std::tan(A * v);  // cot(Au)
        ratio = (1.0 / std::tan(u) - A * tv) / (A / tv - std::tan(u));
    }
    return {z, w, 1.0 + ratio};
}

inline CheckReport check_sinc_decreasing(std::uint64_t grid = 10000) {
    constexpr double tol = 1e-12;
    detail::Worst worst;
    auto sinc = [](double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; };
    double prev = sinc(0.0);
    for (std::uint64_t i = 1; i <= grid; ++i) {
        const double t = kPi * static_cast<double>(i) / static_cast<double>(grid);
        const double cur = sinc(t);
        worst.offer(std::max(detail::decrease_violation(prev, cur), -cur),
                    [&] { return detail::fmt({{"t", t}, {"sinc", cur}}); });
        prev = cur;
    }
    return detail::finish("sinc-decreasing", grid + 1, worst, tol);
}

inline CheckReport check_h_decreasing(std::uint64_t grid = 100000) {
    constexpr double tol = 1e-12;
    const Real50 half_pi = boost::math::constants::half_pi<Real50>();
    detail::Worst worst;
    Real50 prev = h_ratio(Real50(0));
    for (std::uint64_t i = 1; i <= grid; ++i) {
        const Real50 t = half_pi * i / grid;
        const Real50 cur = h_ratio(t);
        double violation = 0.0;
        if (cur == prev)
            violation = std::numeric_limits<double>::infinity();
        else if (cur > prev)
            violation = static_cast<double>(cur - prev);
        worst.offer(violation, [&] { return detail::fmt({{"t", static_cast<double>(t)}, {"h", static_cast<double>(cur)}}); });
        prev = cur;
    }
    return detail::finish("h-decreasing", grid + 1, worst, tol);
}

/// q(s) <= 0 on a grid over [0, pi/2], plus q(s)/s^9 -> d_4 = -16/135 near 0.
inline CheckReport check_q_nonpositive(std::uint64_t grid = 10000) {
    constexpr double tol = 1e-12;
    detail::Worst worst;
    for (std::uint64_t i = 0; i <= grid; ++i) {
        const double s = (kPi / 2.0) * static_cast<double>(i) / static_cast<double>(grid);
        const double q = q_poly(s);
        worst.offer(q, [&] { return detail::fmt({{"s", s}, {"q", q}}); });
    }
    const Real50 s0("0.01");
    const double fitted = static_cast<double>(q_poly(s0) / pow(s0, 9));
    const double d4 = -16.0 / 135.0;
    const double rel = std::abs(fitted / d4 - 1.0);
    worst.offer(std::max(0.0, rel - 0.01), [&] { return detail::fmt({{"taylor_fit", fitted}, {"d4", d4}}); });
    std::ostringstream note;
    note.precision(8);
    note << "q(0.01)/0.01^9=" << fitted << " rel_err_vs_d4=" << rel;
    return detail::finish("q-nonpositive", grid + 2, worst, tol, 0, note.str());
}

/// |G_A(t)| < 1/3 for t in (pi/A, pi/2] when A >= 4; for A = 3 only t = pi/2 reaches 1/3.
inline CheckReport check_one_third(int A_max = 100, std::uint64_t grid = 10000) {
    if (A_max < 4) throw std::invalid_argument("check_one_third: A_max must be >= 4");
    constexpr double tol = 1e-12;
    detail::Worst worst;
    std::uint64_t points = 0;
    for (int A = 3; A <= A_max; ++A) {
        const double lo = kPi / A;
        const double hi = kPi / 2.0;
        for (std::uint64_t i = 1; i <= grid; ++i) {
            const double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid);
            if (A == 3 && i == grid) continue;  // G_3(pi/2) = -1/3, the allowed exception
            const double g = std::abs(G(A, t));
            ++points;
            worst.offer(g - 1.0 / 3.0, [&] { return detail::fmt({{"A", A}, {"t", t}, {"|G|", g}}); });
        }
    }
    std::ostringstream note;
    note.precision(17);
    note << "A=3 exception |G_3(pi/2)|=" << std::abs(G(3, kPi / 2.0));
    return detail::finish("one-third", points, worst, tol, 0, note.str());
}

/// Whenever G_A(theta) > 1/3: G_A(2 theta) <= G_A(theta)^4.
inline CheckReport check_prime_curve_below_x4(int A_max = 50, std::uint64_t grid = 10000) {
    if (A_max < 2) throw std::invalid_argument("check_prime_curve_below_x4: A_max must be >= 2");
    constexpr double tol = 1e-12;
    detail::Worst worst;
    std::uint64_t points = 0;
    for (int A = 2; A <= A_max; ++A) {
        for (std::uint64_t i = 0; i <= grid; ++i) {
            const double theta = kPi * static_cast<double>(i) / static_cast<double>(grid);
            const auto p = gamma_curve(A, theta);
            ++points;
            if (p.x <= 1.0 / 3.0) continue;
            worst.offer(p.y - p.x * p.x * p.x * p.x,
                        [&] { return detail::fmt({{"A", A}, {"theta", theta}, {"x", p.x}, {"y", p.y}}); });
        }
    }
    return detail::finish("prime-curve-below-x4", points, worst, tol);
}

/// Distance of p1 * p2 from B1 = {|x| <= 1/2, 0 <= y <= (2|x|-1)^2}; 0 inside.
inline double b1_violation(PlanePoint p) {
    const double ax = std::abs(p.x);
    const double lin = 2.0 * ax - 1.0;
    return std::max({ax - 0.5, -p.y, p.y - lin * lin, 0.0});
}

inline CheckReport check_B2_product(std::uint64_t samples = 100000, std::uint64_t seed = 0) {
    if (samples < 100) throw std::invalid_argument("check_B2_product: samples must be >= 100");
    constexpr double tol = 1e-12;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(-1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto draw = [&] {
        const double x = ux(rng);
        const double floor_y = 2.0 * x * x - 1.0;
        return PlanePoint{x, floor_y * unit(rng)};  // y in [2x^2 - 1, 0]
    };
    detail::Worst worst;
    for (std::uint64_t i = 0; i < samples; ++i) {
        const auto p1 = draw();
        const auto p2 = draw();
        const auto prod = p1 * p2;
        worst.offer(b1_violation(prod), [&] {
            return detail::fmt({{"x1", p1.x}, {"y1", p1.y}, {"x2", p2.x}, {"y2", p2.y}});
        });
    }
    return detail::finish("b2-product", samples, worst, tol, seed);
}

/// eta_A convexity on the corner: slopes in (0, 4/3], non-decreasing in z, -> 4/3 at z = 0.
inline CheckReport check_eta_convexity(int A_max = 21, std::uint64_t grid = 10000) {
    if (A_max < 3) throw std::invalid_argument("check_eta_convexity: A_max must be >= 3");
    constexpr double slope_tol = 1e-6;
    constexpr double convex_tol = 1e-8;
    constexpr double z_floor = -30.0;
    detail::Worst worst;
    std::uint64_t points = 0;
    for (int A = 3; A <= A_max; A += 2) {
        const double span = kPi / (2.0 * A);
        EtaPoint prev = eta_point(A, 0.0, span);
        if (std::abs(prev.z) > 0.0 || std::abs(prev.w) > 0.0 || std::abs(prev.slope - 4.0 / 3.0) > 1e-12)
            worst.offer(1.0, [&] { return detail::fmt({{"A", A}, {"h(0)", prev.w}, {"h'(0)", prev.slope}}); });
        for (std::uint64_t i = 1; i < grid; ++i) {
            const double u = span * static_cast<double>(i) / static_cast<double>(grid);
            const double v = span * static_cast<double>(grid - i) / static_cast<double>(grid);
            const EtaPoint cur = eta_point(A, u, v);
            if (cur.z < z_floor) break;
            ++points;
            const double dz = prev.z - cur.z;
            const double chord = (prev.w - cur.w) / dz;
            const double second = (prev.slope - cur.slope) / dz;
            auto where = [&] { return detail::fmt({{"A", A}, {"u", u}, {"z", cur.z}, {"chord", chord}}); };
            // Each entry is the excess over its own bound, so the report tolerance is 0.
            if (!(dz > 0.0) || !(prev.w > cur.w) || !(chord > 0.0))
                worst.offer(std::numeric_limits<double>::infinity(), where);
            worst.offer(chord - 4.0 / 3.0 - slope_tol, where);
            worst.offer(-second - convex_tol, where);
            if (i == 1) worst.offer(std::abs(chord - 4.0 / 3.0) - 1e-3, where);
            prev = cur;
        }
    }
    return detail::finish("eta-convexity", points, worst, 0.0, 0,
                          "excess over bounds: chord <= 4/3+1e-6, second difference >= -1e-8, first chord within 1e-3 of 4/3");
}

/// Products over odd A_i of corner points satisfy y >= (A x)^{4/3}, A = prod A_i.
inline CheckReport check_corner_lower_bound(std::uint64_t samples = 10000, std::uint64_t seed = 0) {
    if (samples < 100) throw std::invalid_argument("check_corner_lower_bound: samples must be >= 100");
    constexpr double tol = 1e-9;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> factors(1, 4);
    std::uniform_int_distribution<int> half(1, 23);  // A = 2*half + 1 in [3, 47]
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    detail::Worst worst;
    for (std::uint64_t i = 0; i < samples; ++i) {
        const int count = factors(rng);
        long long product = 1;
        double ax = 1.0;  // prod A_i |G_{A_i}(t_i)|
        double y = 1.0;
        std::ostringstream desc;
        for (int j = 0; j < count; ++j) {
            const int A = 2 * half(rng) + 1;
            if (product * A > 100000) break;
            product *= A;
            const double u = unit(rng) * kPi / (2.0 * A);
            ax *= std::abs(A * G(A, kPi / 2.0 - u));
            y *= G(A, 2.0 * u);
            desc << "A=" << A << ",u=" << u << ";";
        }
        const double bound = std::pow(ax, 4.0 / 3.0);
        worst.offer(bound - y, [&] { return desc.str() + detail::fmt({{" Ax", ax}, {"y", y}}); });
    }
    return detail::finish("corner-lower-bound", samples, worst, tol, seed);
}

/// (2a^2-1)(2b^2-1) - (2(ab)^2-1) = 2(a^2-1)(b^2-1) >= 0 on [0,1]^2.
inline CheckReport check_convexity_identity(std::uint64_t samples = 100000, std::uint64_t seed = 0) {
    if (samples < 100) throw std::invalid_argument("check_convexity_identity: samples must be >= 100");
    constexpr double tol = 1e-12;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    detail::Worst worst;
    for (std::uint64_t i = 0; i < samples; ++i) {
        const double a = unit(rng);
        const double b = unit(rng);
        const double lhs = (2 * a * a - 1) * (2 * b * b - 1);
        const double rhs = 2 * (a * b) * (a * b) - 1;
        const double identity = 2 * (a * a - 1) * (b * b - 1);
        worst.offer(std::max(rhs - lhs, std::abs((lhs - rhs) - identity)),
                    [&] { return detail::fmt({{"x1", a}, {"x2", b}}); });
    }
    return detail::finish("convexity-identity", samples, worst, tol, seed);
}

/// Violation of the single-curve dichotomy for a triggered factor (A, t):
/// y <= 0, or y <= (2|x|-1)^2 with |x| < 1/3. For A = 2 only y <= 0 is allowed.
inline double mixed_sign_single_violation(int A, double t) {
    const auto p = gamma_curve(A, t);
    if (p.y <= 1e-12) return 0.0;
    if (A == 2) return p.y;
    const double lin = 2.0 * std::abs(p.x) - 1.0;
    return std::max(p.y - lin * lin, std::abs(p.x) - 1.0 / 3.0 + 1e-12);
}

/// Finite products of curve points with one triggered factor stay under y = (2|x|-1)^2.
inline CheckReport check_mixed_sign_region(std::uint64_t samples = 10000, std::uint64_t seed = 0) {
    if (samples < 100) throw std::invalid_argument("check_mixed_sign_region: samples must be >= 100");
    constexpr double tol = 1e-9;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> factors(1, 4);
    std::uniform_int_distribution<int> pick_A(2, 30);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    detail::Worst worst;
    std::uint64_t literal_form_failures = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        const int count = factors(rng);
        std::uniform_int_distribution<int> pick_trigger(0, count - 1);
        const int trigger = pick_trigger(rng);
        PlanePoint prod{1.0, 1.0};
        std::ostringstream desc;
        desc.precision(17);
        for (int j = 0; j < count; ++j) {
            const int A = pick_A(rng);
            double t = unit(rng) * kPi / 2.0;
            if (j == trigger) {
                const double lo = kPi / (2.0 * A);
                const double hi = A % 2 ? kPi / 2.0 - kPi / (2.0 * A) : kPi / 2.0;
                t = lo + unit(rng) * (hi - lo);
                worst.offer(mixed_sign_single_violation(A, t) - tol + 1e-12,
                            [&] { return "single " + detail::fmt({{"A", A}, {"t", t}}); });
            }
            prod = prod * gamma_curve(A, t);
            desc << "A=" << A << ",t=" << t << (j == trigger ? "*" : "") << ";";
        }
        const double lin = 2.0 * std::abs(prod.x) - 1.0;
        worst.offer(prod.y - lin * lin, [&] { return desc.str(); });
        if (prod.y > 2.0 * prod.x * prod.x - 1.0 + tol) ++literal_form_failures;
    }
    std::ostringstream note;
    note << "tested y<=(2|x|-1)^2; the form y<=2|x|^2-1 fails on " << literal_form_failures << "/" << samples
         << " samples";
    return detail::finish("mixed-sign-region", samples, worst, tol, seed, note.str());
}

struct NamedCheck {
    std::string name;
    std::function<CheckReport(std::uint64_t seed)> run;
};

/// Default parameters match the acceptance sizes.
inline std::vector<NamedCheck> default_checks() {
    return {
        {"sinc-decreasing", [](std::uint64_t) { return check_sinc_decreasing(10000); }},
        {"h-decreasing", [](std::uint64_t) { return check_h_decreasing(100000); }},
        {"q-nonpositive", [](std::uint64_t) { return check_q_nonpositive(10000); }},
        {"one-third", [](std::uint64_t) { return check_one_third(100, 10000); }},
        {"prime-curve-below-x4", [](std::uint64_t) { return check_prime_curve_below_x4(50, 10000); }},
        {"b2-product", [](std::uint64_t s) { return check_B2_product(100000, s); }},
        {"eta-convexity", [](std::uint64_t) { return check_eta_convexity(21, 10000); }},
        {"corner-lower-bound", [](std::uint64_t s) { return check_corner_lower_bound(10000, s); }},
        {"convexity-identity", [](std::uint64_t s) { return check_convexity_identity(100000, s); }},
        {"mixed-sign-region", [](std::uint64_t s) { return check_mixed_sign_region(10000, s); }},
    };
}

/// Runs the named checks ("all" for every one) on up to `jobs` threads, reports in suite order.
inline std::vector<CheckReport> run_checks(const std::vector<std::string>& names, std::uint64_t seed, unsigned jobs) {
    const auto all = default_checks();
    std::vector<const NamedCheck*> selected;
    for (const auto& c : all) {
        const bool wanted = std::any_of(names.begin(), names.end(), [&](const std::string& n) { return n == "all" || n == c.name; });
        if (wanted) selected.push_back(&c);
    }
    for (const auto& n : names) {
        if (n == "all") continue;
        if (std::none_of(all.begin(), all.end(), [&](const NamedCheck& c) { return c.name == n; }))
            throw std::invalid_argument("unknown check: " + n);
    }
    std::vector<CheckReport> reports(selected.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < selected.size(); i = next++) {
            reports[i] = selected[i]->run(seed);
            reports[i].seed = seed;
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(selected.size())));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return reports;
}

}  // namespace attain
