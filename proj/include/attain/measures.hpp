#pragma once

// Symmetric atomic probability measures on the de-symmetrized circle R/2piZ,
// their cosine Fourier coefficients, convolution, and the closed-form
// families used by the classification: upsilon_{theta;M}, arcs, Cantor sets.
//
// De-symmetrization maps a lattice direction phi to 4*phi, so the m-th
// coefficient here is the (4m)-th coefficient of the symmetric measure on
// the unit circle.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "attain/arithmetic.hpp"

namespace attain {

inline constexpr double kPi = std::numbers::pi;

/// Reduce an angle to (-pi, pi].
inline double canonical_angle(double theta) {
    double r = std::remainder(theta, 2.0 * kPi);
    if (r <= -kPi) r += 2.0 * kPi;
    return r;
}

struct Atom {
    double angle;   // (-pi, pi]
    double weight;  // (0, 1]
};

struct PlanePoint {
    double x;
    double y;
};

inline PlanePoint operator*(PlanePoint p, PlanePoint q) { return {p.x * q.x, p.y * q.y}; }

class AtomicMeasure {
public:
    static constexpr double kMergeTolerance = 1e-9;
    static constexpr double kWeightTolerance = 1e-12;

    /// Canonicalizes angles, merges atoms closer than kMergeTolerance and
    /// validates total mass and conjugation symmetry.
    explicit AtomicMeasure(std::vector<Atom> atoms) : atoms_(normalize(std::move(atoms))) {
        validate();
    }

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }

    /// Atom-by-atom comparison of two canonical measures.
    bool approx_equal(const AtomicMeasure& other, double tol) const {
        if (atoms_.size() != other.atoms_.size()) return false;
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            const double da = std::abs(canonical_angle(atoms_[i].angle - other.atoms_[i].angle));
            if (da > tol || std::abs(atoms_[i].weight - other.atoms_[i].weight) > tol) return false;
        }
        return true;
    }

private:
    static std::vector<Atom> normalize(std::vector<Atom> in) {
        for (auto& a : in) {
            if (!(a.weight > 0.0) || !std::isfinite(a.angle))
                throw std::invalid_argument("AtomicMeasure: atoms need finite angles and positive weights");
            a.angle = canonical_angle(a.angle);
        }
        std::sort(in.begin(), in.end(), [](const Atom& l, const Atom& r) { return l.angle < r.angle; });

        std::vector<Atom> out;
        double anchor = 0.0;
        double moment = 0.0;
        for (const auto& a : in) {
            if (!out.empty() && a.angle - anchor <= kMergeTolerance) {
                out.back().weight += a.weight;
                moment += a.weight * a.angle;
                out.back().angle = moment / out.back().weight;
                continue;
            }
            out.push_back(a);
            anchor = a.angle;
            moment = a.weight * a.angle;
        }
        // Atoms straddling +-pi are the same point.
        if (out.size() > 1 && (out.front().angle + kPi) + (kPi - out.back().angle) <= kMergeTolerance) {
            out.back().weight += out.front().weight;
            out.erase(out.begin());
        }
        for (auto& a : out) {
            if (std::abs(a.angle) <= kMergeTolerance) a.angle = 0.0;
            if (kPi - std::abs(a.angle) <= kMergeTolerance) a.angle = kPi;
        }
        std::sort(out.begin(), out.end(), [](const Atom& l, const Atom& r) { return l.angle < r.angle; });
        return out;
    }

    void validate() const {
        const double total = std::accumulate(atoms_.begin(), atoms_.end(), 0.0,
                                             [](double s, const Atom& a) { return s + a.weight; });
        if (std::abs(total - 1.0) > kWeightTolerance)
            throw std::invalid_argument("AtomicMeasure: weights sum to " + std::to_string(total));
        // Sorted by angle, so the mirror of atom i is atom n-1-i once the
        // self-symmetric atoms (0 and pi) are accounted for.
        std::vector<Atom> mirrored;
        mirrored.reserve(atoms_.size());
        for (const auto& a : atoms_) mirrored.push_back({canonical_angle(-a.angle), a.weight});
        std::sort(mirrored.begin(), mirrored.end(), [](const Atom& l, const Atom& r) { return l.angle < r.angle; });
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            if (std::abs(mirrored[i].angle - atoms_[i].angle) > 2 * kMergeTolerance ||
                std::abs(mirrored[i].weight - atoms_[i].weight) > kWeightTolerance)
                throw std::invalid_argument("AtomicMeasure: measure is not symmetric under negation");
        }
    }

    std::vector<Atom> atoms_;
};

/// First k cosine coefficients (nu^(1), ..., nu^(k)).
class FourierVector {
public:
    static constexpr double kTolerance = 1e-12;

    explicit FourierVector(std::vector<double> coefficients) : c_(std::move(coefficients)) {
        if (c_.empty()) throw std::invalid_argument("FourierVector: need at least one coefficient");
        for (double v : c_)
            if (!(std::abs(v) <= 1.0 + kTolerance))
                throw std::invalid_argument("FourierVector: coefficient outside [-1, 1]");
        if (c_.size() >= 2 && c_[1] < 2.0 * c_[0] * c_[0] - 1.0 - kTolerance)
            throw std::invalid_argument("FourierVector: second coefficient below 2x^2 - 1");
    }

    std::size_t size() const { return c_.size(); }
    /// 1-based: coefficient(m) is the m-th Fourier coefficient.
    double coefficient(std::size_t m) const { return c_.at(m - 1); }
    const std::vector<double>& values() const { return c_; }
    PlanePoint plane() const { return {c_.at(0), c_.at(1)}; }

private:
    std::vector<double> c_;
};

inline FourierVector fourier(const AtomicMeasure& mu, std::size_t k) {
    if (k == 0) throw std::invalid_argument("fourier: k must be positive");
    std::vector<double> c(k, 0.0);
    for (std::size_t m = 1; m <= k; ++m)
        for (const auto& a : mu.atoms()) c[m - 1] += a.weight * std::cos(static_cast<double>(m) * a.angle);
    return FourierVector(std::move(c));
}

inline AtomicMeasure convolve(const AtomicMeasure& lhs, const AtomicMeasure& rhs) {
    std::vector<Atom> atoms;
    atoms.reserve(lhs.size() * rhs.size());
    for (const auto& a : lhs.atoms())
        for (const auto& b : rhs.atoms()) atoms.push_back({a.angle + b.angle, a.weight * b.weight});
    return AtomicMeasure(std::move(atoms));
}

inline AtomicMeasure point_mass_zero() { return AtomicMeasure({{0.0, 1.0}}); }

/// upsilon_{theta;M}: M+1 equal atoms at (M - 2j) theta, j = 0..M.
inline AtomicMeasure upsilon(double theta, unsigned M) {
    if (M == 0) throw std::invalid_argument("upsilon: M must be >= 1");
    std::vector<Atom> atoms;
    for (unsigned j = 0; j <= M; ++j)
        atoms.push_back({(static_cast<double>(M) - 2.0 * j) * theta, 1.0 / (M + 1)});
    return AtomicMeasure(std::move(atoms));
}

/// De-symmetrized delta~_{theta,m} for a lattice angle theta in [0, pi/4].
inline AtomicMeasure tilde_delta(double lattice_theta, unsigned m) { return upsilon(4.0 * lattice_theta, m); }

/// De-symmetrized eta_a = a delta~_0 + (1 - a) delta~_{pi/4}, i.e. a delta_0 + (1 - a) delta_pi.
inline AtomicMeasure eta_measure(double a) {
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("eta_measure: a must lie in [0, 1]");
    if (a == 0.0) return AtomicMeasure({{kPi, 1.0}});
    if (a == 1.0) return point_mass_zero();
    return AtomicMeasure({{0.0, a}, {kPi, 1.0 - a}});
}

/// Empirical measure nu_n of the de-symmetrized lattice directions on the circle of radius sqrt(n).
inline AtomicMeasure nu_from_lattice(std::uint64_t n) {
    const auto pts = lattice_points(n);
    if (pts.empty()) throw std::invalid_argument("nu_from_lattice: " + std::to_string(n) + " is not a sum of two squares");
    const double w = 1.0 / static_cast<double>(pts.size());
    std::vector<Atom> atoms;
    atoms.reserve(pts.size());
    for (const auto& p : pts)
        atoms.push_back({4.0 * std::atan2(static_cast<double>(p.b), static_cast<double>(p.a)), w});
    return AtomicMeasure(std::move(atoms));
}

/// G_A(theta) = sin(A theta) / (A sin theta), continuous at theta in pi Z.
/// theta is first reduced to e = theta - j pi with a two-part pi, using
/// G_A(j pi + e) = (-1)^((A-1) j) G_A(e).
inline double G(int A, double theta) {
    if (A < 2) throw std::invalid_argument("G: A must be >= 2");
    constexpr double pi_hi = kPi;
    constexpr double pi_lo = 1.2246467991473532e-16;
    const double j = std::round(theta / kPi);
    const double e = (theta - j * pi_hi) - j * pi_lo;
    const bool flip = static_cast<long long>(A - 1) % 2 != 0 && static_cast<long long>(j) % 2 != 0;
    double value;
    if (std::abs(A * e) >= 1e-4) {
        value = std::sin(A * e) / (A * std::sin(e));
    } else {
        const double a2 = static_cast<double>(A) * A;
        const double e2 = e * e;
        value = 1.0 - (a2 - 1.0) * e2 / 6.0 + (a2 - 1.0) * (3.0 * a2 + 7.0) * e2 * e2 / 360.0;
    }
    value = std::clamp(value, -1.0, 1.0);
    return flip ? -value : value;
}

/// gamma_A(theta) = (G_A(theta), G_A(2 theta)): the plane image of upsilon_{theta;A-1}.
inline PlanePoint gamma_curve(int A, double theta) { return {G(A, theta), G(A, 2.0 * theta)}; }

/// Uniform measure on [-Theta, Theta] (the de-symmetrized arc measure tau).
inline FourierVector arc_measure_fourier(double half_width, std::size_t k) {
    if (!(half_width > 0.0 && half_width <= kPi))
        throw std::invalid_argument("arc_measure_fourier: half-width must lie in (0, pi]");
    if (k == 0) throw std::invalid_argument("arc_measure_fourier: k must be positive");
    std::vector<double> c(k);
    for (std::size_t m = 1; m <= k; ++m) {
        const double arg = static_cast<double>(m) * half_width;
        c[m - 1] = std::sin(arg) / arg;
    }
    return FourierVector(std::move(c));
}

/// Uniform measure on the level-L middle-thirds Cantor approximant of [-theta, theta]:
/// C_{L+1,theta} = (C_{L,theta/3} - 2theta/3) u (C_{L,theta/3} + 2theta/3).
inline FourierVector cantor_measure_fourier(double theta, unsigned level, std::size_t k) {
    if (!(theta > 0.0 && theta <= kPi))
        throw std::invalid_argument("cantor_measure_fourier: theta must lie in (0, pi]");
    if (k == 0) throw std::invalid_argument("cantor_measure_fourier: k must be positive");
    std::vector<double> c(k);
    for (std::size_t m = 1; m <= k; ++m) {
        double width = theta;
        double value = 1.0;
        for (unsigned j = 1; j <= level; ++j) {
            value *= std::cos(2.0 * static_cast<double>(m) * width / 3.0);
            width /= 3.0;
        }
        const double arg = static_cast<double>(m) * width;
        c[m - 1] = value * std::sin(arg) / arg;
    }
    return FourierVector(std::move(c));
}

/// (nu_n^(1), nu_n^(2)) from the factorization: nu_n = delta_{a pi} * conv_i upsilon_{theta_p_i; e_i}.
inline PlanePoint lattice_fourier_plane(const Factorization& f) {
    if (!is_in_S(f)) throw std::invalid_argument("lattice_fourier_plane: n is not a sum of two squares");
    PlanePoint out{1.0, 1.0};
    for (const auto& pp : f.factors) {
        if (pp.prime == 2) {
            if (pp.exponent % 2) out.x = -out.x;
        } else if (pp.prime % 4 == 1) {
            const double theta = detail::cornacchia(pp.prime).desym_angle;
            out = out * gamma_curve(static_cast<int>(pp.exponent) + 1, theta);
        }
    }
    return out;
}

}  // namespace attain
