#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "attain/measures.hpp"
#include "oracles.hpp"

using namespace attain;

namespace {

AtomicMeasure random_symmetric(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(0.0, kPi);
    std::uniform_real_distribution<double> weight(0.1, 1.0);
    std::uniform_int_distribution<int> size(1, 5);
    std::vector<Atom> atoms;
    double total = 0.0;
    const int pairs = size(rng);
    for (int i = 0; i < pairs; ++i) {
        const double th = angle(rng);
        const double w = weight(rng);
        atoms.push_back({th, w});
        atoms.push_back({-th, w});
        total += 2 * w;
    }
    for (auto& a : atoms) a.weight /= total;
    // Rescaled weights may drift by an ulp; put the slack on the first pair.
    double sum = 0.0;
    for (const auto& a : atoms) sum += a.weight;
    atoms[0].weight += (1.0 - sum) / 2;
    atoms[1].weight += (1.0 - sum) / 2;
    return AtomicMeasure(std::move(atoms));
}

}  // namespace

TEST(CanonicalAngle, Range) {
    EXPECT_DOUBLE_EQ(canonical_angle(-kPi), kPi);
    EXPECT_DOUBLE_EQ(canonical_angle(kPi), kPi);
    EXPECT_NEAR(canonical_angle(3 * kPi / 2), -kPi / 2, 1e-15);
    EXPECT_NEAR(canonical_angle(0.3 + 8 * kPi), 0.3, 1e-14);
}

TEST(AtomicMeasure, RejectsBadInput) {
    EXPECT_THROW(AtomicMeasure({{0.0, 0.5}}), std::invalid_argument);
    EXPECT_THROW(AtomicMeasure({{0.3, 1.0}}), std::invalid_argument);
    EXPECT_THROW(AtomicMeasure({{0.3, 0.6}, {-0.3, 0.4}}), std::invalid_argument);
    EXPECT_THROW(AtomicMeasure({{0.0, -1.0}, {0.0, 2.0}}), std::invalid_argument);
    EXPECT_NO_THROW(AtomicMeasure({{0.3, 0.5}, {-0.3, 0.5}}));
}

TEST(NuFromLattice, Examples) {
    const auto one = nu_from_lattice(1);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one.atoms()[0].angle, 0.0);
    EXPECT_DOUBLE_EQ(one.atoms()[0].weight, 1.0);

    const double th5 = 4 * std::atan(0.5);
    EXPECT_TRUE(nu_from_lattice(5).approx_equal(AtomicMeasure({{th5, 0.5}, {-th5, 0.5}}), 1e-14));

    const auto nine = nu_from_lattice(9);
    ASSERT_EQ(nine.size(), 1u);
    EXPECT_EQ(nine.atoms()[0].angle, 0.0);

    // 2 = 1 + 1: every direction folds onto pi.
    const auto two = nu_from_lattice(2);
    ASSERT_EQ(two.size(), 1u);
    EXPECT_EQ(two.atoms()[0].angle, kPi);
    EXPECT_THROW(nu_from_lattice(3), std::invalid_argument);
}

TEST(Fourier, ExactSmallCases) {
    const auto f5 = fourier(nu_from_lattice(5), 2);
    EXPECT_NEAR(f5.coefficient(1), -7.0 / 25, 1e-14);
    EXPECT_NEAR(f5.coefficient(2), -527.0 / 625, 1e-14);
    EXPECT_NEAR(fourier(nu_from_lattice(25), 1).coefficient(1), -143.0 / 625, 1e-14);
    const auto d = fourier(point_mass_zero(), 3);
    EXPECT_EQ(d.values(), (std::vector<double>{1, 1, 1}));
    EXPECT_THROW(fourier(point_mass_zero(), 0), std::invalid_argument);
}

TEST(Fourier, MatchesExactGaussianPowers) {
    for (std::int64_t n : {5, 10, 13, 25, 65, 125, 169, 325, 1105}) {
        const auto fv = fourier(nu_from_lattice(static_cast<std::uint64_t>(n)), 2);
        for (int m = 1; m <= 2; ++m)
            EXPECT_NEAR(fv.coefficient(m), static_cast<double>(oracle::exact_coefficient(n, m).value()), 1e-13)
                << n << " m=" << m;
    }
}

TEST(FourierVector, Invariants) {
    EXPECT_THROW(FourierVector({}), std::invalid_argument);
    EXPECT_THROW(FourierVector({1.5}), std::invalid_argument);
    EXPECT_THROW(FourierVector({0.9, -0.9}), std::invalid_argument);
    EXPECT_NO_THROW(FourierVector({0.0, -1.0}));
}

TEST(Convolve, IdentityAndSquare) {
    const double th = 0.7;
    const auto u = upsilon(th, 1);
    EXPECT_TRUE(convolve(point_mass_zero(), u).approx_equal(u, 1e-15));
    const auto sq = convolve(u, u);
    EXPECT_TRUE(sq.approx_equal(AtomicMeasure({{-2 * th, 0.25}, {0.0, 0.5}, {2 * th, 0.25}}), 1e-15));
}

TEST(Convolve, FourierHomomorphismRandom) {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 1000; ++i) {
        const auto a = random_symmetric(rng);
        const auto b = random_symmetric(rng);
        const auto fa = fourier(a, 10);
        const auto fb = fourier(b, 10);
        const auto fab = fourier(convolve(a, b), 10);
        for (std::size_t m = 1; m <= 10; ++m)
            ASSERT_NEAR(fab.coefficient(m), fa.coefficient(m) * fb.coefficient(m), 1e-12);
    }
}

TEST(Convolve, LatticeMeasuresMultiply) {
    const auto f = fourier(convolve(nu_from_lattice(5), nu_from_lattice(13)), 2);
    const auto f5 = fourier(nu_from_lattice(5), 2);
    const auto f13 = fourier(nu_from_lattice(13), 2);
    const auto f65 = fourier(nu_from_lattice(65), 2);
    for (std::size_t m = 1; m <= 2; ++m) {
        EXPECT_NEAR(f.coefficient(m), f5.coefficient(m) * f13.coefficient(m), 1e-14);
        EXPECT_NEAR(f65.coefficient(m), f.coefficient(m), 1e-14);
    }
}

TEST(Upsilon, Examples) {
    EXPECT_TRUE(upsilon(0.4, 1).approx_equal(AtomicMeasure({{-0.4, 0.5}, {0.4, 0.5}}), 1e-15));
    const auto merged = upsilon(kPi / 2, 2);
    ASSERT_EQ(merged.size(), 2u);
    EXPECT_EQ(merged.atoms()[0].angle, 0.0);
    EXPECT_NEAR(merged.atoms()[0].weight, 1.0 / 3, 1e-15);
    EXPECT_EQ(merged.atoms()[1].angle, kPi);
    EXPECT_NEAR(merged.atoms()[1].weight, 2.0 / 3, 1e-15);
    EXPECT_THROW(upsilon(0.3, 0), std::invalid_argument);
}

TEST(Upsilon, FourierIsG) {
    for (unsigned M = 1; M <= 12; ++M)
        for (double th : {0.1, 0.9, 1.7, 2.5, 3.0}) {
            const auto fv = fourier(upsilon(th, M), 6);
            for (std::size_t m = 1; m <= 6; ++m)
                EXPECT_NEAR(fv.coefficient(m), G(static_cast<int>(M) + 1, m * th), 1e-13);
        }
}

TEST(Upsilon, PrimePowerMeasures) {
    for (std::uint64_t p = 5; p <= 100; p += 4) {
        if (!is_prime(p)) continue;
        const double th = split_prime_angle(p).desym_angle;
        std::uint64_t pe = 1;
        for (unsigned e = 1; e <= 5; ++e) {
            pe *= p;
            if (pe > 2'000'000'000ull) break;
            EXPECT_TRUE(nu_from_lattice(pe).approx_equal(upsilon(th, e), 1e-10)) << p << "^" << e;
        }
    }
}

TEST(TildeDelta, IsUpsilonOfFourTheta) {
    EXPECT_TRUE(tilde_delta(0.2, 3).approx_equal(upsilon(0.8, 3), 1e-15));
}

TEST(EtaMeasure, Coefficients) {
    const auto fv = fourier(eta_measure(0.3), 2);
    EXPECT_NEAR(fv.coefficient(1), 2 * 0.3 - 1, 1e-15);
    EXPECT_NEAR(fv.coefficient(2), 1.0, 1e-15);
    EXPECT_EQ(eta_measure(0.0).atoms()[0].angle, kPi);
    EXPECT_THROW(eta_measure(1.1), std::invalid_argument);
}

TEST(G, Examples) {
    EXPECT_NEAR(G(2, 0.7), std::cos(0.7), 1e-15);
    for (int A = 2; A <= 40; ++A) EXPECT_EQ(G(A, 0.0), 1.0);
    EXPECT_NEAR(G(3, kPi / 2), -1.0 / 3, 1e-15);
    EXPECT_THROW(G(1, 0.3), std::invalid_argument);
}

TEST(G, AgreesWithHighPrecisionNearSingularities) {
    for (int A = 2; A <= 60; ++A)
        for (int j = -3; j <= 3; ++j)
            for (double e : {0.0, 1e-12, -1e-9, 1e-7, -3e-6, 1e-4, 0.01, -0.3}) {
                const double t = j * kPi + e;
                EXPECT_NEAR(G(A, t), oracle::G50(A, t), 2e-15) << A << " " << j << " " << e;
            }
}

TEST(G, ParityAroundHalfPi) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(0.0, kPi / 2);
    for (int A = 2; A <= 30; ++A)
        for (int i = 0; i < 50; ++i) {
            const double t = dist(rng);
            EXPECT_NEAR(std::abs(G(A, kPi / 2 + t)), std::abs(G(A, kPi / 2 - t)), 1e-13);
        }
}

TEST(GammaCurve, Examples) {
    const auto p = gamma_curve(2, 0.8);
    EXPECT_NEAR(p.x, std::cos(0.8), 1e-15);
    EXPECT_NEAR(p.y, 2 * std::cos(0.8) * std::cos(0.8) - 1, 1e-15);
    const auto q = gamma_curve(3, kPi / 2);
    EXPECT_NEAR(q.x, -1.0 / 3, 1e-15);
    EXPECT_NEAR(q.y, 1.0, 1e-15);
    for (int A = 2; A < 10; ++A) {
        EXPECT_EQ(gamma_curve(A, 0.0).x, 1.0);
        EXPECT_EQ(gamma_curve(A, 0.0).y, 1.0);
    }
}

TEST(ArcMeasure, Examples) {
    const auto haar = arc_measure_fourier(kPi, 5);
    for (std::size_t m = 1; m <= 5; ++m) EXPECT_NEAR(haar.coefficient(m), 0.0, 1e-15);
    EXPECT_NEAR(arc_measure_fourier(kPi / 2, 1).coefficient(1), 2 / kPi, 1e-15);
    EXPECT_NEAR(arc_measure_fourier(1e-9, 1).coefficient(1), 1.0, 1e-15);
    EXPECT_THROW(arc_measure_fourier(0.0, 1), std::invalid_argument);
    EXPECT_THROW(arc_measure_fourier(4.0, 1), std::invalid_argument);
}

TEST(CantorMeasure, Examples) {
    for (double th : {0.3, 1.0, kPi}) {
        const auto arc = arc_measure_fourier(th, 16).values();
        EXPECT_EQ(cantor_measure_fourier(th, 0, 16).values(), arc);
    }
    const double third = kPi / 3;
    EXPECT_NEAR(cantor_measure_fourier(kPi, 1, 1).coefficient(1), std::sin(third) / third * -0.5, 1e-15);
    EXPECT_NEAR(cantor_measure_fourier(kPi, 1, 1).coefficient(1), -0.413497, 1e-6);
    const auto a = cantor_measure_fourier(2.0, 40, 16);
    const auto b = cantor_measure_fourier(2.0, 50, 16);
    for (std::size_t m = 1; m <= 16; ++m) {
        EXPECT_LT(std::abs(a.coefficient(m) - b.coefficient(m)), 1e-9);
        EXPECT_LE(std::abs(a.coefficient(m)), 1.0);
    }
}

TEST(CantorMeasure, LevelOneIsTwoArcs) {
    // C_1 for half-width T: arcs of half-width T/3 centred at +-2T/3.
    const double T = 1.3;
    std::vector<Atom> atoms;
    constexpr int N = 16384;
    for (int i = 0; i < N; ++i) {
        const double c = 2 * T / 3 + (T / 3) * (2.0 * (i + 0.5) / N - 1.0);
        atoms.push_back({c, 0.5 / N});
        atoms.push_back({-c, 0.5 / N});
    }
    const auto riemann = fourier(AtomicMeasure(std::move(atoms)), 8);
    const auto closed = cantor_measure_fourier(T, 1, 8);
    for (std::size_t m = 1; m <= 8; ++m) EXPECT_NEAR(riemann.coefficient(m), closed.coefficient(m), 1e-7);
}

TEST(LatticeFourierPlane, MatchesLatticeEnumerationTo1e4) {
    for (std::uint64_t n = 1; n <= 10000; ++n) {
        const auto f = factorize(n);
        if (!is_in_S(f)) {
            EXPECT_THROW(lattice_fourier_plane(f), std::invalid_argument);
            continue;
        }
        const auto direct = fourier(nu_from_lattice(n), 2);
        const auto plane = lattice_fourier_plane(f);
        ASSERT_NEAR(plane.x, direct.coefficient(1), 1e-10) << n;
        ASSERT_NEAR(plane.y, direct.coefficient(2), 1e-10) << n;
    }
}
