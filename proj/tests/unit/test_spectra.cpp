#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "drl/error.hpp"
#include "drl/gauss_legendre.hpp"
#include "drl/spectra.hpp"

namespace {

using namespace drl;

constexpr double kPi = std::numbers::pi;

DataCombo one(DataPrimitive p, double c = 1.0) { return DataCombo{{DataTerm{c, p}}}; }

TEST(FourierProfile, GaussianAndDipoleInOneDimension) {
    const auto g = fourier_profile(Gaussian{0.5}, 1);
    const auto d = fourier_profile(Dipole{0.5, 1}, 1);
    for (double xi : {0.0, 0.4, 1.7}) {
        const double expect = std::sqrt(2.0 * kPi) * std::exp(-0.5 * xi * xi);
        const Complex gv = g.evaluate(std::vector<double>{xi});
        const Complex dv = d.evaluate(std::vector<double>{xi});
        EXPECT_NEAR(gv.real(), expect, 1e-14);
        EXPECT_NEAR(gv.imag(), 0.0, 1e-15);
        EXPECT_NEAR(dv.real(), 0.0, 1e-15);
        EXPECT_NEAR(dv.imag(), xi * expect, 1e-14);
    }
}

// Brute-force transform of the physical-space function on a line.
Complex numeric_ft_1d(const DataCombo& d, double xi) {
    AdaptiveOptions opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 1e-15;
    auto re = [&](double x) { return std::cos(x * xi) * evaluate(d, {x}); };
    auto im = [&](double x) { return -std::sin(x * xi) * evaluate(d, {x}); };
    return {adaptive_integrate(re, -20.0, 20.0, opt).value, adaptive_integrate(im, -20.0, 20.0, opt).value};
}

TEST(FourierProfile, MatchesNumericalTransform) {
    for (const DataPrimitive& p : std::vector<DataPrimitive>{Gaussian{0.7}, Dipole{0.3, 1}, LapGaussian{1.2}}) {
        const auto f = fourier_profiles(one(p, 1.5), 1);
        for (double xi : {0.0, 0.9, 2.5}) {
            const Complex want = numeric_ft_1d(one(p, 1.5), xi);
            const Complex got = evaluate_fourier(f, std::vector<double>{xi});
            EXPECT_NEAR(std::abs(got - want), 0.0, 1e-10) << kind_name(p) << " xi=" << xi;
        }
    }
}

TEST(FourierProfile, TensorDipoleMatchesProductOfDerivatives) {
    const auto f = fourier_profile(TensorDipole{0.5}, 2);
    const std::vector<double> xi{0.6, -1.1};
    const Complex want = -0.6 * -1.1 * 2.0 * kPi * std::exp(-0.5 * (0.36 + 1.21));
    EXPECT_NEAR(std::abs(f.evaluate(xi) - want), 0.0, 1e-14);
}

TEST(FourierProfile, ValueAtOriginIsMass) {
    for (int n : {1, 2, 3}) {
        for (const DataPrimitive& p :
             std::vector<DataPrimitive>{Gaussian{0.5}, Dipole{0.9, 1}, LapGaussian{0.4}}) {
            const std::vector<double> zero(n, 0.0);
            EXPECT_NEAR(fourier_profile(p, n).evaluate(zero).real(), moments(one(p), n).P, 1e-12);
        }
    }
}

TEST(SphereMonomials, TableValues) {
    const double w2 = 2.0 * kPi;
    const double w3 = 4.0 * kPi;
    EXPECT_NEAR(sphere_monomial_integral(std::vector<int>{0, 0}), w2, 1e-14);
    EXPECT_NEAR(sphere_monomial_integral(std::vector<int>{2, 0}), w2 / 2.0, 1e-14);
    EXPECT_NEAR(sphere_monomial_integral(std::vector<int>{4, 0}), 3.0 * w2 / 8.0, 1e-14);
    EXPECT_NEAR(sphere_monomial_integral(std::vector<int>{2, 2}), w2 / 8.0, 1e-14);
    EXPECT_NEAR(sphere_monomial_integral(std::vector<int>{0, 2, 0}), w3 / 3.0, 1e-14);
    EXPECT_NEAR(sphere_monomial_integral(std::vector<int>{2, 2, 0}), w3 / 15.0, 1e-14);
    EXPECT_EQ(sphere_monomial_integral(std::vector<int>{1, 0}), 0.0);
    EXPECT_EQ(sphere_monomial_integral(std::vector<int>{2, 3, 0}), 0.0);
    // n = 1: the "sphere" is {-1, 1}.
    EXPECT_NEAR(sphere_monomial_integral(std::vector<int>{6}), 2.0, 1e-14);
}

TEST(SphereMonomials, DegreesBeyondFourAreSupported) {
    // int_{S^1} cos^6 = 2 pi * 5/16.
    EXPECT_NEAR(sphere_monomial_integral(std::vector<int>{6, 0}), 2.0 * kPi * 5.0 / 16.0, 1e-13);
}

TEST(AngularCross, WorkedValuesInTwoDimensions) {
    const auto g = fourier_profile(Gaussian{0.5}, 2);
    const auto d = fourier_profile(Dipole{0.5, 1}, 2);
    const auto t = fourier_profile(TensorDipole{0.5}, 2);
    for (double r : {0.0, 0.5, 1.3}) {
        const double e = std::exp(-r * r);
        EXPECT_NEAR(angular_cross(g, g, 2)(r), 8.0 * kPi * kPi * kPi * e, 1e-11);
        EXPECT_NEAR(angular_cross(d, g, 2)(r), 0.0, 1e-15);
        EXPECT_NEAR(angular_cross(d, d, 2)(r), 4.0 * std::pow(kPi, 3) * r * r * e, 1e-11);
        EXPECT_NEAR(angular_cross(t, t, 2)(r), std::pow(kPi, 3) * std::pow(r, 4) * e, 1e-11);
    }
}

TEST(AngularCross, DimensionMismatchThrows) {
    EXPECT_THROW(angular_cross(fourier_profile(Gaussian{0.5}, 2), fourier_profile(Gaussian{0.5}, 3), 2),
                 InvalidInput);
}

TEST(AngularCross, MatchesNumericalCircleAverage) {
    const DataCombo a{{{1.0, Gaussian{0.5}}, {0.7, Dipole{0.3, 2}}, {-0.4, TensorDipole{1.1}}}};
    const DataCombo b{{{0.5, LapGaussian{0.8}}, {1.2, Dipole{0.6, 1}}}};
    const auto fa = fourier_profiles(a, 2);
    const auto fb = fourier_profiles(b, 2);
    const auto cross = angular_cross(fa, fb, 2);
    for (double r : {0.2, 0.8, 1.9}) {
        auto integrand = [&](double th) {
            const std::vector<double> xi{r * std::cos(th), r * std::sin(th)};
            return std::real(evaluate_fourier(fa, xi) * std::conj(evaluate_fourier(fb, xi)));
        };
        AdaptiveOptions opt;
        opt.rel_tol = 1e-13;
        const double want = adaptive_integrate(integrand, 0.0, 2.0 * kPi, opt).value;
        EXPECT_NEAR(cross(r), want, 1e-11 * std::max(1.0, std::abs(want)));
    }
}

TEST(SpectralProfiles, ZeroAndIdenticalData) {
    const auto zero_u0 = spectral_profiles(make_problem(2, 2.0, {}, one(Gaussian{0.5})));
    EXPECT_TRUE(zero_u0.S0.is_zero());
    EXPECT_TRUE(zero_u0.X.is_zero());
    EXPECT_FALSE(zero_u0.S1.is_zero());

    const auto same = spectral_profiles(make_problem(1, 2.0, one(Gaussian{0.5}), one(Gaussian{0.5})));
    for (double r : {0.0, 0.7}) {
        const double want = 4.0 * kPi * std::exp(-r * r);
        EXPECT_NEAR(same.S0(r), want, 1e-13);
        EXPECT_NEAR(same.S1(r), want, 1e-13);
        EXPECT_NEAR(same.X(r), want, 1e-13);
    }
}

TEST(SpectralProfiles, OriginValueIsSphereAreaTimesMassSquared) {
    for (int n : {1, 2, 3, 5}) {
        const DataCombo u1 = one(Gaussian{0.5});
        const auto prof = spectral_profiles(make_problem(n, 2.0, {}, u1));
        const double P = moments(u1, n).P;
        EXPECT_NEAR(prof.S1(0.0), sphere_area(n) * P * P, 1e-10 * prof.S1(0.0));
    }
}

TEST(SpectralProfiles, SmallFrequencyOrderFollowsMoments) {
    struct Case {
        int n;
        DataCombo u1;
        int kappa;
    };
    const std::vector<Case> cases{{1, one(Gaussian{0.5}), 0},
                                  {3, one(Dipole{0.5, 2}), 1},
                                  {2, one(TensorDipole{0.5}), 2},
                                  {1, one(LapGaussian{0.5}), 2}};
    for (const auto& c : cases) {
        EXPECT_EQ(moments(c.u1, c.n).kappa, c.kappa);
        const auto s1 = spectral_profiles(make_problem(c.n, 2.0, {}, c.u1)).S1;
        const double q3 = s1(1e-3) / std::pow(1e-3, 2 * c.kappa);
        const double q4 = s1(1e-4) / std::pow(1e-4, 2 * c.kappa);
        EXPECT_GT(q4, 0.0);
        EXPECT_NEAR(q3 / q4, 1.0, 1e-5) << "kappa " << c.kappa;
        EXPECT_EQ(s1.lowest_power(), 2 * c.kappa);
    }
}

TEST(SupBound, L1NormBoundsTransform) {
    EXPECT_NEAR(sup_fourier_bound(one(Gaussian{0.5}), 1), std::sqrt(2.0 * kPi), 1e-9);
    EXPECT_EQ(sup_fourier_bound(DataCombo{}, 2), 0.0);
    const DataCombo d = one(Dipole{0.5, 1});
    const double bound = sup_fourier_bound(d, 2);
    const auto f = fourier_profiles(d, 2);
    for (double r : {0.0, 0.5, 1.0}) {
        EXPECT_LE(std::abs(evaluate_fourier(f, std::vector<double>{r, 0.0})), bound);
    }
}

TEST(PolyGaussRadial, AlgebraAndMoments) {
    const PolyGaussRadial a({{2.0, 0, 1.0}, {1.0, 1, 1.0}});
    const PolyGaussRadial b({{3.0, 1, 0.5}});
    const double r = 0.8;
    EXPECT_NEAR((a + b)(r), a(r) + b(r), 1e-15);
    EXPECT_NEAR((a * b)(r), a(r) * b(r), 1e-15);
    EXPECT_NEAR(a.scaled(-2.0)(r), -2.0 * a(r), 1e-15);
    // Equal (k, b) terms merge.
    EXPECT_EQ((a + a).terms().size(), 2u);
    // int r^2 e^{-r^2} dr = sqrt(pi)/4; int e^{-r^2} dr = sqrt(pi)/2.
    const PolyGaussRadial g({{1.0, 0, 1.0}});
    EXPECT_NEAR(g.radial_moment(0.0), std::sqrt(kPi) / 2.0, 1e-15);
    EXPECT_NEAR(g.radial_moment(2.0), std::sqrt(kPi) / 4.0, 1e-15);
    EXPECT_THROW(g.radial_moment(-1.0), InvalidInput);
    EXPECT_NEAR(b.radial_moment(-2.0), 3.0 * std::sqrt(kPi / 0.5) / 2.0, 1e-14);
    EXPECT_EQ(PolyGaussRadial{}.lowest_power(), -1);
    EXPECT_EQ(PolyGaussRadial{}.to_string(), "0");
    EXPECT_NE(a.to_string().find("r^2"), std::string::npos);
}

TEST(PolyGaussRadial, EnvelopeBoundsAndCutoff) {
    const PolyGaussRadial f({{2.0, 0, 1.0}, {-5.0, 2, 0.5}});
    const Envelope env = f.envelope();
    for (double r = 0.0; r < 12.0; r += 0.05) {
        EXPECT_LE(std::abs(f(r)), env.amplitude * std::pow(std::max(1.0, r), env.power) *
                                      std::exp(-env.width * r * r) * (1.0 + 1e-12));
    }
    const double rc = env.cutoff(1e-14);
    for (double r = rc; r < rc + 5.0; r += 0.1) {
        EXPECT_LT(std::abs(f(r)), 1e-14);
    }
    EXPECT_EQ(Envelope{}.cutoff(1e-14), 0.0);
}

} // namespace
