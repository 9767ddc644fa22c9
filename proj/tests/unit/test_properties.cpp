#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "drl/analysis.hpp"
#include "drl/propagator.hpp"

namespace {

using namespace drl;

constexpr unsigned kSeed = 20240611u;
constexpr int kCases = 12;

class Gen {
public:
    explicit Gen(unsigned seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

    DataPrimitive primitive(int n) {
        const double a = uniform(0.3, 1.5);
        switch (pick(0, n == 2 ? 3 : 2)) {
        case 0:
            return Gaussian{a};
        case 1:
            return Dipole{a, pick(1, n)};
        case 2:
            return LapGaussian{a};
        default:
            return TensorDipole{a};
        }
    }

    DataCombo combo(int n, int max_terms = 3) {
        std::vector<DataTerm> terms;
        const int count = pick(1, max_terms);
        for (int i = 0; i < count; ++i) {
            terms.push_back({uniform(-2.0, 2.0), primitive(n)});
        }
        return build_data(std::move(terms), n);
    }

    Problem problem(int n) {
        const double sigmas[] = {1.0, 1.5, 2.0, 3.0};
        const double sigma = sigmas[pick(0, 3)];
        return make_problem(n, sigma, pick(0, 1) ? combo(n) : DataCombo{}, combo(n));
    }

private:
    std::mt19937 rng_;
};

DataCombo scaled(DataCombo d, double s) {
    for (auto& t : d.terms) {
        t.coeff *= s;
    }
    return d;
}

TEST(Properties, NormScalesQuadratically) {
    Gen g(kSeed);
    for (int i = 0; i < kCases; ++i) {
        const int n = g.pick(1, 3);
        const Problem p = g.problem(n);
        const double lambda = g.uniform(0.1, 5.0);
        const double t = g.log_uniform(0.1, 1e3);
        const Problem q = make_problem(n, p.sigma, scaled(p.u0, lambda), scaled(p.u1, lambda));
        const double base = solution_l2_sq(p, t).value;
        EXPECT_NEAR(solution_l2_sq(q, t).value, lambda * lambda * base, 1e-9 * lambda * lambda * base)
            << "case " << i;
    }
}

TEST(Properties, ScalingLeavesExponentUnchanged) {
    Gen g(kSeed + 1);
    const std::vector<double> grid = log_grid(1e2, 1e5, 5);
    for (int i = 0; i < 4; ++i) {
        const int n = g.pick(1, 3);
        const DataCombo u1 = build_data({{1.0, Gaussian{g.uniform(0.3, 1.5)}}}, n);
        const double lambda = g.uniform(0.1, 5.0);
        const Problem p = make_problem(n, 2.0, {}, u1);
        const Problem q = make_problem(n, 2.0, {}, scaled(u1, lambda));
        const FitResult a = fit_power(norm_series(p, grid, Quantity::NormSq));
        const FitResult b = fit_power(norm_series(q, grid, Quantity::NormSq));
        EXPECT_NEAR(a.exponent, b.exponent, 1e-9);
        EXPECT_NEAR(b.amplitude / a.amplitude, lambda * lambda, 1e-8 * lambda * lambda);
    }
}

TEST(Properties, CrossProfileObeysCauchySchwarz) {
    Gen g(kSeed + 2);
    for (int i = 0; i < kCases; ++i) {
        const int n = g.pick(1, 3);
        const Problem p = make_problem(n, 2.0, g.combo(n), g.combo(n));
        const SpectralProfiles prof = spectral_profiles(p);
        for (int k = 0; k < 40; ++k) {
            const double r = g.uniform(0.0, 4.0);
            const double x = prof.X(r);
            const double bound = prof.S0(r) * prof.S1(r);
            EXPECT_LE(x * x, bound * (1.0 + 1e-10) + 1e-300) << "case " << i << " r " << r;
            EXPECT_GE(prof.S0(r), -1e-14);
            EXPECT_GE(prof.S1(r), -1e-14);
        }
    }
}

TEST(Properties, NormIsPositive) {
    Gen g(kSeed + 3);
    for (int i = 0; i < kCases; ++i) {
        const int n = g.pick(1, 3);
        const Problem p = g.problem(n);
        for (double t : log_grid(1e-6, 10.0, 8)) {
            EXPECT_GT(solution_l2_sq(p, t).value, 0.0) << "case " << i << " t " << t;
        }
        const SpectralProfiles prof = spectral_profiles(p);
        for (int k = 0; k < 20; ++k) {
            EXPECT_GE(displacement_density(prof, g.uniform(0.0, 10.0), g.uniform(0.0, 4.0)), -1e-14);
        }
    }
}

TEST(Properties, EnergyIsConserved) {
    Gen g(kSeed + 4);
    for (int i = 0; i < kCases; ++i) {
        const int n = g.pick(1, 3);
        const Problem p = g.problem(n);
        const double e0 = initial_energy(p);
        const double t = g.log_uniform(0.01, 1e3);
        EXPECT_NEAR(total_energy(p, t).value, e0, 1e-8 * e0) << "case " << i << " t " << t;
    }
}

TEST(Properties, FrequencySplitAddsUp) {
    Gen g(kSeed + 5);
    for (int i = 0; i < kCases; ++i) {
        const int n = g.pick(1, 3);
        const Problem p = g.problem(n);
        const double t = g.log_uniform(1.0, 1e4);
        const double delta0 = g.uniform(0.2, 0.95);
        const FrequencySplit s = frequency_split(p, t, delta0);
        const double whole = solution_l2_sq(p, t).value;
        EXPECT_NEAR(s.low.value + s.high.value, whole, 1e-9 * whole) << "case " << i;
        EXPECT_GE(s.low.value, 0.0);
        EXPECT_GE(s.high.value, 0.0);
    }
}

TEST(Properties, EvaluationIsDeterministic) {
    Gen g(kSeed + 6);
    for (int i = 0; i < 4; ++i) {
        const int n = g.pick(1, 3);
        const Problem p = g.problem(n);
        const std::vector<double> grid = log_grid(1.0, 1e4, 6);
        const NormSeries a = norm_series(p, grid, Quantity::NormSq);
        const NormSeries b = norm_series(p, grid, Quantity::NormSq);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            EXPECT_EQ(a.points[k].value, b.points[k].value);
            EXPECT_EQ(a.points[k].error, b.points[k].error);
        }
    }
}

TEST(Properties, WeightedNormDominatesL1) {
    Gen g(kSeed + 7);
    for (int i = 0; i < kCases; ++i) {
        const int n = g.pick(1, 3);
        const DataCombo d = g.combo(n, 2);
        const double gamma = g.uniform(0.0, 3.0);
        EXPECT_GE(l1_weighted_norm(d, gamma, n), l1_norm(d, n)) << "case " << i;
    }
}

TEST(Properties, FourierTransformIsBoundedByL1) {
    Gen g(kSeed + 8);
    for (int i = 0; i < kCases; ++i) {
        const int n = g.pick(1, 3);
        const DataCombo d = g.combo(n);
        const auto prof = fourier_profiles(d, n);
        const double sup = sup_fourier_bound(d, n);
        for (int k = 0; k < 20; ++k) {
            std::vector<double> xi(n);
            for (double& x : xi) {
                x = g.uniform(-4.0, 4.0);
            }
            EXPECT_LE(std::abs(evaluate_fourier(prof, xi)), sup * (1.0 + 1e-9));
        }
    }
}

TEST(Properties, PlancherelHolds) {
    Gen g(kSeed + 9);
    for (int i = 0; i < kCases; ++i) {
        const int n = g.pick(1, 3);
        const DataCombo d = g.combo(n);
        const double phys = l2_norm_data(d, n);
        EXPECT_NEAR(fourier_norm_sq(d, n), std::pow(2.0 * M_PI, n) * phys * phys,
                    1e-10 * fourier_norm_sq(d, n) + 1e-300)
            << "case " << i;
    }
}

} // namespace
