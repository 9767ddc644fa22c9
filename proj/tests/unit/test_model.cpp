#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "drl/error.hpp"
#include "drl/model.hpp"

namespace {

using namespace drl;

constexpr double kPi = std::numbers::pi;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);

DataCombo one(DataPrimitive p, double c = 1.0) { return DataCombo{{DataTerm{c, p}}}; }

TEST(BuildData, AcceptsValidTermsAndEmptyList) {
    EXPECT_EQ(build_data({{1.0, Gaussian{0.5}}}, 1).terms.size(), 1u);
    EXPECT_TRUE(build_data({}, 3).empty());
}

TEST(BuildData, RejectsInvalidPrimitives) {
    EXPECT_THROW(build_data({{1.0, TensorDipole{0.5}}}, 3), InvalidInput);
    EXPECT_THROW(build_data({{1.0, Dipole{0.5, 3}}}, 2), InvalidInput);
    EXPECT_THROW(build_data({{1.0, Dipole{0.5, 0}}}, 2), InvalidInput);
    EXPECT_THROW(build_data({{1.0, Gaussian{0.0}}}, 1), InvalidInput);
    EXPECT_THROW(build_data({{1.0, LapGaussian{-1.0}}}, 1), InvalidInput);
}

TEST(MakeProblem, RejectsBadDimensionOrSigma) {
    EXPECT_THROW(make_problem(0, 2.0, {}, {}), InvalidInput);
    EXPECT_THROW(make_problem(2, 0.0, {}, {}), InvalidInput);
    EXPECT_THROW(make_problem(3, 2.0, {}, one(TensorDipole{0.5})), InvalidInput);
}

TEST(Moments, GaussianHasMassOnly) {
    const Moments m = moments(one(Gaussian{0.5}), 1);
    EXPECT_NEAR(m.P, kSqrt2Pi, 1e-14);
    ASSERT_EQ(m.P1.size(), 1u);
    EXPECT_EQ(m.P1[0], 0.0);
    EXPECT_EQ(m.kappa, 0);
}

TEST(Moments, DipoleHasExactZeroMass) {
    const Moments m = moments(one(Dipole{0.5, 1}), 1);
    EXPECT_EQ(m.P, 0.0);
    EXPECT_NEAR(m.P1[0], -kSqrt2Pi, 1e-14);
    EXPECT_EQ(m.kappa, 1);
}

TEST(Moments, DipoleAxisSelectsComponent) {
    const Moments m = moments(one(Dipole{1.0, 2}), 3);
    EXPECT_EQ(m.P1[0], 0.0);
    EXPECT_NEAR(m.P1[1], -std::pow(kPi, 1.5), 1e-13);
    EXPECT_EQ(m.P1[2], 0.0);
}

TEST(Moments, TensorDipoleAndLaplacianVanishToSecondOrder) {
    EXPECT_EQ(moments(one(TensorDipole{0.5}), 2).kappa, 2);
    const Moments lap = moments(one(LapGaussian{0.5}), 1);
    EXPECT_EQ(lap.P, 0.0);
    EXPECT_EQ(lap.kappa, 2);
}

TEST(Moments, ZeroComboAndCancellingTerms) {
    EXPECT_EQ(moments(DataCombo{}, 2).kappa, 2);
    const Moments m = moments(DataCombo{{{1.0, Gaussian{0.5}}, {-1.0, Gaussian{0.5}}}}, 1);
    EXPECT_EQ(m.P, 0.0);
    EXPECT_EQ(m.kappa, 2);
}

TEST(Moments, Linearity) {
    const DataCombo f = one(Gaussian{0.5});
    const DataCombo g = one(Dipole{0.8, 1});
    const DataCombo h{{{2.0, Gaussian{0.5}}, {-3.0, Dipole{0.8, 1}}}};
    const Moments mf = moments(f, 2);
    const Moments mg = moments(g, 2);
    const Moments mh = moments(h, 2);
    EXPECT_NEAR(mh.P, 2.0 * mf.P - 3.0 * mg.P, 1e-13);
    for (int j = 0; j < 2; ++j) {
        EXPECT_NEAR(mh.P1[j], 2.0 * mf.P1[j] - 3.0 * mg.P1[j], 1e-13);
    }
}

TEST(WeightedL1, GaussianValues) {
    const auto g = one(Gaussian{0.5});
    EXPECT_NEAR(l1_weighted_norm(g, 0.0, 1), 2.0 * kSqrt2Pi, 1e-9);
    EXPECT_NEAR(l1_weighted_norm(g, 2.0, 1), 2.0 * kSqrt2Pi, 1e-9);
    EXPECT_NEAR(l1_weighted_norm(g, 1.0, 1), kSqrt2Pi + 2.0, 1e-9);
    EXPECT_NEAR(l1_norm(g, 1), kSqrt2Pi, 1e-9);
}

TEST(WeightedL1, DipoleAbsoluteValue) {
    // int |x| e^{-x^2/2} dx = 2.
    EXPECT_NEAR(l1_norm(one(Dipole{0.5, 1}), 1), 2.0, 1e-9);
    // n = 2: int |x1| e^{-|x|^2/2} dx = 2 sqrt(2 pi).
    EXPECT_NEAR(l1_norm(one(Dipole{0.5, 1}), 2), 2.0 * kSqrt2Pi, 1e-8);
}

TEST(WeightedL1, TensorDipoleAndLaplacian) {
    // |d1 d2 e^{-|x|^2/2}| = |x1 x2| e^{-|x|^2/2}: (int |x| e^{-x^2/2})^2 = 4.
    EXPECT_NEAR(l1_norm(one(TensorDipole{0.5}), 2), 4.0, 1e-8);
    // (x^2 - 1) e^{-x^2/2} = d/dx(-x e^{-x^2/2}), so each of the four half-lines gives e^{-1/2}.
    EXPECT_NEAR(l1_norm(one(LapGaussian{0.5}), 1), 4.0 * std::exp(-0.5), 1e-9);
}

TEST(WeightedL1, RejectsNegativeGamma) {
    EXPECT_THROW(l1_weighted_norm(one(Gaussian{0.5}), -1.0, 1), InvalidInput);
}

TEST(L2Norm, ClosedForms) {
    EXPECT_NEAR(l2_norm_data(one(Gaussian{0.5}), 1), std::pow(kPi, 0.25), 1e-14);
    EXPECT_EQ(l2_norm_data(DataCombo{}, 2), 0.0);
    EXPECT_NEAR(l2_norm_data(one(Dipole{0.5, 1}), 1), std::sqrt(std::sqrt(kPi) / 2.0), 1e-14);
    // ||Delta e^{-x^2/2}||^2 = int (x^2 - 1)^2 e^{-x^2} = (3/4) sqrt(pi).
    EXPECT_NEAR(std::pow(l2_norm_data(one(LapGaussian{0.5}), 1), 2), 0.75 * std::sqrt(kPi), 1e-13);
}

TEST(Evaluate, MatchesPhysicalForms) {
    const std::vector<double> x{0.3, -0.7};
    const double g = std::exp(-0.5 * (0.09 + 0.49));
    EXPECT_NEAR(evaluate(one(Gaussian{0.5}), x), g, 1e-15);
    EXPECT_NEAR(evaluate(one(Dipole{0.5, 2}), x), 0.7 * g, 1e-15);
    EXPECT_NEAR(evaluate(one(TensorDipole{0.5}), x), 0.3 * -0.7 * g, 1e-15);
    EXPECT_NEAR(evaluate(one(LapGaussian{0.5}), x), (0.58 - 2.0) * g, 1e-15);
}

TEST(SphereArea, KnownValues) {
    EXPECT_DOUBLE_EQ(sphere_area(1), 2.0);
    EXPECT_NEAR(sphere_area(2), 2.0 * kPi, 1e-14);
    EXPECT_NEAR(sphere_area(3), 4.0 * kPi, 1e-14);
    EXPECT_NEAR(sphere_area(4), 2.0 * kPi * kPi, 1e-13);
    EXPECT_NEAR(sphere_area(5), 8.0 * kPi * kPi / 3.0, 1e-13);
    EXPECT_NEAR(sphere_area(6), kPi * kPi * kPi, 1e-12);
}

} // namespace
