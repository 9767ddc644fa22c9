#pragma once

#include <optional>
#include <string>
#include <vector>

#include "drl/quadrature.hpp"

namespace drl {

/// Default radius parameter of the low/high frequency split.
inline constexpr double kDefaultDelta0 = 0.9;

enum class Quantity { NormSq, Norm, Energy, ILow, IHigh };

std::string to_string(Quantity q);
Quantity quantity_from_string(const std::string& s);

struct SeriesPoint {
    double t = 0.0;
    double value = 0.0;
    double error = 0.0;
};

struct NormSeries {
    std::vector<SeriesPoint> points;
    Quantity quantity = Quantity::NormSq;
    std::optional<Problem> problem;

    std::vector<double> times() const;
    std::vector<double> values() const;
};

enum class FitModel { Power, Log, Constant };

std::string to_string(FitModel m);

struct FitResult {
    FitModel model = FitModel::Power;
    /// Power: exponent alpha of A t^alpha. Log: slope a of a log t + b.
    double exponent = 0.0;
    /// Power: A. Log: intercept b.
    double amplitude = 0.0;
    double max_relative_residual = 0.0;
    double t_min = 0.0;
    double t_max = 0.0;
    int points = 0;
};

enum class GrowthKind { Bounded, LogGrowth, PowerGrowth, Ambiguous };

std::string to_string(GrowthKind k);

struct GrowthClass {
    GrowthKind kind = GrowthKind::Ambiguous;
    /// Power exponent for PowerGrowth/Bounded, log slope for LogGrowth.
    double rate = 0.0;
    FitResult power;
    FitResult log;
    double last_decade_variation = 0.0;
    double tol = 0.0;
    /// |alpha| at or below this counts as bounded.
    double bounded_alpha = 0.05;
};

/// Log-spaced grid of `count` points from t_min to t_max inclusive.
std::vector<double> log_grid(double t_min, double t_max, int count);

/// ||u(t)||^2 = (2 pi)^{-n} int rho_u(t, r) r^{n-1} dr.
Estimate solution_l2_sq(const Problem& p, double t, const QuadConfig& cfg = {});

/// Same with precomputed profiles.
Estimate solution_l2_sq(const SpectralProfiles& prof, double t, const QuadConfig& cfg = {});

/// Radius (delta0^2 / t)^{1/sigma} of the low/high split.
double split_radius(double delta0, double t, double sigma);

struct FrequencySplit {
    Estimate low;
    Estimate high;
    double radius = 0.0;
};

/// Low and high frequency parts of ||u(t)||^2. Throws InvalidInput when the
/// split radius exceeds 1 or delta0 is outside (0, 1).
FrequencySplit frequency_split(const Problem& p, double t, double delta0 = kDefaultDelta0,
                               const QuadConfig& cfg = {});

/// E(t) = (1/2)(||u_t||^2 + ||(-Delta)^{sigma/2} u||^2), velocity and operator
/// parts integrated separately.
Estimate total_energy(const Problem& p, double t, const QuadConfig& cfg = {});

/// E(0) in closed form from the profiles.
double initial_energy(const Problem& p);

/// |LHS - RHS| of the energy identity for the time antiderivative V,
///   (1/2)||V_t||^2 + (1/2)||(-Delta)^{sigma/2} V||^2 = (1/2)||u0||^2 + int u1 V dx,
/// every term evaluated as its own spectral integral. `error` carries the
/// summed quadrature error estimates.
Estimate antiderivative_identity_residual(const Problem& p, double t,
                                          const QuadConfig& cfg = {});

/// ||d^||^2 over xi-space, closed form.
double fourier_norm_sq(const DataCombo& d, int n);

NormSeries norm_series(const Problem& p, const std::vector<double>& t_grid, Quantity quantity,
                       const QuadConfig& cfg = {}, double delta0 = kDefaultDelta0);

/// Least squares of log(value) against log(t). Needs >= 4 positive values.
FitResult fit_power(const NormSeries& s);

/// Least squares of value against log(t). Needs >= 4 points.
FitResult fit_log(const NormSeries& s);

/// Relative spread (max - min) / mean of the values with t >= t_max / 10.
double last_decade_variation(const NormSeries& s);

/// Bounded when |alpha| <= 0.05 and last-decade variation < tol; LogGrowth
/// when the log model fits better than the power model with positive slope
/// and residual < tol; PowerGrowth when the power fit residual < tol and
/// |alpha| > 0.05; otherwise Ambiguous. Needs a series spanning >= 3 decades.
GrowthClass classify_growth(const NormSeries& s, double tol = 0.05);

/// P^2/(32 n) omega_n delta0^n t^{2 - n/2}.
double lower_bound_lemma31(double P, int n, double delta0, double t);

/// 2 omega_n/(n - 4) l1_u1^2 + 2 wsq_u1 + wsq_u0, n >= 5.
double upper_bound_prop41(int n, double l1_u1, double wsq_u1, double wsq_u0);

} // namespace drl
