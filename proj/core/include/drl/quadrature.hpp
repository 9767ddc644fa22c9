#pragma once

#include <limits>
#include <vector>

#include "drl/gauss_legendre.hpp"
#include "drl/spectra.hpp"

namespace drl {

struct QuadConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    /// Guard on the number of phase nodes a single call may generate.
    long long max_halfperiods = 10'000'000;
    /// Gauss-Legendre points per panel.
    int panel_order = 16;
    /// Multiplier on the radius where the Gaussian envelope drops below abs_tol.
    double tail_sigma_mult = 1.0;
    /// Half-periods of cos(2 t r^sigma) integrated with the unsplit integrand
    /// before the mean/oscillatory split takes over.
    int direct_halfperiods = 128;
    /// Forward differences allowed in one Euler tail transform.
    int euler_terms = 48;
    /// Panel budget for each adaptive sub-integration.
    int max_panels = 200'000;

    /// Throws InvalidInput when a field is out of range.
    void validate() const;
    AdaptiveOptions adaptive() const;
};

struct Band {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
};

/// Amplitudes of cos(m t r^sigma) and sin(m t r^sigma); either may be empty.
struct HarmonicPart {
    int multiple = 2;
    RealFn cos_amp;
    RealFn sin_amp;
};

/// A radial density given three ways: `full` is a stable pointwise
/// evaluation valid down to r = 0, and for r > 0
///   full(r) = mean(r) + sum_h [cos_amp_h(r) cos(m_h phi) + sin_amp_h(r) sin(m_h phi)]
/// with phi = t r^sigma.
struct SplitDensity {
    RealFn full;
    RealFn mean;
    std::vector<HarmonicPart> harmonics;
};

struct Oscillation {
    double t = 0.0;
    double sigma = 2.0;
};

/// Radius where t r^sigma equals `phase`.
double phase_radius(double phase, double t, double sigma);

/// Endpoints plus every radius in (r_lo, r_hi) where t r^sigma is a positive
/// multiple of pi/4 (zeros and quarter points of sin(t r^sigma)), ascending.
/// Throws QuadratureError when more than max_nodes nodes would be produced.
std::vector<double> oscillation_nodes(double t, double sigma, double r_lo, double r_hi,
                                      long long max_nodes = 10'000'000);

/// Bands [theta_j, tau_j] where |sin(t r^sigma)| >= 1/sqrt(2).
struct HalfPeriodBand {
    double theta = 0.0;
    double tau = 0.0;
};
HalfPeriodBand half_period_band(int j, double t, double sigma);

/// int_band density(r) r^{n-1} dr for a non-oscillatory density bounded by `env`.
Estimate integrate_radial(const RealFn& density, int n, Band band, const Envelope& env,
                          const QuadConfig& cfg);

/// int_band density(r) r^{n-1} dr for an oscillatory density. Near the lower
/// end the unsplit integrand is integrated on phase-aligned quarter panels;
/// beyond direct_halfperiods the mean part is integrated adaptively and each
/// harmonic is summed half-period by half-period, the alternating tail being
/// closed by an Euler transform whose last term enters the error estimate.
Estimate integrate_radial(const SplitDensity& density, int n, Band band, const Oscillation& osc,
                          const Envelope& env, const QuadConfig& cfg);

/// Brute-force ||u(t)||^2 = (2 pi)^{-n} sum |w^(t, xi)|^2 h^n over the midpoint
/// grid of [-box, box]^n with spacing `step`. Supports n <= 3.
double tensor_oracle(const Problem& p, double t, double box, double step,
                     long long max_points = 1'000'000'000);

} // namespace drl
