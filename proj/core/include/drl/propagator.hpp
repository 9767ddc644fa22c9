#pragma once

#include "drl/spectra.hpp"

namespace drl {

/// Fourier-side solution kernels at one (t, r):
///   w^(t, xi) = s * w1^(xi) + c * w0^(xi),  |xi| = r.
struct KernelPair {
    double s = 0.0;     // sin(t r^sigma) / r^sigma, equal to t at r = 0
    double c = 1.0;     // cos(t r^sigma)
    double phase = 0.0; // t r^sigma
};

/// sin(x)/x with its removable singularity; Taylor form below 1e-4.
double sinc(double x);

KernelPair kernels(double t, double r, double sigma);

/// Angular-integrated |w(t, r w)|^2.
double displacement_density(const SpectralProfiles& prof, double t, double r);

/// Angular-integrated |w_t(t, r w)|^2.
double velocity_density(const SpectralProfiles& prof, double t, double r);

/// Densities of the time antiderivative V(t) = int_0^t u ds, whose transform is
/// (1 - cos(t r^sigma)) / r^{2 sigma} w1^ + sin(t r^sigma) / r^sigma w0^.
struct AntiderivativeDensity {
    double rhoV = 0.0;        // |V^|^2
    double rhoVt = 0.0;       // |V_t^|^2, equal to the displacement density
    double lapV_sq = 0.0;     // r^{2 sigma} |V^|^2
    double u1_cross_V = 0.0;  // Re(w1^ conj V^)
};

AntiderivativeDensity antiderivative_density(const SpectralProfiles& prof, double t, double r);

} // namespace drl
