#include "drl/propagator.hpp"

#include <cmath>

namespace drl {

double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        return 1.0 - x * x / 6.0;
    }
    return std::sin(x) / x;
}

KernelPair kernels(double t, double r, double sigma) {
    KernelPair k;
    k.phase = t * std::pow(r, sigma);
    k.s = t * sinc(k.phase);
    k.c = std::cos(k.phase);
    return k;
}

double displacement_density(const SpectralProfiles& prof, double t, double r) {
    const KernelPair k = kernels(t, r, prof.sigma);
    return k.s * k.s * prof.S1(r) + k.c * k.c * prof.S0(r) + 2.0 * k.s * k.c * prof.X(r);
}

double velocity_density(const SpectralProfiles& prof, double t, double r) {
    const KernelPair k = kernels(t, r, prof.sigma);
    const double rs = std::pow(r, prof.sigma);
    const double sn = std::sin(k.phase);
    return k.c * k.c * prof.S1(r) + rs * rs * sn * sn * prof.S0(r) -
           2.0 * rs * k.c * sn * prof.X(r);
}

AntiderivativeDensity antiderivative_density(const SpectralProfiles& prof, double t, double r) {
    const KernelPair k = kernels(t, r, prof.sigma);
    // (1 - cos p) / r^{2 sigma} = 2 sin^2(p/2) / r^{2 sigma} = (t^2 / 2) sinc^2(p/2)
    const double half = sinc(0.5 * k.phase);
    const double a = 0.5 * t * t * half * half;
    const double b = k.s;
    const double s1 = prof.S1(r);
    const double s0 = prof.S0(r);
    const double x = prof.X(r);
    const double rs = std::pow(r, prof.sigma);

    AntiderivativeDensity d;
    d.rhoV = a * a * s1 + b * b * s0 + 2.0 * a * b * x;
    d.rhoVt = k.s * k.s * s1 + k.c * k.c * s0 + 2.0 * k.s * k.c * x;
    d.lapV_sq = rs * rs * d.rhoV;
    d.u1_cross_V = a * s1 + b * x;
    return d;
}

} // namespace drl
