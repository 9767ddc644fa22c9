#pragma once

#include <functional>
#include <span>
#include <vector>

namespace drl {

using RealFn = std::function<double(double)>;

/// A quadrature value together with an upper estimate of its absolute error.
struct Estimate {
    double value = 0.0;
    double error = 0.0;

    Estimate& operator+=(const Estimate& o) {
        value += o.value;
        error += o.error;
        return *this;
    }
    Estimate& operator-=(const Estimate& o) {
        value -= o.value;
        error += o.error;
        return *this;
    }
    Estimate scaled(double k) const;
};

Estimate operator+(Estimate a, const Estimate& b);
Estimate operator-(Estimate a, const Estimate& b);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached rule of the given order (order >= 1). Thread-safe.
const GaussRule& gauss_legendre_rule(int order);

/// One application of `rule` on [a, b].
double apply_rule(const GaussRule& rule, const RealFn& f, double a, double b);

struct AdaptiveOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int order = 16;
    int max_panels = 20000;
};

/// Globally adaptive Gauss-Legendre quadrature on [a, b]: the panel with the
/// largest error estimate is bisected until the summed estimate meets
/// max(abs_tol, rel_tol * |value|). Panel error is |G(a,b) - G(a,m) - G(m,b)|,
/// which bounds the refined value's error for smooth integrands.
/// Throws QuadratureError when max_panels is exhausted.
Estimate adaptive_integrate(const RealFn& f, double a, double b, const AdaptiveOptions& opt);

/// Same, but starts from the panels given by ascending `breakpoints`
/// (at least two entries).
Estimate adaptive_integrate(const RealFn& f, std::span<const double> breakpoints,
                            const AdaptiveOptions& opt);

} // namespace drl
