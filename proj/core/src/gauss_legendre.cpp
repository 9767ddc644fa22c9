#include "drl/gauss_legendre.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <queue>
#include <sstream>

#include "drl/error.hpp"

namespace drl {

Estimate Estimate::scaled(double k) const { return {value * k, error * std::abs(k)}; }

Estimate operator+(Estimate a, const Estimate& b) { return a += b; }
Estimate operator-(Estimate a, const Estimate& b) { return a -= b; }

namespace {

GaussRule compute_rule(int order) {
    GaussRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    // Newton iteration on P_order from the Tricomi initial guesses.
    for (int i = 0; i < (order + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        // Recompute derivative at the converged node.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= order; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = order * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    if (order % 2 == 1) {
        rule.nodes[order / 2] = 0.0;
    }
    return rule;
}

struct Panel {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

} // namespace

const GaussRule& gauss_legendre_rule(int order) {
    if (order < 1) {
        throw InvalidInput("Gauss-Legendre order must be positive");
    }
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GaussRule>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[order];
    if (!slot) {
        slot = std::make_unique<GaussRule>(compute_rule(order));
    }
    return *slot;
}

double apply_rule(const GaussRule& rule, const RealFn& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    return sum * half;
}

Estimate adaptive_integrate(const RealFn& f, double a, double b, const AdaptiveOptions& opt) {
    const double bp[2] = {a, b};
    return adaptive_integrate(f, std::span<const double>(bp, 2), opt);
}

Estimate adaptive_integrate(const RealFn& f, std::span<const double> breakpoints,
                            const AdaptiveOptions& opt) {
    if (breakpoints.size() < 2) {
        throw InvalidInput("adaptive_integrate needs at least two breakpoints");
    }
    const GaussRule& rule = gauss_legendre_rule(opt.order);

    auto make_panel = [&](double a, double b) {
        const double m = 0.5 * (a + b);
        const double whole = apply_rule(rule, f, a, b);
        const double refined = apply_rule(rule, f, a, m) + apply_rule(rule, f, m, b);
        return Panel{a, b, refined, std::abs(whole - refined)};
    };

    std::priority_queue<Panel> queue;
    double value = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const double a = breakpoints[i];
        const double b = breakpoints[i + 1];
        if (!(b >= a)) {
            throw InvalidInput("adaptive_integrate breakpoints must be ascending");
        }
        if (b == a) {
            continue;
        }
        Panel p = make_panel(a, b);
        value += p.value;
        error += p.error;
        queue.push(p);
    }

    int panels = static_cast<int>(queue.size());
    while (!queue.empty() && error > std::max(opt.abs_tol, opt.rel_tol * std::abs(value))) {
        if (!std::isfinite(value)) {
            throw QuadratureError("integrand produced a non-finite value");
        }
        if (panels >= opt.max_panels) {
            std::ostringstream msg;
            msg << "adaptive quadrature budget of " << opt.max_panels
                << " panels exhausted (error " << error << ", value " << value << ")";
            throw QuadratureError(msg.str());
        }
        const Panel worst = queue.top();
        queue.pop();
        const double m = 0.5 * (worst.a + worst.b);
        if (m <= worst.a || m >= worst.b) {
            // Panel cannot be split further in double precision.
            queue.push(worst);
            break;
        }
        const Panel left = make_panel(worst.a, m);
        const Panel right = make_panel(m, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++panels;
    }
    if (!std::isfinite(value)) {
        throw QuadratureError("integrand produced a non-finite value");
    }
    // Re-sum from the final panels to drop the incremental update drift.
    double value_sum = 0.0;
    double err_sum = 0.0;
    while (!queue.empty()) {
        value_sum += queue.top().value;
        err_sum += queue.top().error;
        queue.pop();
    }
    return {value_sum, err_sum};
}

} // namespace drl
