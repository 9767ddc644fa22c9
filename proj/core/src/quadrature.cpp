#include "drl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "drl/error.hpp"
#include "drl/parallel.hpp"
#include "drl/propagator.hpp"

namespace drl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuarter = kPi / 4.0;

// Integral of the envelope beyond R, used as the truncation error.
double envelope_tail(const Envelope& env, double r) {
    if (env.amplitude == 0.0 || !std::isfinite(r)) {
        return 0.0;
    }
    const double value =
        env.amplitude * std::pow(std::max(1.0, r), env.power) * std::exp(-env.width * r * r);
    const double denom = 2.0 * env.width * r - env.power / std::max(r, 1e-300);
    return denom > 0.0 ? value / denom : value * r;
}

Envelope with_measure(Envelope env, int n) {
    env.power += n - 1;
    return env;
}

double cutoff_radius(const Envelope& env, const QuadConfig& cfg) {
    return cfg.tail_sigma_mult * env.cutoff(cfg.abs_tol * 1e-2);
}

RealFn with_measure(const RealFn& f, int n) {
    if (n == 1) {
        return f;
    }
    return [&f, n](double r) {
        if (r == 0.0) {
            return 0.0;
        }
        return f(r) * std::pow(r, n - 1);
    };
}

// Breakpoints graded towards lo plus a few linear ones; ascending, unique.
std::vector<double> graded_breaks(double lo, double hi) {
    std::vector<double> pts{lo};
    if (lo > 0.0) {
        for (double x = 2.0 * lo; x < hi && pts.size() < 64; x *= 2.0) {
            pts.push_back(x);
        }
    } else {
        for (double f : {1e-4, 1e-3, 1e-2, 0.1}) {
            pts.push_back(lo + f * (hi - lo));
        }
    }
    for (double f : {0.25, 0.5, 0.75}) {
        pts.push_back(lo + f * (hi - lo));
    }
    pts.push_back(hi);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

struct TailContext {
    const HarmonicPart& harmonic;
    int n;
    Oscillation osc;
    const QuadConfig& cfg;
    double target;
};

// int over [a, b] of (C cos(m phi) + S sin(m phi)) r^{n-1}
RealFn harmonic_integrand(const TailContext& ctx) {
    return [&ctx](double r) {
        const double phi = ctx.osc.t * std::pow(r, ctx.osc.sigma);
        const double m = ctx.harmonic.multiple;
        double v = 0.0;
        if (ctx.harmonic.cos_amp) {
            v += ctx.harmonic.cos_amp(r) * std::cos(m * phi);
        }
        if (ctx.harmonic.sin_amp) {
            v += ctx.harmonic.sin_amp(r) * std::sin(m * phi);
        }
        return ctx.n == 1 ? v : v * std::pow(r, ctx.n - 1);
    };
}

// int_start^inf of one harmonic: half-period sums closed by an Euler transform.
Estimate harmonic_tail(const TailContext& ctx, double start) {
    const double period = kPi / ctx.harmonic.multiple;
    const double phi_start = ctx.osc.t * std::pow(start, ctx.osc.sigma);
    const RealFn g = harmonic_integrand(ctx);
    AdaptiveOptions opt = ctx.cfg.adaptive();
    opt.rel_tol = std::min(opt.rel_tol, 1e-12);
    opt.abs_tol = ctx.target * 1e-3;

    auto half_period = [&](long long j) {
        const double r0 = j == 0 ? start : phase_radius(phi_start + j * period, ctx.osc.t,
                                                        ctx.osc.sigma);
        const double r1 = phase_radius(phi_start + (j + 1) * period, ctx.osc.t, ctx.osc.sigma);
        return adaptive_integrate(g, r0, r1, opt);
    };

    const int K = ctx.cfg.euler_terms;
    Estimate partial;
    long long s = 0;
    const int max_restarts = 64;
    for (int attempt = 0; attempt < max_restarts; ++attempt) {
        std::vector<double> diff;
        diff.reserve(K + 1);
        double panel_err = 0.0;
        std::vector<double> raw;
        raw.reserve(K + 1);
        for (int i = 0; i <= K; ++i) {
            const Estimate a = half_period(s + i);
            raw.push_back(a.value);
            panel_err += a.error;
            diff.push_back((i % 2 == 0) ? a.value : -a.value);
        }
        double tail = 0.0;
        double weight = 0.5;
        int small_in_row = 0;
        for (int k = 0; k <= K; ++k) {
            const double term = ((k % 2 == 0) ? 1.0 : -1.0) * diff[0] * weight;
            tail += term;
            if (std::abs(term) <= ctx.target) {
                if (++small_in_row >= 2) {
                    Estimate out = partial;
                    out.value += tail;
                    out.error += panel_err + std::abs(term);
                    return out;
                }
            } else {
                small_in_row = 0;
            }
            weight *= 0.5;
            for (std::size_t i = 0; i + 1 < diff.size(); ++i) {
                diff[i] = diff[i + 1] - diff[i];
            }
            diff.pop_back();
            if (diff.empty()) {
                break;
            }
        }
        // Not converged yet: absorb this block directly and restart further out.
        for (int i = 0; i < K; ++i) {
            partial.value += raw[i];
        }
        partial.error += panel_err;
        s += K;
    }
    std::ostringstream msg;
    msg << "alternating tail did not converge after " << s << " half-periods (t = "
        << ctx.osc.t << ")";
    throw QuadratureError(msg.str());
}

Estimate harmonic_band(const TailContext& ctx, double a, double b, bool open_end) {
    const double period = kPi / ctx.harmonic.multiple;
    const double phi_a = ctx.osc.t * std::pow(a, ctx.osc.sigma);
    const double phi_b = ctx.osc.t * std::pow(b, ctx.osc.sigma);
    const double halfperiods = (phi_b - phi_a) / period;
    if (halfperiods <= 4.0 * ctx.cfg.euler_terms) {
        std::vector<double> pts{a};
        for (long long j = 1; phi_a + j * period < phi_b; ++j) {
            pts.push_back(phase_radius(phi_a + j * period, ctx.osc.t, ctx.osc.sigma));
        }
        pts.push_back(b);
        AdaptiveOptions opt = ctx.cfg.adaptive();
        opt.abs_tol = ctx.target;
        Estimate e = adaptive_integrate(harmonic_integrand(ctx), pts, opt);
        if (open_end) {
            // Whatever lies past the envelope cutoff is below abs_tol.
            e.error += ctx.cfg.abs_tol;
        }
        return e;
    }
    Estimate e = harmonic_tail(ctx, a);
    if (!open_end) {
        e -= harmonic_tail(ctx, b);
    }
    return e;
}

} // namespace

void QuadConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
        throw InvalidInput("quadrature tolerances must be positive");
    }
    if (panel_order < 4) {
        throw InvalidInput("panel_order must be >= 4");
    }
    if (max_halfperiods < 1 || direct_halfperiods < 1 || euler_terms < 4 || max_panels < 16) {
        throw InvalidInput("quadrature budgets out of range");
    }
    if (!(tail_sigma_mult >= 1.0)) {
        throw InvalidInput("tail_sigma_mult must be >= 1");
    }
}

AdaptiveOptions QuadConfig::adaptive() const {
    return AdaptiveOptions{rel_tol, abs_tol, panel_order, max_panels};
}

double phase_radius(double phase, double t, double sigma) {
    return std::pow(phase / t, 1.0 / sigma);
}

std::vector<double> oscillation_nodes(double t, double sigma, double r_lo, double r_hi,
                                      long long max_nodes) {
    if (!(t > 0.0) || !(sigma > 0.0)) {
        throw InvalidInput("oscillation_nodes: t and sigma must be positive");
    }
    if (!(r_lo >= 0.0) || !(r_lo < r_hi) || !std::isfinite(r_hi)) {
        throw InvalidInput("oscillation_nodes: need 0 <= r_lo < r_hi < inf");
    }
    const double q_lo = t * std::pow(r_lo, sigma) / kQuarter;
    const double q_hi = t * std::pow(r_hi, sigma) / kQuarter;
    if (q_hi - q_lo > static_cast<double>(max_nodes)) {
        std::ostringstream msg;
        msg << "oscillation_nodes: " << (q_hi - q_lo) << " nodes exceed the budget of "
            << max_nodes << "; use the split path for t r^sigma this large";
        throw QuadratureError(msg.str());
    }
    std::vector<double> nodes{r_lo};
    for (long long m = static_cast<long long>(std::floor(q_lo)) + 1;
         static_cast<double>(m) < q_hi; ++m) {
        const double r = phase_radius(m * kQuarter, t, sigma);
        if (r > nodes.back() && r < r_hi) {
            nodes.push_back(r);
        }
    }
    nodes.push_back(r_hi);
    return nodes;
}

HalfPeriodBand half_period_band(int j, double t, double sigma) {
    return {phase_radius((0.25 + j) * kPi, t, sigma), phase_radius((0.75 + j) * kPi, t, sigma)};
}

Estimate integrate_radial(const RealFn& density, int n, Band band, const Envelope& env,
                          const QuadConfig& cfg) {
    cfg.validate();
    if (!(band.lo >= 0.0) || !(band.hi > band.lo)) {
        throw InvalidInput("integrate_radial: invalid band");
    }
    const Envelope menv = with_measure(env, n);
    if (menv.amplitude == 0.0) {
        return {};
    }
    const double r_max = cutoff_radius(menv, cfg);
    const double hi = std::min(band.hi, r_max);
    Estimate out;
    if (hi > band.lo) {
        const RealFn f = with_measure(density, n);
        out = adaptive_integrate(f, graded_breaks(band.lo, hi), cfg.adaptive());
    }
    if (band.hi > r_max) {
        out.error += envelope_tail(menv, std::max(r_max, band.lo));
    }
    return out;
}

Estimate integrate_radial(const SplitDensity& density, int n, Band band, const Oscillation& osc,
                          const Envelope& env, const QuadConfig& cfg) {
    if (osc.t == 0.0 || density.harmonics.empty()) {
        return integrate_radial(density.full, n, band, env, cfg);
    }
    cfg.validate();
    if (!(osc.t > 0.0) || !(osc.sigma > 0.0)) {
        throw InvalidInput("integrate_radial: oscillation needs t >= 0 and sigma > 0");
    }
    if (!(band.lo >= 0.0) || !(band.hi > band.lo)) {
        throw InvalidInput("integrate_radial: invalid band");
    }
    const Envelope menv = with_measure(env, n);
    if (menv.amplitude == 0.0) {
        return {};
    }
    const double r_max = cutoff_radius(menv, cfg);
    const bool open_end = band.hi > r_max;
    const double hi = std::min(band.hi, r_max);
    Estimate out;
    if (open_end) {
        out.error += envelope_tail(menv, std::max(r_max, band.lo));
    }
    if (!(hi > band.lo)) {
        return out;
    }

    const double q_lo = osc.t * std::pow(band.lo, osc.sigma) / kQuarter;
    const double phi_direct =
        (std::floor(q_lo) + 1.0 + 2.0 * cfg.direct_halfperiods) * kQuarter;
    const double r_direct = phase_radius(phi_direct, osc.t, osc.sigma);
    const AdaptiveOptions opt = cfg.adaptive();

    if (r_direct >= hi) {
        const auto nodes = oscillation_nodes(osc.t, osc.sigma, band.lo, hi, cfg.max_halfperiods);
        out += adaptive_integrate(with_measure(density.full, n), nodes, opt);
        return out;
    }

    const auto nodes =
        oscillation_nodes(osc.t, osc.sigma, band.lo, r_direct, cfg.max_halfperiods);
    const Estimate direct = adaptive_integrate(with_measure(density.full, n), nodes, opt);
    const Estimate mean =
        adaptive_integrate(with_measure(density.mean, n), graded_breaks(r_direct, hi), opt);
    out += direct;
    out += mean;

    const double scale = std::abs(direct.value) + std::abs(mean.value);
    const double target = std::max(cfg.abs_tol, 0.05 * cfg.rel_tol * scale);
    for (const auto& h : density.harmonics) {
        if (!h.cos_amp && !h.sin_amp) {
            continue;
        }
        const TailContext ctx{h, n, osc, cfg, target};
        out += harmonic_band(ctx, r_direct, hi, open_end);
    }
    return out;
}

double tensor_oracle(const Problem& p, double t, double box, double step, long long max_points) {
    if (p.n < 1 || p.n > 3) {
        throw InvalidInput("tensor_oracle supports n in {1, 2, 3}");
    }
    if (!(box > 0.0) || !(step > 0.0) || !(t >= 0.0)) {
        throw InvalidInput("tensor_oracle: box, step must be positive and t >= 0");
    }
    const long long cells = static_cast<long long>(std::llround(2.0 * box / step));
    if (cells < 1) {
        throw InvalidInput("tensor_oracle: step larger than the box");
    }
    const double total = std::pow(static_cast<double>(cells), p.n);
    if (total > static_cast<double>(max_points)) {
        std::ostringstream msg;
        msg << "tensor_oracle: " << total << " grid points exceed the guard of " << max_points;
        throw InvalidInput(msg.str());
    }
    const double h = 2.0 * box / static_cast<double>(cells);
    const auto w0 = fourier_profiles(p.u0, p.n);
    const auto w1 = fourier_profiles(p.u1, p.n);
    const int n = p.n;

    auto coord = [&](long long i) { return -box + (static_cast<double>(i) + 0.5) * h; };

    // One slab per index of the first axis; slabs summed in order afterwards.
    std::vector<double> slab(cells, 0.0);
    parallel_for(static_cast<std::size_t>(cells), [&](std::size_t i0) {
        double xi[3] = {coord(static_cast<long long>(i0)), 0.0, 0.0};
        const long long inner = n >= 2 ? cells : 1;
        const long long inner2 = n >= 3 ? cells : 1;
        double acc = 0.0;
        for (long long i1 = 0; i1 < inner; ++i1) {
            if (n >= 2) {
                xi[1] = coord(i1);
            }
            double row = 0.0;
            for (long long i2 = 0; i2 < inner2; ++i2) {
                if (n >= 3) {
                    xi[2] = coord(i2);
                }
                const std::span<const double> pt(xi, n);
                double r2 = 0.0;
                for (int k = 0; k < n; ++k) {
                    r2 += xi[k] * xi[k];
                }
                const KernelPair kp = kernels(t, std::sqrt(r2), p.sigma);
                const Complex w = kp.s * evaluate_fourier(w1, pt) + kp.c * evaluate_fourier(w0, pt);
                row += std::norm(w);
            }
            acc += row;
        }
        slab[i0] = acc;
    });
    double sum = 0.0;
    for (double v : slab) {
        sum += v;
    }
    return sum * std::pow(h, n) / std::pow(2.0 * kPi, n);
}

} // namespace drl
