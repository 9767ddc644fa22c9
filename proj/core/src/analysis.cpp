#include "drl/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "drl/error.hpp"
#include "drl/parallel.hpp"
#include "drl/propagator.hpp"

namespace drl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Envelope sum_envelope(std::initializer_list<Envelope> parts, double extra_power = 0.0) {
    Envelope out{0.0, 0.0, 0.0};
    bool any = false;
    for (const auto& e : parts) {
        if (e.amplitude == 0.0) {
            continue;
        }
        out.width = any ? std::min(out.width, e.width) : e.width;
        out.amplitude += e.amplitude;
        out.power = std::max(out.power, e.power);
        any = true;
    }
    if (!any) {
        return Envelope{0.0, 0.0, 1.0};
    }
    out.power += extra_power;
    return out;
}

Envelope profile_envelope(const SpectralProfiles& prof, double extra_power = 0.0) {
    Envelope x = prof.X.envelope();
    x.amplitude *= 2.0;
    return sum_envelope({prof.S0.envelope(), prof.S1.envelope(), x}, extra_power);
}

double plancherel(int n) { return std::pow(kTwoPi, -n); }

// rho_u = sin^2/R^2 S1 + cos^2 S0 + sin(2 phi)/R X, R = r^sigma.
SplitDensity displacement_split(const SpectralProfiles& prof, double t) {
    const double sg = prof.sigma;
    SplitDensity d;
    d.full = [&prof, t](double r) { return displacement_density(prof, t, r); };
    d.mean = [&prof, sg](double r) {
        const double R = std::pow(r, sg);
        return 0.5 * (prof.S1(r) / (R * R) + prof.S0(r));
    };
    HarmonicPart h2;
    h2.multiple = 2;
    h2.cos_amp = [&prof, sg](double r) {
        const double R = std::pow(r, sg);
        return 0.5 * (prof.S0(r) - prof.S1(r) / (R * R));
    };
    if (!prof.X.is_zero()) {
        h2.sin_amp = [&prof, sg](double r) { return prof.X(r) / std::pow(r, sg); };
    }
    d.harmonics.push_back(std::move(h2));
    return d;
}

// rho_v = cos^2 S1 + R^2 sin^2 S0 - R sin(2 phi) X
SplitDensity velocity_split(const SpectralProfiles& prof, double t) {
    const double sg = prof.sigma;
    SplitDensity d;
    d.full = [&prof, t](double r) { return velocity_density(prof, t, r); };
    d.mean = [&prof, sg](double r) {
        const double R = std::pow(r, sg);
        return 0.5 * (prof.S1(r) + R * R * prof.S0(r));
    };
    HarmonicPart h2;
    h2.cos_amp = [&prof, sg](double r) {
        const double R = std::pow(r, sg);
        return 0.5 * (prof.S1(r) - R * R * prof.S0(r));
    };
    if (!prof.X.is_zero()) {
        h2.sin_amp = [&prof, sg](double r) { return -std::pow(r, sg) * prof.X(r); };
    }
    d.harmonics.push_back(std::move(h2));
    return d;
}

// R^2 rho_u = sin^2 S1 + R^2 cos^2 S0 + R sin(2 phi) X
SplitDensity operator_split(const SpectralProfiles& prof, double t) {
    const double sg = prof.sigma;
    SplitDensity d;
    d.full = [&prof, t, sg](double r) {
        const double R = std::pow(r, sg);
        return R * R * displacement_density(prof, t, r);
    };
    d.mean = [&prof, sg](double r) {
        const double R = std::pow(r, sg);
        return 0.5 * (prof.S1(r) + R * R * prof.S0(r));
    };
    HarmonicPart h2;
    h2.cos_amp = [&prof, sg](double r) {
        const double R = std::pow(r, sg);
        return 0.5 * (R * R * prof.S0(r) - prof.S1(r));
    };
    if (!prof.X.is_zero()) {
        h2.sin_amp = [&prof, sg](double r) { return std::pow(r, sg) * prof.X(r); };
    }
    d.harmonics.push_back(std::move(h2));
    return d;
}

// R^2 |V^|^2 = (3/2 - 2 cos phi + cos(2 phi)/2) S1/R^2 + (1 - cos(2 phi))/2 S0
//            + (2 sin phi - sin(2 phi)) X/R
SplitDensity antiderivative_operator_split(const SpectralProfiles& prof, double t) {
    const double sg = prof.sigma;
    SplitDensity d;
    d.full = [&prof, t](double r) { return antiderivative_density(prof, t, r).lapV_sq; };
    d.mean = [&prof, sg](double r) {
        const double R = std::pow(r, sg);
        return 1.5 * prof.S1(r) / (R * R) + 0.5 * prof.S0(r);
    };
    HarmonicPart h1;
    h1.multiple = 1;
    h1.cos_amp = [&prof, sg](double r) {
        const double R = std::pow(r, sg);
        return -2.0 * prof.S1(r) / (R * R);
    };
    HarmonicPart h2;
    h2.multiple = 2;
    h2.cos_amp = [&prof, sg](double r) {
        const double R = std::pow(r, sg);
        return 0.5 * prof.S1(r) / (R * R) - 0.5 * prof.S0(r);
    };
    if (!prof.X.is_zero()) {
        h1.sin_amp = [&prof, sg](double r) { return 2.0 * prof.X(r) / std::pow(r, sg); };
        h2.sin_amp = [&prof, sg](double r) { return -prof.X(r) / std::pow(r, sg); };
    }
    d.harmonics.push_back(std::move(h1));
    d.harmonics.push_back(std::move(h2));
    return d;
}

// Re(w1^ conj V^) = (1 - cos phi) S1/R^2 + sin(phi) X/R
SplitDensity cross_split(const SpectralProfiles& prof, double t) {
    const double sg = prof.sigma;
    SplitDensity d;
    d.full = [&prof, t](double r) { return antiderivative_density(prof, t, r).u1_cross_V; };
    d.mean = [&prof, sg](double r) {
        const double R = std::pow(r, sg);
        return prof.S1(r) / (R * R);
    };
    HarmonicPart h1;
    h1.multiple = 1;
    h1.cos_amp = [&prof, sg](double r) {
        const double R = std::pow(r, sg);
        return -prof.S1(r) / (R * R);
    };
    if (!prof.X.is_zero()) {
        h1.sin_amp = [&prof, sg](double r) { return prof.X(r) / std::pow(r, sg); };
    }
    d.harmonics.push_back(std::move(h1));
    return d;
}

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw InvalidInput("time must be finite and >= 0");
    }
}

Estimate integrate_split(const SplitDensity& d, const SpectralProfiles& prof, double t,
                         Band band, const Envelope& env, const QuadConfig& cfg) {
    return integrate_radial(d, prof.n, band, Oscillation{t, prof.sigma}, env, cfg);
}

// Ordinary least squares y = a x + b.
struct Line {
    double slope;
    double intercept;
};

Line least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double m = static_cast<double>(x.size());
    double sx = 0.0;
    double sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / m;
    const double my = sy / m;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) {
        throw FitError("fit needs at least two distinct times");
    }
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

void require_fit_input(const NormSeries& s) {
    if (s.points.size() < 4) {
        std::ostringstream msg;
        msg << "fit needs at least 4 points, got " << s.points.size();
        throw FitError(msg.str());
    }
    for (const auto& p : s.points) {
        if (!(p.t > 0.0) || !std::isfinite(p.value)) {
            throw FitError("fit needs positive times and finite values");
        }
    }
}

} // namespace

std::string to_string(Quantity q) {
    switch (q) {
    case Quantity::NormSq: return "norm_sq";
    case Quantity::Norm: return "norm";
    case Quantity::Energy: return "energy";
    case Quantity::ILow: return "I_low";
    case Quantity::IHigh: return "I_high";
    }
    return "unknown";
}

Quantity quantity_from_string(const std::string& s) {
    for (Quantity q : {Quantity::NormSq, Quantity::Norm, Quantity::Energy, Quantity::ILow,
                       Quantity::IHigh}) {
        if (to_string(q) == s) {
            return q;
        }
    }
    throw InvalidInput("unknown quantity '" + s +
                       "' (expected norm_sq, norm, energy, I_low or I_high)");
}

std::string to_string(FitModel m) {
    switch (m) {
    case FitModel::Power: return "power";
    case FitModel::Log: return "log";
    case FitModel::Constant: return "constant";
    }
    return "unknown";
}

std::string to_string(GrowthKind k) {
    switch (k) {
    case GrowthKind::Bounded: return "Bounded";
    case GrowthKind::LogGrowth: return "LogGrowth";
    case GrowthKind::PowerGrowth: return "PowerGrowth";
    case GrowthKind::Ambiguous: return "Ambiguous";
    }
    return "unknown";
}

std::vector<double> NormSeries::times() const {
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        out.push_back(p.t);
    }
    return out;
}

std::vector<double> NormSeries::values() const {
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        out.push_back(p.value);
    }
    return out;
}

std::vector<double> log_grid(double t_min, double t_max, int count) {
    if (count < 1 || !(t_min > 0.0) || !(t_max >= t_min)) {
        throw InvalidInput("log_grid: need count >= 1 and 0 < t_min <= t_max");
    }
    if (count == 1) {
        return {t_min};
    }
    std::vector<double> out(count);
    const double l0 = std::log10(t_min);
    const double l1 = std::log10(t_max);
    for (int i = 0; i < count; ++i) {
        out[i] = std::pow(10.0, l0 + (l1 - l0) * i / (count - 1));
    }
    out.front() = t_min;
    out.back() = t_max;
    return out;
}

Estimate solution_l2_sq(const SpectralProfiles& prof, double t, const QuadConfig& cfg) {
    require_time(t);
    const SplitDensity d = displacement_split(prof, t);
    return integrate_split(d, prof, t, Band{}, profile_envelope(prof), cfg)
        .scaled(plancherel(prof.n));
}

Estimate solution_l2_sq(const Problem& p, double t, const QuadConfig& cfg) {
    return solution_l2_sq(spectral_profiles(p), t, cfg);
}

double split_radius(double delta0, double t, double sigma) {
    return std::pow(delta0 * delta0 / t, 1.0 / sigma);
}

FrequencySplit frequency_split(const Problem& p, double t, double delta0, const QuadConfig& cfg) {
    require_time(t);
    if (!(delta0 > 0.0 && delta0 < 1.0)) {
        throw InvalidInput("delta0 must lie in (0, 1)");
    }
    if (!(t > 0.0)) {
        throw InvalidInput("frequency_split needs t > 0");
    }
    const double radius = split_radius(delta0, t, p.sigma);
    if (radius > 1.0) {
        std::ostringstream msg;
        msg << "split radius " << radius << " > 1; t = " << t << " is too small";
        throw InvalidInput(msg.str());
    }
    const SpectralProfiles prof = spectral_profiles(p);
    const SplitDensity d = displacement_split(prof, t);
    const Envelope env = profile_envelope(prof);
    FrequencySplit out;
    out.radius = radius;
    out.low = integrate_split(d, prof, t, Band{0.0, radius}, env, cfg).scaled(plancherel(p.n));
    out.high = integrate_split(d, prof, t, Band{radius, std::numeric_limits<double>::infinity()},
                               env, cfg)
                   .scaled(plancherel(p.n));
    return out;
}

Estimate total_energy(const Problem& p, double t, const QuadConfig& cfg) {
    require_time(t);
    const SpectralProfiles prof = spectral_profiles(p);
    const Envelope env = profile_envelope(prof, 2.0 * p.sigma);
    const Estimate kinetic = integrate_split(velocity_split(prof, t), prof, t, Band{}, env, cfg);
    const Estimate elastic = integrate_split(operator_split(prof, t), prof, t, Band{}, env, cfg);
    return (kinetic + elastic).scaled(0.5 * plancherel(p.n));
}

double initial_energy(const Problem& p) {
    const SpectralProfiles prof = spectral_profiles(p);
    const double kinetic = prof.S1.radial_moment(p.n - 1);
    const double elastic = prof.S0.radial_moment(p.n - 1 + 2.0 * p.sigma);
    return 0.5 * plancherel(p.n) * (kinetic + elastic);
}

Estimate antiderivative_identity_residual(const Problem& p, double t, const QuadConfig& cfg) {
    require_time(t);
    if (t == 0.0) {
        return {};
    }
    const SpectralProfiles prof = spectral_profiles(p);
    const Envelope env = profile_envelope(prof, 2.0 * p.sigma);
    const Estimate vt = integrate_split(displacement_split(prof, t), prof, t, Band{}, env, cfg);
    const Estimate lapv =
        integrate_split(antiderivative_operator_split(prof, t), prof, t, Band{}, env, cfg);
    const Estimate cross = integrate_split(cross_split(prof, t), prof, t, Band{}, env, cfg);
    const double u0_sq = prof.S0.radial_moment(p.n - 1);

    const double lhs = 0.5 * vt.value + 0.5 * lapv.value;
    const double rhs = 0.5 * u0_sq + cross.value;
    const double scale = plancherel(p.n);
    return {std::abs(lhs - rhs) * scale, (0.5 * vt.error + 0.5 * lapv.error + cross.error) * scale};
}

double fourier_norm_sq(const DataCombo& d, int n) {
    const auto w = fourier_profiles(d, n);
    return angular_cross(w, w, n).radial_moment(n - 1);
}

NormSeries norm_series(const Problem& p, const std::vector<double>& t_grid, Quantity quantity,
                       const QuadConfig& cfg, double delta0) {
    if (t_grid.empty()) {
        throw InvalidInput("norm_series: empty time grid");
    }
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        require_time(t_grid[i]);
        if (i > 0 && !(t_grid[i] > t_grid[i - 1])) {
            throw InvalidInput("norm_series: time grid must be strictly increasing");
        }
    }
    const SpectralProfiles prof = spectral_profiles(p);
    NormSeries s;
    s.quantity = quantity;
    s.problem = p;
    s.points.resize(t_grid.size());
    parallel_for(t_grid.size(), [&](std::size_t i) {
        const double t = t_grid[i];
        Estimate e;
        switch (quantity) {
        case Quantity::NormSq: e = solution_l2_sq(prof, t, cfg); break;
        case Quantity::Norm: {
            const Estimate sq = solution_l2_sq(prof, t, cfg);
            const double v = std::sqrt(std::max(0.0, sq.value));
            e = {v, v > 0.0 ? sq.error / (2.0 * v) : std::sqrt(sq.error)};
            break;
        }
        case Quantity::Energy: e = total_energy(p, t, cfg); break;
        case Quantity::ILow: e = frequency_split(p, t, delta0, cfg).low; break;
        case Quantity::IHigh: e = frequency_split(p, t, delta0, cfg).high; break;
        }
        s.points[i] = {t, e.value, e.error};
    });
    return s;
}

FitResult fit_power(const NormSeries& s) {
    require_fit_input(s);
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& p : s.points) {
        if (!(p.value > 0.0)) {
            throw FitError("power fit needs strictly positive values");
        }
        x.push_back(std::log(p.t));
        y.push_back(std::log(p.value));
    }
    const Line line = least_squares(x, y);
    FitResult f;
    f.model = FitModel::Power;
    f.exponent = line.slope;
    f.amplitude = std::exp(line.intercept);
    for (const auto& p : s.points) {
        const double model = f.amplitude * std::pow(p.t, f.exponent);
        f.max_relative_residual = std::max(f.max_relative_residual, std::abs(model - p.value) / p.value);
    }
    f.t_min = s.points.front().t;
    f.t_max = s.points.back().t;
    f.points = static_cast<int>(s.points.size());
    return f;
}

FitResult fit_log(const NormSeries& s) {
    require_fit_input(s);
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& p : s.points) {
        x.push_back(std::log(p.t));
        y.push_back(p.value);
    }
    const Line line = least_squares(x, y);
    FitResult f;
    f.model = FitModel::Log;
    f.exponent = line.slope;
    f.amplitude = line.intercept;
    for (const auto& p : s.points) {
        const double model = line.slope * std::log(p.t) + line.intercept;
        const double denom = std::abs(p.value) > 0.0 ? std::abs(p.value) : 1.0;
        f.max_relative_residual = std::max(f.max_relative_residual, std::abs(model - p.value) / denom);
    }
    f.t_min = s.points.front().t;
    f.t_max = s.points.back().t;
    f.points = static_cast<int>(s.points.size());
    return f;
}

double last_decade_variation(const NormSeries& s) {
    if (s.points.empty()) {
        return 0.0;
    }
    const double t_end = s.points.back().t;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double sum = 0.0;
    int count = 0;
    for (const auto& p : s.points) {
        if (p.t >= t_end / 10.0 * (1.0 - 1e-12)) {
            lo = std::min(lo, p.value);
            hi = std::max(hi, p.value);
            sum += p.value;
            ++count;
        }
    }
    const double mean = sum / count;
    return mean != 0.0 ? (hi - lo) / std::abs(mean) : 0.0;
}

GrowthClass classify_growth(const NormSeries& s, double tol) {
    if (s.points.size() < 4) {
        throw FitError("classify_growth needs at least 4 points");
    }
    if (s.points.back().t / s.points.front().t < 1e3 * (1.0 - 1e-9)) {
        throw FitError("classify_growth needs a series spanning at least 3 decades");
    }
    GrowthClass g;
    g.tol = tol;
    g.power = fit_power(s);
    g.log = fit_log(s);
    g.last_decade_variation = last_decade_variation(s);
    const double alpha = g.power.exponent;
    if (std::abs(alpha) <= g.bounded_alpha && g.last_decade_variation < tol) {
        g.kind = GrowthKind::Bounded;
        g.rate = alpha;
    } else if (g.log.max_relative_residual < g.power.max_relative_residual && g.log.exponent > 0.0 &&
               g.log.max_relative_residual < tol) {
        g.kind = GrowthKind::LogGrowth;
        g.rate = g.log.exponent;
    } else if (g.power.max_relative_residual < tol && std::abs(alpha) > g.bounded_alpha) {
        g.kind = GrowthKind::PowerGrowth;
        g.rate = alpha;
    } else {
        g.kind = GrowthKind::Ambiguous;
        g.rate = alpha;
    }
    return g;
}

double lower_bound_lemma31(double P, int n, double delta0, double t) {
    if (!(t > 0.0)) {
        throw InvalidInput("lower_bound_lemma31: t must be positive");
    }
    if (!(delta0 > 0.0 && delta0 < 1.0)) {
        throw InvalidInput("lower_bound_lemma31: delta0 must lie in (0, 1)");
    }
    return P * P / (32.0 * n) * sphere_area(n) * std::pow(delta0, n) * std::pow(t, 2.0 - 0.5 * n);
}

double upper_bound_prop41(int n, double l1_u1, double wsq_u1, double wsq_u0) {
    if (n <= 4) {
        throw InvalidInput("upper_bound_prop41: the bound only exists for n >= 5");
    }
    return 2.0 * sphere_area(n) / (n - 4) * l1_u1 * l1_u1 + 2.0 * wsq_u1 + wsq_u0;
}

} // namespace drl
