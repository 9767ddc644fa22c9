#include "drl/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "drl/error.hpp"

namespace drl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kErrorShare = 0.01;

DataCombo single(DataPrimitive p) { return DataCombo{{DataTerm{1.0, p}}}; }

DataCombo gaussian() { return single(Gaussian{0.5}); }

std::string label(int n, const std::string& rest = {}) {
    std::ostringstream os;
    os << "n=" << n;
    if (!rest.empty()) {
        os << ' ' << rest;
    }
    return os.str();
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

void add_check(VerificationReport& r, std::string name, double value, double lower, double upper,
               std::string source) {
    Check c{std::move(name), value, lower, upper, std::move(source), false};
    c.passed = std::isfinite(value) && value >= lower && value <= upper;
    r.checks.push_back(std::move(c));
}

void add_flag(VerificationReport& r, std::string name, bool ok, std::string source) {
    add_check(r, std::move(name), ok ? 1.0 : 0.0, 1.0, 1.0, std::move(source));
}

void measure(VerificationReport& r, std::string name, double value) {
    r.measured.push_back({std::move(name), value});
}

// A quadrature error estimate above 1% of the value it feeds makes the
// comparison meaningless; fail loudly instead of passing on noise.
void audit(VerificationReport& r, const NormSeries& s, const std::string& what) {
    for (const auto& p : s.points) {
        if (p.error > kErrorShare * std::abs(p.value)) {
            std::ostringstream os;
            os << what << ": error estimate " << p.error << " exceeds 1% of value " << p.value
               << " at t = " << p.t;
            r.diagnostics.push_back(os.str());
        }
    }
}

void audit(VerificationReport& r, const Estimate& e, double compared, const std::string& what) {
    if (e.error > kErrorShare * std::abs(compared)) {
        std::ostringstream os;
        os << what << ": error estimate " << e.error << " exceeds 1% of " << compared;
        r.diagnostics.push_back(os.str());
    }
}

double spread(const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    double mean = 0.0;
    for (double x : v) {
        mean += x;
    }
    mean /= static_cast<double>(v.size());
    return (*hi - *lo) / std::abs(mean);
}

NormSeries series(const Problem& p, const std::vector<double>& grid, const ScenarioConfig& cfg) {
    return norm_series(p, grid, Quantity::NormSq, cfg.quad, cfg.delta0);
}

// Spread of ||u||^2 / log t over [1e4, 1e6].
void log_plateau(VerificationReport& r, const Problem& p, const std::string& name,
                 const ScenarioConfig& cfg) {
    const NormSeries s = series(p, log_grid(1e4, 1e6, 9), cfg);
    audit(r, s, name);
    std::vector<double> ratio;
    for (const auto& q : s.points) {
        ratio.push_back(q.value / std::log(q.t));
    }
    measure(r, name + " ||u||^2/log t at 1e6", ratio.back());
    measure(r, name + " log slope", fit_log(s).exponent);
    add_check(r, name + " spread of ||u||^2/log t on [1e4,1e6]", spread(ratio), 0.0, 0.05,
              "sqrt(log t) growth; 5% plateau tolerance");
}

void bounded(VerificationReport& r, const Problem& p, const std::string& name,
             const ScenarioConfig& cfg) {
    const NormSeries s = series(p, cfg.window.grid(), cfg);
    audit(r, s, name);
    const GrowthClass g = classify_growth(s, cfg.classify_tol);
    measure(r, name + " ||u||^2 at t_max", s.points.back().value);
    add_flag(r, name + " classified Bounded (got " + to_string(g.kind) + ")",
             g.kind == GrowthKind::Bounded, "classification rule, |alpha| <= 0.05");
    add_check(r, name + " |alpha| of ||u||^2", std::abs(g.power.exponent), 0.0, 0.02,
              "boundedness, exponent tolerance 0.02");
    add_check(r, name + " last-decade variation", g.last_decade_variation, 0.0, 0.02,
              "boundedness, variation tolerance 2%");
}

std::vector<int> pick(std::optional<int> n, const std::vector<int>& allowed, const std::string& id) {
    if (!n) {
        return allowed;
    }
    if (std::find(allowed.begin(), allowed.end(), *n) == allowed.end()) {
        std::ostringstream os;
        os << id << " does not support n = " << *n << " (allowed:";
        for (int a : allowed) {
            os << ' ' << a;
        }
        os << ')';
        throw InvalidInput(os.str());
    }
    return {*n};
}

// Fourier-side norm ||w(t)||^2 = (2 pi)^n ||u(t)||^2.
double fourier_side(double norm_sq, int n) { return std::pow(kTwoPi, n) * norm_sq; }

void growth_rate(VerificationReport& r, std::optional<int> n_opt, const ScenarioConfig& cfg) {
    r.claim = "||u(t)|| ~ t^{1-n/4} for n = 1, 2, 3 when int u1 != 0, and ||w(t)||^2 dominates "
              "P^2/(32 n) omega_n delta0^n t^{2-n/2} for t >= 1e3";
    for (int n : pick(n_opt, {1, 2, 3}, r.id)) {
        for (bool with_u0 : {false, true}) {
            const std::string name = label(n, with_u0 ? "u0=gaussian" : "u0=0");
            const Problem p = make_problem(n, 2.0, with_u0 ? gaussian() : DataCombo{}, gaussian());
            const NormSeries s = series(p, cfg.window.grid(), cfg);
            audit(r, s, name);
            const FitResult f = fit_power(s);
            const double expected = 1.0 - n / 4.0;
            measure(r, name + " alpha of ||u||^2", f.exponent);
            add_check(r, name + " alpha of ||u||", 0.5 * f.exponent, expected - 0.02, expected + 0.02,
                      "t^{1-n/4} growth rate, tolerance 0.02");
            const double P = moments(p.u1, n).P;
            double worst = std::numeric_limits<double>::infinity();
            for (const auto& q : s.points) {
                if (q.t >= 1e3) {
                    worst = std::min(worst, fourier_side(q.value, n) /
                                                lower_bound_lemma31(P, n, cfg.delta0, q.t));
                }
            }
            add_check(r, name + " min ||w||^2 / explicit lower bound (t >= 1e3)", worst, 1.0,
                      std::numeric_limits<double>::infinity(), "explicit low-frequency lower bound");
        }
    }
}

void log_growth(VerificationReport& r, const ScenarioConfig& cfg) {
    r.claim = "||u(t)||^2 / log t plateaus for n = 4 and Gaussian u1";
    log_plateau(r, make_problem(4, 2.0, {}, gaussian()), label(4, "u0=0"), cfg);
    log_plateau(r, make_problem(4, 2.0, gaussian(), gaussian()), label(4, "u0=gaussian"), cfg);
}

void zero_mass(VerificationReport& r, std::optional<int> n_opt, const ScenarioConfig& cfg) {
    r.claim = "||u(t)|| stays bounded for n = 3, 4 when int u1 = 0 (u1 a dipole)";
    for (int n : pick(n_opt, {3, 4}, r.id)) {
        const Problem p = make_problem(n, 2.0, {}, single(Dipole{0.5, 1}));
        measure(r, label(n, "||u1||_{1,1}"), l1_weighted_norm(p.u1, 1.0, n));
        bounded(r, p, label(n, "dipole"), cfg);
    }
}

void zero_moments(VerificationReport& r, std::optional<int> n_opt, const ScenarioConfig& cfg) {
    r.claim = "||u(t)|| stays bounded for n = 1, 2 when u1 has vanishing zeroth and first moments";
    for (int n : pick(n_opt, {1, 2}, r.id)) {
        const DataCombo u1 = n == 1 ? single(LapGaussian{0.5}) : single(TensorDipole{0.5});
        const Problem p = make_problem(n, 2.0, {}, u1);
        const Moments m = moments(u1, n);
        measure(r, label(n, "kappa"), m.kappa);
        measure(r, label(n, "||u1||_{1,2}"), l1_weighted_norm(u1, 2.0, n));
        add_check(r, label(n, "kappa"), m.kappa, 2.0, 2.0, "vanishing zeroth and first moments");
        bounded(r, p, label(n, n == 1 ? "lap_gaussian" : "tensor_dipole"), cfg);
    }
}

void first_moment_1d(VerificationReport& r, const ScenarioConfig& cfg) {
    r.claim = "n = 1, int u1 = 0, int x u1 != 0: ||u(t)|| >= c t^{1/4} with c > 0 stable on "
              "[1e3,1e6]; measured exponent of ||u|| is 0.25";
    r.artifact_finding = true;
    const Problem p = make_problem(1, 2.0, {}, single(Dipole{0.5, 1}));
    const NormSeries s = series(p, cfg.window.grid(), cfg);
    audit(r, s, "n=1 dipole");
    const FitResult f = fit_power(s);
    measure(r, "alpha of ||u||^2", f.exponent);
    add_check(r, "alpha of ||u|| (measured finding)", 0.5 * f.exponent, 0.23, 0.27,
              "measured exponent 0.25, tolerance 0.02; only the lower bound is proved");

    const NormSeries c_series = series(p, log_grid(1e3, 1e6, 10), cfg);
    audit(r, c_series, "n=1 dipole c(t)");
    std::vector<double> c;
    for (const auto& q : c_series.points) {
        c.push_back(std::sqrt(q.value) / std::pow(q.t, 0.25));
    }
    measure(r, "c(1e6) = ||u|| / t^{1/4}", c.back());
    add_check(r, "min c(t) on [1e3,1e6]", *std::min_element(c.begin(), c.end()),
              std::numeric_limits<double>::min(), std::numeric_limits<double>::infinity(),
              "t^{1/4} lower bound, c > 0");
    add_check(r, "spread of c(t) on [1e3,1e6]", spread(c), 0.0, 0.05,
              "t^{1/4} lower bound; stability read as 5% spread");
}

void first_moment_2d(VerificationReport& r, const ScenarioConfig& cfg) {
    r.claim = "n = 2, int u1 = 0, int x u1 != 0: ||u(t)||^2 / log t plateaus";
    r.artifact_finding = true;
    log_plateau(r, make_problem(2, 2.0, {}, single(Dipole{0.5, 1})), "n=2 dipole", cfg);
}

void explicit_upper(VerificationReport& r, const ScenarioConfig& cfg) {
    const int n = 5;
    r.claim = "n = 5: ||w(t)||^2 <= 2 omega_n/(n-4) ||u1||_1^2 + 2 ||w1||^2 + ||w0||^2 and the "
              "norm stays bounded";
    const Problem p = make_problem(n, 2.0, gaussian(), gaussian());
    const double bound = upper_bound_prop41(n, l1_norm(p.u1, n), fourier_norm_sq(p.u1, n),
                                            fourier_norm_sq(p.u0, n));
    measure(r, "explicit bound", bound);
    double worst = 0.0;
    for (double t : {1.0, 10.0, 1e2, 1e3, 1e4}) {
        const Estimate e = solution_l2_sq(p, t, cfg.quad);
        audit(r, e, e.value, "||u(" + fmt(t) + ")||^2");
        const double w = fourier_side(e.value, n);
        measure(r, "||w(" + fmt(t) + ")||^2", w);
        worst = std::max(worst, w / bound);
    }
    add_check(r, "max ||w(t)||^2 / bound", worst, 0.0, 1.0, "explicit high-dimension upper bound");
    const NormSeries s = series(p, cfg.window.grid(), cfg);
    audit(r, s, "n=5 gaussian");
    const GrowthClass g = classify_growth(s, cfg.classify_tol);
    add_flag(r, "classified Bounded (got " + to_string(g.kind) + ")", g.kind == GrowthKind::Bounded,
             "classification rule, |alpha| <= 0.05");
}

struct CatalogEntry {
    std::string name;
    Problem problem;
};

std::vector<CatalogEntry> energy_catalog() {
    std::vector<CatalogEntry> out;
    for (int n : {1, 2, 4}) {
        out.push_back({label(n, "gaussian/gaussian"), make_problem(n, 2.0, gaussian(), gaussian())});
        out.push_back({label(n, "gaussian(a=1)/dipole"),
                       make_problem(n, 2.0, single(Gaussian{1.0}), single(Dipole{0.5, 1}))});
    }
    return out;
}

void energy(VerificationReport& r, const ScenarioConfig& cfg) {
    r.claim = "E(t) = E(0), and the antiderivative energy identity holds to quadrature accuracy";
    double drift = 0.0;
    for (const auto& entry : energy_catalog()) {
        const double e0 = initial_energy(entry.problem);
        for (double t : {0.1, 1.0, 10.0, 1e2, 1e3}) {
            const Estimate e = total_energy(entry.problem, t, cfg.quad);
            audit(r, e, e0, entry.name + " E(" + fmt(t) + ")");
            drift = std::max(drift, std::abs(e.value - e0) / e0);
        }
    }
    add_check(r, "max |E(t) - E(0)| / E(0)", drift, 0.0, 1e-8, "energy conservation, 1e-8");

    double residual = 0.0;
    for (int n : {1, 2}) {
        const Problem p = make_problem(n, 2.0, gaussian(), gaussian());
        const double e0 = initial_energy(p);
        for (double t : {1.0, 10.0, 100.0}) {
            const Estimate e = antiderivative_identity_residual(p, t, cfg.quad);
            audit(r, e, e0, label(n, "identity residual"));
            residual = std::max(residual, e.value / e0);
        }
    }
    add_check(r, "max antiderivative identity residual / E(0)", residual, 0.0, 1e-8,
              "exact identity, 1e-8");
}

void lower_dominance(VerificationReport& r, const ScenarioConfig& cfg) {
    r.claim = "||w(t)||^2 >= P^2/(32 n) omega_n delta0^n t^{2-n/2} for t >= 1e3, n = 1, 2, 3";
    for (int n : {1, 2, 3}) {
        const Problem p = make_problem(n, 2.0, {}, gaussian());
        const NormSeries s = series(p, cfg.window.grid(), cfg);
        audit(r, s, label(n));
        const double P = moments(p.u1, n).P;
        double worst = std::numeric_limits<double>::infinity();
        double first_hold = std::numeric_limits<double>::quiet_NaN();
        for (auto it = s.points.rbegin(); it != s.points.rend(); ++it) {
            const double ratio = fourier_side(it->value, n) / lower_bound_lemma31(P, n, cfg.delta0, it->t);
            if (ratio < 1.0) {
                break;
            }
            first_hold = it->t;
        }
        for (const auto& q : s.points) {
            if (q.t >= 1e3) {
                worst = std::min(worst, fourier_side(q.value, n) / lower_bound_lemma31(P, n, cfg.delta0, q.t));
            }
        }
        measure(r, label(n, "first sampled t from which the bound holds"), first_hold);
        add_check(r, label(n, "min ||w||^2 / lower bound (t >= 1e3)"), worst, 1.0,
                  std::numeric_limits<double>::infinity(), "explicit low-frequency lower bound");
    }
}

void threshold(VerificationReport& r, const ScenarioConfig& cfg) {
    r.claim = "growth class of ||u||^2 switches at n = 2 sigma: power t^{2-n/sigma} below, log at, "
              "bounded above";
    for (const auto& row : sigma_sweep({1.0, 1.5, 2.0, 3.0}, {1, 2, 3, 4, 5, 6, 7}, cfg)) {
        std::ostringstream name;
        name << "sigma=" << row.sigma << " n=" << row.n;
        measure(r, name.str() + " alpha of ||u||^2", row.growth.power.exponent);
        add_flag(r,
                 name.str() + " " + to_string(row.growth.kind) + " (expected " +
                     to_string(row.expected) + ")",
                 row.matches, "threshold n* = 2 sigma; exponent tolerance 0.05");
        if (!row.error.empty()) {
            r.diagnostics.push_back(name.str() + ": " + row.error);
        }
    }
}

using Runner = std::function<void(VerificationReport&, std::optional<int>, const ScenarioConfig&)>;

const std::map<std::string, Runner>& registry() {
    static const std::map<std::string, Runner> table{
        {"THM_1_1", growth_rate},
        {"THM_1_2", [](auto& r, auto, const auto& c) { log_growth(r, c); }},
        {"THM_1_3", zero_mass},
        {"THM_1_4", zero_moments},
        {"THM_1_5_N1", [](auto& r, auto, const auto& c) { first_moment_1d(r, c); }},
        {"THM_1_5_N2", [](auto& r, auto, const auto& c) { first_moment_2d(r, c); }},
        {"PROP_4_1", [](auto& r, auto, const auto& c) { explicit_upper(r, c); }},
        {"ENERGY", [](auto& r, auto, const auto& c) { energy(r, c); }},
        {"LEMMA_3_1", [](auto& r, auto, const auto& c) { lower_dominance(r, c); }},
        {"REMARK_1_1", [](auto& r, auto, const auto& c) { threshold(r, c); }},
    };
    return table;
}

} // namespace

const std::vector<std::string>& scenario_ids() {
    static const std::vector<std::string> ids{"THM_1_1",    "THM_1_2",    "THM_1_3",  "THM_1_4",
                                              "THM_1_5_N1", "THM_1_5_N2", "PROP_4_1", "ENERGY",
                                              "LEMMA_3_1",  "REMARK_1_1"};
    return ids;
}

VerificationReport run_scenario(const std::string& id, std::optional<int> n,
                                const ScenarioConfig& cfg) {
    const auto it = registry().find(id);
    if (it == registry().end()) {
        throw InvalidInput("unknown scenario '" + id + "'");
    }
    cfg.quad.validate();
    const bool takes_n = id == "THM_1_1" || id == "THM_1_3" || id == "THM_1_4";
    if (n && !takes_n) {
        throw InvalidInput("scenario " + id + " takes no dimension");
    }

    VerificationReport r;
    r.id = id;
    r.budgets = cfg.quad;
    const auto start = std::chrono::steady_clock::now();
    try {
        it->second(r, n, cfg);
    } catch (const InvalidInput&) {
        throw;
    } catch (const std::exception& e) {
        r.diagnostics.push_back(std::string("aborted: ") + e.what());
    }
    r.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.passed = !r.checks.empty() && r.diagnostics.empty() &&
               std::all_of(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.passed; });
    return r;
}

std::vector<VerificationReport> run_all(const ScenarioConfig& cfg) {
    std::vector<VerificationReport> out;
    for (const auto& id : scenario_ids()) {
        out.push_back(run_scenario(id, std::nullopt, cfg));
    }
    return out;
}

std::vector<SweepRow> sigma_sweep(const std::vector<double>& sigmas, const std::vector<int>& ns,
                                  const ScenarioConfig& cfg, double alpha_tol) {
    std::vector<SweepRow> rows;
    for (double sigma : sigmas) {
        for (int n : ns) {
            SweepRow row;
            row.sigma = sigma;
            row.n = n;
            const double threshold = 2.0 * sigma;
            if (std::abs(n - threshold) < 1e-12) {
                row.expected = GrowthKind::LogGrowth;
            } else if (n < threshold) {
                row.expected = GrowthKind::PowerGrowth;
                row.expected_alpha = 2.0 - n / sigma;
            } else {
                row.expected = GrowthKind::Bounded;
            }
            try {
                const Problem p = make_problem(n, sigma, {}, gaussian());
                const NormSeries s = series(p, cfg.window.grid(), cfg);
                row.growth = classify_growth(s, cfg.classify_tol);
                bool honest = true;
                for (const auto& q : s.points) {
                    if (q.error > kErrorShare * std::abs(q.value)) {
                        honest = false;
                        row.error = "error estimate above 1% of value at t = " + fmt(q.t);
                        break;
                    }
                }
                row.matches = honest && row.growth.kind == row.expected;
                if (row.matches && row.expected == GrowthKind::PowerGrowth) {
                    row.matches = std::abs(row.growth.power.exponent - row.expected_alpha) <= alpha_tol;
                }
            } catch (const InvalidInput&) {
                throw;
            } catch (const std::exception& e) {
                row.error = e.what();
                row.matches = false;
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace drl
