#include "drl/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "drl/error.hpp"
#include "drl/gauss_legendre.hpp"

namespace drl {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Physical-space representation p(x) e^{-a|x|^2} of a primitive.
struct PhysMonomial {
    double coeff;
    std::vector<int> powers;
};

struct PhysForm {
    double a;
    std::vector<PhysMonomial> monomials;
};

std::vector<int> unit_powers(int n, int axis) {
    std::vector<int> p(n, 0);
    p[axis] = 1;
    return p;
}

PhysForm physical_form(const DataPrimitive& prim, int n) {
    return std::visit(
        Overloaded{
            [n](const Gaussian& g) { return PhysForm{g.a, {{1.0, std::vector<int>(n, 0)}}}; },
            [n](const Dipole& d) {
                return PhysForm{d.a, {{-2.0 * d.a, unit_powers(n, d.axis - 1)}}};
            },
            [n](const TensorDipole& d) {
                std::vector<int> p(n, 0);
                p[0] = 1;
                p[1] = 1;
                return PhysForm{d.a, {{4.0 * d.a * d.a, p}}};
            },
            [n](const LapGaussian& l) {
                PhysForm f{l.a, {}};
                for (int k = 0; k < n; ++k) {
                    std::vector<int> p(n, 0);
                    p[k] = 2;
                    f.monomials.push_back({4.0 * l.a * l.a, p});
                }
                f.monomials.push_back({-2.0 * l.a * n, std::vector<int>(n, 0)});
                return f;
            },
        },
        prim);
}

// int_R x^p e^{-c x^2} dx
double gaussian_moment_1d(int p, double c) {
    if (p % 2 != 0) {
        return 0.0;
    }
    const double s = 0.5 * (p + 1);
    return std::tgamma(s) / std::pow(c, s);
}

// Radial decomposition d(r w) = R0(r) + w . H(r) + T(r) w_1 w_2.
struct RadialParts {
    double r0 = 0.0;
    std::vector<double> h;
    double tensor = 0.0;
};

RadialParts radial_parts(const DataCombo& d, int n, double r) {
    RadialParts parts;
    parts.h.assign(n, 0.0);
    for (const auto& term : d.terms) {
        std::visit(Overloaded{
                       [&](const Gaussian& g) { parts.r0 += term.coeff * std::exp(-g.a * r * r); },
                       [&](const Dipole& dp) {
                           parts.h[dp.axis - 1] +=
                               term.coeff * (-2.0 * dp.a * r) * std::exp(-dp.a * r * r);
                       },
                       [&](const TensorDipole& td) {
                           parts.tensor +=
                               term.coeff * 4.0 * td.a * td.a * r * r * std::exp(-td.a * r * r);
                       },
                       [&](const LapGaussian& l) {
                           parts.r0 += term.coeff * (4.0 * l.a * l.a * r * r - 2.0 * l.a * n) *
                                       std::exp(-l.a * r * r);
                       },
                   },
                   term.prim);
    }
    return parts;
}

// Sign changes of f on [a, b], located by sampling then bisection.
std::vector<double> sign_changes(const RealFn& f, double a, double b, int samples) {
    std::vector<double> roots;
    double x0 = a;
    double f0 = f(x0);
    for (int i = 1; i <= samples; ++i) {
        const double x1 = a + (b - a) * i / samples;
        const double f1 = f(x1);
        if ((f0 < 0.0 && f1 > 0.0) || (f0 > 0.0 && f1 < 0.0)) {
            double lo = x0;
            double hi = x1;
            double flo = f0;
            for (int it = 0; it < 80 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = f(mid);
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        x0 = x1;
        f0 = f1;
    }
    return roots;
}

std::vector<double> with_breaks(double a, double b, std::vector<double> interior) {
    std::vector<double> pts{a};
    std::sort(interior.begin(), interior.end());
    for (double x : interior) {
        if (x > pts.back() && x < b) {
            pts.push_back(x);
        }
    }
    pts.push_back(b);
    return pts;
}

// int over S^{n-1} of |d(r w)| dw.
double angular_abs(const DataCombo& d, int n, double r, const AdaptiveOptions& opt) {
    const RadialParts parts = radial_parts(d, n, r);
    if (n == 1) {
        return std::abs(parts.r0 + parts.h[0]) + std::abs(parts.r0 - parts.h[0]);
    }
    constexpr double pi = std::numbers::pi;
    if (n == 2) {
        RealFn f = [&](double th) {
            const double c = std::cos(th);
            const double s = std::sin(th);
            return parts.r0 + parts.h[0] * c + parts.h[1] * s + parts.tensor * c * s;
        };
        const auto pts = with_breaks(0.0, 2.0 * pi, sign_changes(f, 0.0, 2.0 * pi, 128));
        RealFn absf = [&](double th) { return std::abs(f(th)); };
        return adaptive_integrate(absf, pts, opt).value;
    }
    // n >= 3: rotate H onto the polar axis; the integrand depends on the
    // polar angle only, with weight sin^{n-2}.
    double hnorm = 0.0;
    for (double h : parts.h) {
        hnorm += h * h;
    }
    hnorm = std::sqrt(hnorm);
    const double lower_sphere = sphere_area(n - 1);
    if (hnorm == 0.0) {
        return sphere_area(n) * std::abs(parts.r0);
    }
    std::vector<double> interior;
    const double u = -parts.r0 / hnorm;
    if (u > -1.0 && u < 1.0) {
        interior.push_back(std::acos(u));
    }
    RealFn g = [&](double th) {
        return std::abs(parts.r0 + hnorm * std::cos(th)) * std::pow(std::sin(th), n - 2);
    };
    return lower_sphere * adaptive_integrate(g, with_breaks(0.0, pi, interior), opt).value;
}

} // namespace

double width(const DataPrimitive& p) {
    return std::visit([](const auto& q) { return q.a; }, p);
}

std::string kind_name(const DataPrimitive& p) {
    return std::visit(Overloaded{
                          [](const Gaussian&) { return std::string("gaussian"); },
                          [](const Dipole&) { return std::string("dipole"); },
                          [](const TensorDipole&) { return std::string("tensor_dipole"); },
                          [](const LapGaussian&) { return std::string("lap_gaussian"); },
                      },
                      p);
}

double sphere_area(int n) {
    if (n < 1) {
        throw InvalidInput("sphere_area: dimension must be >= 1");
    }
    return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

void validate(const DataPrimitive& p, int n) {
    if (n < 1) {
        throw InvalidInput("dimension n must be >= 1");
    }
    const double a = width(p);
    if (!(a > 0.0) || !std::isfinite(a)) {
        std::ostringstream msg;
        msg << kind_name(p) << ": width a must be positive and finite, got " << a;
        throw InvalidInput(msg.str());
    }
    if (const auto* d = std::get_if<Dipole>(&p)) {
        if (d->axis < 1 || d->axis > n) {
            std::ostringstream msg;
            msg << "dipole axis " << d->axis << " out of range 1.." << n;
            throw InvalidInput(msg.str());
        }
    }
    if (std::holds_alternative<TensorDipole>(p) && n != 2) {
        std::ostringstream msg;
        msg << "tensor_dipole requires n = 2, got n = " << n;
        throw InvalidInput(msg.str());
    }
}

DataCombo build_data(std::vector<DataTerm> terms, int n) {
    for (const auto& t : terms) {
        if (!std::isfinite(t.coeff)) {
            throw InvalidInput("data coefficient must be finite");
        }
        validate(t.prim, n);
    }
    return DataCombo{std::move(terms)};
}

Problem make_problem(int n, double sigma, DataCombo u0, DataCombo u1) {
    if (n < 1) {
        throw InvalidInput("dimension n must be >= 1");
    }
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw InvalidInput("sigma must be positive and finite");
    }
    Problem p{n, sigma, build_data(std::move(u0.terms), n), build_data(std::move(u1.terms), n)};
    return p;
}

Moments moments(const DataCombo& d, int n) {
    Moments m;
    m.P1.assign(n, 0.0);
    for (const auto& term : d.terms) {
        if (const auto* g = std::get_if<Gaussian>(&term.prim)) {
            m.P += term.coeff * std::pow(std::numbers::pi / g->a, 0.5 * n);
        } else if (const auto* dp = std::get_if<Dipole>(&term.prim)) {
            // int x_j d_j g = -int g
            m.P1[dp->axis - 1] -= term.coeff * std::pow(std::numbers::pi / dp->a, 0.5 * n);
        }
        // Tensor dipoles and Laplacians have vanishing zeroth and first moments.
    }
    if (m.P != 0.0) {
        m.kappa = 0;
    } else if (std::any_of(m.P1.begin(), m.P1.end(), [](double v) { return v != 0.0; })) {
        m.kappa = 1;
    } else {
        m.kappa = 2;
    }
    return m;
}

double l2_norm_data(const DataCombo& d, int n) {
    if (d.empty()) {
        return 0.0;
    }
    std::vector<PhysForm> forms;
    forms.reserve(d.terms.size());
    for (const auto& t : d.terms) {
        forms.push_back(physical_form(t.prim, n));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < forms.size(); ++i) {
        for (std::size_t j = 0; j < forms.size(); ++j) {
            const double c = forms[i].a + forms[j].a;
            double pair = 0.0;
            for (const auto& mi : forms[i].monomials) {
                for (const auto& mj : forms[j].monomials) {
                    double prod = mi.coeff * mj.coeff;
                    for (int k = 0; k < n && prod != 0.0; ++k) {
                        prod *= gaussian_moment_1d(mi.powers[k] + mj.powers[k], c);
                    }
                    pair += prod;
                }
            }
            sum += d.terms[i].coeff * d.terms[j].coeff * pair;
        }
    }
    return std::sqrt(std::max(0.0, sum));
}

double evaluate(const DataCombo& d, const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    double r2 = 0.0;
    for (double xi : x) {
        r2 += xi * xi;
    }
    double sum = 0.0;
    for (const auto& t : d.terms) {
        const PhysForm f = physical_form(t.prim, n);
        double poly = 0.0;
        for (const auto& m : f.monomials) {
            double v = m.coeff;
            for (int k = 0; k < n; ++k) {
                v *= std::pow(x[k], m.powers[k]);
            }
            poly += v;
        }
        sum += t.coeff * poly * std::exp(-f.a * r2);
    }
    return sum;
}

double l1_weighted_norm(const DataCombo& d, double gamma, int n, double rel_tol) {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
        throw InvalidInput("l1_weighted_norm: gamma must be >= 0");
    }
    if (d.empty()) {
        return 0.0;
    }
    double a_min = width(d.terms.front().prim);
    for (const auto& t : d.terms) {
        a_min = std::min(a_min, width(t.prim));
    }
    // e^{-a r^2} r^{gamma + n + 2} is far below double resolution beyond r_max.
    const double base = std::sqrt(80.0 / a_min);
    const double r_max =
        std::sqrt((80.0 + (gamma + n + 2.0) * std::log1p(base)) / a_min);

    AdaptiveOptions inner{rel_tol * 1e-2, 1e-300, 16, 4000};
    RealFn radial = [&](double r) {
        if (r == 0.0) {
            return 0.0;
        }
        const double weight = (1.0 + std::pow(r, gamma)) * std::pow(r, n - 1);
        return weight * angular_abs(d, n, r, inner);
    };

    // Kinks of the radial profile: zeros of R0 and R0 +- |H|.
    RealFn r0 = [&](double r) { return radial_parts(d, n, r).r0; };
    RealFn r0_plus = [&](double r) {
        const auto p = radial_parts(d, n, r);
        double h = 0.0;
        for (double v : p.h) {
            h += v * v;
        }
        return p.r0 + std::sqrt(h);
    };
    RealFn r0_minus = [&](double r) {
        const auto p = radial_parts(d, n, r);
        double h = 0.0;
        for (double v : p.h) {
            h += v * v;
        }
        return p.r0 - std::sqrt(h);
    };
    std::vector<double> interior = {1e-3 * r_max, 1e-2 * r_max, 0.1 * r_max, 0.25 * r_max,
                                    0.5 * r_max};
    for (const RealFn* f : {&r0, &r0_plus, &r0_minus}) {
        for (double x : sign_changes(*f, 1e-9, r_max, 400)) {
            interior.push_back(x);
        }
    }
    AdaptiveOptions outer{rel_tol, 1e-300, 16, 20000};
    return adaptive_integrate(radial, with_breaks(0.0, r_max, interior), outer).value;
}

double l1_norm(const DataCombo& d, int n) { return 0.5 * l1_weighted_norm(d, 0.0, n); }

} // namespace drl
