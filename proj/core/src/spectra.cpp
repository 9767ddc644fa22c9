#include "drl/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "drl/error.hpp"

namespace drl {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kPi = std::numbers::pi;

} // namespace

double Envelope::cutoff(double level) const {
    if (amplitude <= level || amplitude == 0.0) {
        return 0.0;
    }
    const double log_ratio = std::log(amplitude / level);
    double r = std::max(1.0, std::sqrt(log_ratio / width));
    for (int i = 0; i < 50; ++i) {
        const double next = std::sqrt((log_ratio + power * std::log(std::max(1.0, r))) / width);
        if (std::abs(next - r) < 1e-12 * r) {
            r = next;
            break;
        }
        r = next;
    }
    return std::max(r, 1.0);
}

Complex PolyGaussFourier::evaluate(std::span<const double> xi) const {
    double r2 = 0.0;
    for (double x : xi) {
        r2 += x * x;
    }
    Complex sum{0.0, 0.0};
    for (const auto& m : monomials) {
        double v = 1.0;
        for (std::size_t k = 0; k < xi.size(); ++k) {
            for (int p = 0; p < m.powers[k]; ++p) {
                v *= xi[k];
            }
        }
        sum += m.coeff * v;
    }
    return sum * std::exp(-b * r2);
}

int PolyGaussFourier::degree() const {
    int deg = 0;
    for (const auto& m : monomials) {
        int d = 0;
        for (int p : m.powers) {
            d += p;
        }
        deg = std::max(deg, d);
    }
    return deg;
}

PolyGaussRadial::PolyGaussRadial(std::vector<RadialTerm> terms) {
    for (const auto& t : terms) {
        add_term(t);
    }
}

void PolyGaussRadial::add_term(const RadialTerm& t) {
    if (t.coeff == 0.0) {
        return;
    }
    for (auto& existing : terms_) {
        if (existing.k == t.k && existing.b == t.b) {
            existing.coeff += t.coeff;
            return;
        }
    }
    terms_.push_back(t);
}

double PolyGaussRadial::operator()(double r) const {
    const double r2 = r * r;
    double sum = 0.0;
    for (const auto& t : terms_) {
        double v = t.coeff;
        for (int i = 0; i < t.k; ++i) {
            v *= r2;
        }
        sum += v * std::exp(-t.b * r2);
    }
    return sum;
}

PolyGaussRadial& PolyGaussRadial::operator+=(const PolyGaussRadial& o) {
    for (const auto& t : o.terms_) {
        add_term(t);
    }
    return *this;
}

PolyGaussRadial PolyGaussRadial::scaled(double s) const {
    PolyGaussRadial out;
    for (auto t : terms_) {
        t.coeff *= s;
        out.add_term(t);
    }
    return out;
}

PolyGaussRadial operator*(const PolyGaussRadial& a, const PolyGaussRadial& b) {
    PolyGaussRadial out;
    for (const auto& ta : a.terms_) {
        for (const auto& tb : b.terms_) {
            out.add_term({ta.coeff * tb.coeff, ta.k + tb.k, ta.b + tb.b});
        }
    }
    return out;
}

double PolyGaussRadial::radial_moment(double q) const {
    double sum = 0.0;
    for (const auto& t : terms_) {
        const double p = 2.0 * t.k + q;
        if (!(p > -1.0)) {
            throw InvalidInput("radial_moment: divergent at r = 0");
        }
        const double s = 0.5 * (p + 1.0);
        sum += t.coeff * std::tgamma(s) / (2.0 * std::pow(t.b, s));
    }
    return sum;
}

int PolyGaussRadial::lowest_power() const {
    if (terms_.empty()) {
        return -1;
    }
    int k = terms_.front().k;
    for (const auto& t : terms_) {
        k = std::min(k, t.k);
    }
    return 2 * k;
}

Envelope PolyGaussRadial::envelope() const {
    Envelope env{0.0, 0.0, 0.0};
    if (terms_.empty()) {
        env.width = 1.0;
        return env;
    }
    env.width = terms_.front().b;
    for (const auto& t : terms_) {
        env.amplitude += std::abs(t.coeff);
        env.power = std::max(env.power, 2.0 * t.k);
        env.width = std::min(env.width, t.b);
    }
    return env;
}

std::string PolyGaussRadial::to_string() const {
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream os;
    os.precision(10);
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const auto& t = terms_[i];
        if (i > 0) {
            os << " + ";
        }
        os << t.coeff;
        if (t.k > 0) {
            os << " r^" << 2 * t.k;
        }
        os << " exp(-" << t.b << " r^2)";
    }
    return os.str();
}

double sphere_monomial_integral(std::span<const int> powers) {
    double num = 2.0;
    double total = 0.0;
    for (int p : powers) {
        if (p % 2 != 0) {
            return 0.0;
        }
        num *= std::tgamma(0.5 * (p + 1));
        total += p;
    }
    return num / std::tgamma(0.5 * (total + static_cast<double>(powers.size())));
}

PolyGaussFourier fourier_profile(const DataPrimitive& prim, int n) {
    validate(prim, n);
    const double a = width(prim);
    const double amp = std::pow(kPi / a, 0.5 * n);
    PolyGaussFourier f;
    f.b = 1.0 / (4.0 * a);
    std::visit(Overloaded{
                   [&](const Gaussian&) {
                       f.monomials.push_back({Complex{amp, 0.0}, std::vector<int>(n, 0)});
                   },
                   [&](const Dipole& d) {
                       std::vector<int> p(n, 0);
                       p[d.axis - 1] = 1;
                       f.monomials.push_back({Complex{0.0, amp}, p});
                   },
                   [&](const TensorDipole&) {
                       std::vector<int> p(n, 0);
                       p[0] = 1;
                       p[1] = 1;
                       f.monomials.push_back({Complex{-amp, 0.0}, p});
                   },
                   [&](const LapGaussian&) {
                       for (int k = 0; k < n; ++k) {
                           std::vector<int> p(n, 0);
                           p[k] = 2;
                           f.monomials.push_back({Complex{-amp, 0.0}, p});
                       }
                   },
               },
               prim);
    return f;
}

std::vector<PolyGaussFourier> fourier_profiles(const DataCombo& d, int n) {
    std::vector<PolyGaussFourier> out;
    out.reserve(d.terms.size());
    for (const auto& t : d.terms) {
        PolyGaussFourier f = fourier_profile(t.prim, n);
        for (auto& m : f.monomials) {
            m.coeff *= t.coeff;
        }
        out.push_back(std::move(f));
    }
    return out;
}

Complex evaluate_fourier(std::span<const PolyGaussFourier> profile, std::span<const double> xi) {
    Complex sum{0.0, 0.0};
    for (const auto& f : profile) {
        sum += f.evaluate(xi);
    }
    return sum;
}

PolyGaussRadial angular_cross(const PolyGaussFourier& fa, const PolyGaussFourier& fb, int n) {
    std::vector<RadialTerm> terms;
    std::vector<int> gamma(n);
    for (const auto& ma : fa.monomials) {
        for (const auto& mb : fb.monomials) {
            if (static_cast<int>(ma.powers.size()) != n ||
                static_cast<int>(mb.powers.size()) != n) {
                throw InvalidInput("angular_cross: profiles built for a different dimension");
            }
            int degree = 0;
            for (int k = 0; k < n; ++k) {
                gamma[k] = ma.powers[k] + mb.powers[k];
                degree += gamma[k];
            }
            const double avg = sphere_monomial_integral(gamma);
            if (avg == 0.0) {
                continue;
            }
            const double c = (ma.coeff * std::conj(mb.coeff)).real() * avg;
            terms.push_back({c, degree / 2, fa.b + fb.b});
        }
    }
    return PolyGaussRadial(std::move(terms));
}

PolyGaussRadial angular_cross(std::span<const PolyGaussFourier> fa,
                              std::span<const PolyGaussFourier> fb, int n) {
    PolyGaussRadial out;
    for (const auto& a : fa) {
        for (const auto& b : fb) {
            out += angular_cross(a, b, n);
        }
    }
    return out;
}

SpectralProfiles spectral_profiles(const Problem& p) {
    const auto w0 = fourier_profiles(p.u0, p.n);
    const auto w1 = fourier_profiles(p.u1, p.n);
    SpectralProfiles s;
    s.S0 = angular_cross(w0, w0, p.n);
    s.S1 = angular_cross(w1, w1, p.n);
    s.X = angular_cross(w1, w0, p.n);
    s.n = p.n;
    s.sigma = p.sigma;
    return s;
}

double sup_fourier_bound(const DataCombo& d, int n) { return l1_norm(d, n); }

} // namespace drl
