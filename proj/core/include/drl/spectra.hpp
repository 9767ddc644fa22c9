#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "drl/model.hpp"

namespace drl {

using Complex = std::complex<double>;

/// Upper envelope |f(r)| <= amplitude * max(1, r)^power * e^{-width r^2}.
struct Envelope {
    double amplitude = 0.0;
    double power = 0.0;
    double width = 1.0;

    /// Smallest r beyond which the envelope stays below `level`.
    double cutoff(double level) const;
};

struct FourierMonomial {
    Complex coeff;
    std::vector<int> powers;
};

/// f^(xi) = sum_alpha c_alpha xi^alpha e^{-b |xi|^2}, with the transform
/// convention f^(xi) = int e^{-i x.xi} f(x) dx.
struct PolyGaussFourier {
    std::vector<FourierMonomial> monomials;
    double b = 1.0;

    Complex evaluate(std::span<const double> xi) const;
    int degree() const;
};

struct RadialTerm {
    double coeff = 0.0;
    int k = 0;      // power of r^2
    double b = 1.0; // Gaussian width
};

/// sum_m c_m r^{2 k_m} e^{-b_m r^2}. Terms with equal (k, b) are merged.
class PolyGaussRadial {
public:
    PolyGaussRadial() = default;
    explicit PolyGaussRadial(std::vector<RadialTerm> terms);

    const std::vector<RadialTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    double operator()(double r) const;

    PolyGaussRadial& operator+=(const PolyGaussRadial& o);
    PolyGaussRadial scaled(double s) const;
    friend PolyGaussRadial operator+(PolyGaussRadial a, const PolyGaussRadial& b) { return a += b; }
    friend PolyGaussRadial operator*(const PolyGaussRadial& a, const PolyGaussRadial& b);

    /// int_0^inf f(r) r^q dr for real q; requires 2k + q > -1 on every term.
    double radial_moment(double q) const;

    /// Lowest r-power present (2k), or -1 when zero.
    int lowest_power() const;

    Envelope envelope() const;
    std::string to_string() const;

private:
    void add_term(const RadialTerm& t);
    std::vector<RadialTerm> terms_;
};

/// Angular-integrated spectral densities of a problem:
///   S0 = int_S |w0|^2, S1 = int_S |w1|^2, X = int_S Re(w1 conj w0).
struct SpectralProfiles {
    PolyGaussRadial S0;
    PolyGaussRadial S1;
    PolyGaussRadial X;
    int n = 1;
    double sigma = 2.0;
};

/// int_{S^{n-1}} w^alpha dw; zero unless every exponent is even.
double sphere_monomial_integral(std::span<const int> powers);

PolyGaussFourier fourier_profile(const DataPrimitive& p, int n);

/// One profile per term, each scaled by its coefficient.
std::vector<PolyGaussFourier> fourier_profiles(const DataCombo& d, int n);

Complex evaluate_fourier(std::span<const PolyGaussFourier> profile, std::span<const double> xi);

/// int_{S^{n-1}} Re[fA(r w) conj(fB(r w))] dw as a radial profile.
PolyGaussRadial angular_cross(const PolyGaussFourier& fa, const PolyGaussFourier& fb, int n);

/// Linear expansion of angular_cross over all term pairs.
PolyGaussRadial angular_cross(std::span<const PolyGaussFourier> fa,
                              std::span<const PolyGaussFourier> fb, int n);

SpectralProfiles spectral_profiles(const Problem& p);

/// sup |d^| <= ||d||_{L^1}.
double sup_fourier_bound(const DataCombo& d, int n);

} // namespace drl
