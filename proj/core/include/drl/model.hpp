#pragma once

#include <string>
#include <variant>
#include <vector>


namespace drl {

// Data primitives. Every primitive is a derivative of the Gaussian
// e^{-a|x|^2}; `a` is the physical-space width and must be positive.

/// e^{-a|x|^2}
struct Gaussian {
    double a = 0.5;
};

/// d/dx_axis e^{-a|x|^2}, axis is 1-based.
struct Dipole {
    double a = 0.5;
    int axis = 1;
};

/// d^2/(dx_1 dx_2) e^{-a|x|^2}, only defined for n = 2.
struct TensorDipole {
    double a = 0.5;
};

/// Laplacian of e^{-a|x|^2}.
struct LapGaussian {
    double a = 0.5;
};

using DataPrimitive = std::variant<Gaussian, Dipole, TensorDipole, LapGaussian>;

double width(const DataPrimitive& p);
std::string kind_name(const DataPrimitive& p);

struct DataTerm {
    double coeff = 1.0;
    DataPrimitive prim;
};

/// Finite linear combination of primitives. An empty term list is the zero
/// function.
struct DataCombo {
    std::vector<DataTerm> terms;

    bool empty() const { return terms.empty(); }
};

/// Cauchy problem u_tt + (-Delta)^sigma u = 0, u(0) = u0, u_t(0) = u1 on R^n.
struct Problem {
    int n = 1;
    double sigma = 2.0;
    DataCombo u0;
    DataCombo u1;
};

/// Zeroth and first moments of a data combo plus the small-frequency order
/// they predict for its Fourier transform.
struct Moments {
    double P = 0.0;
    std::vector<double> P1;
    int kappa = 0;
};

/// Checks a primitive against dimension n; throws InvalidInput.
void validate(const DataPrimitive& p, int n);

/// Validates every term for dimension n and returns the combo.
DataCombo build_data(std::vector<DataTerm> terms, int n);

/// Validates n, sigma and both data combos.
Problem make_problem(int n, double sigma, DataCombo u0, DataCombo u1);

/// Closed-form P, P1 and the vanishing order kappa. Primitives with
/// structurally vanishing moments contribute exact zeros.
Moments moments(const DataCombo& d, int n);

/// ||d||_{1,gamma} = int (1 + |x|^gamma) |d(x)| dx by nested adaptive
/// quadrature (angular, then radial). gamma = 0 gives 2 ||d||_{L^1}.
double l1_weighted_norm(const DataCombo& d, double gamma, int n, double rel_tol = 1e-11);

/// L^1 norm, i.e. l1_weighted_norm(d, 0, n) / 2.
double l1_norm(const DataCombo& d, int n);

/// Exact L^2 norm from Gaussian moment identities in physical space.
double l2_norm_data(const DataCombo& d, int n);

/// Point evaluation d(x), x.size() == n.
double evaluate(const DataCombo& d, const std::vector<double>& x);

/// Surface area of the unit sphere S^{n-1}.
double sphere_area(int n);

} // namespace drl
