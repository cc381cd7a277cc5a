#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "nlpi/errors.hpp"

namespace nlpi {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Complex function on [0, 2pi] sampled at the closed uniform grid
/// x_j = 2pi*j/n, j = 0..n. No periodicity is assumed; the extra endpoint
/// sample carries f(2pi), which boundary conditions couple to f(0).
struct GridFunction {
    int n = 0;                // number of intervals
    std::vector<cplx> v;      // n+1 samples

    GridFunction() = default;
    explicit GridFunction(int intervals) : n(intervals), v(intervals + 1, cplx(0.0)) {}

    double h() const { return kTwoPi / n; }
    double x(int j) const { return kTwoPi * j / n; }
    int points() const { return n + 1; }

    cplx at0() const { return v.front(); }
    cplx at2pi() const { return v.back(); }

    static GridFunction sample(int intervals, const std::function<cplx(double)>& f);
    static GridFunction constant(int intervals, cplx value);
};

void require_same_grid(const GridFunction& f, const GridFunction& g);

GridFunction operator+(const GridFunction& f, const GridFunction& g);
GridFunction operator-(const GridFunction& f, const GridFunction& g);
GridFunction operator*(const GridFunction& f, const GridFunction& g); // pointwise
GridFunction operator*(cplx a, const GridFunction& f);
GridFunction conjugate(const GridFunction& f);

/// Plain closed trapezoid rule. Spectrally accurate when the integrand is
/// smooth and 2pi-periodic, second order otherwise.
cplx integrate_trapezoid(const GridFunction& f);

/// Tenth-order quadrature (piecewise degree-9 interpolation); use for
/// smooth non-periodic integrands.
cplx integrate(const GridFunction& f);

/// Cumulative integral F with F(0) = 0, F' = f, tenth order.
GridFunction antiderivative(const GridFunction& f);

/// Tenth-order finite-difference derivative (one-sided stencils at the ends).
GridFunction derivative(const GridFunction& f);

/// <f, g> = int conj(f) g dx by the trapezoid rule; antilinear in f.
cplx inner_product(const GridFunction& f, const GridFunction& g);

double l2_norm(const GridFunction& f);

/// psi_m(x) = (2pi)^{-1/2} e^{-imx} sampled on the closed grid.
GridFunction psi(int intervals, int mode);

} // namespace nlpi
