#pragma once

#include <vector>

#include "nlpi/gridfn.hpp"

namespace nlpi {

/// Band-limited 2pi-periodic function: f = sum_{|m|<=M} c_m psi_m with
/// psi_m(x) = (2pi)^{-1/2} e^{-imx}, held together with its samples on the
/// closed grid. Oversampling n >= 4M+4 keeps analysis/synthesis an identity
/// on represented modes to round-off.
struct PeriodicFunction {
    int trunc = 0;              // M
    int n = 0;                  // grid intervals
    std::vector<cplx> coeff;    // 2M+1 entries, coeff[m + M] = <psi_m, f>
    std::vector<cplx> samples;  // n+1 closed-grid samples

    cplx c(int m) const {
        return (m < -trunc || m > trunc) ? cplx(0.0) : coeff[m + trunc];
    }

    GridFunction grid() const;
    GridFunction resample(int intervals) const;

    static PeriodicFunction from_coeffs(int intervals, int trunc, std::vector<cplx> coeff);
    /// Coefficients of an arbitrary smooth grid function by the
    /// endpoint-corrected rule; truncation to |m| <= trunc.
    static PeriodicFunction band_limit(const GridFunction& f, int trunc);
    static PeriodicFunction zero(int intervals, int trunc);
    static PeriodicFunction constant(int intervals, int trunc, cplx value);
};

/// <psi_mode, f> by the trapezoid rule on the periodic grid.
cplx fourier_coeff(const PeriodicFunction& f, int mode);
/// <psi_mode, f> for general grid data (endpoint-corrected quadrature).
cplx fourier_coeff(const GridFunction& f, int mode);

/// L2 distance between f and its band-limited truncation.
double truncation_residual(const GridFunction& f, const PeriodicFunction& truncated);

} // namespace nlpi
