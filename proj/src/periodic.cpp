#include "nlpi/periodic.hpp"

#include <cmath>

namespace nlpi {

namespace {

std::vector<cplx> synthesize(int intervals, int trunc, const std::vector<cplx>& coeff) {
    std::vector<cplx> s(intervals + 1, cplx(0.0));
    const double amp = 1.0 / std::sqrt(kTwoPi);
    for (int m = -trunc; m <= trunc; ++m) {
        const cplx cm = coeff[m + trunc];
        if (cm == cplx(0.0)) continue;
        for (int j = 0; j <= intervals; ++j) {
            const double x = kTwoPi * j / intervals;
            s[j] += cm * amp * std::exp(cplx(0.0, -double(m) * x));
        }
    }
    return s;
}

} // namespace

GridFunction PeriodicFunction::grid() const {
    GridFunction g(n);
    g.v = samples;
    return g;
}

GridFunction PeriodicFunction::resample(int intervals) const {
    GridFunction g(intervals);
    g.v = synthesize(intervals, trunc, coeff);
    return g;
}

PeriodicFunction PeriodicFunction::from_coeffs(int intervals, int trunc,
                                               std::vector<cplx> coeff) {
    if ((int)coeff.size() != 2 * trunc + 1)
        throw DimensionError("coefficient vector size must be 2M+1");
    if (intervals < 4 * trunc + 4)
        throw ParameterError("grid must satisfy n >= 4M+4");
    PeriodicFunction f;
    f.trunc = trunc;
    f.n = intervals;
    f.coeff = std::move(coeff);
    f.samples = synthesize(intervals, trunc, f.coeff);
    return f;
}

PeriodicFunction PeriodicFunction::band_limit(const GridFunction& f, int trunc) {
    std::vector<cplx> coeff(2 * trunc + 1);
    for (int m = -trunc; m <= trunc; ++m) coeff[m + trunc] = fourier_coeff(f, m);
    return from_coeffs(f.n, trunc, std::move(coeff));
}

PeriodicFunction PeriodicFunction::zero(int intervals, int trunc) {
    return from_coeffs(intervals, trunc, std::vector<cplx>(2 * trunc + 1, cplx(0.0)));
}

PeriodicFunction PeriodicFunction::constant(int intervals, int trunc, cplx value) {
    std::vector<cplx> coeff(2 * trunc + 1, cplx(0.0));
    coeff[trunc] = value * std::sqrt(kTwoPi); // <psi_0, value> = value*sqrt(2pi)
    return from_coeffs(intervals, trunc, std::move(coeff));
}

cplx fourier_coeff(const PeriodicFunction& f, int mode) {
    // Trapezoid on the closed grid; half-weights at the matching endpoints
    // make this the N-point periodic rule.
    const double amp = 1.0 / std::sqrt(kTwoPi);
    cplx s = 0.0;
    for (int j = 0; j < f.n; ++j) {
        const double x = kTwoPi * j / f.n;
        const cplx w = (j == 0) ? 0.5 * (f.samples[0] + f.samples[f.n]) : f.samples[j];
        s += std::exp(cplx(0.0, double(mode) * x)) * w;
    }
    return s * (kTwoPi / f.n) * amp;
}

cplx fourier_coeff(const GridFunction& f, int mode) {
    const double amp = 1.0 / std::sqrt(kTwoPi);
    GridFunction g(f.n);
    for (int j = 0; j <= f.n; ++j)
        g.v[j] = std::exp(cplx(0.0, double(mode) * f.x(j))) * f.v[j];
    return amp * integrate(g);
}

double truncation_residual(const GridFunction& f, const PeriodicFunction& truncated) {
    require_same_grid(f, truncated.grid());
    return l2_norm(f - truncated.grid());
}

} // namespace nlpi
