#include "nlpi/charfn.hpp"

#include <cmath>

namespace nlpi {

namespace {

const cplx kI(0.0, 1.0);

// exp(z) - 1 without cancellation for small z.
cplx expm1c(cplx z) {
    if (std::abs(z) > 0.5) return std::exp(z) - 1.0;
    cplx term = z, sum = z;
    for (int p = 2; p <= 16; ++p) {
        term *= z / double(p);
        sum += term;
    }
    return sum;
}

// sum_m a_m / (lambda + m), optionally skipping m = skip.
cplx coeff_sum(const ReducedProblem& red, cplx lambda, long skip, bool do_skip) {
    const int M = red.trunc();
    cplx s = 0.0;
    for (int m = -M; m <= M; ++m) {
        if (do_skip && m == skip) continue;
        s += red.a(m) / (lambda + double(m));
    }
    return s;
}

} // namespace

ReducedProblem reduce(const ProblemSpec& spec) {
    if (spec.rho == 0.0)
        throw UnsupportedReductionError(
            "rho = 0 admits no similarity reduction; use char_residual directly");
    const cplx total_V = spec.int_V.at2pi();
    double phase = std::arg(spec.rho);
    if (phase < 0.0) phase += kTwoPi;  // branch of ln rho: arg in [0, 2pi)
    const cplx ln_rho(std::log(std::abs(spec.rho)), phase);
    const cplx eta = (total_V - kI * ln_rho) / kTwoPi;

    GridFunction W(spec.V.n);
    for (int j = 0; j <= spec.V.n; ++j)
        W.v[j] = std::exp(-kI * spec.int_V.v[j] + kI * eta * W.x(j));
    const cplx w2pi = W.at2pi();  // equals rho by construction

    GridFunction k_raw(spec.V.n);
    for (int j = 0; j <= spec.V.n; ++j) k_raw.v[j] = W.v[j] * spec.k.v[j] / w2pi;

    ReducedProblem red;
    red.eta = eta;
    red.W = std::move(W);
    red.K = PeriodicFunction::band_limit(k_raw, spec.ctrl.trunc);
    red.trunc_residual = truncation_residual(k_raw, red.K);
    red.K_fine = red.K.resample(spec.ctrl.fine_n);
    return red;
}

ReducedProblem reduce_from_K(const PeriodicFunction& K, int fine_n) {
    ReducedProblem red;
    red.eta = 0.0;
    red.W = GridFunction::constant(K.n, 1.0);
    red.K = K;
    red.trunc_residual = 0.0;
    red.K_fine = K.resample(fine_n);
    return red;
}

cplx phi_eval(const ReducedProblem& red, cplx lambda) {
    const double c = 1.0 / std::sqrt(kTwoPi);
    const long n = std::llround(lambda.real());
    const cplx w = lambda - double(n);
    if (std::abs(w) >= 1e-3) {
        cplx f = 1.0 - std::exp(kTwoPi * kI * lambda);
        return f * (1.0 - c * coeff_sum(red, lambda, 0, false));
    }
    // Near the integer n: e^{2pi i lambda} = e^{2pi i w}, and the m = -n term
    // carries the removable singularity f(lambda)/(lambda - n) = -e/w.
    const cplx e = expm1c(kTwoPi * kI * w);
    const cplx f = -e;
    const cplx f_over_w = (w == 0.0) ? cplx(0.0, -kTwoPi) : -e / w;
    const cplx rest = coeff_sum(red, lambda, -n, true);
    return f * (1.0 - c * rest) - c * red.a(int(-n)) * f_over_w;
}

cplx phi_eval_quadrature(const ReducedProblem& red, cplx lambda) {
    GridFunction g(red.K_fine.n);
    for (int j = 0; j <= g.n; ++j) {
        const double t = g.x(j);
        g.v[j] = std::exp(kI * lambda * t) * red.K_fine.v[j];
    }
    return 1.0 - std::exp(kTwoPi * kI * lambda) + kI * integrate(g);
}

double ScaledValue::log_abs() const {
    return std::log(std::abs(mantissa)) + log_scale;
}

ScaledValue phi_eval_scaled(const ReducedProblem& red, cplx lambda) {
    const double y = lambda.imag();
    if (y > -30.0) return {phi_eval(red, lambda), 0.0};
    // Factor out e^{-2pi y}: the exponential dominates and the coefficient sum
    // is O(1) this far from the real axis.
    const double s = -kTwoPi * y;
    const cplx phase = std::exp(kI * kTwoPi * lambda.real());
    const cplx f_scaled = std::exp(-s) - phase;
    const double c = 1.0 / std::sqrt(kTwoPi);
    return {f_scaled * (1.0 - c * coeff_sum(red, lambda, 0, false)), s};
}

cplx phi_derivative(const ReducedProblem& red, cplx lambda, int order) {
    if (order < 1 || order > 6)
        throw ParameterError("phi_derivative: order must be between 1 and 6");
    GridFunction g(red.K_fine.n);
    for (int j = 0; j <= g.n; ++j) {
        const double t = g.x(j);
        cplx pw = 1.0;
        for (int q = 0; q < order; ++q) pw *= kI * t;
        g.v[j] = pw * std::exp(kI * lambda * t) * red.K_fine.v[j];
    }
    cplx lead = 1.0;
    for (int q = 0; q < order; ++q) lead *= kTwoPi * kI;
    return -lead * std::exp(kTwoPi * kI * lambda) + kI * integrate(g);
}

double phi_trunc_error(const ReducedProblem& red, cplx lambda) {
    const double amp = std::exp(std::max(0.0, -kTwoPi * lambda.imag()));
    return amp * std::sqrt(kTwoPi) * red.trunc_residual;
}

cplx char_residual(const ProblemSpec& spec, cplx lambda) {
    GridFunction g(spec.V.n);
    for (int j = 0; j <= g.n; ++j) {
        const double t = g.x(j);
        // I_{V,lambda}(t) = exp(-i int_0^t V + i lambda t)
        g.v[j] = std::exp(-kI * spec.int_V.v[j] + kI * lambda * t) * spec.k.v[j];
    }
    const cplx J = integrate(g);
    const cplx lhs =
        std::exp(kI * (spec.int_V.at2pi() - kTwoPi * lambda)) * (kI * J + spec.rho);
    return lhs - 1.0;
}

} // namespace nlpi
