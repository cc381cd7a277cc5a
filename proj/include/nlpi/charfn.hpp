#pragma once

#include "nlpi/problem.hpp"

namespace nlpi {

/// Similarity data: A_{rho,k} is similar to P_{1,K} + eta with
/// eta = (2pi)^{-1} (int_0^{2pi} V dt - i ln rho),   ln rho branch arg in [0, 2pi),
/// W(x) = exp(-i int_0^x V dt + i eta x),   K = W k / W(2pi).
struct ReducedProblem {
    cplx eta = 0.0;
    GridFunction W;
    PeriodicFunction K;       // band-limited reduction of W k / W(2pi)
    GridFunction K_fine;      // K resampled on the oversampled quadrature grid
    double trunc_residual = 0.0;  // L2 distance between raw K and its truncation

    int trunc() const { return K.trunc; }
    /// a_m = <psi_{-m}, K>
    cplx a(int m) const { return K.c(-m); }
};

ReducedProblem reduce(const ProblemSpec& spec);

/// Wrap a given K directly as P_{1,K} (eta = 0, W = 1).
ReducedProblem reduce_from_K(const PeriodicFunction& K, int fine_n = 8192);

/// Characteristic function Phi(lambda) = 1 - e^{2pi i lambda}
/// + i int_0^{2pi} e^{i lambda t} K(t) dt, evaluated in closed form over the
/// coefficient sequence: Phi = f(lambda) [1 - (2pi)^{-1/2} sum_m a_m/(lambda+m)]
/// with f(lambda) = 1 - e^{2pi i lambda}; stable removable-singularity formula
/// near integers.
cplx phi_eval(const ReducedProblem& red, cplx lambda);

/// Same Phi by direct oscillatory quadrature on the oversampled grid.
cplx phi_eval_quadrature(const ReducedProblem& red, cplx lambda);

/// Scaled representation value = mantissa * e^{log_scale}; guards against
/// overflow of e^{2pi i lambda} deep in the lower half-plane.
struct ScaledValue {
    cplx mantissa{0.0};
    double log_scale = 0.0;
    cplx value() const { return mantissa * std::exp(log_scale); }
    double log_abs() const;
};

ScaledValue phi_eval_scaled(const ReducedProblem& red, cplx lambda);

/// Phi^{(order)}(lambda), 1 <= order <= 6, by quadrature.
cplx phi_derivative(const ReducedProblem& red, cplx lambda, int order);

/// Bound on |Phi_true - Phi_truncated| caused by band-limiting K.
double phi_trunc_error(const ReducedProblem& red, cplx lambda);

/// Eigenvalue-equation residual for A_{rho,k} itself (works for rho = 0):
/// e^{i int_0^{2pi}(V - lambda) dt} (i int_0^{2pi} I_{V,lambda} k dt + rho) - 1
/// with I_{V,lambda}(t) = exp(-i int_0^t V ds + i lambda t).
cplx char_residual(const ProblemSpec& spec, cplx lambda);

} // namespace nlpi
