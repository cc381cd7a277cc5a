#pragma once

#include "nlpi/gridfn.hpp"
#include "nlpi/periodic.hpp"

namespace nlpi {

struct Controls {
    int grid_n = 1024;    // ambient closed-grid intervals
    int trunc = 64;       // Fourier truncation M
    int fine_n = 8192;    // oversampled grid for oscillatory quadrature
    double zero_tol = 1e-10;         // Newton residual target
    double contour_theta = 1e-8;     // boundary safety threshold for winding
    int window = 32;                 // tail window for spectrum assembly
};

/// Operator data for A_{rho,k}: f -> if' + Vf + f(2pi) k with boundary
/// condition f(0) = rho f(2pi).
struct ProblemSpec {
    GridFunction V;
    cplx rho = 1.0;
    GridFunction k;
    Controls ctrl;
    GridFunction int_V;  // cumulative integral of V, cached at construction

    ProblemSpec(GridFunction V_, cplx rho_, GridFunction k_, Controls c = {});

    GridFunction V_imag() const;  // pointwise Im V as a real-valued grid function
};

/// V = 0, rho = 1, k = 0 on the default grid (the operator P_{1,0}).
ProblemSpec free_spec(Controls c = {});

} // namespace nlpi
