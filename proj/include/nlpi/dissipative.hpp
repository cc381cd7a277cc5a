#pragma once

#include "nlpi/localization.hpp"

namespace nlpi {

struct DissipativityReport {
    bool admissible = false;
    double margin = 0.0;  // (1 - |rho|^2) - 1/2 ||V_I^{-1/2} k||^2
    bool range_ok = false;
    std::vector<int> bad_points;  // grid indices with V_I ~ 0 but |k| > tol
};

/// Maximal-dissipativity test: V_I >= 0, k in ran(V_I^{1/2}) (pointwise
/// proxy), and 1 - |rho|^2 >= 1/2 ||V_I^{-1/2} k||^2.
DissipativityReport check_dissipative(const ProblemSpec& spec,
                                      double tol_range = 1e-12);

struct RealEigenConstruction {
    cplx rho{0.0};
    GridFunction k;
    GridFunction g;  // the eigenfunction profile, g(2pi) = -2i
};

/// The unique admissible pair (rho, k) making the real lambda an eigenvalue:
/// g(x) = (2/i) exp(-i int_x^{2pi} conj(V) dt + (2pi - x) i lambda),
/// rho = (i/2) g(0), k = V_I g.
RealEigenConstruction construct_real_eigen(const GridFunction& V, double lambda);

struct RealEigenCensus {
    int count = 0;
    std::vector<cplx> witnesses;
};

/// Count eigenvalues with |Im lambda| < tol; tol <= 0 selects the
/// scale-aware default 1e-6 (1 + |lambda|). Two or more real points
/// contradict the at-most-one law and raise a census alarm.
RealEigenCensus real_eigen_census(const Spectrum& spectrum, double tol = 0.0);

} // namespace nlpi
