#pragma once

#include "nlpi/charfn.hpp"
#include "nlpi/localization.hpp"

namespace nlpi {

/// Eigenfunction + adjoint eigenfunction bundle for a simple eigenvalue.
struct EigenPair {
    cplx lambda{0.0};
    GridFunction phi;      // eigenfunction, (2pi)^{-1/2} prefactor kept
    GridFunction phi_adj;  // adjoint eigenfunction at conj(lambda)
    cplx normalization{0.0};  // <phi_adj, phi>
};

/// Adjoint root space basis {x^j e^{-i conj(lambda) x}}, j < multiplicity.
struct RootChain {
    cplx lambda{0.0};
    std::vector<GridFunction> functions;
};

/// phi_lambda(x) = (2pi)^{-1/2} e^{i int_0^x V - i lambda x}
///                 (i int_0^x I_{V,lambda} k dt + rho).
GridFunction eigenfunction(const ProblemSpec& spec, cplx lambda);

/// Solution of i f' + conj(V) f = conj(lambda) f, normalized like psi_n.
GridFunction adjoint_eigenfunction(const ProblemSpec& spec, cplx lambda);

EigenPair make_eigenpair(const ProblemSpec& spec, cplx lambda);

/// Eigenpairs for every simple eigenvalue of an assembled spectrum.
std::vector<EigenPair> eigenpairs_for_spectrum(const ProblemSpec& spec,
                                               const Spectrum& spectrum);

RootChain adjoint_root_chain(cplx lambda, int mult, int intervals = 1024);

/// Primal root chain: functions[0] is the eigenfunction, functions[j] solves
/// (A - lambda) u_j = u_{j-1} with <phi, u_j> = 0. Experimental for mult > 1.
RootChain primal_root_chain(const ProblemSpec& spec, cplx lambda, int mult);

/// (A_{rho,k} - lambda)^{-1} g by cumulative quadrature.
GridFunction apply_resolvent(const ProblemSpec& spec, cplx lambda,
                             const GridFunction& g);

/// Hilbert-Schmidt norm of the resolvent kernel (2-D trapezoid).
double hs_norm(const ProblemSpec& spec, cplx lambda);

struct Expansion {
    std::vector<cplx> coeffs;
    double reconstruction_error = 0.0;
};

/// c_n = <phi_adj_n, f> / <phi_adj_n, phi_n> plus reconstruction residual.
Expansion biorthogonal_coeffs(const Spectrum& spectrum,
                              const std::vector<EigenPair>& pairs,
                              const GridFunction& f);

/// Pair eigenvalues to integer slots: certified disks outside the rectangle,
/// nearest integer (ties toward smaller |Im|) inside.
std::map<int, cplx> pair_to_integers(const Spectrum& spectrum, int n_terms);

/// Partial sums S_J = sum_{|n| <= J} ||psi_n - phi_{lambda_n}||^2, J = 1..N.
std::vector<double> quadratic_closeness(const ReducedProblem& red,
                                        const Spectrum& spectrum, int n_terms);

} // namespace nlpi
