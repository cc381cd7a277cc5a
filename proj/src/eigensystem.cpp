#include "nlpi/eigensystem.hpp"

#include <algorithm>
#include <cmath>

namespace nlpi {

namespace {

const double kInvSqrt2Pi = 1.0 / std::sqrt(kTwoPi);
const cplx kI(0.0, 1.0);

// I_{V,lambda}(x) = exp(-i int_0^x V dt + i lambda x)
GridFunction integrating_factor(const ProblemSpec& spec, cplx lambda) {
    GridFunction I(spec.V.n);
    for (int j = 0; j <= I.n; ++j)
        I.v[j] = std::exp(kI * (lambda * I.x(j) - spec.int_V.v[j]));
    return I;
}

} // namespace

GridFunction eigenfunction(const ProblemSpec& spec, cplx lambda) {
    const double res = std::abs(char_residual(spec, lambda));
    if (res >= 1e-6)
        throw NotAnEigenvalueError("eigenfunction: eigenvalue-equation residual " +
                                   std::to_string(res) + " at the given lambda");
    const GridFunction I = integrating_factor(spec, lambda);
    const GridFunction J = antiderivative(I * spec.k);
    GridFunction out(I.n);
    for (int j = 0; j <= out.n; ++j)
        out.v[j] = kInvSqrt2Pi / I.v[j] * (kI * J.v[j] + spec.rho);
    return out;
}

GridFunction adjoint_eigenfunction(const ProblemSpec& spec, cplx lambda) {
    GridFunction out(spec.V.n);
    for (int j = 0; j <= out.n; ++j)
        out.v[j] = kInvSqrt2Pi * std::exp(kI * (std::conj(spec.int_V.v[j]) -
                                                std::conj(lambda) * out.x(j)));
    return out;
}

EigenPair make_eigenpair(const ProblemSpec& spec, cplx lambda) {
    EigenPair p;
    p.lambda = lambda;
    p.phi = eigenfunction(spec, lambda);
    p.phi_adj = adjoint_eigenfunction(spec, lambda);
    p.normalization = inner_product(p.phi_adj, p.phi);
    return p;
}

std::vector<EigenPair> eigenpairs_for_spectrum(const ProblemSpec& spec,
                                               const Spectrum& spectrum) {
    std::vector<EigenPair> out;
    for (const LocatedZero& z : spectrum.eigenvalues)
        if (z.multiplicity == 1) out.push_back(make_eigenpair(spec, z.lambda));
    return out;
}

RootChain adjoint_root_chain(cplx lambda, int mult, int intervals) {
    if (mult < 1) throw ParameterError("adjoint_root_chain: multiplicity must be >= 1");
    RootChain chain;
    chain.lambda = lambda;
    for (int j = 0; j < mult; ++j)
        chain.functions.push_back(GridFunction::sample(intervals, [&](double x) {
            return std::pow(x, j) * std::exp(-kI * std::conj(lambda) * x);
        }));
    return chain;
}

RootChain primal_root_chain(const ProblemSpec& spec, cplx lambda, int mult) {
    if (mult < 1) throw ParameterError("primal_root_chain: multiplicity must be >= 1");
    RootChain chain;
    chain.lambda = lambda;
    chain.functions.push_back(eigenfunction(spec, lambda));
    const GridFunction& phi = chain.functions.front();
    const GridFunction I = integrating_factor(spec, lambda);
    const double phi_sq = l2_norm(phi) * l2_norm(phi);
    for (int j = 1; j < mult; ++j) {
        const GridFunction& prev = chain.functions.back();
        const GridFunction J = antiderivative(I * prev);
        // solvability of (A - lambda) u = prev requires int I*prev = 0
        if (std::abs(J.at2pi()) > 1e-6 * (1.0 + l2_norm(prev)))
            throw NumericsAlarmError(
                "primal_root_chain: solvability defect " +
                std::to_string(std::abs(J.at2pi())) + " at chain index " +
                std::to_string(j));
        GridFunction w(I.n);
        for (int q = 0; q <= w.n; ++q) w.v[q] = kI * J.v[q] / I.v[q];
        const cplx tau = inner_product(phi, w) / (std::sqrt(kTwoPi) * phi_sq);
        GridFunction u = (tau * std::sqrt(kTwoPi)) * phi - w;
        chain.functions.push_back(std::move(u));
    }
    return chain;
}

GridFunction apply_resolvent(const ProblemSpec& spec, cplx lambda,
                             const GridFunction& g) {
    const double dist = std::abs(char_residual(spec, lambda));
    if (dist <= 1e-6)
        throw NearSingularError("apply_resolvent: lambda within " +
                                    std::to_string(dist) + " of the spectrum",
                                dist);
    require_same_grid(spec.V, g);
    const GridFunction I = integrating_factor(spec, lambda);
    const GridFunction Jk = antiderivative(I * spec.k);
    const GridFunction Jg = antiderivative(I * g);
    const cplx D = I.at2pi() - kI * Jk.at2pi() - spec.rho;
    const cplx boundary = Jg.at2pi() / D;
    GridFunction out(I.n);
    for (int j = 0; j <= out.n; ++j)
        out.v[j] = -kI / I.v[j] *
                   (boundary * (kI * Jk.v[j] + spec.rho) + Jg.v[j]);
    return out;
}

double hs_norm(const ProblemSpec& spec, cplx lambda) {
    const double dist = std::abs(char_residual(spec, lambda));
    if (dist <= 1e-6)
        throw NearSingularError("hs_norm: lambda within " + std::to_string(dist) +
                                    " of the spectrum",
                                dist);
    const GridFunction I = integrating_factor(spec, lambda);
    const GridFunction Jk = antiderivative(I * spec.k);
    const cplx D = I.at2pi() - kI * Jk.at2pi() - spec.rho;
    const int n = I.n;
    const double h = I.h();
    // kernel G(x,t) = -i I(t)/I(x) [u(x) + 1_{t<=x}], u = (i Jk + rho)/D;
    // the indicator is averaged on the diagonal (jump midpoint)
    std::vector<double> w(n + 1, h), isq(n + 1);
    w.front() = w.back() = 0.5 * h;
    for (int j = 0; j <= n; ++j) isq[j] = std::norm(I.v[j]);
    double total = 0.0;
    for (int j = 0; j <= n; ++j) total += w[j] * isq[j];
    double sum = 0.0, prefix = 0.0;
    for (int j = 0; j <= n; ++j) {
        const cplx u = (kI * Jk.v[j] + spec.rho) / D;
        const double diag = w[j] * isq[j];
        const double inner = std::norm(u + 1.0) * prefix +
                             std::norm(u + 0.5) * diag +
                             std::norm(u) * (total - prefix - diag);
        sum += w[j] / isq[j] * inner;
        prefix += diag;
    }
    return std::sqrt(sum);
}

Expansion biorthogonal_coeffs(const Spectrum& spectrum,
                              const std::vector<EigenPair>& pairs,
                              const GridFunction& f) {
    for (const EigenPair& p : pairs)
        for (const LocatedZero& z : spectrum.eigenvalues)
            if (std::abs(z.lambda - p.lambda) < 1e-6 && z.multiplicity > 1)
                throw ParameterError(
                    "biorthogonal_coeffs: eigenvalue with multiplicity > 1 in pairs");
    Expansion e;
    GridFunction r = f;
    for (const EigenPair& p : pairs) {
        if (std::abs(p.normalization) < 1e-10)
            throw DegenerateNormalizationError(
                "biorthogonal_coeffs: |<phi_adj, phi>| < 1e-10 (multiplicity > 1 "
                "or numerics failure suspected)");
        const cplx c = inner_product(p.phi_adj, f) / p.normalization;
        e.coeffs.push_back(c);
        r = r - c * p.phi;
    }
    e.reconstruction_error = l2_norm(r);
    return e;
}

std::map<int, cplx> pair_to_integers(const Spectrum& spectrum, int n_terms) {
    if (spectrum.window < n_terms)
        throw CoverageError("pair_to_integers: spectrum window " +
                            std::to_string(spectrum.window) + " < requested " +
                            std::to_string(n_terms));
    std::map<int, cplx> slots;
    std::vector<cplx> rect;
    for (const LocatedZero& z : spectrum.eigenvalues) {
        if (z.provenance == Provenance::disk_certified)
            slots[int(std::lround(z.lambda.real()))] = z.lambda;
        else
            for (int q = 0; q < z.multiplicity; ++q) rect.push_back(z.lambda);
    }
    // inside the rectangle the zeros can drift far from the lattice; match
    // them to the slots -N..N monotonically in Re, ties toward smaller |Im|
    const int N = spectrum.tail_threshold;
    if (int(rect.size()) != 2 * N + 1)
        throw CoverageError("pair_to_integers: rectangle census " +
                            std::to_string(rect.size()) + " does not fill slots |n| <= " +
                            std::to_string(N));
    std::sort(rect.begin(), rect.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return std::abs(a.imag()) < std::abs(b.imag());
    });
    for (int n = -N; n <= N; ++n) slots[n] = rect[n + N];
    for (int n = -n_terms; n <= n_terms; ++n)
        if (!slots.count(n))
            throw CoverageError("pair_to_integers: no eigenvalue paired to n = " +
                                std::to_string(n));
    return slots;
}

std::vector<double> quadratic_closeness(const ReducedProblem& red,
                                        const Spectrum& spectrum, int n_terms) {
    const std::map<int, cplx> slots = pair_to_integers(spectrum, n_terms);
    const GridFunction k = red.K.grid();
    const ProblemSpec spec(GridFunction::constant(k.n, 0.0), 1.0, k);
    auto term = [&](int n) {
        const GridFunction d = psi(k.n, n) - eigenfunction(spec, slots.at(n));
        const double nr = l2_norm(d);
        return nr * nr;
    };
    std::vector<double> sums(n_terms);
    double s = term(0);
    for (int J = 1; J <= n_terms; ++J) {
        s += term(-J) + term(J);
        sums[J - 1] = s;
    }
    return sums;
}

} // namespace nlpi
