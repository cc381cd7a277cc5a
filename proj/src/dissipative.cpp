#include "nlpi/dissipative.hpp"

#include <cmath>

namespace nlpi {

namespace {

const cplx kI(0.0, 1.0);

void require_hypothesis(const GridFunction& V) {
    for (int j = 0; j <= V.n; ++j)
        if (V.v[j].imag() < -1e-12)
            throw HypothesisViolationError(
                "V_I(x) = " + std::to_string(V.v[j].imag()) +
                " < 0 at grid point " + std::to_string(j));
}

} // namespace

DissipativityReport check_dissipative(const ProblemSpec& spec, double tol_range) {
    require_hypothesis(spec.V);
    DissipativityReport rep;
    rep.range_ok = true;
    GridFunction w(spec.V.n);
    for (int j = 0; j <= w.n; ++j) {
        const double vi = spec.V.v[j].imag();
        const double ka = std::abs(spec.k.v[j]);
        if (vi >= tol_range) {
            w.v[j] = ka * ka / vi;
        } else if (ka >= tol_range) {
            rep.range_ok = false;
            rep.bad_points.push_back(j);
        }
    }
    rep.margin = 1.0 - std::norm(spec.rho) - 0.5 * integrate(w).real();
    rep.admissible = rep.range_ok && rep.margin >= -1e-10;
    return rep;
}

RealEigenConstruction construct_real_eigen(const GridFunction& V, double lambda) {
    require_hypothesis(V);
    const GridFunction C = antiderivative(conjugate(V));
    const cplx C2pi = C.at2pi();
    RealEigenConstruction out;
    out.g = GridFunction(V.n);
    out.k = GridFunction(V.n);
    for (int j = 0; j <= V.n; ++j) {
        const double x = out.g.x(j);
        out.g.v[j] = -2.0 * kI *
                     std::exp(-kI * (C2pi - C.v[j]) + kI * lambda * (kTwoPi - x));
        out.k.v[j] = V.v[j].imag() * out.g.v[j];
    }
    out.rho = 0.5 * kI * out.g.at0();
    return out;
}

RealEigenCensus real_eigen_census(const Spectrum& spectrum, double tol) {
    RealEigenCensus census;
    for (const LocatedZero& z : spectrum.eigenvalues) {
        const double cut = tol > 0.0 ? tol : 1e-6 * (1.0 + std::abs(z.lambda));
        if (std::abs(z.lambda.imag()) < cut) {
            census.count += z.multiplicity;
            census.witnesses.push_back(z.lambda);
        }
    }
    if (census.count >= 2)
        throw CensusAlarmError("real_eigen_census: " + std::to_string(census.count) +
                               " real eigenvalues found; at most one is possible "
                               "(numerics bug indicator)");
    return census;
}

} // namespace nlpi
