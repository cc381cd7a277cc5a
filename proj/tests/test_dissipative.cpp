#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "nlpi/dissipative.hpp"
#include "nlpi/eigensystem.hpp"

using namespace nlpi;

namespace {

constexpr int N = 1024;
const cplx I(0.0, 1.0);

GridFunction const_g(cplx c) { return GridFunction::constant(N, c); }

ProblemSpec constructed_spec(double lambda) {
    GridFunction V = const_g(I);
    RealEigenConstruction con = construct_real_eigen(V, lambda);
    return ProblemSpec(V, con.rho, con.k);
}

Spectrum spectrum_of(const ProblemSpec& spec, double b, int window) {
    ReducedProblem red = reduce(spec);
    return map_spectrum(assemble_spectrum(red, b, window), red.eta);
}

} // namespace

TEST_CASE("check_dissipative margins") {
    DissipativityReport r1 = check_dissipative(ProblemSpec(const_g(I), 1.0, const_g(0.0)));
    CHECK(r1.admissible);
    CHECK(r1.range_ok);
    CHECK(std::abs(r1.margin) < 1e-12);

    DissipativityReport r2 = check_dissipative(ProblemSpec(const_g(I), 1.1, const_g(0.0)));
    CHECK(!r2.admissible);
    CHECK(std::abs(r2.margin + 0.21) < 1e-12);

    // equality case: 1/2 ||k||^2 = 2 int e^{-2(2pi-x)} dx = 1 - e^{-4pi} = 1 - |rho|^2
    GridFunction k = GridFunction::sample(
        N, [](double x) { return -2.0 * I * std::exp(-(kTwoPi - x)); });
    DissipativityReport r3 =
        check_dissipative(ProblemSpec(const_g(I), std::exp(-kTwoPi), k));
    CHECK(r3.admissible);
    CHECK(std::abs(r3.margin) < 1e-9);
}

TEST_CASE("check_dissipative hypothesis and range gates") {
    CHECK_THROWS_AS(check_dissipative(ProblemSpec(const_g(-0.1 * I), 1.0, const_g(0.0))),
                    HypothesisViolationError);

    // V_I = 0 everywhere but k != 0: k is not in ran(V_I^{1/2})
    DissipativityReport r = check_dissipative(ProblemSpec(const_g(0.0), 0.5, const_g(0.3)));
    CHECK(!r.range_ok);
    CHECK(!r.admissible);
    CHECK(!r.bad_points.empty());

    // V_I vanishing at isolated points is fine when k vanishes there too
    GridFunction V = GridFunction::sample(
        N, [](double x) { return I * std::sin(x) * std::sin(x); });
    RealEigenConstruction con = construct_real_eigen(V, 0.0);
    DissipativityReport rs = check_dissipative(ProblemSpec(V, con.rho, con.k));
    CHECK(rs.range_ok);
    CHECK(rs.admissible);
    CHECK(std::abs(rs.margin) < 1e-9);
}

TEST_CASE("construct_real_eigen analytic oracles") {
    GridFunction V = const_g(I);

    RealEigenConstruction c0 = construct_real_eigen(V, 0.0);
    CHECK(std::abs(c0.rho - std::exp(-kTwoPi)) < 1e-10);
    CHECK(std::abs(c0.g.at2pi() + 2.0 * I) < 1e-12);
    double kd = 0.0, gd = 0.0;
    for (int j = 0; j <= N; ++j) {
        const cplx want = -2.0 * I * std::exp(-(kTwoPi - c0.g.x(j)));
        kd = std::max(kd, std::abs(c0.k.v[j] - want));
        gd = std::max(gd, std::abs(c0.g.v[j] - want));
    }
    CHECK(kd < 1e-10);
    CHECK(gd < 1e-10);
    ProblemSpec spec0(V, c0.rho, c0.k);
    CHECK(std::abs(char_residual(spec0, 0.0)) < 1e-7);
    CHECK(std::abs(check_dissipative(spec0).margin) < 1e-9);

    RealEigenConstruction c1 = construct_real_eigen(V, 1.0);
    CHECK(std::abs(c1.rho - std::exp(-kTwoPi)) < 1e-10);
    double gd1 = 0.0;
    for (int j = 0; j <= N; ++j) {
        const double x = c1.g.x(j);
        const cplx want =
            -2.0 * I * std::exp(-(kTwoPi - x)) * std::exp(I * (kTwoPi - x));
        gd1 = std::max(gd1, std::abs(c1.g.v[j] - want));
    }
    CHECK(gd1 < 1e-10);
    CHECK(std::abs(char_residual(ProblemSpec(V, c1.rho, c1.k), 1.0)) < 1e-7);

    GridFunction Vs = GridFunction::sample(
        N, [](double x) { return I * std::sin(x) * std::sin(x); });
    RealEigenConstruction cs = construct_real_eigen(Vs, 0.0);
    CHECK(std::abs(char_residual(ProblemSpec(Vs, cs.rho, cs.k), 0.0)) < 1e-7);
}

TEST_CASE("real_eigen_census") {
    // V = i, rho = 1, k = 0: spectrum Z + i, no real point
    ProblemSpec diag(const_g(I), 1.0, const_g(0.0));
    RealEigenCensus c0 = real_eigen_census(spectrum_of(diag, 1.0, 12));
    CHECK(c0.count == 0);

    // constructed equality-case spec: exactly one real eigenvalue at 0
    ProblemSpec spec = constructed_spec(0.0);
    RealEigenCensus c1 = real_eigen_census(spectrum_of(spec, 1.0, 12));
    CHECK(c1.count == 1);
    REQUIRE(c1.witnesses.size() == 1);
    CHECK(std::abs(c1.witnesses[0]) < 1e-8);

    // shrinking k breaks the equality: no real eigenvalue left
    ProblemSpec damped(spec.V, spec.rho, 0.9 * spec.k);
    CHECK(check_dissipative(damped).admissible);
    CHECK(real_eigen_census(spectrum_of(damped, 1.0, 12), 1e-4).count == 0);

    Spectrum fake;
    fake.eigenvalues.push_back({cplx(0.0), 1, 0.0, Rectangle(-1, 1, -1, 1),
                                Provenance::rectangle_subdivision});
    fake.eigenvalues.push_back({cplx(1.0), 1, 0.0, Rectangle(-1, 2, -1, 1),
                                Provenance::rectangle_subdivision});
    CHECK_THROWS_AS(real_eigen_census(fake), CensusAlarmError);
}

TEST_CASE("uniqueness probe under admissible perturbations") {
    ProblemSpec spec = constructed_spec(0.0);
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(0.001, 0.01);
    for (int trial = 0; trial < 5; ++trial) {
        const double a = u(rng), b = u(rng), theta = u(rng);
        ProblemSpec pert(spec.V, spec.rho * (1.0 - a),
                         (1.0 - b) * std::exp(I * theta) * spec.k);
        REQUIRE(check_dissipative(pert).admissible);
        CHECK(real_eigen_census(spectrum_of(pert, 1.0, 8)).count == 0);
    }
}

TEST_CASE("gate soundness and real-eigenfunction orthogonality") {
    ProblemSpec spec = constructed_spec(0.0);
    Spectrum s = spectrum_of(spec, 1.0, 8);
    for (const LocatedZero& z : s.eigenvalues) CHECK(z.lambda.imag() >= -1e-8);

    GridFunction phi_real = eigenfunction(spec, real_eigen_census(s).witnesses[0]);
    const double nr = l2_norm(phi_real);
    for (const LocatedZero& z : s.eigenvalues) {
        if (std::abs(z.lambda.imag()) < 1e-6) continue;
        GridFunction other = eigenfunction(spec, z.lambda);
        // the product carries a non-periodic e^{2x} weight, so use the
        // high-order rule rather than the periodic trapezoid
        const cplx ip = integrate(conjugate(phi_real) * other);
        CHECK(std::abs(ip) / (nr * l2_norm(other)) < 1e-6);
    }
}
