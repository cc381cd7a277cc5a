#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "nlpi/semigroup.hpp"

using namespace nlpi;

namespace {

constexpr int N = 1024;
constexpr int M = 64;
const cplx I(0.0, 1.0);

struct Assembled {
    ProblemSpec spec;
    Spectrum spectrum;
    std::vector<EigenPair> pairs;
};

Assembled assemble(ProblemSpec spec, double b, int window) {
    ReducedProblem red = reduce(spec);
    Spectrum s = map_spectrum(assemble_spectrum(red, b, window), red.eta);
    std::vector<EigenPair> pairs = eigenpairs_for_spectrum(spec, s);
    return {std::move(spec), std::move(s), std::move(pairs)};
}

Assembled diag_case(int window = 16) {
    return assemble(ProblemSpec(GridFunction::constant(N, I), 1.0,
                                GridFunction::constant(N, 0.0)),
                    1.0, window);
}

Assembled constructed_case(int window = 32) {
    GridFunction V = GridFunction::constant(N, I);
    RealEigenConstruction con = construct_real_eigen(V, 0.0);
    return assemble(ProblemSpec(V, con.rho, con.k), 1.0, window);
}

double max_diff(const GridFunction& f, const GridFunction& g) {
    double m = 0.0;
    for (int j = 0; j <= f.n; ++j) m = std::max(m, std::abs(f.v[j] - g.v[j]));
    return m;
}

} // namespace

TEST_CASE("evolve on the free problem is diagonal") {
    Assembled a = assemble(free_spec(), 1.0, 8);
    for (int n : {0, 2, -3}) {
        GridFunction got = evolve(a.spec, a.spectrum, a.pairs, psi(N, n), 0.7);
        GridFunction want = std::exp(I * double(n) * 0.7) * psi(N, n);
        CHECK(max_diff(got, want) < 1e-9);
    }
    CHECK_THROWS_AS(evolve(a.spec, a.spectrum, a.pairs, psi(N, 0), -1.0),
                    ParameterError);
    // far outside the window the expansion cannot represent f
    CHECK_THROWS_AS(evolve(a.spec, a.spectrum, a.pairs, psi(N, 20), 1.0),
                    TruncationError);
}

TEST_CASE("evolve with spectrum Z + i decays like e^{-t}") {
    Assembled a = diag_case();
    GridFunction got = evolve(a.spec, a.spectrum, a.pairs, psi(N, 0), 1.0);
    CHECK(std::abs(l2_norm(got) - std::exp(-1.0)) < 1e-6);
    CHECK(max_diff(got, std::exp(I * I) * psi(N, 0)) < 1e-6);
}

TEST_CASE("evolve keeps the real eigenfunction fixed") {
    Assembled a = constructed_case();
    GridFunction g0 = eigenfunction(a.spec, real_eigen_census(a.spectrum).witnesses[0]);
    GridFunction got = evolve(a.spec, a.spectrum, a.pairs, g0, 2.0);
    CHECK(max_diff(got, g0) / l2_norm(g0) < 1e-6);
}

TEST_CASE("semigroup property and contraction") {
    Assembled a = constructed_case();
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    GridFunction f(N);
    for (size_t i = 0; i < a.pairs.size(); i += 3)
        f = f + cplx(u(rng), u(rng)) * a.pairs[i].phi;
    const double fn = l2_norm(f);
    for (auto [s, t] : {std::pair{0.3, 0.9}, {1.1, 0.4}}) {
        GridFunction one = evolve(a.spec, a.spectrum, a.pairs, f, s + t);
        GridFunction two = evolve(a.spec, a.spectrum, a.pairs,
                                  evolve(a.spec, a.spectrum, a.pairs, f, s), t);
        // re-expanding the intermediate state costs a few quadrature-level
        // cross terms per coefficient, so allow more than single-pass error
        CHECK(l2_norm(one - two) < 1e-4 * fn);
        CHECK(l2_norm(one) <= fn * (1.0 + 1e-8));
    }
}

TEST_CASE("Jordan-block evolution at a double eigenvalue") {
    const double sc = 1.0 / std::sqrt(kTwoPi);
    std::vector<cplx> coeff(2 * M + 1, cplx(0.0));
    coeff[M] = 2.25 / sc;
    coeff[M + 1] = -0.25 / sc;
    PeriodicFunction K = PeriodicFunction::from_coeffs(N, M, std::move(coeff));
    Assembled a = assemble(
        ProblemSpec(GridFunction::constant(N, 0.0), 1.0, K.grid()), 1.0, 8);

    int mult2 = 0;
    for (const LocatedZero& z : a.spectrum.eigenvalues)
        if (z.multiplicity == 2) ++mult2;
    REQUIRE(mult2 == 1);

    RootChain chain = primal_root_chain(a.spec, 1.5, 2);
    const GridFunction& phi = chain.functions[0];
    const GridFunction& u = chain.functions[1];
    const double t = 0.8;
    GridFunction got = evolve(a.spec, a.spectrum, a.pairs, u, t);
    GridFunction want = std::exp(1.5 * I * t) * (u + (I * t) * phi);
    CHECK(l2_norm(got - want) / l2_norm(u) < 1e-5);

    GridFunction gphi = evolve(a.spec, a.spectrum, a.pairs, phi, t);
    CHECK(l2_norm(gphi - std::exp(1.5 * I * t) * phi) / l2_norm(phi) < 1e-6);

    // bookkeeping survives composition through the Jordan block
    GridFunction two = evolve(a.spec, a.spectrum, a.pairs,
                              evolve(a.spec, a.spectrum, a.pairs, u, 0.5), 0.3);
    CHECK(l2_norm(two - want) / l2_norm(u) < 1e-5);
}

TEST_CASE("norm_decay in the decay-to-zero regime") {
    Assembled a = diag_case();
    std::vector<double> times = {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0};
    // frame width must stay inside the assembled eigenvalue window
    SemigroupTrace tr = norm_decay(a.spec, a.spectrum, a.pairs, times, 12);
    CHECK(tr.regime == Regime::decay_to_zero);
    CHECK(tr.zeta == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(tr.norms[0] - 1.0) < 0.05);
    CHECK(tr.fitted_rate > -1.1);
    CHECK(tr.fitted_rate < -0.9);
    for (size_t i = 1; i < tr.norms.size(); ++i)
        CHECK(tr.norms[i] <= tr.norms[i - 1] + 1e-8);
}

TEST_CASE("norm_decay in the projection regime") {
    Assembled a = constructed_case(40);
    std::vector<double> times = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    SemigroupTrace tr = norm_decay(a.spec, a.spectrum, a.pairs, times);
    CHECK(tr.regime == Regime::converges_to_projection);
    CHECK(tr.zeta == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(std::abs(tr.raw_norms[0] - 1.0) < 0.05);
    // uncorrected norm settles at the projection norm 1
    CHECK(std::abs(tr.raw_norms.back() - 1.0) < 0.05);
    // corrected norm decays at least at the fitted-bound rate
    CHECK(tr.fitted_rate <= -tr.zeta * 0.85);
    CHECK(tr.norms.back() < 1e-5);
}

TEST_CASE("spectral_gap") {
    Assembled d = diag_case(8);
    CHECK(spectral_gap(d.spectrum) == doctest::Approx(1.0).epsilon(1e-9));

    GridFunction V2 = GridFunction::constant(N, I);
    ProblemSpec spec2(V2, std::exp(-kTwoPi), GridFunction::constant(N, 0.0));
    ReducedProblem red2 = reduce(spec2);
    Spectrum s2 = map_spectrum(assemble_spectrum(red2, 1.0, 8), red2.eta);
    CHECK(spectral_gap(s2) == doctest::Approx(2.0).epsilon(1e-9));

    Spectrum mixed;
    mixed.eigenvalues.push_back({cplx(0.3), 1, 0.0, Rectangle(-1, 1, -1, 1),
                                 Provenance::rectangle_subdivision});
    mixed.eigenvalues.push_back({cplx(1.0, 0.4), 1, 0.0, Rectangle(-1, 2, -1, 1),
                                 Provenance::rectangle_subdivision});
    mixed.eigenvalues.push_back({cplx(2.0, 0.9), 1, 0.0, Rectangle(-1, 3, -1, 1),
                                 Provenance::rectangle_subdivision});
    CHECK(spectral_gap(mixed) == doctest::Approx(0.4));

    Spectrum allreal;
    allreal.eigenvalues.push_back({cplx(0.3), 1, 0.0, Rectangle(-1, 1, -1, 1),
                                   Provenance::rectangle_subdivision});
    CHECK_THROWS_AS(spectral_gap(allreal), CensusAlarmError);
}
