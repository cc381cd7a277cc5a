#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "nlpi/charfn.hpp"

using namespace nlpi;

namespace {

constexpr int N = 1024;
constexpr int M = 64;
const cplx I(0.0, 1.0);

PeriodicFunction ktilde_K() {
    GridFunction g = GridFunction::sample(
        N, [](double x) { return cplx(0.5, -0.5) * (x - kPi); });
    return PeriodicFunction::band_limit(g, M);
}

PeriodicFunction random_K(int trunc, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    std::vector<cplx> c(2 * trunc + 1);
    for (auto& cm : c) cm = cplx(u(rng), u(rng));
    return PeriodicFunction::from_coeffs(N, trunc, std::move(c));
}

ProblemSpec const_spec(cplx V0, cplx rho, cplx k0) {
    return ProblemSpec(GridFunction::constant(N, V0), rho,
                       GridFunction::constant(N, k0));
}

} // namespace

TEST_CASE("reduce: eta, W and K on closed-form cases") {
    // V = 0, rho = 1, k = 0
    ReducedProblem r0 = reduce(const_spec(0.0, 1.0, 0.0));
    CHECK(std::abs(r0.eta) < 1e-13);
    for (int j = 0; j <= N; j += 131) CHECK(std::abs(r0.W.v[j] - 1.0) < 1e-13);
    CHECK(l2_norm(r0.K.grid()) < 1e-13);

    // V = i, rho = 1, k = 0: eta = i, W = 1
    ReducedProblem r1 = reduce(const_spec(I, 1.0, 0.0));
    CHECK(std::abs(r1.eta - I) < 1e-13);
    for (int j = 0; j <= N; j += 131) CHECK(std::abs(r1.W.v[j] - 1.0) < 1e-12);

    // V = 0, rho = e^{-2pi}: eta = i
    ReducedProblem r2 = reduce(const_spec(0.0, std::exp(-kTwoPi), 0.0));
    CHECK(std::abs(r2.eta - I) < 1e-13);

    // V = i, rho = e^{-2pi}: eta = 2i, W(x) = e^{-x}
    ReducedProblem r3 = reduce(const_spec(I, std::exp(-kTwoPi), 0.0));
    CHECK(std::abs(r3.eta - 2.0 * I) < 1e-12);
    for (int j = 0; j <= N; j += 131)
        CHECK(std::abs(r3.W.v[j] - std::exp(-r3.W.x(j))) < 1e-10);
}

TEST_CASE("reduce rejects rho = 0") {
    CHECK_THROWS_AS(reduce(const_spec(0.0, 0.0, 0.0)), UnsupportedReductionError);
}

TEST_CASE("phi for K = 0") {
    ReducedProblem r = reduce_from_K(PeriodicFunction::zero(N, M));
    CHECK(std::abs(phi_eval(r, 0.5) - 2.0) < 1e-14);
    CHECK(std::abs(phi_eval(r, 5.0)) < 1e-14);
    CHECK(std::abs(phi_eval(r, -3.0)) < 1e-14);
    CHECK(std::abs(phi_eval_quadrature(r, 0.5) - 2.0) < 1e-12);
}

TEST_CASE("phi for constant K matches the factorization oracle") {
    // K = c gives Phi(lambda) = (1 - e^{2pi i lambda})(1 - c/lambda).
    const cplx c(0.3, 0.0);
    ReducedProblem r = reduce_from_K(PeriodicFunction::constant(N, M, c));
    auto oracle = [&](cplx lam) {
        return (1.0 - std::exp(kTwoPi * I * lam)) * (1.0 - c / lam);
    };
    for (cplx lam : {cplx(0.45, 0.0), cplx(-2.3, 0.7), cplx(1.0 + 1e-4, 0.0),
                     cplx(0.17, -0.4), cplx(3.0 + 1e-7, 1e-7)}) {
        CHECK(std::abs(phi_eval(r, lam) - oracle(lam)) < 1e-11);
        CHECK(std::abs(phi_eval_quadrature(r, lam) - oracle(lam)) < 1e-9);
    }
    // exact integer: zero of the first factor
    CHECK(std::abs(phi_eval(r, 2.0)) < 1e-13);
    // the residue identity picks out the only nonzero coefficient at n = 0
    CHECK(std::abs(phi_eval(r, 0.0) - I * std::sqrt(kTwoPi) * c * std::sqrt(kTwoPi)) <
          1e-12);
    // zero of the second factor
    CHECK(std::abs(phi_eval(r, c)) < 1e-13);
}

TEST_CASE("integer identity: Phi(n) = i sqrt(2pi) <psi_n, K>") {
    for (const PeriodicFunction& K : {ktilde_K(), PeriodicFunction::constant(N, M, 0.3),
                                      random_K(16, 7u)}) {
        ReducedProblem r = reduce_from_K(K);
        double worst_closed = 0.0, worst_quad = 0.0;
        for (int n = -32; n <= 32; ++n) {
            cplx rhs = I * std::sqrt(kTwoPi) * fourier_coeff(K, n);
            worst_closed = std::max(worst_closed, std::abs(phi_eval(r, double(n)) - rhs));
            worst_quad =
                std::max(worst_quad, std::abs(phi_eval_quadrature(r, double(n)) - rhs));
        }
        CHECK(worst_closed < 1e-10);
        CHECK(worst_quad < 1e-9);
    }
}

TEST_CASE("backend agreement over the sample grid") {
    for (const PeriodicFunction& K : {ktilde_K(), random_K(16, 11u)}) {
        ReducedProblem r = reduce_from_K(K);
        double worst = 0.0;
        for (int i = 0; i < 40; ++i) {
            for (int j = 0; j < 40; ++j) {
                cplx lam(-10.5 + 21.0 * i / 39.0, -3.0 + 6.0 * j / 39.0);
                cplx a = phi_eval(r, lam), b = phi_eval_quadrature(r, lam);
                worst = std::max(worst, std::abs(a - b) / (1.0 + std::abs(a)));
            }
        }
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("phi_derivative") {
    ReducedProblem r0 = reduce_from_K(PeriodicFunction::zero(N, M));
    CHECK(std::abs(phi_derivative(r0, 0.0, 1) - cplx(0.0, -kTwoPi)) < 1e-11);
    CHECK(std::abs(phi_derivative(r0, 0.0, 2) - 4.0 * kPi * kPi) < 1e-10);
    CHECK_THROWS_AS(phi_derivative(r0, 0.0, 0), ParameterError);
    CHECK_THROWS_AS(phi_derivative(r0, 0.0, 7), ParameterError);

    // central-difference oracle on Ktilde
    ReducedProblem r = reduce_from_K(ktilde_K());
    for (cplx lam : {cplx(0.0), cplx(0.37, 0.21), cplx(-4.4, -0.6)}) {
        const double h = 1e-5;
        cplx fd = (phi_eval(r, lam + h) - phi_eval(r, lam - h)) / (2.0 * h);
        cplx d = phi_derivative(r, lam, 1);
        CHECK(std::abs(d - fd) < 1e-6 * (1.0 + std::abs(d)));
        cplx fd2 = (phi_eval(r, lam + h) - 2.0 * phi_eval(r, lam) +
                    phi_eval(r, lam - h)) /
                   (h * h);
        CHECK(std::abs(phi_derivative(r, lam, 2) - fd2) < 1e-4 * (1.0 + std::abs(fd2)));
    }
}

TEST_CASE("char_residual") {
    // rho = 0, k = 0: residual identically -1 (empty spectrum)
    ProblemSpec a00 = const_spec(0.0, 0.0, 0.0);
    for (cplx lam : {cplx(0.0), cplx(1.3, -0.4), cplx(-7.0, 2.0)})
        CHECK(std::abs(char_residual(a00, lam) + 1.0) < 1e-12);

    // V = 0, rho = 1, k = 0: zeros at integers
    ProblemSpec p10 = const_spec(0.0, 1.0, 0.0);
    CHECK(std::abs(char_residual(p10, 3.0)) < 1e-12);
    CHECK(std::abs(char_residual(p10, -1.0)) < 1e-12);

    // V = 0, rho = e^{-2pi}: lambda = i is an eigenvalue
    ProblemSpec pe = const_spec(0.0, std::exp(-kTwoPi), 0.0);
    CHECK(std::abs(char_residual(pe, I)) < 1e-12);
}

TEST_CASE("char_residual equals e^{-2pi i lambda} Phi(lambda) when V = 0, rho = 1") {
    GridFunction kt = GridFunction::sample(
        N, [](double x) { return cplx(0.5, -0.5) * (x - kPi); });
    ProblemSpec spec(GridFunction::constant(N, 0.0), 1.0, kt);
    ReducedProblem red = reduce(spec);
    CHECK(std::abs(red.eta) < 1e-13);
    for (cplx lam : {cplx(0.4, 0.3), cplx(-2.7, -0.2), cplx(5.1, 1.0)}) {
        cplx lhs = char_residual(spec, lam);
        cplx rhs = std::exp(-kTwoPi * I * lam) * phi_eval(red, lam);
        // band-limiting K costs ~ the truncation residual
        CHECK(std::abs(lhs - rhs) < 0.1 * (1.0 + std::abs(rhs)));
    }
    // with an exactly band-limited k the identity is sharp
    PeriodicFunction Kr = random_K(16, 3u);
    ProblemSpec spec2(GridFunction::constant(N, 0.0), 1.0, Kr.grid());
    ReducedProblem red2 = reduce(spec2);
    for (cplx lam : {cplx(0.4, 0.3), cplx(-2.7, -0.2), cplx(5.1, 1.0)}) {
        cplx lhs = char_residual(spec2, lam);
        cplx rhs = std::exp(-kTwoPi * I * lam) * phi_eval(red2, lam);
        // char_residual integrates on the ambient grid; ~1e-8 quadrature floor
        CHECK(std::abs(lhs - rhs) < 1e-7 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("scaled evaluation deep in the lower half-plane") {
    ReducedProblem r = reduce_from_K(ktilde_K());
    // where direct evaluation is still representable, both must agree
    cplx lam(0.3, -40.0);
    ScaledValue s = phi_eval_scaled(r, lam);
    cplx direct = phi_eval(r, lam);
    CHECK(std::abs(s.value() - direct) < 1e-8 * std::abs(direct));
    CHECK(s.log_abs() == doctest::Approx(std::log(std::abs(direct))).epsilon(1e-12));
    // deeper: mantissa stays O(1), log grows linearly in |Im lambda|
    ScaledValue d = phi_eval_scaled(r, cplx(0.3, -200.0));
    CHECK(std::abs(d.mantissa) > 0.1);
    CHECK(std::abs(d.mantissa) < 10.0);
    CHECK(d.log_abs() == doctest::Approx(kTwoPi * 200.0).epsilon(1e-3));
}

TEST_CASE("truncation bookkeeping") {
    // Ktilde is genuinely non-band-limited: residual matches the coefficient tail
    GridFunction kt = GridFunction::sample(
        N, [](double x) { return cplx(0.5, -0.5) * (x - kPi); });
    ProblemSpec spec(GridFunction::constant(N, 0.0), 1.0, kt);
    ReducedProblem red = reduce(spec);
    // tail: sum_{|m|>M} |a_m|^2 with |a_m| = sqrt(pi)/|m|
    double tail = 0.0;
    for (int m = M + 1; m <= 2000000; ++m) tail += 2.0 * kPi / (double(m) * m);
    CHECK(red.trunc_residual == doctest::Approx(std::sqrt(tail)).epsilon(0.05));
    CHECK(phi_trunc_error(red, cplx(0.0, 1.0)) ==
          doctest::Approx(std::sqrt(kTwoPi) * red.trunc_residual).epsilon(1e-12));
    CHECK(phi_trunc_error(red, cplx(0.0, -1.0)) >
          std::exp(kTwoPi) * 0.99 * phi_trunc_error(red, cplx(0.0, 1.0)));

    // band-limited input: zero residual
    ReducedProblem rb = reduce_from_K(random_K(16, 5u));
    CHECK(rb.trunc_residual == 0.0);
}
