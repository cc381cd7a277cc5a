#include "nlpi/gridfn.hpp"

#include <array>
#include <cmath>

namespace nlpi {

namespace {

// Solve a small dense system in place, partial pivoting.
void solve_dense(std::vector<double>& a, std::vector<double>& b, int n) {
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        if (piv != col) {
            for (int c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
            std::swap(b[col], b[piv]);
        }
        double d = a[col * n + col];
        for (int r = col + 1; r < n; ++r) {
            double m = a[r * n + col] / d;
            for (int c = col; c < n; ++c) a[r * n + c] -= m * a[col * n + c];
            b[r] -= m * b[col];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < n; ++c) s -= a[r * n + c] * b[c];
        b[r] = s / a[r * n + r];
    }
}

// Weights integrating the degree-(P-1) interpolant through nodes u = 0..P-1
// over [d, d+1], for each stencil offset d = 0..P-2. Lagrange basis
// polynomials are expanded and integrated exactly.
constexpr int kQuadOrder = 10;

struct QuadWeights {
    std::array<std::array<double, kQuadOrder>, kQuadOrder - 1> w{};
    QuadWeights() {
        constexpr int P = kQuadOrder;
        std::array<std::array<long double, P>, P - 1> acc{};
        for (int r = 0; r < P; ++r) {
            // numerator coefficients of prod_{s != r} (u - s)
            std::array<long double, P + 1> poly{};
            poly[0] = 1.0L;
            int deg = 0;
            long double denom = 1.0L;
            for (int s = 0; s < P; ++s) {
                if (s == r) continue;
                denom *= (r - s);
                for (int q = deg + 1; q >= 1; --q) poly[q] = poly[q - 1] - s * poly[q];
                poly[0] *= -(long double)s;
                ++deg;
            }
            for (int d = 0; d + 1 < P; ++d) {
                long double integral = 0.0L;
                long double lo = d, hi = d + 1.0L;
                long double plo = lo, phi = hi;
                for (int q = 0; q <= deg; ++q) {
                    integral += poly[q] * (phi - plo) / (q + 1);
                    plo *= lo;
                    phi *= hi;
                }
                acc[d][r] = integral / denom;
            }
        }
        // Each row integrates the constant 1 over a unit interval; renormalize
        // so the rounded weights keep that sum exact.
        for (int d = 0; d + 1 < P; ++d) {
            long double sum = 0.0L;
            for (int r = 0; r < P; ++r) sum += acc[d][r];
            for (int r = 0; r < P; ++r) w[d][r] = double(acc[d][r] / sum);
            long double resid = -1.0L;
            for (int r = 0; r < P; ++r) resid += (long double)w[d][r];
            w[d][d] -= double(resid);
        }
    }
};

const QuadWeights& quad_weights() {
    static const QuadWeights w;
    return w;
}

// Derivative weights for an 11-point stencil at nodes u = 0..10, evaluated
// at node position c (unit spacing).
struct Diff11Weights {
    std::array<std::array<double, 11>, 11> w{};
    Diff11Weights() {
        for (int c = 0; c <= 10; ++c) {
            std::vector<double> a(121), b(11, 0.0);
            double fact = 1.0;
            for (int q = 0; q < 11; ++q) {
                if (q > 0) fact *= q;
                for (int r = 0; r < 11; ++r) a[q * 11 + r] = std::pow(r - double(c), q) / fact;
                b[q] = (q == 1) ? 1.0 : 0.0;
            }
            solve_dense(a, b, 11);
            for (int r = 0; r < 11; ++r) w[c][r] = b[r];
        }
    }
};

const Diff11Weights& diff11() {
    static const Diff11Weights w;
    return w;
}

} // namespace

GridFunction GridFunction::sample(int intervals, const std::function<cplx(double)>& f) {
    GridFunction g(intervals);
    for (int j = 0; j <= intervals; ++j) g.v[j] = f(g.x(j));
    return g;
}

GridFunction GridFunction::constant(int intervals, cplx value) {
    GridFunction g(intervals);
    for (auto& s : g.v) s = value;
    return g;
}

void require_same_grid(const GridFunction& f, const GridFunction& g) {
    if (f.n != g.n)
        throw DimensionError("grid size mismatch: " + std::to_string(f.n) + " vs " +
                             std::to_string(g.n));
}

GridFunction operator+(const GridFunction& f, const GridFunction& g) {
    require_same_grid(f, g);
    GridFunction r(f.n);
    for (int j = 0; j <= f.n; ++j) r.v[j] = f.v[j] + g.v[j];
    return r;
}

GridFunction operator-(const GridFunction& f, const GridFunction& g) {
    require_same_grid(f, g);
    GridFunction r(f.n);
    for (int j = 0; j <= f.n; ++j) r.v[j] = f.v[j] - g.v[j];
    return r;
}

GridFunction operator*(const GridFunction& f, const GridFunction& g) {
    require_same_grid(f, g);
    GridFunction r(f.n);
    for (int j = 0; j <= f.n; ++j) r.v[j] = f.v[j] * g.v[j];
    return r;
}

GridFunction operator*(cplx a, const GridFunction& f) {
    GridFunction r(f.n);
    for (int j = 0; j <= f.n; ++j) r.v[j] = a * f.v[j];
    return r;
}

GridFunction conjugate(const GridFunction& f) {
    GridFunction r(f.n);
    for (int j = 0; j <= f.n; ++j) r.v[j] = std::conj(f.v[j]);
    return r;
}

cplx integrate_trapezoid(const GridFunction& f) {
    cplx s = 0.5 * (f.v.front() + f.v.back());
    for (int j = 1; j < f.n; ++j) s += f.v[j];
    return s * f.h();
}

namespace {

// Integral of the interpolant over the single interval [x_j, x_{j+1}],
// divided by h.
cplx interval_weight_sum(const GridFunction& f, int j) {
    constexpr int P = kQuadOrder;
    const auto& W = quad_weights();
    int s = j - (P / 2 - 1);
    if (s < 0) s = 0;
    if (s > f.n - (P - 1)) s = f.n - (P - 1);
    const int d = j - s;
    cplx acc = 0.0;
    for (int r = 0; r < P; ++r) acc += W.w[d][r] * f.v[s + r];
    return acc;
}

} // namespace

GridFunction antiderivative(const GridFunction& f) {
    if (f.n < kQuadOrder) throw ParameterError("antiderivative: grid too coarse");
    GridFunction F(f.n);
    F.v[0] = 0.0;
    const double h = f.h();
    for (int j = 0; j < f.n; ++j) F.v[j + 1] = F.v[j] + h * interval_weight_sum(f, j);
    return F;
}

cplx integrate(const GridFunction& f) {
    if (f.n < kQuadOrder) throw ParameterError("integrate: grid too coarse");
    cplx total = 0.0;
    for (int j = 0; j < f.n; ++j) total += interval_weight_sum(f, j);
    return total * f.h();
}

GridFunction derivative(const GridFunction& f) {
    if (f.n < 11) throw ParameterError("derivative needs at least 11 intervals");
    const auto& W = diff11();
    GridFunction g(f.n);
    const double inv_h = 1.0 / f.h();
    for (int j = 0; j <= f.n; ++j) {
        int s = j - 5;
        if (s < 0) s = 0;
        if (s > f.n - 10) s = f.n - 10;
        int c = j - s;
        cplx acc = 0.0;
        for (int r = 0; r < 11; ++r) acc += W.w[c][r] * f.v[s + r];
        g.v[j] = acc * inv_h;
    }
    return g;
}

cplx inner_product(const GridFunction& f, const GridFunction& g) {
    require_same_grid(f, g);
    cplx s = 0.5 * (std::conj(f.v.front()) * g.v.front() + std::conj(f.v.back()) * g.v.back());
    for (int j = 1; j < f.n; ++j) s += std::conj(f.v[j]) * g.v[j];
    return s * f.h();
}

double l2_norm(const GridFunction& f) {
    double s = 0.5 * (std::norm(f.v.front()) + std::norm(f.v.back()));
    for (int j = 1; j < f.n; ++j) s += std::norm(f.v[j]);
    return std::sqrt(s * f.h());
}

GridFunction psi(int intervals, int mode) {
    const double amp = 1.0 / std::sqrt(kTwoPi);
    return GridFunction::sample(intervals, [=](double x) {
        return amp * std::exp(cplx(0.0, -double(mode) * x));
    });
}

} // namespace nlpi
