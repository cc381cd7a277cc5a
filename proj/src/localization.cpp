#include "nlpi/localization.hpp"

#include <algorithm>
#include <cmath>

namespace nlpi {

namespace {

const double kRatioScale = 1.0 / std::sqrt(kTwoPi);

// Rouche ratio |Phi/f - 1| at z: (2pi)^{-1/2} |sum_m a_m/(z + m)|.
double boundary_ratio(const CoeffSequence& a, cplx z) {
    return kRatioScale * std::abs(hilbert_row(a, z, 0));
}

double abs_sum(const CoeffSequence& a) {
    double s = 0.0;
    for (const cplx& v : a.a) s += std::abs(v);
    return s;
}

// Certificate that the disk around integer n holds exactly one simple zero
// (Rouche against f = 1 - e^{2pi i lambda}, then a winding confirmation).
bool disk_certified(const ReducedProblem& red, const CoeffSequence& a, int n,
                    double sum_abs) {
    const double r = disk_radius(red, n);
    if (r >= 0.5) return false;

    // cheap rigorous bound far outside the coefficient support
    const double gap = std::abs(n) - a.support - 0.5;
    if (gap > 0.0 && kRatioScale * sum_abs / gap < 1.0) return true;

    // radii below the coefficient-quadrature noise floor get the full
    // half-integer circle: a circle of noise-scale radius puts the ratio
    // samples within rounding distance of the pole at -n
    const bool vanishing = r < 1e-9;
    const double check_r = vanishing ? 0.5 : r;
    for (int q = 0; q < 64; ++q) {
        const double th = kTwoPi * q / 64.0;
        const cplx z = double(n) + check_r * cplx(std::cos(th), std::sin(th));
        if (boundary_ratio(a, z) >= 1.0) return false;
    }
    const double h = vanishing ? 0.5 - 1e-6 : std::max(r, 1e-3);
    try {
        return winding_count(red, Rectangle(n - h, n + h, -h, h)) == 1;
    } catch (const Error&) {
        return false;
    }
}

bool horizontal_edges_ok(const CoeffSequence& a, const Rectangle& rect) {
    const int samples = 160;
    for (int q = 0; q <= samples; ++q) {
        const double x = rect.re_min + rect.width() * q / samples;
        if (boundary_ratio(a, cplx(x, rect.im_max)) >= 1.0) return false;
        if (boundary_ratio(a, cplx(x, rect.im_min)) >= 1.0) return false;
    }
    return true;
}

} // namespace

CoeffSequence CoeffSequence::from(const ReducedProblem& red) {
    CoeffSequence s;
    s.support = red.trunc();
    s.a.resize(2 * s.support + 1);
    for (int m = -s.support; m <= s.support; ++m) s.a[m + s.support] = red.a(m);
    return s;
}

double disk_radius(const ReducedProblem& red, int n) { return std::abs(red.K.c(n)); }

cplx hilbert_row(const CoeffSequence& a, cplx eta, int n) {
    cplx sum = 0.0;
    for (int m = -a.support; m <= a.support; ++m) {
        const cplx denom = double(m) + double(n) + eta;
        if (std::abs(denom) < 1e-12)
            throw SingularityError("hilbert_row: vanishing denominator at m = " +
                                   std::to_string(m));
        sum += a.at(m) / denom;
    }
    return sum;
}

int tail_threshold(const ReducedProblem& red, int n_max) {
    const CoeffSequence a = CoeffSequence::from(red);
    const double sum_abs = abs_sum(a);
    int largest_fail = 0;
    for (int n = 1; n <= n_max; ++n)
        if (!disk_certified(red, a, n, sum_abs) || !disk_certified(red, a, -n, sum_abs))
            largest_fail = n;
    if (largest_fail == n_max)
        throw ThresholdNotFoundError(
            "tail_threshold: certificate still failing at n_max = " +
            std::to_string(n_max) + "; increase the truncation or n_max");
    return largest_fail;
}

Spectrum assemble_spectrum(const ReducedProblem& red, double b, int window) {
    const int N = tail_threshold(red);
    if (window < N) window = N;
    const CoeffSequence a = CoeffSequence::from(red);
    const int expect = 2 * N + 1;

    Spectrum out;
    out.tail_threshold = N;
    out.window = window;

    double cur_b = b;
    bool settled = false;
    for (int attempt = 0; attempt < 8 && !settled; ++attempt) {
        Rectangle rect(-(N + 0.5), N + 0.5, -cur_b, cur_b);
        int count = -1;
        try {
            count = winding_count(red, rect);
        } catch (const Error&) {
            count = -1;
        }
        // the census is the decisive test; the sampled edge bound is a
        // conservative precheck and may fail for admissible b
        if (count == expect) {
            out.eigenvalues = isolate_zeros(red, rect, 1e-10);
            out.rectangle = rect;
            out.b = cur_b;
            settled = true;
        } else {
            if (count >= 0 && horizontal_edges_ok(a, rect))
                throw AssemblyError(
                    "assemble_spectrum: census " + std::to_string(count) +
                    " != " + std::to_string(expect) +
                    " despite passing edge bounds (numerics bug)");
            cur_b *= 1.5;
        }
    }
    if (!settled)
        throw AssemblyError("assemble_spectrum: no admissible rectangle height found");

    for (int n = -window; n <= window; ++n) {
        if (std::abs(n) <= N) continue;
        const double r = disk_radius(red, n);
        out.disks[n] = r;
        LocatedZero z;
        z.multiplicity = 1;
        z.provenance = Provenance::disk_certified;
        const double h = std::max(r, 1e-9);
        z.enclosure = Rectangle(n - h, n + h, -h, h);
        if (r < 1e-12) {
            z.lambda = double(n);  // vanishing coefficient: lambda = n exactly
        } else {
            z.lambda = refine_zero(red, double(n), 1, 1e-10);
            if (std::abs(z.lambda - double(n)) > r + 1e-9)
                throw AssemblyError("assemble_spectrum: refined zero left its disk at n = " +
                                    std::to_string(n));
        }
        z.residual = std::abs(phi_eval(red, z.lambda));
        out.eigenvalues.push_back(z);
    }

    std::sort(out.eigenvalues.begin(), out.eigenvalues.end(),
              [](const LocatedZero& p, const LocatedZero& q) {
                  if (p.lambda.real() != q.lambda.real())
                      return p.lambda.real() < q.lambda.real();
                  return p.lambda.imag() < q.lambda.imag();
              });
    return out;
}

Spectrum map_spectrum(const Spectrum& spec, cplx eta) {
    if (spec.eta_shift)
        throw StateError("map_spectrum: spectrum already shifted");
    Spectrum out = spec;
    for (auto& z : out.eigenvalues) {
        z.lambda += eta;
        z.enclosure = Rectangle(z.enclosure.re_min + eta.real(),
                                z.enclosure.re_max + eta.real(),
                                z.enclosure.im_min + eta.imag(),
                                z.enclosure.im_max + eta.imag());
    }
    out.rectangle = Rectangle(spec.rectangle.re_min + eta.real(),
                              spec.rectangle.re_max + eta.real(),
                              spec.rectangle.im_min + eta.imag(),
                              spec.rectangle.im_max + eta.imag());
    out.eta_shift = eta;
    return out;
}

} // namespace nlpi
