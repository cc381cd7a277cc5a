#include "nlpi/rootfinder.hpp"

#include <algorithm>
#include <cmath>

namespace nlpi {

namespace {

constexpr int kMultCap = 3;
constexpr double kLeafDiam = 0.1;
constexpr int kMaxDepth = 40;
// deterministic split perturbations, as fractions of the rectangle size
constexpr double kSplitOffsets[6] = {0.0, 7e-4, -1.9e-3, 4.3e-3, -8.9e-3, 1.71e-2};

// internal signal: boundary point with |Phi| <= theta (or unresolvably fast
// argument rotation, i.e. a zero on the contour)
struct TooClose {};

double principal_diff(double from, double to) {
    double d = to - from;
    while (d > kPi) d -= kTwoPi;
    while (d <= -kPi) d += kTwoPi;
    return d;
}

struct EdgeTracker {
    const ReducedProblem& red;
    double log_theta;

    struct Node {
        cplx z;
        double arg;
        double logmag;
    };

    Node eval(cplx z) const {
        ScaledValue v = phi_eval_scaled(red, z);
        const double lm = v.log_abs();
        if (!(lm > log_theta)) throw TooClose{};
        return {z, std::arg(v.mantissa), lm};
    }

    double segment(const Node& a, const Node& b, int depth) const {
        double d = principal_diff(a.arg, b.arg);
        // Resolve until the argument step is small AND the magnitude is
        // nearly constant: a zero of even multiplicity near the edge makes
        // the argument alias a full turn to ~0 while |Phi| dips sharply.
        if (depth >= 1 && std::abs(d) < kPi / 2.0 &&
            std::abs(a.logmag - b.logmag) < 0.7)
            return d;
        if (depth > 50) throw TooClose{};  // zero effectively on the contour
        Node m = eval(0.5 * (a.z + b.z));
        return segment(a, m, depth + 1) + segment(m, b, depth + 1);
    }

    double track(cplx za, cplx zb) const {
        const int seeds = std::max(2, int(std::ceil(8.0 * std::abs(zb - za))));
        double total = 0.0;
        Node prev = eval(za);
        for (int s = 1; s <= seeds; ++s) {
            Node next = eval(za + (zb - za) * (double(s) / seeds));
            total += segment(prev, next, 0);
            prev = next;
        }
        return total;
    }
};

bool multiplicity_consistent(const ReducedProblem& red, cplx lam, int mult) {
    for (int j = 1; j < mult; ++j)
        if (std::abs(phi_derivative(red, lam, j)) >= 1e-6) return false;
    return std::abs(phi_derivative(red, lam, mult)) > 1e-6;
}

void isolate_rec(const ReducedProblem& red, const Rectangle& rect, double tol,
                 int count, int depth, std::vector<LocatedZero>& out) {
    if (count == 0) return;
    if (depth > kMaxDepth)
        throw IsolationError("isolate_zeros: max subdivision depth exceeded");

    if (count <= kMultCap && rect.diameter() < kLeafDiam) {
        // try to read the leaf as a single zero of multiplicity `count`
        try {
            cplx lam = refine_zero(red, rect.center(), count, tol);
            bool good = true;
            if (count > 1) {
                // polish on the simple zero of Phi^(count-1); a cluster of
                // distinct zeros lands on a critical point with |Phi| >= tol
                for (int it = 0; it < 30; ++it) {
                    const cplx g = phi_derivative(red, lam, count - 1);
                    const cplx dg = phi_derivative(red, lam, count);
                    if (std::abs(dg) < 1e-12) break;
                    const cplx step = g / dg;
                    lam -= step;
                    if (std::abs(step) < 1e-13) break;
                }
                good = std::abs(phi_eval(red, lam)) < tol;
            }
            if (good && rect.contains(lam, 0.5 * kLeafDiam) &&
                multiplicity_consistent(red, lam, count)) {
                out.push_back({lam, count, std::abs(phi_eval(red, lam)), rect,
                               Provenance::rectangle_subdivision});
                return;
            }
        } catch (const RefinementError&) {
            // cluster of distinct zeros: fall through and keep splitting
        }
    }

    const double mr = 0.5 * (rect.re_min + rect.re_max);
    const double mi = 0.5 * (rect.im_min + rect.im_max);
    for (double off : kSplitOffsets) {
        const double sr = mr + off * rect.width();
        const double si = mi + off * rect.height();
        Rectangle child[4] = {
            Rectangle(rect.re_min, sr, rect.im_min, si),
            Rectangle(sr, rect.re_max, rect.im_min, si),
            Rectangle(rect.re_min, sr, si, rect.im_max),
            Rectangle(sr, rect.re_max, si, rect.im_max),
        };
        int w[4];
        bool ok = true;
        int sum = 0;
        try {
            for (int i = 0; i < 4; ++i) sum += (w[i] = winding_count(red, child[i]));
        } catch (const ContourError&) {
            ok = false;
        } catch (const PrecisionError&) {
            ok = false;
        }
        if (!ok || sum != count) continue;  // split line hit a zero; perturb
        for (int i = 0; i < 4; ++i) isolate_rec(red, child[i], tol, w[i], depth + 1, out);
        return;
    }
    throw IsolationError("isolate_zeros: no admissible subdivision found");
}

} // namespace

int winding_count(const ReducedProblem& red, const Rectangle& rect, double theta) {
    for (int attempt = 0; attempt <= 5; ++attempt) {
        Rectangle r = attempt == 0 ? rect : rect.dilated(1e-4 * attempt);
        const cplx c00(r.re_min, r.im_min), c10(r.re_max, r.im_min),
            c11(r.re_max, r.im_max), c01(r.re_min, r.im_max);
        try {
            EdgeTracker t{red, std::log(theta)};
            const double total = t.track(c00, c10) + t.track(c10, c11) +
                                 t.track(c11, c01) + t.track(c01, c00);
            const double w = total / kTwoPi;
            const long n = std::lround(w);
            if (std::abs(w - double(n)) > 0.25)
                throw PrecisionError("winding_count: pre-rounding value " +
                                     std::to_string(w) + " not near an integer");
            if (n < 0)
                throw PrecisionError("winding_count: negative count " +
                                     std::to_string(n));
            return int(n);
        } catch (const TooClose&) {
            // dilate and retry
        }
    }
    throw ContourError("winding_count: zero too close to the contour after 5 retries");
}

std::vector<LocatedZero> isolate_zeros(const ReducedProblem& red,
                                       const Rectangle& rect, double tol) {
    const int total = winding_count(red, rect);
    std::vector<LocatedZero> out;
    isolate_rec(red, rect, tol, total, 0, out);
    // deterministic order regardless of subdivision shape
    std::sort(out.begin(), out.end(), [](const LocatedZero& a, const LocatedZero& b) {
        if (a.lambda.real() != b.lambda.real()) return a.lambda.real() < b.lambda.real();
        return a.lambda.imag() < b.lambda.imag();
    });
    return out;
}

namespace {

// guarded Newton attempt; returns true when |Phi| < tol was reached
bool newton_attempt(const ReducedProblem& red, cplx lambda0, int mult, double tol,
                    cplx& out, cplx& best, double& best_res) {
    cplx lam = lambda0;
    cplx f = phi_eval(red, lam);
    double res = std::abs(f);
    if (res < best_res) {
        best = lam;
        best_res = res;
    }
    const double locality = 1.0;  // stay near the seed: refinement, not search
    for (int it = 0; it < 50 && res >= tol; ++it) {
        const cplx d = phi_derivative(red, lam, 1);
        if (d == 0.0) break;
        cplx step = -double(mult) * f / d;
        const double sl = std::abs(step);
        if (sl > 0.5) step *= 0.5 / sl;  // trust region
        // backtrack to keep |Phi| nonincreasing; analytic functions have no
        // nonzero local minima of the modulus, so descent cannot stall
        bool accepted = false;
        cplx cand, cf;
        for (int bt = 0; bt < 12; ++bt) {
            cand = lam + step;
            if (std::abs(cand - lambda0) <= locality) {
                cf = phi_eval(red, cand);
                if (std::abs(cf) <= res) {
                    accepted = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if (!accepted) break;
        lam = cand;
        f = cf;
        res = std::abs(f);
        if (res < best_res) {
            best = lam;
            best_res = res;
        }
    }
    out = lam;
    return res < tol;
}

} // namespace

cplx refine_zero(const ReducedProblem& red, cplx lambda0, int mult, double tol) {
    if (mult < 1) throw ParameterError("refine_zero: multiplicity must be >= 1");
    cplx out, best = lambda0;
    double best_res = std::abs(phi_eval(red, lambda0));
    if (newton_attempt(red, lambda0, mult, tol, out, best, best_res)) return out;
    // Descent can escape toward the |Phi| -> 1 plateau when the seed sits on
    // the wrong side of a ridge; rescan a small neighborhood and retry from
    // the most promising sample.
    cplx seed = best;
    double seed_res = best_res;
    for (double r : {0.15, 0.3, 0.45}) {
        for (int q = 0; q < 8; ++q) {
            const double th = kTwoPi * q / 8.0;
            const cplx z = lambda0 + r * cplx(std::cos(th), std::sin(th));
            const double v = std::abs(phi_eval(red, z));
            if (v < seed_res) {
                seed = z;
                seed_res = v;
            }
        }
    }
    if (newton_attempt(red, seed, mult, tol, out, best, best_res)) return out;
    throw RefinementError("refine_zero: no convergence within 50 iterations", best,
                          best_res);
}

int zero_order(const ReducedProblem& red, cplx lambda, double thresh, int max_order) {
    if (std::abs(phi_eval(red, lambda)) > thresh) return 0;
    for (int m = 1; m <= max_order; ++m)
        if (std::abs(phi_derivative(red, lambda, m)) > thresh) return m;
    throw PrecisionError("zero_order: all derivatives below threshold up to order " +
                         std::to_string(max_order));
}

} // namespace nlpi
