#include "nlpi/semigroup.hpp"

#include <algorithm>
#include <cmath>

namespace nlpi {

namespace {

const cplx kI(0.0, 1.0);

// dense solve for the tiny Jordan Gram systems (partial pivoting)
std::vector<cplx> solve_small(std::vector<std::vector<cplx>> A, std::vector<cplx> b) {
    const int m = int(b.size());
    for (int c = 0; c < m; ++c) {
        int piv = c;
        for (int r = c + 1; r < m; ++r)
            if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
        std::swap(A[c], A[piv]);
        std::swap(b[c], b[piv]);
        if (std::abs(A[c][c]) < 1e-14)
            throw DegenerateNormalizationError(
                "evolve: singular Jordan-block Gram matrix");
        for (int r = c + 1; r < m; ++r) {
            const cplx f = A[r][c] / A[c][c];
            for (int q = c; q < m; ++q) A[r][q] -= f * A[c][q];
            b[r] -= f * b[c];
        }
    }
    std::vector<cplx> x(m);
    for (int c = m - 1; c >= 0; --c) {
        cplx s = b[c];
        for (int q = c + 1; q < m; ++q) s -= A[c][q] * x[q];
        x[c] = s / A[c][c];
    }
    return x;
}

using Mat = std::vector<std::vector<cplx>>;

// X = A^{-1} B by Gaussian elimination with partial pivoting
Mat solve_matrix(Mat A, Mat B) {
    const int m = int(A.size());
    for (int c = 0; c < m; ++c) {
        int piv = c;
        for (int r = c + 1; r < m; ++r)
            if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
        std::swap(A[c], A[piv]);
        std::swap(B[c], B[piv]);
        if (std::abs(A[c][c]) == 0.0)
            throw NumericsAlarmError("norm_decay: singular frame Gram matrix");
        for (int r = c + 1; r < m; ++r) {
            const cplx f = A[r][c] / A[c][c];
            for (int q = c; q < m; ++q) A[r][q] -= f * A[c][q];
            for (size_t q = 0; q < B[r].size(); ++q) B[r][q] -= f * B[c][q];
        }
    }
    for (int c = m - 1; c >= 0; --c) {
        for (size_t q = 0; q < B[c].size(); ++q) {
            cplx s = B[c][q];
            for (int j = c + 1; j < m; ++j) s -= A[c][j] * B[j][q];
            B[c][q] = s / A[c][c];
        }
    }
    return B;
}

// largest generalized Rayleigh quotient a*Ma / a*Ga by power iteration on
// G^{-1}M (both Gram matrices, so the quotient is real and nonnegative)
double rayleigh_max(const Mat& M, const Mat& G) {
    const int dim = int(M.size());
    const Mat B = solve_matrix(G, M);
    std::vector<cplx> v(dim, cplx(1.0 / std::sqrt(double(dim)))), w(dim);
    auto quad = [dim](const Mat& Q, const std::vector<cplx>& a) {
        double s = 0.0;
        for (int r = 0; r < dim; ++r) {
            cplx row = 0.0;
            for (int c = 0; c < dim; ++c) row += Q[r][c] * a[c];
            s += (std::conj(a[r]) * row).real();
        }
        return s;
    };
    double est = quad(M, v) / quad(G, v);
    for (int it = 0; it < 200; ++it) {
        for (int r = 0; r < dim; ++r) {
            cplx s = 0.0;
            for (int c = 0; c < dim; ++c) s += B[r][c] * v[c];
            w[r] = s;
        }
        double nrm = 0.0;
        for (const cplx& z : w) nrm += std::norm(z);
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) return 0.0;
        for (int r = 0; r < dim; ++r) v[r] = w[r] / nrm;
        const double next = quad(M, v) / quad(G, v);
        if (it > 5 && std::abs(next - est) <= 1e-13 * std::abs(next)) return next;
        est = next;
    }
    return est;
}

} // namespace

GridFunction evolve(const ProblemSpec& spec, const Spectrum& spectrum,
                    const std::vector<EigenPair>& pairs, const GridFunction& f,
                    double t) {
    if (t < 0.0) throw ParameterError("evolve: t must be >= 0");
    require_same_grid(spec.V, f);

    std::vector<cplx> simple(pairs.size());
    GridFunction r = f;
    for (size_t i = 0; i < pairs.size(); ++i) {
        if (std::abs(pairs[i].normalization) < 1e-10)
            throw DegenerateNormalizationError("evolve: degenerate eigenpair");
        simple[i] = inner_product(pairs[i].phi_adj, f) / pairs[i].normalization;
        r = r - simple[i] * pairs[i].phi;
    }

    struct Block {
        cplx lambda;
        std::vector<GridFunction> primal;
        std::vector<cplx> coeff;
    };
    std::vector<Block> blocks;  // multiplicity > 1: experimental Jordan path
    for (const LocatedZero& z : spectrum.eigenvalues) {
        if (z.multiplicity == 1) continue;
        Block blk;
        blk.lambda = z.lambda;
        blk.primal = primal_root_chain(spec, z.lambda, z.multiplicity).functions;
        const RootChain adj = adjoint_root_chain(z.lambda, z.multiplicity, f.n);
        const int m = z.multiplicity;
        std::vector<std::vector<cplx>> G(m, std::vector<cplx>(m));
        std::vector<cplx> rhs(m);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j)
                G[i][j] = inner_product(adj.functions[i], blk.primal[j]);
            rhs[i] = inner_product(adj.functions[i], f);
        }
        blk.coeff = solve_small(std::move(G), std::move(rhs));
        for (int j = 0; j < m; ++j) r = r - blk.coeff[j] * blk.primal[j];
        blocks.push_back(std::move(blk));
    }

    const double fn = l2_norm(f);
    if (l2_norm(r) > 0.05 * fn)
        throw TruncationError("evolve: reconstruction residual " +
                              std::to_string(l2_norm(r)) + " exceeds 5% of ||f|| = " +
                              std::to_string(fn));

    GridFunction out(f.n);
    for (size_t i = 0; i < pairs.size(); ++i)
        out = out + (simple[i] * std::exp(kI * pairs[i].lambda * t)) * pairs[i].phi;
    for (const Block& blk : blocks) {
        const cplx ph = std::exp(kI * blk.lambda * t);
        const int m = int(blk.primal.size());
        for (int j = 0; j < m; ++j) {
            cplx fac = 1.0;  // (it)^p / p!
            for (int p = 0; p <= j; ++p) {
                out = out + (blk.coeff[j] * ph * fac) * blk.primal[j - p];
                fac *= kI * t / double(p + 1);
            }
        }
    }
    return out;
}

double spectral_gap(const Spectrum& spectrum) {
    bool found = false;
    double gap = 0.0;
    for (const LocatedZero& z : spectrum.eigenvalues) {
        if (std::abs(z.lambda.imag()) < 1e-6 * (1.0 + std::abs(z.lambda))) continue;
        gap = found ? std::min(gap, z.lambda.imag()) : z.lambda.imag();
        found = true;
    }
    if (!found)
        throw CensusAlarmError("spectral_gap: no nonreal eigenvalues in the window");
    return gap;
}

SemigroupTrace norm_decay(const ProblemSpec& spec, const Spectrum& spectrum,
                          const std::vector<EigenPair>& pairs,
                          const std::vector<double>& times, int window_w) {
    if (times.empty() || times.front() < 0.0 ||
        !std::is_sorted(times.begin(), times.end()))
        throw ParameterError("norm_decay: times must be sorted and nonnegative");

    SemigroupTrace trace;
    trace.times = times;
    trace.zeta = spectral_gap(spectrum);
    const RealEigenCensus census = real_eigen_census(spectrum);
    trace.regime = census.count == 1 ? Regime::converges_to_projection
                                     : Regime::decay_to_zero;

    GridFunction ghat;
    cplx lam_real = 0.0;
    if (trace.regime == Regime::converges_to_projection) {
        lam_real = census.witnesses.front();
        ghat = eigenfunction(spec, lam_real);
        ghat = (1.0 / l2_norm(ghat)) * ghat;
    }

    // operator-adapted test frame W^{-1} psi_b: its eigen-expansion has
    // concentrated coefficients, unlike the raw Fourier frame when the
    // similarity weight W is far from constant
    const ReducedProblem red = reduce(spec);
    const int dim = 2 * window_w + 1;
    std::vector<GridFunction> basis;
    for (int b = -window_w; b <= window_w; ++b) {
        GridFunction f = psi(spec.V.n, b);
        for (int j = 0; j <= f.n; ++j) f.v[j] /= red.W.v[j];
        basis.push_back(std::move(f));
    }

    auto gram = [&](const std::vector<GridFunction>& frame) {
        Mat M(dim, std::vector<cplx>(dim));
        for (int i = 0; i < dim; ++i)
            for (int j = i; j < dim; ++j) {
                M[i][j] = inner_product(frame[i], frame[j]);
                M[j][i] = std::conj(M[i][j]);
            }
        return M;
    };
    const Mat G = gram(basis);
    auto frame_norm = [&](const std::vector<GridFunction>& frame) {
        return std::sqrt(std::max(0.0, rayleigh_max(gram(frame), G)));
    };

    for (double t : times) {
        std::vector<GridFunction> evolved;
        for (int b = 0; b < dim; ++b)
            evolved.push_back(evolve(spec, spectrum, pairs, basis[b], t));
        const double raw = frame_norm(evolved);
        if (!trace.raw_norms.empty() && raw > trace.raw_norms.back() + 1e-6)
            throw NumericsAlarmError("norm_decay: norm increased from " +
                                     std::to_string(trace.raw_norms.back()) + " to " +
                                     std::to_string(raw) + " (non-contractive trace)");
        trace.raw_norms.push_back(raw);
        if (trace.regime == Regime::converges_to_projection) {
            const cplx ph = std::exp(kI * lam_real * t);
            for (int b = 0; b < dim; ++b)
                evolved[b] = evolved[b] - (ph * inner_product(ghat, basis[b])) * ghat;
            trace.norms.push_back(frame_norm(evolved));
        } else {
            trace.norms.push_back(raw);
        }
    }

    // log-linear fit over the tail half of the samples
    const int total = int(times.size());
    const int tail = std::max(2, total / 2);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int used = 0;
    for (int i = total - tail; i < total; ++i) {
        if (i < 0 || trace.norms[i] <= 1e-300) continue;
        const double x = times[i], y = std::log(trace.norms[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++used;
    }
    if (used >= 2 && sxx * used - sx * sx > 1e-30)
        trace.fitted_rate = (sxy * used - sx * sy) / (sxx * used - sx * sx);
    return trace;
}

} // namespace nlpi
