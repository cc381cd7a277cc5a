#pragma once

#include "nlpi/dissipative.hpp"
#include "nlpi/eigensystem.hpp"

namespace nlpi {

enum class Regime { decay_to_zero, converges_to_projection };

struct SemigroupTrace {
    std::vector<double> times;
    std::vector<double> norms;      // regime-adjusted (projection-corrected in ii)
    std::vector<double> raw_norms;  // plain e^{iAt} estimates
    Regime regime = Regime::decay_to_zero;
    double zeta = 0.0;
    double fitted_rate = 0.0;
};

/// e^{iAt} f by spectral expansion over the supplied eigenpairs; Jordan
/// blocks (multiplicity > 1, experimental) evolve with polynomial factors.
GridFunction evolve(const ProblemSpec& spec, const Spectrum& spectrum,
                    const std::vector<EigenPair>& pairs, const GridFunction& f,
                    double t);

/// Operator-norm trace by power iteration on the evolved psi_{-W..W} frame.
SemigroupTrace norm_decay(const ProblemSpec& spec, const Spectrum& spectrum,
                          const std::vector<EigenPair>& pairs,
                          const std::vector<double>& times, int window_w = 24);

/// zeta = min Im lambda over nonreal computed eigenvalues.
double spectral_gap(const Spectrum& spectrum);

} // namespace nlpi
