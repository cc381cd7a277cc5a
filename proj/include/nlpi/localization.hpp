#pragma once

#include <map>
#include <optional>

#include "nlpi/rootfinder.hpp"

namespace nlpi {

/// Finitely supported coefficient sequence a_m = <psi_{-m}, K>.
struct CoeffSequence {
    int support = 0;       // |m| <= support
    std::vector<cplx> a;   // a[m + support]

    cplx at(int m) const {
        return (m < -support || m > support) ? cplx(0.0) : a[m + support];
    }
    static CoeffSequence from(const ReducedProblem& red);
};

struct Spectrum {
    std::vector<LocatedZero> eigenvalues;  // increasing Re, then Im
    int tail_threshold = 0;                // N
    Rectangle rectangle{-0.5, 0.5, -1.0, 1.0};  // the R_{N,b} actually used
    double b = 0.0;
    int window = 0;                        // disks cover N < |n| <= window
    std::map<int, double> disks;           // n -> certified radius
    std::optional<cplx> eta_shift;         // set once map_spectrum has run
};

/// |<psi_n, K>| = |a_{-n}|: certified radius of the disk around n.
double disk_radius(const ReducedProblem& red, int n);

/// Row of the doubly infinite Hilbert matrix: sum_m a_m / (m + n + eta).
cplx hilbert_row(const CoeffSequence& a, cplx eta, int n);

/// Smallest N such that every disk with N < |n| <= n_max passes the
/// boundary-ratio and winding certificates.
int tail_threshold(const ReducedProblem& red, int n_max = 256);

/// Full Thm-3.14-style assembly: rectangle census + certified tail disks.
Spectrum assemble_spectrum(const ReducedProblem& red, double b, int window = 32);

/// Translate a P_{1,K} spectrum by eta to obtain sigma(A_{rho,k}).
Spectrum map_spectrum(const Spectrum& spec, cplx eta);

} // namespace nlpi
