#pragma once

#include <vector>

#include "nlpi/charfn.hpp"

namespace nlpi {

struct Rectangle {
    double re_min, re_max, im_min, im_max;

    Rectangle(double rmin, double rmax, double imin, double imax)
        : re_min(rmin), re_max(rmax), im_min(imin), im_max(imax) {
        if (!(re_min < re_max) || !(im_min < im_max))
            throw ParameterError("Rectangle: degenerate bounds");
    }

    double width() const { return re_max - re_min; }
    double height() const { return im_max - im_min; }
    double diameter() const { return std::hypot(width(), height()); }
    cplx center() const {
        return cplx(0.5 * (re_min + re_max), 0.5 * (im_min + im_max));
    }
    bool contains(cplx z, double slack = 0.0) const {
        return z.real() >= re_min - slack && z.real() <= re_max + slack &&
               z.imag() >= im_min - slack && z.imag() <= im_max + slack;
    }
    Rectangle dilated(double eps) const {
        return Rectangle(re_min - eps, re_max + eps, im_min - eps, im_max + eps);
    }
};

enum class Provenance { rectangle_subdivision, disk_certified };

struct LocatedZero {
    cplx lambda;
    int multiplicity = 1;
    double residual = 0.0;  // |Phi| at the refined point
    Rectangle enclosure{0.0, 1.0, 0.0, 1.0};
    Provenance provenance = Provenance::rectangle_subdivision;
};

/// Argument-principle count of zeros of Phi inside rect (with multiplicity).
/// Dilates the rectangle by 1e-4*(1+retry) up to 5 times when the boundary
/// comes within theta of a zero.
int winding_count(const ReducedProblem& red, const Rectangle& rect,
                  double theta = 1e-8);

/// Recursive quadrisection + Newton polishing; multiplicities sum to the
/// winding count of rect and every residual is < tol.
std::vector<LocatedZero> isolate_zeros(const ReducedProblem& red,
                                       const Rectangle& rect, double tol);

/// Modified Newton lambda <- lambda - mult*Phi/Phi' until |Phi| < tol.
cplx refine_zero(const ReducedProblem& red, cplx lambda0, int mult, double tol);

/// Smallest m with |Phi^(m)(lambda)| > thresh (m = 0 means Phi itself is
/// above the threshold); caps at max_order.
int zero_order(const ReducedProblem& red, cplx lambda, double thresh = 1e-6,
               int max_order = 6);

} // namespace nlpi
