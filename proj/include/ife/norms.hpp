#pragma once

// The radially symmetric exact solution family and the discrete error
// norms (49-point max norm, 9-point Gauss L2 / broken H1).

#include <cmath>
#include <optional>
#include <vector>

#include "ife/element.hpp"
#include "ife/interpolation.hpp"

namespace ife {

// u = r^a / beta^- inside the circle r = r0, and r^a / beta^+ plus the
// matching constant outside, so the value and the radial flux are both
// continuous across the interface. f = -a^2 r^(a-2) on both sides.
struct ExactSolution {
    double r0 = M_PI / 6.28;
    double a = 5.0;
    Coefficient beta{1.0, 1.0};

    Region region(Point p) const {
        return std::hypot(p.x, p.y) < r0 ? Region::Minus : Region::Plus;
    }
    double u(Point p) const;
    Point grad_u(Point p) const;
    double f(Point p) const;
    double g(Point p) const { return u(p); }  // Dirichlet data
};

// Max over all elements of the max over the 7x7 lattice of |v_h - u|.
double linf_error(const IfeField& field, const ExactSolution& es);

// L2 and broken-H1 errors: 9-point Gauss per uncut element; degree-4
// polygon rules per subelement on cut elements, with the exact branch
// selected by the true circle at each quadrature point.
struct L2H1 {
    double l2 = 0.0;
    double h1 = 0.0;
};
L2H1 l2_h1_error(const IfeField& field, const ExactSolution& es);

// rate_k = log2(e_k / e_{k+1}); absent when either error is zero.
std::vector<std::optional<double>> rates(const std::vector<double>& errors);

struct ErrorRow {
    int N = 0;
    double linf = 0.0, l2 = 0.0, h1 = 0.0;
};

struct ErrorReport {
    std::vector<ErrorRow> rows;
    std::vector<std::optional<double>> linf_rates, l2_rates, h1_rates;  // size rows-1
};

ErrorReport make_error_report(const std::vector<ErrorRow>& rows);

}  // namespace ife
