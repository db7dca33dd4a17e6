#pragma once

// Gauss rules on rectangles, segments and convex cut polygons, plus the
// 49-point sampling lattice used for the discrete max-norm error.

#include <vector>

#include "ife/geometry.hpp"

namespace ife {

struct QuadRule {
    std::vector<Point> points;
    std::vector<double> weights;

    std::size_t size() const { return points.size(); }

    template <class F>
    double integrate(F&& f) const {
        double s = 0.0;
        for (std::size_t q = 0; q < points.size(); ++q) s += weights[q] * f(points[q]);
        return s;
    }
};

// Gauss-Legendre nodes/weights on [-1,1], n >= 1.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Tensor n x n Gauss-Legendre rule on a rectangle; exact for bivariate
// polynomials of degree <= 2n-1 per variable.
QuadRule gauss_rect(const Rect& elem, int n);

// The 3x3 rule used for the L2/H1 error norms.
QuadRule gauss_rect_9(const Rect& elem);

// n-point Gauss rule along segment a->b; weights sum to the length.
QuadRule gauss_segment(Point a, Point b, int n);

// Rule on a convex polygon (triangle/trapezoid/pentagon from element cuts):
// fan triangulation from the centroid, each fan triangle carrying a
// conical-product Gauss rule exact for total degree <= degree. Fan slivers
// with area below 1e-14 * area(poly) are dropped.
QuadRule polygon_quad(const std::vector<Point>& poly, int degree);

// 7x7 uniform lattice on the element, corners included (49 points).
std::vector<Point> sample_grid_49(const Rect& elem);

}  // namespace ife
