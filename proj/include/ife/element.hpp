#pragma once

// Rotated-Q1 local bases: the standard element basis for both degree-of-
// freedom types, and the piecewise immersed basis on cut elements obtained
// from the 8x8 constraint system (edge DOFs, continuity at D and E, matched
// second-order coefficient, weak flux continuity across DE).

#include <array>
#include <optional>
#include <stdexcept>

#include "ife/geometry.hpp"

namespace ife {

// The local 8x8 (or 4x4) solve failed; surfaced, never masked.
struct SingularLocalSystem : std::runtime_error {
    explicit SingularLocalSystem(const std::string& msg) : std::runtime_error(msg) {}
};

enum class DofKind { Midpoint, Integral };

struct Coefficient {
    double beta_minus = 1.0;
    double beta_plus = 1.0;

    double on(Region r) const { return r == Region::Minus ? beta_minus : beta_plus; }
};

// c1 + c2*x + c3*y + c4*(x^2 - y^2) in physical coordinates.
struct RQ1Poly {
    double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0;

    double value(Point p) const {
        return c1 + c2 * p.x + c3 * p.y + c4 * (p.x * p.x - p.y * p.y);
    }
    Point grad(Point p) const { return {c2 + 2.0 * c4 * p.x, c3 - 2.0 * c4 * p.y}; }
};

// A pair of rotated-Q1 polynomials glued along segment DE. Uncut basis
// functions are represented with equal pieces (cut == false).
struct PiecewiseRQ1 {
    RQ1Poly minus, plus;
    bool cut = false;
    Point D{}, E{};   // gluing segment, valid when cut
    Point nu{};       // unit normal of DE pointing from the minus side to plus

    // Side selection by signed position relative to line DE; points on the
    // line evaluate the minus piece (both pieces agree there).
    Region side(Point p) const {
        if (!cut) return Region::Minus;
        return dot(p - D, nu) > 0.0 ? Region::Plus : Region::Minus;
    }
    const RQ1Poly& piece(Region r) const { return r == Region::Minus ? minus : plus; }

    double value(Point p) const { return piece(side(p)).value(p); }
    Point grad(Point p) const { return piece(side(p)).grad(p); }
};

// Standard rotated-Q1 basis with the delta property in the chosen DOF
// functional over edges gamma_1..gamma_4.
std::array<RQ1Poly, 4> standard_basis(const Rect& elem, DofKind kind);

// Immersed basis on a cut element. Each function satisfies the four edge
// DOF constraints (piecewise on cut edges), value continuity at D and E,
// c4^- = c4^+, and the vanishing flux-jump integral along DE.
std::array<PiecewiseRQ1, 4> ife_basis(const Rect& elem, const ElementCut& cut,
                                      Coefficient beta, DofKind kind);

// Basis for any element: standard (wrapped piecewise) when cut is uncut.
std::array<PiecewiseRQ1, 4> element_basis(const Rect& elem, const ElementCut& cut,
                                          Coefficient beta, DofKind kind);

// Exact mean of f along an element edge, split at cut_point when present;
// quadratics along the segment are integrated analytically.
double edge_mean(const PiecewiseRQ1& f, Point a, Point b,
                 const std::optional<Point>& cut_point = std::nullopt);

}  // namespace ife
