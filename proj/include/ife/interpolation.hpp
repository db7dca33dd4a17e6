#pragma once

// Global interpolation into the immersed spaces (both DOF kinds) and the
// element-wise reconstruction of a DOF vector as a field.

#include <functional>
#include <unordered_map>
#include <vector>

#include "ife/element.hpp"
#include "ife/mesh.hpp"

namespace ife {

struct DofVector {
    std::vector<double> values;  // indexed by global edge / DOF
    DofKind kind = DofKind::Integral;
};

// Element-aware evaluator: called with an element whose closure contains p.
using ElemFn = std::function<double(int elem, Point p)>;

// Midpoint kind: DOF = u at the edge midpoint. Integral kind: DOF = edge
// mean of u by 5-point Gauss, split at the cut point on interface edges.
DofVector interpolate(const CartesianMesh& mesh, const InterfaceTags& tags, DofKind kind,
                      const ElemFn& u);

// Piecewise reconstruction of a DOF vector. Bases of cut elements are
// cached; uncut elements use the standard basis of their rectangle.
class IfeField {
public:
    IfeField(const CartesianMesh& mesh, const InterfaceTags& tags, Coefficient beta,
             DofVector dofs);

    std::array<PiecewiseRQ1, 4> basis(int elem) const;

    double value(int elem, Point p) const;
    Point grad(int elem, Point p) const;

    const DofVector& dofs() const { return dofs_; }
    const CartesianMesh& mesh() const { return mesh_; }
    const InterfaceTags& tags() const { return tags_; }
    Coefficient beta() const { return beta_; }

private:
    const CartesianMesh& mesh_;
    const InterfaceTags& tags_;
    Coefficient beta_;
    DofVector dofs_;
    std::unordered_map<int, std::array<PiecewiseRQ1, 4>> cut_basis_;
};

// Re-interpolating the reconstructed field must reproduce the DOF vector.
bool idempotence_check(const DofVector& v, const CartesianMesh& mesh,
                       const InterfaceTags& tags, Coefficient beta, double tol = 1e-12);

}  // namespace ife
