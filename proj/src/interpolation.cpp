#include "ife/interpolation.hpp"

#include <cmath>

#include "ife/quadrature.hpp"

namespace ife {

namespace {

double edge_dof(const CartesianMesh& mesh, const InterfaceTags& tags, DofKind kind, int edge,
                const ElemFn& u) {
    const MeshEdge me = mesh.edge(edge);
    const int elem = me.elems[0];
    if (kind == DofKind::Midpoint) return u(elem, 0.5 * (me.a + me.b));

    auto piece_integral = [&](Point a, Point b) {
        const QuadRule rule = gauss_segment(a, b, 5);
        double s = 0.0;
        for (std::size_t q = 0; q < rule.size(); ++q)
            s += rule.weights[q] * u(elem, rule.points[q]);
        return s;
    };

    const auto it = tags.edge_cut_point.find(edge);
    double integral;
    if (it != tags.edge_cut_point.end())
        integral = piece_integral(me.a, it->second) + piece_integral(it->second, me.b);
    else
        integral = piece_integral(me.a, me.b);
    return integral / norm(me.b - me.a);
}

}  // namespace

DofVector interpolate(const CartesianMesh& mesh, const InterfaceTags& tags, DofKind kind,
                      const ElemFn& u) {
    DofVector v;
    v.kind = kind;
    v.values.resize(mesh.n_edges());
    for (int e = 0; e < mesh.n_edges(); ++e) v.values[e] = edge_dof(mesh, tags, kind, e, u);
    return v;
}

IfeField::IfeField(const CartesianMesh& mesh, const InterfaceTags& tags, Coefficient beta,
                   DofVector dofs)
    : mesh_(mesh), tags_(tags), beta_(beta), dofs_(std::move(dofs)) {
    for (int e : tags_.cut_elements)
        cut_basis_.emplace(e, ife_basis(mesh_.element(e), tags_.cuts[e], beta_, dofs_.kind));
}

std::array<PiecewiseRQ1, 4> IfeField::basis(int elem) const {
    const auto it = cut_basis_.find(elem);
    if (it != cut_basis_.end()) return it->second;
    return element_basis(mesh_.element(elem), tags_.cuts[elem], beta_, dofs_.kind);
}

double IfeField::value(int elem, Point p) const {
    const auto b = basis(elem);
    double s = 0.0;
    for (int k = 0; k < 4; ++k)
        s += dofs_.values[mesh_.edge_of_element(elem, k)] * b[k].value(p);
    return s;
}

Point IfeField::grad(int elem, Point p) const {
    const auto b = basis(elem);
    Point g{0.0, 0.0};
    for (int k = 0; k < 4; ++k) {
        const double d = dofs_.values[mesh_.edge_of_element(elem, k)];
        g = g + d * b[k].grad(p);
    }
    return g;
}

bool idempotence_check(const DofVector& v, const CartesianMesh& mesh, const InterfaceTags& tags,
                       Coefficient beta, double tol) {
    const IfeField field(mesh, tags, beta, v);
    const DofVector again = interpolate(mesh, tags, v.kind,
                                        [&](int elem, Point p) { return field.value(elem, p); });
    double scale = 1.0;
    for (double d : v.values) scale = std::max(scale, std::abs(d));
    for (std::size_t i = 0; i < v.values.size(); ++i)
        if (std::abs(again.values[i] - v.values[i]) > tol * scale) return false;
    return true;
}

}  // namespace ife
