#include "ife/mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace ife {

Rect CartesianMesh::element(int idx) const {
    const int i = idx % N;
    const int j = idx / N;
    return {domain.x0 + i * h, domain.y0 + j * h, domain.x0 + (i + 1) * h,
            domain.y0 + (j + 1) * h};
}

int CartesianMesh::edge_of_element(int elem, int k) const {
    const int i = elem % N;
    const int j = elem / N;
    const int n_horizontal = N * (N + 1);
    switch (k) {
        case 0: return j * N + i;                            // bottom
        case 1: return n_horizontal + j * (N + 1) + (i + 1); // right
        case 2: return (j + 1) * N + i;                      // top
        case 3: return n_horizontal + j * (N + 1) + i;       // left
        default: throw std::out_of_range("edge_of_element: k");
    }
}

MeshEdge CartesianMesh::edge(int idx) const {
    MeshEdge e;
    const int n_horizontal = N * (N + 1);
    if (idx < n_horizontal) {
        const int i = idx % N;
        const int j = idx / N;
        e.a = {domain.x0 + i * h, domain.y0 + j * h};
        e.b = {domain.x0 + (i + 1) * h, domain.y0 + j * h};
        e.boundary = (j == 0 || j == N);
        if (j > 0) e.elems[e.n_elems++] = elem_index(i, j - 1);
        if (j < N) e.elems[e.n_elems++] = elem_index(i, j);
    } else {
        const int rest = idx - n_horizontal;
        const int i = rest % (N + 1);
        const int j = rest / (N + 1);
        e.a = {domain.x0 + i * h, domain.y0 + j * h};
        e.b = {domain.x0 + i * h, domain.y0 + (j + 1) * h};
        e.boundary = (i == 0 || i == N);
        if (i > 0) e.elems[e.n_elems++] = elem_index(i - 1, j);
        if (i < N) e.elems[e.n_elems++] = elem_index(i, j);
    }
    return e;
}

Point CartesianMesh::edge_midpoint(int idx) const {
    const MeshEdge e = edge(idx);
    return 0.5 * (e.a + e.b);
}

CartesianMesh build_mesh(const Rect& domain, int N) {
    if (N < 2) throw std::invalid_argument("build_mesh: N must be >= 2");
    if (std::abs(domain.width() - domain.height()) > 1e-12 * domain.width())
        throw std::invalid_argument("build_mesh: domain must be square");
    CartesianMesh mesh;
    mesh.domain = domain;
    mesh.N = N;
    mesh.h = domain.width() / N;
    return mesh;
}

InterfaceTags tag_interface(const CartesianMesh& mesh, const LevelSet& ls, double snap_tol) {
    InterfaceTags tags;
    tags.cuts.resize(mesh.n_elements());
    tags.interface_edge.assign(mesh.n_edges(), 0);
    for (int e = 0; e < mesh.n_elements(); ++e) {
        tags.cuts[e] = classify_element(ls, mesh.element(e), snap_tol);
        const ElementCut& cut = tags.cuts[e];
        if (!cut.is_cut()) continue;
        tags.cut_elements.push_back(e);
        const int ge_d = mesh.edge_of_element(e, cut.edge_d);
        const int ge_e = mesh.edge_of_element(e, cut.edge_e);
        tags.interface_edge[ge_d] = 1;
        tags.interface_edge[ge_e] = 1;
        tags.edge_cut_point.emplace(ge_d, cut.D);
        tags.edge_cut_point.emplace(ge_e, cut.E);
    }
    return tags;
}

DofMap make_dof_map(const CartesianMesh& mesh, const InterfaceTags& tags) {
    DofMap map;
    map.n_dofs = mesh.n_edges();
    map.boundary.assign(map.n_dofs, 0);
    for (int i = 0; i < map.n_dofs; ++i) map.boundary[i] = mesh.edge(i).boundary ? 1 : 0;
    map.interface_edge = tags.interface_edge;
    return map;
}

}  // namespace ife
