#pragma once

// Uniform N x N Cartesian mesh with edge-based degrees of freedom.
// Elements are indexed row-major; edges are grouped horizontal-then-
// vertical so all indexing is deterministic and reproducible.

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "ife/geometry.hpp"

namespace ife {

struct MeshEdge {
    Point a, b;       // canonical direction: +x for horizontal, +y for vertical
    bool boundary = false;
    int elems[2] = {-1, -1};
    int n_elems = 0;
};

struct CartesianMesh {
    Rect domain{-1.0, -1.0, 1.0, 1.0};
    int N = 0;
    double h = 0.0;

    int n_elements() const { return N * N; }
    int n_edges() const { return 2 * N * (N + 1); }

    int elem_index(int i, int j) const { return j * N + i; }
    Rect element(int idx) const;

    // Global edge index of local edge k (0..3: bottom, right, top, left).
    int edge_of_element(int elem, int k) const;
    MeshEdge edge(int idx) const;
    Point edge_midpoint(int idx) const;
};

CartesianMesh build_mesh(const Rect& domain, int N);

// Per-element classification plus the interface edge set (edges carrying a
// cut point D or E).
struct InterfaceTags {
    std::vector<ElementCut> cuts;             // one per element
    std::vector<int> cut_elements;            // indices of cut elements
    std::vector<std::uint8_t> interface_edge; // one flag per edge
    std::unordered_map<int, Point> edge_cut_point;

    const ElementCut& cut(int elem) const { return cuts[elem]; }
};

InterfaceTags tag_interface(const CartesianMesh& mesh, const LevelSet& ls,
                            double snap_tol = 1e-10);

// One global DOF per mesh edge, with the boundary/interface partition.
struct DofMap {
    int n_dofs = 0;
    std::vector<std::uint8_t> boundary;
    std::vector<std::uint8_t> interface_edge;

    int dof_of_edge(int edge) const { return edge; }
};

DofMap make_dof_map(const CartesianMesh& mesh, const InterfaceTags& tags);

}  // namespace ife
