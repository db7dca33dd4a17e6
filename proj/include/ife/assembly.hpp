#pragma once

// Assembly of the broken bilinear form and load over all elements,
// Dirichlet elimination, and the preconditioned conjugate-gradient solver.

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ife/element.hpp"
#include "ife/mesh.hpp"

namespace ife {

struct NoConvergence : std::runtime_error {
    NoConvergence(const std::string& msg, double res, long iters)
        : std::runtime_error(msg), residual(res), iterations(iters) {}
    double residual;
    long iterations;
};

struct CsrMatrix {
    int n = 0;
    std::vector<int> row_ptr, col;
    std::vector<double> val;

    void matvec(const std::vector<double>& x, std::vector<double>& y) const;
    double coeff(int i, int j) const;  // 0 if not stored
    int max_row_nnz() const;
};

struct ProblemSpec {
    Coefficient beta;
    std::function<double(Point)> f;
    std::function<double(Point)> g;
    const LevelSet* ls = nullptr;
    DofKind kind = DofKind::Integral;
};

struct SparseSystem {
    CsrMatrix A;
    std::vector<double> rhs;
    std::vector<std::uint8_t> constrained;
    std::vector<double> constrained_value;

    int n_free() const;
};

// Element stiffness: beta * grad-grad over the element, split over the two
// subelement polygons on cut elements. Symmetric by construction.
std::array<std::array<double, 4>, 4> local_stiffness(const Rect& elem, const ElementCut& cut,
                                                     Coefficient beta, DofKind kind);

// Element load with degree-8 rectangle/polygon quadrature.
std::array<double, 4> local_load(const Rect& elem, const ElementCut& cut, Coefficient beta,
                                 DofKind kind, const std::function<double(Point)>& f);

SparseSystem assemble(const CartesianMesh& mesh, const InterfaceTags& tags,
                      const ProblemSpec& spec);

// Constrain boundary-edge DOFs to the edge mean of g (Integral kind, 5-point
// Gauss) or to g at the edge midpoint (Midpoint kind). Elimination is
// symmetric: known columns move to the right-hand side at solve time.
void apply_dirichlet(SparseSystem& sys, const CartesianMesh& mesh,
                     const std::function<double(Point)>& g, DofKind kind);

struct SolveInfo {
    long iterations = 0;
    double residual = 0.0;
};

// Jacobi-preconditioned CG on the free block; returns the full DOF vector
// including constrained entries. Throws NoConvergence after
// 50 * n_free iterations.
std::vector<double> solve(const SparseSystem& sys, double rel_tol = 1e-12,
                          SolveInfo* info = nullptr);

// Coordinate-format dump (row col value per line, 17 significant digits).
void write_coo(const CsrMatrix& A, const std::string& path);

}  // namespace ife
