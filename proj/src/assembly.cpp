#include "ife/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "ife/quadrature.hpp"

namespace ife {

void CsrMatrix::matvec(const std::vector<double>& x, std::vector<double>& y) const {
    y.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += val[k] * x[col[k]];
        y[i] = s;
    }
}

double CsrMatrix::coeff(int i, int j) const {
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
        if (col[k] == j) return val[k];
    return 0.0;
}

int CsrMatrix::max_row_nnz() const {
    int m = 0;
    for (int i = 0; i < n; ++i) m = std::max(m, row_ptr[i + 1] - row_ptr[i]);
    return m;
}

int SparseSystem::n_free() const {
    int nf = 0;
    for (auto c : constrained)
        if (!c) ++nf;
    return nf;
}

std::array<std::array<double, 4>, 4> local_stiffness(const Rect& elem, const ElementCut& cut,
                                                     Coefficient beta, DofKind kind) {
    const auto basis = element_basis(elem, cut, beta, kind);
    std::array<std::array<double, 4>, 4> K{};
    auto accumulate = [&](const QuadRule& rule, Region side, double b) {
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const Point p = rule.points[q];
            const double w = b * rule.weights[q];
            Point g[4];
            for (int i = 0; i < 4; ++i) g[i] = basis[i].piece(side).grad(p);
            for (int i = 0; i < 4; ++i)
                for (int j = i; j < 4; ++j) K[i][j] += w * dot(g[i], g[j]);
        }
    };
    if (!cut.is_cut()) {
        accumulate(gauss_rect(elem, 3), Region::Minus, beta.on(cut.region));
    } else {
        accumulate(polygon_quad(cut.poly_minus, 4), Region::Minus, beta.beta_minus);
        accumulate(polygon_quad(cut.poly_plus, 4), Region::Plus, beta.beta_plus);
    }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < i; ++j) K[i][j] = K[j][i];
    return K;
}

std::array<double, 4> local_load(const Rect& elem, const ElementCut& cut, Coefficient beta,
                                 DofKind kind, const std::function<double(Point)>& f) {
    const auto basis = element_basis(elem, cut, beta, kind);
    std::array<double, 4> F{};
    auto accumulate = [&](const QuadRule& rule, Region side) {
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const Point p = rule.points[q];
            const double wf = rule.weights[q] * f(p);
            for (int i = 0; i < 4; ++i) F[i] += wf * basis[i].piece(side).value(p);
        }
    };
    if (!cut.is_cut()) {
        accumulate(gauss_rect(elem, 5), Region::Minus);
    } else {
        accumulate(polygon_quad(cut.poly_minus, 8), Region::Minus);
        accumulate(polygon_quad(cut.poly_plus, 8), Region::Plus);
    }
    return F;
}

namespace {

// CSR pattern from edge connectivity: an edge couples with every edge of its
// incident elements (at most 7 columns per row).
CsrMatrix build_pattern(const CartesianMesh& mesh) {
    CsrMatrix A;
    A.n = mesh.n_edges();
    A.row_ptr.assign(A.n + 1, 0);
    std::vector<std::vector<int>> cols(A.n);
    for (int i = 0; i < A.n; ++i) {
        auto& c = cols[i];
        c.push_back(i);
        const MeshEdge me = mesh.edge(i);
        for (int t = 0; t < me.n_elems; ++t)
            for (int k = 0; k < 4; ++k) c.push_back(mesh.edge_of_element(me.elems[t], k));
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        A.row_ptr[i + 1] = A.row_ptr[i] + static_cast<int>(c.size());
    }
    A.col.resize(A.row_ptr[A.n]);
    A.val.assign(A.row_ptr[A.n], 0.0);
    for (int i = 0; i < A.n; ++i)
        std::copy(cols[i].begin(), cols[i].end(), A.col.begin() + A.row_ptr[i]);
    return A;
}

void scatter_add(CsrMatrix& A, int i, int j, double v) {
    const auto first = A.col.begin() + A.row_ptr[i];
    const auto last = A.col.begin() + A.row_ptr[i + 1];
    const auto it = std::lower_bound(first, last, j);
    A.val[static_cast<std::size_t>(it - A.col.begin())] += v;
}

}  // namespace

SparseSystem assemble(const CartesianMesh& mesh, const InterfaceTags& tags,
                      const ProblemSpec& spec) {
    SparseSystem sys;
    sys.A = build_pattern(mesh);
    sys.rhs.assign(mesh.n_edges(), 0.0);
    sys.constrained.assign(mesh.n_edges(), 0);
    sys.constrained_value.assign(mesh.n_edges(), 0.0);

    for (int e = 0; e < mesh.n_elements(); ++e) {
        const Rect elem = mesh.element(e);
        const ElementCut& cut = tags.cuts[e];
        const auto K = local_stiffness(elem, cut, spec.beta, spec.kind);
        const auto F = local_load(elem, cut, spec.beta, spec.kind, spec.f);
        int dofs[4];
        for (int k = 0; k < 4; ++k) dofs[k] = mesh.edge_of_element(e, k);
        for (int i = 0; i < 4; ++i) {
            sys.rhs[dofs[i]] += F[i];
            for (int j = 0; j < 4; ++j) scatter_add(sys.A, dofs[i], dofs[j], K[i][j]);
        }
    }
    return sys;
}

void apply_dirichlet(SparseSystem& sys, const CartesianMesh& mesh,
                     const std::function<double(Point)>& g, DofKind kind) {
    for (int i = 0; i < mesh.n_edges(); ++i) {
        const MeshEdge me = mesh.edge(i);
        if (!me.boundary) continue;
        double v;
        if (kind == DofKind::Midpoint) {
            v = g(0.5 * (me.a + me.b));
        } else {
            const QuadRule rule = gauss_segment(me.a, me.b, 5);
            v = rule.integrate(g) / norm(me.b - me.a);
        }
        sys.constrained[i] = 1;
        sys.constrained_value[i] = v;
    }
}

std::vector<double> solve(const SparseSystem& sys, double rel_tol, SolveInfo* info) {
    const int n = sys.A.n;
    std::vector<double> x(n, 0.0);
    for (int i = 0; i < n; ++i)
        if (sys.constrained[i]) x[i] = sys.constrained_value[i];

    std::vector<int> free;
    free.reserve(n);
    for (int i = 0; i < n; ++i)
        if (!sys.constrained[i]) free.push_back(i);
    const int nf = static_cast<int>(free.size());
    if (nf == 0) {
        if (info) *info = {0, 0.0};
        return x;
    }

    // Reduced right-hand side: rhs minus the constrained columns.
    std::vector<double> ax(n);
    sys.A.matvec(x, ax);
    std::vector<double> b(nf);
    for (int k = 0; k < nf; ++k) b[k] = sys.rhs[free[k]] - ax[free[k]];

    std::vector<double> diag(nf);
    for (int k = 0; k < nf; ++k) {
        const double d = sys.A.coeff(free[k], free[k]);
        if (!(d > 0.0)) throw std::runtime_error("solve: nonpositive diagonal, free block not SPD");
        diag[k] = d;
    }

    // Free-block matvec: gather into the full vector, mask constrained DOFs.
    std::vector<double> xf(nf, 0.0), full(n, 0.0), afull(n);
    auto matvec_free = [&](const std::vector<double>& u, std::vector<double>& out) {
        std::fill(full.begin(), full.end(), 0.0);
        for (int k = 0; k < nf; ++k) full[free[k]] = u[k];
        sys.A.matvec(full, afull);
        out.resize(nf);
        for (int k = 0; k < nf; ++k) out[k] = afull[free[k]];
    };

    auto dot_v = [](const std::vector<double>& u, const std::vector<double>& v) {
        double s = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
        return s;
    };

    const double bnorm = std::sqrt(dot_v(b, b));
    const long max_iters = 50L * nf;
    long iters = 0;
    double res = 0.0;

    if (bnorm > 0.0) {
        std::vector<double> r = b, z(nf), p(nf), ap(nf);
        bool converged = false;
        while (!converged) {
            // (Re)start PCG from the current iterate with the true residual.
            matvec_free(xf, ap);
            for (int k = 0; k < nf; ++k) r[k] = b[k] - ap[k];
            res = std::sqrt(dot_v(r, r));
            if (res <= rel_tol * bnorm) break;
            for (int k = 0; k < nf; ++k) z[k] = r[k] / diag[k];
            p = z;
            double rz = dot_v(r, z);
            while (iters < max_iters) {
                matvec_free(p, ap);
                const double pap = dot_v(p, ap);
                if (!(pap > 0.0)) {
                    // Distinguish a genuinely indefinite matrix from curvature
                    // lost to roundoff once the iteration has stagnated.
                    double mag = 0.0;
                    for (int k = 0; k < nf; ++k) mag += std::abs(p[k] * ap[k]);
                    if (pap < -1e-12 * mag)
                        throw std::runtime_error(
                            "solve: negative curvature, free block not SPD");
                    throw NoConvergence(
                        "solve: CG stagnated at relative residual " + std::to_string(res / bnorm),
                        res / bnorm, iters);
                }
                const double alpha = rz / pap;
                for (int k = 0; k < nf; ++k) {
                    xf[k] += alpha * p[k];
                    r[k] -= alpha * ap[k];
                }
                ++iters;
                res = std::sqrt(dot_v(r, r));
                if (res <= rel_tol * bnorm) {
                    converged = true;  // verified against the true residual above
                    break;
                }
                for (int k = 0; k < nf; ++k) z[k] = r[k] / diag[k];
                const double rz_new = dot_v(r, z);
                const double beta = rz_new / rz;
                rz = rz_new;
                for (int k = 0; k < nf; ++k) p[k] = z[k] + beta * p[k];
            }
            if (converged) {
                // Confirm with the true residual; restart if the recurrence drifted.
                matvec_free(xf, ap);
                for (int k = 0; k < nf; ++k) r[k] = b[k] - ap[k];
                res = std::sqrt(dot_v(r, r));
                if (res > rel_tol * bnorm && iters < max_iters) converged = false;
            }
            if (!converged && iters >= max_iters)
                throw NoConvergence("solve: CG failed to reach tolerance, relative residual " +
                                        std::to_string(res / bnorm),
                                    res / bnorm, iters);
        }
    }

    for (int k = 0; k < nf; ++k) x[free[k]] = xf[k];
    if (info) {
        info->iterations = iters;
        info->residual = bnorm > 0.0 ? res / bnorm : 0.0;
    }
    return x;
}

void write_coo(const CsrMatrix& A, const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (!fp) throw std::runtime_error("write_coo: cannot open '" + path + "' for writing");
    for (int i = 0; i < A.n; ++i)
        for (int k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k)
            std::fprintf(fp, "%d %d %.17g\n", i, A.col[k], A.val[k]);
    if (std::fclose(fp) != 0) throw std::runtime_error("write_coo: error closing '" + path + "'");
}

}  // namespace ife
