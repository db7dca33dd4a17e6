#include "ife/element.hpp"

#include <algorithm>
#include <cmath>

namespace ife {

namespace {

// Dense LU with partial pivoting for the local 4x4 / 8x8 systems, solved in
// element-local coordinates on [0,1]^2 so conditioning is h-independent.
// One step of iterative refinement keeps the DOF residual near machine
// precision even for extreme coefficient ratios.
template <int N>
struct DenseLU {
    double lu[N][N];
    double a0[N][N];
    int piv[N];

    void factor(const double m[N][N]) {
        double max_entry = 0.0;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                lu[i][j] = a0[i][j] = m[i][j];
                max_entry = std::max(max_entry, std::abs(m[i][j]));
            }
        for (int k = 0; k < N; ++k) {
            int p = k;
            for (int i = k + 1; i < N; ++i)
                if (std::abs(lu[i][k]) > std::abs(lu[p][k])) p = i;
            if (std::abs(lu[p][k]) < 1e-13 * max_entry)
                throw SingularLocalSystem("local DOF system is numerically singular");
            piv[k] = p;
            if (p != k)
                for (int j = 0; j < N; ++j) std::swap(lu[k][j], lu[p][j]);
            for (int i = k + 1; i < N; ++i) {
                lu[i][k] /= lu[k][k];
                for (int j = k + 1; j < N; ++j) lu[i][j] -= lu[i][k] * lu[k][j];
            }
        }
    }

    void substitute(const double b[N], double x[N]) const {
        for (int i = 0; i < N; ++i) x[i] = b[i];
        for (int k = 0; k < N; ++k) std::swap(x[k], x[piv[k]]);  // x = P b
        for (int i = 1; i < N; ++i)
            for (int j = 0; j < i; ++j) x[i] -= lu[i][j] * x[j];
        for (int i = N - 1; i >= 0; --i) {
            for (int j = i + 1; j < N; ++j) x[i] -= lu[i][j] * x[j];
            x[i] /= lu[i][i];
        }
    }

    void solve(const double b[N], double x[N]) const {
        substitute(b, x);
        double r[N], dx[N];
        for (int i = 0; i < N; ++i) {
            r[i] = b[i];
            for (int j = 0; j < N; ++j) r[i] -= a0[i][j] * x[j];
        }
        substitute(r, dx);
        for (int i = 0; i < N; ++i) x[i] += dx[i];
    }
};

// Monomial basis (1, x, y, x^2 - y^2) helpers.
std::array<double, 4> mono_at(Point p) {
    return {1.0, p.x, p.y, p.x * p.x - p.y * p.y};
}

// Exact means of the monomials along segment p -> q.
std::array<double, 4> mono_mean(Point p, Point q) {
    const double mx = 0.5 * (p.x + q.x);
    const double my = 0.5 * (p.y + q.y);
    const double mx2 = (p.x * p.x + p.x * q.x + q.x * q.x) / 3.0;
    const double my2 = (p.y * p.y + p.y * q.y + q.y * q.y) / 3.0;
    return {1.0, mx, my, mx2 - my2};
}

// dir . grad of each monomial at p.
std::array<double, 4> mono_dir_grad(Point p, Point dir) {
    return {0.0, dir.x, dir.y, 2.0 * (dir.x * p.x - dir.y * p.y)};
}

// Coefficients on [0,1]^2 mapped back to physical coordinates.
RQ1Poly to_physical(const double chat[4], const Rect& elem) {
    const double h = elem.width();
    const double x0 = elem.x0, y0 = elem.y0;
    RQ1Poly c;
    c.c4 = chat[3] / (h * h);
    c.c2 = chat[1] / h - 2.0 * chat[3] * x0 / (h * h);
    c.c3 = chat[2] / h + 2.0 * chat[3] * y0 / (h * h);
    c.c1 = chat[0] - chat[1] * x0 / h - chat[2] * y0 / h + chat[3] * (x0 * x0 - y0 * y0) / (h * h);
    return c;
}

const Rect kUnit{0.0, 0.0, 1.0, 1.0};

Point to_local(Point p, const Rect& elem) {
    const double h = elem.width();
    return {(p.x - elem.x0) / h, (p.y - elem.y0) / h};
}

}  // namespace

std::array<RQ1Poly, 4> standard_basis(const Rect& elem, DofKind kind) {
    if (!(elem.width() > 0.0) || std::abs(elem.height() - elem.width()) > 1e-12 * elem.width())
        throw std::invalid_argument("standard_basis: element must be a nondegenerate square");
    double m[4][4];
    for (int k = 0; k < 4; ++k) {
        Point a, b;
        kUnit.edge_endpoints(k, a, b);
        const auto row = (kind == DofKind::Midpoint) ? mono_at(kUnit.edge_midpoint(k))
                                                     : mono_mean(a, b);
        for (int j = 0; j < 4; ++j) m[k][j] = row[j];
    }
    DenseLU<4> lu;
    lu.factor(m);
    std::array<RQ1Poly, 4> basis;
    for (int j = 0; j < 4; ++j) {
        double rhs[4] = {0.0, 0.0, 0.0, 0.0};
        rhs[j] = 1.0;
        double chat[4];
        lu.solve(rhs, chat);
        basis[j] = to_physical(chat, elem);
    }
    return basis;
}

std::array<PiecewiseRQ1, 4> ife_basis(const Rect& elem, const ElementCut& cut, Coefficient beta,
                                      DofKind kind) {
    if (!cut.is_cut()) throw std::invalid_argument("ife_basis: element is not cut");
    if (!(beta.beta_minus > 0.0) || !(beta.beta_plus > 0.0))
        throw std::invalid_argument("ife_basis: coefficients must be positive");

    const Point Dh = to_local(cut.D, elem);
    const Point Eh = to_local(cut.E, elem);
    const Point nu = cut.nu_de;  // directions are scale-invariant

    auto side_local = [&](Point p) {
        return dot(p - Dh, nu) > 0.0 ? Region::Plus : Region::Minus;
    };
    auto col_base = [](Region r) { return r == Region::Minus ? 0 : 4; };

    double m[8][8] = {};

    // Rows 0..3: edge DOF constraints, piecewise on the two cut edges.
    for (int k = 0; k < 4; ++k) {
        Point a, b;
        kUnit.edge_endpoints(k, a, b);
        if (kind == DofKind::Midpoint) {
            const Point mid = kUnit.edge_midpoint(k);
            const auto row = mono_at(mid);
            const int off = col_base(side_local(mid));
            for (int j = 0; j < 4; ++j) m[k][off + j] = row[j];
            continue;
        }
        double split = -1.0;
        if (k == cut.edge_d) split = cut.d;
        if (k == cut.edge_e) split = cut.e;
        if (split < 0.0) {
            const auto row = mono_mean(a, b);
            const int off = col_base(side_local(0.5 * (a + b)));
            for (int j = 0; j < 4; ++j) m[k][off + j] = row[j];
        } else {
            const Point c = a + split * (b - a);
            const Point pieces[2][2] = {{a, c}, {c, b}};
            const double lens[2] = {split, 1.0 - split};  // unit edge length
            for (int s = 0; s < 2; ++s) {
                const auto row = mono_mean(pieces[s][0], pieces[s][1]);
                const int off = col_base(side_local(0.5 * (pieces[s][0] + pieces[s][1])));
                for (int j = 0; j < 4; ++j) m[k][off + j] += lens[s] * row[j];
            }
        }
    }

    // Rows 4,5: value continuity at D and E.
    for (int r = 0; r < 2; ++r) {
        const auto v = mono_at(r == 0 ? Dh : Eh);
        for (int j = 0; j < 4; ++j) {
            m[4 + r][j] = -v[j];
            m[4 + r][4 + j] = v[j];
        }
    }

    // Row 6: matched second-order coefficient.
    m[6][3] = -1.0;
    m[6][7] = 1.0;

    // Row 7: flux-jump integral along DE. The jump integrand is linear on
    // the segment, so the integral is |DE| times the midpoint value; the
    // length is folded into the (unnormalized) normal.
    {
        const double len = norm(Eh - Dh);
        const Point nlen{len * nu.x, len * nu.y};
        const auto g = mono_dir_grad(0.5 * (Dh + Eh), nlen);
        for (int j = 0; j < 4; ++j) {
            m[7][j] = -beta.beta_minus * g[j];
            m[7][4 + j] = beta.beta_plus * g[j];
        }
    }

    DenseLU<8> lu;
    lu.factor(m);

    std::array<PiecewiseRQ1, 4> basis;
    for (int j = 0; j < 4; ++j) {
        double rhs[8] = {};
        rhs[j] = 1.0;
        double chat[8];
        lu.solve(rhs, chat);
        PiecewiseRQ1 f;
        f.minus = to_physical(chat, elem);
        f.plus = to_physical(chat + 4, elem);
        f.cut = true;
        f.D = cut.D;
        f.E = cut.E;
        f.nu = cut.nu_de;
        basis[j] = f;
    }
    return basis;
}

std::array<PiecewiseRQ1, 4> element_basis(const Rect& elem, const ElementCut& cut,
                                          Coefficient beta, DofKind kind) {
    if (cut.is_cut()) return ife_basis(elem, cut, beta, kind);
    const auto std_basis = standard_basis(elem, kind);
    std::array<PiecewiseRQ1, 4> basis;
    for (int j = 0; j < 4; ++j) {
        basis[j].minus = std_basis[j];
        basis[j].plus = std_basis[j];
        basis[j].cut = false;
    }
    return basis;
}

namespace {

double segment_mean(const RQ1Poly& c, Point p, Point q) {
    const auto mm = mono_mean(p, q);
    return c.c1 * mm[0] + c.c2 * mm[1] + c.c3 * mm[2] + c.c4 * mm[3];
}

}  // namespace

double edge_mean(const PiecewiseRQ1& f, Point a, Point b, const std::optional<Point>& cut_point) {
    const double total = norm(b - a);
    if (!(total > 0.0)) throw std::invalid_argument("edge_mean: degenerate edge");
    Point pieces[2][2] = {{a, b}, {}};
    int n_pieces = 1;
    if (cut_point) {
        pieces[0][1] = *cut_point;
        pieces[1][0] = *cut_point;
        pieces[1][1] = b;
        n_pieces = 2;
    }
    double acc = 0.0;
    for (int s = 0; s < n_pieces; ++s) {
        const Point p = pieces[s][0], q = pieces[s][1];
        const double len = norm(q - p);
        if (len == 0.0) continue;
        const RQ1Poly& poly = f.piece(f.side(0.5 * (p + q)));
        acc += len * segment_mean(poly, p, q);
    }
    return acc / total;
}

}  // namespace ife
