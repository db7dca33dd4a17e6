#include "ife/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace ife {

namespace {

// Newton iteration on the Legendre recurrence; nodes symmetric about 0.
void compute_gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double xi = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = xi;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (xi * p1 - p0) / (xi * xi - 1.0);
            const double dx = p1 / pp;
            xi -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        x[i] = -xi;
        x[n - 1 - i] = xi;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - xi * xi) * pp * pp);
    }
    if (n == 1) {
        x[0] = 0.0;
        w[0] = 2.0;
    }
}

const std::pair<std::vector<double>, std::vector<double>>& cached_gl(int n) {
    static std::mutex mtx;
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) {
        std::pair<std::vector<double>, std::vector<double>> nw;
        compute_gauss_legendre(n, nw.first, nw.second);
        it = cache.emplace(n, std::move(nw)).first;
    }
    return it->second;
}

}  // namespace

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    const auto& nw = cached_gl(n);
    nodes = nw.first;
    weights = nw.second;
}

QuadRule gauss_rect(const Rect& elem, int n) {
    const auto& [x, w] = cached_gl(n);
    QuadRule rule;
    rule.points.reserve(n * n);
    rule.weights.reserve(n * n);
    const double cx = 0.5 * (elem.x0 + elem.x1), hx = 0.5 * elem.width();
    const double cy = 0.5 * (elem.y0 + elem.y1), hy = 0.5 * elem.height();
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            rule.points.push_back({cx + hx * x[i], cy + hy * x[j]});
            rule.weights.push_back(hx * hy * w[i] * w[j]);
        }
    return rule;
}

QuadRule gauss_rect_9(const Rect& elem) { return gauss_rect(elem, 3); }

QuadRule gauss_segment(Point a, Point b, int n) {
    if (n < 1) throw std::invalid_argument("gauss_segment: n must be >= 1");
    const auto& [x, w] = cached_gl(n);
    const double half_len = 0.5 * norm(b - a);
    const Point mid = 0.5 * (a + b);
    const Point half = 0.5 * (b - a);
    QuadRule rule;
    rule.points.reserve(n);
    rule.weights.reserve(n);
    for (int i = 0; i < n; ++i) {
        rule.points.push_back(mid + x[i] * half);
        rule.weights.push_back(half_len * w[i]);
    }
    return rule;
}

namespace {

// Conical-product Gauss rule on a triangle, exact for total degree <= deg.
// Map (u,v) in [0,1]^2 to (1-u) V0 + u (1-v) V1 + u v V2 with Jacobian
// 2 |T| u, so all weights stay positive.
void append_triangle_rule(QuadRule& rule, Point v0, Point v1, Point v2, int deg) {
    const double area2 = cross(v1 - v0, v2 - v0);  // signed, CCW positive
    const int nu = (deg + 3) / 2;                  // u-degree <= deg + 1
    const int nv = (deg + 2) / 2;                  // v-degree <= deg
    const auto& [xu, wu] = cached_gl(nu);
    const auto& [xv, wv] = cached_gl(nv);
    for (int i = 0; i < nu; ++i) {
        const double u = 0.5 * (xu[i] + 1.0);
        for (int j = 0; j < nv; ++j) {
            const double v = 0.5 * (xv[j] + 1.0);
            const Point p = (1.0 - u) * v0 + (u * (1.0 - v)) * v1 + (u * v) * v2;
            rule.points.push_back(p);
            rule.weights.push_back(area2 * u * 0.25 * wu[i] * wv[j]);
        }
    }
}

}  // namespace

QuadRule polygon_quad(const std::vector<Point>& poly, int degree) {
    if (poly.size() < 3) throw std::invalid_argument("polygon_quad: need at least 3 vertices");
    const double area = polygon_area(poly);
    const Point c = polygon_centroid(poly);
    QuadRule rule;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = poly[i];
        const Point& b = poly[(i + 1) % n];
        const double tri_area = 0.5 * cross(a - c, b - c);
        if (tri_area < 1e-14 * area) continue;  // degenerate fan sliver, drop
        append_triangle_rule(rule, c, a, b, degree);
    }
    return rule;
}

std::vector<Point> sample_grid_49(const Rect& elem) {
    std::vector<Point> pts;
    pts.reserve(49);
    for (int j = 0; j <= 6; ++j)
        for (int i = 0; i <= 6; ++i)
            pts.push_back({elem.x0 + elem.width() * i / 6.0, elem.y0 + elem.height() * j / 6.0});
    return pts;
}

}  // namespace ife
