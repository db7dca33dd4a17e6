#include "ife/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace ife {

double norm(Point p) { return std::sqrt(p.x * p.x + p.y * p.y); }

void Rect::edge_endpoints(int k, Point& a, Point& b) const {
    switch (k) {
        case 0: a = {x0, y0}; b = {x1, y0}; return;  // bottom
        case 1: a = {x1, y0}; b = {x1, y1}; return;  // right
        case 2: a = {x1, y1}; b = {x0, y1}; return;  // top
        case 3: a = {x0, y1}; b = {x0, y0}; return;  // left
        default: throw std::out_of_range("Rect::edge_endpoints: k");
    }
}

Point Rect::edge_midpoint(int k) const {
    Point a, b;
    edge_endpoints(k, a, b);
    return 0.5 * (a + b);
}

namespace {

bool is_minus(double v) { return v < 0.0; }  // value == 0 counts as Plus

// Bisection of a bracketed sign change to 1e-14 parametric width.
double bisect_root(const LevelSet& ls, Point a, Point b, double lo, double hi) {
    const bool lo_minus = is_minus(ls.value(a + lo * (b - a)));
    while (hi - lo > 1e-14) {
        const double mid = 0.5 * (lo + hi);
        if (is_minus(ls.value(a + mid * (b - a))) == lo_minus)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

int LevelSet::edge_roots(Point a, Point b, double t[2]) const {
    constexpr int kSamples = 64;
    bool prev = is_minus(value(a));
    int count = 0;
    for (int i = 1; i <= kSamples; ++i) {
        const double ti = static_cast<double>(i) / kSamples;
        const bool cur = is_minus(value(a + ti * (b - a)));
        if (cur != prev) {
            const double lo = static_cast<double>(i - 1) / kSamples;
            const double root = bisect_root(*this, a, b, lo, ti);
            if (root > 0.0 && root < 1.0) {
                if (count < 2) t[count] = root;
                ++count;
            }
            prev = cur;
        }
    }
    return count;
}

double CircleLevelSet::value(Point p) const {
    const double dx = p.x - center_.x;
    const double dy = p.y - center_.y;
    return dx * dx + dy * dy - radius_ * radius_;
}

int CircleLevelSet::edge_roots(Point a, Point b, double t[2]) const {
    const Point d = b - a;
    const Point ca = a - center_;
    const double qa = dot(d, d);
    const double qb = 2.0 * dot(d, ca);
    const double qc = dot(ca, ca) - radius_ * radius_;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc <= 0.0) return 0;  // no transversal crossing (tangency included)
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (qb + std::copysign(sq, qb));
    double r1 = q / qa;
    double r2 = (q != 0.0) ? qc / q : -r1;
    if (r1 > r2) std::swap(r1, r2);
    int count = 0;
    for (double r : {r1, r2})
        if (r > 0.0 && r < 1.0) {
            if (count < 2) t[count] = r;
            ++count;
        }
    return count;
}

Region side_of(const LevelSet& ls, Point p, double tol) {
    return ls.value(p) < -tol ? Region::Minus : Region::Plus;
}

namespace {

// Root parameter on the segment, computed in a canonical direction so that
// the two elements sharing an edge obtain bit-identical cut points.
std::optional<double> edge_root_param(const LevelSet& ls, Point a, Point b) {
    const bool flip = (b.x < a.x) || (b.x == a.x && b.y < a.y);
    if (flip) std::swap(a, b);
    double t[2];
    const int count = ls.edge_roots(a, b, t);
    if (count >= 2) throw MultipleRoots("two interface crossings on one element edge");
    if (count == 0) return std::nullopt;
    return flip ? 1.0 - t[0] : t[0];
}

}  // namespace

std::optional<Point> edge_intersection(const LevelSet& ls, Point a, Point b) {
    const auto t = edge_root_param(ls, a, b);
    if (!t) return std::nullopt;
    return a + *t * (b - a);
}

double polygon_area(const std::vector<Point>& poly) {
    double s = 0.0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) s += cross(poly[i], poly[(i + 1) % n]);
    return 0.5 * s;
}

Point polygon_centroid(const std::vector<Point>& poly) {
    double area6 = 0.0;
    Point c{0.0, 0.0};
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& p = poly[i];
        const Point& q = poly[(i + 1) % n];
        const double w = cross(p, q);
        area6 += w;
        c = c + w * (p + q);
    }
    area6 *= 3.0;
    return {c.x / area6, c.y / area6};
}

namespace {

Point rect_corner(const Rect& elem, int m) {
    switch (m & 3) {
        case 0: return {elem.x0, elem.y0};
        case 1: return {elem.x1, elem.y0};
        case 2: return {elem.x1, elem.y1};
        default: return {elem.x0, elem.y1};
    }
}

Point point_on_edge(const Rect& elem, int k, double t) {
    Point a, b;
    elem.edge_endpoints(k, a, b);
    return a + t * (b - a);
}

// Split the square boundary at the two cut points and close each chain with
// the segment DE. Both polygons come out CCW; polygon B always contains the
// corner A1.
struct RawCut {
    CutKind kind;
    Point D, E;
    int kd, ke;
    double td, te;
    std::vector<Point> poly_a, poly_b;
};

RawCut build_raw_cut(const Rect& elem, int ka, double ta, int kb, double tb) {
    if (ka == kb) throw HypothesisViolation("both cut points on the same edge");
    RawCut rc;
    rc.kd = ka;
    rc.td = ta;
    rc.ke = kb;
    rc.te = tb;
    if (rc.kd > rc.ke) {
        std::swap(rc.kd, rc.ke);
        std::swap(rc.td, rc.te);
    }
    rc.D = point_on_edge(elem, rc.kd, rc.td);
    rc.E = point_on_edge(elem, rc.ke, rc.te);
    rc.kind = (rc.ke - rc.kd == 2) ? CutKind::TypeII : CutKind::TypeI;

    rc.poly_a.push_back(rc.D);
    for (int m = rc.kd + 1; m <= rc.ke; ++m) rc.poly_a.push_back(rect_corner(elem, m));
    rc.poly_a.push_back(rc.E);

    rc.poly_b.push_back(rc.E);
    for (int m = rc.ke + 1; m <= rc.kd + 4; ++m) rc.poly_b.push_back(rect_corner(elem, m));
    rc.poly_b.push_back(rc.D);
    return rc;
}

ElementCut finish_cut(RawCut&& rc, Region region_a) {
    ElementCut cut;
    cut.kind = rc.kind;
    cut.D = rc.D;
    cut.E = rc.E;
    cut.edge_d = rc.kd;
    cut.edge_e = rc.ke;
    cut.d = rc.td;
    cut.e = rc.te;
    if (region_a == Region::Minus) {
        cut.poly_minus = std::move(rc.poly_a);
        cut.poly_plus = std::move(rc.poly_b);
    } else {
        cut.poly_minus = std::move(rc.poly_b);
        cut.poly_plus = std::move(rc.poly_a);
    }

    const Point tangent = rc.E - rc.D;
    const double len = norm(tangent);
    Point nu{-tangent.y / len, tangent.x / len};
    const Point toward_plus = polygon_centroid(cut.poly_plus) - polygon_centroid(cut.poly_minus);
    if (dot(nu, toward_plus) < 0.0) nu = {-nu.x, -nu.y};
    cut.nu_de = nu;
    return cut;
}

}  // namespace

ElementCut classify_element(const LevelSet& ls, const Rect& elem, double snap_tol) {
    const double h = elem.width();
    if (std::abs(elem.height() - h) > 1e-12 * h)
        throw std::invalid_argument("classify_element: element is not square");

    int hit_edge[4];
    double hit_t[4];
    int hits = 0;
    for (int k = 0; k < 4; ++k) {
        Point a, b;
        elem.edge_endpoints(k, a, b);
        const auto t = edge_root_param(ls, a, b);
        if (!t) continue;
        if (*t <= snap_tol || *t >= 1.0 - snap_tol) continue;  // snapped to a vertex
        if (hits < 4) {
            hit_edge[hits] = k;
            hit_t[hits] = *t;
        }
        ++hits;
    }

    if (hits > 2) throw HypothesisViolation("more than two interface crossings on one element");

    if (hits <= 1) {
        ElementCut cut;
        cut.kind = CutKind::Uncut;
        cut.region = side_of(ls, elem.center(), 0.0);
        return cut;
    }

    RawCut rc = build_raw_cut(elem, hit_edge[0], hit_t[0], hit_edge[1], hit_t[1]);
    // Region of each subelement from the element corners it contains: under
    // H1/H2 the chord DE and the interface separate the corners identically,
    // which stays robust on coarse meshes where a polygon centroid can land
    // inside the lens between chord and curve.
    auto corner_region = [&](int from, int to) {
        Region r = Region::Plus;
        bool have = false;
        for (int m = from; m <= to; ++m) {
            const Region s = side_of(ls, rect_corner(elem, m), 0.0);
            if (have && s != r)
                throw HypothesisViolation("corner signs inconsistent within one subelement");
            r = s;
            have = true;
        }
        return r;
    };
    const Region ra = corner_region(rc.kd + 1, rc.ke);
    const Region rb = corner_region(rc.ke + 1, rc.kd + 4);
    if (ra == rb)
        throw HypothesisViolation("subelements fall on the same side of the interface");
    return finish_cut(std::move(rc), ra);
}

ElementCut cut_from_edge_points(const Rect& elem, int edge_a, double ta, int edge_b, double tb,
                                Region region_at_a1) {
    if (ta <= 0.0 || ta >= 1.0 || tb <= 0.0 || tb >= 1.0)
        throw std::invalid_argument("cut_from_edge_points: parameters must lie in (0,1)");
    RawCut rc = build_raw_cut(elem, edge_a, ta, edge_b, tb);
    const Region region_a = (region_at_a1 == Region::Minus) ? Region::Plus : Region::Minus;
    return finish_cut(std::move(rc), region_a);
}

}  // namespace ife
