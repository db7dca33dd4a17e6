#pragma once

// Level-set interface geometry on axis-aligned Cartesian elements:
// sign queries, edge intersections, and classification of elements into
// uncut / Type I / Type II cuts with their polygonal subelements.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ife {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
double norm(Point p);

// Axis-aligned rectangle; mesh elements are squares (width == height).
struct Rect {
    double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() * height(); }
    Point center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }

    // Directed edge k = 0..3 (gamma_{k+1}): bottom, right, top, left.
    // Directions chain into a CCW boundary loop.
    void edge_endpoints(int k, Point& a, Point& b) const;
    Point edge_midpoint(int k) const;
};

enum class Region { Minus, Plus };

// Raised when an element/edge configuration breaks the small-mesh
// hypotheses (H1/H2): callers must refuse the mesh level.
struct HypothesisViolation : std::runtime_error {
    explicit HypothesisViolation(const std::string& msg) : std::runtime_error(msg) {}
};

// Two interface crossings on a single element edge.
struct MultipleRoots : HypothesisViolation {
    explicit MultipleRoots(const std::string& msg) : HypothesisViolation(msg) {}
};

// Scalar field whose zero curve is the material interface; negative in
// the minus region, positive in the plus region.
class LevelSet {
public:
    virtual ~LevelSet() = default;

    virtual double value(Point p) const = 0;

    // Simple roots of value() along segment a->b, as parameters strictly in
    // (0,1). Returns the number of crossings detected; only the first two are
    // stored in t. The default implementation samples the segment and bisects
    // each sign change; subclasses with closed-form roots should override.
    virtual int edge_roots(Point a, Point b, double t[2]) const;

    // Analytic gradient of value(), when available.
    virtual bool has_gradient() const { return false; }
    virtual Point gradient(Point) const {
        throw std::logic_error("LevelSet::gradient: not provided");
    }
};

class CircleLevelSet final : public LevelSet {
public:
    CircleLevelSet(Point center, double radius) : center_(center), radius_(radius) {}
    explicit CircleLevelSet(double radius) : CircleLevelSet(Point{0.0, 0.0}, radius) {}

    double value(Point p) const override;
    int edge_roots(Point a, Point b, double t[2]) const override;
    bool has_gradient() const override { return true; }
    Point gradient(Point p) const override {
        return {2.0 * (p.x - center_.x), 2.0 * (p.y - center_.y)};
    }

    Point center() const { return center_; }
    double radius() const { return radius_; }

private:
    Point center_;
    double radius_;
};

// Arbitrary level set given by a callable; uses the sampled root finder.
class FunctionLevelSet final : public LevelSet {
public:
    template <class F>
    explicit FunctionLevelSet(F&& f) : f_(std::forward<F>(f)) {}
    double value(Point p) const override { return f_(p); }

private:
    std::function<double(Point)> f_;
};

enum class CutKind { Uncut, TypeI, TypeII };

// Classification of one mesh element. For cut elements the straight
// segment DE splits the square into poly_minus / poly_plus (both CCW);
// nu_de is the unit normal of DE pointing from poly_minus into poly_plus.
struct ElementCut {
    CutKind kind = CutKind::Uncut;
    Region region = Region::Plus;  // whole-element region when kind == Uncut

    Point D{}, E{};
    int edge_d = -1, edge_e = -1;  // local edge indices 0..3, edge_d < edge_e
    double d = 0.0, e = 0.0;       // parameters along the directed local edges
    std::vector<Point> poly_minus, poly_plus;
    Point nu_de{};

    bool is_cut() const { return kind != CutKind::Uncut; }
};

// Region membership with tolerance band; ties (|value| <= tol) go to Plus.
Region side_of(const LevelSet& ls, Point p, double tol = 0.0);

// Single transversal crossing of the interface with segment a->b, or
// nullopt. Throws MultipleRoots when two crossings are detected.
std::optional<Point> edge_intersection(const LevelSet& ls, Point a, Point b);

// Classify a square element against the level set. Intersections within
// snap_tol (relative to h) of a vertex are snapped away; zero or one
// surviving intersection makes the element uncut.
ElementCut classify_element(const LevelSet& ls, const Rect& elem, double snap_tol = 1e-10);

// Build a cut from explicit edge parameters (used for synthetic cuts).
// ta/tb are parameters along the directed edges edge_a/edge_b, and
// region_at_a1 names the region of the subelement containing vertex A1.
ElementCut cut_from_edge_points(const Rect& elem, int edge_a, double ta, int edge_b,
                                double tb, Region region_at_a1);

double polygon_area(const std::vector<Point>& poly);
Point polygon_centroid(const std::vector<Point>& poly);

}  // namespace ife
