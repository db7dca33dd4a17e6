#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "ife/geometry.hpp"
#include "oracle_utils.hpp"

using namespace ife;

namespace {
const double kR0 = M_PI / 6.28;
}

TEST_CASE("side_of: circle membership and tie-break") {
    CircleLevelSet circle(kR0);
    CHECK(side_of(circle, {0.0, 0.0}) == Region::Minus);
    CHECK(side_of(circle, {1.0, 1.0}) == Region::Plus);
    // exactly on the circle with tol = 0: ties go to Plus
    CHECK(circle.value({kR0, 0.0}) == 0.0);
    CHECK(side_of(circle, {kR0, 0.0}, 0.0) == Region::Plus);
    // tolerance band
    CHECK(side_of(circle, {0.0, 0.0}, 10.0) == Region::Plus);
}

TEST_CASE("level-set gradient: analytic for circles, absent for generic sets") {
    CircleLevelSet circle({0.25, -0.5}, 0.4);
    REQUIRE(circle.has_gradient());
    const Point g = circle.gradient({1.25, -0.5});
    CHECK(g.x == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(g.y == doctest::Approx(0.0).epsilon(1e-15));
    // finite-difference cross-check
    const Point p{0.7, 0.1};
    const double e = 1e-6;
    CHECK(circle.gradient(p).x ==
          doctest::Approx((circle.value({p.x + e, p.y}) - circle.value({p.x - e, p.y})) /
                          (2 * e)).epsilon(1e-9));

    FunctionLevelSet generic([](Point q) { return q.x; });
    CHECK_FALSE(generic.has_gradient());
    CHECK_THROWS_AS((void)generic.gradient({0, 0}), std::logic_error);
}

TEST_CASE("edge_intersection: axis crossing, miss, analytic root") {
    CircleLevelSet half(0.5);
    const auto hit = edge_intersection(half, {0.0, 0.4}, {0.0, 0.6});
    REQUIRE(hit.has_value());
    CHECK(hit->x == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(hit->y == doctest::Approx(0.5).epsilon(1e-14));

    CHECK_FALSE(edge_intersection(half, {0.6, 0.0}, {0.8, 0.0}).has_value());

    CircleLevelSet circle(kR0);
    const Point a{0.4, 0.2}, b{0.6, 0.2};
    const auto root = edge_intersection(circle, a, b);
    REQUIRE(root.has_value());
    const double x_expect = std::sqrt(kR0 * kR0 - 0.04);
    CHECK(root->x == doctest::Approx(x_expect).epsilon(1e-12));
    CHECK(root->y == 0.2);

    // cross-check the analytic path against the generic sampled bisection
    FunctionLevelSet generic([&](Point p) { return circle.value(p); });
    const auto root2 = edge_intersection(generic, a, b);
    REQUIRE(root2.has_value());
    CHECK(root2->x == doctest::Approx(x_expect).epsilon(1e-12));
}

TEST_CASE("edge_intersection: two crossings on one edge reports MultipleRoots") {
    CircleLevelSet bump({0.5, 0.9}, 0.3);  // crosses y = 1 twice for x in (0,1)
    CHECK_THROWS_AS((void)edge_intersection(bump, {0.0, 1.0}, {1.0, 1.0}), MultipleRoots);
    CHECK_THROWS_AS((void)classify_element(bump, {0.0, 0.0, 1.0, 1.0}), HypothesisViolation);
}

TEST_CASE("classify_element: dense sign-scan oracle for a near-corner cut") {
    CircleLevelSet circle(kR0);
    const Rect elem{0.4, 0.3, 0.6, 0.5};

    // Oracle: 101-point sign sampling per edge; an edge is cut iff its
    // samples change sign.
    bool edge_cut[4] = {false, false, false, false};
    for (int k = 0; k < 4; ++k) {
        Point a, b;
        elem.edge_endpoints(k, a, b);
        bool seen_minus = false, seen_plus = false;
        for (int i = 0; i <= 100; ++i) {
            const Point p = a + (i / 100.0) * (b - a);
            (circle.value(p) < 0.0 ? seen_minus : seen_plus) = true;
        }
        edge_cut[k] = seen_minus && seen_plus;
    }
    int oracle_edges = 0;
    for (bool c : edge_cut) oracle_edges += c;
    REQUIRE(oracle_edges == 2);
    const bool adjacent = (edge_cut[0] && edge_cut[3]) || (edge_cut[0] && edge_cut[1]) ||
                          (edge_cut[1] && edge_cut[2]) || (edge_cut[2] && edge_cut[3]);

    const ElementCut cut = classify_element(circle, elem);
    REQUIRE(cut.is_cut());
    CHECK(cut.kind == (adjacent ? CutKind::TypeI : CutKind::TypeII));
    CHECK(edge_cut[cut.edge_d]);
    CHECK(edge_cut[cut.edge_e]);

    const double h2 = elem.width() * elem.width();
    CHECK(std::abs(polygon_area(cut.poly_minus) + polygon_area(cut.poly_plus) - h2) <= 1e-12 * h2);
    CHECK(side_of(circle, polygon_centroid(cut.poly_minus)) == Region::Minus);
    CHECK(side_of(circle, polygon_centroid(cut.poly_plus)) == Region::Plus);
    CHECK(norm(cut.nu_de) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("classify_element: fully inside element is Uncut(Minus)") {
    CircleLevelSet circle(kR0);
    const ElementCut cut = classify_element(circle, {-0.1, -0.1, 0.1, 0.1});
    CHECK_FALSE(cut.is_cut());
    CHECK(cut.region == Region::Minus);
}

TEST_CASE("classify_element: vertex snapping makes grazing cuts uncut") {
    // zero line y = 1e-12 grazes the bottom corners of [0,1]^2
    FunctionLevelSet graze([](Point p) { return p.y - 1e-12; });
    const ElementCut cut = classify_element(graze, {0.0, 0.0, 1.0, 1.0});
    CHECK_FALSE(cut.is_cut());
    CHECK(cut.region == Region::Plus);  // centroid above the line
}

TEST_CASE("classify_element: deterministic bit-identical output") {
    CircleLevelSet circle(kR0);
    const Rect elem{0.4, 0.3, 0.6, 0.5};
    const ElementCut c1 = classify_element(circle, elem);
    const ElementCut c2 = classify_element(circle, elem);
    CHECK(std::memcmp(&c1.D, &c2.D, sizeof(Point)) == 0);
    CHECK(std::memcmp(&c1.E, &c2.E, sizeof(Point)) == 0);
    CHECK(std::memcmp(&c1.nu_de, &c2.nu_de, sizeof(Point)) == 0);
    CHECK(c1.d == c2.d);
    CHECK(c1.e == c2.e);
    REQUIRE(c1.poly_minus.size() == c2.poly_minus.size());
    CHECK(std::memcmp(c1.poly_minus.data(), c2.poly_minus.data(),
                      c1.poly_minus.size() * sizeof(Point)) == 0);
}

TEST_CASE("cut_from_edge_points: polygon shapes and normal orientation") {
    const Rect unit{0.0, 0.0, 1.0, 1.0};

    // Type II: opposite edges -> two quadrilaterals
    ElementCut c2 = cut_from_edge_points(unit, 0, 0.3, 2, 0.3, Region::Minus);
    CHECK(c2.kind == CutKind::TypeII);
    CHECK(c2.poly_minus.size() == 4);
    CHECK(c2.poly_plus.size() == 4);
    CHECK(oracle::in_convex_polygon(c2.poly_minus, {1e-9, 1e-9}));  // A1 on the minus side
    CHECK(dot(c2.nu_de, polygon_centroid(c2.poly_plus) - polygon_centroid(c2.poly_minus)) > 0.0);

    // Type I: adjacent edges -> triangle + pentagon
    ElementCut c1 = cut_from_edge_points(unit, 0, 0.6, 1, 0.5, Region::Plus);
    CHECK(c1.kind == CutKind::TypeI);
    const auto& tri = (c1.poly_minus.size() == 3) ? c1.poly_minus : c1.poly_plus;
    const auto& pent = (c1.poly_minus.size() == 3) ? c1.poly_plus : c1.poly_minus;
    CHECK(tri.size() == 3);
    CHECK(pent.size() == 5);
    CHECK(oracle::in_convex_polygon(pent, {1e-9, 1e-9}));
    CHECK(std::abs(polygon_area(tri) + polygon_area(pent) - 1.0) <= 1e-12);
}

TEST_CASE("benchmark circle: subelement centroids sit on the correct side for N >= 16") {
    CircleLevelSet circle(kR0);
    for (int N : {16, 32}) {
        const double h = 2.0 / N;
        int cuts = 0;
        for (int j = 0; j < N; ++j)
            for (int i = 0; i < N; ++i) {
                const Rect elem{-1.0 + i * h, -1.0 + j * h, -1.0 + (i + 1) * h,
                                -1.0 + (j + 1) * h};
                const ElementCut cut = classify_element(circle, elem);
                if (!cut.is_cut()) continue;
                ++cuts;
                REQUIRE(side_of(circle, polygon_centroid(cut.poly_minus)) == Region::Minus);
                REQUIRE(side_of(circle, polygon_centroid(cut.poly_plus)) == Region::Plus);
            }
        CHECK(cuts >= 4 * N / 4);
    }
}

TEST_CASE("random circles: classification invariants hold on an N=16 mesh") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> uc(-0.3, 0.3), ur(0.2, 0.8);
    const int N = 16;
    const double h = 2.0 / N;
    const double snap = 1e-10;
    long cut_count = 0, violations = 0;

    for (int trial = 0; trial < 1000; ++trial) {
        CircleLevelSet circle({uc(rng), uc(rng)}, ur(rng));
        for (int j = 0; j < N; ++j)
            for (int i = 0; i < N; ++i) {
                const Rect elem{-1.0 + i * h, -1.0 + j * h, -1.0 + (i + 1) * h,
                                -1.0 + (j + 1) * h};
                ElementCut cut;
                try {
                    cut = classify_element(circle, elem, snap);
                } catch (const HypothesisViolation&) {
                    ++violations;  // genuine small-h hypothesis failures are reported
                    continue;
                }
                if (!cut.is_cut()) continue;
                ++cut_count;
                REQUIRE(cut.edge_d != cut.edge_e);
                REQUIRE(cut.d > snap);
                REQUIRE(cut.d < 1.0 - snap);
                REQUIRE(cut.e > snap);
                REQUIRE(cut.e < 1.0 - snap);
                const double sum = polygon_area(cut.poly_minus) + polygon_area(cut.poly_plus);
                REQUIRE(std::abs(sum - h * h) <= 1e-12 * h * h);
                REQUIRE(norm(cut.nu_de) == doctest::Approx(1.0).epsilon(1e-12));
            }
    }
    CHECK(cut_count > 10000);            // the sample really exercises cut elements
    CHECK(violations < cut_count / 10);  // hypothesis failures stay a small minority
}
