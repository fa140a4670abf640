#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "shadowing/errors.hpp"
#include "shadowing/path.hpp"
#include "shadowing/space.hpp"

namespace sh = shadowing;

namespace {
bool near(double a, double b, double tol = 1e-12) { return std::abs(a - b) <= tol; }
} // namespace

TEST_CASE("circle reduction and arc metric") {
    CHECK(near(sh::circle_reduce(-0.3), 0.7));
    CHECK(near(sh::circle_reduce(1.0), 0.0));
    CHECK(near(sh::circle_reduce(2.25), 0.25));
    CHECK(near(sh::circle_dist(0.1, 0.9), 0.2));
    CHECK(near(sh::circle_dist(7.25, 0.5), 0.25));
    CHECK(near(sh::circle_dist(0.5, 0.5), 0.0));

    auto c = sh::space::circle();
    CHECK(near(c.dist(sh::make_pt(0.1), sh::make_pt(0.9)), 0.2));
    // Lifts three apart are the same circle point.
    CHECK(near(c.dist(sh::make_pt(3.25), sh::make_pt(0.25)), 0.0));
    // Segment lengths are lift differences, not reduced mod 1: paths may wind.
    CHECK(near(c.segment_length(sh::make_pt(0.0), sh::make_pt(1.25)), 1.25));
    CHECK(c.contains(sh::make_pt(17.3)));
    CHECK_FALSE(c.contains(sh::make_pt(sh::cplx{0.3, 0.5})));
}

TEST_CASE("discrete space has the 0/1 metric") {
    auto d = sh::space::discrete(3);
    CHECK(d.elements() == 3);
    CHECK(near(d.dist(sh::make_pt(1.0), sh::make_pt(1.0)), 0.0));
    CHECK(near(d.dist(sh::make_pt(0.0), sh::make_pt(2.0)), 1.0));
    CHECK(d.contains(sh::make_pt(2.0)));
    CHECK_FALSE(d.contains(sh::make_pt(3.0)));
    CHECK_FALSE(d.contains(sh::make_pt(0.5)));
    CHECK_THROWS_AS(sh::space::discrete(0), sh::input_error);
}

TEST_CASE("euclidean disks and annuli") {
    auto disk = sh::space::disk(sh::cplx{1.0, 0.0}, 2.0);
    CHECK(near(disk.dist(sh::make_pt(sh::cplx{0.0, 0.0}), sh::make_pt(sh::cplx{0.0, 1.0})), 1.0));
    CHECK(disk.contains(sh::make_pt(sh::cplx{2.5, 0.0})));
    CHECK_FALSE(disk.contains(sh::make_pt(sh::cplx{3.5, 0.0})));

    auto ann = sh::space::disk(sh::cplx{0.0, 0.0}, 2.0, 0.5);
    CHECK(ann.contains(sh::make_pt(sh::cplx{1.0, 0.0})));
    CHECK_FALSE(ann.contains(sh::make_pt(sh::cplx{0.2, 0.0})));
    CHECK(near(ann.segment_length(sh::make_pt(sh::cplx{0.5, 0.0}), sh::make_pt(sh::cplx{2.0, 0.0})), 1.5));

    CHECK_THROWS_AS(sh::space::disk(sh::cplx{0.0, 0.0}, 0.0), sh::input_error);
    CHECK_THROWS_AS(sh::space::disk(sh::cplx{0.0, 0.0}, 1.0, 1.5), sh::input_error);
}

TEST_CASE("poincare metric matches the closed form on radial chords") {
    // dist(center, center + R*r) = 2*atanh(r) = log((1+r)/(1-r)).
    auto h = sh::space::disk(sh::cplx{0.0, 0.0}, 1.0, 0.0, sh::metric_kind::poincare);
    auto closed = [](double r) { return std::log((1.0 + r) / (1.0 - r)); };
    for (double r : {0.1, 0.5, 0.9}) {
        auto a = sh::make_pt(sh::cplx{0.0, 0.0});
        auto b = sh::make_pt(sh::cplx{r, 0.0});
        CHECK(near(h.dist(a, b), closed(r)));
        // Radial euclidean chords are geodesics, so the quadrature length
        // agrees with the distance.
        CHECK(near(h.segment_length(a, b), closed(r)));
    }
    // Scale invariance: the metric only sees z/R.
    auto h2 = sh::space::disk(sh::cplx{1.0, 1.0}, 2.0, 0.0, sh::metric_kind::poincare);
    CHECK(near(h2.dist(sh::make_pt(sh::cplx{1.0, 1.0}), sh::make_pt(sh::cplx{2.0, 1.0})), closed(0.5)));
    // Generic chords are at least as long as the geodesic distance.
    auto a = sh::make_pt(sh::cplx{0.3, 0.4});
    auto b = sh::make_pt(sh::cplx{-0.5, 0.2});
    CHECK(h.segment_length(a, b) >= h.dist(a, b) - 1e-12);
    // Hyperbolic annuli are not supported.
    CHECK_THROWS_AS(sh::space::disk(sh::cplx{0.0, 0.0}, 1.0, 0.2, sh::metric_kind::poincare),
                    sh::input_error);
}

TEST_CASE("product spaces use the sum metric") {
    auto box = sh::space::product(sh::space::disk(sh::cplx{0.0, 0.0}, 2.0),
                                  sh::space::disk(sh::cplx{0.0, 0.0}, 1.0));
    auto a = sh::make_pt(sh::cplx{1.0, 0.0}, sh::cplx{0.0, 0.5});
    auto b = sh::make_pt(sh::cplx{0.0, 0.0}, sh::cplx{0.0, 0.0});
    CHECK(near(box.dist(a, b), 1.5));
    CHECK(near(box.segment_length(a, b), 1.5));
    CHECK(box.contains(a));
    CHECK_FALSE(box.contains(sh::make_pt(sh::cplx{1.0, 0.0}, sh::cplx{0.0, 1.5})));
    CHECK(box.factor_x().same_shape(sh::space::disk(sh::cplx{0.0, 0.0}, 2.0)));
    // Factors must be one-factor spaces.
    CHECK_THROWS_AS(sh::space::product(box, sh::space::circle()), sh::input_error);
}

TEST_CASE("paths measure length and evaluate uniformly") {
    auto c = sh::space::circle();
    auto p = sh::path(c, {sh::make_pt(0.0), sh::make_pt(0.5), sh::make_pt(1.25)});
    CHECK(near(p.length(), 1.25));
    CHECK(near(p.at(0.0).x.real(), 0.0));
    CHECK(near(p.at(1.0).x.real(), 1.25));
    CHECK(near(p.at(0.5).x.real(), 0.5));
    CHECK(near(p.at(0.25).x.real(), 0.25));

    auto q = p.reversed();
    CHECK(near(q.length(), p.length()));
    CHECK(near(q.start().x.real(), 1.25));
    CHECK(near(q.end().x.real(), 0.0));

    auto k = sh::path::constant(c, sh::make_pt(0.3));
    CHECK(near(k.length(), 0.0));
    CHECK(near(k.at(0.7).x.real(), 0.3));

    CHECK_THROWS_AS(sh::path(c, {}), sh::input_error);
    CHECK_THROWS_AS(p.refined(0), sh::input_error);
}

TEST_CASE("concatenation aligns circle lifts so windings add") {
    auto c = sh::space::circle();
    auto a = sh::path::segment(c, sh::make_pt(0.0), sh::make_pt(1.0));
    // Starts at lift -1 of the same circle point; the join must re-lift it.
    auto b = sh::path::segment(c, sh::make_pt(-1.0), sh::make_pt(0.0));
    auto ab = sh::path::concat(a, b);
    CHECK(near(ab.length(), 2.0));
    CHECK(near(ab.circle_winding(), 2.0));
    CHECK(near(ab.end().x.real(), 2.0));

    auto far = sh::path::constant(c, sh::make_pt(0.4));
    CHECK_THROWS_AS(sh::path::concat(a, far), sh::input_error);
    auto disk_path = sh::path::constant(sh::space::disk(sh::cplx{0.0, 0.0}, 1.0),
                                        sh::make_pt(sh::cplx{0.0, 0.0}));
    CHECK_THROWS_AS(sh::path::concat(a, disk_path), sh::input_error);
    CHECK_THROWS_AS(disk_path.circle_winding(), sh::input_error);
}

TEST_CASE("planar winding counts argument variation") {
    auto d = sh::space::disk(sh::cplx{0.0, 0.0}, 3.0);
    std::vector<sh::pt> sq = {
        sh::make_pt(sh::cplx{1.0, 1.0}),   sh::make_pt(sh::cplx{-1.0, 1.0}),
        sh::make_pt(sh::cplx{-1.0, -1.0}), sh::make_pt(sh::cplx{1.0, -1.0}),
        sh::make_pt(sh::cplx{1.0, 1.0}),
    };
    auto loop = sh::path(d, sq);
    CHECK(near(loop.winding_around(sh::cplx{0.0, 0.0}), 1.0));
    CHECK(near(loop.winding_around(sh::cplx{2.5, 0.0}), 0.0));
}

TEST_CASE("refinement preserves the path") {
    auto c = sh::space::circle();
    auto p = sh::path(c, {sh::make_pt(0.0), sh::make_pt(0.4), sh::make_pt(1.1)});
    auto r = p.refined(4);
    CHECK(r.size() == 9);
    CHECK(near(r.length(), p.length()));
    CHECK(near(r.start().x.real(), p.start().x.real()));
    CHECK(near(r.end().x.real(), p.end().x.real()));
    CHECK(near(r.circle_winding(), p.circle_winding()));
    auto r1 = p.refined(1);
    CHECK(r1.size() == p.size());
}
