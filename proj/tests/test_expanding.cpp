#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "shadowing/errors.hpp"
#include "shadowing/expanding.hpp"
#include "shadowing/hsc.hpp"
#include "shadowing/system.hpp"

namespace sh = shadowing;

namespace {

bool near(double a, double b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

sh::orbit_seg genuine_circle_orbit(int d, double x0, long n) {
    sh::orbit_seg o;
    o.window = {0, n - 1, false};
    double x = sh::circle_reduce(x0);
    for (long i = 0; i < n; ++i) {
        o.points.push_back(sh::make_pt(x));
        x = sh::circle_reduce(d * x);
    }
    return o;
}

// Pseudo-orbit sitting at the fixed point 0 whose connecting paths each wind
// once around the circle: maximally non-genuine at path bound 1.
sh::homotopy_pseudo_orbit winding_hpo(const sh::mv_system& sys, long n) {
    sh::homotopy_pseudo_orbit h;
    h.window = {0, n - 1, false};
    h.C = 1.0;
    for (long i = 0; i < n; ++i) h.points.push_back(sh::make_pt(0.0));
    for (long i = 1; i < n; ++i)
        h.paths.push_back(sh::path(sys.X0, {sh::make_pt(0.0), sh::make_pt(0.5), sh::make_pt(1.0)}));
    return h;
}

// Half-turn rotation as a semi-conjugacy of an odd-degree cover: d x + 1/2
// equals d (x + 1/2) mod 1, so both homotopies are constant.
sh::hsc half_rotation(const std::shared_ptr<const sh::mv_system>& sys) {
    int d = sys->degree;
    sh::hsc r;
    r.src = sys;
    r.dst = sys;
    r.h0 = [](const sh::pt& p) { return sh::make_pt(p.x.real() + 0.5); };
    r.h1 = [](const sh::pt& p) { return sh::make_pt(p.x.real() + 0.5); };
    r.G = [d](const sh::pt& p, double) { return sh::make_pt(d * p.x.real() + 0.5); };
    r.H = [](const sh::pt& p, double) { return sh::make_pt(p.x.real() + 0.5); };
    r.name = "half rotation";
    return r;
}

} // namespace

TEST_CASE("circle covers certify exact expansion") {
    auto d2 = sh::make_circle_system(2);
    REQUIRE(d2->certificate.has_value());
    CHECK(d2->certificate->lambda == 2.0);
    CHECK(d2->certificate->closed_form);

    auto perturbed = sh::make_circle_system(3, 0.5);
    CHECK(near(perturbed->certificate->lambda, 2.5));

    CHECK_THROWS_AS(sh::make_circle_system(1), sh::input_error);
    CHECK_THROWS_AS(sh::make_circle_system(2, 1.5), sh::certificate_error);
}

TEST_CASE("quadratic annulus systems certify by sampling") {
    auto basic = sh::make_polynomial_system(sh::cplx{0.0, 0.0}, 2.0);
    REQUIRE(basic->certificate.has_value());
    // min 2|z| over the kept annulus is sqrt 2 at |z| = 1/sqrt 2 in theory;
    // the sampled minimum sits slightly above it.
    double exact = std::sqrt(2.0);
    CHECK(basic->certificate->lambda >= exact - 1e-9);
    CHECK(basic->certificate->lambda <= exact + 5e-3);
    CHECK(basic->certificate->margin > 0.0);
    CHECK_FALSE(basic->certificate->closed_form);

    // z^2 - 1 keeps the inner rim |z| = 0.4 in the domain, where 2|z| = 0.8:
    // not expanding, and the certificate says so.
    CHECK_THROWS_AS(sh::make_polynomial_system(sh::cplx{-1.0, 0.0}, 2.5), sh::certificate_error);
    CHECK_THROWS_AS(sh::make_polynomial_system(sh::cplx{0.0, 0.0}, 0.5), sh::input_error);
    CHECK_THROWS_AS(sh::make_quadratic_system(sh::cplx{0.0, 0.0}, 2.0, 1.0), sh::input_error);
    CHECK_THROWS_AS(sh::make_quadratic_system(sh::cplx{0.0, 0.0}, 0.5, 2.0, 8), sh::input_error);
    // A domain nothing survives in: huge |c| empties X1.
    CHECK_THROWS_AS(sh::make_quadratic_system(sh::cplx{100.0, 0.0}, 0.5, 2.0),
                    sh::certificate_error);
}

TEST_CASE("path lifting follows the chosen branch") {
    auto d2 = sh::make_circle_system(2);
    auto alpha = sh::path::segment(d2->X0, sh::make_pt(0.3), sh::make_pt(1.3));
    auto beta = sh::lift_path(*d2, alpha, sh::make_pt(0.15));
    CHECK(near(beta.start().x.real(), 0.15));
    CHECK(near(beta.end().x.real(), 0.65, 1e-9));
    CHECK(near(beta.length(), 0.5, 1e-9));

    // Refining the input path does not move the lift.
    auto beta4 = sh::lift_path(*d2, alpha.refined(4), sh::make_pt(0.15));
    CHECK(near(beta4.end().x.real(), beta.end().x.real(), 1e-9));

    // Wrong base point: sigma(base) must be the path start.
    CHECK_THROWS_WITH_AS(sh::lift_path(*d2, alpha, sh::make_pt(0.4)),
                         doctest::Contains("start"), sh::input_error);

    auto poly = sh::make_polynomial_system(sh::cplx{0.0, 0.0}, 2.0);
    std::vector<sh::pt> quarter;
    for (int k = 0; k <= 8; ++k) {
        double th = (3.14159265358979323846 / 2.0) * k / 8.0;
        quarter.push_back(sh::make_pt(sh::cplx{std::cos(th), std::sin(th)}));
    }
    auto arc = sh::path(poly->X0, quarter);
    auto lifted = sh::lift_path(*poly, arc, sh::make_pt(sh::cplx{1.0, 0.0}));
    auto end = lifted.end().x;
    CHECK(near(end.real(), std::cos(3.14159265358979323846 / 4.0), 1e-9));
    CHECK(near(end.imag(), std::sin(3.14159265358979323846 / 4.0), 1e-9));
    CHECK_THROWS_AS(sh::lift_path(*poly, arc, sh::make_pt(sh::cplx{3.0, 0.0})), sh::input_error);
}

TEST_CASE("budgets and uniqueness radii have closed forms") {
    CHECK(near(sh::uniqueness_radius(2.0, 1.0, 1.0), 4.0));
    CHECK(near(sh::uniqueness_radius(2.0, 0.0, 0.0), 0.0));
    CHECK(near(sh::uniqueness_radius(3.0, 0.5, 0.5), 1.5));
    CHECK_THROWS_AS(sh::uniqueness_radius(1.0, 1.0, 1.0), sh::input_error);
    CHECK(sh::stage_budget(2.0, 1.0, 1e-10) == 34);
    CHECK(sh::stage_budget(2.0, 1.0, 1e-9) == 30);
    CHECK(sh::stage_budget(2.0, 0.0, 1e-9) == 0);
}

TEST_CASE("genuine orbits shadow to themselves in zero stages") {
    auto d3 = sh::make_circle_system(3);
    auto o = genuine_circle_orbit(3, 0.17, 10);
    auto res = sh::shadow_expanding(*d3, sh::as_pseudo_orbit(*d3, o), 1e-9);
    CHECK(res.orbit.window.lo == 0);
    CHECK(res.orbit.window.hi == 9);
    REQUIRE(res.trace.stages.size() == 1);
    CHECK(res.trace.stages[0].stage == 0);
    for (long i = 0; i <= 9; ++i) CHECK(near(d3->X1.dist(res.orbit.at(i), o.at(i)), 0.0));
    CHECK(res.homotopies.size() == 10);
}

TEST_CASE("winding pseudo-orbits contract at the certified rate") {
    auto d2 = sh::make_circle_system(2);
    auto h = winding_hpo(*d2, 50);
    auto res = sh::shadow_expanding(*d2, h, 1e-9);

    // Lengths halve exactly: the lift of a straight winding segment is the
    // straight half segment.
    REQUIRE(res.trace.stages.size() == 31);
    for (std::size_t n = 0; n < res.trace.stages.size(); ++n) {
        CHECK(res.trace.stages[n].stage == static_cast<long>(n));
        CHECK(near(res.trace.stages[n].max_length, std::ldexp(1.0, -static_cast<int>(n)), 1e-12));
    }
    CHECK(res.trace.stages.back().max_length < 1e-9);

    // Thirty stages consume thirty top indices.
    CHECK(res.orbit.window.lo == 0);
    CHECK(res.orbit.window.hi == 19);
    // The limit orbit is the fixed point approached from below: 1 - 2^-30.
    for (long i = 0; i <= 19; ++i)
        CHECK(sh::circle_dist(res.orbit.at(i).x.real(), 0.0) <= 2e-9);
    CHECK(sh::max_defect(*d2, res.orbit) <= 2e-9);

    // The certifying homotopy at index 0 records the full unit crawl.
    REQUIRE(res.homotopies.size() == 20);
    CHECK(res.homotopies[0].length() >= 0.99);
}

TEST_CASE("short windows raise budget errors that name a sufficient length") {
    auto d2 = sh::make_circle_system(2);
    auto h = winding_hpo(*d2, 6);
    CHECK_THROWS_WITH_AS(sh::shadow_expanding(*d2, h, 1e-9), doctest::Contains("31"),
                         sh::budget_error);
}

TEST_CASE("shadowing requires a certificate and a valid input") {
    auto d2 = sh::make_circle_system(2);
    auto broken = std::make_shared<sh::mv_system>(*d2);
    broken->certificate.reset();
    auto h = winding_hpo(*d2, 10);
    CHECK_THROWS_AS(sh::shadow_expanding(*broken, h, 1e-9), sh::certificate_error);

    auto bad = h;
    bad.paths[2] = sh::path::constant(d2->X0, sh::make_pt(0.25));
    CHECK_THROWS_AS(sh::shadow_expanding(*d2, bad, 1e-9), sh::input_error);
}

TEST_CASE("the half rotation induces the half rotation on orbits") {
    auto d3 = sh::make_circle_system(3);
    auto r = half_rotation(d3);
    sh::check_endpoint_identities(r, sh::make_pt(0.3));

    auto in = sh::as_pseudo_orbit(*d3, genuine_circle_orbit(3, 0.0, 12));
    auto res = sh::induced_map_expanding(r, in, 1e-9);
    CHECK(res.orbit.window.hi == 11); // constant homotopies: zero stages
    for (long i = 0; i <= 11; ++i)
        CHECK(sh::circle_dist(res.orbit.at(i).x.real(), in.point_at(i).x.real() + 0.5) <= 1e-12);

    // Composing the half rotation with itself gives back the identity; the
    // composed homotopies jump lift branches at the junction, which the
    // sampler re-lifts.
    auto rr = sh::compose_hsc(r, r);
    auto in2 = sh::as_pseudo_orbit(*d3, genuine_circle_orbit(3, 0.29, 12));
    auto res2 = sh::induced_map_expanding(rr, in2, 1e-9);
    CHECK(res2.orbit.window.hi == 11);
    for (long i = 0; i <= 11; ++i)
        CHECK(sh::circle_dist(res2.orbit.at(i).x.real(), in2.point_at(i).x.real()) <= 1e-12);
}

TEST_CASE("sliding homotopies shadow back to the rotation") {
    auto d3 = sh::make_circle_system(3);
    sh::hsc slide;
    slide.src = d3;
    slide.dst = d3;
    slide.h0 = [](const sh::pt& p) { return p; };
    slide.h1 = [](const sh::pt& p) { return sh::make_pt(p.x.real() + 0.5); };
    slide.G = [](const sh::pt& p, double t) { return sh::make_pt(3.0 * p.x.real() + t / 2.0); };
    slide.H = [](const sh::pt& p, double t) { return sh::make_pt(p.x.real() + t / 2.0); };

    auto in = sh::as_pseudo_orbit(*d3, genuine_circle_orbit(3, 0.41, 35));
    auto res = sh::induced_map_expanding(slide, in, 1e-9);
    // Image paths have length ~1, so the run spends the 19-stage budget.
    CHECK(res.orbit.window.hi <= 16);
    for (long i = res.orbit.window.lo; i <= res.orbit.window.hi; ++i)
        CHECK(sh::circle_dist(res.orbit.at(i).x.real(), in.point_at(i).x.real() + 0.5) <= 2e-9);

    // Certifying homotopies join image points to output points.
    for (long i = res.orbit.window.lo; i <= res.orbit.window.hi; ++i) {
        const auto& hom = res.homotopies[static_cast<std::size_t>(i - res.orbit.window.lo)];
        CHECK(sh::circle_dist(hom.start().x.real(), in.point_at(i).x.real() + 0.5) <= 1e-9);
        CHECK(near(hom.end().x.real(), res.orbit.at(i).x.real()));
    }
}
