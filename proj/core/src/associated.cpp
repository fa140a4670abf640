#include "shadowing/associated.hpp"

#include <algorithm>
#include <cmath>

#include "shadowing/errors.hpp"

namespace shadowing {

namespace {

// Genuine-orbit check against the crossed map.
void require_genuine_crossed(const crossed_system& sys, const orbit_seg& o, double tol) {
    if (o.points.size() != static_cast<std::size_t>(o.window.size()))
        throw input_error("orbit point count does not match its window");
    for (long i = o.window.lo; i <= o.window.hi; ++i)
        if (!sys.in_box(o.at(i), 1e-6))
            throw input_error("orbit point at index " + std::to_string(i) +
                              " is outside the box");
    for (long i = o.window.lo + 1; i <= o.window.hi; ++i) {
        double d = sys.box().dist(sys.f(o.at(i - 1)), o.at(i));
        if (d > tol)
            throw input_error("input is not a genuine orbit: defect " + std::to_string(d) +
                              " at index " + std::to_string(i));
    }
}

} // namespace

associated_system associated_expanding(std::shared_ptr<const crossed_system> parent,
                                       cplx y0, long grid) {
    if (!parent) throw input_error("associated system needs a parent");
    const henon_params& hp = parent->hp;
    if (std::abs(y0) > hp.Ry)
        throw input_error("slice parameter lies outside the y-factor: |y0| = " +
                          std::to_string(std::abs(y0)) + " > " + std::to_string(hp.Ry));

    double m = std::abs(hp.b) * (hp.Ry + std::abs(y0));
    double outer = hp.Rx + m;
    double inner = hp.rx > 0.0 ? hp.rx - m : 1.0 / outer;
    if (inner <= 0.0)
        throw certificate_error("fattened annulus collapses: inner radius " +
                                std::to_string(inner));
    cplx c_assoc = hp.c - hp.b * y0;

    associated_system as;
    as.parent = parent;
    as.y0 = y0;
    as.one_d = make_quadratic_system(c_assoc, inner, outer, grid);

    cplx c = hp.c, b = hp.b;
    auto one_d = as.one_d;
    auto crossed = parent->system;

    // h: crossed -> one_d. h0 = h1 = x-projection;
    // G(p, t) = x^2 + c - b((1-t) y + t y0) from pi_x f(p) to sigma_{y0}(x);
    // H constant at x.
    as.h.src = crossed;
    as.h.dst = one_d;
    as.h.h0 = [](const pt& p) { return make_pt(p.x); };
    as.h.h1 = [](const pt& p) { return make_pt(p.x); };
    as.h.G = [c, b, y0](const pt& p, double t) {
        return make_pt(p.x * p.x + c - b * ((1.0 - t) * p.y + t * y0));
    };
    as.h.H = [](const pt& p, double) { return make_pt(p.x); };
    as.h.name = "slice projection";

    // k: one_d -> crossed. k0 = k1 = include at the slice;
    // G(x, t) = (sigma_{y0}(x), (1-t) y0 + t x) from (sigma_{y0}(x), y0) to
    // f(x, y0); H constant at (x, y0).
    as.k.src = one_d;
    as.k.dst = crossed;
    cplx ca = c_assoc;
    as.k.h0 = [y0](const pt& p) { return pt{p.x, y0}; };
    as.k.h1 = [y0](const pt& p) { return pt{p.x, y0}; };
    as.k.G = [ca, y0](const pt& p, double t) {
        return pt{p.x * p.x + ca, (1.0 - t) * y0 + t * p.x};
    };
    as.k.H = [y0](const pt& p, double) { return pt{p.x, y0}; };
    as.k.name = "slice inclusion";
    return as;
}

shadow_result to_henon(const associated_system& as, const orbit_seg& one_d_orbit,
                       double tol) {
    homotopy_pseudo_orbit hpo = as_pseudo_orbit(*as.one_d, one_d_orbit, 1e-9);
    return induced_map_hyperbolic(*as.parent, as.k, hpo, tol);
}

shadow_result from_henon(const associated_system& as, const orbit_seg& crossed_orbit,
                         double tol) {
    require_genuine_crossed(*as.parent, crossed_orbit, 1e-9);
    homotopy_pseudo_orbit hpo;
    hpo.window = crossed_orbit.window;
    hpo.points = crossed_orbit.points;
    const space& X0 = as.parent->system->X0;
    for (long i = crossed_orbit.window.lo + 1; i <= crossed_orbit.window.hi; ++i)
        hpo.paths.push_back(path::constant(X0, as.parent->f(crossed_orbit.at(i - 1))));
    return induced_map_expanding(as.h, hpo, tol);
}

double y0_independence(std::shared_ptr<const crossed_system> parent, cplx y0, cplx y1,
                       const std::vector<orbit_seg>& henon_samples, double tol) {
    if (henon_samples.empty()) throw input_error("need at least one sample orbit");
    associated_system a0 = associated_expanding(parent, y0);
    associated_system a1 = associated_expanding(parent, y1);

    // Parameter homotopy between the two associated systems: identity maps,
    // G(x, t) = x^2 + c - b y(t) with y(t) = (1-t) y0 + t y1, H constant.
    hsc h01;
    h01.src = a0.one_d;
    h01.dst = a1.one_d;
    h01.h0 = [](const pt& p) { return p; };
    h01.h1 = [](const pt& p) { return p; };
    cplx c = parent->hp.c, b = parent->hp.b;
    h01.G = [c, b, y0, y1](const pt& p, double t) {
        cplx yt = (1.0 - t) * y0 + t * y1;
        return make_pt(p.x * p.x + c - b * yt);
    };
    h01.H = [](const pt& p, double) { return p; };
    h01.name = "slice change";

    double worst = 0.0;
    for (const auto& w : henon_samples) {
        shadow_result o0 = from_henon(a0, w, tol);
        shadow_result o1 = from_henon(a1, w, tol);
        homotopy_pseudo_orbit hpo = as_pseudo_orbit(*a0.one_d, o0.orbit, 10.0 * tol);
        shadow_result moved = induced_map_expanding(h01, hpo, tol);
        long lo = std::max(moved.orbit.window.lo, o1.orbit.window.lo);
        long hi = std::min(moved.orbit.window.hi, o1.orbit.window.hi);
        if (lo > hi) throw input_error("transported orbits have no overlapping window");
        for (long i = lo; i <= hi; ++i)
            worst = std::max(worst,
                             a1.one_d->X0.dist(moved.orbit.at(i), o1.orbit.at(i)));
    }
    return worst;
}

std::string to_string(henon_class k) {
    switch (k) {
        case henon_class::horseshoe: return "horseshoe";
        case henon_class::solenoid: return "solenoid";
        case henon_class::basilica: return "basilica";
        case henon_class::unclassified: return "unclassified";
    }
    return "unclassified";
}

henon_class classify_henon(cplx c, cplx b) {
    double t = 2.0 * (1.0 + std::abs(b)) * (1.0 + std::abs(b));
    if (std::abs(c) > t) return henon_class::horseshoe;
    if (c == cplx{0.0, 0.0} && std::abs(b) < (std::sqrt(2.0) - 1.0) / 2.0)
        return henon_class::solenoid;
    if (c == cplx{-1.0, 0.0} && std::abs(b) < 0.02) return henon_class::basilica;
    return henon_class::unclassified;
}

} // namespace shadowing
