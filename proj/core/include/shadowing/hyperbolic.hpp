#pragma once

#include <array>
#include <memory>

#include "shadowing/hsc.hpp"
#include "shadowing/system.hpp"

namespace shadowing {

// Product box { rx <= |x| <= Rx } x { |y| <= Ry } in C^2 (full x-disk when
// rx == 0) for the quadratic family f(x, y) = (x^2 + c - b y, x).
struct henon_params {
    cplx c{0.0, 0.0};
    cplx b{0.0, 0.0};
    double Rx = 0.0;
    double Ry = 0.0;
    double rx = 0.0;
};

// Exact crossing margins for the box (all must be positive):
//  - bcc_image: the x-boundary maps horizontally across: min |x^2+c-by| - Rx
//    over |x| = Rx (and, for an annulus factor, rx - max |x^2+c-by| over
//    |x| = rx); reported as the worse of the two.
//  - bcc_preimage: the y-boundary maps across under f^{-1}:
//    (Ry^2 - |c| - Rx)/|b| - Ry.
//  - occ: certified lower bound on |x|^2 along any solution of
//    pi_x f(x, y) = w with w in the x-factor and |y| <= Ry; keeps solutions
//    away from the fold at x = 0 (disk route |c| - Rx - |b| Ry, annulus
//    route rx - |c| - |b| Ry; the better applicable one).
struct box_certificates {
    double bcc_image = 0.0;
    double bcc_preimage = 0.0;
    double occ = 0.0;
    double lambda_h = 0.0; // cone expansion 2 sqrt(occ) - |b| (> 1)
    double lambda_v = 0.0; // inverse-cone expansion (2 sqrt(occ) - 1)/|b| (> 1)
};

// Exact margins from the parameters (no sampling); b must be nonzero.
box_certificates henon_margins(const henon_params& hp);

// Invertible crossed mapping on a product box. `system` exposes it as a
// correspondence (iota = id, sigma = f, local_invert = exact f^{-1}) so
// semi-conjugacies can target it; the shadowing engine below uses the extra
// structure (inverse, jacobian, certificates).
struct crossed_system {
    std::shared_ptr<const mv_system> system;
    std::function<pt(const pt&)> f, finv;
    std::function<std::array<cplx, 4>(const pt&)> jac; // row-major d(f)/d(x,y)
    // Solve pi_x f(x, y_level) = target for x near seed (branch through the
    // seed); closed form for the quadratic family.
    std::function<cplx(cplx seed, cplx y_level, cplx target)> hsolve;
    int degree = 2;
    box_certificates certs;
    henon_params hp;

    const space& box() const { return system->X0; }
    bool in_box(const pt& p, double tol = 1e-9) const { return system->X0.contains(p, tol); }
};

// Build and certify the crossed system for the box; certificate_error lists
// any nonpositive margins, input_error rejects b == 0 or a bad box.
std::shared_ptr<const crossed_system> make_henon_system(const henon_params& hp);

// Topological degree of x -> pi_x f(x, y_level) over the x-factor: winding of
// the boundary image around a regular value (outer minus inner for an
// annulus). Computed from the certified boundary margins by sampling.
int crossed_degree(const crossed_system& sys, cplx y_level, cplx value, long samples = 4096);

// Sampled cone-expansion estimates over the box points staying in the box:
// horizontal min(2|x| - |b|), vertical min((2|x'|-1)/|b|) where x' is the
// x-coordinate of the image. Cross-checks the closed-form certificates.
struct lambda_estimate {
    double horizontal = 0.0;
    double vertical = 0.0;
    long kept = 0;
};
lambda_estimate estimate_lambda(const crossed_system& sys, long grid = 64);

// Horizontal disk: graph y = phi(x) over the x-factor, |phi'| <= slope.
struct horizontal_disk {
    std::function<cplx(cplx)> phi;
    double slope = 0.0;
};
// Vertical disk: graph x = psi(y) over the y-factor, |psi'| <= slope.
struct vertical_disk {
    std::function<cplx(cplx)> psi;
    double slope = 0.0;
};

struct intersection_result {
    pt source; // the point of the horizontal disk
    pt image;  // f(source), on the vertical disk
};

// The intersection f(D) ∩ V on the branch through the seed: solves
// pi_x f(x, phi(x)) = psi(pi_y f(x, phi(x))) by damped Newton from seed_x.
intersection_result unique_intersection(const crossed_system& sys,
                                        const horizontal_disk& D, const vertical_disk& V,
                                        cplx seed_x, double tol = 1e-12);

// Iterative shadowing of a homotopy pseudo-orbit of the crossed mapping
// (points z_i in the box with f(z_i) in the box, paths alpha_i from
// f(z_{i-1}) to z_i inside the box). Each stage continues the x-projection of
// alpha_i through the horizontal slice at z_{i-1}, pulls the slots back one
// step and drops the top index; the output pushes the stabilized slots
// forward along f until the measured orbit defect is minimal, and reports the
// pushed window with its low end advanced past the indices still influenced
// by the free bottom boundary (influence decays at the measured stable rate
// |b|/(2|x_i|) per index). budget_error names a window length that would
// reach tol.
shadow_result shadow_hyperbolic(const crossed_system& sys, const homotopy_pseudo_orbit& in,
                                double tol);

// Push a pseudo-orbit through a semi-conjugacy targeting the crossed system,
// then shadow it there.
shadow_result induced_map_hyperbolic(const crossed_system& sys, const hsc& h,
                                     const homotopy_pseudo_orbit& in, double tol);

// Two genuine orbits (defect <= tol each, same window overlap) are the same
// orbit iff they agree pointwise within 2 tol on the overlap.
bool verify_orbit_uniqueness(const crossed_system& sys, const orbit_seg& a,
                             const orbit_seg& b, double tol);

} // namespace shadowing
