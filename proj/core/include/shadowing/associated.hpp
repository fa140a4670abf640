#pragma once

#include <memory>
#include <string>
#include <vector>

#include "shadowing/expanding.hpp"
#include "shadowing/hyperbolic.hpp"

namespace shadowing {

// One-variable expanding system associated to a crossed quadratic system at
// the slice parameter y0: sigma_{y0}(x) = x^2 + c - b y0 on an annulus
// fattened by m = |b| (Ry + |y0|) so that both semi-conjugacies below land
// inside it, with a re-sampled expansion certificate. The pair (h, k) makes
// the crossed system and its associated expanding system homotopy equivalent
// on orbit spaces:
//  - h (crossed -> one_d): project to x; G slides the y-argument of the
//    image from the true y to y0, H is constant.
//  - k (one_d -> crossed): include x -> (x, y0); G slides the y-coordinate of
//    the image from y0 to x, H is constant.
struct associated_system {
    std::shared_ptr<const crossed_system> parent;
    std::shared_ptr<const mv_system> one_d;
    cplx y0{0.0, 0.0};
    hsc h; // crossed -> one_d
    hsc k; // one_d -> crossed
};

// y0 must lie in the y-factor of the box (input_error otherwise);
// certificate_error when the fattened annulus loses expansion.
associated_system associated_expanding(std::shared_ptr<const crossed_system> parent,
                                       cplx y0, long grid = 512);

// Inverse-limit conjugacy, one direction per call. to_henon shadows the
// k-image of a genuine one-variable orbit in the crossed system;
// from_henon shadows the h-image of a genuine crossed orbit in the
// one-variable system. Both validate their input as genuine first.
shadow_result to_henon(const associated_system& as, const orbit_seg& one_d_orbit,
                       double tol);
shadow_result from_henon(const associated_system& as, const orbit_seg& crossed_orbit,
                         double tol);

// How much the associated construction depends on the slice parameter:
// for each sample crossed orbit w, transport from_henon(w; y0) into the
// y1-system along the parameter homotopy G_t = sigma_{y(t)} and compare with
// from_henon(w; y1) on the overlapping window. Returns the largest deviation.
double y0_independence(std::shared_ptr<const crossed_system> parent, cplx y0, cplx y1,
                       const std::vector<orbit_seg>& henon_samples, double tol);

enum class henon_class : std::uint8_t { horseshoe, solenoid, basilica, unclassified };

std::string to_string(henon_class k);

// Coarse parameter classification with strict inequalities; boundary cases
// return unclassified.
//  - horseshoe: |c| > 2 (1 + |b|)^2
//  - solenoid: c == 0 and |b| < (sqrt(2) - 1)/2
//  - basilica: c == -1 and |b| < 0.02
henon_class classify_henon(cplx c, cplx b);

} // namespace shadowing
