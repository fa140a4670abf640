#pragma once

#include <memory>

#include "shadowing/hsc.hpp"
#include "shadowing/system.hpp"

namespace shadowing {

// Degree-d circle cover sigma(u) = d u + eps sin(2 pi u) / (2 pi) acting on
// lifts. Expansion factor d - |eps| must exceed 1 (certificate_error).
std::shared_ptr<const mv_system> make_circle_system(int degree, double eps = 0.0);

// Quadratic correspondence sigma(z) = z^2 + c on the round annulus
// X0 = { 1/R <= |z| <= R }, X1 = { z in X0 : sigma(z) in X0 }. The expansion
// factor min 2|z| over X1 is certified by sampling a grid x grid polar net of
// X0 (keeping X1 members); certificate_error when the sampled minimum is not
// safely above 1. R must exceed 1 (input_error otherwise).
std::shared_ptr<const mv_system> make_polynomial_system(cplx c, double R, long grid = 512);

// Same correspondence on a general annulus { inner <= |z| <= outer }.
std::shared_ptr<const mv_system> make_quadratic_system(cplx c, double inner, double outer,
                                                       long grid = 512);

// Lift a path alpha in X0 through sigma, based at the X1 point `base` (which
// must satisfy sigma(base) == alpha(0) within tol): returns beta in X1 with
// beta(0) = base and sigma(beta) = alpha. The lift subdivides alpha so each
// continuation step stays well inside the branch separation.
path lift_path(const mv_system& sys, const path& alpha, const pt& base, double tol = 1e-9);

// Iterative shadowing of a homotopy pseudo-orbit in an expanding system: each
// stage replaces x_i by the endpoint of the lift of alpha_{i+1} based at x_i
// and drops the top index. Connecting-path lengths contract by at least the
// certified factor per stage; the run stops once the longest one is below tol
// (the output defect is bounded by that length), and raises budget_error
// (naming the window length that would suffice) if the window runs out first.
shadow_result shadow_expanding(const mv_system& sys, const homotopy_pseudo_orbit& in,
                               double tol);

// Radius within which the shadow of a pseudo-orbit with path bound C is the
// unique genuine orbit homotopic through paths of length <= C': both orbits
// lie within lambda (C + C') / (lambda - 1) of each other.
double uniqueness_radius(double lambda, double C, double Cprime);

// Stages needed to bring path lengths C down to the stop threshold for tol.
long stage_budget(double lambda, double C, double tol);

// Induced map on orbits: push the pseudo-orbit through the semi-conjugacy and
// shadow it in the (expanding) target system.
shadow_result induced_map_expanding(const hsc& h, const homotopy_pseudo_orbit& in,
                                    double tol);

} // namespace shadowing
