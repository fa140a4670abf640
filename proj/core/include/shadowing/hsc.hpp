#pragma once

#include <memory>
#include <string>

#include "shadowing/system.hpp"

namespace shadowing {

// Homotopy semi-conjugacy between correspondences: maps h0 : X0 -> Y0,
// h1 : X1 -> Y1 together with homotopies (paths in Y0, parametrized by t)
//   G(x, t): from h0(sigma_X(x)) at t=0 to sigma_Y(h1(x)) at t=1,
//   H(x, t): from h0(iota_X(x))  at t=0 to iota_Y(h1(x))  at t=1,
// for x in X1. The endpoint identities are verified (at the points where the
// object is used) to endpoint_tol; violations raise certificate_error.
//
// Circle-valued components act on lifts and must be continuous in them.
struct hsc {
    std::shared_ptr<const mv_system> src, dst;
    std::function<pt(const pt&)> h0, h1;
    std::function<pt(const pt&, double)> G, H;
    int subdivision = 64; // sample count when homotopies become polylines
    std::string name;
};

// Identity semi-conjugacy of a system (constant homotopies).
hsc identity_hsc(std::shared_ptr<const mv_system> sys);

// Verify the four endpoint identities of h at the single point x.
void check_endpoint_identities(const hsc& h, const pt& x, double endpoint_tol = 1e-12);

// Push a homotopy pseudo-orbit through a semi-conjugacy. The image has points
// h1(x_i) and connecting paths
//   reverse(G(x_{i-1}, .)) * h0(alpha_i) * H(x_i, .)
// sampled at `subdivision` points per homotopy (and per path segment).
// Endpoint identities are checked at every orbit point first.
homotopy_pseudo_orbit apply_hsc(const hsc& h, const homotopy_pseudo_orbit& in,
                                double endpoint_tol = 1e-12);

// Composition (k after h): maps compose; homotopies concatenate in t,
// G(x, t) = k0(G_h(x, 2t)) for t <= 1/2, G_k(h1(x), 2t-1) after.
hsc compose_hsc(const hsc& k, const hsc& h);

struct homotopy_check_result {
    bool homotopic = false;
    std::vector<long> failing; // indices whose squares fail
};

// Decide, index by index, whether two pseudo-orbits over the same window are
// homotopic through the connecting family beta_i : a_i -> b_i (paths in X1):
// alpha_i * iota(beta_i) must be homotopic rel endpoints to
// sigma(beta_{i-1}) * alpha'_i in X0. Decidable for circles (winding),
// simply-connected planar domains (endpoints), annuli (winding around the
// hole) and products of these; otherwise throws input_error.
homotopy_check_result hpo_homotopy_check(const mv_system& sys,
                                         const homotopy_pseudo_orbit& a,
                                         const homotopy_pseudo_orbit& b,
                                         const std::vector<path>& betas,
                                         double tol = 1e-9);

} // namespace shadowing
