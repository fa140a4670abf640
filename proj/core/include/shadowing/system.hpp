#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "shadowing/path.hpp"
#include "shadowing/space.hpp"

namespace shadowing {

// What concrete family a system belongs to; drives serialization and the
// closed-form branches (exact inverses, certificates).
enum class system_family : std::uint8_t {
    circle_linear,    // sigma(lift) = d * lift on R/Z
    circle_perturbed, // sigma(lift) = d * lift + eps * sin(2 pi lift) / (2 pi)
    polynomial,       // sigma(z) = z^2 + c on a round annulus
    graph,            // directed graph: X1 = edges, X0 = vertices
    custom,
};

// Certificate that the one-step correspondence expands by lambda > 1 on its
// domain, with the sampling evidence that produced the bound.
struct expansion_certificate {
    double lambda = 0.0;      // certified expansion factor (> 1)
    double margin = 0.0;      // distance of the worst sample from failing
    long grid = 0;            // samples per dimension (0 = closed form)
    bool closed_form = false; // true when lambda comes from an exact bound
};

// A correspondence X0 <- X1 -> X0 given by two maps iota, sigma. Orbits are
// sequences x_i in X1 with sigma(x_i) = iota(x_{i+1}) in X0. For the concrete
// one-factor families here iota is the inclusion lift X1 -> X0 and sigma the
// dynamics; local_invert solves sigma(z) = target for z near a seed (the
// branch through the seed), which is what path lifting runs on.
struct mv_system {
    system_family family = system_family::custom;
    std::string name;
    space X0 = space::circle();
    space X1 = space::circle();

    std::function<pt(const pt&)> iota;
    std::function<pt(const pt&)> sigma;
    // Membership in X1 with tolerance.
    std::function<bool(const pt&, double)> in_X1;
    // Solve sigma(z) = target with z near seed; throws input_error when the
    // Newton iteration leaves the domain or fails to converge.
    std::function<pt(const pt&, const pt&)> local_invert;

    std::optional<expansion_certificate> certificate;

    // Family parameters (serialization + closed forms).
    int degree = 0;     // circle families
    double eps = 0.0;   // circle_perturbed
    cplx c{0.0, 0.0};   // polynomial
    double R = 0.0;     // polynomial outer radius
    double inner_r = 0.0; // polynomial inner radius; X0 = {inner_r <= |z| <= R}

    std::shared_ptr<const struct graph_data> graph; // graph family
};

// Index window [lo, hi] of a finite orbit segment. bi marks a truncation of a
// bi-infinite sequence (affects presentation only; algorithms use lo/hi).
struct index_window {
    long lo = 0;
    long hi = 0;
    bool bi = false;
    long size() const { return hi - lo + 1; }
};

// Finite run of points x_lo .. x_hi in X1.
struct orbit_seg {
    index_window window;
    std::vector<pt> points;

    const pt& at(long i) const { return points.at(static_cast<std::size_t>(i - window.lo)); }
    pt& at(long i) { return points.at(static_cast<std::size_t>(i - window.lo)); }
};

// Homotopy pseudo-orbit: points x_i in X1 and connecting paths alpha_i in X0
// from sigma(x_{i-1}) to iota(x_i), for i in [lo+1, hi]. paths[k] is
// alpha_{lo+1+k}. C bounds the path lengths (0 = compute from the data).
struct homotopy_pseudo_orbit {
    index_window window;
    std::vector<pt> points;
    std::vector<path> paths;
    double C = 0.0;

    const pt& point_at(long i) const {
        return points.at(static_cast<std::size_t>(i - window.lo));
    }
    const path& path_at(long i) const {
        return paths.at(static_cast<std::size_t>(i - window.lo - 1));
    }
};

// One stage of an iterative shadowing run.
struct shadow_stage {
    long stage = 0;
    double max_length = 0.0; // longest connecting path before this stage
    double max_defect = 0.0; // largest orbit defect after this stage
};

struct shadow_trace {
    std::vector<shadow_stage> stages;
};

struct orbit_defect {
    long index = 0;   // i: measures d(sigma(x_{i-1}), iota(x_i))
    double defect = 0.0;
};

// Output of a shadowing run.
struct shadow_result {
    orbit_seg orbit;
    shadow_trace trace;
    // Certifying homotopies: one path per output index, from the input point
    // to the output point, built from the stage corrections.
    std::vector<path> homotopies;
};

// Check the orbit relation at every interior index. Returns the per-index
// defects (empty when window has a single point); throws input_error when a
// point fails X1 membership (message names the index). An orbit is genuine
// when every defect is <= tol.
std::vector<orbit_defect> validate_orbit(const mv_system& sys, const orbit_seg& o,
                                         double tol = 1e-9);

// Largest defect, 0 for single-point windows.
double max_defect(const mv_system& sys, const orbit_seg& o);

// Shift left: (shift o)_i = o_{i+1}, window [lo, hi-1] (the window shrinks by
// one; input_error on a single-point window).
orbit_seg shift_orbit(const orbit_seg& o);

// Restrict to the sub-window [lo, hi] (must be contained in o's window).
orbit_seg restrict_orbit(const orbit_seg& o, long lo, long hi);

// View a genuine orbit as a homotopy pseudo-orbit with constant connecting
// paths at sigma(x_{i-1}) (== iota(x_i) up to tol, enforced).
homotopy_pseudo_orbit as_pseudo_orbit(const mv_system& sys, const orbit_seg& o,
                                      double tol = 1e-9);

// Longest connecting path.
double max_path_length(const homotopy_pseudo_orbit& h);

// Validate hpo shape: path count, endpoint matching (sigma(x_{i-1}) to
// alpha_i(0), alpha_i(1) to iota(x_i)), X1 membership, length bound C.
void validate_pseudo_orbit(const mv_system& sys, const homotopy_pseudo_orbit& h,
                           double tol = 1e-9);

} // namespace shadowing
