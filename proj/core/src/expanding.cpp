#include "shadowing/expanding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shadowing/errors.hpp"
#include "shadowing/parallel.hpp"

namespace shadowing {

namespace {

constexpr double two_pi = 6.283185307179586476925286766559;

double circle_map(int d, double eps, double u) {
    return d * u + eps * std::sin(two_pi * u) / two_pi;
}

double circle_map_deriv(int d, double eps, double u) {
    return d + eps * std::cos(two_pi * u);
}

// Lower bound on the separation of distinct sigma-preimages of one point,
// used to size continuation steps.
double branch_separation(const mv_system& sys) {
    switch (sys.family) {
        case system_family::circle_linear:
        case system_family::circle_perturbed:
            // distinct preimage lifts differ by ~1/d
            return 1.0 / (sys.degree + std::abs(sys.eps));
        case system_family::polynomial:
            // preimages +-sqrt(w - c); both lie in the annulus, so their
            // distance 2|z| is at least twice the inner radius
            return sys.inner_r;
        default:
            return 0.1;
    }
}

} // namespace

std::shared_ptr<const mv_system> make_circle_system(int degree, double eps) {
    if (degree < 2) throw input_error("circle cover needs degree >= 2");
    double lambda = degree - std::abs(eps);
    if (lambda <= 1.0)
        throw certificate_error("circle map is not expanding: degree - |eps| = " +
                                std::to_string(lambda) + " <= 1");
    auto sys = std::make_shared<mv_system>();
    sys->family = eps == 0.0 ? system_family::circle_linear : system_family::circle_perturbed;
    sys->name = eps == 0.0 ? "circle degree " + std::to_string(degree) : "perturbed circle";
    sys->X0 = space::circle();
    sys->X1 = space::circle();
    sys->degree = degree;
    sys->eps = eps;
    int d = degree;
    double e = eps;
    sys->iota = [](const pt& p) { return p; };
    sys->sigma = [d, e](const pt& p) { return make_pt(circle_map(d, e, p.x.real())); };
    sys->in_X1 = [](const pt& p, double tol) { return std::abs(p.x.imag()) <= tol; };
    sys->local_invert = [d, e](const pt& seed, const pt& target) {
        // Choose the integer sheet that keeps the branch through the seed,
        // then Newton on the monotone lift.
        double T = target.x.real() + std::round(circle_map(d, e, seed.x.real()) - target.x.real());
        double z = seed.x.real();
        for (int it = 0; it < 100; ++it) {
            double f = circle_map(d, e, z) - T;
            if (std::abs(f) < 1e-14) return make_pt(z);
            z -= f / circle_map_deriv(d, e, z);
        }
        throw input_error("circle branch inversion did not converge");
    };
    expansion_certificate cert;
    cert.lambda = lambda;
    cert.margin = lambda - 1.0;
    cert.closed_form = true;
    sys->certificate = cert;
    return sys;
}

std::shared_ptr<const mv_system> make_polynomial_system(cplx c, double R, long grid) {
    if (!(R > 1.0)) throw input_error("annulus outer radius must exceed 1");
    return make_quadratic_system(c, 1.0 / R, R, grid);
}

std::shared_ptr<const mv_system> make_quadratic_system(cplx c, double inner, double outer,
                                                       long grid) {
    if (!(outer > 0.0) || !(inner > 0.0) || inner >= outer)
        throw input_error("annulus needs 0 < inner < outer");
    if (grid < 16) throw input_error("certificate grid too small");
    space X0 = space::disk(cplx{0.0, 0.0}, outer, inner);

    auto member_X0 = [outer, inner](cplx z, double tol) {
        double r = std::abs(z);
        return r <= outer + tol && r >= inner - tol;
    };
    auto in_X1 = [member_X0, c](const pt& p, double tol) {
        return member_X0(p.x, tol) && member_X0(p.x * p.x + c, tol);
    };

    // Sample the polar grid of X0; certify min 2|z| over the X1 members.
    double lambda = std::numeric_limits<double>::infinity();
    long kept = 0;
    for (long i = 0; i < grid; ++i) {
        double r = inner + (outer - inner) * static_cast<double>(i) / (grid - 1);
        for (long j = 0; j < grid; ++j) {
            double th = two_pi * static_cast<double>(j) / grid;
            cplx z = std::polar(r, th);
            if (!in_X1(make_pt(z), 0.0)) continue;
            ++kept;
            lambda = std::min(lambda, 2.0 * std::abs(z));
        }
    }
    if (kept == 0)
        throw certificate_error("the correspondence domain is empty for these parameters");
    if (lambda <= 1.0 + 1e-6)
        throw certificate_error("quadratic correspondence is not expanding: sampled min 2|z| = " +
                                std::to_string(lambda) + " (margin " +
                                std::to_string(lambda - 1.0) + ")");

    auto sys = std::make_shared<mv_system>();
    sys->family = system_family::polynomial;
    sys->name = "quadratic correspondence";
    sys->X0 = X0;
    sys->X1 = X0;
    sys->c = c;
    sys->R = outer;
    sys->inner_r = inner;
    sys->degree = 2;
    sys->iota = [](const pt& p) { return p; };
    sys->sigma = [c](const pt& p) { return make_pt(p.x * p.x + c); };
    sys->in_X1 = in_X1;
    sys->local_invert = [c](const pt& seed, const pt& target) {
        cplx z = seed.x;
        cplx T = target.x;
        double scale = std::max(1.0, std::abs(T));
        for (int it = 0; it < 100; ++it) {
            cplx f = z * z + c - T;
            if (std::abs(f) < 1e-13 * scale) return make_pt(z);
            if (std::abs(z) < 1e-12)
                throw input_error("quadratic inversion degenerated at the critical point");
            cplx step = f / (2.0 * z);
            // step halving keeps the iterate on the branch through the seed
            for (int h = 0; h < 60 && std::abs((z - step) * (z - step) + c - T) > std::abs(f); ++h)
                step *= 0.5;
            z -= step;
        }
        throw input_error("quadratic branch inversion did not converge");
    };
    expansion_certificate cert;
    cert.lambda = lambda;
    cert.margin = lambda - 1.0;
    cert.grid = grid;
    cert.closed_form = false;
    sys->certificate = cert;
    return sys;
}

path lift_path(const mv_system& sys, const path& alpha, const pt& base, double tol) {
    if (!sys.local_invert) throw input_error("system has no branch inversion");
    if (!sys.in_X1(base, tol)) throw input_error("lift base point is outside the domain");
    if (sys.X0.dist(sys.sigma(base), alpha.start()) > tol)
        throw input_error("lift base does not map to the path start (gap " +
                          std::to_string(sys.X0.dist(sys.sigma(base), alpha.start())) + ")");

    double lambda = sys.certificate ? sys.certificate->lambda : 1.5;
    double max_step = branch_separation(sys) * std::min(lambda, 2.0) / 4.0;

    // Subdivide each segment so continuation steps stay below max_step.
    std::vector<pt> targets;
    targets.push_back(alpha.start());
    const auto& v = alpha.vertices();
    for (std::size_t i = 1; i < v.size(); ++i) {
        double seg = sys.X0.segment_length(v[i - 1], v[i]);
        int pieces = std::max(1, static_cast<int>(std::ceil(seg / max_step)));
        for (int j = 1; j <= pieces; ++j) {
            double u = static_cast<double>(j) / pieces;
            targets.push_back(pt{v[i - 1].x + u * (v[i].x - v[i - 1].x),
                                 v[i - 1].y + u * (v[i].y - v[i - 1].y)});
        }
    }

    std::vector<pt> lifted;
    lifted.reserve(targets.size());
    pt z = base;
    lifted.push_back(z);
    for (std::size_t k = 1; k < targets.size(); ++k) {
        z = sys.local_invert(z, targets[k]);
        lifted.push_back(z);
    }
    return path(sys.X1, std::move(lifted));
}

double uniqueness_radius(double lambda, double C, double Cprime) {
    if (lambda <= 1.0) throw input_error("uniqueness radius needs lambda > 1");
    return lambda * (C + Cprime) / (lambda - 1.0);
}

long stage_budget(double lambda, double C, double tol) {
    if (lambda <= 1.0) throw input_error("stage budget needs lambda > 1");
    if (tol <= 0.0) throw input_error("tolerance must be positive");
    if (C <= 0.0) return 0;
    // path lengths contract by lambda per stage: C / lambda^n < tol
    double need = std::log(C / tol) / std::log(lambda);
    return need <= 0.0 ? 0 : static_cast<long>(std::ceil(need));
}

shadow_result shadow_expanding(const mv_system& sys, const homotopy_pseudo_orbit& in,
                               double tol) {
    if (tol <= 0.0) throw input_error("tolerance must be positive");
    if (!sys.certificate || sys.certificate->lambda <= 1.0)
        throw certificate_error("shadowing needs a certified expansion factor > 1");
    validate_pseudo_orbit(sys, in, 1e-6);
    double lambda = sys.certificate->lambda;

    shadow_result res;
    res.orbit.window = in.window;
    res.orbit.points = in.points;

    // Snap connecting paths to exact endpoints (the input may carry a small
    // validated slack; stages preserve exactness afterwards, so the final
    // defect is bounded by the final path length alone).
    std::vector<path> alphas;
    alphas.reserve(in.paths.size());
    for (long i = in.window.lo + 1; i <= in.window.hi; ++i) {
        path a = in.path_at(i);
        path head = path::constant(sys.X0, sys.sigma(in.point_at(i - 1)));
        path tail = path::constant(sys.X0, sys.iota(in.point_at(i)));
        alphas.emplace_back(path::concat(path::concat(head, a, 1e-6), tail, 1e-6));
    }
    for (const auto& p : in.points) res.homotopies.push_back(path::constant(sys.X1, p));

    long lo = in.window.lo, hi = in.window.hi;
    long stage_no = 0;
    while (true) {
        double L = 0.0;
        for (const auto& a : alphas) L = std::max(L, a.length());

        // stage row n records the path lengths of stage n (row 0 = input)
        shadow_stage st;
        st.stage = stage_no;
        st.max_length = L;
        orbit_seg cur{res.orbit.window, res.orbit.points};
        st.max_defect = max_defect(sys, cur);
        res.trace.stages.push_back(st);

        // defect <= max path length, so L < tol delivers the contract
        if (L < tol || alphas.empty()) break;
        // A stage consumes the top index; going below two points would leave
        // no path evidence of convergence, so the window has run out.
        if (hi - lo < 2) {
            long needed = stage_budget(lambda, max_path_length(in), tol);
            throw budget_error("window too small to reach tolerance: needs about " +
                               std::to_string(needed) +
                               " shadowing stages, so a window of length >= " +
                               std::to_string(needed + 1) + "; got " +
                               std::to_string(in.window.size()));
        }
        if (static_cast<long>(alphas.size()) != hi - lo)
            throw input_error("internal: path bookkeeping out of step");

        ++stage_no;
        std::vector<path> betas(static_cast<std::size_t>(hi - lo));
        auto& pts = res.orbit.points;
        parallel_for(static_cast<std::size_t>(hi - lo), [&](std::size_t k) {
            // beta_k lifts alpha_{lo+k+1} based at x_{lo+k}
            betas[k] = lift_path(sys, alphas[k], pts[k], 1e-6);
        });
        std::vector<pt> new_pts(static_cast<std::size_t>(hi - lo));
        std::vector<path> new_alphas;
        for (long i = 0; i < hi - lo; ++i) {
            new_pts[static_cast<std::size_t>(i)] = betas[static_cast<std::size_t>(i)].end();
            res.homotopies[static_cast<std::size_t>(i)] = path::concat(
                res.homotopies[static_cast<std::size_t>(i)], betas[static_cast<std::size_t>(i)], 1e-6);
            if (i >= 1) {
                // new alpha_i = iota(beta_i): starts at iota(old x_i) =
                // alpha_i(1) = sigma(new x_{i-1})
                const auto& b = betas[static_cast<std::size_t>(i)];
                std::vector<pt> img;
                img.reserve(b.size());
                for (const auto& w : b.vertices()) img.push_back(sys.iota(w));
                new_alphas.emplace_back(sys.X0, std::move(img));
            }
        }
        pts.assign(new_pts.begin(), new_pts.end());
        res.homotopies.resize(static_cast<std::size_t>(hi - lo));
        alphas = std::move(new_alphas);
        hi -= 1;
        res.orbit.window.hi = hi;
    }
    return res;
}

shadow_result induced_map_expanding(const hsc& h, const homotopy_pseudo_orbit& in,
                                    double tol) {
    homotopy_pseudo_orbit image = apply_hsc(h, in);
    return shadow_expanding(*h.dst, image, tol);
}

} // namespace shadowing
