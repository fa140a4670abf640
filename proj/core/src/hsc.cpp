#include "shadowing/hsc.hpp"

#include <algorithm>
#include <cmath>

#include "shadowing/errors.hpp"

namespace shadowing {

namespace {

// Re-lift circle coordinates so consecutive samples differ by < 1/2: a
// continuous homotopy sampled this densely never jumps that far, so any
// larger gap is a lift discontinuity of the evaluating function (composed
// homotopies switch lift branches at the junction), not actual winding.
void heal_lifts(const space& sp, std::vector<pt>& v) {
    switch (sp.kind()) {
        case space_kind::circle:
            for (std::size_t j = 1; j < v.size(); ++j)
                v[j].x -= std::round(v[j].x.real() - v[j - 1].x.real());
            return;
        case space_kind::product:
            if (sp.factor_x().kind() == space_kind::circle)
                for (std::size_t j = 1; j < v.size(); ++j)
                    v[j].x -= std::round(v[j].x.real() - v[j - 1].x.real());
            if (sp.factor_y().kind() == space_kind::circle)
                for (std::size_t j = 1; j < v.size(); ++j)
                    v[j].y -= std::round(v[j].y.real() - v[j - 1].y.real());
            return;
        default:
            return;
    }
}

// Sample a homotopy t -> G(x, t) as a polyline with k segments.
path sample_homotopy(const space& sp, const std::function<pt(const pt&, double)>& Gfn,
                     const pt& x, int k) {
    std::vector<pt> v;
    v.reserve(static_cast<std::size_t>(k) + 1);
    for (int j = 0; j <= k; ++j)
        v.push_back(Gfn(x, static_cast<double>(j) / k));
    heal_lifts(sp, v);
    return path(sp, std::move(v));
}

// Image of a polyline under a point map, with enough refinement that the
// image polyline tracks the true image path.
path map_path(const space& target, const std::function<pt(const pt&)>& f, const path& p,
              int min_segments) {
    path q = p;
    if (p.size() > 1) {
        int segs = static_cast<int>(p.size()) - 1;
        int k = (min_segments + segs - 1) / segs;
        q = p.refined(std::max(1, k));
    }
    std::vector<pt> v;
    v.reserve(q.size());
    for (const auto& w : q.vertices()) v.push_back(f(w));
    return path(target, std::move(v));
}

bool is_annulus(const space& sp) {
    return sp.kind() == space_kind::disk && sp.inner() > 0.0;
}

// Homotopy-class invariant comparison for a closed loop presented as the
// difference of two paths sharing endpoints. Returns true when
// left * reverse(right) is null-homotopic in sp.
bool paths_homotopic(const space& sp, const path& left, const path& right, double tol) {
    switch (sp.kind()) {
        case space_kind::circle: {
            double gap0 = circle_dist(left.start().x.real(), right.start().x.real());
            double gap1 = circle_dist(left.end().x.real(), right.end().x.real());
            if (gap0 > tol || gap1 > tol) return false;
            // Align the start lifts; homotopic rel endpoints iff the lift
            // displacements then agree (their difference is an integer).
            double dl = left.end().x.real() - left.start().x.real();
            double dr = right.end().x.real() - right.start().x.real();
            double shift = (right.start().x.real() - left.start().x.real()) -
                           std::round(right.start().x.real() - left.start().x.real());
            return std::abs(dl - (dr - shift)) < 0.5;
        }
        case space_kind::disk: {
            if (sp.dist(left.start(), right.start()) > tol ||
                sp.dist(left.end(), right.end()) > tol)
                return false;
            if (!is_annulus(sp)) return true; // simply connected
            double w = left.winding_around(sp.center()) -
                       right.winding_around(sp.center());
            return std::abs(w) < 0.5;
        }
        case space_kind::discrete: {
            // Paths in a discrete space are constant.
            return sp.dist(left.start(), right.start()) <= tol &&
                   sp.dist(left.end(), right.end()) <= tol &&
                   sp.dist(left.start(), left.end()) <= tol &&
                   sp.dist(right.start(), right.end()) <= tol;
        }
        case space_kind::product: {
            auto project = [](const path& p, bool take_y, const space& fsp) {
                std::vector<pt> v;
                v.reserve(p.size());
                for (const auto& w : p.vertices()) v.push_back(make_pt(take_y ? w.y : w.x));
                return path(fsp, std::move(v));
            };
            return paths_homotopic(sp.factor_x(), project(left, false, sp.factor_x()),
                                   project(right, false, sp.factor_x()), tol) &&
                   paths_homotopic(sp.factor_y(), project(left, true, sp.factor_y()),
                                   project(right, true, sp.factor_y()), tol);
        }
    }
    throw input_error("homotopy classes are not decidable in this space");
}

} // namespace

hsc identity_hsc(std::shared_ptr<const mv_system> sys) {
    hsc h;
    h.src = sys;
    h.dst = sys;
    h.h0 = [](const pt& p) { return p; };
    h.h1 = [](const pt& p) { return p; };
    auto sys_ptr = sys;
    h.G = [sys_ptr](const pt& x, double) { return sys_ptr->sigma(x); };
    h.H = [sys_ptr](const pt& x, double) { return sys_ptr->iota(x); };
    h.name = "identity";
    return h;
}

void check_endpoint_identities(const hsc& h, const pt& x, double endpoint_tol) {
    const space& Y0 = h.dst->X0;
    double g0 = Y0.dist(h.G(x, 0.0), h.h0(h.src->sigma(x)));
    double g1 = Y0.dist(h.G(x, 1.0), h.dst->sigma(h.h1(x)));
    double h0d = Y0.dist(h.H(x, 0.0), h.h0(h.src->iota(x)));
    double h1d = Y0.dist(h.H(x, 1.0), h.dst->iota(h.h1(x)));
    double worst = std::max(std::max(g0, g1), std::max(h0d, h1d));
    if (worst > endpoint_tol)
        throw certificate_error(
            "homotopy endpoint identities fail: deviations G(.,0) " + std::to_string(g0) +
            ", G(.,1) " + std::to_string(g1) + ", H(.,0) " + std::to_string(h0d) +
            ", H(.,1) " + std::to_string(h1d));
}

homotopy_pseudo_orbit apply_hsc(const hsc& h, const homotopy_pseudo_orbit& in,
                                double endpoint_tol) {
    for (const auto& x : in.points) check_endpoint_identities(h, x, endpoint_tol);

    const space& Y0 = h.dst->X0;
    homotopy_pseudo_orbit out;
    out.window = in.window;
    out.points.reserve(in.points.size());
    for (const auto& x : in.points) out.points.push_back(h.h1(x));

    const int K = h.subdivision;
    // Join tolerance: the endpoint identities hold to endpoint_tol, but the
    // input hpo itself matches only to its own (coarser) validation slack and
    // h0 can expand that; allow a loose but still tiny join gap.
    const double join_tol = 1e-6;
    for (long i = in.window.lo + 1; i <= in.window.hi; ++i) {
        const pt& xprev = in.point_at(i - 1);
        const pt& xcur = in.point_at(i);
        path ginv = sample_homotopy(Y0, h.G, xprev, K).reversed();
        path mid = map_path(Y0, h.h0, in.path_at(i), K);
        path tail = sample_homotopy(Y0, h.H, xcur, K);
        out.paths.push_back(path::concat(path::concat(ginv, mid, join_tol), tail, join_tol));
    }
    out.C = max_path_length(out);
    return out;
}

hsc compose_hsc(const hsc& k, const hsc& h) {
    // The middle system must be the same object or an identical family: the
    // spaces matching is not enough (a circle carries many coverings).
    const mv_system& a = *h.dst;
    const mv_system& b = *k.src;
    bool same = h.dst.get() == k.src.get() ||
                (a.family == b.family && a.family != system_family::custom &&
                 a.degree == b.degree && a.eps == b.eps && a.c == b.c && a.R == b.R &&
                 a.inner_r == b.inner_r && a.graph == b.graph && a.X0.same_shape(b.X0));
    if (!same) throw input_error("semi-conjugacies do not compose: target/source mismatch");
    hsc out;
    out.src = h.src;
    out.dst = k.dst;
    auto h0 = h.h0, h1 = h.h1, k0 = k.h0, k1 = k.h1;
    out.h0 = [h0, k0](const pt& p) { return k0(h0(p)); };
    out.h1 = [h1, k1](const pt& p) { return k1(h1(p)); };
    auto Gh = h.G, Gk = k.G, Hh = h.H, Hk = k.H;
    out.G = [Gh, Gk, k0, h1](const pt& x, double t) {
        if (t <= 0.5) return k0(Gh(x, 2.0 * t));
        return Gk(h1(x), 2.0 * t - 1.0);
    };
    out.H = [Hh, Hk, k0, h1](const pt& x, double t) {
        if (t <= 0.5) return k0(Hh(x, 2.0 * t));
        return Hk(h1(x), 2.0 * t - 1.0);
    };
    out.subdivision = std::max(h.subdivision, k.subdivision);
    out.name = k.name + " after " + h.name;
    return out;
}

homotopy_check_result hpo_homotopy_check(const mv_system& sys,
                                         const homotopy_pseudo_orbit& a,
                                         const homotopy_pseudo_orbit& b,
                                         const std::vector<path>& betas,
                                         double tol) {
    if (a.window.lo != b.window.lo || a.window.hi != b.window.hi)
        throw input_error("pseudo-orbits must share a window to compare them");
    if (betas.size() != a.points.size())
        throw input_error("need one connecting path per window index");

    const int K = 64;
    homotopy_check_result res;
    res.homotopic = true;
    for (long i = a.window.lo + 1; i <= a.window.hi; ++i) {
        const path& beta_prev = betas[static_cast<std::size_t>(i - 1 - a.window.lo)];
        const path& beta_cur = betas[static_cast<std::size_t>(i - a.window.lo)];
        path left = path::concat(a.path_at(i), map_path(sys.X0, sys.iota, beta_cur, K), tol);
        path right =
            path::concat(map_path(sys.X0, sys.sigma, beta_prev, K), b.path_at(i), tol);
        if (!paths_homotopic(sys.X0, left, right, tol)) {
            res.homotopic = false;
            res.failing.push_back(i);
        }
    }
    return res;
}

} // namespace shadowing
