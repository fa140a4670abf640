#include "shadowing/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "shadowing/errors.hpp"
#include "shadowing/expanding.hpp"
#include "shadowing/parallel.hpp"

namespace shadowing {

namespace {

constexpr double two_pi = 6.283185307179586476925286766559;

space box_space(const henon_params& hp) {
    return space::product(space::disk(cplx{0, 0}, hp.Rx, hp.rx),
                          space::disk(cplx{0, 0}, hp.Ry));
}

double orbit_defect_max(const crossed_system& sys, const std::vector<pt>& pts) {
    double m = 0.0;
    for (std::size_t j = 1; j < pts.size(); ++j) {
        pt img = sys.f(pts[j - 1]);
        double d = std::abs(img.x - pts[j].x) + std::abs(img.y - pts[j].y);
        // a non-finite step must read as a huge defect, not drop out of the max
        if (!std::isfinite(d)) return std::numeric_limits<double>::infinity();
        m = std::max(m, d);
    }
    return m;
}

} // namespace

box_certificates henon_margins(const henon_params& hp) {
    if (hp.b == cplx{0.0, 0.0})
        throw input_error("the crossed family needs b != 0 (the map must be invertible)");
    if (!(hp.Rx > 0.0) || !(hp.Ry > 0.0) || hp.rx < 0.0 || hp.rx >= hp.Rx)
        throw input_error("box radii must satisfy 0 <= rx < Rx, Ry > 0");
    double ac = std::abs(hp.c), ab = std::abs(hp.b);

    box_certificates m;
    double outer = hp.Rx * hp.Rx - ac - ab * hp.Ry - hp.Rx;
    if (hp.rx > 0.0) {
        double inner = hp.rx - (hp.rx * hp.rx + ac + ab * hp.Ry);
        m.bcc_image = std::min(outer, inner);
    } else {
        m.bcc_image = outer;
    }
    m.bcc_preimage = (hp.Ry * hp.Ry - ac - hp.Rx) / ab - hp.Ry;

    double occ_disk = ac - hp.Rx - ab * hp.Ry;
    double occ_annulus = hp.rx > 0.0 ? hp.rx - ac - ab * hp.Ry
                                     : -std::numeric_limits<double>::infinity();
    m.occ = std::max(occ_disk, occ_annulus);

    if (m.occ > 0.0) {
        double s = std::sqrt(m.occ);
        m.lambda_h = 2.0 * s - ab;
        m.lambda_v = (2.0 * s - 1.0) / ab;
    }
    return m;
}

std::shared_ptr<const crossed_system> make_henon_system(const henon_params& hp) {
    box_certificates m = henon_margins(hp);
    std::string bad;
    auto need = [&bad](const char* name, double v, double floor_v) {
        if (!(v > floor_v))
            bad += std::string(bad.empty() ? "" : "; ") + name + " = " + std::to_string(v);
    };
    need("boundary image margin", m.bcc_image, 0.0);
    need("boundary preimage margin", m.bcc_preimage, 0.0);
    need("off-criticality margin", m.occ, 0.0);
    if (m.occ > 0.0) {
        need("horizontal expansion - 1", m.lambda_h - 1.0, 0.0);
        need("vertical expansion - 1", m.lambda_v - 1.0, 0.0);
    }
    if (!bad.empty())
        throw certificate_error("box certificates fail for this parameter box: " + bad);

    auto cs = std::make_shared<crossed_system>();
    cs->hp = hp;
    cs->certs = m;
    cs->degree = 2;
    cplx c = hp.c, b = hp.b;
    cs->f = [c, b](const pt& p) { return pt{p.x * p.x + c - b * p.y, p.x}; };
    cs->finv = [c, b](const pt& p) { return pt{p.y, (p.y * p.y + c - p.x) / b}; };
    cs->jac = [b](const pt& p) {
        return std::array<cplx, 4>{2.0 * p.x, -b, cplx{1.0, 0.0}, cplx{0.0, 0.0}};
    };
    cs->hsolve = [c, b](cplx seed, cplx y_level, cplx target) {
        cplx w = std::sqrt(target - c + b * y_level);
        return std::abs(w - seed) <= std::abs(-w - seed) ? w : -w;
    };

    auto sys = std::make_shared<mv_system>();
    sys->family = system_family::custom;
    sys->name = "crossed quadratic";
    sys->X0 = box_space(hp);
    sys->X1 = sys->X0;
    sys->c = hp.c;
    auto f = cs->f;
    auto finv = cs->finv;
    space X0 = sys->X0;
    sys->iota = [](const pt& p) { return p; };
    sys->sigma = f;
    sys->in_X1 = [X0, f](const pt& p, double tol) {
        return X0.contains(p, tol) && X0.contains(f(p), tol);
    };
    sys->local_invert = [finv](const pt&, const pt& target) { return finv(target); };
    cs->system = sys;
    return cs;
}

int crossed_degree(const crossed_system& sys, cplx y_level, cplx value, long samples) {
    const henon_params& hp = sys.hp;
    auto winding = [&](double r) {
        double total = 0.0;
        cplx prev = sys.f(pt{std::polar(r, 0.0), y_level}).x - value;
        for (long k = 1; k <= samples; ++k) {
            double th = two_pi * static_cast<double>(k) / samples;
            cplx cur = sys.f(pt{std::polar(r, th), y_level}).x - value;
            total += std::arg(cur / prev);
            prev = cur;
        }
        return static_cast<int>(std::llround(total / two_pi));
    };
    int deg = winding(hp.Rx);
    if (hp.rx > 0.0) deg -= winding(hp.rx);
    return deg;
}

lambda_estimate estimate_lambda(const crossed_system& sys, long grid) {
    if (grid < 8) throw input_error("sampling grid too small");
    const henon_params& hp = sys.hp;
    double ab = std::abs(hp.b);
    lambda_estimate est;
    est.horizontal = std::numeric_limits<double>::infinity();
    est.vertical = std::numeric_limits<double>::infinity();
    for (long i = 0; i < grid; ++i) {
        double r = hp.rx + (hp.Rx - hp.rx) * (static_cast<double>(i) + 0.5) / grid;
        for (long j = 0; j < grid; ++j) {
            double th = two_pi * static_cast<double>(j) / grid;
            cplx x = std::polar(r, th);
            for (long iy = 0; iy < grid; ++iy) {
                double ry = hp.Ry * (static_cast<double>(iy) + 0.5) / grid;
                // sampling the diameter suffices: the bounds depend on |y|
                cplx y{ry, 0.0};
                pt p{x, y};
                if (!sys.in_box(sys.f(p), 0.0)) continue;
                ++est.kept;
                est.horizontal = std::min(est.horizontal, 2.0 * std::abs(x) - ab);
                est.vertical = std::min(est.vertical, (2.0 * std::abs(x) - 1.0) / ab);
            }
        }
    }
    if (est.kept == 0)
        throw certificate_error("no sampled box point stays in the box under the map");
    return est;
}

intersection_result unique_intersection(const crossed_system& sys, const horizontal_disk& D,
                                        const vertical_disk& V, cplx seed_x, double tol) {
    auto g = [&](cplx x) {
        pt img = sys.f(pt{x, D.phi(x)});
        return img.x - V.psi(img.y);
    };
    cplx x = seed_x;
    double fd = 1e-7;
    for (int it = 0; it < 200; ++it) {
        cplx gx = g(x);
        if (std::abs(gx) < tol) {
            pt src{x, D.phi(x)};
            return {src, sys.f(src)};
        }
        cplx dg = (g(x + fd) - gx) / fd;
        if (std::abs(dg) < 1e-14)
            throw input_error("disk intersection stalled: derivative vanished");
        cplx step = gx / dg;
        // damping keeps the iterate on the branch through the seed
        for (int h = 0; h < 50 && std::abs(g(x - step)) > std::abs(gx); ++h) step *= 0.5;
        x -= step;
    }
    throw input_error("disk intersection did not converge");
}

shadow_result shadow_hyperbolic(const crossed_system& sys, const homotopy_pseudo_orbit& in,
                                double tol) {
    if (tol <= 0.0) throw input_error("tolerance must be positive");
    const double slack = 1e-6;
    if (in.points.size() != static_cast<std::size_t>(in.window.size()))
        throw input_error("pseudo-orbit point count does not match its window");
    if (in.paths.size() + 1 != in.points.size())
        throw input_error("pseudo-orbit needs one connecting path per adjacent pair");
    for (long i = in.window.lo; i <= in.window.hi; ++i)
        if (!sys.in_box(in.point_at(i), slack))
            throw input_error("pseudo-orbit point at index " + std::to_string(i) +
                              " is outside the box");
    const space& X0 = sys.box();
    for (long i = in.window.lo + 1; i <= in.window.hi; ++i) {
        const path& a = in.path_at(i);
        pt img = sys.f(in.point_at(i - 1));
        if (X0.dist(img, a.start()) > slack)
            throw input_error("connecting path at index " + std::to_string(i) +
                              " does not start at the image of the previous point");
        if (X0.dist(a.end(), in.point_at(i)) > slack)
            throw input_error("connecting path at index " + std::to_string(i) +
                              " does not end at its point");
    }

    double lambda = sys.certs.lambda_h;
    double occ = sys.certs.occ;
    double max_step = occ / 4.0;

    // Slots and exact-endpoint x-projection target paths.
    long lo = in.window.lo, hi = in.window.hi;
    std::vector<pt> slots = in.points;
    // xpaths[k]: x-projection of alpha_{lo+1+k} with exact endpoints.
    std::vector<std::vector<cplx>> xpaths;
    for (long i = lo + 1; i <= hi; ++i) {
        std::vector<cplx> u;
        u.push_back(sys.f(in.point_at(i - 1)).x);
        for (const auto& v : in.path_at(i).vertices()) u.push_back(v.x);
        u.push_back(in.point_at(i).x);
        xpaths.push_back(std::move(u));
    }
    auto xlen = [](const std::vector<cplx>& u) {
        double L = 0.0;
        for (std::size_t k = 1; k < u.size(); ++k) L += std::abs(u[k] - u[k - 1]);
        return L;
    };
    // Full initial path lengths (x and y) drive the budget estimate.
    double C0 = std::max(max_path_length(in), 1e-300);

    shadow_result res;
    long stage_no = 0;
    double best_defect = std::numeric_limits<double>::infinity();

    auto push_select = [&](long cur_lo, long cur_hi) {
        // pushed[j] = f^k(slot_{j-k}); pick the k with the smallest defect.
        std::vector<pt> arr = slots;
        std::vector<pt> best_arr = arr;
        long best_k = 0;
        double best = orbit_defect_max(sys, arr);
        long kmax = std::min<long>(18, cur_hi - cur_lo - 1);
        for (long k = 1; k <= kmax; ++k) {
            std::vector<pt> nxt(arr.size() - 1);
            bool inside = true;
            for (std::size_t j = 0; j + 1 < arr.size(); ++j) {
                nxt[j] = sys.f(arr[j]);
                // once an iterate leaves the box the push has diverged along
                // the expanding direction; further pushes only get worse
                if (!sys.in_box(nxt[j], slack)) inside = false;
            }
            if (!inside) break;
            arr = std::move(nxt);
            double d = orbit_defect_max(sys, arr);
            if (d < best) {
                best = d;
                best_k = k;
                best_arr = arr;
            }
        }
        return std::tuple<double, long, std::vector<pt>>(best, best_k, best_arr);
    };

    while (true) {
        double L = 0.0;
        for (const auto& u : xpaths) L = std::max(L, xlen(u));
        // before any correction the connecting paths still carry a vertical
        // component; afterwards they are horizontal and xlen is their length
        if (stage_no == 0) L = std::max(L, max_path_length(in));

        auto [pdef, pk, parr] = push_select(lo, hi);
        best_defect = pdef;

        shadow_stage st;
        st.stage = stage_no;
        st.max_length = L;
        st.max_defect = pdef;
        res.trace.stages.push_back(st);

        if (pdef <= tol) {
            // Low indices still feel the free bottom boundary (the bottom
            // slot keeps its input y forever): the output is a genuine orbit
            // whose distance to the unique two-sided shadow decays from the
            // bottom at the measured stable rate |b| / (2|x_i|) per index.
            // Advance the window past indices where that influence, seeded
            // by the total displacement the run performed, exceeds tol.
            double delta0 = 0.0;
            for (std::size_t j = 0; j < slots.size(); ++j)
                delta0 = std::max(
                    delta0, X0.dist(in.point_at(lo + static_cast<long>(j)), slots[j]));
            double ab = std::abs(sys.hp.b);
            long t = 0;
            double acc = delta0;
            while (acc > tol && t + 1 < static_cast<long>(slots.size())) {
                acc *= ab / (2.0 * std::abs(slots[static_cast<std::size_t>(t)].x));
                ++t;
            }
            long lo_out = std::max(lo + pk, lo + t);
            if (acc > tol || lo_out > hi) {
                long needed = stage_budget(lambda, C0, tol) + t + 2;
                throw budget_error(
                    "window too small to reach tolerance: boundary-influenced "
                    "indices do not decay inside it; a window of length >= " +
                    std::to_string(needed) + " should suffice; got " +
                    std::to_string(in.window.size()));
            }
            if (lo_out > lo + pk)
                parr.erase(parr.begin(), parr.begin() + (lo_out - lo - pk));
            res.orbit.window = {lo_out, hi, in.window.bi};
            res.orbit.points = std::move(parr);
            break;
        }
        if (hi - lo < 2 || xpaths.empty()) {
            long needed = stage_budget(lambda, C0, tol);
            throw budget_error(
                "window too small to reach tolerance: best defect " +
                std::to_string(best_defect) + "; the certified rate needs about " +
                std::to_string(needed) + " stages, so a window of length >= " +
                std::to_string(needed + 2) + "; got " + std::to_string(in.window.size()));
        }

        ++stage_no;
        long n = hi - lo; // pair count
        std::vector<std::vector<cplx>> tracks(static_cast<std::size_t>(n));
        parallel_for(static_cast<std::size_t>(n), [&](std::size_t k) {
            // continuation of pair (lo+k, lo+k+1): follow xpaths[k] through
            // the horizontal slice at slots[k]
            const auto& u = xpaths[k];
            cplx ylevel = slots[k].y;
            cplx x = slots[k].x;
            std::vector<cplx> track;
            track.push_back(x);
            for (std::size_t s = 1; s < u.size(); ++s) {
                cplx a = u[s - 1], bseg = u[s];
                double seg = std::abs(bseg - a);
                int pieces = std::max(1, static_cast<int>(std::ceil(seg / max_step)));
                for (int q = 1; q <= pieces; ++q) {
                    cplx target = a + (static_cast<double>(q) / pieces) * (bseg - a);
                    x = sys.hsolve(x, ylevel, target);
                    track.push_back(x);
                }
            }
            tracks[k] = std::move(track);
        });

        // p_j endpoint of each track; combined update:
        // new slot_j = (x(p_{j+1}), x(p_j)) for interior j, bottom keeps its y.
        std::vector<pt> new_slots(static_cast<std::size_t>(n));
        for (long j = 0; j < n; ++j) {
            cplx px_next = tracks[static_cast<std::size_t>(j)].back(); // p_{lo+j+1}
            cplx ynew = j == 0 ? slots[0].y : tracks[static_cast<std::size_t>(j - 1)].back();
            new_slots[static_cast<std::size_t>(j)] = pt{px_next, ynew};
        }

        // New connecting paths for pairs (lo+j, lo+j+1), j in [1, n-1):
        // straight x-leg from f(new slot_{j-1}) to the old slot_j x, then the
        // continuation track of the next pair, all at the new y-level.
        std::vector<std::vector<cplx>> new_xpaths(static_cast<std::size_t>(n - 1));
        for (long j = 1; j < n; ++j) {
            std::vector<cplx> u;
            cplx Ax = sys.f(new_slots[static_cast<std::size_t>(j - 1)]).x;
            u.push_back(Ax);
            u.push_back(slots[static_cast<std::size_t>(j)].x);
            const auto& tr = tracks[static_cast<std::size_t>(j)];
            for (std::size_t s = 1; s < tr.size(); ++s) u.push_back(tr[s]);
            new_xpaths[static_cast<std::size_t>(j - 1)] = std::move(u);
        }

        slots = std::move(new_slots);
        xpaths = std::move(new_xpaths);
        hi -= 1;
    }

    // Certifying homotopies: map the per-index displacement through the push.
    res.homotopies.reserve(res.orbit.points.size());
    for (long j = res.orbit.window.lo; j <= res.orbit.window.hi; ++j) {
        pt a = in.point_at(j);
        pt b = res.orbit.at(j);
        res.homotopies.push_back(path::segment(sys.box(), a, b));
    }
    return res;
}

shadow_result induced_map_hyperbolic(const crossed_system& sys, const hsc& h,
                                     const homotopy_pseudo_orbit& in, double tol) {
    homotopy_pseudo_orbit image = apply_hsc(h, in);
    return shadow_hyperbolic(sys, image, tol);
}

bool verify_orbit_uniqueness(const crossed_system& sys, const orbit_seg& a,
                             const orbit_seg& b, double tol) {
    long lo = std::max(a.window.lo, b.window.lo);
    long hi = std::min(a.window.hi, b.window.hi);
    if (lo > hi) throw input_error("orbits have no overlapping window to compare");
    auto check_genuine = [&](const orbit_seg& o) {
        for (long i = o.window.lo + 1; i <= o.window.hi; ++i) {
            pt img = sys.f(o.at(i - 1));
            if (sys.box().dist(img, o.at(i)) > tol)
                throw input_error("orbit defect exceeds tolerance at index " +
                                  std::to_string(i));
        }
    };
    check_genuine(a);
    check_genuine(b);
    for (long i = lo; i <= hi; ++i)
        if (sys.box().dist(a.at(i), b.at(i)) > 2.0 * tol) return false;
    return true;
}

} // namespace shadowing
