#include "shadowing/system.hpp"

#include <algorithm>
#include <cmath>

#include "shadowing/errors.hpp"

namespace shadowing {

std::vector<orbit_defect> validate_orbit(const mv_system& sys, const orbit_seg& o,
                                         double tol) {
    if (o.points.size() != static_cast<std::size_t>(o.window.size()))
        throw input_error("orbit point count does not match its window");
    for (long i = o.window.lo; i <= o.window.hi; ++i) {
        if (!sys.in_X1(o.at(i), tol))
            throw input_error("orbit point at index " + std::to_string(i) +
                              " is outside the domain");
    }
    std::vector<orbit_defect> out;
    for (long i = o.window.lo + 1; i <= o.window.hi; ++i) {
        double d = sys.X0.dist(sys.sigma(o.at(i - 1)), sys.iota(o.at(i)));
        out.push_back({i, d});
    }
    return out;
}

double max_defect(const mv_system& sys, const orbit_seg& o) {
    double m = 0.0;
    for (long i = o.window.lo + 1; i <= o.window.hi; ++i)
        m = std::max(m, sys.X0.dist(sys.sigma(o.at(i - 1)), sys.iota(o.at(i))));
    return m;
}

orbit_seg shift_orbit(const orbit_seg& o) {
    if (o.window.size() < 2) throw input_error("cannot shift a single-point window");
    orbit_seg s;
    s.window = {o.window.lo, o.window.hi - 1, o.window.bi};
    s.points.assign(o.points.begin() + 1, o.points.end());
    return s;
}

orbit_seg restrict_orbit(const orbit_seg& o, long lo, long hi) {
    if (lo < o.window.lo || hi > o.window.hi || lo > hi)
        throw input_error("restriction window [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "] is not inside [" +
                          std::to_string(o.window.lo) + ", " + std::to_string(o.window.hi) +
                          "]");
    orbit_seg out;
    out.window = {lo, hi, o.window.bi};
    out.points.assign(o.points.begin() + (lo - o.window.lo),
                      o.points.begin() + (hi - o.window.lo + 1));
    return out;
}

homotopy_pseudo_orbit as_pseudo_orbit(const mv_system& sys, const orbit_seg& o,
                                      double tol) {
    auto defects = validate_orbit(sys, o, tol);
    for (const auto& d : defects)
        if (d.defect > tol)
            throw input_error("orbit defect " + std::to_string(d.defect) + " at index " +
                              std::to_string(d.index) + " exceeds tolerance");
    homotopy_pseudo_orbit h;
    h.window = o.window;
    h.points = o.points;
    for (long i = o.window.lo + 1; i <= o.window.hi; ++i)
        h.paths.push_back(path::constant(sys.X0, sys.sigma(o.at(i - 1))));
    h.C = 0.0;
    return h;
}

double max_path_length(const homotopy_pseudo_orbit& h) {
    double m = 0.0;
    for (const auto& p : h.paths) m = std::max(m, p.length());
    return m;
}

void validate_pseudo_orbit(const mv_system& sys, const homotopy_pseudo_orbit& h,
                           double tol) {
    if (h.points.size() != static_cast<std::size_t>(h.window.size()))
        throw input_error("pseudo-orbit point count does not match its window");
    if (h.paths.size() + 1 != h.points.size())
        throw input_error("pseudo-orbit needs one connecting path per adjacent pair");
    for (long i = h.window.lo; i <= h.window.hi; ++i)
        if (!sys.in_X1(h.point_at(i), tol))
            throw input_error("pseudo-orbit point at index " + std::to_string(i) +
                              " is outside the domain");
    for (long i = h.window.lo + 1; i <= h.window.hi; ++i) {
        const path& a = h.path_at(i);
        double d0 = sys.X0.dist(sys.sigma(h.point_at(i - 1)), a.start());
        double d1 = sys.X0.dist(a.end(), sys.iota(h.point_at(i)));
        if (d0 > tol)
            throw input_error("connecting path at index " + std::to_string(i) +
                              " does not start at sigma of the previous point (gap " +
                              std::to_string(d0) + ")");
        if (d1 > tol)
            throw input_error("connecting path at index " + std::to_string(i) +
                              " does not end at the point's inclusion (gap " +
                              std::to_string(d1) + ")");
        if (h.C > 0.0 && a.length() > h.C + tol)
            throw input_error("connecting path at index " + std::to_string(i) +
                              " exceeds the declared length bound");
    }
}

} // namespace shadowing
