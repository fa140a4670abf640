#include "shadowing/path.hpp"

#include <cmath>

#include "shadowing/errors.hpp"

namespace shadowing {

path::path(space sp, std::vector<pt> vertices) : space_(sp), v_(std::move(vertices)) {
    if (v_.empty()) throw input_error("a path needs at least one vertex");
}

path path::constant(const space& sp, const pt& p) { return path(sp, {p}); }

path path::segment(const space& sp, const pt& a, const pt& b) { return path(sp, {a, b}); }

double path::length() const {
    double len = 0.0;
    for (std::size_t i = 1; i < v_.size(); ++i)
        len += space_.segment_length(v_[i - 1], v_[i]);
    return len;
}

pt path::at(double t) const {
    if (v_.size() == 1) return v_.front();
    if (t <= 0.0) return v_.front();
    if (t >= 1.0) return v_.back();
    double s = t * static_cast<double>(v_.size() - 1);
    std::size_t i = static_cast<std::size_t>(s);
    if (i >= v_.size() - 1) i = v_.size() - 2;
    double u = s - static_cast<double>(i);
    pt out;
    out.x = v_[i].x + u * (v_[i + 1].x - v_[i].x);
    out.y = v_[i].y + u * (v_[i + 1].y - v_[i].y);
    return out;
}

path path::reversed() const {
    std::vector<pt> rv(v_.rbegin(), v_.rend());
    return path(space_, std::move(rv));
}

namespace {

// In circle factors, translate q's lift by the integer closest to (ref - q);
// identity in planar/discrete factors.
pt align_lift(const space& sp, const pt& ref, const pt& q) {
    pt out = q;
    if (sp.kind() == space_kind::circle) {
        out.x += std::round(ref.x.real() - q.x.real());
    } else if (sp.kind() == space_kind::product) {
        pt ax = align_lift(sp.factor_x(), make_pt(ref.x), make_pt(q.x));
        pt ay = align_lift(sp.factor_y(), make_pt(ref.y), make_pt(q.y));
        out.x = ax.x;
        out.y = ay.x;
    }
    return out;
}

cplx lift_shift(const space& sp, const pt& ref, const pt& q0, bool y_factor) {
    // Integer translation applied to the whole path so that q0 aligns to ref.
    pt aligned = align_lift(sp, ref, q0);
    return y_factor ? aligned.y - q0.y : aligned.x - q0.x;
}

} // namespace

path path::concat(const path& a, const path& b, double tol) {
    if (!a.domain_space().same_shape(b.domain_space()))
        throw input_error("cannot concatenate paths in different spaces");
    const space& sp = a.domain_space();
    cplx dx = lift_shift(sp, a.end(), b.start(), false);
    cplx dy = lift_shift(sp, a.end(), b.start(), true);
    pt joined{b.start().x + dx, b.start().y + dy};
    double gap = sp.dist(a.end(), joined);
    if (gap > tol)
        throw input_error("path concatenation endpoint mismatch: gap " + std::to_string(gap));
    std::vector<pt> v = a.v_;
    for (std::size_t i = 1; i < b.v_.size(); ++i)
        v.push_back(pt{b.v_[i].x + dx, b.v_[i].y + dy});
    return path(sp, std::move(v));
}

double path::circle_winding() const {
    if (space_.kind() != space_kind::circle)
        throw input_error("circle_winding needs a circle space");
    return v_.back().x.real() - v_.front().x.real();
}

double path::winding_around(cplx p) const {
    double total = 0.0;
    for (std::size_t i = 1; i < v_.size(); ++i) {
        cplx a = v_[i - 1].x - p;
        cplx b = v_[i].x - p;
        total += std::arg(b / a);
    }
    return total / (2.0 * std::acos(-1.0));
}

path path::refined(int k) const {
    if (k < 1) throw input_error("refinement factor must be >= 1");
    if (v_.size() == 1 || k == 1) return *this;
    std::vector<pt> v;
    v.reserve((v_.size() - 1) * static_cast<std::size_t>(k) + 1);
    for (std::size_t i = 1; i < v_.size(); ++i) {
        for (int j = 0; j < k; ++j) {
            double u = static_cast<double>(j) / k;
            v.push_back(pt{v_[i - 1].x + u * (v_[i].x - v_[i - 1].x),
                           v_[i - 1].y + u * (v_[i].y - v_[i - 1].y)});
        }
    }
    v.push_back(v_.back());
    return path(space_, std::move(v));
}

} // namespace shadowing
