#include "shadowing/space.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "shadowing/errors.hpp"

namespace shadowing {

namespace {

struct gl_node {
    double x, w;
};

// 32-node Gauss-Legendre rule on [-1, 1].
constexpr std::array<gl_node, 32> gl32{{
    {-0.99726386184948157, 0.0070186100094692984},
    {-0.98561151154526838, 0.016274394730905965},
    {-0.96476225558750639, 0.025392065309262427},
    {-0.93490607593773967, 0.034273862913021626},
    {-0.8963211557660522, 0.042835898022226426},
    {-0.84936761373256997, 0.050998059262376244},
    {-0.79448379596794239, 0.058684093478535704},
    {-0.73218211874028971, 0.065822222776361752},
    {-0.66304426693021523, 0.072345794108848449},
    {-0.5877157572407623, 0.078193895787070311},
    {-0.50689990893222936, 0.083311924226946846},
    {-0.42135127613063533, 0.087652093004403908},
    {-0.33186860228212767, 0.091173878695763863},
    {-0.23928736225213706, 0.093844399080804566},
    {-0.14447196158279649, 0.095638720079274833},
    {-0.04830766568773831, 0.096540088514727812},
    {0.04830766568773831, 0.096540088514727812},
    {0.14447196158279649, 0.095638720079274833},
    {0.23928736225213706, 0.093844399080804566},
    {0.33186860228212767, 0.091173878695763863},
    {0.42135127613063533, 0.087652093004403908},
    {0.50689990893222936, 0.083311924226946846},
    {0.5877157572407623, 0.078193895787070311},
    {0.66304426693021523, 0.072345794108848449},
    {0.73218211874028971, 0.065822222776361752},
    {0.79448379596794239, 0.058684093478535704},
    {0.84936761373256997, 0.050998059262376244},
    {0.8963211557660522, 0.042835898022226426},
    {0.93490607593773967, 0.034273862913021626},
    {0.96476225558750639, 0.025392065309262427},
    {0.98561151154526838, 0.016274394730905965},
    {0.99726386184948157, 0.0070186100094692984},
}};

} // namespace

double circle_reduce(double lift) {
    double r = lift - std::floor(lift);
    if (r >= 1.0) r = 0.0; // floor rounding at negative epsilons
    return r;
}

double circle_dist(double lift_a, double lift_b) {
    double d = circle_reduce(lift_a - lift_b);
    return std::min(d, 1.0 - d);
}

double poincare_dist(cplx center, double radius, cplx a, cplx b) {
    // Normalize to the unit disk; 2 artanh of the Mobius-invariant ratio.
    cplx u = (a - center) / radius;
    cplx v = (b - center) / radius;
    double num = std::abs(u - v);
    double den = std::abs(1.0 - u * std::conj(v));
    if (den <= 0.0) return std::numeric_limits<double>::infinity();
    double r = num / den;
    if (r >= 1.0) return std::numeric_limits<double>::infinity();
    return 2.0 * std::atanh(r);
}

space space::circle() {
    space s;
    s.kind_ = space_kind::circle;
    s.metric_ = metric_kind::euclidean;
    return s;
}

space space::discrete(long n) {
    if (n <= 0) throw input_error("discrete space needs a positive element count");
    space s;
    s.kind_ = space_kind::discrete;
    s.elements_ = n;
    return s;
}

space space::disk(cplx center, double radius, double inner, metric_kind metric) {
    if (!(radius > 0.0)) throw input_error("disk space needs a positive radius");
    if (inner < 0.0 || inner >= radius)
        throw input_error("disk inner radius must lie in [0, radius)");
    if (metric == metric_kind::poincare && inner > 0.0)
        throw input_error("poincare metric is only defined on a full disk (inner == 0)");
    space s;
    s.kind_ = space_kind::disk;
    s.center_ = center;
    s.radius_ = radius;
    s.inner_ = inner;
    s.metric_ = metric;
    return s;
}

space space::product(const space& fx, const space& fy) {
    if (fx.kind_ == space_kind::product || fy.kind_ == space_kind::product)
        throw input_error("product spaces take one-factor components");
    space s;
    s.kind_ = space_kind::product;
    s.fx_ = std::make_shared<space>(fx);
    s.fy_ = std::make_shared<space>(fy);
    return s;
}

const space& space::factor_x() const {
    if (!fx_) throw input_error("not a product space");
    return *fx_;
}

const space& space::factor_y() const {
    if (!fy_) throw input_error("not a product space");
    return *fy_;
}

double space::dist(const pt& a, const pt& b) const {
    switch (kind_) {
        case space_kind::circle:
            return circle_dist(a.x.real(), b.x.real());
        case space_kind::discrete:
            return std::llround(a.x.real()) == std::llround(b.x.real()) ? 0.0 : 1.0;
        case space_kind::disk:
            if (metric_ == metric_kind::poincare)
                return poincare_dist(center_, radius_, a.x, b.x);
            return std::abs(a.x - b.x);
        case space_kind::product:
            return fx_->dist(make_pt(a.x), make_pt(b.x)) +
                   fy_->dist(make_pt(a.y), make_pt(b.y));
    }
    return 0.0;
}

bool space::contains(const pt& p, double tol) const {
    switch (kind_) {
        case space_kind::circle:
            return std::abs(p.x.imag()) <= tol;
        case space_kind::discrete: {
            long k = std::llround(p.x.real());
            return std::abs(p.x.real() - static_cast<double>(k)) <= tol &&
                   std::abs(p.x.imag()) <= tol && k >= 0 && k < elements_;
        }
        case space_kind::disk: {
            double r = std::abs(p.x - center_);
            return r <= radius_ + tol && r >= inner_ - tol;
        }
        case space_kind::product:
            return fx_->contains(make_pt(p.x), tol) && fy_->contains(make_pt(p.y), tol);
    }
    return false;
}

double space::segment_length(const pt& a, const pt& b) const {
    switch (kind_) {
        case space_kind::circle:
            return std::abs(a.x.real() - b.x.real());
        case space_kind::discrete:
            return dist(a, b);
        case space_kind::disk: {
            if (metric_ == metric_kind::euclidean) return std::abs(a.x - b.x);
            // Hyperbolic length of the euclidean chord: integrate
            // 2R |z'(t)| / (R^2 - |z - c|^2) dt over the segment.
            cplx d = b.x - a.x;
            double speed = std::abs(d);
            if (speed == 0.0) return 0.0;
            double sum = 0.0;
            for (const auto& n : gl32) {
                double t = 0.5 * (n.x + 1.0);
                cplx z = a.x + t * d;
                double den = radius_ * radius_ - std::norm(z - center_);
                if (den <= 0.0) return std::numeric_limits<double>::infinity();
                sum += n.w * (2.0 * radius_ * speed) / den;
            }
            return 0.5 * sum;
        }
        case space_kind::product:
            return fx_->segment_length(make_pt(a.x), make_pt(b.x)) +
                   fy_->segment_length(make_pt(a.y), make_pt(b.y));
    }
    return 0.0;
}

bool space::same_shape(const space& other, double tol) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
        case space_kind::circle:
            return true;
        case space_kind::discrete:
            return elements_ == other.elements_;
        case space_kind::disk:
            return metric_ == other.metric_ && std::abs(center_ - other.center_) <= tol &&
                   std::abs(radius_ - other.radius_) <= tol &&
                   std::abs(inner_ - other.inner_) <= tol;
        case space_kind::product:
            return fx_->same_shape(*other.fx_, tol) && fy_->same_shape(*other.fy_, tol);
    }
    return false;
}

} // namespace shadowing
