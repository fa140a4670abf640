#pragma once

#include <complex>
#include <cstdint>
#include <memory>

namespace shadowing {

using cplx = std::complex<double>;

// A point of a (possibly product) phase space. One-factor spaces use only x;
// product spaces use (x, y). Circle coordinates are stored as real lifts:
// x.real() is a point of R whose class mod 1 is the circle point. All maps
// act on lifts, all circle distances are taken mod 1.
struct pt {
    cplx x{0.0, 0.0};
    cplx y{0.0, 0.0};
};

inline pt make_pt(cplx x) { return pt{x, cplx{0.0, 0.0}}; }
inline pt make_pt(cplx x, cplx y) { return pt{x, y}; }
inline pt make_pt(double x) { return pt{cplx{x, 0.0}, cplx{0.0, 0.0}}; }

enum class space_kind : std::uint8_t { circle, discrete, disk, product };
enum class metric_kind : std::uint8_t { euclidean, poincare };

// Phase-space descriptor with its metric. Supported shapes:
//  - circle: R/Z with circumference-1 arc metric; points are lifts.
//  - discrete: {0, .., n-1} with the 0/1 metric; points are integers in x.real().
//  - disk: { inner <= |z - center| <= radius } (round disk when inner == 0,
//    round annulus otherwise), euclidean or hyperbolic (poincare) metric.
//    The poincare metric is only defined for a full disk (inner == 0).
//  - product: cartesian product of two one-factor spaces acting on x and y,
//    with the sum metric.
class space {
  public:
    static space circle();
    static space discrete(long n);
    static space disk(cplx center, double radius, double inner = 0.0,
                      metric_kind metric = metric_kind::euclidean);
    static space product(const space& fx, const space& fy);

    space_kind kind() const { return kind_; }
    metric_kind metric() const { return metric_; }
    cplx center() const { return center_; }
    double radius() const { return radius_; }
    double inner() const { return inner_; }
    long elements() const { return elements_; }
    const space& factor_x() const;
    const space& factor_y() const;

    // Distance between two points in this space's metric.
    double dist(const pt& a, const pt& b) const;

    // Membership with tolerance: true when the point is within tol of the set.
    bool contains(const pt& p, double tol = 1e-9) const;

    // Length of the straight parameter segment from a to b: the chord for
    // euclidean metrics, the circle arc |lift difference| for circles (NOT
    // reduced mod 1: a segment may wind), and the hyperbolic length of the
    // euclidean chord for poincare disks (32-node Gauss-Legendre quadrature).
    double segment_length(const pt& a, const pt& b) const;

    bool same_shape(const space& other, double tol = 1e-9) const;

  private:
    space() = default;
    space_kind kind_ = space_kind::circle;
    metric_kind metric_ = metric_kind::euclidean;
    cplx center_{0.0, 0.0};
    double radius_ = 1.0;
    double inner_ = 0.0;
    long elements_ = 0;
    std::shared_ptr<const space> fx_, fy_;
};

// Hyperbolic distance between two points of the disk { |z - c| < R }.
double poincare_dist(cplx center, double radius, cplx a, cplx b);

// Reduce a circle lift to its fundamental representative in [0, 1).
double circle_reduce(double lift);

// Circle arc distance mod 1 between two lifts.
double circle_dist(double lift_a, double lift_b);

} // namespace shadowing
