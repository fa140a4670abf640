#pragma once

#include <vector>

#include "shadowing/space.hpp"

namespace shadowing {

// A path is a polyline: at least one vertex, consecutive vertices joined by
// straight parameter segments. In circle factors the vertices are lifts and
// the polyline is the lifted path, so winding is recoverable from vertex
// arithmetic and never lost to mod-1 reduction.
class path {
  public:
    path() = default;
    path(space sp, std::vector<pt> vertices);

    static path constant(const space& sp, const pt& p);
    static path segment(const space& sp, const pt& a, const pt& b);

    const space& domain_space() const { return space_; }
    const std::vector<pt>& vertices() const { return v_; }
    std::size_t size() const { return v_.size(); }

    pt start() const { return v_.front(); }
    pt end() const { return v_.back(); }

    // Arc length in the space's metric (sum of segment lengths).
    double length() const;

    // Evaluate at parameter t in [0, 1], arc-length parametrized per segment
    // count (uniform in vertex index, which is what the algorithms need).
    pt at(double t) const;

    path reversed() const;

    // Concatenation a * b with endpoint matching: b must start where a ends
    // (within tol, in the space's metric). In circle factors b's lifts are
    // shifted by the integer that makes the join continuous, so windings add.
    static path concat(const path& a, const path& b, double tol = 1e-9);

    // Net winding of a circle path: end lift minus start lift. For a loop
    // this is the degree; only meaningful for circle spaces.
    double circle_winding() const;

    // Winding of a planar path around a point (total argument variation /
    // 2*pi along the polyline); exact for polylines avoiding the point.
    double winding_around(cplx p) const;

    // Split every segment into k equal pieces (refinement; same path).
    path refined(int k) const;

  private:
    space space_ = space::circle();
    std::vector<pt> v_;
};

} // namespace shadowing
