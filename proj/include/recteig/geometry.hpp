#pragma once

// Sample point sets for intervals and the planar drums (disk, ellipse,
// L-shape). Every constructor is deterministic: the same arguments give the
// same points in the same order.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace recteig {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// Strictly increasing real sample points.
struct PointSet1D {
    std::vector<double> points;

    std::size_t size() const { return points.size(); }
};

enum class PointRole { interior, boundary };

struct PointSet2D {
    std::vector<Point2> points;
    PointRole role = PointRole::interior;

    std::size_t size() const { return points.size(); }
};

struct Interval {
    double a = -1.0;
    double b = 1.0;
};

struct Disk {
    double radius = 1.0;
};

struct Ellipse {
    double semi_x = 1.0;
    double semi_y = 0.5;
};

/// The square [-1,1]^2 with the quadrant x > 0, y > 0 removed. The reentrant
/// corner sits at the origin; the edges meeting there run along +x and +y.
struct LShape {};

using DomainSpec = std::variant<Interval, Disk, Ellipse, LShape>;

std::string domain_name(const DomainSpec& domain);

/// Throws std::invalid_argument for degenerate measures (a >= b, radius <= 0, ...).
void validate(const DomainSpec& domain);

/// Strict interior test. Points within a relative 1e-12 of the boundary count
/// as boundary, so lattice points that land on the circle are excluded.
bool contains(const DomainSpec& domain, Point2 p);

/// Distance from `p` to the boundary curve (2D domains only).
double boundary_distance(const DomainSpec& domain, Point2 p);

/// m points from a to b inclusive, uniform spacing.
PointSet1D equispaced_interval(double a, double b, std::size_t m);

/// `count` points with log-equispaced magnitudes in [r_min, r_max]; when
/// `mirrored`, the union with their negatives (2*count points), sorted.
PointSet1D exp_clustered_interval(double r_min, double r_max, std::size_t count, bool mirrored);

/// Lattice {(i*h, j*h)} over the bounding box, keeping points strictly
/// inside the domain. Ordered row by row, y outer, x inner.
PointSet2D grid_in_domain(const DomainSpec& domain, double spacing);

/// Disk: equal angles from angle 0. Ellipse: equal parameter steps in
/// (a cos t, b sin t). L-shape: equal arclength around the closed boundary
/// starting at (-1,-1).
PointSet2D boundary_equispaced(const DomainSpec& domain, std::size_t count);

/// L-shape boundary with log-spaced distances from r_min up to (but not
/// including) 1 along the two edges that meet the reentrant corner, and
/// equal arclength spacing along the remaining outer path
/// (1,0) -> (1,-1) -> (-1,-1) -> (-1,1) -> (0,1), endpoints included.
/// Each corner edge gets count/8 points.
PointSet2D boundary_lshape_clustered(std::size_t count, double r_min);

/// CSV with header "x,role" or "x,y,role".
void write_csv(std::ostream& os, const PointSet1D& set);
void write_csv(std::ostream& os, const PointSet2D& set);

}  // namespace recteig
