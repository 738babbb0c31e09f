#include "recteig/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace recteig {

namespace {

constexpr double kEdgeMargin = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double segment_distance(Point2 p, Point2 a, Point2 b)
{
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

// Closed L-shape boundary, counterclockwise from (-1,-1).
constexpr std::array<Point2, 7> kLShapeLoop{{
    {-1.0, -1.0}, {1.0, -1.0}, {1.0, 0.0}, {0.0, 0.0}, {0.0, 1.0}, {-1.0, 1.0}, {-1.0, -1.0},
}};

// Samples `count` points along a polyline at equal arclength. With
// `closed`, the last vertex repeats the first and is not emitted twice.
std::vector<Point2> walk_polyline(const std::vector<Point2>& vertices, std::size_t count, bool closed)
{
    std::vector<double> cumulative{0.0};
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        cumulative.push_back(cumulative.back() + std::hypot(vertices[i].x - vertices[i - 1].x,
                                                            vertices[i].y - vertices[i - 1].y));
    }
    const double total = cumulative.back();
    const double step = closed ? total / static_cast<double>(count)
                               : total / static_cast<double>(count - 1);

    std::vector<Point2> out;
    out.reserve(count);
    std::size_t seg = 0;
    for (std::size_t j = 0; j < count; ++j) {
        const double s = (!closed && j + 1 == count) ? total : step * static_cast<double>(j);
        while (seg + 2 < vertices.size() && s > cumulative[seg + 1]) {
            ++seg;
        }
        const double len = cumulative[seg + 1] - cumulative[seg];
        const double t = (s - cumulative[seg]) / len;
        const Point2 a = vertices[seg];
        const Point2 b = vertices[seg + 1];
        out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    }
    return out;
}

}  // namespace

std::string domain_name(const DomainSpec& domain)
{
    return std::visit(Overloaded{
                          [](const Interval&) { return std::string("interval"); },
                          [](const Disk&) { return std::string("disk"); },
                          [](const Ellipse&) { return std::string("ellipse"); },
                          [](const LShape&) { return std::string("lshape"); },
                      },
                      domain);
}

void validate(const DomainSpec& domain)
{
    std::visit(Overloaded{
                   [](const Interval& d) {
                       if (!(d.a < d.b)) throw std::invalid_argument("interval: need a < b");
                   },
                   [](const Disk& d) {
                       if (!(d.radius > 0.0)) throw std::invalid_argument("disk: radius must be positive");
                   },
                   [](const Ellipse& d) {
                       if (!(d.semi_x > 0.0 && d.semi_y > 0.0))
                           throw std::invalid_argument("ellipse: semi-axes must be positive");
                   },
                   [](const LShape&) {},
               },
               domain);
}

bool contains(const DomainSpec& domain, Point2 p)
{
    return std::visit(Overloaded{
                          [&](const Interval& d) {
                              return p.x > d.a && p.x < d.b;
                          },
                          [&](const Disk& d) {
                              return p.x * p.x + p.y * p.y < d.radius * d.radius * (1.0 - kEdgeMargin);
                          },
                          [&](const Ellipse& d) {
                              const double u = p.x / d.semi_x;
                              const double v = p.y / d.semi_y;
                              return u * u + v * v < 1.0 - kEdgeMargin;
                          },
                          [&](const LShape&) {
                              const double lim = 1.0 - kEdgeMargin;
                              if (std::abs(p.x) >= lim || std::abs(p.y) >= lim) return false;
                              return !(p.x > -kEdgeMargin && p.y > -kEdgeMargin);
                          },
                      },
                      domain);
}

double boundary_distance(const DomainSpec& domain, Point2 p)
{
    return std::visit(Overloaded{
                          [&](const Interval&) -> double {
                              throw std::invalid_argument("boundary_distance: 2D domains only");
                          },
                          [&](const Disk& d) { return std::abs(std::hypot(p.x, p.y) - d.radius); },
                          [&](const Ellipse& d) {
                              // First-order distance |F| / |grad F| for F = u^2 + v^2 - 1.
                              const double a2 = d.semi_x * d.semi_x;
                              const double b2 = d.semi_y * d.semi_y;
                              const double f = p.x * p.x / a2 + p.y * p.y / b2 - 1.0;
                              const double g = 2.0 * std::hypot(p.x / a2, p.y / b2);
                              return g > 0.0 ? std::abs(f) / g : std::min(d.semi_x, d.semi_y);
                          },
                          [&](const LShape&) {
                              double best = std::numeric_limits<double>::infinity();
                              for (std::size_t i = 0; i + 1 < kLShapeLoop.size(); ++i) {
                                  best = std::min(best, segment_distance(p, kLShapeLoop[i], kLShapeLoop[i + 1]));
                              }
                              return best;
                          },
                      },
                      domain);
}

PointSet1D equispaced_interval(double a, double b, std::size_t m)
{
    if (!(a < b)) throw std::invalid_argument("equispaced_interval: need a < b");
    if (m < 2) throw std::invalid_argument("equispaced_interval: need m >= 2");
    PointSet1D out;
    out.points.resize(m);
    const double h = (b - a) / static_cast<double>(m - 1);
    for (std::size_t i = 0; i < m; ++i) {
        out.points[i] = a + h * static_cast<double>(i);
    }
    out.points.back() = b;
    return out;
}

PointSet1D exp_clustered_interval(double r_min, double r_max, std::size_t count, bool mirrored)
{
    if (!(r_min > 0.0)) throw std::invalid_argument("exp_clustered_interval: r_min must be positive");
    if (!(r_min < r_max)) throw std::invalid_argument("exp_clustered_interval: need r_min < r_max");
    if (count < 2) throw std::invalid_argument("exp_clustered_interval: need count >= 2");

    const double lo = std::log(r_min);
    const double hi = std::log(r_max);
    std::vector<double> pos(count);
    for (std::size_t i = 0; i < count; ++i) {
        pos[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
    pos.front() = r_min;
    pos.back() = r_max;

    PointSet1D out;
    if (mirrored) {
        out.points.reserve(2 * count);
        for (auto it = pos.rbegin(); it != pos.rend(); ++it) out.points.push_back(-*it);
    }
    out.points.insert(out.points.end(), pos.begin(), pos.end());
    return out;
}

PointSet2D grid_in_domain(const DomainSpec& domain, double spacing)
{
    validate(domain);
    if (!(spacing > 0.0)) throw std::invalid_argument("grid_in_domain: spacing must be positive");

    const auto [half_x, half_y] = std::visit(
        Overloaded{
            [](const Interval&) -> std::pair<double, double> {
                throw std::invalid_argument("grid_in_domain: 2D domains only");
            },
            [](const Disk& d) { return std::pair{d.radius, d.radius}; },
            [](const Ellipse& d) { return std::pair{d.semi_x, d.semi_y}; },
            [](const LShape&) { return std::pair{1.0, 1.0}; },
        },
        domain);

    const auto nx = static_cast<long>(std::floor(half_x / spacing + 1e-9));
    const auto ny = static_cast<long>(std::floor(half_y / spacing + 1e-9));

    PointSet2D out;
    out.role = PointRole::interior;
    for (long j = -ny; j <= ny; ++j) {
        for (long i = -nx; i <= nx; ++i) {
            const Point2 p{static_cast<double>(i) * spacing, static_cast<double>(j) * spacing};
            if (contains(domain, p)) out.points.push_back(p);
        }
    }
    if (out.points.empty()) {
        throw std::invalid_argument("grid_in_domain: no lattice point inside the domain");
    }
    return out;
}

PointSet2D boundary_equispaced(const DomainSpec& domain, std::size_t count)
{
    validate(domain);
    if (count < 4) throw std::invalid_argument("boundary_equispaced: need count >= 4");

    PointSet2D out;
    out.role = PointRole::boundary;
    out.points.reserve(count);
    const double dt = 2.0 * std::numbers::pi / static_cast<double>(count);

    std::visit(Overloaded{
                   [](const Interval&) {
                       throw std::invalid_argument("boundary_equispaced: 2D domains only");
                   },
                   [&](const Disk& d) {
                       for (std::size_t j = 0; j < count; ++j) {
                           const double t = dt * static_cast<double>(j);
                           out.points.push_back({d.radius * std::cos(t), d.radius * std::sin(t)});
                       }
                   },
                   [&](const Ellipse& d) {
                       for (std::size_t j = 0; j < count; ++j) {
                           const double t = dt * static_cast<double>(j);
                           out.points.push_back({d.semi_x * std::cos(t), d.semi_y * std::sin(t)});
                       }
                   },
                   [&](const LShape&) {
                       const std::vector<Point2> loop(kLShapeLoop.begin(), kLShapeLoop.end());
                       out.points = walk_polyline(loop, count, true);
                   },
               },
               domain);
    return out;
}

PointSet2D boundary_lshape_clustered(std::size_t count, double r_min)
{
    if (count < 6) throw std::invalid_argument("boundary_lshape_clustered: need count >= 6");
    if (!(r_min > 0.0 && r_min < 1.0)) {
        throw std::invalid_argument("boundary_lshape_clustered: need 0 < r_min < 1");
    }

    const std::size_t per_arm = std::max<std::size_t>(1, count / 8);
    const std::size_t outer = count - 2 * per_arm;

    std::vector<double> dist(per_arm);
    for (std::size_t j = 0; j < per_arm; ++j) {
        dist[j] = r_min * std::pow(1.0 / r_min, static_cast<double>(j) / static_cast<double>(per_arm));
    }

    PointSet2D out;
    out.role = PointRole::boundary;
    out.points.reserve(count);
    for (double r : dist) out.points.push_back({r, 0.0});

    const std::vector<Point2> path{{1.0, 0.0}, {1.0, -1.0}, {-1.0, -1.0}, {-1.0, 1.0}, {0.0, 1.0}};
    const auto outer_pts = walk_polyline(path, outer, false);
    out.points.insert(out.points.end(), outer_pts.begin(), outer_pts.end());

    for (auto it = dist.rbegin(); it != dist.rend(); ++it) out.points.push_back({0.0, *it});
    return out;
}

void write_csv(std::ostream& os, const PointSet1D& set)
{
    os << "x,role\n";
    os.precision(17);
    for (double x : set.points) os << x << ",interior\n";
}

void write_csv(std::ostream& os, const PointSet2D& set)
{
    const char* role = set.role == PointRole::interior ? "interior" : "boundary";
    os << "x,y,role\n";
    os.precision(17);
    for (const auto& p : set.points) os << p.x << ',' << p.y << ',' << role << '\n';
}

}  // namespace recteig
