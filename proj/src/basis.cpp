#include "recteig/basis.hpp"

#include "arnoldi.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace recteig {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// T_k(s), T_k'(s), T_k''(s) by the three-term recurrence and its derivatives.
void chebyshev_columns(std::span<const double> x, std::size_t n, double a, double b, Matrix& values,
                       Matrix& second, Eigen::Index col0)
{
    const double scale = 2.0 / (b - a);
    const double shift = (a + b) / 2.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        const double s = (x[i] - shift) * scale;
        double t0 = 1.0, t1 = s;
        double d0 = 0.0, d1 = 1.0;
        double e0 = 0.0, e1 = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const auto c = col0 + static_cast<Eigen::Index>(k);
            if (k == 0) {
                values(r, c) = t0;
                second(r, c) = 0.0;
                continue;
            }
            if (k == 1) {
                values(r, c) = t1;
                second(r, c) = 0.0;
                continue;
            }
            const double t2 = 2.0 * s * t1 - t0;
            const double d2 = 2.0 * t1 + 2.0 * s * d1 - d0;
            const double e2 = 4.0 * d1 + 2.0 * s * e1 - e0;
            values(r, c) = t2;
            second(r, c) = e2 * scale * scale;
            t0 = t1, t1 = t2;
            d0 = d1, d1 = d2;
            e0 = e1, e1 = e2;
        }
    }
}

void check_in_interval(std::span<const double> x, double a, double b, const char* what)
{
    const double slack = 1e-12 * (b - a);
    for (double v : x) {
        if (v < a - slack || v > b + slack) {
            throw std::invalid_argument(std::string(what) + ": sample point outside [a, b]");
        }
    }
}

double wrap_angle(double theta)
{
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    return t;
}

// Column-block evaluators. Each fills `cols` columns starting at col0.

void eval_part(const ChebyshevFamily& fam, std::span<const double> x, Matrix& v, Matrix& d2, Eigen::Index col0)
{
    check_in_interval(x, fam.a, fam.b, "chebyshev_basis");
    chebyshev_columns(x, fam.n, fam.a, fam.b, v, d2, col0);
}

void eval_part(const LogChargeFamily& fam, std::span<const double> x, Matrix& v, Matrix& d2, Eigen::Index col0)
{
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        v(r, col0) = 1.0;
        d2(r, col0) = 0.0;
        for (std::size_t j = 0; j < fam.charges.size(); ++j) {
            const auto c = col0 + 1 + static_cast<Eigen::Index>(j);
            const Complex dz = Complex(x[i], 0.0) - fam.charges[j];
            v(r, c) = std::log(std::abs(dz));
            d2(r, c) = -std::real(1.0 / (dz * dz));
        }
    }
}

void eval_part(const LightningFamily& fam, std::span<const double> x, Matrix& v, Matrix& d2, Eigen::Index col0)
{
    check_in_interval(x, -1.0, 1.0, "lightning_basis");
    const PoleSpacing spacing = lightning_pole_spacing(fam.n_poles);
    const auto np = static_cast<Eigen::Index>(fam.n_poles);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        for (Eigen::Index j = 0; j < np; ++j) {
            const double d = spacing.d[static_cast<std::size_t>(j)];
            const double d3 = d * d * d;
            const Complex w = Complex(x[i], -d);
            const Complex val = d3 / w;
            const Complex dd = 2.0 * d3 / (w * w * w);
            v(r, col0 + j) = val.real();
            v(r, col0 + np + j) = val.imag();
            d2(r, col0 + j) = dd.real();
            d2(r, col0 + np + j) = dd.imag();
        }
    }
    chebyshev_columns(x, fam.n_poly + 1, -1.0, 1.0, v, d2, col0 + 2 * np);
}

void eval_part(const MultiquadricFamily& fam, std::span<const Point2> pts, Matrix& v, Matrix& lap,
               Eigen::Index col0)
{
    const double c2 = fam.c * fam.c;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        v(r, col0) = 1.0;
        lap(r, col0) = 0.0;
        for (std::size_t k = 0; k < fam.centers.size(); ++k) {
            const auto c = col0 + 1 + static_cast<Eigen::Index>(k);
            const double dx = pts[i].x - fam.centers[k].x;
            const double dy = pts[i].y - fam.centers[k].y;
            const double r2 = dx * dx + dy * dy;
            const double q = c2 + r2;
            const double phi = std::sqrt(q);
            v(r, c) = phi;
            lap(r, c) = (r2 + 2.0 * c2) / (q * phi);
        }
    }
}

struct TrigTerm {
    int k;
    int m;
    bool sin_x;
    bool sin_y;
};

std::vector<TrigTerm> fourier_terms(int degree_sum)
{
    std::vector<TrigTerm> terms;
    for (int k = 0; k <= degree_sum; ++k) {
        for (int m = 0; k + m <= degree_sum; ++m) {
            for (bool sx : {false, true}) {
                for (bool sy : {false, true}) {
                    if ((sx && k == 0) || (sy && m == 0)) continue;
                    terms.push_back({k, m, sx, sy});
                }
            }
        }
    }
    return terms;
}

void eval_part(const FourierExtensionFamily& fam, std::span<const Point2> pts, Matrix& v, Matrix& lap,
               Eigen::Index col0)
{
    const auto terms = fourier_terms(fam.degree_sum);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        for (std::size_t t = 0; t < terms.size(); ++t) {
            const auto& term = terms[t];
            const double ax = term.k * pts[i].x;
            const double ay = term.m * pts[i].y;
            const double val = (term.sin_x ? std::sin(ax) : std::cos(ax)) * (term.sin_y ? std::sin(ay) : std::cos(ay));
            const auto c = col0 + static_cast<Eigen::Index>(t);
            v(r, c) = val;
            lap(r, c) = -static_cast<double>(term.k * term.k + term.m * term.m) * val;
        }
    }
}

void eval_part(const ArnoldiFourierFamily& fam, std::span<const Point2> pts, Matrix& v, Matrix& lap,
               Eigen::Index col0)
{
    const auto [values, laplacian] = detail::arnoldi_realify(detail::arnoldi_replay(fam, pts));
    v.middleCols(col0, values.cols()) = values;
    lap.middleCols(col0, laplacian.cols()) = laplacian;
}

void eval_part(const CornerSingularFamily& fam, std::span<const Point2> pts, Matrix& v, Matrix& lap,
               Eigen::Index col0)
{
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        const double dx = pts[i].x - fam.corner.x;
        const double dy = pts[i].y - fam.corner.y;
        const double r = std::hypot(dx, dy);
        const double theta = wrap_angle(std::atan2(dy, dx) - fam.theta_origin);
        for (std::size_t j = 0; j < fam.exponents.size(); ++j) {
            const auto [a, b] = fam.exponents[j];
            const auto c = col0 + static_cast<Eigen::Index>(j);
            const double s = std::sin(b * theta);
            v(row, c) = std::pow(r, a) * s;
            if (r == 0.0) {
                if (a < 2.0 && a != b) {
                    throw std::invalid_argument("corner_singular_basis: sample at the corner has a singular Laplacian");
                }
                lap(row, c) = 0.0;
            } else {
                lap(row, c) = (a * a - b * b) * std::pow(r, a - 2.0) * s;
            }
        }
    }
}

template <class Point, class Fill>
void fill_parts(const BasisFamily& family, std::span<const Point> pts, Matrix& v, Matrix& d, Fill&& fill)
{
    Eigen::Index col = 0;
    for (const auto& part : family.parts) {
        fill(part, pts, v, d, col);
        col += static_cast<Eigen::Index>(column_count(part));
    }
}

Stack1D make_stack1d(const FamilyPart& part, const PointSet1D& points)
{
    BasisFamily family{{part}};
    return sample(family, std::span<const double>(points.points));
}

}  // namespace

std::string describe(const OperatorSpec& op)
{
    return std::visit(Overloaded{
                          [](const Schrodinger1D& s) {
                              std::ostringstream os;
                              os << "-" << s.alpha << " u'' + " << s.potential.coef << " |x|^" << s.potential.power
                                 << " u";
                              return os.str();
                          },
                          [](const Laplace2D&) { return std::string("-laplace(u)"); },
                      },
                      op);
}

std::size_t column_count(const FamilyPart& part)
{
    return std::visit(Overloaded{
                          [](const ChebyshevFamily& f) { return f.n; },
                          [](const LogChargeFamily& f) { return f.charges.size() + 1; },
                          [](const LightningFamily& f) { return 2 * f.n_poles + f.n_poly + 1; },
                          [](const MultiquadricFamily& f) { return f.centers.size() + 1; },
                          [](const FourierExtensionFamily& f) { return fourier_terms(f.degree_sum).size(); },
                          [](const ArnoldiFourierFamily& f) { return f.real_columns(); },
                          [](const CornerSingularFamily& f) { return f.exponents.size(); },
                      },
                      part);
}

bool is_planar(const FamilyPart& part)
{
    return !(std::holds_alternative<ChebyshevFamily>(part) || std::holds_alternative<LogChargeFamily>(part) ||
             std::holds_alternative<LightningFamily>(part));
}

std::size_t BasisFamily::columns() const
{
    std::size_t n = 0;
    for (const auto& p : parts) n += column_count(p);
    return n;
}

bool BasisFamily::is_planar() const
{
    return !parts.empty() && recteig::is_planar(parts.front());
}

std::string BasisFamily::describe() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) os << " + ";
        std::visit(Overloaded{
                       [&](const ChebyshevFamily& f) { os << "chebyshev(n=" << f.n << ", [" << f.a << "," << f.b << "])"; },
                       [&](const LogChargeFamily& f) { os << "log_charges(" << f.charges.size() << ")"; },
                       [&](const LightningFamily& f) {
                           os << "lightning(poles=" << f.n_poles << ", poly=" << f.n_poly << ")";
                       },
                       [&](const MultiquadricFamily& f) {
                           os << "multiquadric(centers=" << f.centers.size() << ", c=" << f.c << ")";
                       },
                       [&](const FourierExtensionFamily& f) { os << "fourier_extension(degree_sum=" << f.degree_sum << ")"; },
                       [&](const ArnoldiFourierFamily& f) { os << "arnoldi_fourier(K=" << f.max_degree << ")"; },
                       [&](const CornerSingularFamily& f) { os << "corner_singular(" << f.exponents.size() << ")"; },
                   },
                   parts[i]);
    }
    return os.str();
}

void SampledBasis::validate() const
{
    if (g.rows() < 1 || g.cols() < 1) throw std::invalid_argument("SampledBasis: empty G");
    if (lg.rows() != g.rows() || lg.cols() != g.cols()) {
        throw std::invalid_argument("SampledBasis: G and LG differ in shape");
    }
    if (boundary_g && boundary_g->cols() != g.cols()) {
        throw std::invalid_argument("SampledBasis: boundary block has the wrong column count");
    }
    require_finite(g, "SampledBasis G");
    require_finite(lg, "SampledBasis LG");
    if (boundary_g) require_finite(*boundary_g, "SampledBasis boundary");
    for (Eigen::Index k = 0; k < g.cols(); ++k) {
        const double bnorm = boundary_g ? boundary_g->col(k).norm() : 0.0;
        if (g.col(k).norm() == 0.0 && bnorm == 0.0) {
            throw std::invalid_argument("SampledBasis: column " + std::to_string(k) + " is identically zero");
        }
    }
}

PoleSpacing lightning_pole_spacing(std::size_t n_poles)
{
    PoleSpacing out;
    out.d.resize(n_poles);
    const double root_n = std::sqrt(static_cast<double>(n_poles));
    for (std::size_t j = 1; j <= n_poles; ++j) {
        out.d[j - 1] = std::exp(4.0 * (std::sqrt(static_cast<double>(j)) - root_n));
    }
    return out;
}

Stack1D chebyshev_basis(std::size_t n, Interval interval, const PointSet1D& points)
{
    if (!(interval.a < interval.b)) throw std::invalid_argument("chebyshev_basis: degenerate interval");
    if (n < 1) throw std::invalid_argument("chebyshev_basis: need n >= 1");
    return make_stack1d(ChebyshevFamily{n, interval.a, interval.b}, points);
}

Stack1D log_charge_basis(const std::vector<Complex>& charges, const PointSet1D& points)
{
    for (const auto& p : charges) {
        if (p.imag() == 0.0) throw std::invalid_argument("log_charge_basis: charge on the real axis");
    }
    return make_stack1d(LogChargeFamily{charges}, points);
}

Stack1D lightning_basis(std::size_t n_poles, std::size_t n_poly, const PointSet1D& points)
{
    return make_stack1d(LightningFamily{n_poles, n_poly}, points);
}

SampledBasis assemble_operator(const Stack1D& stack, const OperatorSpec& op, const PointSet1D& points)
{
    const auto* s = std::get_if<Schrodinger1D>(&op);
    if (!s) throw std::invalid_argument("assemble_operator: 1D stack needs a Schrodinger1D operator");
    if (s->alpha == 0.0) throw std::invalid_argument("assemble_operator: alpha must be nonzero");
    if (stack.second.rows() != stack.values.rows() || stack.second.cols() != stack.values.cols()) {
        throw std::invalid_argument("assemble_operator: missing second-derivative stack");
    }
    if (static_cast<std::size_t>(stack.values.rows()) != points.size()) {
        throw std::invalid_argument("assemble_operator: stack rows differ from the point count");
    }
    Vector potential(static_cast<Eigen::Index>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
        potential(static_cast<Eigen::Index>(i)) = s->potential(points.points[i]);
    }
    SampledBasis out;
    out.g = stack.values;
    out.lg = -s->alpha * stack.second + potential.asDiagonal() * stack.values;
    out.family = stack.family;
    return out;
}

SampledBasis assemble_operator(const Stack2D& stack, const OperatorSpec& op)
{
    if (!std::holds_alternative<Laplace2D>(op)) {
        throw std::invalid_argument("assemble_operator: 2D stack needs the Laplace2D operator");
    }
    if (stack.laplacian.rows() != stack.values.rows() || stack.laplacian.cols() != stack.values.cols()) {
        throw std::invalid_argument("assemble_operator: missing Laplacian stack");
    }
    SampledBasis out;
    out.g = stack.values;
    out.lg = -stack.laplacian;
    out.family = stack.family;
    return out;
}

namespace {

SampledBasis planar_basis(const FamilyPart& part, const PointSet2D& interior, const PointSet2D& boundary)
{
    BasisFamily family{{part}};
    SampledBasis out = assemble_operator(sample(family, std::span<const Point2>(interior.points)), Laplace2D{});
    out.boundary_g = sample(family, std::span<const Point2>(boundary.points)).values;
    return out;
}

}  // namespace

SampledBasis multiquadric_basis(const std::vector<Point2>& centers, double c, const PointSet2D& interior,
                                const PointSet2D& boundary)
{
    if (!(c > 0.0)) throw std::invalid_argument("multiquadric_basis: shape parameter must be positive");
    return planar_basis(MultiquadricFamily{centers, c}, interior, boundary);
}

SampledBasis fourier_extension_basis(int degree_sum, const PointSet2D& interior, const PointSet2D& boundary)
{
    if (degree_sum < 0) throw std::invalid_argument("fourier_extension_basis: degree_sum must be >= 0");
    return planar_basis(FourierExtensionFamily{degree_sum}, interior, boundary);
}

SampledBasis arnoldi_fourier_basis(int max_degree, const PointSet2D& interior, const PointSet2D& boundary)
{
    std::vector<Point2> all = interior.points;
    all.insert(all.end(), boundary.points.begin(), boundary.points.end());

    ArnoldiFourierFamily family;
    const auto tracks = detail::arnoldi_build(max_degree, all, family);
    const auto [values, laplacian] = detail::arnoldi_realify(tracks);

    const auto m = static_cast<Eigen::Index>(interior.size());
    const auto mu = static_cast<Eigen::Index>(boundary.size());
    SampledBasis out;
    out.g = values.topRows(m);
    out.lg = -laplacian.topRows(m);
    out.boundary_g = values.bottomRows(mu);
    out.family.parts.emplace_back(std::move(family));
    return out;
}

std::vector<std::pair<double, double>> reentrant_corner_exponents()
{
    std::vector<std::pair<double, double>> out;
    for (int num : {2, 4, 8, 10, 14, 16, 20, 22, 26, 28}) {
        const double a = num / 3.0;
        for (int bnum = num; bnum > 0; bnum -= 6) {
            out.emplace_back(a, bnum / 3.0);
        }
    }
    return out;
}

SampledBasis corner_singular_basis(Point2 corner, double theta_origin, const PointSet2D& interior,
                                   const PointSet2D& boundary)
{
    constexpr double kSector = 1.5 * std::numbers::pi;
    for (const auto& p : interior.points) {
        const double theta = wrap_angle(std::atan2(p.y - corner.y, p.x - corner.x) - theta_origin);
        if (theta > kSector + 1e-12) {
            throw std::invalid_argument("corner_singular_basis: interior point outside the corner sector");
        }
    }
    return planar_basis(CornerSingularFamily{corner, theta_origin, reentrant_corner_exponents()}, interior, boundary);
}

SampledBasis hconcat(const SampledBasis& left, const SampledBasis& right)
{
    if (left.rows() != right.rows()) throw std::invalid_argument("hconcat: row counts differ");
    if (left.boundary_g.has_value() != right.boundary_g.has_value() ||
        (left.boundary_g && left.boundary_g->rows() != right.boundary_g->rows())) {
        throw std::invalid_argument("hconcat: boundary blocks differ");
    }
    SampledBasis out;
    out.g.resize(left.rows(), left.cols() + right.cols());
    out.g << left.g, right.g;
    out.lg.resize(left.rows(), left.cols() + right.cols());
    out.lg << left.lg, right.lg;
    if (left.boundary_g) {
        Matrix b(left.boundary_g->rows(), left.cols() + right.cols());
        b << *left.boundary_g, *right.boundary_g;
        out.boundary_g = std::move(b);
    }
    out.family = left.family;
    out.family.parts.insert(out.family.parts.end(), right.family.parts.begin(), right.family.parts.end());
    return out;
}

Stack1D sample(const BasisFamily& family, std::span<const double> x)
{
    const auto rows = static_cast<Eigen::Index>(x.size());
    const auto cols = static_cast<Eigen::Index>(family.columns());
    Stack1D out{Matrix(rows, cols), Matrix(rows, cols), family};
    fill_parts<double>(family, x, out.values, out.second,
                       [](const FamilyPart& part, std::span<const double> pts, Matrix& v, Matrix& d, Eigen::Index col) {
                           std::visit(Overloaded{
                                          [&](const ChebyshevFamily& f) { eval_part(f, pts, v, d, col); },
                                          [&](const LogChargeFamily& f) { eval_part(f, pts, v, d, col); },
                                          [&](const LightningFamily& f) { eval_part(f, pts, v, d, col); },
                                          [](const auto&) {
                                              throw std::invalid_argument("sample: planar family at 1D points");
                                          },
                                      },
                                      part);
                       });
    return out;
}

Stack2D sample(const BasisFamily& family, std::span<const Point2> points)
{
    const auto rows = static_cast<Eigen::Index>(points.size());
    const auto cols = static_cast<Eigen::Index>(family.columns());
    Stack2D out{Matrix(rows, cols), Matrix(rows, cols), family};
    fill_parts<Point2>(family, points, out.values, out.laplacian,
                       [](const FamilyPart& part, std::span<const Point2> pts, Matrix& v, Matrix& d, Eigen::Index col) {
                           std::visit(Overloaded{
                                          [&](const MultiquadricFamily& f) { eval_part(f, pts, v, d, col); },
                                          [&](const FourierExtensionFamily& f) { eval_part(f, pts, v, d, col); },
                                          [&](const ArnoldiFourierFamily& f) { eval_part(f, pts, v, d, col); },
                                          [&](const CornerSingularFamily& f) { eval_part(f, pts, v, d, col); },
                                          [](const auto&) {
                                              throw std::invalid_argument("sample: 1D family at planar points");
                                          },
                                      },
                                      part);
                       });
    return out;
}

}  // namespace recteig
