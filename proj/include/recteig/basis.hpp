#pragma once

// Sampled basis matrices for the rectangular eigensolvers.
//
// Each family evaluates its functions *and* the derivatives the operator
// needs analytically, then samples them. G holds values, LG holds the
// sampled images L g_k, and boundary_G (2D only) holds traces on the
// boundary sample set.

#include "recteig/geometry.hpp"
#include "recteig/numkernel.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace recteig {

// ---------------------------------------------------------------------------
// Operators

/// V(x) = coef * |x|^power. coef = 0 is the zero potential.
struct PowerPotential {
    double coef = 0.0;
    double power = 0.0;

    double operator()(double x) const
    {
        if (coef == 0.0) return 0.0;
        if (power == 0.0) return coef;
        return coef * std::pow(std::abs(x), power);
    }
};

/// L u = -alpha u'' + V(x) u
struct Schrodinger1D {
    double alpha = 1.0;
    PowerPotential potential;
};

/// L u = -(u_xx + u_yy)
struct Laplace2D {};

using OperatorSpec = std::variant<Schrodinger1D, Laplace2D>;

std::string describe(const OperatorSpec& op);

// ---------------------------------------------------------------------------
// Families

/// T_0 .. T_{n-1} composed with the affine map [a,b] -> [-1,1].
struct ChebyshevFamily {
    std::size_t n = 0;
    double a = -1.0;
    double b = 1.0;
};

/// Constant column followed by log|x - p_j| for each complex charge p_j.
struct LogChargeFamily {
    std::vector<Complex> charges;
};

/// Re and Im of d_j^3 / (x - i d_j) for the clustered pole distances d_j,
/// followed by T_0 .. T_{n_poly} on [-1,1].
struct LightningFamily {
    std::size_t n_poles = 0;
    std::size_t n_poly = 0;
};

/// Constant column followed by sqrt(c^2 + |z - center_k|^2).
struct MultiquadricFamily {
    std::vector<Point2> centers;
    double c = 1.0;
};

/// All nonzero products {cos kx, sin kx} x {cos my, sin my}, k + m <= degree_sum.
struct FourierExtensionFamily {
    int degree_sum = 0;
};

/// Multiplier applied to a parent column in the Arnoldi recurrence.
enum class ArnoldiMultiplier { x, y, y_conj };

/// One step of the trigonometric Arnoldi recurrence:
///   q_j = (M * q_parent - sum_pass Q c_pass) / norm
/// with two classical Gram-Schmidt passes.
struct ArnoldiStep {
    int k = 0;  ///< exponent of e^{ix}
    int m = 0;  ///< exponent of e^{iy}
    std::size_t parent = 0;
    ArnoldiMultiplier multiplier = ArnoldiMultiplier::x;
    std::vector<Complex> pass1;
    std::vector<Complex> pass2;
    double norm = 1.0;
};

/// Orthogonalized e^{i(kx + my)} columns; replaying `steps` evaluates the
/// same complex basis at new points. Real columns are Re of all complex
/// columns followed by Im of columns 1..N-1.
struct ArnoldiFourierFamily {
    int max_degree = 0;
    std::vector<ArnoldiStep> steps;  ///< steps[0] is the constant column

    std::size_t complex_columns() const { return steps.size(); }
    std::size_t real_columns() const { return steps.empty() ? 0 : 2 * steps.size() - 1; }
};

/// r^a sin(b theta) about `corner`, theta measured counterclockwise from the
/// edge leaving the corner in direction `theta_origin`.
struct CornerSingularFamily {
    Point2 corner;
    double theta_origin = 0.0;
    std::vector<std::pair<double, double>> exponents;  ///< (a, b) pairs
};

using FamilyPart = std::variant<ChebyshevFamily, LogChargeFamily, LightningFamily, MultiquadricFamily,
                                FourierExtensionFamily, ArnoldiFourierFamily, CornerSingularFamily>;

/// Enough information to re-evaluate every column at new points. Columns of
/// the parts are concatenated in order.
struct BasisFamily {
    std::vector<FamilyPart> parts;

    std::size_t columns() const;
    bool is_planar() const;
    std::string describe() const;
};

std::size_t column_count(const FamilyPart& part);
bool is_planar(const FamilyPart& part);

// ---------------------------------------------------------------------------
// Sample stacks

/// Values and second derivatives of a 1D family at the sample points.
struct Stack1D {
    Matrix values;
    Matrix second;
    BasisFamily family;
};

/// Values and Laplacians of a 2D family at the sample points.
struct Stack2D {
    Matrix values;
    Matrix laplacian;
    BasisFamily family;
};

/// G, LG, optional boundary traces, and the family that produced them.
struct SampledBasis {
    Matrix g;
    Matrix lg;
    std::optional<Matrix> boundary_g;
    BasisFamily family;

    Eigen::Index rows() const { return g.rows(); }
    Eigen::Index cols() const { return g.cols(); }
    /// Throws std::invalid_argument if shapes disagree or a column is zero.
    void validate() const;
};

/// d_j = exp(4 (sqrt(j) - sqrt(n_poles))), j = 1..n_poles.
struct PoleSpacing {
    std::vector<double> d;

    std::size_t n_poles() const { return d.size(); }
};

PoleSpacing lightning_pole_spacing(std::size_t n_poles);

Stack1D chebyshev_basis(std::size_t n, Interval interval, const PointSet1D& points);
Stack1D log_charge_basis(const std::vector<Complex>& charges, const PointSet1D& points);
Stack1D lightning_basis(std::size_t n_poles, std::size_t n_poly, const PointSet1D& points);

SampledBasis multiquadric_basis(const std::vector<Point2>& centers, double c, const PointSet2D& interior,
                                const PointSet2D& boundary);
SampledBasis fourier_extension_basis(int degree_sum, const PointSet2D& interior, const PointSet2D& boundary);

/// Orthogonalizes over the interior and boundary points together (equal
/// weights), normalized to unit RMS. Throws SolverError naming the exponent
/// pair if a new column collapses below 1e-14 of its pre-orthogonalization norm.
SampledBasis arnoldi_fourier_basis(int max_degree, const PointSet2D& interior, const PointSet2D& boundary);

/// The (a, b) pairs for the reentrant right-angle corner:
/// a in {2/3, 4/3, 8/3, ..., 28/3}, b = a, a-2, ... > 0. Thirty pairs.
std::vector<std::pair<double, double>> reentrant_corner_exponents();

SampledBasis corner_singular_basis(Point2 corner, double theta_origin, const PointSet2D& interior,
                                   const PointSet2D& boundary);

/// LG = -alpha * u'' + diag(V(x)) * G. The operator must be Schrodinger1D.
SampledBasis assemble_operator(const Stack1D& stack, const OperatorSpec& op, const PointSet1D& points);
/// LG = -laplacian. The operator must be Laplace2D. No boundary block is set.
SampledBasis assemble_operator(const Stack2D& stack, const OperatorSpec& op);

/// Side-by-side concatenation of two bases sampled at the same points.
SampledBasis hconcat(const SampledBasis& left, const SampledBasis& right);

/// Re-evaluate the family at new points.
Stack1D sample(const BasisFamily& family, std::span<const double> x);
Stack2D sample(const BasisFamily& family, std::span<const Point2> points);

}  // namespace recteig
