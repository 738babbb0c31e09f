#pragma once

// Reduction of rectangular pencils (LG, G) to square generalized
// eigenproblems, and the postprocessing that turns raw QZ output into a
// sorted spectrum with residual diagnostics.

#include "recteig/basis.hpp"
#include "recteig/numkernel.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace recteig {

struct SolveOptions {
    Orthogonalization orthogonalization = Orthogonalization::qr;
    /// Drop pairs with |Im lambda| > imag_tol * max(1, |Re lambda|).
    bool self_adjoint = true;
    double imag_tol = 1e-6;
    /// A mode is flagged spurious when its interior residual, scaled by
    /// max(1, |lambda|), exceeds spurious_tol, or its boundary RMS ratio
    /// exceeds boundary_tol.
    double spurious_tol = 0.5;
    double boundary_tol = 1e-3;
    /// Also flag boundary ratios above median_factor * median, provided
    /// they exceed median_floor.
    double median_factor = 1e3;
    double median_floor = 1e-8;
};

struct Mode {
    Complex value{};
    CVector coefficients;          ///< unit norm, largest entry real positive
    double residual = 0.0;         ///< ||LG x - lambda G x|| / ||G x||
    double boundary_residual = 0.0;  ///< RMS boundary trace over RMS interior value
    bool spurious = false;
};

/// Modes sorted ascending by real part. Infinite pairs (and non-real pairs,
/// for self-adjoint problems) are counted in `discarded`.
struct Spectrum {
    std::vector<Mode> modes;
    std::size_t discarded = 0;
    std::vector<std::string> warnings;

    std::vector<Complex> eigenvalues() const;
    /// Real parts of the first `count` modes not flagged spurious.
    std::vector<double> clean_values(std::size_t count) const;
    std::size_t spurious_count() const;
};

/// The square pencil handed to QZ.
struct Pencil {
    Matrix a;
    Matrix c;
};

enum class Variant { one = 1, two = 2, three = 3 };

struct RectEigProblem {
    SampledBasis basis;
    std::optional<Matrix> bc_rows;  ///< the BG block (variant 2)
    Variant variant = Variant::one;
};

Pencil pencil_variant1(const SampledBasis& basis, Orthogonalization mode = Orthogonalization::qr);
/// An empty `bc_rows` (mu = 0) gives exactly the variant-1 pencil.
Pencil pencil_variant2(const SampledBasis& basis, const Matrix& bc_rows,
                       Orthogonalization mode = Orthogonalization::qr);
Pencil pencil_variant3(const SampledBasis& basis, Orthogonalization mode = Orthogonalization::qr);
/// (G^T LG, G^T G); with boundary rows, G_-^T replaces Q_-^T and G_-^T G replaces R_-.
Pencil pencil_normal(const SampledBasis& basis, const Matrix* bc_rows);

Spectrum solve_variant1(const SampledBasis& basis, const SolveOptions& opts = {});
Spectrum solve_variant2(const SampledBasis& basis, const Matrix& bc_rows, std::size_t mu,
                        const SolveOptions& opts = {});
Spectrum solve_variant3(const SampledBasis& basis, const SolveOptions& opts = {});
Spectrum solve_normal_equations(const SampledBasis& basis, const Matrix* bc_rows, std::size_t mu,
                                const SolveOptions& opts = {});

/// Dispatches on the variant; `normal` selects the normal-equations route.
Spectrum solve(const RectEigProblem& problem, const SolveOptions& opts = {}, bool normal = false);

/// Filters, sorts and annotates raw pairs. `boundary` is the block whose
/// image should vanish (bc_rows or boundary_G), or null.
Spectrum postprocess(const std::vector<EigPair>& raw, const SampledBasis& basis, const Matrix* boundary,
                     const SolveOptions& opts = {});

struct ResidualRow {
    std::size_t index = 0;
    Complex value{};
    double interior = 0.0;
    double boundary = 0.0;
    bool spurious = false;
};

std::vector<ResidualRow> residual_report(const Spectrum& spectrum);

/// u(z) = sum_k x_k g_k(z), re-evaluating the family at `points`. With a
/// domain, points outside its closure are rejected.
CVector evaluate_eigenfunction(const BasisFamily& family, const CVector& coefficients,
                               std::span<const Point2> points, const DomainSpec* domain = nullptr);
CVector evaluate_eigenfunction(const BasisFamily& family, const CVector& coefficients,
                               std::span<const double> points);

}  // namespace recteig
