#include "recteig/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace recteig {

namespace {

void require_square_enough(const SampledBasis& basis, const char* what)
{
    basis.validate();
    if (basis.rows() < basis.cols()) {
        throw std::invalid_argument(std::string(what) + ": basis must have at least as many rows as columns");
    }
}

// Smallest over largest "diagonal" of the triangular-like factor. For the SVD
// route the rows of r = Sigma V^T have norms equal to the singular values.
double factor_conditioning(const Matrix& r, Orthogonalization mode)
{
    Vector d = mode == Orthogonalization::qr ? Vector(r.diagonal().cwiseAbs()) : Vector(r.rowwise().norm());
    const double hi = d.maxCoeff();
    return hi > 0.0 ? d.minCoeff() / hi : 0.0;
}

void note_conditioning(Spectrum& s, double ratio, Eigen::Index n)
{
    if (ratio < static_cast<double>(n) * std::numeric_limits<double>::epsilon()) {
        std::ostringstream os;
        os << "R is numerically rank deficient (min/max diagonal " << ratio << ")";
        s.warnings.push_back(os.str());
    }
}

double median(std::vector<double> v)
{
    if (v.empty()) return 0.0;
    const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::nth_element(v.begin(), mid, v.end());
    if (v.size() % 2 == 1) return *mid;
    const double upper = *mid;
    const double lower = *std::max_element(v.begin(), mid);
    return 0.5 * (lower + upper);
}

// Build the projected pencil for a given orthonormal factor; shared by the
// variant-1 and variant-2 routes so mu = 0 reproduces variant 1 exactly.
Pencil project(const OrthoFactors& f, const Matrix& lg, const Matrix& bc_rows)
{
    const Eigen::Index n = f.r.cols();
    const Eigen::Index mu = bc_rows.rows();
    Pencil p{Matrix::Zero(n, n), Matrix::Zero(n, n)};
    p.a.topRows(n - mu) = f.q.leftCols(n - mu).transpose() * lg;
    p.c.topRows(n - mu) = f.r.topRows(n - mu);
    if (mu > 0) p.a.bottomRows(mu) = bc_rows;
    return p;
}

Pencil normal_stacked(const SampledBasis& basis)
{
    const Matrix& bg = *basis.boundary_g;
    return {basis.g.transpose() * basis.lg + bg.transpose() * bg, basis.g.transpose() * basis.g};
}

Spectrum finish(const Pencil& p, const SampledBasis& basis, const Matrix* boundary, const SolveOptions& opts)
{
    return postprocess(generalized_eig(p.a, p.c), basis, boundary, opts);
}

void check_bc_rows(const SampledBasis& basis, const Matrix& bc_rows, std::size_t mu, const char* what)
{
    if (static_cast<std::size_t>(bc_rows.rows()) != mu) {
        throw std::invalid_argument(std::string(what) + ": mu differs from the number of boundary rows");
    }
    if (mu > 0 && bc_rows.cols() != basis.cols()) {
        throw std::invalid_argument(std::string(what) + ": boundary rows have the wrong column count");
    }
    if (static_cast<Eigen::Index>(mu) >= basis.cols()) {
        throw std::invalid_argument(std::string(what) + ": need mu < n");
    }
    if (mu > 0) require_finite(bc_rows, what);
}

}  // namespace

std::vector<Complex> Spectrum::eigenvalues() const
{
    std::vector<Complex> out;
    out.reserve(modes.size());
    for (const auto& m : modes) out.push_back(m.value);
    return out;
}

std::vector<double> Spectrum::clean_values(std::size_t count) const
{
    std::vector<double> out;
    for (const auto& m : modes) {
        if (out.size() == count) break;
        if (!m.spurious) out.push_back(m.value.real());
    }
    return out;
}

std::size_t Spectrum::spurious_count() const
{
    return static_cast<std::size_t>(std::count_if(modes.begin(), modes.end(), [](const Mode& m) { return m.spurious; }));
}

Pencil pencil_variant1(const SampledBasis& basis, Orthogonalization mode)
{
    return pencil_variant2(basis, Matrix(0, basis.cols()), mode);
}

Pencil pencil_variant2(const SampledBasis& basis, const Matrix& bc_rows, Orthogonalization mode)
{
    require_square_enough(basis, "pencil_variant2");
    check_bc_rows(basis, bc_rows, static_cast<std::size_t>(bc_rows.rows()), "pencil_variant2");
    return project(orthonormal_factor(basis.g, mode), basis.lg, bc_rows);
}

Pencil pencil_variant3(const SampledBasis& basis, Orthogonalization mode)
{
    basis.validate();
    if (!basis.boundary_g) throw std::invalid_argument("pencil_variant3: basis has no boundary block");
    const Matrix& bg = *basis.boundary_g;
    const Eigen::Index m = basis.rows();
    Matrix stacked(m + bg.rows(), basis.cols());
    stacked << basis.g, bg;
    const OrthoFactors f = orthonormal_factor(stacked, mode);
    const auto q = f.q.topRows(m);
    const auto dq = f.q.bottomRows(bg.rows());
    return {q.transpose() * basis.lg + dq.transpose() * bg, q.transpose() * basis.g};
}

Pencil pencil_normal(const SampledBasis& basis, const Matrix* bc_rows)
{
    require_square_enough(basis, "pencil_normal");
    const Eigen::Index n = basis.cols();
    const Eigen::Index mu = bc_rows ? bc_rows->rows() : 0;
    if (bc_rows) check_bc_rows(basis, *bc_rows, static_cast<std::size_t>(mu), "pencil_normal");
    Pencil p{Matrix::Zero(n, n), Matrix::Zero(n, n)};
    const auto g_minus = basis.g.leftCols(n - mu);
    p.a.topRows(n - mu) = g_minus.transpose() * basis.lg;
    p.c.topRows(n - mu) = g_minus.transpose() * basis.g;
    if (mu > 0) p.a.bottomRows(mu) = *bc_rows;
    return p;
}

Spectrum solve_variant1(const SampledBasis& basis, const SolveOptions& opts)
{
    return solve_variant2(basis, Matrix(0, basis.cols()), 0, opts);
}

Spectrum solve_variant2(const SampledBasis& basis, const Matrix& bc_rows, std::size_t mu, const SolveOptions& opts)
{
    require_square_enough(basis, "solve_variant2");
    check_bc_rows(basis, bc_rows, mu, "solve_variant2");
    const OrthoFactors f = orthonormal_factor(basis.g, opts.orthogonalization);
    Spectrum s = finish(project(f, basis.lg, bc_rows), basis, mu > 0 ? &bc_rows : nullptr, opts);
    note_conditioning(s, factor_conditioning(f.r, opts.orthogonalization), basis.cols());
    return s;
}

Spectrum solve_variant3(const SampledBasis& basis, const SolveOptions& opts)
{
    return finish(pencil_variant3(basis, opts.orthogonalization), basis, &*basis.boundary_g, opts);
}

Spectrum solve_normal_equations(const SampledBasis& basis, const Matrix* bc_rows, std::size_t mu,
                                const SolveOptions& opts)
{
    if (bc_rows) check_bc_rows(basis, *bc_rows, mu, "solve_normal_equations");
    else if (mu != 0) throw std::invalid_argument("solve_normal_equations: mu > 0 needs boundary rows");
    return finish(pencil_normal(basis, bc_rows), basis, bc_rows, opts);
}

Spectrum solve(const RectEigProblem& problem, const SolveOptions& opts, bool normal)
{
    switch (problem.variant) {
    case Variant::one:
        return normal ? solve_normal_equations(problem.basis, nullptr, 0, opts) : solve_variant1(problem.basis, opts);
    case Variant::two: {
        if (!problem.bc_rows) throw std::invalid_argument("solve: variant 2 needs boundary rows");
        const auto mu = static_cast<std::size_t>(problem.bc_rows->rows());
        return normal ? solve_normal_equations(problem.basis, &*problem.bc_rows, mu, opts)
                      : solve_variant2(problem.basis, *problem.bc_rows, mu, opts);
    }
    case Variant::three:
        if (!problem.basis.boundary_g) throw std::invalid_argument("solve: variant 3 needs a boundary block");
        if (normal) {
            problem.basis.validate();
            return finish(normal_stacked(problem.basis), problem.basis, &*problem.basis.boundary_g, opts);
        }
        return solve_variant3(problem.basis, opts);
    }
    throw std::invalid_argument("solve: unknown variant");
}

Spectrum postprocess(const std::vector<EigPair>& raw, const SampledBasis& basis, const Matrix* boundary,
                     const SolveOptions& opts)
{
    Spectrum out;
    const double m = static_cast<double>(basis.rows());
    const bool has_boundary = boundary && boundary->rows() > 0;

    for (const auto& pair : raw) {
        if (!pair.finite || !std::isfinite(pair.value.real()) || !std::isfinite(pair.value.imag())) {
            ++out.discarded;
            continue;
        }
        const Complex lambda = pair.value;
        if (opts.self_adjoint && std::abs(lambda.imag()) > opts.imag_tol * std::max(1.0, std::abs(lambda.real()))) {
            ++out.discarded;
            continue;
        }

        Mode mode;
        mode.value = lambda;
        mode.coefficients = pair.vector;
        const double norm = mode.coefficients.norm();
        if (norm > 0.0) mode.coefficients /= norm;
        Eigen::Index big = 0;
        mode.coefficients.cwiseAbs().maxCoeff(&big);
        const Complex lead = mode.coefficients(big);
        if (std::abs(lead) > 0.0) mode.coefficients *= std::conj(lead) / std::abs(lead);
        mode.coefficients(big) = std::abs(mode.coefficients(big));
        out.modes.push_back(std::move(mode));
    }

    // Residuals for all kept modes at once, as real products.
    const auto kept = static_cast<Eigen::Index>(out.modes.size());
    CMatrix x(basis.cols(), kept);
    for (Eigen::Index j = 0; j < kept; ++j) x.col(j) = out.modes[static_cast<std::size_t>(j)].coefficients;
    const Matrix xr = x.real();
    const Matrix xi = x.imag();
    const Matrix gr = basis.g * xr;
    const Matrix gi = basis.g * xi;
    const Matrix lr = basis.lg * xr;
    const Matrix li = basis.lg * xi;
    Matrix br, bi;
    if (has_boundary) {
        br = *boundary * xr;
        bi = *boundary * xi;
    }
    for (Eigen::Index j = 0; j < kept; ++j) {
        Mode& mode = out.modes[static_cast<std::size_t>(j)];
        const Complex lambda = mode.value;
        // (L - lambda) G x with G x = gr + i gi.
        const Eigen::VectorXd rr = lr.col(j) - lambda.real() * gr.col(j) + lambda.imag() * gi.col(j);
        const Eigen::VectorXd ri = li.col(j) - lambda.real() * gi.col(j) - lambda.imag() * gr.col(j);
        const double gnorm = std::hypot(gr.col(j).norm(), gi.col(j).norm());
        const double rnorm = std::hypot(rr.norm(), ri.norm());
        mode.residual = gnorm > 0.0 ? rnorm / gnorm : std::numeric_limits<double>::infinity();
        if (has_boundary) {
            const double mu = static_cast<double>(boundary->rows());
            const double bnorm = std::hypot(br.col(j).norm(), bi.col(j).norm());
            mode.boundary_residual = gnorm > 0.0 ? (bnorm / std::sqrt(mu)) / (gnorm / std::sqrt(m))
                                                 : std::numeric_limits<double>::infinity();
        }
        const double scaled = mode.residual / std::max(1.0, std::abs(lambda));
        mode.spurious = !(scaled <= opts.spurious_tol && mode.boundary_residual <= opts.boundary_tol);
    }

    if (has_boundary && !out.modes.empty()) {
        std::vector<double> b;
        for (const auto& mode : out.modes) b.push_back(mode.boundary_residual);
        const double med = median(std::move(b));
        for (auto& mode : out.modes) {
            if (mode.boundary_residual > opts.median_factor * med && mode.boundary_residual > opts.median_floor) {
                mode.spurious = true;
            }
        }
    }

    std::stable_sort(out.modes.begin(), out.modes.end(), [](const Mode& a, const Mode& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return out;
}

std::vector<ResidualRow> residual_report(const Spectrum& spectrum)
{
    std::vector<ResidualRow> rows;
    rows.reserve(spectrum.modes.size());
    for (std::size_t i = 0; i < spectrum.modes.size(); ++i) {
        const auto& m = spectrum.modes[i];
        rows.push_back({i, m.value, m.residual, m.boundary_residual, m.spurious});
    }
    return rows;
}

CVector evaluate_eigenfunction(const BasisFamily& family, const CVector& coefficients, std::span<const Point2> points,
                               const DomainSpec* domain)
{
    if (static_cast<std::size_t>(coefficients.size()) != family.columns()) {
        throw std::invalid_argument("evaluate_eigenfunction: coefficient count differs from the basis size");
    }
    if (domain) {
        for (const auto& p : points) {
            if (!contains(*domain, p) && boundary_distance(*domain, p) > 1e-10) {
                throw std::invalid_argument("evaluate_eigenfunction: point outside the domain");
            }
        }
    }
    return sample(family, points).values.cast<Complex>() * coefficients;
}

CVector evaluate_eigenfunction(const BasisFamily& family, const CVector& coefficients, std::span<const double> points)
{
    if (static_cast<std::size_t>(coefficients.size()) != family.columns()) {
        throw std::invalid_argument("evaluate_eigenfunction: coefficient count differs from the basis size");
    }
    return sample(family, points).values.cast<Complex>() * coefficients;
}

}  // namespace recteig
